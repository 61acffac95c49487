#pragma once

// Shared helpers for the test binaries: a seeded generator, small builders,
// and oracles that recompute results without going through the library code
// under test.

#include "sepshift/certified.hpp"
#include "sepshift/group.hpp"
#include "sepshift/sft.hpp"
#include "sepshift/window.hpp"

#include <cstdint>
#include <algorithm>
#include <deque>
#include <set>
#include <memory>
#include <vector>

namespace testing {

/// SplitMix64: tiny, seedable, identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }
    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

inline sepshift::GroupElement z(std::int64_t v) { return sepshift::GroupElement::vec({v}); }
inline sepshift::GroupElement z2(std::int64_t a, std::int64_t b) { return sepshift::GroupElement::vec({a, b}); }

inline sepshift::FiniteSet zset(std::initializer_list<std::int64_t> vs)
{
    std::vector<sepshift::GroupElement> out;
    for (auto v : vs)
        out.push_back(z(v));
    return sepshift::FiniteSet(std::move(out));
}

inline sepshift::FiniteSet zrange(std::int64_t lo, std::int64_t hi, std::int64_t step = 1)
{
    std::vector<sepshift::GroupElement> out;
    for (auto v = lo; v <= hi; v += step)
        out.push_back(z(v));
    return sepshift::FiniteSet(std::move(out));
}

inline sepshift::WindowPtr torus(std::vector<std::int64_t> moduli)
{
    return std::make_shared<const sepshift::Window>(sepshift::Window::torus(std::move(moduli)));
}

inline sepshift::Labeling labeling(sepshift::WindowPtr w, int k, std::vector<int> values)
{
    sepshift::Labeling l{std::move(w), k, std::move(values)};
    l.validate();
    return l;
}

/// Rational bounds on e from its Taylor series:
/// sum_{j<=n} 1/j! <= e <= sum_{j<=n} 1/j! + 2/(n+1)!.
inline std::pair<sepshift::Rational, sepshift::Rational> euler_bounds(unsigned n)
{
    sepshift::Rational sum(0), term(1);
    for (unsigned j = 0; j <= n; ++j) {
        if (j > 0)
            term /= sepshift::Rational(j);
        sum += term;
    }
    sepshift::Rational tail = term / sepshift::Rational(n + 1) * 2;
    return {sum, sum + tail};
}

/// Oracle for Phi-finiteness of a periodic labeling on Z^d: BFS in Z^d from each
/// residue inside the box [-half, half]^d. A finite component holds at most one
/// lift per residue, so with half >= N^d·m + max N (m the largest step) a
/// component is infinite iff its BFS reaches the box border.
inline std::vector<char> lifted_patch_oracle(
    const sepshift::Labeling & l, const std::vector<std::vector<std::int64_t>> & steps, std::int64_t half)
{
    const auto & w = *l.window;
    const std::size_t d = w.moduli().size();
    const std::int64_t side = 2 * half + 1;
    std::size_t cells = 1;
    for (std::size_t a = 0; a < d; ++a)
        cells *= static_cast<std::size_t>(side);
    auto flat = [&](const std::vector<std::int64_t> & v) {
        std::size_t i = 0;
        for (auto c : v)
            i = i * static_cast<std::size_t>(side) + static_cast<std::size_t>(c + half);
        return i;
    };
    std::vector<char> infinite(w.size(), 0);
    std::vector<std::uint32_t> mark(cells, 0);
    std::uint32_t round = 0;
    for (std::size_t start = 0; start < w.size(); ++start) {
        ++round;
        auto p0 = w.point(start).coords();
        std::vector<std::int64_t> v(p0.begin(), p0.end());
        const int color = l.values[start];
        std::deque<std::vector<std::int64_t>> queue{v};
        mark[flat(v)] = round;
        while (!queue.empty() && !infinite[start]) {
            auto u = queue.front();
            queue.pop_front();
            for (const auto & s : steps) {
                auto n = u;
                bool out = false;
                for (std::size_t a = 0; a < d; ++a) {
                    n[a] += s[a];
                    out = out || n[a] < -half || n[a] > half;
                }
                if (l.values[w.torus_index(n)] != color)
                    continue;
                if (out) {
                    infinite[start] = 1;
                    break;
                }
                if (mark[flat(n)] != round) {
                    mark[flat(n)] = round;
                    queue.push_back(n);
                }
            }
        }
    }
    return infinite;
}

// Every pattern over k^W except the listed ones.
inline sepshift::PatternSystem all_but(int k, const sepshift::FiniteSet & W, const std::set<std::vector<int>> & banned)
{
    std::vector<std::vector<int>> keep;
    std::vector<int> t(W.size(), 0);
    for (;;) {
        if (!banned.count(t))
            keep.push_back(t);
        std::size_t i = 0;
        while (i < t.size() && ++t[i] == k)
            t[i++] = 0;
        if (i == t.size())
            break;
    }
    return sepshift::PatternSystem::explicit_patterns(k, W, keep);
}

// P[B | partial] by direct enumeration over the scope, without the library's event code.
inline sepshift::Rational direct_probability(const sepshift::PatternSystem & P, const sepshift::Window & w, std::size_t x, const std::vector<int> & partial)
{
    std::vector<std::size_t> scope;
    for (const auto & s : P.W())
        scope.push_back(*w.act(s, x));
    std::vector<std::size_t> free_points;
    for (auto q : scope)
        if (partial[q] < 0 && std::find(free_points.begin(), free_points.end(), q) == free_points.end())
            free_points.push_back(q);
    std::vector<int> values = partial;
    std::vector<int> c(free_points.size(), 0);
    unsigned long bad = 0, total = 0;
    for (;;) {
        for (std::size_t j = 0; j < free_points.size(); ++j)
            values[free_points[j]] = c[j];
        std::vector<int> pattern;
        for (auto q : scope)
            pattern.push_back(values[q]);
        bad += !std::binary_search(P.patterns().begin(), P.patterns().end(), pattern);
        ++total;
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == P.k())
            c[i++] = 0;
        if (i == c.size())
            break;
    }
    sepshift::Rational q(bad, total);
    q.canonicalize();
    return q;
}

} // namespace testing

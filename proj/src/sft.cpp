#include "sepshift/sft.hpp"

#include "sepshift/error.hpp"

#include <algorithm>

namespace sepshift {

namespace {

// k^n if it is at most limit, otherwise nullopt.
std::optional<std::uint64_t> bounded_power(std::uint64_t k, std::size_t n, std::uint64_t limit)
{
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (k != 0 && v > limit / k)
            return std::nullopt;
        v *= k;
    }
    return v <= limit ? std::optional<std::uint64_t>(v) : std::nullopt;
}

// Odometer over k^n, least significant digit last (lexicographic order).
bool next_tuple(std::vector<int> & t, int k)
{
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < k)
            return true;
        t[i] = 0;
    }
    return false;
}

} // namespace

// --- PatternSystem ---------------------------------------------------------

PatternSystem PatternSystem::explicit_patterns(int k, FiniteSet W, std::vector<std::vector<int>> patterns)
{
    if (k < 1)
        fail(ErrorKind::Usage, "pattern alphabet must be positive");
    if (W.empty())
        fail(ErrorKind::Usage, "pattern window W must be nonempty");
    for (const auto & p : patterns) {
        if (p.size() != W.size())
            fail(ErrorKind::Usage, "pattern length does not match |W| = " + std::to_string(W.size()));
        for (auto v : p)
            if (v < 0 || v >= k)
                fail(ErrorKind::Usage, "pattern value outside the alphabet");
    }
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());

    PatternSystem s;
    s.k_ = k;
    s.W_ = std::move(W);
    s.packed_ = bounded_power(static_cast<std::uint64_t>(k), s.W_.size(), 1ull << 62).has_value();
    for (const auto & p : patterns) {
        if (s.packed_)
            s.packed_set_.insert(s.pack(p));
        else
            s.wide_set_.insert(p);
    }
    s.patterns_ = std::move(patterns);
    BigInt total = pow(BigInt(k), s.W_.size());
    s.bound_ = Rational(BigInt(static_cast<unsigned long>(s.patterns_.size())), total);
    s.bound_.canonicalize();
    s.provenance_ = "exact count";
    return s;
}

PatternSystem PatternSystem::full_shift(int k, FiniteSet W)
{
    std::vector<std::vector<int>> all;
    auto total = bounded_power(static_cast<std::uint64_t>(k), W.size(), default_enumeration_cap);
    if (!total)
        fail(ErrorKind::Resource, "full shift over this window has too many patterns to list");
    std::vector<int> t(W.size(), 0);
    do
        all.push_back(t);
    while (next_tuple(t, k));
    return explicit_patterns(k, std::move(W), std::move(all));
}

std::uint64_t PatternSystem::pack(std::span<const int> pattern) const
{
    std::uint64_t key = 0;
    for (auto v : pattern)
        key = key * static_cast<std::uint64_t>(k_) + static_cast<std::uint64_t>(v);
    return key;
}

bool PatternSystem::allows(std::span<const int> pattern) const
{
    if (acceptable_) {
        for (int i = 1; i <= acceptable_->markers; ++i) {
            bool found = false;
            for (const auto & [center, ring] : markers_) {
                if (pattern[center] != i)
                    continue;
                if (std::all_of(ring.begin(), ring.end(), [&](std::size_t j) { return pattern[j] == 0; })) {
                    found = true;
                    break;
                }
            }
            if (!found)
                return false;
        }
        return true;
    }
    if (packed_)
        return packed_set_.count(pack(pattern)) != 0;
    return wide_set_.count(std::vector<int>(pattern.begin(), pattern.end())) != 0;
}

const std::vector<std::vector<int>> & PatternSystem::patterns() const
{
    if (acceptable_)
        fail(ErrorKind::Unsupported, "predicate pattern systems have no explicit pattern list");
    return patterns_;
}

BigInt PatternSystem::pattern_count() const
{
    if (acceptable_)
        fail(ErrorKind::Unsupported, "predicate pattern systems carry only a bound on |P|");
    return BigInt(static_cast<unsigned long>(patterns_.size()));
}

Rational PatternSystem::fraction_lower_bound() const { return bound_; }

// --- membership ---------------------------------------------------------------

std::optional<std::vector<std::size_t>> scope_of(const Window & window, const FiniteSet & W, std::size_t p)
{
    std::vector<std::size_t> out;
    out.reserve(W.size());
    for (const auto & s : W) {
        auto q = window.act(s, p);
        if (!q)
            return std::nullopt;
        out.push_back(*q);
    }
    return out;
}

MembershipReport sft_membership(const Labeling & labeling, const PatternSystem & system)
{
    labeling.validate();
    if (labeling.k != system.k())
        fail(ErrorKind::Usage, "labeling alphabet does not match the pattern system");
    const Window & w = *labeling.window;
    MembershipReport out;
    std::vector<int> pattern(system.W().size());
    for (std::size_t p = 0; p < w.size(); ++p) {
        auto scope = scope_of(w, system.W(), p);
        if (!scope) {
            out.unchecked.push_back(p);
            continue;
        }
        for (std::size_t j = 0; j < scope->size(); ++j)
            pattern[j] = labeling.values[(*scope)[j]];
        if (!system.allows(pattern))
            out.violators.push_back(p);
    }
    return out;
}

std::vector<std::pair<GroupElement, int>> coding_map(const Labeling & f, std::size_t p, const FiniteSet & probe)
{
    f.validate();
    if (p >= f.window->size())
        fail(ErrorKind::Usage, "coding_map base point outside the carrier");
    std::vector<std::pair<GroupElement, int>> out;
    for (const auto & g : probe) {
        auto q = f.window->act(g, p);
        if (!q)
            fail(ErrorKind::Usage, "probe element " + to_string(g) + " moves the base point outside the window");
        out.emplace_back(g, f.values[*q]);
    }
    return out;
}

// --- acceptable patterns -----------------------------------------------------------

bool is_spaced_subset(const GroupDescriptor & G, const FiniteSet & R, const FiniteSet & D)
{
    std::vector<GroupElement> seen;
    for (const auto & r : R)
        for (const auto & d : D)
            seen.push_back(multiply(G, d, r));
    return FiniteSet(seen).size() == D.size() * R.size();
}

PatternSystem acceptable_pattern_system(const GroupDescriptor & G, const FiniteSet & D, const FiniteSet & R, int markers)
{
    if (markers < 1)
        fail(ErrorKind::Usage, "acceptable patterns need at least one marker color");
    if (R.empty())
        fail(ErrorKind::Usage, "acceptable patterns need a nonempty R");
    const auto one = identity(G);
    if (!D.contains(one))
        fail(ErrorKind::Usage, "D must contain the identity");
    if (!is_spaced_subset(G, R, D))
        fail(ErrorKind::Usage, "R is not D-spaced");

    PatternSystem s;
    s.k_ = markers + 1;
    s.W_ = set_product(G, D, R);
    s.acceptable_ = AcceptableSpec{D, R, markers};
    for (const auto & sigma : R) {
        std::vector<std::size_t> ring;
        for (const auto & delta : D)
            if (delta != one)
                ring.push_back(s.W_.index_of(multiply(G, delta, sigma)));
        s.markers_.emplace_back(s.W_.index_of(sigma), std::move(ring));
    }
    auto bound = pattern_fraction_bound(D.size(), R.size(), markers);
    s.bound_ = bound.vacuous ? Rational(0) : bound.value;
    s.provenance_ = "closed-form bound";
    return s;
}

FractionBound pattern_fraction_bound(std::size_t d_size, std::size_t r_size, int markers)
{
    Rational miss(pow(BigInt(markers + 1), d_size) - 1, pow(BigInt(markers + 1), d_size));
    miss.canonicalize();
    Rational missr;
    mpz_pow_ui(missr.get_num_mpz_t(), miss.get_num_mpz_t(), r_size);
    mpz_pow_ui(missr.get_den_mpz_t(), miss.get_den_mpz_t(), r_size);
    missr.canonicalize();
    FractionBound out;
    out.value = Rational(1) - Rational(markers) * missr;
    out.vacuous = sgn(out.value) < 0;
    return out;
}

FractionBound pattern_fraction_bound(const GroupDescriptor & G, const FiniteSet & D, const FiniteSet & R, int markers)
{
    if (!is_spaced_subset(G, R, D))
        fail(ErrorKind::Usage, "R is not D-spaced");
    return pattern_fraction_bound(D.size(), R.size(), markers);
}

// --- brute force ---------------------------------------------------------------------

BigInt count_allowed_patterns(const PatternSystem & system, std::uint64_t cap)
{
    if (!bounded_power(static_cast<std::uint64_t>(system.k()), system.W().size(), cap))
        fail(ErrorKind::Resource, "pattern enumeration exceeds the cap");
    std::vector<int> t(system.W().size(), 0);
    unsigned long count = 0;
    do
        count += system.allows(t) ? 1 : 0;
    while (next_tuple(t, system.k()));
    return BigInt(count);
}

std::vector<std::vector<int>> brute_force_sft_enumerate(
    const PatternSystem & system, const Window & torus, std::uint64_t cap)
{
    if (!torus.is_torus())
        fail(ErrorKind::Usage, "brute-force enumeration requires a torus window");
    if (!bounded_power(static_cast<std::uint64_t>(system.k()), torus.size(), cap))
        fail(ErrorKind::Resource, "labeling enumeration exceeds the cap");
    std::vector<std::vector<std::size_t>> scopes;
    for (std::size_t p = 0; p < torus.size(); ++p)
        scopes.push_back(*scope_of(torus, system.W(), p));

    std::vector<std::vector<int>> out;
    std::vector<int> values(torus.size(), 0), pattern(system.W().size());
    do {
        bool ok = true;
        for (const auto & scope : scopes) {
            for (std::size_t j = 0; j < scope.size(); ++j)
                pattern[j] = values[scope[j]];
            if (!system.allows(pattern)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(values);
    } while (next_tuple(values, system.k()));
    return out;
}

} // namespace sepshift

#include "sepshift/error.hpp"
#include "sepshift/io.hpp"
#include "sepshift/pipeline.hpp"
#include "sepshift/render.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace sepshift;
using testing::all_but;
using testing::direct_probability;
using testing::z;
using testing::zrange;
using testing::zset;

namespace {

const GroupDescriptor Z1 = GroupDescriptor::zd(1);
const GroupDescriptor Z2 = GroupDescriptor::zd(2);

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double v, int digits = 3)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

std::string show(const FiniteSet & s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i].coords()[0]);
    return out + "}";
}

// --- 1 ---------------------------------------------------------------------------

Outcome criterion_1()
{
    auto t0 = Clock::now();
    auto m = minimal_r(1, 1, 1);
    // e^2 (1/2)^r r^4 with e bracketed by Taylor partial sums; no floating point involved.
    auto [lo, hi] = testing::euler_bounds(60);
    const Rational width = hi - lo;
    const Rational digits50(BigInt(1), pow(BigInt(10), 50));
    auto value = [&](const Rational & e, unsigned long r) -> Rational {
        return e * e * Rational(pow(BigInt(r), 4), pow(BigInt(2), r));
    };
    const bool above20 = value(lo, 20) > 1;
    const bool below21 = value(hi, 21) <= 1;
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = m.r == 21 && m.n == 21 && above20 && below21 && width < digits50 && t < 1.0;
    o.detail = "minimal_r(1,1,1) = (r=" + std::to_string(m.r) + ", n=" + m.n.get_str() + "); oracle value(20) in [" +
        fixed(Rational(value(lo, 20)).get_d(), 6) + ", " + fixed(Rational(value(hi, 20)).get_d(), 6) + "] > 1, value(21) in [" +
        fixed(Rational(value(lo, 21)).get_d(), 6) + ", " + fixed(Rational(value(hi, 21)).get_d(), 6) + "] <= 1; " + fixed(t) + " s";
    return o;
}

// --- 2 ---------------------------------------------------------------------------

Outcome criterion_2()
{
    auto t0 = Clock::now();
    const FiniteSet W = zset({0, 1});
    int cases = 0, empty = 0, counterexamples = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<std::vector<int>> P;
        for (unsigned j = 0; j < 4; ++j)
            if (mask >> j & 1)
                P.push_back({static_cast<int>(j & 1), static_cast<int>(j >> 1 & 1)});
        auto sys = PatternSystem::explicit_patterns(2, W, P);
        for (std::int64_t n = 3; n <= 6; ++n) {
            ++cases;
            if (!brute_force_sft_enumerate(sys, *testing::torus({n})).empty())
                continue;
            ++empty;
            if (sft_nonempty_check(2, W.size(), sys.pattern_count()).verdict != Verdict::Reject)
                ++counterexamples;
        }
    }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = cases == 64 && counterexamples == 0 && t < 10.0;
    o.detail = std::to_string(cases) + " cases, " + std::to_string(empty) + " empty subshifts, " +
        std::to_string(counterexamples) + " counterexamples; " + fixed(t) + " s";
    return o;
}

// --- 3 ---------------------------------------------------------------------------

Outcome criterion_3()
{
    auto t0 = Clock::now();
    testing::Rng rng(3);
    std::vector<double> times;
    int failures = 0, restricted = 0, candidates = 0;
    while (times.size() < 500) {
        ++candidates;
        const int k = static_cast<int>(rng.range(1, 3));
        std::set<std::int64_t> offsets{0};
        const auto wsize = static_cast<std::size_t>(rng.range(1, 3));
        while (offsets.size() < wsize)
            offsets.insert(rng.range(-4, 4));
        std::vector<GroupElement> wv;
        for (auto v : offsets)
            wv.push_back(z(v));
        FiniteSet W(wv);
        std::set<std::vector<int>> banned;
        for (int b = 0, n = static_cast<int>(rng.range(0, 2)); b < n; ++b) {
            std::vector<int> p;
            for (std::size_t j = 0; j < W.size(); ++j)
                p.push_back(static_cast<int>(rng.range(0, k - 1)));
            banned.insert(p);
        }
        auto P = all_but(k, W, banned);
        if (sft_nonempty_check(k, W.size(), P.pattern_count()).verdict != Verdict::Accept)
            continue;
        restricted += !banned.empty();
        auto w = testing::torus({rng.range(1, 256)});
        auto s0 = Clock::now();
        EventSystem sys(w, P);
        auto r = moser_tardos_solve(sys, times.size() + 1, 1'000'000);
        times.push_back(seconds_since(s0));
        if (!r.solved || !sft_membership(*r.labeling, P).member() || !sys.violations(r.labeling->values).empty())
            ++failures;
    }
    std::sort(times.begin(), times.end());
    const double median = (times[249] + times[250]) / 2, worst = times.back();
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = failures == 0 && median < 0.1 && worst < 10.0;
    o.detail = "500 accepted instances (" + std::to_string(restricted) + " with forbidden patterns, " +
        std::to_string(candidates) + " drawn), " + std::to_string(failures) + " failures, median " +
        fixed(median * 1000, 3) + " ms, max " + fixed(worst * 1000, 3) + " ms; " + fixed(t) + " s";
    return o;
}

// --- 4 ---------------------------------------------------------------------------

struct DerandomInstance {
    int k;
    FiniteSet W;
    std::set<std::vector<int>> banned;
    std::int64_t L, N;
};

std::int64_t span_of(const FiniteSet & W)
{
    std::int64_t lo = 0, hi = 0;
    for (const auto & g : W) {
        lo = std::min(lo, g.coords()[0]);
        hi = std::max(hi, g.coords()[0]);
    }
    return hi - lo;
}

Outcome criterion_4()
{
    auto t0 = Clock::now();
    const std::vector<DerandomInstance> instances{
        {11, zset({0, 1}), {{0, 0}}, 4, 64},
        {11, zset({0, 2}), {{3, 5}}, 5, 200},
        {11, zset({-1, 0}), {{1, 1}}, 8, 512},
        {16, zset({0, 1}), {{0, 0}, {0, 1}}, 16, 512},
        {9, zset({0, 1, 2}), {{0, 0, 0}}, 6, 120},
        {12, zset({0, 3}), {{2, 7}}, 4, 256},
    };
    auto [elo, ehi] = testing::euler_bounds(40);
    int bound_rejected = 0, violated = 0, sweep_failures = 0, nondeterministic = 0, nonlocal = 0, points = 0;
    std::size_t largest = 0;
    testing::Rng rng(4);
    for (const auto & inst : instances) {
        auto P = all_but(inst.k, inst.W, inst.banned);
        if (cont_lll_check(1, P).verdict != Verdict::Accept) {
            ++bound_rejected;
            continue;
        }
        auto w = testing::torus({inst.N});
        EventSystem sys(w, P);
        auto phi = derandomizer_phi(Z1, inst.W);
        auto h = build_interval_separator_Z(inst.L, w);
        auto witness = partition_from_separator(h, phi);
        for (const auto & per : witness.components)
            for (const auto & c : per)
                largest = std::max(largest, c.size());
        DerandomizeOptions opt;
        opt.record_stages = true;
        auto r = derandomized_solve(sys, witness, 1, opt);
        violated += !sys.violations(r.labeling.values).empty() || !sft_membership(r.labeling, P).member();

        // P[B_x | f_0 ∪ ... ∪ f_i] < (e d)^-(1-i), d = |W|^2, with the upper bound on e.
        const Rational d(BigInt(inst.W.size() * inst.W.size()));
        const Rational stage0 = 1 / (ehi * d);
        if (r.stages.size() != 2)
            ++sweep_failures;
        else
            for (std::size_t x = 0; x < w->size(); ++x) {
                sweep_failures += !(direct_probability(P, *w, x, r.stages[0].partial) < stage0);
                sweep_failures += !(direct_probability(P, *w, x, r.stages[1].partial) < 1);
            }

        const auto bytes = io::dump(io::to_json(r.labeling));
        for (int rerun = 0; rerun < 5; ++rerun)
            nondeterministic += io::dump(io::to_json(derandomized_solve(sys, witness, 1).labeling)) != bytes;

        // The value at p only depends on the witness near p: rerun on a ball cropped around p.
        const int rho = static_cast<int>(4 * inst.L + 4 * span_of(inst.W));
        auto crop = std::make_shared<const Window>(Window::ball(Z1, zset({1}), rho));
        for (int t = 0; t < 20; ++t) {
            const auto p = rng.range(0, inst.N - 1);
            std::vector<int> colors;
            for (const auto & g : crop->carrier()) {
                const auto x = ((p + g.coords()[0]) % inst.N + inst.N) % inst.N;
                colors.push_back(h.values[static_cast<std::size_t>(x)]);
            }
            auto local_witness = partition_from_separator(testing::labeling(crop, 2, colors), phi);
            auto local = derandomized_solve(EventSystem(crop, P), local_witness, 1);
            nonlocal += local.labeling.values[*crop->index_of(z(0))] != r.labeling.values[static_cast<std::size_t>(p)];
            ++points;
        }
    }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = bound_rejected == 0 && violated == 0 && sweep_failures == 0 && nondeterministic == 0 && nonlocal == 0 &&
        largest <= 16 && t < 60.0;
    o.detail = std::to_string(instances.size()) + " bound-accepted instances (N <= 512, components <= " +
        std::to_string(largest) + "): " + std::to_string(violated) + " with violations, " +
        std::to_string(sweep_failures) + " threshold failures, " + std::to_string(nondeterministic) +
        " differing reruns of 5 each, " + std::to_string(nonlocal) + "/" + std::to_string(points) +
        " nonlocal points; " + fixed(t) + " s";
    return o;
}

// --- 5 ---------------------------------------------------------------------------

Outcome criterion_5()
{
    auto t0 = Clock::now();
    testing::Rng rng(5);
    int interval_ok = 0, product_ok = 0, band_ok = 0, constant_failed = 0, constants = 0;
    auto constant_fails = [&](const WindowPtr & w, int s, const FiniteSet & phi) {
        ++constants;
        auto l = constant_labeling(w, s + 1, static_cast<int>(rng.range(0, s)));
        if (w->is_torus()) {
            constant_failed += !verify_separator(l, s, phi, SeparatorMode::Exact).passed;
            return;
        }
        auto interior = verify_separator(l, s, phi, SeparatorMode::Interior);
        constant_failed += !verify_separator(l, s, phi, SeparatorMode::Exact).passed && (!interior.passed || interior.vacuous);
    };

    for (int t = 0; t < 50; ++t) {
        const auto L = rng.range(2, 12);
        auto w = testing::torus({2 * L * rng.range(1, 6)});
        std::vector<GroupElement> v;
        for (int j = 0, n = static_cast<int>(rng.range(1, 3)); j < n; ++j) {
            auto a = rng.range(1, L - 1);
            v.push_back(z(rng.coin() ? a : -a));
        }
        FiniteSet phi(v);
        interval_ok += verify_separator(build_interval_separator_Z(L, w), 1, phi, SeparatorMode::Exact).passed;
        constant_fails(w, 1, phi);
    }
    for (int t = 0; t < 50; ++t) {
        std::vector<std::int64_t> L{rng.range(2, 6), rng.range(2, 6)};
        auto w = testing::torus({2 * L[0] * rng.range(1, 3), 2 * L[1] * rng.range(1, 3)});
        std::vector<GroupElement> v;
        while (v.size() < static_cast<std::size_t>(rng.range(1, 3)) || v.empty()) {
            auto a = rng.range(-(L[0] - 1), L[0] - 1), b = rng.range(-(L[1] - 1), L[1] - 1);
            if (a != 0 || b != 0)
                v.push_back(testing::z2(a, b));
        }
        FiniteSet phi(v);
        product_ok += verify_separator(build_product_separator_Zd(L, w), 3, phi, SeparatorMode::Exact).passed;
        constant_fails(w, 3, phi);
    }
    const auto F2 = GroupDescriptor::free(2);
    const auto gens = standard_generators(F2);
    for (int t = 0; t < 20; ++t) {
        const auto L = rng.range(2, 4);
        const int radius = static_cast<int>(rng.range(2 * L - 1, 8));
        auto b = std::make_shared<const Window>(Window::ball(F2, gens, radius));
        auto pool = ball(F2, gens, static_cast<int>(L - 1));
        std::vector<GroupElement> v;
        while (v.empty())
            for (int j = 0; j < 2; ++j) {
                const auto & g = pool[static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(pool.size()) - 1))];
                if (!is_identity(F2, g))
                    v.push_back(g);
            }
        FiniteSet phi(v);
        auto r = verify_separator(build_band_separator_free(L, b), 1, phi, SeparatorMode::Interior);
        band_ok += r.passed && !r.vacuous;
        constant_fails(b, 1, phi);
    }

    int obstructed = 0, unsound = 0;
    for (int t = 0; t < 100; ++t) {
        const auto period = rng.range(1, 8);
        const auto n = period * rng.range(1, 8);
        std::vector<int> cycle(static_cast<std::size_t>(period));
        for (auto & c : cycle)
            c = static_cast<int>(rng.range(0, 1));
        std::vector<int> values(static_cast<std::size_t>(n));
        for (std::int64_t x = 0; x < n; ++x)
            values[static_cast<std::size_t>(x)] = cycle[static_cast<std::size_t>(x % period)];
        if (rng.range(0, 3) == 0)
            values[static_cast<std::size_t>(rng.range(0, n - 1))] ^= 1;
        auto l = testing::labeling(testing::torus({n}), 2, values);
        const auto gamma = period * (rng.coin() ? 1 : -1);
        if (!check_periodic_obstruction(l, gamma))
            continue;
        ++obstructed;
        std::vector<GroupElement> v{z(gamma)};
        for (int j = 0, m = static_cast<int>(rng.range(0, 2)); j < m; ++j)
            v.push_back(z(rng.range(-5, 5)));
        unsound += verify_separator(l, 1, FiniteSet(v), SeparatorMode::Exact).passed;
    }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = interval_ok == 50 && product_ok == 50 && band_ok == 20 && constant_failed == constants && unsound == 0 && t < 30.0;
    o.detail = "interval " + std::to_string(interval_ok) + "/50, product " + std::to_string(product_ok) + "/50, band " +
        std::to_string(band_ok) + "/20, constant labelings failing " + std::to_string(constant_failed) + "/" +
        std::to_string(constants) + ", obstruction unsound " + std::to_string(unsound) + "/" + std::to_string(obstructed) +
        " obstructed of 100; " + fixed(t) + " s";
    return o;
}

// --- 6 ---------------------------------------------------------------------------

bool family_verifies(const SpacedFamily & f)
{
    if (!is_phi_spaced(*f.window, f.union_set, f.phi).spaced)
        return false;
    for (const auto & A : f.sets)
        if (!is_F_syndetic_window(*f.window, A, f.F).passed())
            return false;
    return true;
}

Outcome criterion_6()
{
    auto t0 = Clock::now();
    Outcome o;
    std::string empirical;
    bool empirical_ok = false;
    const FiniteSet phi = zset({-1, 0, 1}), F = zrange(0, 33, 3);
    auto w60 = testing::torus({60});
    try {
        PipelineOptions opt;
        opt.r = 4;
        auto fam = syndetic_spaced_pipeline(w60, phi, 2, F, opt);
        empirical_ok = family_verifies(fam);
        empirical = std::string("empirical N=60 r=4: ") + (empirical_ok ? "verified" : "returned an unverified family");
    } catch (const Error & e) {
        empirical = std::string("empirical N=60 r=4: ") + to_string(e.kind()) + " (" + e.what() + ")";
    }
    // The same instance with the |F| >= |D^-1 D| r precondition set aside.
    {
        const auto D = set_product(Z1, set_inverse(Z1, phi), phi);
        auto R = greedy_spaced_subset(Z1, F, D, 4);
        EventSystem sys(w60, acceptable_pattern_system(Z1, D, R.picks, 2));
        const std::uint64_t budget = 200'000;
        auto r = moser_tardos_solve(sys, 1, budget);
        empirical += "; without the size precondition R=" + show(R.picks) + ", |W|=" + std::to_string(sys.W().size()) +
            ", solver " + (r.solved ? "solved" : "unsolved after " + std::to_string(budget) + " resamples");
    }

    std::string strict;
    bool strict_ok = false;
    try {
        PipelineOptions opt;
        opt.mode = PipelineMode::Strict;
        opt.s = 1;
        auto fam = syndetic_spaced_pipeline(testing::torus({2048}), zset({0}), 1, zrange(0, 20), opt);
        strict_ok = family_verifies(fam) && fam.r == 21;
        strict = "strict (1,1,1) N=2048: " + std::string(strict_ok ? "verified" : "unverified") + " with r=" +
            std::to_string(fam.r) + ", |A_1|=" + std::to_string(fam.sets[0].size());
    } catch (const Error & e) {
        strict = std::string("strict (1,1,1) N=2048: ") + to_string(e.kind()) + " (" + e.what() + ")";
    }

    std::string feasible;
    try {
        PipelineOptions opt;
        opt.r = 20;
        auto fam = syndetic_spaced_pipeline(w60, zset({0, 1}), 2, zrange(0, 99), opt);
        feasible = std::string("reference empirical N=60 Phi={0,1} k=2 r=20 F={0..99}: ") +
            (family_verifies(fam) ? "verified" : "unverified");
    } catch (const Error & e) {
        feasible = std::string("reference empirical: ") + e.what();
    }
    const double t = seconds_since(t0);
    o.pass = empirical_ok && strict_ok && t < 120.0;
    o.detail = empirical + "; " + strict + "; " + feasible + "; " + fixed(t) + " s";
    return o;
}

// --- 7 ---------------------------------------------------------------------------

Outcome criterion_7()
{
    auto t0 = Clock::now();
    auto w = testing::torus({48});
    auto h = build_interval_separator_Z(6, w);
    CylinderConstraint c;
    c.D = zset({-1, 0, 1});
    c.alphabet = 2;
    c.patterns = {{{0, 1, 0}}, {{1, 0, 1}}};
    const std::vector<FiniteSet> levels{zset({1})};
    const std::vector<std::vector<std::vector<std::size_t>>> fixtures{{{10}, {}}, {{10, 34}, {22}}};
    int coding_failures = 0, certificate_failures = 0, marked = 0;
    std::string changed;
    for (const auto & sets : fixtures) {
        auto r = pattern_copier(h, sets, c, 0, levels);
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (auto x : sets[i]) {
                ++marked;
                auto code = coding_map(r.f, x, c.D);
                for (std::size_t j = 0; j < c.D.size(); ++j)
                    coding_failures += code[j].second != c.patterns[i][0][j];
            }
        certificate_failures += !phi_finite_certificate(r.f, zset({1})).all_certified();
        if (changed.empty())
            for (auto p : r.changed)
                changed += (changed.empty() ? "" : ",") + std::to_string(p);
    }
    std::string rejection = "accepted";
    bool rejected = false;
    try {
        pattern_copier(h, {{10, 14}, {}}, c, 0, levels);
    } catch (const Error & e) {
        const std::string what = e.what();
        rejected = e.kind() == ErrorKind::Verification && what.find("(10)") != std::string::npos &&
            what.find("(14)") != std::string::npos;
        rejection = what;
    }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = coding_failures == 0 && certificate_failures == 0 && rejected && t < 5.0;
    o.detail = std::to_string(marked) + " marked points, " + std::to_string(coding_failures) + " coding mismatches, " +
        std::to_string(certificate_failures) + " certificate failures, A_1={10} changes {" + changed +
        "}; spacing violation: " + rejection + "; " + fixed(t) + " s";
    return o;
}

// --- 8 ---------------------------------------------------------------------------

// Exhaustive count of acceptable patterns over r disjoint blocks of d cells with
// k+1 symbols. Cell 0 of a block is sigma; the block marks i when sigma holds i
// and the other cells hold 0. A pattern is acceptable when every marker appears.
BigInt exhaustive_acceptable(int k, unsigned d, unsigned r)
{
    const std::uint64_t per_block = pow(BigInt(k + 1), d).get_ui();
    std::vector<unsigned> seen(static_cast<std::size_t>(k) + 1, 0);
    std::uint64_t count = 0;
    int covered = 0;
    std::function<void(unsigned)> walk = [&](unsigned block) {
        const bool last = block + 1 == r;
        for (std::uint64_t content = 0; content < per_block; ++content) {
            const auto mark = content <= static_cast<std::uint64_t>(k) ? static_cast<std::size_t>(content) : 0;
            if (mark && seen[mark]++ == 0)
                ++covered;
            if (last)
                count += covered == k;
            else
                walk(block + 1);
            if (mark && --seen[mark] == 0)
                --covered;
        }
    };
    walk(0);
    return BigInt(static_cast<unsigned long>(count));
}

Outcome criterion_8()
{
    auto t0 = Clock::now();
    int k1_cases = 0, k1_equal = 0, multi_cases = 0, multi_strict = 0, library_checked = 0, library_mismatch = 0;
    const BigInt cap = pow(BigInt(2), 16);
    for (int k = 1; BigInt(k + 1) <= cap; ++k)
        for (unsigned d = 1; pow(BigInt(k + 1), d) <= cap; ++d)
            for (unsigned r = 1; pow(BigInt(k + 1), d * r) <= cap; ++r) {
                const BigInt total = pow(BigInt(k + 1), d * r);
                Rational exact(exhaustive_acceptable(k, d, r), total);
                exact.canonicalize();
                const auto bound = pattern_fraction_bound(d, r, k).value;
                if (k == 1) {
                    ++k1_cases;
                    k1_equal += bound == exact;
                } else {
                    ++multi_cases;
                    multi_strict += bound < exact;
                }
                if (total <= 4096 && k <= 8) {
                    ++library_checked;
                    const auto D = zrange(0, static_cast<std::int64_t>(d) - 1);
                    const auto R = zrange(0, static_cast<std::int64_t>((2 * d - 1) * (r - 1)), 2 * d - 1);
                    auto sys = acceptable_pattern_system(Z1, D, R, k);
                    Rational counted(count_allowed_patterns(sys), total);
                    counted.canonicalize();
                    library_mismatch += counted != exact;
                }
            }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = k1_equal == k1_cases && multi_strict == multi_cases && library_mismatch == 0 && t < 30.0;
    o.detail = "single-marker regime: equal in " + std::to_string(k1_equal) + "/" + std::to_string(k1_cases) +
        " (|D|,|R|); k >= 2: strictly below the exhaustive fraction in " + std::to_string(multi_strict) + "/" +
        std::to_string(multi_cases) + " (marker-absence events share the all-zero pattern); library count agrees in " +
        std::to_string(library_checked - library_mismatch) + "/" + std::to_string(library_checked) + "; " + fixed(t) + " s";
    return o;
}

// --- 9 ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path & p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome criterion_9()
{
    auto t0 = Clock::now();
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("sepshift-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = SEPSHIFT_CLI_PATH;
    std::vector<std::string> docs, images;
    int exit_failures = 0;
    for (int run = 0; run < 2; ++run) {
        const auto doc = dir / ("separator" + std::to_string(run) + ".json");
        const auto svg = dir / ("separator" + std::to_string(run) + ".svg");
        const std::string build = "\"" + cli + "\" sep build --family product --window '{\"kind\":\"torus\",\"moduli\":[24,24]}'" +
            " --L 4,4 --out \"" + doc.string() + "\" > /dev/null";
        const std::string render = "\"" + cli + "\" sep render --labeling \"" + doc.string() + "\" --out \"" + svg.string() + "\"";
        exit_failures += std::system(build.c_str()) != 0;
        exit_failures += std::system(render.c_str()) != 0;
        docs.push_back(slurp(doc));
        images.push_back(slurp(svg));
    }
    Outcome o;
    std::size_t certified = 0, other = 0;
    bool readback = false;
    try {
        auto j = io::read_document(docs[0], "labeling");
        const auto & cert = j.at("verification").at("certificate");
        certified = cert.at("certified_finite").get<std::size_t>();
        other = cert.at("wraps_infinite").get<std::size_t>() + cert.at("touches_collar").get<std::size_t>();
        auto l = io::labeling_from_json(j.at("labeling"));
        auto again = wrap_certificate(l, standard_generators(Z2));
        readback = again.all_certified() && again.count(ComponentStatus::CertifiedFinite) == certified && l.k == 4;
    } catch (const std::exception & e) {
        o.detail = std::string("unreadable output: ") + e.what() + "; ";
    }
    const bool stable = docs[0] == docs[1] && images[0] == images[1] && !images[0].empty();
    fs::remove_all(dir);
    const double t = seconds_since(t0);
    o.pass = exit_failures == 0 && stable && readback && certified > 0 && other == 0;
    o.detail += std::to_string(exit_failures) + " nonzero exits, SVG " + std::to_string(images[0].size()) + " bytes " +
        (stable ? "byte-identical" : "differing") + " across runs, certificate: " + std::to_string(certified) +
        " CertifiedFinite and " + std::to_string(other) + " other components; " + fixed(t) + " s";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"marker parameters minimal_r(1,1,1)", criterion_1},
        {"nonemptiness check coherence", criterion_2},
        {"Moser-Tardos soundness", criterion_3},
        {"derandomizer contract", criterion_4},
        {"separator constructions", criterion_5},
        {"syndetic spaced pipeline", criterion_6},
        {"pattern copier", criterion_7},
        {"acceptable-pattern fraction bound", criterion_8},
        {"product separator figure", criterion_9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception & e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << "  "
                  << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}

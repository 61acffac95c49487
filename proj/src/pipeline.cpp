#include "sepshift/pipeline.hpp"

#include "sepshift/error.hpp"

#include <algorithm>

namespace sepshift {

namespace {

std::vector<char> membership(const Window & window, std::span<const std::size_t> A)
{
    std::vector<char> in(window.size(), 0);
    for (auto a : A) {
        if (a >= window.size())
            fail(ErrorKind::Usage, "set point outside the carrier");
        in[a] = 1;
    }
    return in;
}

FiniteSet without_identity(const GroupDescriptor & G, const FiniteSet & S)
{
    std::vector<GroupElement> out;
    for (const auto & g : S)
        if (!is_identity(G, g))
            out.push_back(g);
    return FiniteSet(std::move(out));
}

std::string point_name(const Window & w, std::size_t p) { return to_string(w.point(p)); }

} // namespace

// --- verifiers ------------------------------------------------------------------

SpacingReport is_phi_spaced(const Window & window, std::span<const std::size_t> A, const FiniteSet & phi)
{
    const auto & G = window.group();
    auto in = membership(window, A);
    auto steps = without_identity(G, set_product(G, set_inverse(G, phi), phi));
    std::vector<std::size_t> order(A.begin(), A.end());
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    SpacingReport out;
    for (auto x : order)
        for (const auto & delta : steps) {
            auto y = window.act(delta, x);
            if (y && in[*y]) {
                out.spaced = false;
                out.witness = std::make_pair(x, *y);
                return out;
            }
        }
    return out;
}

SyndeticReport is_F_syndetic_window(const Window & window, std::span<const std::size_t> A, const FiniteSet & F)
{
    auto in = membership(window, A);
    SyndeticReport out;
    out.F = F;
    for (std::size_t x = 0; x < window.size(); ++x) {
        auto scope = scope_of(window, F, x);
        if (!scope)
            continue;
        ++out.interior;
        if (std::none_of(scope->begin(), scope->end(), [&](std::size_t q) { return in[q] != 0; }))
            out.failures.push_back(x);
    }
    return out;
}

GreedyResult greedy_spaced_subset(const GroupDescriptor & G, const FiniteSet & F, const FiniteSet & D, std::size_t r)
{
    if (r < 1)
        fail(ErrorKind::Usage, "target size r must be positive");
    auto DD = set_product(G, set_inverse(G, D), D);
    std::vector<char> alive(F.size(), 1);
    GreedyResult out;
    out.target = r;
    std::vector<GroupElement> picks;
    for (std::size_t i = 0; i < F.size() && picks.size() < r; ++i) {
        if (!alive[i])
            continue;
        picks.push_back(F[i]);
        for (const auto & delta : DD) {
            auto j = F.index_of(multiply(G, delta, F[i]));
            if (j < F.size())
                alive[j] = 0;
        }
    }
    out.picks = FiniteSet(std::move(picks));
    return out;
}

// --- parameters ---------------------------------------------------------------------

CertifiedComparison marker_bound(int s, int k, unsigned long d, unsigned long r)
{
    if (s < 1 || k < 1 || d < 1 || r < 1)
        fail(ErrorKind::Usage, "s, k, d and r must be positive");
    const auto e = static_cast<unsigned long>(s + 1);
    Rational miss(pow(BigInt(k + 1), d) - 1, pow(BigInt(k + 1), d));
    miss.canonicalize();
    Rational factor(BigInt(k) * pow(BigInt(r), 2 * e));
    return certify_leq_one([&](long bits) {
        Enclosure v = Enclosure::exact(miss, bits).pow(r);
        v *= factor;
        v *= Enclosure::euler(bits).pow(e);
        return v;
    });
}

MinimalR minimal_r(int s, int k, unsigned long d, unsigned long cap)
{
    // log of the left side is concave in r and the left side exceeds 1 at r = 1,
    // so the accepted r form a final segment and bisection finds its start.
    auto decide = [&](unsigned long r) {
        auto c = marker_bound(s, k, d, r);
        if (c.verdict == Verdict::Unknown)
            fail(ErrorKind::Resource, "comparison undecided at the precision cap for r = " + std::to_string(r));
        return c;
    };
    unsigned long lo = 1, hi = 1;
    auto c_hi = decide(hi);
    while (c_hi.verdict != Verdict::Accept) {
        lo = hi;
        if (hi >= cap)
            fail(ErrorKind::Resource,
                "no r up to the cap " + std::to_string(cap) + " satisfies the bound (rejected at " + std::to_string(lo)
                    + ")");
        hi = std::min(cap, hi * 2);
        c_hi = decide(hi);
    }
    if (hi == 1)
        fail(ErrorKind::Verification, "bound already holds at r = 1");
    while (hi - lo > 1) {
        auto mid = lo + (hi - lo) / 2;
        auto c = decide(mid);
        if (c.verdict == Verdict::Accept) {
            hi = mid;
            c_hi = c;
        } else {
            lo = mid;
        }
    }
    MinimalR out;
    out.r = hi;
    out.n = BigInt(d) * BigInt(d) * BigInt(hi);
    out.at_r = c_hi;
    out.below_r = decide(hi - 1);
    return out;
}

// --- pipeline ----------------------------------------------------------------------------

SpacedFamily syndetic_spaced_pipeline(
    WindowPtr window, const FiniteSet & phi, int k, const FiniteSet & F, const PipelineOptions & options)
{
    if (!window)
        fail(ErrorKind::Usage, "pipeline has no window");
    if (k < 1)
        fail(ErrorKind::Usage, "k must be positive");
    if (phi.empty() || F.empty())
        fail(ErrorKind::Usage, "Phi and F must be nonempty");
    const auto & G = window->group();
    for (const auto & g : phi)
        check_element(G, g);
    for (const auto & g : F)
        check_element(G, g);

    SpacedFamily out;
    out.window = window;
    out.phi = phi;
    out.F = F;
    out.k = k;
    out.mode = options.mode;
    out.D = set_product(G, set_inverse(G, phi), phi);
    const auto DD = set_product(G, set_inverse(G, out.D), out.D);

    if (options.mode == PipelineMode::Strict) {
        auto mr = minimal_r(options.s, k, out.D.size());
        if (BigInt(static_cast<unsigned long>(F.size())) < mr.n)
            fail(ErrorKind::Usage,
                "Strict needs |F| >= n = " + mr.n.get_str() + ", got " + std::to_string(F.size()));
        out.r = mr.r;
        out.n = mr.n;
    } else {
        if (options.r < 1)
            fail(ErrorKind::Usage, "Empirical mode needs r >= 1");
        if (F.size() < DD.size() * options.r)
            fail(ErrorKind::Usage,
                "Empirical mode needs |F| >= |D^-1 D|·r = " + std::to_string(DD.size() * options.r));
        out.r = options.r;
    }

    auto greedy = greedy_spaced_subset(G, F, out.D, out.r);
    if (!greedy.complete())
        fail(ErrorKind::Verification,
            "greedy spaced subset reached only " + std::to_string(greedy.picks.size()) + " of " + std::to_string(out.r));
    out.R = greedy.picks;
    auto system = acceptable_pattern_system(G, out.D, out.R, k);
    out.W = system.W();

    if (options.mode == PipelineMode::Strict) {
        auto check = cont_lll_check(options.s, system);
        if (check.verdict != Verdict::Accept)
            fail(ErrorKind::Verification,
                std::string("continuous LLL bound not accepted for the marker system (") + to_string(check.verdict)
                    + ")");
    }

    EventSystem events(window, std::move(system));
    if (options.witness) {
        auto res = derandomized_solve(events, *options.witness, options.s, options.derandomize);
        out.markers = std::move(res.labeling);
        out.solver = "derandomized";
    } else {
        auto res = moser_tardos_solve(events, options.seed, options.max_resamples);
        if (!res.solved)
            fail(ErrorKind::Resource,
                "Moser-Tardos did not converge within " + std::to_string(options.max_resamples) + " resamples ("
                    + std::to_string(res.trace.back().second) + " events still violated)");
        out.markers = std::move(*res.labeling);
        out.solver = "moser-tardos";
    }

    const auto ring = without_identity(G, out.D);
    out.sets.assign(static_cast<std::size_t>(k), {});
    for (std::size_t x = 0; x < window->size(); ++x) {
        const int i = out.markers.values[x];
        if (i == 0)
            continue;
        bool isolated = true;
        for (const auto & delta : ring) {
            auto y = window->act(delta, x);
            if (!y || out.markers.values[*y] != 0) {
                isolated = false;
                break;
            }
        }
        if (isolated) {
            out.sets[static_cast<std::size_t>(i - 1)].push_back(x);
            out.union_set.push_back(x);
        }
    }

    out.spacing = is_phi_spaced(*window, out.union_set, phi);
    if (!out.spacing.spaced)
        fail(ErrorKind::Verification,
            "extracted union is not Phi-spaced at (" + point_name(*window, out.spacing.witness->first) + ", "
                + point_name(*window, out.spacing.witness->second) + ")");
    for (std::size_t i = 0; i < out.sets.size(); ++i) {
        out.syndetic.push_back(is_F_syndetic_window(*window, out.sets[i], F));
        const auto & rep = out.syndetic.back();
        if (!rep.passed())
            fail(ErrorKind::Verification,
                "A_" + std::to_string(i + 1) + " is not F-syndetic"
                    + (rep.vacuous() ? std::string(" (empty F-interior)")
                                     : " at " + point_name(*window, rep.failures.front())));
    }
    return out;
}

// --- copier ---------------------------------------------------------------------------------

void CylinderConstraint::validate(const GroupDescriptor & G) const
{
    if (!D.contains(identity(G)))
        fail(ErrorKind::Usage, "cylinder set D must contain the identity");
    if (alphabet < 2)
        fail(ErrorKind::Usage, "cylinder alphabet must be at least 2");
    for (const auto & per_level : patterns)
        for (const auto & p : per_level) {
            if (p.size() != D.size())
                fail(ErrorKind::Usage, "cylinder pattern length does not match |D|");
            for (auto v : p)
                if (v < 0 || v >= alphabet)
                    fail(ErrorKind::Usage, "cylinder pattern value outside the alphabet");
        }
}

FiniteSet copier_safety_set(
    const GroupDescriptor & G, const std::vector<FiniteSet> & levels, const FiniteSet & D, std::size_t cap)
{
    if (!D.contains(identity(G)))
        fail(ErrorKind::Usage, "D must contain the identity");
    const auto DDinv = set_product(G, D, set_inverse(G, D));
    FiniteSet out;
    for (const auto & level : levels) {
        auto star = symmetrize(G, level);
        out = set_union(out, set_product(G, set_product(G, star, DDinv), star));
        if (out.size() > cap)
            fail(ErrorKind::Resource, "safety set exceeds the cap");
    }
    return out;
}

CopyResult pattern_copier(const Labeling & h, const std::vector<std::vector<std::size_t>> & sets,
    const CylinderConstraint & constraints, std::size_t n, const std::vector<FiniteSet> & levels)
{
    h.validate();
    const Window & w = *h.window;
    const auto & G = w.group();
    constraints.validate(G);
    if (h.k != constraints.alphabet)
        fail(ErrorKind::Usage, "separator alphabet does not match the cylinder alphabet");
    if (sets.size() != constraints.patterns.size())
        fail(ErrorKind::Usage, "number of marked sets does not match the number of cylinder patterns");
    if (n >= levels.size())
        fail(ErrorKind::Usage, "level n outside the supplied prefix Phi_0..Phi_{N-1}");
    for (const auto & per_level : constraints.patterns)
        if (per_level.size() != levels.size())
            fail(ErrorKind::Usage, "each cylinder needs one pattern per level");

    CopyResult out;
    out.safety = copier_safety_set(G, levels, constraints.D);
    const auto mode = w.is_torus() ? SeparatorMode::Exact : SeparatorMode::Interior;

    std::vector<int> owner(w.size(), 0);
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (auto y : sets[i]) {
            if (y >= w.size())
                fail(ErrorKind::Usage, "marked point outside the carrier");
            if (owner[y] != 0)
                fail(ErrorKind::Verification, "marked sets overlap at " + point_name(w, y));
            owner[y] = static_cast<int>(i + 1);
            all.push_back(y);
        }
    auto spacing = is_phi_spaced(w, all, out.safety);
    if (!spacing.spaced)
        fail(ErrorKind::Verification,
            "marked points violate the spacing precondition: (" + point_name(w, spacing.witness->first) + ", "
                + point_name(w, spacing.witness->second) + ")");

    auto base = verify_separator(h, h.k - 1, out.safety, mode);
    if (!base.passed)
        fail(ErrorKind::Verification, "separator h fails verification for the safety set " + to_string(out.safety));

    out.f = h;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto & phi_in = constraints.patterns[i][n];
        for (auto y : sets[i])
            for (std::size_t j = 0; j < constraints.D.size(); ++j) {
                auto x = w.act(constraints.D[j], y);
                if (!x)
                    fail(ErrorKind::Usage, "D·" + point_name(w, y) + " leaves the window");
                out.f.values[*x] = phi_in[j];
            }
    }
    for (std::size_t p = 0; p < w.size(); ++p)
        if (out.f.values[p] != h.values[p])
            out.changed.push_back(p);

    for (std::size_t i = 0; i < sets.size(); ++i)
        for (auto y : sets[i]) {
            auto code = coding_map(out.f, y, constraints.D);
            for (std::size_t j = 0; j < code.size(); ++j)
                if (code[j].second != constraints.patterns[i][n][j])
                    fail(ErrorKind::Verification, "copied pattern does not read back at " + point_name(w, y));
        }
    out.certificate = verify_separator(out.f, h.k - 1, levels[n], mode);
    if (!out.certificate.passed)
        fail(ErrorKind::Verification, "modified map is not a separator for Phi_n = " + to_string(levels[n]));
    return out;
}

} // namespace sepshift

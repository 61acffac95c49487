#include "sepshift/lll.hpp"

#include "sepshift/error.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace sepshift {

// --- EventSystem ------------------------------------------------------------

EventSystem::EventSystem(WindowPtr window, PatternSystem system) :
    window_(std::move(window)), system_(std::move(system))
{
    if (!window_)
        fail(ErrorKind::Usage, "event system has no window");
    for (const auto & s : system_.W())
        check_element(window_->group(), s);
    touching_.resize(window_->size());
    for (std::size_t x = 0; x < window_->size(); ++x) {
        auto scope = scope_of(*window_, system_.W(), x);
        if (!scope)
            continue;
        const std::size_t id = events_.size();
        std::vector<std::size_t> distinct = *scope;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto p : distinct)
            touching_[p].push_back(id);
        events_.push_back(Event{x, std::move(*scope)});
    }
}

bool EventSystem::violated(std::size_t event, std::span<const int> values) const
{
    const auto & scope = events_[event].scope;
    std::vector<int> pattern(scope.size());
    for (std::size_t j = 0; j < scope.size(); ++j)
        pattern[j] = values[scope[j]];
    return !system_.allows(pattern);
}

std::vector<std::size_t> EventSystem::violations(std::span<const int> values) const
{
    if (values.size() != window_->size())
        fail(ErrorKind::Usage, "assignment size does not match the window");
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < events_.size(); ++e)
        if (violated(e, values))
            out.push_back(e);
    return out;
}

// --- conditions ---------------------------------------------------------------

LllParameters lll_parameters(const PatternSystem & system)
{
    const auto w = static_cast<unsigned long>(system.W().size());
    return LllParameters{system.violation_probability_bound(), w * w};
}

std::size_t dependency_degree(const EventSystem & system)
{
    const auto & events = system.events();
    std::vector<std::size_t> stamp(events.size(), std::numeric_limits<std::size_t>::max());
    std::size_t best = 0;
    for (std::size_t e = 0; e < events.size(); ++e) {
        std::size_t count = 0;
        for (auto p : events[e].scope)
            for (auto f : system.events_at(p))
                if (stamp[f] != e) {
                    stamp[f] = e;
                    ++count;
                }
        best = std::max(best, count);
    }
    return best;
}

CertifiedComparison symmetric_lll_check(const Rational & p, unsigned long d)
{
    if (sgn(p) < 0 || p > 1)
        fail(ErrorKind::Usage, "p must lie in [0, 1]");
    if (d < 1)
        fail(ErrorKind::Usage, "d must be at least 1");
    return certify_e_power_times(1, p * Rational(BigInt(d)));
}

namespace {

Rational violation_fraction(int k, std::size_t wsize, const BigInt & pcount)
{
    if (k < 1 || wsize < 1)
        fail(ErrorKind::Usage, "k and |W| must be positive");
    BigInt total = pow(BigInt(k), wsize);
    if (sgn(pcount) < 0 || pcount > total)
        fail(ErrorKind::Usage, "pattern count outside 0..k^|W|");
    Rational q(pcount, total);
    q.canonicalize();
    return Rational(1) - q;
}

CertifiedComparison cont_bound(int s, const Rational & violation, std::size_t wsize)
{
    if (s < 1)
        fail(ErrorKind::Usage, "s must be at least 1");
    const auto e = static_cast<unsigned long>(s + 1);
    Rational q = violation * Rational(pow(BigInt(static_cast<unsigned long>(wsize)), 2 * e));
    return certify_e_power_times(e, q);
}

} // namespace

CertifiedComparison sft_nonempty_check(int k, std::size_t wsize, const BigInt & pcount)
{
    Rational q = violation_fraction(k, wsize, pcount);
    q *= Rational(BigInt(static_cast<unsigned long>(wsize * wsize)));
    return certify_e_power_times(1, q);
}

CertifiedComparison cont_lll_check(int s, int k, std::size_t wsize, const BigInt & pcount)
{
    return cont_bound(s, violation_fraction(k, wsize, pcount), wsize);
}

CertifiedComparison cont_lll_check(int s, const PatternSystem & system)
{
    return cont_bound(s, system.violation_probability_bound(), system.W().size());
}

// --- conditional probabilities ----------------------------------------------------

std::optional<int> ConditionalAssignment::value(std::size_t p) const
{
    if (values_[p] < 0)
        return std::nullopt;
    return values_[p];
}

void ConditionalAssignment::assign(std::size_t p, int v)
{
    if (values_[p] >= 0)
        fail(ErrorKind::Usage, "point " + std::to_string(p) + " is already assigned");
    if (v < 0)
        fail(ErrorKind::Usage, "assigned value must be nonnegative");
    values_[p] = v;
    order_.push_back(p);
}

void ConditionalAssignment::unassign_last()
{
    if (order_.empty())
        fail(ErrorKind::Usage, "nothing to unassign");
    values_[order_.back()] = -1;
    order_.pop_back();
}

Rational event_probability(const EventSystem & system, std::size_t event, std::span<const int> partial, std::size_t cap)
{
    if (event >= system.events().size())
        fail(ErrorKind::Usage, "event index out of range");
    if (partial.size() != system.window().size())
        fail(ErrorKind::Usage, "assignment size does not match the window");
    const auto & scope = system.events()[event].scope;
    std::vector<std::size_t> free_points;
    std::vector<int> slot(scope.size(), -1);
    for (std::size_t j = 0; j < scope.size(); ++j) {
        if (partial[scope[j]] >= 0)
            continue;
        auto it = std::find(free_points.begin(), free_points.end(), scope[j]);
        slot[j] = static_cast<int>(it - free_points.begin());
        if (it == free_points.end())
            free_points.push_back(scope[j]);
    }
    if (free_points.size() > cap)
        fail(ErrorKind::Resource,
            "event has " + std::to_string(free_points.size()) + " unassigned coordinates, above the cap of "
                + std::to_string(cap));

    const int k = system.k();
    std::vector<int> completion(free_points.size(), 0), pattern(scope.size());
    unsigned long bad = 0, total = 0;
    while (true) {
        for (std::size_t j = 0; j < scope.size(); ++j)
            pattern[j] = slot[j] < 0 ? partial[scope[j]] : completion[static_cast<std::size_t>(slot[j])];
        bad += system.patterns().allows(pattern) ? 0 : 1;
        ++total;
        std::size_t i = completion.size();
        while (i > 0 && ++completion[i - 1] == k)
            completion[--i] = 0;
        if (i == 0)
            break;
    }
    Rational q{BigInt(bad), BigInt(total)};
    q.canonicalize();
    return q;
}

Rational event_probability(const EventSystem & system, std::size_t event, const ConditionalAssignment & h, std::size_t cap)
{
    return event_probability(system, event, h.raw(), cap);
}

// --- Moser-Tardos -------------------------------------------------------------

int uniform_below(std::mt19937_64 & rng, int k)
{
    if (k < 1)
        fail(ErrorKind::Usage, "alphabet must be positive");
    const std::uint64_t n = static_cast<std::uint64_t>(k);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do
        x = rng();
    while (x >= limit);
    return static_cast<int>(x % n);
}

MoserTardosResult moser_tardos_solve(const EventSystem & system, std::uint64_t seed, std::uint64_t max_resamples)
{
    const Window & w = system.window();
    std::mt19937_64 rng(seed);
    std::vector<int> values(w.size());
    for (auto & v : values)
        v = uniform_below(rng, system.k());

    std::set<std::size_t> bad;
    for (std::size_t e = 0; e < system.events().size(); ++e)
        if (system.violated(e, values))
            bad.insert(e);

    MoserTardosResult out;
    std::uint64_t next_trace = 0;
    auto record = [&] {
        if (out.resamples == next_trace) {
            out.trace.emplace_back(out.resamples, bad.size());
            next_trace = next_trace == 0 ? 1 : next_trace * 2;
        }
    };
    record();
    std::vector<std::size_t> points;
    while (!bad.empty()) {
        if (out.resamples >= max_resamples) {
            if (out.trace.back().first != out.resamples)
                out.trace.emplace_back(out.resamples, bad.size());
            return out;
        }
        const auto e = *bad.begin();
        points = system.events()[e].scope;
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        for (auto p : points)
            values[p] = uniform_below(rng, system.k());
        ++out.resamples;
        for (auto p : points)
            for (auto f : system.events_at(p)) {
                if (system.violated(f, values))
                    bad.insert(f);
                else
                    bad.erase(f);
            }
        record();
    }
    if (out.trace.back().first != out.resamples)
        out.trace.emplace_back(out.resamples, 0);
    out.solved = true;
    out.labeling = Labeling{system.window_ptr(), system.k(), std::move(values)};
    return out;
}

// --- derandomizer -----------------------------------------------------------------

FiniteSet derandomizer_phi(const GroupDescriptor & G, const FiniteSet & W)
{
    return set_product(G, W, set_inverse(G, W));
}

DerandomizeResult derandomized_solve(
    const EventSystem & system, const PartitionWitness & witness, int s, const DerandomizeOptions & options)
{
    witness.validate();
    const Window & w = system.window();
    if (!(*witness.window == w))
        fail(ErrorKind::Usage, "witness window differs from the event system window");
    if (s < 1 || witness.classes.size() != static_cast<std::size_t>(s + 1))
        fail(ErrorKind::Usage, "witness must have s+1 classes with s >= 1");

    const auto phi = derandomizer_phi(w.group(), system.W());
    const auto wsize = static_cast<unsigned long>(system.W().size());
    DerandomizeResult out;
    out.d = wsize * wsize;

    if (!options.unsafe) {
        auto check = cont_lll_check(s, system.patterns());
        if (check.verdict != Verdict::Accept)
            fail(ErrorKind::Verification,
                std::string("continuous LLL bound not accepted (") + to_string(check.verdict) + ", left side in ["
                    + check.lower + ", " + check.upper + "])");
        auto report = phi_finite_certificate(separator_from_partition(witness), phi);
        if (report.count(ComponentStatus::WrapsInfinite) != 0)
            fail(ErrorKind::Verification, "witness class is not Phi-finite for Phi = W W^-1 = " + to_string(phi));
    }

    ConditionalAssignment h(w.size());
    std::vector<int> local(w.size(), -1);
    std::vector<std::size_t> stamp(system.events().size(), std::numeric_limits<std::size_t>::max());
    std::size_t stamp_id = 0;

    for (int i = 0; i <= s; ++i) {
        EulerThreshold threshold(out.d, static_cast<unsigned long>(s - i));
        auto comps = components(w, phi, witness.classes[static_cast<std::size_t>(i)]);
        StageSnapshot snap;
        snap.stage = i;
        snap.components = comps.size();
        for (const auto & C : comps) {
            snap.largest_component = std::max(snap.largest_component, C.size());
            if (C.size() > options.component_cap)
                fail(ErrorKind::Resource,
                    "component of size " + std::to_string(C.size()) + " at " + to_string(w.point(C.front()))
                        + " exceeds the cap of " + std::to_string(options.component_cap));
            for (std::size_t j = 0; j < C.size(); ++j)
                local[C[j]] = static_cast<int>(j);

            // bucket each event meeting C by the last C-coordinate it depends on
            std::vector<std::vector<std::size_t>> due(C.size());
            ++stamp_id;
            for (auto p : C)
                for (auto e : system.events_at(p)) {
                    if (stamp[e] == stamp_id)
                        continue;
                    stamp[e] = stamp_id;
                    int last = -1;
                    for (auto q : system.events()[e].scope)
                        last = std::max(last, local[q]);
                    due[static_cast<std::size_t>(last)].push_back(e);
                }

            std::vector<int> val(C.size(), -1);
            std::size_t j = 0;
            while (j < C.size()) {
                if (val[j] >= 0)
                    h.unassign_last();
                if (++val[j] == system.k()) {
                    val[j] = -1;
                    if (j == 0)
                        fail(ErrorKind::Verification,
                            "no good assignment exists for the stage-" + std::to_string(i) + " component at "
                                + to_string(w.point(C.front())));
                    --j;
                    continue;
                }
                h.assign(C[j], val[j]);
                if (++out.nodes > options.node_budget)
                    fail(ErrorKind::Resource, "derandomizer search exceeded the node budget");
                bool good = true;
                for (auto e : due[j])
                    if (!threshold.below(event_probability(system, e, h))) {
                        good = false;
                        break;
                    }
                if (good)
                    ++j;
            }
            for (auto p : C)
                local[p] = -1;
        }
        if (options.record_stages) {
            snap.partial = h.raw();
            for (std::size_t e = 0; e < system.events().size(); ++e) {
                auto q = event_probability(system, e, h);
                if (q > snap.max_probability)
                    snap.max_probability = q;
            }
            out.stages.push_back(std::move(snap));
        }
    }

    out.labeling = Labeling{system.window_ptr(), system.k(), h.raw()};
    out.labeling.validate();
    if (!system.violations(out.labeling.values).empty())
        fail(ErrorKind::Verification, "derandomized assignment violates an event");
    return out;
}

} // namespace sepshift

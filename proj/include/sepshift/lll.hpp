#pragma once

// Local Lemma machinery for the variable model over a window: one bad event
// per point x, "the W-pattern at x is not allowed", with scope W·x. Includes
// the symmetric and subshift conditions, a seeded Moser-Tardos solver, and
// the conditional-probabilities derandomizer driven by a partition witness.

#include "sepshift/certified.hpp"
#include "sepshift/separator.hpp"
#include "sepshift/sft.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace sepshift {

struct Event {
    std::size_t owner = 0;          // carrier index x
    std::vector<std::size_t> scope; // carrier indices of W·x in W's canonical order
};

class EventSystem {
public:
    /// One event per point whose scope W·x lies in the carrier (all points on a torus).
    EventSystem(WindowPtr window, PatternSystem system);

    const Window & window() const noexcept { return *window_; }
    const WindowPtr & window_ptr() const noexcept { return window_; }
    const PatternSystem & patterns() const noexcept { return system_; }
    int k() const noexcept { return system_.k(); }
    const FiniteSet & W() const noexcept { return system_.W(); }
    const std::vector<Event> & events() const noexcept { return events_; }
    /// Events whose scope contains carrier point p, ascending.
    const std::vector<std::size_t> & events_at(std::size_t p) const { return touching_[p]; }

    /// Violation on a total assignment.
    bool violated(std::size_t event, std::span<const int> values) const;
    /// Indices of all violated events, ascending.
    std::vector<std::size_t> violations(std::span<const int> values) const;

private:
    WindowPtr window_;
    PatternSystem system_;
    std::vector<Event> events_;
    std::vector<std::vector<std::size_t>> touching_;
};

struct LllParameters {
    Rational p;          // upper bound on each event's probability
    unsigned long d = 1; // dependency bound
};

/// p from the pattern system bound, d = |W|^2.
LllParameters lll_parameters(const PatternSystem & system);

/// max over events of #{events with intersecting scope}, counting the event itself.
std::size_t dependency_degree(const EventSystem & system);

/// e·p·d <= 1. Throws Usage unless 0 <= p <= 1 and d >= 1.
CertifiedComparison symmetric_lll_check(const Rational & p, unsigned long d);

/// e·(1 - pcount/k^wsize)·wsize^2 <= 1. Throws Usage unless 0 <= pcount <= k^wsize.
CertifiedComparison sft_nonempty_check(int k, std::size_t wsize, const BigInt & pcount);

/// e^(s+1)·(1 - pcount/k^wsize)·wsize^(2(s+1)) <= 1.
CertifiedComparison cont_lll_check(int s, int k, std::size_t wsize, const BigInt & pcount);
/// Same inequality with the violation probability bound of the system in place of 1 - pcount/k^wsize.
CertifiedComparison cont_lll_check(int s, const PatternSystem & system);

/// Partial assignment carrier -> k that only ever grows.
class ConditionalAssignment {
public:
    explicit ConditionalAssignment(std::size_t size) : values_(size, -1) {}

    bool assigned(std::size_t p) const { return values_[p] >= 0; }
    std::optional<int> value(std::size_t p) const;
    /// Throws Usage when p is already assigned.
    void assign(std::size_t p, int v);
    /// Undo of the most recent assignment, for backtracking searches.
    void unassign_last();

    std::size_t size() const noexcept { return values_.size(); }
    std::size_t assigned_count() const noexcept { return order_.size(); }
    const std::vector<int> & raw() const noexcept { return values_; } // -1 = unassigned
    const std::vector<std::size_t> & order() const noexcept { return order_; }

private:
    std::vector<int> values_;
    std::vector<std::size_t> order_;
};

inline constexpr std::size_t default_probability_cap = 20;

/// P[B | h]: violating completions of the unassigned scope coordinates over k^#unassigned.
/// Throws Resource when more than `cap` distinct coordinates are unassigned.
Rational event_probability(const EventSystem & system, std::size_t event, std::span<const int> partial,
    std::size_t cap = default_probability_cap);
Rational event_probability(const EventSystem & system, std::size_t event, const ConditionalAssignment & h,
    std::size_t cap = default_probability_cap);

// --- Moser-Tardos ------------------------------------------------------------

struct MoserTardosResult {
    bool solved = false;
    std::optional<Labeling> labeling; // set only when solved
    std::uint64_t resamples = 0;
    /// (resample count, violated events) after 0, 1, 2, 4, 8, ... resamples and at the end.
    std::vector<std::pair<std::uint64_t, std::size_t>> trace;
};

/// Uniform value in [0, k) from a 64-bit engine by rejection sampling.
int uniform_below(std::mt19937_64 & rng, int k);

MoserTardosResult moser_tardos_solve(const EventSystem & system, std::uint64_t seed, std::uint64_t max_resamples);

// --- derandomizer --------------------------------------------------------------

struct DerandomizeOptions {
    bool unsafe = false;                  // skip the cont_lll_check and witness preconditions
    std::size_t component_cap = 24;
    std::uint64_t node_budget = 1ull << 26; // search nodes over the whole run
    bool record_stages = false;
};

struct StageSnapshot {
    int stage = 0;
    std::vector<int> partial;       // f_0 ∪ ... ∪ f_stage, -1 = unassigned
    Rational max_probability;       // max over events of P[B_x | partial]
    std::size_t components = 0;
    std::size_t largest_component = 0;
};

struct DerandomizeResult {
    Labeling labeling;
    std::vector<StageSnapshot> stages; // filled when record_stages
    std::uint64_t nodes = 0;
    unsigned long d = 1;
};

/// The witness Phi required by the derandomizer: W W^{-1}.
FiniteSet derandomizer_phi(const GroupDescriptor & G, const FiniteSet & W);

/// Processes classes X_0..X_s in order; within class i each W W^{-1}-component C
/// receives the lexicographically minimal h: C -> k keeping every conditional
/// probability below (e·d)^{-(s-i)}, d = |W|^2.
/// Throws Verification when the witness is invalid, the bound is rejected, or
/// no good h exists; Resource for caps and undecided comparisons.
DerandomizeResult derandomized_solve(
    const EventSystem & system, const PartitionWitness & witness, int s, const DerandomizeOptions & options = {});

} // namespace sepshift

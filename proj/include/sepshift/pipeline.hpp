#pragma once

// Spaced and syndetic sets on windows, the marker pipeline that produces
// disjoint F-syndetic sets with a Phi-spaced union, and the copier that
// stamps prescribed D-patterns onto a separator around marked points.

#include "sepshift/lll.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sepshift {

// --- verifiers ------------------------------------------------------------------

struct SpacingReport {
    bool spaced = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness; // (x, y) with y in Phi^{-1}Phi·x
};

/// A is Phi-spaced iff y ∉ (Phi^{-1}Phi \ {1})·x for all x, y in A. On a torus
/// a step that returns to x itself is a failure with witness (x, x).
SpacingReport is_phi_spaced(const Window & window, std::span<const std::size_t> A, const FiniteSet & phi);

struct SyndeticReport {
    FiniteSet F;
    std::size_t interior = 0;          // points x with F·x inside the carrier
    std::vector<std::size_t> failures; // interior points with F·x ∩ A empty
    bool vacuous() const { return interior == 0; }
    bool passed() const { return failures.empty() && !vacuous(); }
};

SyndeticReport is_F_syndetic_window(const Window & window, std::span<const std::size_t> A, const FiniteSet & F);

struct GreedyResult {
    FiniteSet picks;
    std::size_t target = 0;
    bool complete() const { return picks.size() == target; }
};

/// Picks f in canonical order, removing (D^{-1}D)·f from F each time, until r picks.
GreedyResult greedy_spaced_subset(const GroupDescriptor & G, const FiniteSet & F, const FiniteSet & D, std::size_t r);

// --- parameters -------------------------------------------------------------------

struct MinimalR {
    unsigned long r = 0;
    BigInt n;                    // d^2 r
    CertifiedComparison at_r;    // accepted
    CertifiedComparison below_r; // rejected (at r - 1)
};

inline constexpr unsigned long default_r_cap = 10'000'000;

/// Smallest r with e^(s+1)·k·(1 - 1/(k+1)^d)^r·r^(2(s+1)) <= 1, and n = d^2 r.
MinimalR minimal_r(int s, int k, unsigned long d, unsigned long cap = default_r_cap);

/// Certified evaluation of the inequality above at one r.
CertifiedComparison marker_bound(int s, int k, unsigned long d, unsigned long r);

// --- pipeline -----------------------------------------------------------------------

enum class PipelineMode { Strict, Empirical };

struct PipelineOptions {
    PipelineMode mode = PipelineMode::Empirical;
    std::size_t r = 1;   // Empirical only
    int s = 1;           // Strict: the separation index used for the bound
    std::uint64_t seed = 1;
    std::uint64_t max_resamples = 1'000'000;
    std::optional<PartitionWitness> witness; // when set, the derandomizer is used
    DerandomizeOptions derandomize;
};

struct SpacedFamily {
    WindowPtr window;
    FiniteSet phi, F, D, R, W;
    int k = 1;
    PipelineMode mode = PipelineMode::Empirical;
    std::size_t r = 0;
    std::optional<BigInt> n;
    std::string solver;
    Labeling markers;                          // solved labeling over k+1 colors
    std::vector<std::vector<std::size_t>> sets; // A_1..A_k
    std::vector<std::size_t> union_set;
    SpacingReport spacing;
    std::vector<SyndeticReport> syndetic;
};

/// D = Phi^{-1}Phi, R greedy D-spaced in F, W = DR, solve the acceptable
/// pattern system over the window, then read off
/// A_i = {x : f(x) = i and f(delta·x) = 0 for delta in D \ {1}}.
/// Throws Verification rather than return a family that fails its checks.
SpacedFamily syndetic_spaced_pipeline(WindowPtr window, const FiniteSet & phi, int k, const FiniteSet & F,
    const PipelineOptions & options);

// --- copier ---------------------------------------------------------------------------

struct CylinderConstraint {
    FiniteSet D;
    int alphabet = 2; // s + 1
    /// patterns[i-1][n] is phi_{i,n}: D -> alphabet, values in D's canonical order.
    std::vector<std::vector<std::vector<int>>> patterns;

    /// Throws Usage unless 1 ∈ D and every pattern has |D| values below the alphabet.
    void validate(const GroupDescriptor & G) const;
};

/// Union over n of Phi_n* D D^{-1} Phi_n*. Throws Resource past the cap.
FiniteSet copier_safety_set(const GroupDescriptor & G, const std::vector<FiniteSet> & levels, const FiniteSet & D,
    std::size_t cap = default_ball_cap);

struct CopyResult {
    Labeling f;
    FiniteSet safety;
    std::vector<std::size_t> changed; // points where f differs from h
    SeparatorResult certificate;      // f against Phi_n
};

/// f(delta·y) = phi_{i,n}(delta) for y in A_i, delta in D, and f = h elsewhere.
/// Throws Verification on a spacing violation (with the offending pair), on a
/// separator h that fails for the safety set, or on a failed post-check.
CopyResult pattern_copier(const Labeling & h, const std::vector<std::vector<std::size_t>> & sets,
    const CylinderConstraint & constraints, std::size_t n, const std::vector<FiniteSet> & levels);

} // namespace sepshift

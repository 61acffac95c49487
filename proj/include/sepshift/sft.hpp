#pragma once

// Pattern systems (k, W, P) and the subshifts of finite type they define:
// x is in Sigma(k, W, P) iff the pattern sigma -> x(sigma · p), sigma in W,
// lies in P at every point p. Patterns are value vectors indexed by W in
// canonical order.

#include "sepshift/certified.hpp"
#include "sepshift/window.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sepshift {

/// Parameters of the acceptable-pattern family over alphabet markers+1.
struct AcceptableSpec {
    FiniteSet D, R;
    int markers = 1;
};

class PatternSystem {
public:
    /// Explicit pattern set P ⊆ k^W. Throws Usage on malformed patterns.
    static PatternSystem explicit_patterns(int k, FiniteSet W, std::vector<std::vector<int>> patterns);
    /// Every pattern allowed.
    static PatternSystem full_shift(int k, FiniteSet W);

    int k() const noexcept { return k_; }
    const FiniteSet & W() const noexcept { return W_; }
    bool is_explicit() const noexcept { return !acceptable_; }
    const AcceptableSpec * acceptable() const noexcept { return acceptable_ ? &*acceptable_ : nullptr; }

    bool allows(std::span<const int> pattern) const;

    /// Explicit systems only: the patterns in lexicographic order.
    const std::vector<std::vector<int>> & patterns() const;
    /// Explicit systems only: |P|.
    BigInt pattern_count() const;

    /// Lower bound on |P| / k^|W|: exact for explicit systems, the closed
    /// form bound clamped at 0 for predicate systems.
    Rational fraction_lower_bound() const;
    /// Upper bound on the probability that a uniform pattern is not allowed.
    Rational violation_probability_bound() const { return Rational(1) - fraction_lower_bound(); }
    /// Where the bound comes from ("exact count", "closed-form bound").
    const std::string & provenance() const noexcept { return provenance_; }

private:
    friend PatternSystem acceptable_pattern_system(const GroupDescriptor &, const FiniteSet &, const FiniteSet &, int);

    PatternSystem() = default;
    std::uint64_t pack(std::span<const int> pattern) const;

    int k_ = 1;
    FiniteSet W_;
    std::vector<std::vector<int>> patterns_;
    bool packed_ = false;
    std::unordered_set<std::uint64_t> packed_set_;
    std::set<std::vector<int>> wide_set_;
    std::optional<AcceptableSpec> acceptable_;
    Rational bound_;
    // acceptable predicate: per sigma in R, the W-index of sigma and of each delta·sigma, delta != 1
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> markers_;
    std::string provenance_;
};

// --- membership -------------------------------------------------------------

struct MembershipReport {
    std::vector<std::size_t> violators; // points whose W-pattern is not in P
    std::vector<std::size_t> unchecked; // ball points with W·p not inside the carrier
    bool member() const { return violators.empty(); }
};

/// Carrier indices of W·p in W's canonical order, or nullopt if W·p leaves a ball window.
std::optional<std::vector<std::size_t>> scope_of(const Window & window, const FiniteSet & W, std::size_t p);

MembershipReport sft_membership(const Labeling & labeling, const PatternSystem & system);

/// gamma -> f(gamma · p) for gamma in probe. Throws Usage if probe·p leaves a ball window.
std::vector<std::pair<GroupElement, int>> coding_map(const Labeling & f, std::size_t p, const FiniteSet & probe);

// --- acceptable patterns -------------------------------------------------------

/// True iff the translates D·r, r in R, are pairwise disjoint.
bool is_spaced_subset(const GroupDescriptor & G, const FiniteSet & R, const FiniteSet & D);

/// Predicate system over alphabet markers+1 on W = DR: phi is acceptable iff
/// for each marker i there is sigma in R with phi(sigma) = i and phi(delta·sigma) = 0
/// for delta in D \ {1}. Throws Usage unless 1 ∈ D and R is D-spaced.
PatternSystem acceptable_pattern_system(const GroupDescriptor & G, const FiniteSet & D, const FiniteSet & R, int markers);

struct FractionBound {
    Rational value;        // 1 - k (1 - 1/(k+1)^|D|)^|R|, unclamped
    bool vacuous = false;  // value < 0
};

FractionBound pattern_fraction_bound(std::size_t d_size, std::size_t r_size, int markers);
FractionBound pattern_fraction_bound(const GroupDescriptor & G, const FiniteSet & D, const FiniteSet & R, int markers);

// --- brute force --------------------------------------------------------------

inline constexpr std::uint64_t default_enumeration_cap = 1ull << 24;

/// Number of allowed patterns among all k^|W|, by exhaustive enumeration.
BigInt count_allowed_patterns(const PatternSystem & system, std::uint64_t cap = default_enumeration_cap);

/// Every labeling of a torus window that lies in the subshift. Throws Resource when k^|carrier| > cap.
std::vector<std::vector<int>> brute_force_sft_enumerate(
    const PatternSystem & system, const Window & torus, std::uint64_t cap = default_enumeration_cap);

} // namespace sepshift

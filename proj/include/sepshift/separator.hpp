#pragma once

// (s, Phi)-separators on windows: explicit constructors for the supported
// group families, verification through Phi-finiteness certificates, and the
// recoding between a coloring and its partition into color classes.

#include "sepshift/window.hpp"

#include <utility>
#include <vector>

namespace sepshift {

enum class SeparatorMode {
    Exact,    // every component must be CertifiedFinite
    Interior, // WrapsInfinite fails; collar components are reported as unverified
};

const char * to_string(SeparatorMode m);

struct SeparatorResult {
    bool passed = false;
    SeparatorMode mode = SeparatorMode::Exact;
    int s = 1;
    FiniteSet phi;
    CertificateReport certificate;
    std::size_t unverified = 0;  // TouchesCollar components
    bool vacuous = false;        // interior pass without a single certified component
    /// (color, index into certificate.colors[color]) of each offending component.
    std::vector<std::pair<int, std::size_t>> failures;
};

/// Throws Usage if the labeling alphabet is not s+1.
SeparatorResult verify_separator(const Labeling & labeling, int s, const FiniteSet & phi, SeparatorMode mode);

/// color(x) = floor(x / L) mod 2 over Z. Torus moduli must be divisible by 2L.
Labeling build_interval_separator_Z(std::int64_t L, WindowPtr window);

/// color(x) = sum_i 2^i (floor(x_i / L_i) mod 2) over Z^d, with 2^d colors.
Labeling build_product_separator_Zd(const std::vector<std::int64_t> & L, WindowPtr window);

/// color(w) = floor(|w| / L) mod 2 on a ball window of a free group.
Labeling build_band_separator_free(std::int64_t L, WindowPtr window);

/// Disjoint classes X_0..X_s covering the carrier, with their Phi-components.
struct PartitionWitness {
    WindowPtr window;
    FiniteSet phi;
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::vector<std::vector<std::size_t>>> components;

    /// Throws Usage unless the classes partition the carrier.
    void validate() const;
};

PartitionWitness partition_from_separator(const Labeling & labeling, const FiniteSet & phi);
Labeling separator_from_partition(const PartitionWitness & witness);

/// True when the labeling on a Z torus is invariant under translation by
/// gamma; any Phi containing gamma then yields an infinite monochromatic
/// component. Throws Usage for gamma = 0 or gamma not dividing the modulus.
bool check_periodic_obstruction(const Labeling & labeling, std::int64_t gamma);

/// Torus only: out(p) = in(p + delta), the shift action on configurations.
Labeling shift_labeling(const Labeling & labeling, const GroupElement & delta);

} // namespace sepshift

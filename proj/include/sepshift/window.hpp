#pragma once

// Finite windows of a group, the Schreier graph of a finite set Phi restricted
// to a window, and Phi-finiteness certificates for color classes.
//
// A torus window over Z^d stands for the periodic extension of a labeling,
// so its certificates are exact statements about a configuration on all of
// Z^d. A ball window is a truncated patch; components that reach its collar
// cannot be certified and are reported as such.

#include "sepshift/group.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace sepshift {

class Window {
public:
    enum class Kind { Torus, Ball };

    /// Residues 0..N_i-1 per axis over Z^d, d = moduli.size().
    static Window torus(std::vector<std::int64_t> moduli, std::size_t cap = default_ball_cap);
    static Window ball(GroupDescriptor group, FiniteSet generators, int radius, std::size_t cap = default_ball_cap);

    Kind kind() const noexcept { return kind_; }
    bool is_torus() const noexcept { return kind_ == Kind::Torus; }
    const GroupDescriptor & group() const noexcept { return group_; }
    std::size_t size() const noexcept { return carrier_.size(); }
    const FiniteSet & carrier() const noexcept { return carrier_; }
    const GroupElement & point(std::size_t i) const { return carrier_[i]; }

    const std::vector<std::int64_t> & moduli() const noexcept { return moduli_; }
    const FiniteSet & generators() const noexcept { return generators_; }
    int radius() const noexcept { return radius_; }

    /// Index of p in the carrier. Torus points must be residue representatives.
    std::optional<std::size_t> index_of(const GroupElement & p) const;
    /// sigma · p for the point at index i: arithmetic mod the moduli on a
    /// torus, left multiplication plus a membership test on a ball.
    std::optional<std::size_t> act(const GroupElement & sigma, std::size_t i) const;
    /// Torus only: index of the residue of an arbitrary lattice vector.
    std::size_t torus_index(std::span<const std::int64_t> v) const;

    friend bool operator==(const Window & a, const Window & b);

private:
    Window(Kind kind, GroupDescriptor group) : kind_(kind), group_(std::move(group)) {}

    Kind kind_;
    GroupDescriptor group_;
    FiniteSet carrier_;
    std::vector<std::int64_t> moduli_;
    FiniteSet generators_;
    int radius_ = 0;
};

using WindowPtr = std::shared_ptr<const Window>;

/// Total coloring of a window's carrier, values listed in carrier order.
struct Labeling {
    WindowPtr window;
    int k = 1;
    std::vector<int> values;

    /// Throws Usage unless values is total on the carrier and below k.
    void validate() const;
    bool operator==(const Labeling & other) const;
};

Labeling constant_labeling(WindowPtr window, int k, int value);

/// Points of a color class, in canonical order.
std::vector<std::size_t> color_class(const Labeling & labeling, int color);

// --- Schreier graph -------------------------------------------------------

/// symmetrize(Phi) without the identity, in canonical order.
FiniteSet edge_steps(const GroupDescriptor & G, const FiniteSet & phi);

/// {sigma·p : sigma in edge_steps(Phi)} ∩ carrier, minus p itself, canonical order.
std::vector<std::size_t> neighbors(const Window & window, const FiniteSet & phi, std::size_t p);

/// Same as above with p given as a group element; throws Usage if p is outside the carrier.
std::vector<GroupElement> neighbors(const Window & window, const FiniteSet & phi, const GroupElement & p);

/// Connected components of the induced subgraph on U, each sorted, ordered by least point.
std::vector<std::vector<std::size_t>> components(
    const Window & window, const FiniteSet & phi, std::span<const std::size_t> U);

// --- certificates ---------------------------------------------------------

enum class ComponentStatus { CertifiedFinite, WrapsInfinite, TouchesCollar };

const char * to_string(ComponentStatus s);

struct ComponentRecord {
    ComponentStatus status = ComponentStatus::CertifiedFinite;
    /// Number of distinct lifts for finite torus components; number of carrier points otherwise.
    std::size_t size = 0;
    std::size_t representative = 0;   // least carrier index
    std::vector<std::size_t> points;  // carrier indices, sorted
};

struct CertificateReport {
    std::vector<std::vector<ComponentRecord>> colors; // colors[i] partitions color class i

    std::size_t count(ComponentStatus s) const;
    bool all_certified() const { return count(ComponentStatus::WrapsInfinite) == 0 && count(ComponentStatus::TouchesCollar) == 0; }
};

/// Torus windows: displacement-lift BFS per color class. A component wraps
/// iff some residue is reached with two different lifts in Z^d.
CertificateReport wrap_certificate(const Labeling & labeling, const FiniteSet & phi);

/// Ball windows: points with a Phi-neighbor outside the carrier.
std::vector<std::size_t> collar(const Window & window, const FiniteSet & phi);

/// Torus: wrap_certificate. Ball: components per color, TouchesCollar if
/// the component meets the collar, otherwise CertifiedFinite.
CertificateReport phi_finite_certificate(const Labeling & labeling, const FiniteSet & phi);

} // namespace sepshift

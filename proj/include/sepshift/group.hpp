#pragma once

// Exact arithmetic for the supported finitely generated groups: Z^d, free
// groups F_k, and finite direct products of those. Elements are kept in
// normal form, so equality and ordering of elements are equality and
// lexicographic ordering of normal forms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sepshift {

class GroupDescriptor {
public:
    enum class Family { Zd, Free, Product };

    static GroupDescriptor zd(int d);
    static GroupDescriptor free(int rank);
    static GroupDescriptor product(GroupDescriptor left, GroupDescriptor right);

    Family family() const noexcept { return family_; }
    /// Lattice dimension for Zd, rank for Free, 0 for Product.
    int dim() const noexcept { return dim_; }
    const GroupDescriptor & left() const;
    const GroupDescriptor & right() const;
    int depth() const noexcept;

    bool is_zd() const noexcept { return family_ == Family::Zd; }
    bool is_free() const noexcept { return family_ == Family::Free; }
    bool is_abelian() const noexcept;

    friend bool operator==(const GroupDescriptor & a, const GroupDescriptor & b);

private:
    GroupDescriptor() = default;

    Family family_ = Family::Zd;
    int dim_ = 1;
    std::shared_ptr<const GroupDescriptor> left_, right_;
};

/// A free-group letter: generator g (0-based) is stored as g+1, its inverse as -(g+1).
using Letter = std::int64_t;

class GroupElement {
public:
    enum class Kind { Vector, Word, Pair };

    GroupElement() = default; // the empty word; callers use identity(G)

    static GroupElement vec(std::vector<std::int64_t> coords);
    static GroupElement vec(std::initializer_list<std::int64_t> coords);
    /// Throws Shape if the letter sequence is not freely reduced.
    static GroupElement word(std::vector<Letter> letters);
    static GroupElement pair(GroupElement left, GroupElement right);

    Kind kind() const noexcept { return kind_; }
    std::span<const std::int64_t> coords() const noexcept { return data_; }
    std::span<const Letter> letters() const noexcept { return data_; }
    const GroupElement & left() const;
    const GroupElement & right() const;

    friend std::strong_ordering operator<=>(const GroupElement & a, const GroupElement & b);
    friend bool operator==(const GroupElement & a, const GroupElement & b);

private:
    Kind kind_ = Kind::Word;
    std::vector<std::int64_t> data_;
    std::vector<GroupElement> parts_;
};

/// Deduplicated, canonically sorted list of elements.
class FiniteSet {
public:
    FiniteSet() = default;
    explicit FiniteSet(std::vector<GroupElement> elements);
    FiniteSet(std::initializer_list<GroupElement> elements);

    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(const GroupElement & g) const;
    /// Position of g in canonical order, or size() when absent.
    std::size_t index_of(const GroupElement & g) const;

    const GroupElement & operator[](std::size_t i) const { return elements_[i]; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }
    const std::vector<GroupElement> & elements() const noexcept { return elements_; }

    bool is_subset_of(const FiniteSet & other) const;

    friend bool operator==(const FiniteSet &, const FiniteSet &) = default;

private:
    std::vector<GroupElement> elements_;
};

FiniteSet set_union(const FiniteSet & a, const FiniteSet & b);

// --- group law -----------------------------------------------------------

/// Throws Shape unless g is a valid normal form for G.
void check_element(const GroupDescriptor & G, const GroupElement & g);
bool is_valid_element(const GroupDescriptor & G, const GroupElement & g);

GroupElement identity(const GroupDescriptor & G);
bool is_identity(const GroupDescriptor & G, const GroupElement & g);
GroupElement multiply(const GroupDescriptor & G, const GroupElement & g, const GroupElement & h);
GroupElement invert(const GroupDescriptor & G, const GroupElement & g);

/// Standard generators: unit vectors for Z^d, single letters for F_k,
/// embedded generators of each factor for products.
FiniteSet standard_generators(const GroupDescriptor & G);

// --- finite-subset algebra -----------------------------------------------

FiniteSet set_inverse(const GroupDescriptor & G, const FiniteSet & A);
/// {ab : a in A, b in B}.
FiniteSet set_product(const GroupDescriptor & G, const FiniteSet & A, const FiniteSet & B);
/// Phi ∪ Phi^{-1} ∪ {1}.
FiniteSet symmetrize(const GroupDescriptor & G, const FiniteSet & phi);

inline constexpr std::size_t default_ball_cap = 1u << 22;

/// All products of at most `radius` factors from symmetrize(generators).
/// Throws Resource when the result would exceed `cap` elements.
FiniteSet ball(const GroupDescriptor & G, const FiniteSet & generators, int radius,
    std::size_t cap = default_ball_cap);

// --- text forms ----------------------------------------------------------

/// Free words as "aB" (capital = inverse), vectors as "(1,-2)", pairs as "<x,y>".
std::string to_string(const GroupElement & g);
std::string to_string(const FiniteSet & s);

/// Parses "aBb..." into a reduced word over a free group of the given rank.
GroupElement parse_word(const std::string & text, int rank);

} // namespace sepshift

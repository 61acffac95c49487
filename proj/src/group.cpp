#include "sepshift/group.hpp"

#include "sepshift/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace sepshift {

// --- GroupDescriptor -----------------------------------------------------

GroupDescriptor GroupDescriptor::zd(int d)
{
    if (d < 1)
        fail(ErrorKind::Usage, "Z^d requires d >= 1");
    GroupDescriptor g;
    g.family_ = Family::Zd;
    g.dim_ = d;
    return g;
}

GroupDescriptor GroupDescriptor::free(int rank)
{
    if (rank < 1 || rank > 26)
        fail(ErrorKind::Usage, "free group rank must be in 1..26");
    GroupDescriptor g;
    g.family_ = Family::Free;
    g.dim_ = rank;
    return g;
}

GroupDescriptor GroupDescriptor::product(GroupDescriptor left, GroupDescriptor right)
{
    GroupDescriptor g;
    g.family_ = Family::Product;
    g.dim_ = 0;
    g.left_ = std::make_shared<const GroupDescriptor>(std::move(left));
    g.right_ = std::make_shared<const GroupDescriptor>(std::move(right));
    if (g.depth() > 4)
        fail(ErrorKind::Usage, "direct product nesting depth exceeds 4");
    return g;
}

const GroupDescriptor & GroupDescriptor::left() const
{
    if (family_ != Family::Product)
        fail(ErrorKind::Shape, "left() on a non-product group");
    return *left_;
}

const GroupDescriptor & GroupDescriptor::right() const
{
    if (family_ != Family::Product)
        fail(ErrorKind::Shape, "right() on a non-product group");
    return *right_;
}

int GroupDescriptor::depth() const noexcept
{
    if (family_ != Family::Product)
        return 0;
    return 1 + std::max(left_->depth(), right_->depth());
}

bool GroupDescriptor::is_abelian() const noexcept
{
    switch (family_) {
    case Family::Zd: return true;
    case Family::Free: return dim_ == 1;
    case Family::Product: return left_->is_abelian() && right_->is_abelian();
    }
    return false;
}

bool operator==(const GroupDescriptor & a, const GroupDescriptor & b)
{
    if (a.family_ != b.family_ || a.dim_ != b.dim_)
        return false;
    if (a.family_ != GroupDescriptor::Family::Product)
        return true;
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

// --- GroupElement --------------------------------------------------------

namespace {

bool is_reduced(std::span<const Letter> w)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == -w[i + 1])
            return false;
    return true;
}

// a < A < b < B < ...
std::int64_t letter_rank(Letter l) { return 2 * (std::llabs(l) - 1) + (l < 0 ? 1 : 0); }

} // namespace

GroupElement GroupElement::vec(std::vector<std::int64_t> coords)
{
    GroupElement g;
    g.kind_ = Kind::Vector;
    g.data_ = std::move(coords);
    return g;
}

GroupElement GroupElement::vec(std::initializer_list<std::int64_t> coords)
{
    return vec(std::vector<std::int64_t>(coords));
}

GroupElement GroupElement::word(std::vector<Letter> letters)
{
    for (auto l : letters)
        if (l == 0)
            fail(ErrorKind::Shape, "letter 0 is not a generator");
    if (!is_reduced(letters))
        fail(ErrorKind::Shape, "word is not freely reduced");
    GroupElement g;
    g.kind_ = Kind::Word;
    g.data_ = std::move(letters);
    return g;
}

GroupElement GroupElement::pair(GroupElement left, GroupElement right)
{
    GroupElement g;
    g.kind_ = Kind::Pair;
    g.parts_.reserve(2);
    g.parts_.push_back(std::move(left));
    g.parts_.push_back(std::move(right));
    return g;
}

const GroupElement & GroupElement::left() const
{
    if (kind_ != Kind::Pair)
        fail(ErrorKind::Shape, "left() on a non-pair element");
    return parts_[0];
}

const GroupElement & GroupElement::right() const
{
    if (kind_ != Kind::Pair)
        fail(ErrorKind::Shape, "right() on a non-pair element");
    return parts_[1];
}

std::strong_ordering operator<=>(const GroupElement & a, const GroupElement & b)
{
    if (a.kind_ != b.kind_)
        return a.kind_ <=> b.kind_;
    switch (a.kind_) {
    case GroupElement::Kind::Vector:
        return std::lexicographical_compare_three_way(
            a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
    case GroupElement::Kind::Word:
        return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(), b.data_.begin(),
            b.data_.end(), [](Letter x, Letter y) { return letter_rank(x) <=> letter_rank(y); });
    case GroupElement::Kind::Pair:
        if (auto c = a.parts_[0] <=> b.parts_[0]; c != 0)
            return c;
        return a.parts_[1] <=> b.parts_[1];
    }
    return std::strong_ordering::equal;
}

bool operator==(const GroupElement & a, const GroupElement & b) { return (a <=> b) == 0; }

// --- FiniteSet -----------------------------------------------------------

FiniteSet::FiniteSet(std::vector<GroupElement> elements) : elements_(std::move(elements))
{
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

FiniteSet::FiniteSet(std::initializer_list<GroupElement> elements) :
    FiniteSet(std::vector<GroupElement>(elements))
{
}

bool FiniteSet::contains(const GroupElement & g) const
{
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::size_t FiniteSet::index_of(const GroupElement & g) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
    if (it == elements_.end() || *it != g)
        return elements_.size();
    return static_cast<std::size_t>(it - elements_.begin());
}

bool FiniteSet::is_subset_of(const FiniteSet & other) const
{
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

FiniteSet set_union(const FiniteSet & a, const FiniteSet & b)
{
    std::vector<GroupElement> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FiniteSet(std::move(out));
}

// --- group law -----------------------------------------------------------

bool is_valid_element(const GroupDescriptor & G, const GroupElement & g)
{
    switch (G.family()) {
    case GroupDescriptor::Family::Zd:
        return g.kind() == GroupElement::Kind::Vector && g.coords().size() == static_cast<std::size_t>(G.dim());
    case GroupDescriptor::Family::Free:
        if (g.kind() != GroupElement::Kind::Word)
            return false;
        for (auto l : g.letters())
            if (l == 0 || std::llabs(l) > G.dim())
                return false;
        return is_reduced(g.letters());
    case GroupDescriptor::Family::Product:
        return g.kind() == GroupElement::Kind::Pair && is_valid_element(G.left(), g.left())
            && is_valid_element(G.right(), g.right());
    }
    return false;
}

void check_element(const GroupDescriptor & G, const GroupElement & g)
{
    if (!is_valid_element(G, g))
        fail(ErrorKind::Shape, "element " + to_string(g) + " does not match the group descriptor");
}

GroupElement identity(const GroupDescriptor & G)
{
    switch (G.family()) {
    case GroupDescriptor::Family::Zd: return GroupElement::vec(std::vector<std::int64_t>(G.dim(), 0));
    case GroupDescriptor::Family::Free: return GroupElement::word({});
    case GroupDescriptor::Family::Product: return GroupElement::pair(identity(G.left()), identity(G.right()));
    }
    return {};
}

bool is_identity(const GroupDescriptor & G, const GroupElement & g) { return g == identity(G); }

namespace {

GroupElement multiply_unchecked(const GroupDescriptor & G, const GroupElement & g, const GroupElement & h)
{
    switch (G.family()) {
    case GroupDescriptor::Family::Zd: {
        std::vector<std::int64_t> c(g.coords().begin(), g.coords().end());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += h.coords()[i];
        return GroupElement::vec(std::move(c));
    }
    case GroupDescriptor::Family::Free: {
        auto a = g.letters();
        auto b = h.letters();
        std::size_t cancel = 0;
        while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == -b[cancel])
            ++cancel;
        std::vector<Letter> w(a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
        w.insert(w.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
        return GroupElement::word(std::move(w));
    }
    case GroupDescriptor::Family::Product:
        return GroupElement::pair(
            multiply_unchecked(G.left(), g.left(), h.left()), multiply_unchecked(G.right(), g.right(), h.right()));
    }
    return {};
}

GroupElement invert_unchecked(const GroupDescriptor & G, const GroupElement & g)
{
    switch (G.family()) {
    case GroupDescriptor::Family::Zd: {
        std::vector<std::int64_t> c(g.coords().begin(), g.coords().end());
        for (auto & x : c)
            x = -x;
        return GroupElement::vec(std::move(c));
    }
    case GroupDescriptor::Family::Free: {
        std::vector<Letter> w(g.letters().rbegin(), g.letters().rend());
        for (auto & l : w)
            l = -l;
        return GroupElement::word(std::move(w));
    }
    case GroupDescriptor::Family::Product:
        return GroupElement::pair(invert_unchecked(G.left(), g.left()), invert_unchecked(G.right(), g.right()));
    }
    return {};
}

} // namespace

GroupElement multiply(const GroupDescriptor & G, const GroupElement & g, const GroupElement & h)
{
    check_element(G, g);
    check_element(G, h);
    return multiply_unchecked(G, g, h);
}

GroupElement invert(const GroupDescriptor & G, const GroupElement & g)
{
    check_element(G, g);
    return invert_unchecked(G, g);
}

FiniteSet standard_generators(const GroupDescriptor & G)
{
    std::vector<GroupElement> gens;
    switch (G.family()) {
    case GroupDescriptor::Family::Zd:
        for (int i = 0; i < G.dim(); ++i) {
            std::vector<std::int64_t> e(G.dim(), 0);
            e[i] = 1;
            gens.push_back(GroupElement::vec(std::move(e)));
        }
        break;
    case GroupDescriptor::Family::Free:
        for (int i = 1; i <= G.dim(); ++i)
            gens.push_back(GroupElement::word({i}));
        break;
    case GroupDescriptor::Family::Product:
        for (const auto & l : standard_generators(G.left()))
            gens.push_back(GroupElement::pair(l, identity(G.right())));
        for (const auto & r : standard_generators(G.right()))
            gens.push_back(GroupElement::pair(identity(G.left()), r));
        break;
    }
    return FiniteSet(std::move(gens));
}

// --- finite-subset algebra -----------------------------------------------

FiniteSet set_inverse(const GroupDescriptor & G, const FiniteSet & A)
{
    std::vector<GroupElement> out;
    out.reserve(A.size());
    for (const auto & a : A)
        out.push_back(invert(G, a));
    return FiniteSet(std::move(out));
}

FiniteSet set_product(const GroupDescriptor & G, const FiniteSet & A, const FiniteSet & B)
{
    for (const auto & a : A)
        check_element(G, a);
    for (const auto & b : B)
        check_element(G, b);
    std::vector<GroupElement> out;
    out.reserve(A.size() * B.size());
    for (const auto & a : A)
        for (const auto & b : B)
            out.push_back(multiply_unchecked(G, a, b));
    return FiniteSet(std::move(out));
}

FiniteSet symmetrize(const GroupDescriptor & G, const FiniteSet & phi)
{
    std::vector<GroupElement> out(phi.begin(), phi.end());
    for (const auto & g : phi)
        out.push_back(invert(G, g));
    out.push_back(identity(G));
    return FiniteSet(std::move(out));
}

FiniteSet ball(const GroupDescriptor & G, const FiniteSet & generators, int radius, std::size_t cap)
{
    if (radius < 0)
        fail(ErrorKind::Usage, "ball radius must be nonnegative");
    auto steps = symmetrize(G, generators);
    std::vector<GroupElement> all{identity(G)};
    FiniteSet seen(all);
    std::vector<GroupElement> frontier = all;
    for (int r = 0; r < radius && !frontier.empty(); ++r) {
        std::vector<GroupElement> next;
        for (const auto & g : frontier)
            for (const auto & s : steps)
                next.push_back(multiply_unchecked(G, s, g));
        FiniteSet layer(std::move(next));
        std::vector<GroupElement> fresh;
        std::set_difference(
            layer.begin(), layer.end(), seen.begin(), seen.end(), std::back_inserter(fresh));
        if (seen.size() + fresh.size() > cap)
            fail(ErrorKind::Resource,
                "ball of radius " + std::to_string(radius) + " exceeds the cap of " + std::to_string(cap) + " elements");
        seen = set_union(seen, FiniteSet(fresh));
        frontier = std::move(fresh);
    }
    return seen;
}

// --- text forms ----------------------------------------------------------

std::string to_string(const GroupElement & g)
{
    std::ostringstream os;
    switch (g.kind()) {
    case GroupElement::Kind::Vector: {
        os << '(';
        bool first = true;
        for (auto c : g.coords()) {
            if (!first)
                os << ',';
            os << c;
            first = false;
        }
        os << ')';
        break;
    }
    case GroupElement::Kind::Word:
        if (g.letters().empty())
            os << "1";
        for (auto l : g.letters())
            os << static_cast<char>((l > 0 ? 'a' : 'A') + (std::llabs(l) - 1));
        break;
    case GroupElement::Kind::Pair: os << '<' << to_string(g.left()) << ',' << to_string(g.right()) << '>'; break;
    }
    return os.str();
}

std::string to_string(const FiniteSet & s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(s[i]);
    }
    return out + "}";
}

GroupElement parse_word(const std::string & text, int rank)
{
    std::vector<Letter> w;
    for (char c : text) {
        Letter l = 0;
        if (c >= 'a' && c <= 'z')
            l = c - 'a' + 1;
        else if (c >= 'A' && c <= 'Z')
            l = -(c - 'A' + 1);
        else
            fail(ErrorKind::Shape, std::string("invalid letter '") + c + "' in word \"" + text + "\"");
        if (std::llabs(l) > rank)
            fail(ErrorKind::Shape, "letter '" + std::string(1, c) + "' exceeds free group rank");
        w.push_back(l);
    }
    return GroupElement::word(std::move(w));
}

} // namespace sepshift

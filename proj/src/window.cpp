#include "sepshift/window.hpp"

#include "sepshift/error.hpp"

#include <algorithm>
#include <deque>

namespace sepshift {

// --- Window --------------------------------------------------------------

Window Window::torus(std::vector<std::int64_t> moduli, std::size_t cap)
{
    if (moduli.empty())
        fail(ErrorKind::Usage, "torus needs at least one modulus");
    std::size_t total = 1;
    for (auto n : moduli) {
        if (n < 1)
            fail(ErrorKind::Usage, "torus moduli must be positive");
        if (total > cap / static_cast<std::size_t>(n))
            fail(ErrorKind::Resource, "torus exceeds the cap of " + std::to_string(cap) + " cells");
        total *= static_cast<std::size_t>(n);
    }
    Window w(Kind::Torus, GroupDescriptor::zd(static_cast<int>(moduli.size())));
    std::vector<GroupElement> pts;
    pts.reserve(total);
    std::vector<std::int64_t> cur(moduli.size(), 0);
    for (std::size_t i = 0; i < total; ++i) {
        pts.push_back(GroupElement::vec(cur));
        for (std::size_t a = moduli.size(); a-- > 0;) {
            if (++cur[a] < moduli[a])
                break;
            cur[a] = 0;
        }
    }
    w.carrier_ = FiniteSet(std::move(pts));
    w.moduli_ = std::move(moduli);
    return w;
}

Window Window::ball(GroupDescriptor group, FiniteSet generators, int radius, std::size_t cap)
{
    for (const auto & g : generators)
        check_element(group, g);
    Window w(Kind::Ball, group);
    w.carrier_ = sepshift::ball(group, generators, radius, cap);
    w.generators_ = std::move(generators);
    w.radius_ = radius;
    return w;
}

std::size_t Window::torus_index(std::span<const std::int64_t> v) const
{
    if (kind_ != Kind::Torus)
        fail(ErrorKind::Unsupported, "torus_index on a ball window");
    if (v.size() != moduli_.size())
        fail(ErrorKind::Shape, "lattice vector has the wrong dimension for this torus");
    std::size_t idx = 0;
    for (std::size_t a = 0; a < moduli_.size(); ++a) {
        auto r = v[a] % moduli_[a];
        if (r < 0)
            r += moduli_[a];
        idx = idx * static_cast<std::size_t>(moduli_[a]) + static_cast<std::size_t>(r);
    }
    return idx;
}

std::optional<std::size_t> Window::index_of(const GroupElement & p) const
{
    if (kind_ == Kind::Torus) {
        if (!is_valid_element(group_, p))
            return std::nullopt;
        auto c = p.coords();
        for (std::size_t a = 0; a < moduli_.size(); ++a)
            if (c[a] < 0 || c[a] >= moduli_[a])
                return std::nullopt;
        return torus_index(c);
    }
    auto i = carrier_.index_of(p);
    if (i == carrier_.size())
        return std::nullopt;
    return i;
}

std::optional<std::size_t> Window::act(const GroupElement & sigma, std::size_t i) const
{
    if (kind_ == Kind::Torus) {
        check_element(group_, sigma);
        auto p = carrier_[i].coords();
        auto s = sigma.coords();
        std::vector<std::int64_t> v(p.begin(), p.end());
        for (std::size_t a = 0; a < v.size(); ++a)
            v[a] += s[a];
        return torus_index(v);
    }
    return index_of(multiply(group_, sigma, carrier_[i]));
}

bool operator==(const Window & a, const Window & b)
{
    return a.kind_ == b.kind_ && a.group_ == b.group_ && a.moduli_ == b.moduli_ && a.generators_ == b.generators_
        && a.radius_ == b.radius_;
}

// --- Labeling ------------------------------------------------------------

void Labeling::validate() const
{
    if (!window)
        fail(ErrorKind::Usage, "labeling has no window");
    if (k < 1)
        fail(ErrorKind::Usage, "labeling alphabet must be positive");
    if (values.size() != window->size())
        fail(ErrorKind::Usage,
            "labeling has " + std::to_string(values.size()) + " values for " + std::to_string(window->size())
                + " carrier points");
    for (auto v : values)
        if (v < 0 || v >= k)
            fail(ErrorKind::Usage, "labeling value " + std::to_string(v) + " outside 0.." + std::to_string(k - 1));
}

bool Labeling::operator==(const Labeling & other) const
{
    return k == other.k && values == other.values
        && (window == other.window || (window && other.window && *window == *other.window));
}

Labeling constant_labeling(WindowPtr window, int k, int value)
{
    Labeling l{window, k, std::vector<int>(window->size(), value)};
    l.validate();
    return l;
}

std::vector<std::size_t> color_class(const Labeling & labeling, int color)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labeling.values.size(); ++i)
        if (labeling.values[i] == color)
            out.push_back(i);
    return out;
}

// --- Schreier graph --------------------------------------------------------

FiniteSet edge_steps(const GroupDescriptor & G, const FiniteSet & phi)
{
    auto sym = symmetrize(G, phi);
    std::vector<GroupElement> out;
    for (const auto & s : sym)
        if (!is_identity(G, s))
            out.push_back(s);
    return FiniteSet(std::move(out));
}

namespace {

std::vector<std::size_t> neighbor_indices(const Window & window, const FiniteSet & steps, std::size_t p)
{
    std::vector<std::size_t> out;
    for (const auto & s : steps)
        if (auto q = window.act(s, p); q && *q != p)
            out.push_back(*q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<std::size_t> neighbors(const Window & window, const FiniteSet & phi, std::size_t p)
{
    if (p >= window.size())
        fail(ErrorKind::Usage, "point index outside the carrier");
    return neighbor_indices(window, edge_steps(window.group(), phi), p);
}

std::vector<GroupElement> neighbors(const Window & window, const FiniteSet & phi, const GroupElement & p)
{
    auto idx = window.index_of(p);
    if (!idx)
        fail(ErrorKind::Usage, "point " + to_string(p) + " is outside the carrier");
    std::vector<GroupElement> out;
    for (auto q : neighbors(window, phi, *idx))
        out.push_back(window.point(q));
    return out;
}

std::vector<std::vector<std::size_t>> components(
    const Window & window, const FiniteSet & phi, std::span<const std::size_t> U)
{
    auto steps = edge_steps(window.group(), phi);
    std::vector<char> in_u(window.size(), 0), seen(window.size(), 0);
    for (auto u : U) {
        if (u >= window.size())
            fail(ErrorKind::Usage, "subset point outside the carrier");
        in_u[u] = 1;
    }
    std::vector<std::size_t> order(U.begin(), U.end());
    std::sort(order.begin(), order.end());
    std::vector<std::vector<std::size_t>> out;
    for (auto start : order) {
        if (seen[start])
            continue;
        std::vector<std::size_t> comp;
        std::deque<std::size_t> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (auto v : neighbor_indices(window, steps, u))
                if (in_u[v] && !seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// --- certificates ----------------------------------------------------------

const char * to_string(ComponentStatus s)
{
    switch (s) {
    case ComponentStatus::CertifiedFinite: return "CertifiedFinite";
    case ComponentStatus::WrapsInfinite: return "WrapsInfinite";
    case ComponentStatus::TouchesCollar: return "TouchesCollar";
    }
    return "unknown";
}

std::size_t CertificateReport::count(ComponentStatus s) const
{
    std::size_t n = 0;
    for (const auto & c : colors)
        for (const auto & r : c)
            n += r.status == s;
    return n;
}

CertificateReport wrap_certificate(const Labeling & labeling, const FiniteSet & phi)
{
    labeling.validate();
    const Window & w = *labeling.window;
    if (!w.is_torus())
        fail(ErrorKind::Unsupported, "wrap_certificate requires a torus window");
    const std::size_t d = w.moduli().size();
    auto steps = edge_steps(w.group(), phi);

    std::vector<char> seen(w.size(), 0);
    std::vector<std::int64_t> lift(w.size() * d);
    CertificateReport report;
    report.colors.resize(static_cast<std::size_t>(labeling.k));
    std::vector<std::int64_t> next(d);

    for (std::size_t start = 0; start < w.size(); ++start) {
        if (seen[start])
            continue;
        const int color = labeling.values[start];
        ComponentRecord rec;
        rec.representative = start;
        bool wraps = false;
        seen[start] = 1;
        auto p = w.point(start).coords();
        std::copy(p.begin(), p.end(), lift.begin() + static_cast<std::ptrdiff_t>(start * d));
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            rec.points.push_back(u);
            for (const auto & s : steps) {
                auto sc = s.coords();
                for (std::size_t a = 0; a < d; ++a)
                    next[a] = lift[u * d + a] + sc[a];
                auto v = w.torus_index(next);
                if (labeling.values[v] != color)
                    continue;
                if (!seen[v]) {
                    seen[v] = 1;
                    std::copy(next.begin(), next.end(), lift.begin() + static_cast<std::ptrdiff_t>(v * d));
                    queue.push_back(v);
                } else if (!std::equal(next.begin(), next.end(), lift.begin() + static_cast<std::ptrdiff_t>(v * d))) {
                    wraps = true;
                }
            }
        }
        std::sort(rec.points.begin(), rec.points.end());
        rec.size = rec.points.size();
        rec.status = wraps ? ComponentStatus::WrapsInfinite : ComponentStatus::CertifiedFinite;
        report.colors[static_cast<std::size_t>(color)].push_back(std::move(rec));
    }
    return report;
}

std::vector<std::size_t> collar(const Window & window, const FiniteSet & phi)
{
    if (window.is_torus())
        fail(ErrorKind::Unsupported, "collar is defined for ball windows only");
    auto steps = edge_steps(window.group(), phi);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < window.size(); ++i)
        for (const auto & s : steps)
            if (!window.act(s, i)) {
                out.push_back(i);
                break;
            }
    return out;
}

CertificateReport phi_finite_certificate(const Labeling & labeling, const FiniteSet & phi)
{
    labeling.validate();
    const Window & w = *labeling.window;
    if (w.is_torus())
        return wrap_certificate(labeling, phi);

    std::vector<char> on_collar(w.size(), 0);
    for (auto c : collar(w, phi))
        on_collar[c] = 1;
    CertificateReport report;
    report.colors.resize(static_cast<std::size_t>(labeling.k));
    for (int color = 0; color < labeling.k; ++color) {
        auto cls = color_class(labeling, color);
        for (auto & comp : components(w, phi, cls)) {
            ComponentRecord rec;
            rec.representative = comp.front();
            rec.size = comp.size();
            rec.status = std::any_of(comp.begin(), comp.end(), [&](auto p) { return on_collar[p] != 0; })
                ? ComponentStatus::TouchesCollar
                : ComponentStatus::CertifiedFinite;
            rec.points = std::move(comp);
            report.colors[static_cast<std::size_t>(color)].push_back(std::move(rec));
        }
    }
    return report;
}

} // namespace sepshift

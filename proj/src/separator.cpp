#include "sepshift/separator.hpp"

#include "sepshift/error.hpp"

#include <algorithm>

namespace sepshift {

const char * to_string(SeparatorMode m) { return m == SeparatorMode::Exact ? "exact" : "interior"; }

SeparatorResult verify_separator(const Labeling & labeling, int s, const FiniteSet & phi, SeparatorMode mode)
{
    if (s < 1)
        fail(ErrorKind::Usage, "separator index s must be positive");
    if (labeling.k != s + 1)
        fail(ErrorKind::Usage,
            "labeling alphabet " + std::to_string(labeling.k) + " does not match s+1 = " + std::to_string(s + 1));
    for (const auto & g : phi)
        check_element(labeling.window->group(), g);

    SeparatorResult out;
    out.mode = mode;
    out.s = s;
    out.phi = phi;
    out.certificate = phi_finite_certificate(labeling, phi);
    std::size_t certified = 0;
    for (std::size_t c = 0; c < out.certificate.colors.size(); ++c) {
        const auto & comps = out.certificate.colors[c];
        for (std::size_t j = 0; j < comps.size(); ++j) {
            switch (comps[j].status) {
            case ComponentStatus::CertifiedFinite: ++certified; break;
            case ComponentStatus::WrapsInfinite: out.failures.emplace_back(static_cast<int>(c), j); break;
            case ComponentStatus::TouchesCollar:
                ++out.unverified;
                if (mode == SeparatorMode::Exact)
                    out.failures.emplace_back(static_cast<int>(c), j);
                break;
            }
        }
    }
    out.passed = out.failures.empty();
    out.vacuous = out.passed && certified == 0 && out.unverified > 0;
    return out;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

int block_parity(std::int64_t x, std::int64_t L) { return static_cast<int>(((floor_div(x, L) % 2) + 2) % 2); }

void require_zd(const Window & w, int d, const char * who)
{
    if (!w.group().is_zd() || w.group().dim() != d)
        fail(ErrorKind::Usage, std::string(who) + ": window is not over Z^" + std::to_string(d));
}

} // namespace

Labeling build_interval_separator_Z(std::int64_t L, WindowPtr window)
{
    if (L < 1)
        fail(ErrorKind::Usage, "interval length must be positive");
    require_zd(*window, 1, "interval separator");
    if (window->is_torus() && window->moduli()[0] % (2 * L) != 0)
        fail(ErrorKind::Usage,
            "torus modulus " + std::to_string(window->moduli()[0]) + " is not divisible by 2L = " + std::to_string(2 * L));
    Labeling out{window, 2, {}};
    out.values.reserve(window->size());
    for (const auto & p : window->carrier())
        out.values.push_back(block_parity(p.coords()[0], L));
    return out;
}

Labeling build_product_separator_Zd(const std::vector<std::int64_t> & L, WindowPtr window)
{
    const int d = static_cast<int>(L.size());
    if (d < 1 || d > 20)
        fail(ErrorKind::Usage, "product separator needs between 1 and 20 axis lengths");
    require_zd(*window, d, "product separator");
    for (int i = 0; i < d; ++i) {
        if (L[i] < 1)
            fail(ErrorKind::Usage, "axis lengths must be positive");
        if (window->is_torus() && window->moduli()[i] % (2 * L[i]) != 0)
            fail(ErrorKind::Usage, "torus modulus on axis " + std::to_string(i) + " is not divisible by 2L");
    }
    Labeling out{window, 1 << d, {}};
    out.values.reserve(window->size());
    for (const auto & p : window->carrier()) {
        int color = 0;
        for (int i = 0; i < d; ++i)
            color |= block_parity(p.coords()[i], L[i]) << i;
        out.values.push_back(color);
    }
    return out;
}

Labeling build_band_separator_free(std::int64_t L, WindowPtr window)
{
    if (L < 1)
        fail(ErrorKind::Usage, "band length must be positive");
    if (!window->group().is_free() || window->is_torus())
        fail(ErrorKind::Usage, "band separator requires a ball window over a free group");
    Labeling out{window, 2, {}};
    out.values.reserve(window->size());
    for (const auto & w : window->carrier())
        out.values.push_back(block_parity(static_cast<std::int64_t>(w.letters().size()), L));
    return out;
}

void PartitionWitness::validate() const
{
    if (!window)
        fail(ErrorKind::Usage, "partition witness has no window");
    std::vector<char> hit(window->size(), 0);
    for (const auto & cls : classes)
        for (auto p : cls) {
            if (p >= window->size())
                fail(ErrorKind::Usage, "partition class point outside the carrier");
            if (hit[p]++)
                fail(ErrorKind::Usage, "partition classes overlap at " + to_string(window->point(p)));
        }
    for (std::size_t p = 0; p < hit.size(); ++p)
        if (!hit[p])
            fail(ErrorKind::Usage, "partition classes miss " + to_string(window->point(p)));
}

PartitionWitness partition_from_separator(const Labeling & labeling, const FiniteSet & phi)
{
    labeling.validate();
    PartitionWitness w;
    w.window = labeling.window;
    w.phi = phi;
    for (int c = 0; c < labeling.k; ++c) {
        w.classes.push_back(color_class(labeling, c));
        w.components.push_back(components(*labeling.window, phi, w.classes.back()));
    }
    return w;
}

Labeling separator_from_partition(const PartitionWitness & witness)
{
    witness.validate();
    Labeling out{witness.window, static_cast<int>(witness.classes.size()), std::vector<int>(witness.window->size(), 0)};
    for (std::size_t c = 0; c < witness.classes.size(); ++c)
        for (auto p : witness.classes[c])
            out.values[p] = static_cast<int>(c);
    return out;
}

bool check_periodic_obstruction(const Labeling & labeling, std::int64_t gamma)
{
    labeling.validate();
    const Window & w = *labeling.window;
    if (!w.is_torus())
        fail(ErrorKind::Usage, "periodic obstruction test requires a torus window");
    require_zd(w, 1, "periodic obstruction");
    if (gamma == 0)
        fail(ErrorKind::Usage, "gamma must be nonzero");
    const auto n = w.moduli()[0];
    if (n % gamma != 0)
        fail(ErrorKind::Usage, "gamma must divide the torus modulus");
    for (std::int64_t x = 0; x < n; ++x) {
        std::int64_t y = ((x + gamma) % n + n) % n;
        if (labeling.values[static_cast<std::size_t>(x)] != labeling.values[static_cast<std::size_t>(y)])
            return false;
    }
    return true;
}

Labeling shift_labeling(const Labeling & labeling, const GroupElement & delta)
{
    labeling.validate();
    const Window & w = *labeling.window;
    if (!w.is_torus())
        fail(ErrorKind::Unsupported, "shift_labeling requires a torus window");
    Labeling out{labeling.window, labeling.k, std::vector<int>(w.size())};
    for (std::size_t p = 0; p < w.size(); ++p)
        out.values[p] = labeling.values[*w.act(delta, p)];
    return out;
}

} // namespace sepshift

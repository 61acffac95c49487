#include "sepshift/io.hpp"

#include "sepshift/error.hpp"

#include <algorithm>
#include <initializer_list>

namespace sepshift::io {

namespace {

[[noreturn]] void schema(const std::string & msg) { fail(ErrorKind::Usage, "schema: " + msg); }

void check_fields(const json & j, const char * what, std::initializer_list<const char *> required,
    std::initializer_list<const char *> optional = {})
{
    if (!j.is_object())
        schema(std::string(what) + " must be an object");
    for (auto r : required)
        if (!j.contains(r))
            schema(std::string(what) + " is missing \"" + r + "\"");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto & key = it.key();
        auto known = [&](std::initializer_list<const char *> list) {
            return std::any_of(list.begin(), list.end(), [&](const char * k) { return key == k; });
        };
        if (!known(required) && !known(optional))
            schema(std::string(what) + " has unknown field \"" + key + "\"");
    }
}

std::int64_t get_int(const json & j, const char * what)
{
    if (!j.is_number_integer())
        schema(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

const json & get_array(const json & j, const char * what)
{
    if (!j.is_array())
        schema(std::string(what) + " must be an array");
    return j;
}

int get_small(const json & j, const char * what, std::int64_t lo, std::int64_t hi)
{
    auto v = get_int(j, what);
    if (v < lo || v > hi)
        schema(std::string(what) + " out of range");
    return static_cast<int>(v);
}

} // namespace

// --- groups ---------------------------------------------------------------------

json to_json(const GroupDescriptor & G)
{
    switch (G.family()) {
    case GroupDescriptor::Family::Zd: return json{{"family", "zd"}, {"d", G.dim()}};
    case GroupDescriptor::Family::Free: return json{{"family", "free"}, {"rank", G.dim()}};
    case GroupDescriptor::Family::Product:
        return json{{"family", "product"}, {"left", to_json(G.left())}, {"right", to_json(G.right())}};
    }
    return {};
}

GroupDescriptor group_from_json(const json & j)
{
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        schema("group descriptor needs a string \"family\"");
    const auto family = j["family"].get<std::string>();
    if (family == "zd") {
        check_fields(j, "group", {"family", "d"});
        return GroupDescriptor::zd(get_small(j["d"], "d", 1, 1 << 20));
    }
    if (family == "free") {
        check_fields(j, "group", {"family", "rank"});
        return GroupDescriptor::free(get_small(j["rank"], "rank", 1, 1 << 20));
    }
    if (family == "product") {
        check_fields(j, "group", {"family", "left", "right"});
        return GroupDescriptor::product(group_from_json(j["left"]), group_from_json(j["right"]));
    }
    schema("unknown group family \"" + family + "\"");
}

json to_json(const GroupElement & g)
{
    switch (g.kind()) {
    case GroupElement::Kind::Vector: {
        json a = json::array();
        for (auto c : g.coords())
            a.push_back(c);
        return a;
    }
    case GroupElement::Kind::Word: {
        auto s = to_string(g);
        return s == "1" ? json("") : json(s);
    }
    case GroupElement::Kind::Pair: return json::array({to_json(g.left()), to_json(g.right())});
    }
    return {};
}

GroupElement element_from_json(const GroupDescriptor & G, const json & j)
{
    switch (G.family()) {
    case GroupDescriptor::Family::Zd: {
        std::vector<std::int64_t> v;
        if (G.dim() == 1 && j.is_number_integer())
            v.push_back(j.get<std::int64_t>());
        else
            for (const auto & c : get_array(j, "lattice element"))
                v.push_back(get_int(c, "lattice coordinate"));
        auto g = GroupElement::vec(std::move(v));
        check_element(G, g);
        return g;
    }
    case GroupDescriptor::Family::Free: {
        if (!j.is_string())
            schema("free-group element must be a string");
        auto text = j.get<std::string>();
        return text.empty() || text == "1" ? identity(G) : parse_word(text, G.dim());
    }
    case GroupDescriptor::Family::Product:
        if (!j.is_array() || j.size() != 2)
            schema("product element must be a pair [left, right]");
        return GroupElement::pair(element_from_json(G.left(), j[0]), element_from_json(G.right(), j[1]));
    }
    schema("unsupported group");
}

json to_json(const FiniteSet & s)
{
    json a = json::array();
    for (const auto & g : s)
        a.push_back(to_json(g));
    return a;
}

FiniteSet set_from_json(const GroupDescriptor & G, const json & j)
{
    std::vector<GroupElement> out;
    for (const auto & e : get_array(j, "finite set"))
        out.push_back(element_from_json(G, e));
    return FiniteSet(std::move(out));
}

// --- windows and labelings --------------------------------------------------------

json to_json(const Window & w)
{
    if (w.is_torus())
        return json{{"kind", "torus"}, {"moduli", w.moduli()}};
    return json{{"kind", "ball"}, {"group", to_json(w.group())}, {"generators", to_json(w.generators())},
        {"radius", w.radius()}};
}

Window window_from_json(const json & j, std::size_t cap)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        schema("window needs a string \"kind\"");
    const auto kind = j["kind"].get<std::string>();
    if (kind == "torus") {
        check_fields(j, "torus window", {"kind", "moduli"});
        std::vector<std::int64_t> moduli;
        for (const auto & n : get_array(j["moduli"], "moduli"))
            moduli.push_back(get_int(n, "modulus"));
        return Window::torus(std::move(moduli), cap);
    }
    if (kind == "ball") {
        check_fields(j, "ball window", {"kind", "group", "generators", "radius"});
        auto G = group_from_json(j["group"]);
        auto gens = set_from_json(G, j["generators"]);
        return Window::ball(G, std::move(gens), get_small(j["radius"], "radius", 0, 1 << 20), cap);
    }
    schema("unknown window kind \"" + kind + "\"");
}

json to_json(const Labeling & l)
{
    return json{{"window", to_json(*l.window)}, {"k", l.k}, {"values", l.values}};
}

namespace {

Labeling labeling_body(const json & j, WindowPtr window)
{
    Labeling l;
    l.window = std::move(window);
    l.k = get_small(j["k"], "k", 1, 1 << 20);
    for (const auto & v : get_array(j["values"], "values"))
        l.values.push_back(get_small(v, "value", 0, l.k - 1));
    l.validate();
    return l;
}

} // namespace

Labeling labeling_from_json(const json & j, std::size_t cap)
{
    check_fields(j, "labeling", {"window", "k", "values"});
    return labeling_body(j, std::make_shared<const Window>(window_from_json(j["window"], cap)));
}

Labeling labeling_from_json(const json & j, const WindowPtr & window)
{
    check_fields(j, "labeling", {"window", "k", "values"});
    auto w = window_from_json(j["window"], window->size() + 1);
    if (!(w == *window))
        schema("labeling window does not match");
    return labeling_body(j, window);
}

// --- pattern systems -----------------------------------------------------------------

json to_json(const PatternSystem & p)
{
    if (const auto * a = p.acceptable())
        return json{{"type", "acceptable"}, {"D", to_json(a->D)}, {"R", to_json(a->R)}, {"k", a->markers}};
    return json{{"type", "explicit"}, {"k", p.k()}, {"W", to_json(p.W())}, {"patterns", p.patterns()}};
}

PatternSystem pattern_system_from_json(const GroupDescriptor & G, const json & j)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        schema("pattern system needs a string \"type\"");
    const auto type = j["type"].get<std::string>();
    if (type == "explicit") {
        check_fields(j, "explicit pattern system", {"type", "k", "W", "patterns"});
        std::vector<std::vector<int>> patterns;
        for (const auto & p : get_array(j["patterns"], "patterns")) {
            std::vector<int> row;
            for (const auto & v : get_array(p, "pattern"))
                row.push_back(static_cast<int>(get_int(v, "pattern value")));
            patterns.push_back(std::move(row));
        }
        return PatternSystem::explicit_patterns(
            get_small(j["k"], "k", 1, 1 << 20), set_from_json(G, j["W"]), std::move(patterns));
    }
    if (type == "full") {
        check_fields(j, "full shift", {"type", "k", "W"});
        return PatternSystem::full_shift(get_small(j["k"], "k", 1, 1 << 20), set_from_json(G, j["W"]));
    }
    if (type == "acceptable") {
        check_fields(j, "acceptable pattern system", {"type", "D", "R", "k"});
        return acceptable_pattern_system(
            G, set_from_json(G, j["D"]), set_from_json(G, j["R"]), get_small(j["k"], "k", 1, 1 << 20));
    }
    schema("unknown pattern system type \"" + type + "\"");
}

// --- numbers and reports ----------------------------------------------------------------

json to_json(const Rational & q) { return to_string(q); }

Rational rational_from_json(const json & j)
{
    if (j.is_number_integer())
        return Rational(BigInt(j.get<std::int64_t>()));
    if (!j.is_string())
        schema("rational must be a \"num/den\" string");
    return parse_rational(j.get<std::string>());
}

json to_json(const CertifiedComparison & c)
{
    return json{{"verdict", to_string(c.verdict)}, {"lhs_lower", c.lower}, {"lhs_upper", c.upper},
        {"precision_bits", c.precision_bits}, {"exact", c.exact}};
}

json points_to_json(const Window & w, std::span<const std::size_t> points)
{
    json a = json::array();
    for (auto p : points)
        a.push_back(to_json(w.point(p)));
    return a;
}

std::vector<std::size_t> points_from_json(const Window & w, const json & j)
{
    std::vector<std::size_t> out;
    for (const auto & e : get_array(j, "points")) {
        auto idx = w.index_of(element_from_json(w.group(), e));
        if (!idx)
            schema("point " + e.dump() + " is outside the window");
        out.push_back(*idx);
    }
    return out;
}

json to_json(const CertificateReport & r, const Window & w)
{
    json colors = json::array();
    for (std::size_t c = 0; c < r.colors.size(); ++c) {
        json comps = json::array();
        for (const auto & rec : r.colors[c])
            comps.push_back(json{{"status", to_string(rec.status)}, {"size", rec.size},
                {"representative", to_json(w.point(rec.representative))}});
        colors.push_back(json{{"color", c}, {"components", std::move(comps)}});
    }
    return json{{"certified_finite", r.count(ComponentStatus::CertifiedFinite)},
        {"wraps_infinite", r.count(ComponentStatus::WrapsInfinite)},
        {"touches_collar", r.count(ComponentStatus::TouchesCollar)}, {"colors", std::move(colors)}};
}

json to_json(const SeparatorResult & r, const Window & w)
{
    json failures = json::array();
    for (const auto & [c, j] : r.failures) {
        const auto & rec = r.certificate.colors[static_cast<std::size_t>(c)][j];
        failures.push_back(json{{"color", c}, {"status", to_string(rec.status)},
            {"representative", to_json(w.point(rec.representative))}, {"size", rec.size}});
    }
    return json{{"passed", r.passed}, {"mode", to_string(r.mode)}, {"s", r.s}, {"phi", to_json(r.phi)},
        {"unverified", r.unverified}, {"vacuous", r.vacuous}, {"failures", std::move(failures)},
        {"certificate", to_json(r.certificate, w)}};
}

json to_json(const PartitionWitness & p)
{
    json classes = json::array();
    for (const auto & c : p.classes)
        classes.push_back(c);
    return json{{"window", to_json(*p.window)}, {"phi", to_json(p.phi)}, {"classes", std::move(classes)}};
}

PartitionWitness partition_from_json(const json & j, std::size_t cap)
{
    check_fields(j, "partition witness", {"window", "classes"}, {"phi"});
    PartitionWitness p;
    p.window = std::make_shared<const Window>(window_from_json(j["window"], cap));
    if (j.contains("phi"))
        p.phi = set_from_json(p.window->group(), j["phi"]);
    for (const auto & c : get_array(j["classes"], "classes")) {
        std::vector<std::size_t> cls;
        for (const auto & v : get_array(c, "class"))
            cls.push_back(static_cast<std::size_t>(get_small(v, "class index", 0, static_cast<std::int64_t>(p.window->size()) - 1)));
        p.classes.push_back(std::move(cls));
    }
    p.validate();
    for (const auto & cls : p.classes)
        p.components.push_back(components(*p.window, p.phi, cls));
    return p;
}

json to_json(const SpacingReport & r, const Window & w)
{
    json out{{"spaced", r.spaced}};
    if (r.witness)
        out["witness"] = json::array({to_json(w.point(r.witness->first)), to_json(w.point(r.witness->second))});
    return out;
}

json to_json(const SyndeticReport & r, const Window & w)
{
    return json{{"F", to_json(r.F)}, {"interior", r.interior}, {"vacuous", r.vacuous()}, {"passed", r.passed()},
        {"failures", points_to_json(w, r.failures)}};
}

json to_json(const SpacedFamily & f)
{
    const Window & w = *f.window;
    json sets = json::array();
    for (const auto & s : f.sets)
        sets.push_back(points_to_json(w, s));
    json syndetic = json::array();
    for (const auto & r : f.syndetic)
        syndetic.push_back(to_json(r, w));
    json provenance{{"mode", f.mode == PipelineMode::Strict ? "strict" : "empirical"}, {"r", f.r},
        {"solver", f.solver}, {"D", to_json(f.D)}, {"R", to_json(f.R)}, {"W_size", f.W.size()}};
    if (f.n)
        provenance["n"] = f.n->get_str();
    return json{{"window", to_json(w)}, {"phi", to_json(f.phi)}, {"k", f.k}, {"sets", std::move(sets)},
        {"spacing", to_json(f.spacing, w)}, {"syndetic", std::move(syndetic)}, {"provenance", std::move(provenance)}};
}

FamilySets family_sets_from_json(const json & j, std::size_t cap)
{
    check_fields(j, "family", {"window", "sets"}, {"phi", "k", "spacing", "syndetic", "provenance"});
    FamilySets out;
    out.window = std::make_shared<const Window>(window_from_json(j["window"], cap));
    for (const auto & s : get_array(j["sets"], "sets"))
        out.sets.push_back(points_from_json(*out.window, s));
    return out;
}

json to_json(const CylinderConstraint & c)
{
    return json{{"D", to_json(c.D)}, {"alphabet", c.alphabet}, {"patterns", c.patterns}};
}

CylinderConstraint cylinder_from_json(const GroupDescriptor & G, const json & j)
{
    check_fields(j, "cylinder constraint", {"D", "alphabet", "patterns"});
    CylinderConstraint c;
    c.D = set_from_json(G, j["D"]);
    c.alphabet = get_small(j["alphabet"], "alphabet", 2, 1 << 20);
    for (const auto & per_set : get_array(j["patterns"], "patterns")) {
        std::vector<std::vector<int>> levels;
        for (const auto & p : get_array(per_set, "pattern levels")) {
            std::vector<int> row;
            for (const auto & v : get_array(p, "pattern"))
                row.push_back(static_cast<int>(get_int(v, "pattern value")));
            levels.push_back(std::move(row));
        }
        c.patterns.push_back(std::move(levels));
    }
    c.validate(G);
    return c;
}

// --- documents ------------------------------------------------------------------------------

json document(const std::string & kind, json body)
{
    json out{{"version", format_version}, {"kind", kind}};
    for (auto it = body.begin(); it != body.end(); ++it)
        out[it.key()] = it.value();
    return out;
}

json read_document(const std::string & text, const std::string & kind)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error & e) {
        schema(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        schema("document must be an object");
    if (!j.contains("version") || j["version"] != format_version)
        schema(std::string("document version must be \"") + format_version + "\"");
    if (!j.contains("kind") || !j["kind"].is_string() || j["kind"].get<std::string>() != kind)
        schema("expected a \"" + kind + "\" document");
    j.erase("version");
    j.erase("kind");
    return j;
}

std::string dump(const json & j) { return j.dump(2) + "\n"; }

} // namespace sepshift::io

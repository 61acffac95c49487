// sepshift: command-line front end. Every command reads and writes JSON
// documents; exit codes are 0 (verified success), 1 (usage or schema),
// 2 (verification failure), 3 (resource cap or solver timeout).

#include "sepshift/error.hpp"
#include "sepshift/io.hpp"
#include "sepshift/render.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace sepshift;
using io::json;

namespace {

constexpr int exit_ok = 0, exit_usage = 1, exit_verification = 2, exit_resource = 3;

std::size_t max_cells()
{
    if (const char * env = std::getenv("SEPSHIFT_MAX_CELLS")) {
        char * end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            fail(ErrorKind::Usage, "SEPSHIFT_MAX_CELLS must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return default_ball_cap;
}

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Usage, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON, or the contents of a file when the argument starts with '@'.
json json_arg(const std::string & text, const char * what)
{
    const std::string src = !text.empty() && text[0] == '@' ? read_file(text.substr(1)) : text;
    try {
        return json::parse(src);
    } catch (const json::parse_error &) {
        fail(ErrorKind::Usage, std::string("--") + what + " is not valid JSON");
    }
}

void write_atomic(const std::string & path, const std::string & bytes)
{
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::Usage, "cannot write " + path);
        out << bytes;
        if (!out.flush())
            fail(ErrorKind::Usage, "cannot write " + path);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail(ErrorKind::Usage, "cannot move output into place at " + path);
    }
}

struct Output {
    std::string path;
    bool echo = false;

    void add(CLI::App * cmd)
    {
        cmd->add_option("--out", path, "Write the document here (atomically) instead of standard output");
        cmd->add_flag("--json", echo, "Also print the document on standard output");
    }
    void emit(const json & doc) const
    {
        const auto text = io::dump(doc);
        if (path.empty() || echo)
            std::cout << text;
        if (!path.empty())
            write_atomic(path, text);
    }
};

/// Any document with a "labeling" member.
Labeling load_labeling(const std::string & path)
{
    auto j = json_arg("@" + path, "labeling");
    if (!j.is_object() || j.value("version", "") != io::format_version || !j.contains("labeling"))
        fail(ErrorKind::Usage, "schema: " + path + " is not a document with a labeling");
    return io::labeling_from_json(j["labeling"], max_cells());
}

json load_document(const std::string & path, const std::string & kind)
{
    return io::read_document(read_file(path), kind);
}

void require_only(const json & body, std::initializer_list<const char *> allowed, const std::string & kind)
{
    for (auto it = body.begin(); it != body.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char * a) { return it.key() == a; }))
            fail(ErrorKind::Usage, "schema: " + kind + " document has unknown field \"" + it.key() + "\"");
}

std::vector<std::int64_t> parse_lengths(const std::string & text)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(part, &pos));
            if (pos != part.size())
                throw std::invalid_argument(part);
        } catch (const std::exception &) {
            fail(ErrorKind::Usage, "bad length list \"" + text + "\"");
        }
    }
    if (out.empty())
        fail(ErrorKind::Usage, "empty length list");
    return out;
}

json labeling_document(const Labeling & l, json extra)
{
    json body{{"labeling", io::to_json(l)}};
    for (auto it = extra.begin(); it != extra.end(); ++it)
        body[it.key()] = it.value();
    return io::document("labeling", std::move(body));
}

int verdict_exit(Verdict v)
{
    return v == Verdict::Accept ? exit_ok : v == Verdict::Reject ? exit_verification : exit_resource;
}

// --- group ----------------------------------------------------------------------

void add_group(CLI::App & app, int & code)
{
    auto * group = app.add_subcommand("group", "Group arithmetic and finite-set algebra");
    group->require_subcommand(1);
    static std::string G_text, a_text, b_text, gens_text;
    static int radius = 0;
    static Output out;

    auto with_group = [&](CLI::App * cmd) {
        cmd->add_option("--group", G_text, "Group descriptor JSON")->required();
        out.add(cmd);
    };

    auto * mul = group->add_subcommand("multiply", "Product a·b");
    with_group(mul);
    mul->add_option("--a", a_text, "Element JSON")->required();
    mul->add_option("--b", b_text, "Element JSON")->required();
    mul->callback([&] {
        auto G = io::group_from_json(json_arg(G_text, "group"));
        auto g = io::element_from_json(G, json_arg(a_text, "a")), h = io::element_from_json(G, json_arg(b_text, "b"));
        out.emit(io::document("element", {{"group", io::to_json(G)}, {"element", io::to_json(multiply(G, g, h))}}));
        code = exit_ok;
    });

    auto * inv = group->add_subcommand("invert", "Inverse of g");
    with_group(inv);
    inv->add_option("--g", a_text, "Element JSON")->required();
    inv->callback([&] {
        auto G = io::group_from_json(json_arg(G_text, "group"));
        auto g = io::element_from_json(G, json_arg(a_text, "g"));
        out.emit(io::document("element", {{"group", io::to_json(G)}, {"element", io::to_json(invert(G, g))}}));
        code = exit_ok;
    });

    auto * prod = group->add_subcommand("product", "Set product A·B");
    with_group(prod);
    prod->add_option("--A", a_text, "Finite set JSON")->required();
    prod->add_option("--B", b_text, "Finite set JSON")->required();
    prod->callback([&] {
        auto G = io::group_from_json(json_arg(G_text, "group"));
        auto A = io::set_from_json(G, json_arg(a_text, "A")), B = io::set_from_json(G, json_arg(b_text, "B"));
        out.emit(io::document("set", {{"group", io::to_json(G)}, {"set", io::to_json(set_product(G, A, B))}}));
        code = exit_ok;
    });

    auto * sym = group->add_subcommand("symmetrize", "Phi ∪ Phi^-1 ∪ {1}");
    with_group(sym);
    sym->add_option("--phi", a_text, "Finite set JSON")->required();
    sym->callback([&] {
        auto G = io::group_from_json(json_arg(G_text, "group"));
        auto phi = io::set_from_json(G, json_arg(a_text, "phi"));
        out.emit(io::document("set", {{"group", io::to_json(G)}, {"set", io::to_json(symmetrize(G, phi))}}));
        code = exit_ok;
    });

    auto * bl = group->add_subcommand("ball", "Ball of a given radius");
    with_group(bl);
    bl->add_option("--gens", gens_text, "Generator set JSON (default: standard generators)");
    bl->add_option("--radius", radius, "Radius")->required()->check(CLI::NonNegativeNumber);
    bl->callback([&] {
        auto G = io::group_from_json(json_arg(G_text, "group"));
        auto gens = gens_text.empty() ? standard_generators(G) : io::set_from_json(G, json_arg(gens_text, "gens"));
        auto B = ball(G, gens, radius, max_cells());
        out.emit(io::document("set", {{"group", io::to_json(G)}, {"size", B.size()}, {"set", io::to_json(B)}}));
        code = exit_ok;
    });
}

// --- sep --------------------------------------------------------------------------

void add_render_options(CLI::App * cmd, RenderOptions & opts, std::string & format, std::string & path)
{
    cmd->add_option("--out", path, "Output image path")->required();
    cmd->add_option("--format", format, "svg or pgm (default: from the file extension, else svg)")
        ->check(CLI::IsMember({"svg", "pgm"}));
    cmd->add_option("--cell", opts.cell, "Pixels per point")->check(CLI::PositiveNumber);
    cmd->add_option("--palette", opts.palette, "Fill colors by label, e.g. '#d9d9ff' '#ffd9d9'");
    cmd->add_flag("!--no-outline", opts.outline, "Omit cell borders");
}

void do_render(const std::string & labeling_path, const RenderOptions & opts, std::string format, const std::string & path)
{
    auto l = load_labeling(labeling_path);
    if (format.empty())
        format = path.size() >= 4 && path.substr(path.size() - 4) == ".pgm" ? "pgm" : "svg";
    write_atomic(path, format == "svg" ? render_svg(l, opts) : render_pgm(l, opts));
}

void add_sep(CLI::App & app, int & code)
{
    auto * sep = app.add_subcommand("sep", "Separators: build, verify, render");
    sep->require_subcommand(1);

    static std::string family, window_text, lengths, phi_text, mode_text = "auto", labeling_path, format, image;
    static int s_arg = 0;
    static Output out;
    static RenderOptions ropts;

    auto * build = sep->add_subcommand("build", "Construct and verify a separator");
    build->add_option("--family", family, "interval | product | band")
        ->required()
        ->check(CLI::IsMember({"interval", "product", "band"}));
    build->add_option("--window", window_text, "Window JSON")->required();
    build->add_option("--L", lengths, "Block length (comma-separated per axis for product)")->required();
    build->add_option("--phi", phi_text, "Phi to verify against (default: standard generators)");
    out.add(build);
    build->callback([&] {
        auto w = std::make_shared<const Window>(io::window_from_json(json_arg(window_text, "window"), max_cells()));
        auto L = parse_lengths(lengths);
        Labeling l;
        if (family == "interval") {
            if (L.size() != 1)
                fail(ErrorKind::Usage, "interval family takes a single length");
            l = build_interval_separator_Z(L[0], w);
        } else if (family == "product") {
            l = build_product_separator_Zd(L, w);
        } else {
            if (L.size() != 1)
                fail(ErrorKind::Usage, "band family takes a single length");
            l = build_band_separator_free(L[0], w);
        }
        auto phi = phi_text.empty() ? standard_generators(w->group()) : io::set_from_json(w->group(), json_arg(phi_text, "phi"));
        auto mode = w->is_torus() ? SeparatorMode::Exact : SeparatorMode::Interior;
        auto res = verify_separator(l, l.k - 1, phi, mode);
        if (!res.passed) {
            std::cout << io::dump(io::document("verification", io::to_json(res, *w)));
            code = exit_verification;
            return;
        }
        out.emit(labeling_document(l,
            {{"verification", io::to_json(res, *w)},
                {"provenance", {{"family", family}, {"L", L}}}}));
        code = exit_ok;
    });

    auto * verify = sep->add_subcommand("verify", "Verify a labeling as an (s, Phi)-separator");
    verify->add_option("--labeling", labeling_path, "Labeling document")->required();
    verify->add_option("--phi", phi_text, "Phi JSON")->required();
    verify->add_option("--s", s_arg, "Separator index (default: k - 1)");
    verify->add_option("--mode", mode_text, "exact | interior | auto")->check(CLI::IsMember({"exact", "interior", "auto"}));
    out.add(verify);
    verify->callback([&] {
        auto l = load_labeling(labeling_path);
        auto phi = io::set_from_json(l.window->group(), json_arg(phi_text, "phi"));
        auto mode = mode_text == "exact" ? SeparatorMode::Exact
            : mode_text == "interior"    ? SeparatorMode::Interior
            : l.window->is_torus()       ? SeparatorMode::Exact
                                         : SeparatorMode::Interior;
        auto res = verify_separator(l, s_arg > 0 ? s_arg : l.k - 1, phi, mode);
        out.emit(io::document("verification", io::to_json(res, *l.window)));
        code = res.passed ? exit_ok : exit_verification;
    });

    auto * part = sep->add_subcommand("partition", "Partition witness X_0..X_s from a labeling");
    part->add_option("--labeling", labeling_path, "Labeling document")->required();
    part->add_option("--phi", phi_text, "Phi recorded with the witness")->required();
    out.add(part);
    part->callback([&] {
        auto l = load_labeling(labeling_path);
        auto phi = io::set_from_json(l.window->group(), json_arg(phi_text, "phi"));
        out.emit(io::document("witness", {{"witness", io::to_json(partition_from_separator(l, phi))}}));
        code = exit_ok;
    });

    auto * render = sep->add_subcommand("render", "Draw a labeling");
    render->add_option("--labeling", labeling_path, "Labeling document")->required();
    add_render_options(render, ropts, format, image);
    render->callback([&] {
        do_render(labeling_path, ropts, format, image);
        code = exit_ok;
    });
}

// --- lll ---------------------------------------------------------------------------

struct Instance {
    WindowPtr window;
    PatternSystem patterns;
};

Instance load_instance(const std::string & path)
{
    auto body = load_document(path, "instance");
    require_only(body, {"window", "patterns"}, "instance");
    if (!body.contains("window") || !body.contains("patterns"))
        fail(ErrorKind::Usage, "schema: instance needs \"window\" and \"patterns\"");
    auto w = std::make_shared<const Window>(io::window_from_json(body["window"], max_cells()));
    return Instance{w, io::pattern_system_from_json(w->group(), body["patterns"])};
}

json membership_json(const MembershipReport & m, const Window & w)
{
    return json{{"member", m.member()}, {"violators", io::points_to_json(w, m.violators)},
        {"unchecked", m.unchecked.size()}};
}

void add_lll(CLI::App & app, int & code)
{
    auto * lll = app.add_subcommand("lll", "Local Lemma checks and solvers");
    lll->require_subcommand(1);
    static std::string p_text, pcount_text, instance_path, witness_path;
    static unsigned long d = 1;
    static int k = 2, s = 1;
    static std::size_t wsize = 1, component_cap = 24;
    static std::uint64_t seed = 1, max_resamples = 1'000'000;
    static bool unsafe = false;
    static Output out;

    auto * check = lll->add_subcommand("check", "Symmetric condition e·p·d <= 1");
    check->add_option("--p", p_text, "Event probability bound (n/d or decimal)")->required();
    check->add_option("--d", d, "Dependency bound")->required()->check(CLI::PositiveNumber);
    out.add(check);
    check->callback([&] {
        auto c = symmetric_lll_check(parse_rational(p_text), d);
        out.emit(io::document("lll-check", {{"p", p_text}, {"d", d}, {"result", io::to_json(c)}}));
        code = verdict_exit(c.verdict);
    });

    auto * sft = lll->add_subcommand("sft-check", "Nonemptiness bound e·(1 - |P|/k^|W|)·|W|^2 <= 1");
    sft->add_option("--k", k, "Alphabet size")->required();
    sft->add_option("--wsize", wsize, "|W|")->required();
    sft->add_option("--pcount", pcount_text, "|P|")->required();
    out.add(sft);
    sft->callback([&] {
        auto c = sft_nonempty_check(k, wsize, BigInt(parse_rational(pcount_text)));
        out.emit(io::document("lll-check", {{"k", k}, {"wsize", wsize}, {"pcount", pcount_text}, {"result", io::to_json(c)}}));
        code = verdict_exit(c.verdict);
    });

    auto * cont = lll->add_subcommand("cont-check", "Continuous bound e^(s+1)·(1 - |P|/k^|W|)·|W|^(2(s+1)) <= 1");
    cont->add_option("--s", s, "Separation index")->required();
    cont->add_option("--k", k, "Alphabet size")->required();
    cont->add_option("--wsize", wsize, "|W|")->required();
    cont->add_option("--pcount", pcount_text, "|P|")->required();
    out.add(cont);
    cont->callback([&] {
        auto c = cont_lll_check(s, k, wsize, BigInt(parse_rational(pcount_text)));
        out.emit(io::document(
            "lll-check", {{"s", s}, {"k", k}, {"wsize", wsize}, {"pcount", pcount_text}, {"result", io::to_json(c)}}));
        code = verdict_exit(c.verdict);
    });

    auto * solve = lll->add_subcommand("solve", "Moser-Tardos on an instance");
    solve->add_option("--instance", instance_path, "Instance document")->required();
    solve->add_option("--seed", seed, "Random seed");
    solve->add_option("--max-resamples", max_resamples, "Resampling budget");
    out.add(solve);
    solve->callback([&] {
        auto inst = load_instance(instance_path);
        EventSystem events(inst.window, inst.patterns);
        auto res = moser_tardos_solve(events, seed, max_resamples);
        json trace = json::array();
        for (const auto & [r, v] : res.trace)
            trace.push_back(json::array({r, v}));
        if (!res.solved) {
            std::cout << io::dump(io::document("timeout", {{"resamples", res.resamples}, {"trace", trace}}));
            code = exit_resource;
            return;
        }
        auto m = sft_membership(*res.labeling, inst.patterns);
        if (!m.member()) {
            std::cout << io::dump(io::document("membership", membership_json(m, *inst.window)));
            code = exit_verification;
            return;
        }
        out.emit(labeling_document(*res.labeling,
            {{"membership", membership_json(m, *inst.window)},
                {"provenance", {{"solver", "moser-tardos"}, {"seed", seed}, {"resamples", res.resamples}, {"trace", trace}}}}));
        code = exit_ok;
    });

    auto * der = lll->add_subcommand("derandomize", "Separator-guided derandomized solve");
    der->add_option("--instance", instance_path, "Instance document")->required();
    der->add_option("--witness", witness_path, "Witness document")->required();
    der->add_option("--s", s, "Separation index; the witness must have s+1 classes")->required();
    der->add_option("--component-cap", component_cap, "Largest component searched exhaustively");
    der->add_flag("--unsafe", unsafe, "Skip the bound and witness preconditions");
    out.add(der);
    der->callback([&] {
        auto inst = load_instance(instance_path);
        auto wbody = load_document(witness_path, "witness");
        require_only(wbody, {"witness"}, "witness");
        if (!wbody.contains("witness"))
            fail(ErrorKind::Usage, "schema: witness document needs \"witness\"");
        auto witness = io::partition_from_json(wbody["witness"], max_cells());
        EventSystem events(inst.window, inst.patterns);
        DerandomizeOptions opts;
        opts.unsafe = unsafe;
        opts.component_cap = component_cap;
        auto res = derandomized_solve(events, witness, s, opts);
        auto m = sft_membership(res.labeling, inst.patterns);
        out.emit(labeling_document(res.labeling,
            {{"membership", membership_json(m, *inst.window)},
                {"provenance",
                    {{"solver", "derandomized"}, {"s", s}, {"d", res.d}, {"nodes", res.nodes}, {"unsafe", unsafe}}}}));
        code = m.member() ? exit_ok : exit_verification;
    });
}

// --- sft ------------------------------------------------------------------------------

void add_sft(CLI::App & app, int & code)
{
    auto * sft = app.add_subcommand("sft", "Subshifts of finite type");
    sft->require_subcommand(1);
    static std::string labeling_path, patterns_text, instance_path, G_text, D_text, R_text;
    static int k = 1;
    static Output out;

    auto * member = sft->add_subcommand("member", "Points whose W-pattern is not allowed");
    member->add_option("--labeling", labeling_path, "Labeling document")->required();
    member->add_option("--patterns", patterns_text, "Pattern system JSON")->required();
    out.add(member);
    member->callback([&] {
        auto l = load_labeling(labeling_path);
        auto P = io::pattern_system_from_json(l.window->group(), json_arg(patterns_text, "patterns"));
        auto m = sft_membership(l, P);
        out.emit(io::document("membership", membership_json(m, *l.window)));
        code = m.member() ? exit_ok : exit_verification;
    });

    auto * bound = sft->add_subcommand("bound", "Lower bound on the acceptable-pattern fraction");
    bound->add_option("--group", G_text, "Group descriptor JSON")->required();
    bound->add_option("--D", D_text, "D JSON")->required();
    bound->add_option("--R", R_text, "R JSON")->required();
    bound->add_option("--k", k, "Number of markers")->required();
    out.add(bound);
    bound->callback([&] {
        auto G = io::group_from_json(json_arg(G_text, "group"));
        auto b = pattern_fraction_bound(G, io::set_from_json(G, json_arg(D_text, "D")),
            io::set_from_json(G, json_arg(R_text, "R")), k);
        out.emit(io::document("fraction-bound", {{"bound", io::to_json(b.value)}, {"vacuous", b.vacuous}}));
        code = exit_ok;
    });

    auto * en = sft->add_subcommand("enumerate", "All valid labelings of a small torus");
    en->add_option("--instance", instance_path, "Instance document")->required();
    out.add(en);
    en->callback([&] {
        auto inst = load_instance(instance_path);
        auto all = brute_force_sft_enumerate(inst.patterns, *inst.window);
        out.emit(io::document("enumeration", {{"window", io::to_json(*inst.window)}, {"count", all.size()}, {"labelings", all}}));
        code = exit_ok;
    });
}

// --- pipeline --------------------------------------------------------------------------

void add_pipeline(CLI::App & app, int & code)
{
    auto * pipe = app.add_subcommand("pipeline", "Marker sets and pattern copying");
    pipe->require_subcommand(1);
    static std::string window_text, phi_text, F_text, mode_text, witness_path, separator_path, family_path, pattern_path;
    static int k = 1, s = 1;
    static std::size_t level = 0;
    static std::uint64_t seed = 1, max_resamples = 1'000'000;
    static Output out;

    auto * syn = pipe->add_subcommand("syndetic", "F-syndetic sets with a Phi-spaced union");
    syn->add_option("--window", window_text, "Window JSON")->required();
    syn->add_option("--phi", phi_text, "Phi JSON")->required();
    syn->add_option("--k", k, "Number of sets")->required();
    syn->add_option("--F", F_text, "F JSON")->required();
    syn->add_option("--mode", mode_text, "strict | empirical:R")->required();
    syn->add_option("--s", s, "Separation index for strict mode and the derandomizer");
    syn->add_option("--witness", witness_path, "Witness document (derandomized solve)");
    syn->add_option("--seed", seed, "Random seed");
    syn->add_option("--max-resamples", max_resamples, "Resampling budget");
    out.add(syn);
    syn->callback([&] {
        auto w = std::make_shared<const Window>(io::window_from_json(json_arg(window_text, "window"), max_cells()));
        PipelineOptions opts;
        if (mode_text == "strict") {
            opts.mode = PipelineMode::Strict;
        } else if (mode_text.rfind("empirical:", 0) == 0) {
            opts.mode = PipelineMode::Empirical;
            auto r = parse_lengths(mode_text.substr(10));
            if (r.size() != 1 || r[0] < 1)
                fail(ErrorKind::Usage, "empirical mode takes one positive r");
            opts.r = static_cast<std::size_t>(r[0]);
        } else {
            fail(ErrorKind::Usage, "--mode must be strict or empirical:R");
        }
        opts.s = s;
        opts.seed = seed;
        opts.max_resamples = max_resamples;
        if (!witness_path.empty()) {
            auto wbody = load_document(witness_path, "witness");
            require_only(wbody, {"witness"}, "witness");
            opts.witness = io::partition_from_json(wbody.at("witness"), max_cells());
        }
        auto fam = syndetic_spaced_pipeline(w, io::set_from_json(w->group(), json_arg(phi_text, "phi")), k,
            io::set_from_json(w->group(), json_arg(F_text, "F")), opts);
        out.emit(io::document("family", {{"family", io::to_json(fam)}}));
        code = exit_ok;
    });

    auto * copy = pipe->add_subcommand("copy", "Copy cylinder patterns onto a separator around marked sets");
    copy->add_option("--separator", separator_path, "Labeling document of the separator h")->required();
    copy->add_option("--family", family_path, "Family document with A_1..A_k")->required();
    copy->add_option("--pattern", pattern_path, "Cylinder document with D, alphabet, patterns and levels")->required();
    copy->add_option("--n", level, "Level n");
    out.add(copy);
    copy->callback([&] {
        auto h = load_labeling(separator_path);
        auto fbody = load_document(family_path, "family");
        require_only(fbody, {"family"}, "family");
        auto fam = io::family_sets_from_json(fbody.at("family"), max_cells());
        if (!(*fam.window == *h.window))
            fail(ErrorKind::Usage, "family window differs from the separator window");
        auto cbody = load_document(pattern_path, "cylinder");
        require_only(cbody, {"cylinder", "levels"}, "cylinder");
        const auto & G = h.window->group();
        auto cyl = io::cylinder_from_json(G, cbody.at("cylinder"));
        std::vector<FiniteSet> levels;
        for (const auto & l : cbody.at("levels"))
            levels.push_back(io::set_from_json(G, l));
        auto res = pattern_copier(h, fam.sets, cyl, level, levels);
        out.emit(labeling_document(res.f,
            {{"verification", io::to_json(res.certificate, *h.window)}, {"safety", io::to_json(res.safety)},
                {"changed", io::points_to_json(*h.window, res.changed)}}));
        code = exit_ok;
    });
}

void add_render(CLI::App & app, int & code)
{
    static std::string labeling_path, format, image;
    static RenderOptions ropts;
    auto * render = app.add_subcommand("render", "Draw a labeling on a Z or Z^2 window as SVG or PGM");
    render->add_option("--labeling", labeling_path, "Labeling document")->required();
    add_render_options(render, ropts, format, image);
    render->callback([&] {
        do_render(labeling_path, ropts, format, image);
        code = exit_ok;
    });
}

void report_error(const char * kind, const std::string & message)
{
    std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"sepshift: separators, subshifts of finite type and Local Lemma solvers on group windows"};
    app.require_subcommand(1);
    int code = exit_ok;
    add_group(app, code);
    add_sep(app, code);
    add_lll(app, code);
    add_sft(app, code);
    add_pipeline(app, code);
    add_render(app, code);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    } catch (const CLI::ParseError & e) {
        report_error("Usage", e.what());
        return exit_usage;
    } catch (const Error & e) {
        report_error(to_string(e.kind()), e.what());
        switch (e.kind()) {
        case ErrorKind::Verification: return exit_verification;
        case ErrorKind::Resource: return exit_resource;
        default: return exit_usage;
        }
    } catch (const std::exception & e) {
        report_error("Usage", e.what());
        return exit_usage;
    }
    return code;
}

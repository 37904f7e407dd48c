#include "tropdiff/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include "tropdiff/amalg.hpp"
#include "tropdiff/demo.hpp"
#include "tropdiff/parse.hpp"
#include "tropdiff/printing.hpp"

namespace tropdiff {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---- JSON value helpers -------------------------------------------------

std::string gv_json(const GroupVector& g) {
    if (g.is_infinity()) return "inf";
    if (g.rank() == 1) return rat_str(g[0]);
    return g.str();
}

ordered_json subfield_json(const CycloDiffSubfield& f) {
    ordered_json j;
    j["n"] = f.n;
    j["H"] = f.H;
    j["b"] = f.b;
    return j;
}

ordered_json lattice_rows_json(const IntMatrix& rows) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json jr = ordered_json::array();
        for (const auto& x : r) jr.push_back(x.get_str());
        out.push_back(jr);
    }
    return out;
}

// ---- Shared state parsed from flags -------------------------------------

struct Common {
    std::string model = "PC";
    std::string precision; // empty = none
    bool json = true;      // accepted for compatibility; output is always JSON
};

Ctx load_model(const std::string& name) {
    if (name == "PC") return pc_model();
    if (name == "ISO") return iso_model();
    std::ifstream in(name);
    if (!in) fail(errc::invalid_argument, "cannot open model file " + name);
    ordered_json j = ordered_json::parse(in);
    int n = j.at("n").get<int>();
    int a = j.at("a").get<int>();
    std::vector<std::vector<Rat>> rows;
    for (const auto& jr : j.at("sigma_gamma")) {
        std::vector<Rat> row;
        for (const auto& x : jr) row.push_back(parse_rat(x.get<std::string>()));
        rows.push_back(std::move(row));
    }
    return make_context(n, a, GroupAut(std::move(rows)));
}

GroupVector need_precision(const Common& c, const Ctx& ctx) {
    if (c.precision.empty())
        fail(errc::invalid_argument, "this command needs --precision");
    return parse_group_vector(c.precision, ctx->rank());
}

std::optional<GroupVector> opt_precision(const Common& c, const Ctx& ctx) {
    if (c.precision.empty()) return std::nullopt;
    return parse_group_vector(c.precision, ctx->rank());
}

// Tropical point: either a single group vector or a JSON array of them.
TropPoint parse_point(const std::string& text, int nvars, int rank) {
    TropPoint pt;
    std::string s = text;
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '[') {
        ordered_json j = ordered_json::parse(s);
        for (const auto& e : j)
            pt.push_back(parse_group_vector(e.get<std::string>(), rank));
    } else {
        pt.push_back(parse_group_vector(s, rank));
    }
    if (static_cast<int>(pt.size()) != nvars)
        fail(errc::rank_mismatch,
             "point has " + std::to_string(pt.size()) + " coordinates, polynomial has " +
                 std::to_string(nvars) + " variables");
    return pt;
}

IntMatrix parse_int_rows(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    IntMatrix rows;
    for (const auto& jr : j) {
        IntRow r;
        for (const auto& x : jr) {
            if (x.is_number_integer())
                r.push_back(Int(x.get<long>()));
            else
                r.push_back(Int(x.get<std::string>()));
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) fail(errc::empty_input, "no rows given");
    return rows;
}

CycloDiffSubfield subfield_from_json(const ordered_json& j, int n) {
    std::vector<int> h;
    for (const auto& x : j.at("H")) h.push_back(x.get<int>());
    return make_subfield(n, h, j.at("b").get<int>());
}

AmalgProblem problem_from_json(const ordered_json& j) {
    int n = j.at("n").get<int>();
    AmalgProblem p;
    p.base = subfield_from_json(j.at("base"), n);
    p.left = subfield_from_json(j.at("left"), n);
    p.right = subfield_from_json(j.at("right"), n);
    return p;
}

// ---- Command handlers (each returns the result object) ------------------

ordered_json series_result(const HahnSeries& f) {
    ordered_json j;
    j["series"] = hs_str(f);
    return j;
}

ordered_json cmd_hahn(const std::string& verb, const Common& c,
                      const std::string& expr, long power) {
    Ctx ctx = load_model(c.model);
    HahnSeries f = parse_series(ctx, expr);
    if (auto p = opt_precision(c, ctx); p && verb != "inv") f = hs_truncate(f, *p);
    if (verb == "eval") return series_result(f);
    if (verb == "v") {
        ordered_json j;
        j["v"] = gv_json(hs_v(f));
        return j;
    }
    if (verb == "ac") {
        Leading lead = hs_leading(f);
        ordered_json j;
        j["v"] = gv_json(lead.v);
        j["ac"] = ctx->residue().str(lead.ac);
        j["res"] = ctx->residue().str(lead.res);
        return j;
    }
    if (verb == "sigma") return series_result(hs_sigma(f, power));
    // inv
    return series_result(hs_inv(f, opt_precision(c, ctx)));
}

ordered_json cmd_trop_roots(const Common& c, const std::string& expr) {
    Ctx ctx = load_model(c.model);
    LaurentPoly f = parse_laurent(ctx, expr);
    auto roots = trop_roots_univariate(tropicalize(f));
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& r : roots) arr.push_back(gv_json(r));
    j["roots"] = arr;
    return j;
}

ordered_json cmd_trop_initial(const Common& c, const std::string& expr,
                              const std::string& point) {
    Ctx ctx = load_model(c.model);
    LaurentPoly f = parse_laurent(ctx, expr);
    TropPoint pt = parse_point(point, f.nvars(), ctx->rank());
    ResiduePoly in = initial_form(f, pt);
    ordered_json j;
    j["initial"] = residue_poly_str(in);
    j["monomial"] = in.is_monomial();
    return j;
}

ordered_json cmd_trop_kapranov(const Common& c, const std::string& expr) {
    Ctx ctx = load_model(c.model);
    LaurentPoly f = parse_laurent(ctx, expr);
    KapranovReport rep = kapranov_check(f);
    ordered_json j;
    j["pass"] = rep.pass;
    ordered_json roots = ordered_json::array();
    for (const auto& r : rep.trop_roots) roots.push_back(gv_json(r));
    j["roots"] = roots;
    ordered_json newton = ordered_json::array();
    for (const auto& [v, m] : rep.newton) {
        ordered_json e;
        e["v"] = gv_json(v);
        e["mult"] = m;
        newton.push_back(e);
    }
    j["newton"] = newton;
    j["notes"] = rep.notes;
    return j;
}

ordered_json cmd_sigma(const std::string& verb, const Common& c,
                       const std::string& expr, const std::string& start) {
    Ctx ctx = load_model(c.model);
    SigmaPolynomial g = parse_sigma_poly(ctx, expr);
    if (verb == "complexity") {
        Complexity cx = sp_complexity(g);
        ordered_json j;
        j["order"] = cx.order;
        j["top_degree"] = cx.top_degree;
        j["total_degree"] = cx.total_degree;
        return j;
    }
    if (start.empty())
        fail(errc::invalid_argument, "this command needs --start");
    HahnSeries a = parse_series(ctx, start);
    if (verb == "config") {
        HenselConfig cfg = sp_hensel_config(g, a);
        ordered_json j;
        j["ok"] = cfg.ok;
        if (cfg.ok)
            j["delta"] = gv_json(cfg.delta);
        else
            j["reason"] = cfg.reason;
        return j;
    }
    // hensel
    GroupVector target = need_precision(c, ctx);
    LiftResult lift = sp_hensel_lift(g, a, target);
    ordered_json j;
    if (lift.status == LiftResult::Status::ok) {
        j["status"] = "ok";
        j["root"] = hs_str(lift.root);
        j["residual_v"] = gv_json(lift.residual_v);
        j["steps"] = lift.steps;
    } else {
        j["status"] = "residue_obstruction";
        j["delta"] = gv_json(lift.delta);
        ordered_json coeffs = ordered_json::array();
        for (const auto& cc : lift.residue_coeffs)
            coeffs.push_back(ctx->residue().str(cc));
        j["coeffs"] = coeffs;
        j["rhs"] = ctx->residue().str(lift.residue_rhs);
        j["partial_root"] = hs_str(lift.root);
        j["steps"] = lift.steps;
    }
    return j;
}

ordered_json coset_json(const BinomialCoset& coset) {
    ordered_json j;
    j["basis"] = lattice_rows_json(coset.lattice.basis());
    ordered_json ts = ordered_json::array();
    for (const auto& t : coset.targets) ts.push_back(hs_str(t));
    j["targets"] = ts;
    return j;
}

ordered_json cmd_zsigma(const std::string& verb, const Common& c,
                        const std::string& a_text, const std::string& b_text,
                        const std::string& z_text) {
    Ctx ctx = load_model(c.model);
    ZSigmaMatrix a = parse_zsigma_matrix(a_text);
    std::vector<HahnSeries> b = parse_series_vector(ctx, b_text);
    if (verb == "coset") {
        CosetPresentation pres = matrix_to_coset(ctx, a, b);
        ordered_json j;
        j["ell"] = pres.ell;
        ordered_json cm = ordered_json::array();
        for (const auto& row : pres.C)
            for (const auto& var_row : row) {
                ordered_json r = ordered_json::array();
                for (long x : var_row) r.push_back(x);
                cm.push_back(r);
            }
        j["C"] = cm;
        j["shifts"] = pres.shifts;
        ordered_json raw = ordered_json::array();
        for (const auto& t : pres.raw_targets) raw.push_back(hs_str(t));
        j["raw_targets"] = raw;
        j["coset"] = coset_json(pres.coset);
        return j;
    }
    std::vector<HahnSeries> z = parse_series_vector(ctx, z_text);
    if (verb == "check") {
        MembershipCheck mc = check_orbit_membership(a, b, z);
        ordered_json j;
        j["direct"] = mc.direct;
        j["via_coset"] = mc.via_coset;
        return j;
    }
    // transfer
    std::vector<HahnSeries> u = purity_transfer(a, b, z);
    ordered_json j;
    ordered_json us = ordered_json::array();
    for (const auto& s : u) us.push_back(hs_str(s));
    j["u"] = us;
    j["verified"] = true;
    return j;
}

ordered_json cmd_lattice(const std::string& verb, const std::string& rows_text) {
    IntMatrix rows = parse_int_rows(rows_text);
    IntLattice l(static_cast<int>(rows.front().size()), rows);
    if (verb == "saturate") {
        IntLattice s = saturate(l);
        ordered_json j;
        j["saturation"] = lattice_rows_json(s.basis());
        j["index"] = saturation_index(l).get_str();
        j["primitive"] = is_primitive(l);
        return j;
    }
    // cc-map
    IntMatrix basis = connected_component_map(l.ambient(), rows);
    ordered_json j;
    j["basis"] = lattice_rows_json(basis);
    return j;
}

ordered_json cmd_amalg_decide(const std::string& file,
                              const std::string& inline_json) {
    ordered_json pj;
    if (!inline_json.empty()) {
        pj = ordered_json::parse(inline_json);
    } else {
        std::ifstream in(file);
        if (!in) fail(errc::invalid_argument, "cannot open problem file " + file);
        pj = ordered_json::parse(in);
    }
    AmalgProblem p = problem_from_json(pj);
    AmalgVerdict v = decide_amalgamation(p);
    ordered_json j;
    j["solvable"] = v.solvable;
    if (v.solvable)
        j["witness"] = subfield_json(*v.witness);
    else
        j["reason"] = v.reason;
    return j;
}

ordered_json cmd_amalg_base(int n, const std::string& h_text, int b) {
    std::vector<int> h;
    for (const auto& x : ordered_json::parse(h_text)) h.push_back(x.get<int>());
    CycloDiffSubfield x = make_subfield(n, h, b);
    BaseReport rep = is_amalgamation_base(x);
    ordered_json j;
    j["is_base"] = rep.is_base;
    j["scope"] = "ambient-relative";
    if (rep.counterexample) {
        j["counterexample"] = ordered_json::array(
            {subfield_json(rep.counterexample->first),
             subfield_json(rep.counterexample->second)});
    }
    return j;
}

ordered_json cmd_demo(const Common& c) {
    Ctx ctx = load_model(c.model);
    GroupVector target = c.precision.empty()
                             ? GroupVector::scalar(4)
                             : parse_group_vector(c.precision, ctx->rank());
    FixedFieldReport rep = demo_fixed_field(ctx, target);
    ordered_json j;
    j["pass"] = rep.pass;
    j["root"] = hs_str(rep.root);
    j["residual_v"] = gv_json(rep.residual_v);
    j["residue"] = ctx->residue().str(rep.residue);
    j["residue_is_i"] = rep.residue_is_i;
    j["sigma_moves_residue"] = rep.sigma_moves_residue;
    j["sigma_swaps_root"] = rep.sigma_swaps_root;
    j["notes"] = rep.notes;
    return j;
}

// ---- Batch mode ----------------------------------------------------------

int run_single(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

int run_batch(std::istream& in, std::ostream& out, std::ostream& err) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) lines.push_back(line);
    }
    struct Piece {
        std::string out, err;
        int code = 0;
    };
    auto eval = [](const std::string& text) {
        Piece p;
        std::ostringstream os, es;
        try {
            ordered_json j = ordered_json::parse(text);
            std::vector<std::string> argv;
            for (const auto& x : j.at("argv")) argv.push_back(x.get<std::string>());
            for (const auto& a : argv)
                if (a == "--batch") fail(errc::invalid_argument, "--batch cannot nest");
            p.code = run_single(argv, os, es);
        } catch (const Error& e) {
            ordered_json d;
            d["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
            os << d.dump() << "\n";
            p.code = e.code() == errc::parse_error ? 1 : 2;
        } catch (const std::exception& e) {
            ordered_json d;
            d["error"] = {{"code", "parse_error"}, {"message", e.what()}};
            os << d.dump() << "\n";
            p.code = 1;
        }
        p.out = os.str();
        p.err = es.str();
        return p;
    };
    std::vector<std::future<Piece>> futures;
    futures.reserve(lines.size());
    for (const auto& l : lines)
        futures.push_back(std::async(std::launch::async, eval, l));
    int worst = 0;
    for (auto& f : futures) {
        Piece p = f.get();
        out << p.out;
        err << p.err;
        worst = std::max(worst, p.code);
    }
    return worst;
}

// ---- Dispatch ------------------------------------------------------------

int run_single(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact valued difference field calculator"};
    app.fallthrough();

    Common common;
    app.add_option("--model", common.model, "PC, ISO, or a model JSON file");
    app.add_option("--precision", common.precision, "absolute precision / target");
    app.add_flag("--json", common.json, "emit JSON (always on)");

    std::string expr, start, point, a_text, b_text, z_text, rows_text;
    std::string problem_file, problem_inline, h_text;
    int amb_n = 0, amb_b = 1;
    long power = 1;

    std::function<ordered_json()> run;

    auto* hahn = app.add_subcommand("hahn", "series operations");
    hahn->fallthrough();
    for (const char* verb : {"eval", "v", "ac", "sigma", "inv"}) {
        auto* sub = hahn->add_subcommand(verb, "");
        sub->fallthrough();
        sub->add_option("expr", expr, "series expression")->required();
        if (std::string(verb) == "sigma")
            sub->add_option("--power", power, "automorphism power");
        std::string v = verb;
        sub->callback([&, v]() { run = [&, v]() { return cmd_hahn(v, common, expr, power); }; });
    }

    auto* trop = app.add_subcommand("trop", "tropical operations");
    trop->fallthrough();
    {
        auto* sub = trop->add_subcommand("roots", "univariate tropical roots");
        sub->fallthrough();
        sub->add_option("expr", expr, "Laurent polynomial")->required();
        sub->callback([&]() { run = [&]() { return cmd_trop_roots(common, expr); }; });
    }
    {
        auto* sub = trop->add_subcommand("initial", "initial form at a point");
        sub->fallthrough();
        sub->add_option("expr", expr, "Laurent polynomial")->required();
        sub->add_option("--point", point, "group vector or JSON list")->required();
        sub->callback([&]() { run = [&]() { return cmd_trop_initial(common, expr, point); }; });
    }
    {
        auto* sub = trop->add_subcommand("kapranov", "roots vs Newton cross-check");
        sub->fallthrough();
        sub->add_option("expr", expr, "univariate Laurent polynomial")->required();
        sub->callback([&]() { run = [&]() { return cmd_trop_kapranov(common, expr); }; });
    }

    auto* sig = app.add_subcommand("sigma", "difference polynomial operations");
    sig->fallthrough();
    for (const char* verb : {"hensel", "config", "complexity"}) {
        auto* sub = sig->add_subcommand(verb, "");
        sub->fallthrough();
        sub->add_option("expr", expr, "difference polynomial")->required();
        if (std::string(verb) != "complexity")
            sub->add_option("--start", start, "starting point series");
        std::string v = verb;
        sub->callback([&, v]() { run = [&, v]() { return cmd_sigma(v, common, expr, start); }; });
    }

    auto* zs = app.add_subcommand("zsigma", "group-ring linear systems");
    zs->fallthrough();
    for (const char* verb : {"coset", "check", "transfer"}) {
        auto* sub = zs->add_subcommand(verb, "");
        sub->fallthrough();
        sub->add_option("--A", a_text, "matrix over Z[s,s^-1]")->required();
        sub->add_option("--b", b_text, "target series vector")->required();
        if (std::string(verb) != "coset")
            sub->add_option("--z", z_text, "candidate solution vector")->required();
        std::string v = verb;
        sub->callback(
            [&, v]() { run = [&, v]() { return cmd_zsigma(v, common, a_text, b_text, z_text); }; });
    }

    auto* lat = app.add_subcommand("lattice", "integer lattice operations");
    lat->fallthrough();
    for (const char* verb : {"saturate", "cc-map"}) {
        auto* sub = lat->add_subcommand(verb, "");
        sub->fallthrough();
        sub->add_option("--rows", rows_text, "JSON integer matrix")->required();
        std::string v = verb;
        sub->callback([&, v]() { run = [&, v]() { return cmd_lattice(v, rows_text); }; });
    }

    auto* am = app.add_subcommand("amalg", "residue amalgamation");
    am->fallthrough();
    {
        auto* sub = am->add_subcommand("decide", "decide an amalgamation problem");
        sub->fallthrough();
        sub->add_option("file", problem_file, "problem JSON file");
        sub->add_option("--problem", problem_inline, "inline problem JSON");
        sub->callback([&]() {
            run = [&]() {
                if (problem_file.empty() && problem_inline.empty())
                    fail(errc::invalid_argument, "need a problem file or --problem");
                return cmd_amalg_decide(problem_file, problem_inline);
            };
        });
    }
    {
        auto* sub = am->add_subcommand("base", "amalgamation base check");
        sub->fallthrough();
        sub->add_option("--n", amb_n, "ambient conductor")->required();
        sub->add_option("--H", h_text, "subgroup as JSON list")->required();
        sub->add_option("--b", amb_b, "automorphism exponent")->required();
        sub->callback([&]() { run = [&]() { return cmd_amalg_base(amb_n, h_text, amb_b); }; });
    }

    auto* demo = app.add_subcommand("demo", "worked demonstrations");
    demo->fallthrough();
    {
        auto* sub = demo->add_subcommand("fixed-field", "fixed field is not closed");
        sub->fallthrough();
        sub->callback([&]() { run = [&]() { return cmd_demo(common); }; });
    }

    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        ordered_json d;
        d["error"] = {{"code", "usage"}, {"message", e.what()}};
        err << d.dump() << "\n";
        return 1;
    }

    try {
        if (!run) fail(errc::invalid_argument, "no command selected");
        ordered_json result = run();
        out << result.dump() << "\n";
        return 0;
    } catch (const Error& e) {
        ordered_json d;
        d["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
        out << d.dump() << "\n";
        return e.code() == errc::parse_error ? 1 : 2;
    } catch (const nlohmann::json::exception& e) {
        ordered_json d;
        d["error"] = {{"code", "parse_error"}, {"message", e.what()}};
        out << d.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json d;
        d["error"] = {{"code", "internal"}, {"message", e.what()}};
        out << d.dump() << "\n";
        return 2;
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    for (const auto& a : args) {
        if (a == "--batch") {
            if (args.size() != 1) {
                ordered_json d;
                d["error"] = {{"code", "usage"},
                              {"message", "--batch takes requests on stdin and no other arguments"}};
                err << d.dump() << "\n";
                return 1;
            }
            return run_batch(std::cin, out, err);
        }
    }
    return run_single(args, out, err);
}

} // namespace tropdiff

#include "commands.hpp"

#include "lfr/oracle.hpp"
#include "lfr/paramspace.hpp"
#include "lfr/renderlab.hpp"
#include "lfr/scan.hpp"
#include "lfr/textio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <sstream>

namespace lfr::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
    std::string format = "json";
    bool pretty = false;
    double tol = 1e-9;

    std::string map, normalForm;
    std::string lists, coeffs;
    int deltaN = -1;
    double precision = 1e-12;
    std::string a, b;
    int nMax = 10, maxIter = 0, k = 10, budget = 200, kappaMax = 0;
    bool check = false;

    std::string aRange = "-2,2,9", bRange = "-2,2,9";
    bool exact = false, serial = false;
    long maxDen = 64;

    std::string preset, segment, dir = "both", size, out;
    int iters = -1, points = -1, orbitOfQ = -1;
    bool annotate = false;
};

std::string jstr(const FieldElem& e) { return e.str(); }

json vec_json(const Vec3& v) { return json::array({jstr(v[0]), jstr(v[1]), jstr(v[2])}); }

json params_json(const ParamPair& p) {
    json j;
    j["kind"] = kind_name(p.kind());
    j["alpha"] = vec_json(p.alpha);
    j["beta"] = vec_json(p.beta);
    if (p.beta[2].is_zero()) {
        try {
            NormalFormParams nf = normalize_beta2_zero(p);
            j["normal_form"] = {{"a", jstr(nf.a)}, {"b", jstr(nf.b)}};
        } catch (const std::exception&) {
        }
    }
    return j;
}

json root_json(const RootInterval& r) {
    return {{"value", r.value}, {"lo", r.lo.get_d()}, {"hi", r.hi.get_d()},
            {"lo_exact", r.lo.get_str()}, {"hi_exact", r.hi.get_str()}};
}

json poly_json(const IntPoly& p) {
    json c = json::array();
    for (auto& s : p.coeff_strings()) c.push_back(s);
    return {{"text", p.str()}, {"coefficients", c}};
}

ParamPair params_from(const Options& o) {
    if (!o.normalForm.empty()) return parse_map("nf:" + o.normalForm, o.tol);
    if (o.map.empty()) throw ParseError("a map is required (--map or --normal-form)");
    return parse_map(o.map, o.tol);
}

std::string terminal_name(TerminalKind k) {
    switch (k) {
        case TerminalKind::HitIndeterminacy: return "hit";
        case TerminalKind::NonSingularTruncated: return "truncated";
        case TerminalKind::PendingCollapse: return "pending";
    }
    return "?";
}

json growth_json(const GrowthClass& g) {
    json j;
    j["class"] = g.name();
    if (g.kind == GrowthClass::Periodic) j["period"] = g.period;
    if (g.kind == GrowthClass::Polynomial) j["growth_degree"] = g.degree;
    if (g.kind == GrowthClass::Exponential) j["delta"] = root_json(g.root);
    j["charpoly"] = poly_json(g.poly);
    j["numerical"] = g.numerical;
    return j;
}

json cmd_classify(const Options& o) {
    ParamPair p = params_from(o);
    p.require_admissible();
    json j;
    j["params"] = params_json(p);
    j["triangle"] = classify_params(p).name();
    TrackOptions opt;
    opt.maxIter = o.maxIter;
    GrowthClass g = classify_growth(p, opt);
    j.update(growth_json(g));
    if (derive_geometry(p).nondegenerate()) j["orbit_structure"] = track_exceptional_orbits(p, opt).structure.str();
    return j;
}

json cmd_orbit(const Options& o) {
    ParamPair p = params_from(o);
    p.require_admissible();
    TrackOptions opt;
    opt.maxIter = o.maxIter;
    TrackResult t = track_exceptional_orbits(p, opt);
    json j;
    j["params"] = params_json(p);
    j["structure"] = t.structure.str();
    j["tau"] = t.structure.tau;
    json orbits = json::array();
    for (auto& r : t.orbits) {
        json pts = json::array();
        for (auto& P : r.points) pts.push_back(P.str());
        orbits.push_back({{"origin", r.origin},
                          {"length", r.points.size()},
                          {"singular", r.singular()},
                          {"terminal", {{"kind", terminal_name(r.terminal.kind)}, {"index", r.terminal.index}, {"note", r.terminal.note}}},
                          {"points", pts}});
    }
    j["orbits"] = orbits;
    return j;
}

json cmd_charpoly(const Options& o) {
    OrbitListSpec spec = parse_list_spec(o.lists);
    IntPoly chi = char_poly_from_lists(spec);
    json j;
    j["lists"] = list_spec_str(spec);
    j["charpoly"] = poly_json(chi);
    j["root_one_multiplicity"] = chi.root_multiplicity(1);
    auto per = periodicity_order(chi, 60);
    j["periodicity_order"] = per ? json(*per) : json(nullptr);
    return j;
}

json cmd_delta(const Options& o) {
    IntPoly p;
    if (!o.lists.empty()) p = char_poly_from_lists(parse_list_spec(o.lists));
    else if (!o.coeffs.empty()) {
        std::vector<mpz_class> c;
        for (auto& s : split(o.coeffs, ',')) {
            mpz_class z;
            if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("bad integer coefficient '" + s + "'");
            c.push_back(z);
        }
        p = IntPoly(c);
    } else if (o.deltaN >= 0) p = delta_n_poly(o.deltaN);
    else throw ParseError("delta needs --lists, --coeffs or --n");
    RootInterval r = largest_real_root(p, o.precision);
    json j;
    j["poly"] = poly_json(p);
    j["delta"] = root_json(r);
    return j;
}

json cmd_vn(const Options& o) {
    ParamPair p = (!o.a.empty() || !o.b.empty())
                      ? parse_map("nf:" + (o.a.empty() ? "0" : o.a) + "," + (o.b.empty() ? "0" : o.b), o.tol)
                      : params_from(o);
    p.require_admissible();
    json j;
    j["params"] = params_json(p);
    j["n_max"] = o.nMax;
    auto n = vn_membership(p, o.nMax);
    j["n"] = n ? json(*n) : json(nullptr);
    return j;
}

json cmd_catalog(const Options& o) {
    json entries = json::array();
    for (auto& e : vn_catalog()) {
        json reps = json::array();
        for (auto& r : e.reps) {
            json rj = {{"a", jstr(r.nf.a)}, {"b", jstr(r.nf.b)}, {"exact", r.exact}};
            if (!r.exact) {
                rj["printed"] = r.printed;
                rj["tolerance"] = kCatalogTol;
            }
            if (o.check) {
                auto n = vn_membership(r.nf, e.n + 2);
                rj["verified_n"] = n ? json(*n) : json(nullptr);
            }
            reps.push_back(rj);
        }
        json ej = {{"n", e.n}, {"representatives", reps}};
        if (e.definingPolys) ej["defining_polys"] = {{"a", e.definingPolys->first.str()}, {"b", e.definingPolys->second.str()}};
        entries.push_back(ej);
    }
    return {{"entries", entries}};
}

json fit_json(const GrowthFit& g) {
    json j = {{"name", growth_fit_name(g)}};
    if (auto* e = std::get_if<ExponentialEstimate>(&g)) j["rate"] = e->rate;
    if (auto* q = std::get_if<QuadraticFit>(&g)) {
        j["residual"] = q->residual;
        j["coeffs"] = q->coeffs;
        j["third_differences"] = q->thirdDifferences;
    }
    if (auto* b = std::get_if<Bounded>(&g)) j["period"] = b->period;
    return j;
}

json cmd_oracle(const Options& o) {
    ParamPair p = params_from(o);
    p.require_admissible();
    json j;
    j["params"] = params_json(p);
    if (p.kind() != Kind::Approx) {
        DegreeSequence d = degree_sequence(p, o.k, o.budget);
        j["degrees"] = d;
        json ratios = json::array();
        for (size_t i = 1; i < d.size(); ++i) ratios.push_back(double(d[i]) / d[i - 1]);
        j["ratios"] = ratios;
        try {
            j["fit"] = fit_json(growth_fit(d));
        } catch (const TooShort&) {
            j["fit"] = nullptr;
        }
    }
    if (o.kappaMax > 0) {
        auto n = identity_order(p, o.kappaMax);
        j["identity_order"] = n ? json(*n) : json(nullptr);
    }
    return j;
}

std::array<double, 3> range3(const std::string& s) {
    auto v = parse_doubles(s, 3);
    if (v[2] != std::floor(v[2]) || v[2] < 1) throw ParseError("step count must be a positive integer in '" + s + "'");
    return {v[0], v[1], v[2]};
}

json cmd_scan(const Options& o) {
    ScanGrid g;
    auto ar = range3(o.aRange), br = range3(o.bRange);
    g.aLo = ar[0], g.aHi = ar[1], g.aSteps = int(ar[2]);
    g.bLo = br[0], g.bHi = br[1], g.bSteps = int(br[2]);
    g.exact = o.exact;
    g.maxDen = o.maxDen;
    g.nMax = o.nMax;
    g.maxIter = o.maxIter;
    auto rows = o.serial ? scan_grid_serial(g) : scan_grid(g);
    json j;
    j["grid"] = {{"a", {g.aLo, g.aHi, g.aSteps}}, {"b", {g.bLo, g.bHi, g.bSteps}}, {"exact", g.exact},
                 {"max_den", g.maxDen}, {"n_max", g.nMax}};
    json rj = json::array();
    for (auto& r : rows)
        rj.push_back({{"index", r.index}, {"a", r.a}, {"b", r.b}, {"class", r.cls},
                      {"n", r.n ? json(*r.n) : json(nullptr)}, {"delta_lo", r.deltaLo}, {"delta_hi", r.deltaHi},
                      {"flags", r.flags}});
    j["rows"] = rj;
    return j;
}

json cmd_render(const Options& o) {
    RenderConfig c;
    if (o.preset == "fig01" || (o.preset.empty() && o.map == "fig01")) c = preset_fig01();
    else if (o.preset == "figA1" || (o.preset.empty() && o.map == "figA1")) c = preset_figA1();
    else if (!o.preset.empty()) throw ParseError("unknown preset '" + o.preset + "'");
    else {
        c.params = params_from(o);
        c.segment = {-3.0, -1.7, 2.5, 2.9};
    }
    if (c.params.kind() != Kind::Approx) {
        // rendering runs in floating point
        ParamPair q;
        for (int i = 0; i < 3; ++i) {
            q.alpha[i] = promote(c.params.alpha[i], Kind::Approx, o.tol);
            q.beta[i] = promote(c.params.beta[i], Kind::Approx, o.tol);
        }
        c.params = q;
    }
    c.params.require_admissible();
    if (!o.segment.empty()) {
        auto v = parse_doubles(o.segment, 4);
        c.segment = {v[0], v[1], v[2], v[3]};
    }
    if (o.iters >= 0) c.iterations = o.iters;
    if (o.points >= 0) c.pointsPerSegment = o.points;
    if (o.orbitOfQ >= 0) c.orbitOfQ = o.orbitOfQ;
    if (o.annotate) c.annotate = true;
    if (o.dir == "fwd") c.direction = Direction::Forward;
    else if (o.dir == "bwd") c.direction = Direction::Backward;
    else if (o.dir == "both") c.direction = Direction::Both;
    else throw ParseError("--dir must be fwd, bwd or both");
    if (!o.size.empty()) {
        auto x = o.size.find('x');
        if (x == std::string::npos) throw ParseError("--size must look like 512x512");
        auto wh = parse_doubles(o.size.substr(0, x) + "," + o.size.substr(x + 1), 2);
        c.width = int(wh[0]), c.height = int(wh[1]);
    }
    if (o.out.empty()) throw ParseError("render needs --out");
    RenderResult r = render_lamination(c, o.out);
    json ann = json::array();
    for (auto& a : r.annotations) ann.push_back({{"label", a.label}, {"disk", a.disk}, {"pixel", a.pixel}});
    return {{"params", params_json(c.params)}, {"out", o.out}, {"width", r.raster.width}, {"height", r.raster.height},
            {"iterations", c.iterations}, {"forward_points", r.forwardPoints}, {"backward_points", r.backwardPoints},
            {"annotations", ann}};
}

json cmd_verify(const Options& o) {
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all = all && pass;
    };
    if (!o.map.empty() || !o.normalForm.empty()) {
        ParamPair p = params_from(o);
        p.require_admissible();
        if (p.kind() != Kind::Approx) {
            auto F = HomogeneousMap::of_f(p), G = HomogeneousMap::of_f_inverse(p);
            add("f_after_f_inverse", compose_reduce(F, G).is_identity(), "symbolic composition");
            add("f_inverse_after_f", compose_reduce(G, F).is_identity(), "symbolic composition");
        }
        GrowthClass g = classify_growth(p);
        add("classify", true, g.name());
    } else {
        for (auto& e : vn_catalog())
            for (auto& r : e.reps) {
                auto n = vn_membership(r.nf, e.n + 2);
                add("catalog V" + std::to_string(e.n) + " " + r.nf.str(), n == e.n,
                    n ? "n=" + std::to_string(*n) : "no hit");
            }
        auto per = identity_order(ParamPair::normal_form(FieldElem(Rational(1)), FieldElem(Rational(0))), 8);
        add("lyness period", per == 5, per ? std::to_string(*per) : "none");
    }
    return {{"checks", checks}, {"all_pass", all}};
}

// ---- output

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell(v[i]);
        return s;
    }
    return v.dump();
}

void emit(const json& j, const Options& o, std::ostream& out) {
    if (o.format == "csv") {
        if (j.contains("rows")) {
            static const char* cols[] = {"a", "b", "class", "n", "delta_lo", "delta_hi", "flags"};
            out << "a,b,class,n,delta_lo,delta_hi,flags\n";
            for (auto& r : j["rows"]) {
                for (int c = 0; c < 7; ++c) out << (c ? "," : "") << csv_field(cell(r[cols[c]]));
                out << "\n";
            }
            return;
        }
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(j, "", kv);
        out << "key,value\n";
        for (auto& [k, v] : kv) out << csv_field(k) << "," << csv_field(v) << "\n";
        return;
    }
    if (o.pretty) {
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(j, "", kv);
        for (auto& [k, v] : kv)
            if (k != "schema_version") out << k << ": " << v << "\n";
        return;
    }
    out << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quadratic birational maps of the plane: orbits, degree growth, parameter strata, pictures", "lfr"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--pretty", o.pretty, "human readable key: value summary");
    app.add_option("--tol", o.tol, "tolerance for approximate scalars");

    auto addMap = [&](CLI::App* s) {
        s->add_option("--map", o.map, "nf:a,b | f64:b,c | ab:a0,a1,a2,b0,b1,b2 | fig01 | figA1");
        s->add_option("--normal-form", o.normalForm, "a,b for (x,y) -> (y,(a+y)/(b+x))");
    };
    std::map<std::string, std::function<json(const Options&)>> handlers;

    auto* classify = app.add_subcommand("classify", "triangle type, orbit lists and degree growth");
    addMap(classify);
    classify->add_option("--max-iter", o.maxIter, "orbit tracking cap (0 = default)");
    handlers["classify"] = cmd_classify;

    auto* orbit = app.add_subcommand("orbit", "orbits of the exceptional lines through the blow-ups");
    addMap(orbit);
    orbit->add_option("--max-iter", o.maxIter, "orbit tracking cap (0 = default)");
    handlers["orbit"] = cmd_orbit;

    auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial of an orbit list structure");
    charpoly->add_option("--lists", o.lists, "e.g. c:1,1,7 or o:1,1;c:3")->required();
    handlers["charpoly"] = cmd_charpoly;

    auto* delta = app.add_subcommand("delta", "certified largest real root");
    delta->add_option("--lists", o.lists, "orbit list structure");
    delta->add_option("--coeffs", o.coeffs, "integer coefficients, constant term first");
    delta->add_option("--n", o.deltaN, "largest root of x^(n+1)(x^3-x-1)+x^3+x^2-1");
    delta->add_option("--precision", o.precision, "interval width");
    handlers["delta"] = cmd_delta;

    auto* vn = app.add_subcommand("vn", "smallest n with f^n q = p");
    addMap(vn);
    vn->add_option("--a", o.a, "normal form a");
    vn->add_option("--b", o.b, "normal form b");
    vn->add_option("--n-max", o.nMax, "search depth");
    handlers["vn"] = cmd_vn;

    auto* catalog = app.add_subcommand("catalog", "the V_0..V_6 representatives");
    catalog->add_flag("--check", o.check, "re-run membership on every representative");
    handlers["catalog"] = cmd_catalog;

    auto* oracle = app.add_subcommand("oracle", "degree sequence of the iterates");
    addMap(oracle);
    oracle->add_option("--k", o.k, "number of iterates");
    oracle->add_option("--budget", o.budget, "largest degree allowed");
    oracle->add_option("--kappa-max", o.kappaMax, "also search for f^kappa = id up to this order");
    handlers["oracle"] = cmd_oracle;

    auto* scan = app.add_subcommand("scan", "grid scan of the normal-form plane");
    scan->add_option("--a", o.aRange, "lo,hi,steps");
    scan->add_option("--b", o.bRange, "lo,hi,steps");
    scan->add_flag("--exact", o.exact, "snap cells to rationals and compute exactly");
    scan->add_option("--max-den", o.maxDen, "denominator bound for --exact and confirmations");
    scan->add_option("--n-max", o.nMax, "V_n search depth");
    scan->add_option("--max-iter", o.maxIter, "orbit tracking cap (0 = default)");
    scan->add_flag("--serial", o.serial, "single threaded reference path");
    handlers["scan"] = cmd_scan;

    auto* render = app.add_subcommand("render", "draw forward and backward images of a segment");
    addMap(render);
    render->add_option("--preset", o.preset, "fig01 | figA1");
    render->add_option("--segment", o.segment, "x0,y0,x1,y1");
    render->add_option("--iters", o.iters, "iterations per direction");
    render->add_option("--points", o.points, "samples on the segment");
    render->add_option("--dir", o.dir, "fwd | bwd | both");
    render->add_option("--size", o.size, "WxH in pixels");
    render->add_flag("--annotate", o.annotate, "mark e1, e2, p0, pgamma, q, r");
    render->add_option("--orbit-of-q", o.orbitOfQ, "mark f^j q for j below this");
    render->add_option("--out", o.out, "output file, .png or .pgm");
    handlers["render"] = cmd_render;

    auto* verify = app.add_subcommand("verify", "self checks: catalog and Lyness period, or identities for one map");
    addMap(verify);
    handlers["verify"] = cmd_verify;

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitError;
    }
    std::string name = app.get_subcommands().front()->get_name();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = name;
    auto fail = [&](const std::string& kind, const std::string& msg, int rc) {
        err << "error: " << msg << "\n";
        if (o.format == "json") {
            j["error"] = {{"kind", kind}, {"message", msg}};
            emit(j, o, out);
        }
        return rc;
    };
    try {
        j.update(handlers.at(name)(o));
        emit(j, o, out);
        if (name == "verify" && !j["all_pass"].get<bool>()) return kExitError;
        return kExitOk;
    } catch (const InadmissibleParams& e) {
        return fail("inadmissible", e.what(), kExitInadmissible);
    } catch (const ParseError& e) {
        return fail("parse", e.what(), kExitError);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), kExitError);
    }
}

}  // namespace lfr::cli

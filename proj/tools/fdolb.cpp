// Batch CLI: load module / triple / gauge documents, run the checks of the
// owning layer and emit one JSON report on stdout.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fdolb/fdolb.hpp>

using namespace fdolb;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    std::string verb;
    Json body = Json::object();
    Json checks = Json::array();
    bool all_pass = true;

    void check(const std::string& name, bool ok, std::optional<Json> value = {}) {
        Json c{{"name", name}, {"status", ok ? "pass" : "fail"}};
        if (value) c["value"] = *value;
        checks.push_back(std::move(c));
        all_pass = all_pass && ok;
    }
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file: " + path);
    out << text;
}

CohesiveModule load_module(const Json& j) {
    try {
        return module_from_json(j);
    } catch (const std::exception& e) {
        throw InputError(std::string("bad module document: ") + e.what());
    }
}

Json cohomology_json(const ComplexReport& rep) {
    Json dims = Json::object(), h = Json::object();
    for (const auto& [k, d] : rep.dims) dims[std::to_string(k)] = d;
    for (const auto& [k, d] : rep.cohomology) h[std::to_string(k)] = d;
    return Json{{"dims", dims}, {"cohomology", h}};
}

int run_validate(const Json& in, Report& rep) {
    auto e = load_module(in);
    rep.body["config"] = to_json(e.cfg);
    rep.check("parses", true);
    rep.check("leibniz", check_leibniz(e));
    bool integrable = false;
    try {
        integrable = check_integrability(e);
    } catch (const LeibnizViolation&) {
    }
    rep.check("integrable", integrable);
    return 0;
}

int run_ext(const Json& in, Report& rep) {
    auto e = load_module(in.at("E"));
    auto f = load_module(in.at("F"));
    rep.body["config"] = to_json(e.cfg);
    auto dims = ext_dims(e, f);
    rep.body["ext"] = cohomology_json(dims);
    rep.check("computed", true);
    if (in.contains("expect")) {
        bool ok = true;
        for (const auto& [deg, want] : in.at("expect").items())
            ok = ok && dims.h(std::stoi(deg)) == want.get<std::size_t>();
        rep.check("matches_expected", ok);
    }
    return 0;
}

int run_cone(const Json& in, const std::string& output, Report& rep) {
    auto e = load_module(in.at("E"));
    auto f = load_module(in.at("F"));
    HomElement phi;
    try {
        phi = hom_from_json(in.at("phi"), e, f);
    } catch (const std::exception& ex) {
        throw InputError(std::string("bad hom document: ") + ex.what());
    }
    rep.body["config"] = to_json(e.cfg);
    bool closed = hom_differential(phi).is_zero();
    rep.check("phi_closed", closed);
    if (!closed) return 0;
    auto c = cone(phi);
    rep.check("cone_integrable", check_integrability(c));
    Json ranks = Json::object();
    for (const auto& [p, r] : c.ranks) ranks[std::to_string(p)] = r;
    rep.body["cone_ranks"] = ranks;
    if (!output.empty()) write_text(output, to_json(c).dump(2) + "\n");
    return 0;
}

TripleObject triple_from_json(const Json& in) {
    TripleObject t;
    t.sq.cfg = config_from_json(in.at("config"));
    for (const auto& s : in.at("s1")) t.sq.s1.insert(s.get<int>());
    for (const auto& s : in.at("s2")) t.sq.s2.insert(s.get<int>());
    t.m.cfg = t.sq.cfg;
    t.m.patches = t.sq.s1;
    t.n.cfg = t.sq.cfg;
    t.n.patches = t.sq.s2;
    for (const auto& [patch, doc] : in.at("M").items())
        t.m.parts.emplace(std::stoi(patch), load_module(doc));
    for (const auto& [patch, doc] : in.at("N").items())
        t.n.parts.emplace(std::stoi(patch), load_module(doc));
    for (int s : t.sq.s1)
        if (!t.m.parts.count(s)) throw InputError("missing M part for patch " + std::to_string(s));
    for (int s : t.sq.s2)
        if (!t.n.parts.count(s)) throw InputError("missing N part for patch " + std::to_string(s));
    t.phi.degree = 0;
    for (const auto& [patch, doc] : in.at("phi").items()) {
        int s = std::stoi(patch);
        if (!t.sq.overlap().count(s)) throw InputError("phi part outside the overlap");
        t.phi.parts.emplace(s, hom_from_json(doc, t.m.parts.at(s), t.n.parts.at(s)));
    }
    for (int s : t.sq.overlap())
        if (!t.phi.parts.count(s)) throw InputError("missing phi part for patch " + std::to_string(s));
    return t;
}

int run_glue(const Json& in, const std::string& output, Report& rep) {
    TripleObject t;
    try {
        t = triple_from_json(in);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& ex) {
        throw InputError(std::string("bad triple document: ") + ex.what());
    }
    rep.body["config"] = to_json(t.sq.cfg);
    bool equivalence = patch_is_homotopy_equivalence(t.phi);
    rep.check("phi_equivalence", equivalence);
    if (!equivalence) return 0;
    auto glued = glue(t);
    bool integrable = true;
    for (int s : glued.patches) integrable = integrable && check_integrability(glued.part(s));
    rep.check("glued_integrable", integrable);
    auto unit_ok = true;
    Json parts = Json::object();
    for (int s : glued.patches) {
        Json ranks = Json::object();
        for (const auto& [p, r] : glued.part(s).ranks) ranks[std::to_string(p)] = r;
        parts[std::to_string(s)] = ranks;
    }
    rep.body["glued_ranks"] = parts;
    auto counit = restrict_glue_counit(t, glued);
    auto d = triple_differential(counit);
    unit_ok = d.mu.is_zero() && d.nu.is_zero() && d.gamma.is_zero() &&
              triple_is_homotopy_equivalence(counit);
    rep.check("counit_equivalence", unit_ok);
    if (!output.empty()) {
        Json out = Json::object();
        for (int s : glued.patches) out[std::to_string(s)] = to_json(glued.part(s));
        write_text(output, out.dump(2) + "\n");
    }
    return 0;
}

int run_roundtrip(const Json& in, unsigned long seed, Report& rep) {
    PatchSquare sq;
    sq.cfg = config_from_json(in.at("config"));
    for (const auto& s : in.at("s1")) sq.s1.insert(s.get<int>());
    for (const auto& s : in.at("s2")) sq.s2.insert(s.get<int>());
    int trials = in.value("trials", 5);
    rep.body["config"] = to_json(sq.cfg);
    rep.body["seed"] = seed;
    Rng rng(seed);
    bool unit_ok = true, counit_ok = true;
    for (int trial = 0; trial < trials; ++trial) {
        auto s = random_patch_module(sq, rng);
        auto glued = glue(restrict(sq, s));
        auto unit = glue_restrict_unit(sq, s, glued);
        for (const auto& [p, h] : unit.parts)
            unit_ok = unit_ok && hom_differential(h).is_zero();
        unit_ok = unit_ok && patch_is_homotopy_equivalence(unit);

        auto t = random_triple(sq, rng);
        auto g2 = glue(t);
        auto counit = restrict_glue_counit(t, g2);
        auto d = triple_differential(counit);
        counit_ok = counit_ok && d.mu.is_zero() && d.nu.is_zero() && d.gamma.is_zero() &&
                    triple_is_homotopy_equivalence(counit);
    }
    rep.check("glue_restrict_unit", unit_ok, Json(trials));
    rep.check("restrict_glue_counit", counit_ok, Json(trials));
    return 0;
}

struct GaugeInput {
    DiscGrid grid;
    GridMatrixFn fn;
    SolverConfig cfg;
};

GaugeInput load_gauge_input(const Json& in, const char* key, int grid_override) {
    GaugeInput gi;
    try {
        double radius = in.at("grid").at("radius").get<double>();
        int resolution = in.at("grid").at("resolution").get<int>();
        if (grid_override > 0) resolution = grid_override;
        gi.grid = DiscGrid(radius, resolution);
        gi.fn.grid = gi.grid;
        gi.fn.d = in.at("d").get<int>();
        gi.fn.n = in.at("n").get<int>();
        gi.fn.r = in.at("r").get<int>();
        if (in.contains("tol")) gi.cfg.tol = in.at("tol").get<double>();
        if (in.contains("max_iter")) gi.cfg.max_iter = in.at("max_iter").get<int>();
        for (const auto& entry : in.at(key)) {
            MultiIndex I = multi_index_from_json(entry.at(0));
            if (int(I.exponents().size()) != gi.fn.n) throw InputError("multi-index length");
            double radius_in = 0;
            auto f = read_field(entry.at(1).get<std::string>(), &radius_in);
            if (f.resolution != gi.grid.resolution && grid_override <= 0)
                throw InputError("field resolution does not match the grid");
            if (f.resolution != gi.grid.resolution) {
                // grid override: resample the stored field onto the new grid
                GridField g(gi.grid.resolution, f.d);
                DiscGrid src(radius, f.resolution);
                for (int iy = 0; iy < gi.grid.resolution; ++iy)
                    for (int ix = 0; ix < gi.grid.resolution; ++ix) {
                        double x = gi.grid.center_x(ix), y = gi.grid.center_y(iy);
                        int sx = std::clamp(int((x + radius) / src.h), 0, f.resolution - 1);
                        int sy = std::clamp(int((y + radius) / src.h), 0, f.resolution - 1);
                        for (int a = 0; a < f.d; ++a)
                            for (int b = 0; b < f.d; ++b)
                                g.at(ix, iy, a, b) = f.at(sx, sy, a, b);
                    }
                gi.fn.orders.emplace(std::move(I), std::move(g));
            } else {
                gi.fn.orders.emplace(std::move(I), std::move(f));
            }
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("bad gauge document: ") + e.what());
    }
    return gi;
}

std::string index_tag(const MultiIndex& I) {
    std::string tag;
    for (auto e : I.exponents()) {
        if (!tag.empty()) tag += "-";
        tag += std::to_string(e);
    }
    return tag;
}

int run_gauge_solve(const Json& in, const std::string& output, double tol_override,
                    int grid_override, Report& rep) {
    auto gi = load_gauge_input(in, "rho", grid_override);
    double check_tol = tol_override > 0 ? tol_override : in.value("residual_tol", 1e-4);
    rep.body["grid"] = Json{{"radius", gi.grid.radius}, {"resolution", gi.grid.resolution}};
    CauchyOperator op(gi.grid);
    GaugeSolution sol;
    try {
        sol = solve_gauge(op, gi.fn, gi.cfg);
    } catch (const Error& e) {
        rep.check("solved", false, Json(e.what()));
        return 0;
    }
    rep.check("solved", true);
    Json orders = Json::array();
    auto residuals = verify_gauge(sol.g, gi.fn);
    bool contractive = true, accurate = true;
    for (const auto& s : sol.stats) {
        contractive = contractive && s.contraction <= 0.35;
        Json o{{"index", to_json(s.index)},
               {"iterations", s.iterations},
               {"contraction", s.contraction},
               {"residual", residuals.at(s.index)}};
        accurate = accurate && residuals.at(s.index) <= check_tol;
        orders.push_back(std::move(o));
    }
    rep.body["orders"] = orders;
    rep.check("contraction_bound", contractive);
    rep.check("residual_bound", accurate, Json(check_tol));
    if (!output.empty()) {
        Json files = Json::object();
        for (const auto& [I, g] : sol.g.orders) {
            std::string path = output + "_g" + index_tag(I) + ".bin";
            write_field(path, g, gi.grid.radius);
            files[index_tag(I)] = path;
        }
        rep.body["solution_files"] = files;
    }
    return 0;
}

int run_gauge_verify(const Json& in, double tol_override, Report& rep) {
    auto gg = load_gauge_input(in, "g", 0);
    auto gr = load_gauge_input(in, "rho", 0);
    double tol = tol_override > 0 ? tol_override : in.value("residual_tol", 1e-4);
    rep.body["grid"] = Json{{"radius", gg.grid.radius}, {"resolution", gg.grid.resolution}};
    auto residuals = verify_gauge(gg.fn, gr.fn);
    Json per = Json::array();
    bool ok = true;
    for (const auto& [I, res] : residuals) {
        per.push_back(Json::array({to_json(I), res}));
        ok = ok && res <= tol;
    }
    rep.body["residuals"] = per;
    rep.check("residual_bound", ok, Json(tol));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite Dolbeault models: validation and computation pipelines"};
    app.require_subcommand(1);

    std::string input, output;
    unsigned long seed = 20240801;
    double tol = -1.0;
    int grid = 0;
    bool with_timing = false;
    app.add_option("--input", input, "input document path");
    app.add_option("--output", output, "output artifact path or prefix");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--tol", tol, "residual tolerance override");
    app.add_option("--grid", grid, "grid resolution override");
    app.add_flag("--timing", with_timing, "include wall-clock timing in the report");

    for (const char* verb :
         {"validate", "ext", "cone", "glue", "roundtrip", "gauge-solve", "gauge-verify"})
        app.add_subcommand(verb)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    std::string verb = app.get_subcommands().front()->get_name();

    Report rep;
    rep.verb = verb;
    auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (input.empty()) throw InputError("--input is required");
        if (verb == "roundtrip") {
            run_roundtrip(load_json(input), seed, rep);
        } else if (verb == "validate") {
            run_validate(load_json(input), rep);
        } else if (verb == "ext") {
            run_ext(load_json(input), rep);
        } else if (verb == "cone") {
            run_cone(load_json(input), output, rep);
        } else if (verb == "glue") {
            run_glue(load_json(input), output, rep);
        } else if (verb == "gauge-solve") {
            run_gauge_solve(load_json(input), output, tol, grid, rep);
        } else if (verb == "gauge-verify") {
            run_gauge_verify(load_json(input), tol, rep);
        }
    } catch (const InputError& e) {
        Json err{{"verb", verb}, {"error", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        Json err{{"verb", verb}, {"error", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const Json::exception& e) {
        Json err{{"verb", verb}, {"error", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }

    Json out{{"verb", verb}, {"checks", rep.checks}};
    for (const auto& [k, v] : rep.body.items()) out[k] = v;
    if (with_timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        out["timing_ms"] = ms;
    }
    std::cout << out.dump(2) << "\n";
    code = rep.all_pass ? 0 : 1;
    return code;
}

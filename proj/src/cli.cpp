#include "tumorbif/cli.hpp"

#include "tumorbif/errors.hpp"
#include "tumorbif/io.hpp"
#include "tumorbif/modes.hpp"
#include "tumorbif/periodic_solver.hpp"
#include "tumorbif/spectral.hpp"
#include "tumorbif/verification.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tumorbif {

namespace {

using nlohmann::json;

struct Overrides {
    std::string config_path;
    std::string out_path;
    std::optional<double> tol;
    std::optional<long> seed;
    std::vector<double> j_list;
    std::optional<long> j_max;
    std::optional<long> j;
    std::optional<int> branch_index;
    std::optional<double> epsilon;
    std::optional<int> nx;
    std::optional<int> nt;
    std::optional<double> collision_tol;
};

RunConfig resolve(const Overrides& o)
{
    RunConfig c = load_config(o.config_path);
    json j = config_to_json(c);
    if (o.tol)
        j["tol"] = *o.tol;
    if (o.seed)
        j["seed"] = *o.seed;
    if (!o.j_list.empty())
        j["j_list"] = o.j_list;
    if (o.j_max)
        j["j_max"] = *o.j_max;
    if (o.j)
        j["j"] = *o.j;
    if (o.branch_index)
        j["branch_index"] = *o.branch_index;
    if (o.epsilon)
        j["epsilon"] = *o.epsilon;
    if (o.nx)
        j["nx"] = *o.nx;
    if (o.nt)
        j["nt"] = *o.nt;
    if (o.collision_tol)
        j["collision_tol"] = *o.collision_tol;
    // re-validate the merged settings through the same parser
    RunConfig merged = config_from_json(j);
    merged.params = c.params;
    return merged;
}

// JSON-only commands print to stdout and optionally to --out.
void emit_json(const json& doc, const Overrides& o, std::ostream& out)
{
    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!o.out_path.empty())
        write_text(o.out_path, text);
}

// CSV commands: CSV to --out (or stdout), JSON mirror next to it (or stderr).
void emit_csv(const std::string& csv, const json& mirror, const Overrides& o, std::ostream& out,
              std::ostream& err)
{
    const std::string text = mirror.dump(2) + "\n";
    if (o.out_path.empty()) {
        out << csv;
        err << text;
    } else {
        write_text(o.out_path, csv);
        write_text(o.out_path + ".json", text);
        out << text;
    }
}

PeriodicOrbit solve_orbit(const RunConfig& c)
{
    FindOptions fo;
    fo.tol = c.tol;
    fo.grid = c.grid;
    return find_periodic(c.params, fo);
}

int cmd_classify(const Overrides& o, std::ostream& out)
{
    const RunConfig c = resolve(o);
    const Regime r = classify(c.params);
    json doc{{"regime", to_string(r.kind)}, {"sigma_tilde", r.sigma_tilde}, {"phi_bar", r.phi_bar},
             {"boundary_flag", r.boundary}};
    emit_json(doc, o, out);
    return kExitOk;
}

int cmd_periodic(const Overrides& o, std::ostream& out, std::ostream& err)
{
    const RunConfig c = resolve(o);
    const PeriodicOrbit orbit = solve_orbit(c);
    std::string csv = "t,rho_star\n";
    for (int i = 0; i < orbit.cells(); ++i)
        csv += format_double(orbit.grid[i]) + "," + format_double(orbit.values[i]) + "\n";
    json mirror{{"rho0_star", orbit.rho0_star},
                {"residual", orbit.residual},
                {"rho_min", orbit.rho_min},
                {"rho_max", orbit.rho_max},
                {"bracket", {orbit.search_bracket.x_bar, orbit.search_bracket.x2}},
                {"tol", orbit.tol},
                {"grid", orbit.cells()},
                {"period", orbit.period()},
                {"map_evaluations", orbit.iterations}};
    emit_csv(csv, mirror, o, out, err);
    return kExitOk;
}

int cmd_gamma_table(const Overrides& o, std::ostream& out, std::ostream& err)
{
    const RunConfig c = resolve(o);
    const PeriodicOrbit orbit = solve_orbit(c);
    std::vector<double> js = c.j_list;
    if (js.empty())
        for (int j = 1; j <= 50; ++j)
            js.push_back(j);
    const auto rows = gamma_table(orbit, js);
    std::string csv = "j,k1,k2,gamma\n";
    for (const auto& r : rows)
        csv += format_double(r.j) + "," + format_double(r.k1) + "," + format_double(r.k2) + ","
            + format_double(r.gamma_j) + "\n";
    const MonotonicityScan scan = monotonicity_scan(orbit, static_cast<double>(c.j_max));
    json mirror{{"j0", scan.j0},
                {"turning_point", scan.turning_point ? json(*scan.turning_point) : json(nullptr)},
                {"sign_changes", scan.sign_changes},
                {"j_max", c.j_max},
                {"rho0_star", orbit.rho0_star},
                {"rows", rows.size()}};
    emit_csv(csv, mirror, o, out, err);
    return kExitOk;
}

json atlas_to_json(const BranchAtlas& a)
{
    json branches = json::array();
    for (const auto& b : a.branches)
        branches.push_back({{"kind", to_string(b.kind)}, {"n", b.n}, {"m", b.m}, {"source_j", b.source_j},
                            {"rule", b.rule}});
    return json{{"j", a.j},
                {"gamma", a.gamma_value},
                {"collision_partner", a.collision_partner ? json(*a.collision_partner) : json(nullptr)},
                {"collision_case", a.collision_case},
                {"branches", branches},
                {"beta", a.count_beta},
                {"count_case_a", a.count_case_a},
                {"warnings", a.warnings}};
}

long require_j(const RunConfig& c)
{
    if (!c.j)
        throw ConfigError("this command needs a mode index j (config key 'j' or --j)");
    if (*c.j < 1)
        throw ConfigError("j must be at least 1");
    return *c.j;
}

int cmd_branches(const Overrides& o, std::ostream& out)
{
    const RunConfig c = resolve(o);
    const long j = require_j(c);
    const PeriodicOrbit orbit = solve_orbit(c);
    const BranchAtlas atlas = branch_atlas(orbit, j, c.j_max, c.collision_tol);
    emit_json(atlas_to_json(atlas), o, out);
    return kExitOk;
}

int cmd_surface(const Overrides& o, std::ostream& out, std::ostream& err)
{
    const RunConfig c = resolve(o);
    const long j = require_j(c);
    const PeriodicOrbit orbit = solve_orbit(c);
    const BranchAtlas atlas = branch_atlas(orbit, j, c.j_max, c.collision_tol);
    const SurfaceSample s = sample_surface(orbit, atlas, c.branch_index, c.epsilon, c.nx, c.nt);
    std::string csv = "t,x1,x2,y\n";
    csv.reserve(csv.size() + s.heights.size() * 80);
    for (int k = 0; k < s.nt; ++k)
        for (int i1 = 0; i1 < s.nx; ++i1)
            for (int i2 = 0; i2 < s.nx; ++i2)
                csv += format_double(s.times[k]) + "," + format_double(s.x[i1]) + "," + format_double(s.x[i2])
                    + "," + format_double(s.height(k, i1, i2)) + "\n";
    json mirror{{"j", j},
                {"gamma", s.gamma},
                {"branch", {{"kind", to_string(s.branch.kind)}, {"n", s.branch.n}, {"m", s.branch.m}}},
                {"epsilon", s.epsilon},
                {"nx", s.nx},
                {"nt", s.nt},
                {"rho_min", orbit.rho_min}};
    emit_csv(csv, mirror, o, out, err);
    return kExitOk;
}

int cmd_validate(const Overrides& o, std::ostream& out)
{
    const RunConfig c = resolve(o);
    const auto reports = validation_suite(c.params, c.tol, c.seed);
    json doc = json::array();
    bool ok = true;
    for (const auto& r : reports) {
        doc.push_back({{"name", r.name},
                       {"primary_value", r.primary_value},
                       {"oracle_value", r.oracle_value},
                       {"abs_diff", r.abs_diff},
                       {"rel_diff", r.rel_diff},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed},
                       {"status", r.status}});
        ok = ok && r.passed;
    }
    emit_json(doc, o, out);
    return ok ? kExitOk : kExitInternal;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Periodic flat tumor dynamics and symmetry-breaking bifurcation tool", "tumorbif"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "model configuration (JSON)")->required();
        sub->add_option("--out", o.out_path, "output path");
        sub->add_option("--tol", o.tol, "integration tolerance in [1e-13, 1e-4]");
        sub->add_option("--seed", o.seed, "seed for randomized probes");
    };

    auto* classify_cmd = app.add_subcommand("classify", "extinction or persistent periodic regime");
    add_common(classify_cmd);
    auto* periodic_cmd = app.add_subcommand("periodic", "periodic flat solution on the orbit grid");
    add_common(periodic_cmd);
    auto* gamma_cmd = app.add_subcommand("gamma-table", "bifurcation values gamma_j");
    add_common(gamma_cmd);
    gamma_cmd->add_option("--j-list", o.j_list, "mode indices, comma separated")->delimiter(',');
    gamma_cmd->add_option("--j-max", o.j_max, "upper end of the monotonicity scan");
    auto* branches_cmd = app.add_subcommand("branches", "branch atlas at gamma_j");
    add_common(branches_cmd);
    branches_cmd->add_option("--j", o.j, "mode index");
    branches_cmd->add_option("--j-max", o.j_max, "largest index searched for collisions");
    branches_cmd->add_option("--collision-tol", o.collision_tol, "relative tolerance for equal gamma values");
    auto* surface_cmd = app.add_subcommand("surface", "first-order bifurcating surface");
    add_common(surface_cmd);
    surface_cmd->add_option("--j", o.j, "mode index");
    surface_cmd->add_option("--j-max", o.j_max, "largest index searched for collisions");
    surface_cmd->add_option("--branch-index", o.branch_index, "branch of the atlas to sample");
    surface_cmd->add_option("--epsilon", o.epsilon, "branch amplitude");
    surface_cmd->add_option("--nx", o.nx, "spatial grid points per direction");
    surface_cmd->add_option("--nt", o.nt, "time slices");
    auto* validate_cmd = app.add_subcommand("validate", "run the oracle suite");
    add_common(validate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (classify_cmd->parsed())
            return cmd_classify(o, out);
        if (periodic_cmd->parsed())
            return cmd_periodic(o, out, err);
        if (gamma_cmd->parsed())
            return cmd_gamma_table(o, out, err);
        if (branches_cmd->parsed())
            return cmd_branches(o, out);
        if (surface_cmd->parsed())
            return cmd_surface(o, out, err);
        if (validate_cmd->parsed())
            return cmd_validate(o, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const AmplitudeTooLarge& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PositivityViolation& e) {
        err << "positivity violation: " << e.what() << "\n";
        return kExitPositivity;
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const NotABifurcationValue& e) {
        err << "not a bifurcation value: " << e.what() << "\n";
        return kExitNotBifurcation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

} // namespace tumorbif

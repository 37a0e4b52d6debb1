#include "tumorbif/io.hpp"

#include "tumorbif/errors.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace tumorbif {

using nlohmann::json;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object())
        throw ConfigError(where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_number(const json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key))
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError("key '" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
}

long get_integer(const json& v, const std::string& what)
{
    if (v.is_number_integer())
        return v.get<long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == static_cast<double>(static_cast<long>(d)))
            return static_cast<long>(d);
    }
    throw ConfigError(what + " must be an integer");
}

} // namespace

json nutrient_to_json(const PeriodicNutrient& nut)
{
    json j;
    j["period"] = nut.period();
    if (nut.is_tabulated()) {
        json rows = json::array();
        for (const auto& [t, v] : nut.samples())
            rows.push_back({t, v});
        j["samples"] = rows;
    } else {
        j["mean"] = nut.mean();
        json rows = json::array();
        for (const auto& h : nut.harmonics())
            rows.push_back({h.k, h.cos_amp, h.sin_amp});
        j["harmonics"] = rows;
    }
    return j;
}

PeriodicNutrient nutrient_from_json(const json& j)
{
    const std::string where = "nutrient";
    reject_unknown(j, {"period", "mean", "harmonics", "samples"}, where);
    const double period = get_number(j, "period", where);
    const bool has_samples = j.contains("samples");
    const bool has_fourier = j.contains("mean") || j.contains("harmonics");
    if (has_samples == has_fourier)
        throw ConfigError("nutrient needs exactly one of {mean, harmonics} or samples");
    if (has_samples) {
        const json& rows = j.at("samples");
        if (!rows.is_array())
            throw ConfigError("nutrient samples must be an array of [t, value] pairs");
        std::vector<std::pair<double, double>> samples;
        for (const auto& r : rows) {
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
                throw ConfigError("nutrient samples must be [t, value] number pairs");
            samples.emplace_back(r[0].get<double>(), r[1].get<double>());
        }
        return PeriodicNutrient::tabulated(period, std::move(samples));
    }
    const double mean = get_number(j, "mean", where);
    std::vector<Harmonic> hs;
    if (j.contains("harmonics")) {
        const json& rows = j.at("harmonics");
        if (!rows.is_array())
            throw ConfigError("nutrient harmonics must be an array of [k, a_k, b_k]");
        for (const auto& r : rows) {
            if (!r.is_array() || r.size() != 3 || !r[1].is_number() || !r[2].is_number())
                throw ConfigError("nutrient harmonics must be [k, a_k, b_k] triples");
            hs.push_back({static_cast<int>(get_integer(r[0], "harmonic index")), r[1].get<double>(),
                          r[2].get<double>()});
        }
    }
    return PeriodicNutrient::fourier(period, mean, std::move(hs));
}

json params_to_json(const ModelParams& p)
{
    return json{{"mu", p.mu}, {"sigma_tilde", p.sigma_tilde}, {"gamma", p.gamma},
                {"nutrient", nutrient_to_json(p.nutrient)}};
}

ModelParams params_from_json(const json& j)
{
    const std::string where = "params";
    reject_unknown(j, {"mu", "sigma_tilde", "gamma", "nutrient"}, where);
    if (!j.contains("nutrient"))
        throw ConfigError("missing key 'nutrient' in params");
    ModelParams p;
    p.mu = get_number(j, "mu", where);
    p.sigma_tilde = get_number(j, "sigma_tilde", where);
    p.gamma = j.contains("gamma") ? get_number(j, "gamma", where) : 0.0;
    p.nutrient = nutrient_from_json(j.at("nutrient"));
    p.validate();
    return p;
}

json config_to_json(const RunConfig& c)
{
    json j;
    j["params"] = params_to_json(c.params);
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["grid"] = c.grid;
    j["j_list"] = c.j_list;
    j["j_max"] = c.j_max;
    if (c.j)
        j["j"] = *c.j;
    j["branch_index"] = c.branch_index;
    j["epsilon"] = c.epsilon;
    j["nx"] = c.nx;
    j["nt"] = c.nt;
    j["collision_tol"] = c.collision_tol;
    return j;
}

RunConfig config_from_json(const json& j)
{
    const std::string where = "config";
    reject_unknown(j, {"params", "tol", "seed", "grid", "j_list", "j_max", "j", "branch_index", "epsilon", "nx",
                       "nt", "collision_tol"},
                   where);
    if (!j.contains("params"))
        throw ConfigError("missing key 'params' in config");
    RunConfig c;
    c.params = params_from_json(j.at("params"));
    if (j.contains("tol"))
        c.tol = get_number(j, "tol", where);
    if (j.contains("seed")) {
        const long s = get_integer(j.at("seed"), "seed");
        if (s < 0)
            throw ConfigError("seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(s);
    }
    if (j.contains("grid"))
        c.grid = static_cast<int>(get_integer(j.at("grid"), "grid"));
    if (j.contains("j_list")) {
        if (!j.at("j_list").is_array())
            throw ConfigError("j_list must be an array of numbers");
        for (const auto& v : j.at("j_list")) {
            if (!v.is_number())
                throw ConfigError("j_list must be an array of numbers");
            c.j_list.push_back(v.get<double>());
        }
    }
    if (j.contains("j_max"))
        c.j_max = get_integer(j.at("j_max"), "j_max");
    if (j.contains("j"))
        c.j = get_integer(j.at("j"), "j");
    if (j.contains("branch_index"))
        c.branch_index = static_cast<int>(get_integer(j.at("branch_index"), "branch_index"));
    if (j.contains("epsilon"))
        c.epsilon = get_number(j, "epsilon", where);
    if (j.contains("nx"))
        c.nx = static_cast<int>(get_integer(j.at("nx"), "nx"));
    if (j.contains("nt"))
        c.nt = static_cast<int>(get_integer(j.at("nt"), "nt"));
    if (j.contains("collision_tol"))
        c.collision_tol = get_number(j, "collision_tol", where);

    if (!(c.tol >= 1e-13 && c.tol <= 1e-4))
        throw ConfigError("tol must lie in [1e-13, 1e-4]");
    if (c.grid < 8)
        throw ConfigError("grid must be at least 8");
    for (double v : c.j_list)
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("j_list entries must be positive");
    if (c.j_max < 1)
        throw ConfigError("j_max must be positive");
    if (c.nx < 8 || c.nt < 8)
        throw ConfigError("nx and nt must be at least 8");
    if (!(c.collision_tol > 0.0))
        throw ConfigError("collision_tol must be positive");
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open output file " + path);
    out << text;
    if (!out)
        throw Error("failed writing output file " + path);
}

} // namespace tumorbif

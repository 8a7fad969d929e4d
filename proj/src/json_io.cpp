#include "photonmol/json_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>

#include "photonmol/errors.hpp"

#ifndef PHOTONMOL_VERSION
#define PHOTONMOL_VERSION "unknown"
#endif

namespace photonmol {

using nlohmann::json;

namespace {

struct Field {
    const char* name;
    double SystemParams::*member;
};

constexpr Field kParamFields[] = {
    {"delta_a", &SystemParams::delta_a}, {"delta_b", &SystemParams::delta_b},
    {"coupling_j", &SystemParams::coupling_j}, {"u_a", &SystemParams::u_a},
    {"u_b", &SystemParams::u_b},         {"eps_a", &SystemParams::eps_a},
    {"eps_b", &SystemParams::eps_b},     {"phi_a", &SystemParams::phi_a},
    {"phi_b", &SystemParams::phi_b},     {"kappa_a", &SystemParams::kappa_a},
    {"kappa_b", &SystemParams::kappa_b},
};

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object())
        throw ConfigError(std::string(what) + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key))
            throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void to_json(json& j, const SystemParams& p) {
    j = json::object();
    for (const auto& f : kParamFields)
        j[f.name] = p.*f.member;
}

void from_json(const json& j, SystemParams& p) {
    std::set<std::string> allowed;
    for (const auto& f : kParamFields)
        allowed.insert(f.name);
    reject_unknown(j, allowed, "SystemParams");
    for (const auto& f : kParamFields)
        if (j.contains(f.name)) {
            if (!j[f.name].is_number())
                throw ConfigError(std::string("SystemParams: '") + f.name + "' must be a number");
            p.*f.member = j[f.name].get<double>();
        }
}

void to_json(json& j, const Axis& axis) {
    j = json{{"parameter", axis.parameter}};
    if (!axis.values.empty()) {
        j["values"] = axis.values;
        return;
    }
    j["min"] = axis.min;
    j["max"] = axis.max;
    j["count"] = axis.count;
    j["scale"] = axis.scale == AxisScale::Log ? "log" : "linear";
}

void from_json(const json& j, Axis& axis) {
    reject_unknown(j, {"parameter", "min", "max", "count", "scale", "values"}, "axis");
    try {
        axis.parameter = j.at("parameter").get<std::string>();
        if (j.contains("values")) {
            axis.values = j.at("values").get<std::vector<double>>();
            axis.count = static_cast<int>(axis.values.size());
            axis.min = axis.values.empty() ? 0.0 : axis.values.front();
            axis.max = axis.values.empty() ? 0.0 : axis.values.back();
        } else {
            axis.min = j.at("min").get<double>();
            axis.max = j.at("max").get<double>();
            axis.count = j.at("count").get<int>();
        }
        const std::string scale = j.value("scale", std::string("linear"));
        if (scale == "linear")
            axis.scale = AxisScale::Linear;
        else if (scale == "log")
            axis.scale = AxisScale::Log;
        else
            throw ConfigError("axis: scale must be 'linear' or 'log', got '" + scale + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("axis: ") + e.what());
    }
}

void to_json(json& j, const SweepConfig& c) {
    j = json{{"base", c.base},
             {"axis1", c.axis1},
             {"axis2", c.axis2},
             {"solver", std::string(to_string(c.solver))},
             {"n_max_a", c.spec.n_max_a()},
             {"n_max_b", c.spec.n_max_b()}};
    json constraints = json::array();
    for (const auto& k : c.constraints)
        constraints.push_back(k.text);
    j["constraints"] = constraints;
}

void from_json(const json& j, SweepConfig& c) {
    reject_unknown(j, {"base", "axis1", "axis2", "solver", "constraints", "n_max", "n_max_a", "n_max_b"},
                   "sweep config");
    try {
        c.base = j.value("base", json::object()).get<SystemParams>();
        c.axis1 = j.at("axis1").get<Axis>();
        c.axis2 = j.at("axis2").get<Axis>();
        c.solver = parse_solver(j.value("solver", std::string("MasterEquation")));
        c.constraints.clear();
        for (const auto& text : j.value("constraints", json::array()))
            c.constraints.push_back(Constraint::parse(text.get<std::string>()));
        const int n_max = j.value("n_max", 3);
        c.spec = HilbertSpec(j.value("n_max_a", n_max), j.value("n_max_b", n_max));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep config: ") + e.what());
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("sweep config: ") + e.what());
    }
    c.validate();
}

void to_json(json& j, const OptimalPoint& p) {
    j = json{{"delta_opt", p.delta_opt},
             {"u_opt", p.u_opt},
             {"g2_min", optional_number(p.g2_min)},
             {"g2_min_undefined", !p.g2_min.has_value()},
             {"method", std::string(to_string(p.method))},
             {"warnings", p.warnings}};
}

void to_json(json& j, const ResultRow& r) {
    j = json{{"g2_a", optional_number(r.g2_a)},
             {"g2_a_undefined", !r.g2_a.has_value()},
             {"mean_n_a", r.mean_n_a},
             {"g2_b", optional_number(r.g2_b)},
             {"g2_b_undefined", !r.g2_b.has_value()},
             {"mean_n_b", r.mean_n_b},
             {"solver", std::string(to_string(r.solver))}};
    if (!r.axis_values.empty())
        j["axis_values"] = r.axis_values;
    if (!r.error.empty())
        j["error"] = r.error;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    return read_json_file(path).get<SweepConfig>();
}

SystemParams load_params(const std::filesystem::path& path) {
    return read_json_file(path).get<SystemParams>();
}

std::string code_version() { return PHOTONMOL_VERSION; }

json dataset_metadata(const json& config, std::size_t rows) {
    return json{{"config", config}, {"code_version", code_version()}, {"timestamp", utc_timestamp()},
                {"rows", rows}};
}

}  // namespace photonmol

#include "photonmol/sweep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>

#include "photonmol/amplitude.hpp"
#include "photonmol/errors.hpp"
#include "photonmol/lindblad.hpp"
#include "photonmol/parallel.hpp"

namespace photonmol {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string_view::npos ? std::string{} : std::string(s.substr(b, e - b + 1));
}

double eta_inverse_of(const SystemParams& p) {
    if (p.eps_a == 0.0)
        throw ParameterError("eta undefined: eps_a is zero");
    return p.eps_b / p.eps_a;
}

struct RuleSpec {
    std::string_view name;
    std::array<std::string_view, 3> args;
    int arg_count;
};

constexpr std::array<RuleSpec, 4> kRules{{
    {"single_drive_delta", {"kappa", "", ""}, 1},
    {"single_drive_u", {"kappa", "j", ""}, 2},
    {"dual_drive_delta", {"j", "eta", ""}, 2},
    {"dual_drive_u", {"kappa", "j", "eta"}, 3},
}};

const std::set<std::string, std::less<>> kTargets{"delta", "delta_a", "delta_b", "u", "u_a", "u_b"};

}  // namespace

std::string_view to_string(Solver solver) {
    switch (solver) {
        case Solver::MasterEquation: return "MasterEquation";
        case Solver::Hierarchy: return "Hierarchy";
        case Solver::FullTruncated: return "FullTruncated";
    }
    return "?";
}

Solver parse_solver(std::string_view name) {
    std::string lower;
    for (char c : name)
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "masterequation" || lower == "master")
        return Solver::MasterEquation;
    if (lower == "hierarchy")
        return Solver::Hierarchy;
    if (lower == "fulltruncated" || lower == "full")
        return Solver::FullTruncated;
    throw ConfigError("unknown solver '" + std::string(name) +
                      "' (expected MasterEquation, Hierarchy or FullTruncated)");
}

std::vector<double> Axis::points() const {
    if (!values.empty())
        return values;
    std::vector<double> pts(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        pts[i] = scale == AxisScale::Linear ? min + t * (max - min)
                                            : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    }
    // pin the end points against rounding
    if (count >= 2) {
        pts.front() = min;
        pts.back() = max;
    }
    return pts;
}

void Axis::validate() const {
    const auto& names = axis_parameter_names();
    if (std::find(names.begin(), names.end(), parameter) == names.end())
        throw ConfigError("unknown axis parameter '" + parameter + "'");
    if (!values.empty()) {
        if (values.size() < 2)
            throw ConfigError("axis '" + parameter + "': an explicit value list needs at least 2 entries");
        for (double v : values)
            if (!std::isfinite(v))
                throw ConfigError("axis '" + parameter + "': non-finite value");
        return;
    }
    if (count < 2)
        throw ConfigError("axis '" + parameter + "': count must be at least 2");
    if (!std::isfinite(min) || !std::isfinite(max))
        throw ConfigError("axis '" + parameter + "': non-finite range");
    if (scale == AxisScale::Log && !(min > 0.0 && max > 0.0))
        throw ConfigError("axis '" + parameter + "': log scale needs a positive range");
}

const std::vector<std::string>& axis_parameter_names() {
    static const std::vector<std::string> names{
        "delta_a", "delta_b", "coupling_j", "u_a",   "u_b", "eps_a", "eps_b",   "phi_a",
        "phi_b",   "kappa_a", "kappa_b",    "delta", "u",   "kappa", "j",       "eta",
        "eta_inv", "phi"};
    return names;
}

void apply_parameter(SystemParams& p, std::string_view name, double value) {
    if (name == "delta_a") p.delta_a = value;
    else if (name == "delta_b") p.delta_b = value;
    else if (name == "coupling_j" || name == "j") p.coupling_j = value;
    else if (name == "u_a") p.u_a = value;
    else if (name == "u_b") p.u_b = value;
    else if (name == "eps_a") p.eps_a = value;
    else if (name == "eps_b") p.eps_b = value;
    else if (name == "phi_a") p.phi_a = value;
    else if (name == "phi_b") p.phi_b = value;
    else if (name == "kappa_a") p.kappa_a = value;
    else if (name == "kappa_b") p.kappa_b = value;
    else if (name == "delta") p.delta_a = p.delta_b = value;
    else if (name == "u") p.u_a = p.u_b = value;
    else if (name == "kappa") p.kappa_a = p.kappa_b = value;
    else if (name == "eta") {
        if (!(value > 0.0))
            throw ParameterError("eta must be positive");
        p.eps_b = std::isinf(value) ? 0.0 : p.eps_a / value;
    } else if (name == "eta_inv") {
        if (value < 0.0)
            throw ParameterError("eta_inv must be non-negative");
        p.eps_b = p.eps_a * value;
    } else if (name == "phi") p.phi_a = p.phi_b + value;
    else
        throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

Constraint Constraint::parse(std::string_view text) {
    const auto assign = text.find(":=");
    if (assign == std::string_view::npos)
        throw ConfigError("constraint '" + std::string(text) + "': expected 'target := rule(args)'");
    Constraint c;
    c.text = trim(text);
    c.target = trim(text.substr(0, assign));
    if (!kTargets.contains(c.target))
        throw ConfigError("constraint '" + c.text + "': unknown target '" + c.target + "'");

    const std::string rhs = trim(text.substr(assign + 2));
    const auto open = rhs.find('(');
    const auto close = rhs.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != rhs.size())
        throw ConfigError("constraint '" + c.text + "': expected rule(args)");
    const std::string name = trim(std::string_view(rhs).substr(0, open));

    std::set<std::string> args;
    std::string_view arg_text = std::string_view(rhs).substr(open + 1, close - open - 1);
    while (!arg_text.empty()) {
        const auto comma = arg_text.find(',');
        const std::string arg = trim(arg_text.substr(0, comma));
        if (!arg.empty())
            args.insert(arg);
        if (comma == std::string_view::npos)
            break;
        arg_text.remove_prefix(comma + 1);
    }

    for (const auto& rule : kRules) {
        if (name != rule.name)
            continue;
        std::set<std::string> expected;
        for (int i = 0; i < rule.arg_count; ++i)
            expected.emplace(rule.args[i]);
        if (args != expected) {
            std::string want;
            for (int i = 0; i < rule.arg_count; ++i)
                want += (i ? ", " : "") + std::string(rule.args[i]);
            throw ConfigError("constraint '" + c.text + "': rule " + name + " takes (" + want + ")");
        }
        c.rule = std::string(rule.name);
        return c;
    }
    std::string known;
    for (const auto& rule : kRules)
        known += (known.empty() ? "" : ", ") + std::string(rule.name);
    throw ConfigError("constraint '" + c.text + "': unknown rule '" + name + "' (valid: " + known + ")");
}

double Constraint::evaluate(const SystemParams& p) const {
    const double kappa = p.kappa_a;
    const double j = p.coupling_j;
    const double sqrt3 = std::numbers::sqrt3;
    if (rule == "single_drive_delta")
        return kappa / (2.0 * sqrt3);
    if (rule == "single_drive_u") {
        if (!(j > 0.0))
            throw ParameterError("constraint '" + text + "': needs j > 0");
        return 2.0 * kappa * kappa * kappa / (3.0 * sqrt3 * j * j);
    }
    const double eta_inv = eta_inverse_of(p);
    if (rule == "dual_drive_delta")
        return j * eta_inv;
    if (rule == "dual_drive_u") {
        if (!(j > 0.0))
            throw ParameterError("constraint '" + text + "': needs j > 0");
        if (!(eta_inv < 1.0))
            throw ParameterError("constraint '" + text + "': needs eta > 1");
        return kappa * kappa / (2.0 * j) * eta_inv / (1.0 - eta_inv * eta_inv);
    }
    throw ConfigError("constraint '" + text + "': unknown rule '" + rule + "'");
}

void Constraint::apply(SystemParams& p) const { apply_parameter(p, target, evaluate(p)); }

void SweepConfig::validate() const {
    axis1.validate();
    axis2.validate();
}

SystemParams SweepConfig::params_at(double v1, double v2) const {
    SystemParams p = base;
    apply_parameter(p, axis1.parameter, v1);
    apply_parameter(p, axis2.parameter, v2);
    for (const auto& c : constraints)
        c.apply(p);
    return p;
}

namespace {

std::string with_point(Solver solver, const SystemParams& params, std::string_view what) {
    std::string msg = std::string(to_string(solver)) + ": " + std::string(what);
    const std::string point = params.describe();
    if (msg.find(point) == std::string::npos)
        msg += " at " + point;
    return msg;
}

}  // namespace

ResultRow run_point(const SystemParams& params, Solver solver, const HilbertSpec& spec) {
    ResultRow row;
    row.solver = solver;
    params.validate();
    try {
        switch (solver) {
            case Solver::MasterEquation: {
                const Observables obs = steady_state_observables(params, spec);
                row.g2_a = obs.g2_a;
                row.mean_n_a = obs.mean_n_a;
                row.g2_b = obs.g2_b;
                row.mean_n_b = obs.mean_n_b;
                break;
            }
            case Solver::Hierarchy:
            case Solver::FullTruncated: {
                const AmplitudeSet amps = solver == Solver::Hierarchy ? hierarchy_amplitudes(params)
                                                                      : full_truncated_steady(params);
                row.g2_a = g2_approx(amps);
                row.mean_n_a = mean_photon_approx(amps);
                const AmplitudeSet swapped = amps.swapped_modes();
                row.g2_b = g2_approx(swapped);
                row.mean_n_b = mean_photon_approx(swapped);
                break;
            }
        }
    } catch (const SolverError& e) {
        throw SolverError(with_point(solver, params, e.what()));
    } catch (const ParameterError& e) {
        throw ParameterError(with_point(solver, params, e.what()));
    }
    return row;
}

SweepResult run_sweep(const SweepConfig& config, int threads) {
    config.validate();
    const auto p1 = config.axis1.points();
    const auto p2 = config.axis2.points();
    SweepResult result{config, std::vector<ResultRow>(p1.size() * p2.size())};

    parallel_for(result.rows.size(), threads, [&](std::size_t index) {
        const double v1 = p1[index / p2.size()];
        const double v2 = p2[index % p2.size()];
        ResultRow row;
        try {
            row = run_point(config.params_at(v1, v2), config.solver, config.spec);
        } catch (const Error& e) {
            row = ResultRow{};
            row.solver = config.solver;
            row.error = e.what();
        }
        row.axis_values = {v1, v2};
        result.rows[index] = std::move(row);
    });
    return result;
}

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& out, const SweepResult& result) {
    const auto& cfg = result.config;
    out << csv_escape(cfg.axis1.parameter) << ',' << csv_escape(cfg.axis2.parameter)
        << ",g2_a,g2_a_undefined,mean_n_a,g2_b,g2_b_undefined,mean_n_b,solver,error\r\n";
    auto optional_cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
    for (const auto& row : result.rows) {
        for (double v : row.axis_values)
            out << format_number(v) << ',';
        if (row.error.empty()) {
            out << optional_cell(row.g2_a) << ',' << (row.g2_a ? "false" : "true") << ','
                << format_number(row.mean_n_a) << ',' << optional_cell(row.g2_b) << ','
                << (row.g2_b ? "false" : "true") << ',' << format_number(row.mean_n_b) << ',';
        } else {
            out << ",,,,,,";
        }
        out << to_string(row.solver) << ',' << csv_escape(row.error) << "\r\n";
    }
}

}  // namespace photonmol

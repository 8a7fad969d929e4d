#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photonmol/fock.hpp"
#include "photonmol/params.hpp"

namespace photonmol {

enum class Solver { MasterEquation, Hierarchy, FullTruncated };

std::string_view to_string(Solver solver);
/// Accepts the canonical names and the short forms "master", "hierarchy", "full".
Solver parse_solver(std::string_view name);

enum class AxisScale { Linear, Log };

/// One sweep axis. Either an evenly spaced range (linear or logarithmic) or, when
/// `values` is non-empty, that explicit list.
struct Axis {
    std::string parameter;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    AxisScale scale = AxisScale::Linear;
    std::vector<double> values;

    std::vector<double> points() const;
    void validate() const;
};

/// Names accepted as axis parameters: every SystemParams field plus the derived
/// quantities delta, u, kappa, j, eta, eta_inv, phi.
const std::vector<std::string>& axis_parameter_names();

/// Set one (possibly derived) parameter. eta and eta_inv adjust eps_b relative to
/// eps_a; phi sets phi_a = phi_b + value; delta, u and kappa set both modes.
void apply_parameter(SystemParams& params, std::string_view name, double value);

/// A derived-parameter rule of the form "target := rule(args)", e.g.
/// "u_b := dual_drive_u(kappa, j, eta)". Targets: delta, delta_a, delta_b, u, u_a, u_b.
/// Rules:
///   single_drive_delta(kappa)       = kappa / (2 sqrt 3)
///   single_drive_u(kappa, j)        = 2 kappa^3 / (3 sqrt 3 j^2)
///   dual_drive_delta(j, eta)        = j / eta
///   dual_drive_u(kappa, j, eta)     = kappa^2 eta / (2 j (eta^2 - 1))
struct Constraint {
    std::string target;
    std::string rule;
    std::string text;

    static Constraint parse(std::string_view text);
    double evaluate(const SystemParams& params) const;
    void apply(SystemParams& params) const;
};

struct SweepConfig {
    SystemParams base;
    Axis axis1;
    Axis axis2;
    Solver solver = Solver::MasterEquation;
    std::vector<Constraint> constraints;
    HilbertSpec spec;  ///< truncation for the master-equation solver

    void validate() const;
    /// Parameters at grid point (v1, v2): axes applied in order, then constraints.
    SystemParams params_at(double v1, double v2) const;
};

/// One evaluated parameter point. g2 values are empty when undefined; a non-empty
/// `error` means the solver failed and the numeric fields are meaningless.
struct ResultRow {
    std::vector<double> axis_values;
    std::optional<double> g2_a;
    double mean_n_a = 0.0;
    std::optional<double> g2_b;
    double mean_n_b = 0.0;
    Solver solver = Solver::MasterEquation;
    std::string error;
};

/// Evaluate one point. Invalid parameters throw ParameterError; solver failures are
/// rethrown as SolverError. Both messages name the point.
ResultRow run_point(const SystemParams& params, Solver solver, const HilbertSpec& spec = {});

struct SweepResult {
    SweepConfig config;
    std::vector<ResultRow> rows;  ///< axis1 outer, axis2 inner
};

/// Evaluate every grid point; failures are recorded in the row and the sweep goes on.
SweepResult run_sweep(const SweepConfig& config, int threads = 1);

/// RFC-4180 CSV with a header row; numbers with 17 significant digits, undefined g2
/// as an empty cell plus a true flag column.
void write_csv(std::ostream& out, const SweepResult& result);

/// Format a double with 17 significant digits.
std::string format_number(double value);

/// Quote a CSV field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

}  // namespace photonmol

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "photonmol/amplitude.hpp"
#include "photonmol/params.hpp"

namespace photonmol {

enum class OptimumMethod { SingleDriveAsymptotic, DualDriveAsymptotic, DualDriveExact, Numeric };

enum class Branch { Plus, Minus };

/// Objective used by numeric_optimum.
enum class ObjectiveSolver { Hierarchy, FullTruncated, MasterEquation };

std::string_view to_string(OptimumMethod method);
std::string_view to_string(ObjectiveSolver solver);

/// Optimal (detuning, Kerr strength) pair for antibunching in mode A.
struct OptimalPoint {
    double delta_opt = 0.0;
    double u_opt = 0.0;
    std::optional<double> g2_min;
    OptimumMethod method = OptimumMethod::Numeric;
    std::vector<std::string> warnings;
};

/// Point (phi*, 1/eta*) at which the one-photon amplitude of mode A vanishes.
struct BunchingCondition {
    double phi_star = 0.0;
    double eta_inv_star = 0.0;
};

/// Single-drive optimum, valid for J >> kappa:
///   delta = +-kappa/(2 sqrt 3),  U = +-2 kappa^3 / (3 sqrt 3 J^2).
OptimalPoint single_drive_optimum(double kappa, double j, Branch branch = Branch::Plus);

/// Dual-drive optimum at phi = 0 for J >> kappa:
///   delta = J/eta,  U = (kappa^2 / 2J) eta/(eta^2 - 1).
/// eta may be +infinity (single drive limit of these formulas).
OptimalPoint dual_drive_optimum_asymptotic(double kappa, double j, double eta);

/// Exact phi = 0 optimum: simultaneous root of the real and imaginary parts of the
/// C20 = 0 solvability determinant, nearest to the asymptotic seed.
OptimalPoint dual_drive_optimum_exact_phi0(double kappa, double j, double eta);

/// The two real polynomial conditions for C20 = 0 at phi = 0 evaluated at (delta, u).
struct Phi0Residuals {
    double real_part = 0.0;      ///< first condition, absolute
    double imag_part = 0.0;      ///< second condition, absolute
    double real_relative = 0.0;  ///< first condition / sum of its term magnitudes
    double imag_relative = 0.0;
};
Phi0Residuals phi0_condition_residuals(double kappa, double j, double eta, double delta, double u);

struct NumericOptimumOptions {
    ObjectiveSolver solver = ObjectiveSolver::FullTruncated;
    double eps_a = 0.01;
    int grid_delta = 64;
    int grid_u = 64;
    double delta_min = 0.05;
    double delta_max_over_j = 1.2;
    double u_min = 1e-4;
    double u_max = 1.0;
    double rel_tolerance = 1e-4;
    int master_n_max = 3;
};

/// Minimize g2 of mode A over (delta, U) with eps_a fixed, eps_b = eps_a/eta and
/// relative phase phi: coarse grid (linear in delta, log in U) followed by Nelder-Mead
/// refinement in (delta, ln U). eta = +infinity means mode B is undriven.
OptimalPoint numeric_optimum(double kappa, double j, double eta, double phi,
                             const NumericOptimumOptions& options = {});

/// The objective of numeric_optimum at one point (U applied to both modes).
std::optional<double> antibunching_objective(double kappa, double j, double eta, double phi,
                                             double delta, double u,
                                             const NumericOptimumOptions& options = {});

/// (phi*, 1/eta*) solving J = eta e^{i phi}(delta - i kappa/2).
BunchingCondition c10_zero_condition(double kappa, double j, double delta);

/// phi = arctan(eta kappa / 2J); meaningful while eta kappa / 2J << 1.
double bunching_phase_curve(double kappa, double j, double eta);
bool bunching_phase_curve_valid(double kappa, double j, double eta);

}  // namespace photonmol

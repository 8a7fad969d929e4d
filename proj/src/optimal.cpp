#include "photonmol/optimal.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "photonmol/errors.hpp"
#include "photonmol/lindblad.hpp"
#include "photonmol/nelder_mead.hpp"

namespace photonmol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double value, const char* name, const char* who) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ParameterError(std::string(who) + ": " + name + " must be positive and finite");
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// g2 from the hierarchy at phi = 0 (eps scale is irrelevant there).
std::optional<double> hierarchy_g2_phi0(double kappa, double j, double eta, double delta, double u) {
    SymmetricSetting s{kappa, j, delta, u, 0.01, std::isinf(eta) ? 0.0 : 1.0 / eta, 0.0};
    try {
        return g2_approx(hierarchy_amplitudes(s.to_params()));
    } catch (const SolverError&) {
        return std::nullopt;
    }
}

// The two phi = 0 conditions (both linear in U), optionally with the sum of the
// magnitudes of their terms.
template <typename T>
std::array<T, 2> phi0_conditions(T k, T j, T eta, T d, T u, std::array<T, 2>* magnitudes = nullptr) {
    const T ie = T(1) / eta;
    const T real_terms[] = {16 * j * d * d,      -4 * j * k * k,     6 * d * k * k * eta,
                            -8 * d * d * d * eta, -8 * d * j * j * ie, 16 * j * d * u,
                            -4 * j * j * ie * u,  -4 * j * j * eta * u, -8 * d * d * eta * u,
                            2 * k * k * eta * u};
    const T imag_terms[] = {4 * j * j * k * ie, 12 * k * d * d * eta, -k * k * k * eta,
                            -16 * j * k * d,    8 * k * d * eta * u,  -8 * j * k * u};
    std::array<T, 2> sums{T(0), T(0)};
    std::array<T, 2> mags{T(0), T(0)};
    for (T t : real_terms) {
        sums[0] += t;
        mags[0] += std::abs(t);
    }
    for (T t : imag_terms) {
        sums[1] += t;
        mags[1] += std::abs(t);
    }
    if (magnitudes)
        *magnitudes = mags;
    return sums;
}

using Real = long double;

// U from the second (imaginary-part) condition, which is linear in U:
// U = numer / denom with denom = 8 (J - delta eta).
struct UElimination {
    Real numer;
    Real denom;
};

UElimination eliminate_u(Real k, Real j, Real eta, Real d) {
    return {4 * j * j / eta + 12 * d * d * eta - k * k * eta - 16 * j * d, 8 * (j - d * eta)};
}

// First condition with U eliminated and the pole cleared: A(d) denom + B(d) numer.
Real reduced_condition(Real k, Real j, Real eta, Real d) {
    const Real a = 16 * j * d * d - 4 * j * k * k + 6 * d * k * k * eta - 8 * d * d * d * eta -
                   8 * d * j * j / eta;
    const Real b = 16 * j * d - 4 * j * j / eta - 4 * j * j * eta - 8 * d * d * eta + 2 * k * k * eta;
    const auto [numer, denom] = eliminate_u(k, j, eta, d);
    return a * denom + b * numer;
}

}  // namespace

std::string_view to_string(OptimumMethod method) {
    switch (method) {
        case OptimumMethod::SingleDriveAsymptotic: return "SingleDriveAsymptotic";
        case OptimumMethod::DualDriveAsymptotic: return "DualDriveAsymptotic";
        case OptimumMethod::DualDriveExact: return "DualDriveExact";
        case OptimumMethod::Numeric: return "Numeric";
    }
    return "?";
}

std::string_view to_string(ObjectiveSolver solver) {
    switch (solver) {
        case ObjectiveSolver::Hierarchy: return "Hierarchy";
        case ObjectiveSolver::FullTruncated: return "FullTruncated";
        case ObjectiveSolver::MasterEquation: return "MasterEquation";
    }
    return "?";
}

OptimalPoint single_drive_optimum(double kappa, double j, Branch branch) {
    require_positive(kappa, "kappa", "single_drive_optimum");
    if (!(j > 0.0) || !std::isfinite(j))
        throw ParameterError("single_drive_optimum: J must be positive, got " + fmt(j));
    const double sign = branch == Branch::Plus ? 1.0 : -1.0;
    const double sqrt3 = std::numbers::sqrt3;
    OptimalPoint p;
    p.method = OptimumMethod::SingleDriveAsymptotic;
    p.delta_opt = sign * kappa / (2.0 * sqrt3);
    p.u_opt = sign * (2.0 / (3.0 * sqrt3)) * kappa * kappa * kappa / (j * j);
    p.g2_min = hierarchy_g2_phi0(kappa, j, kInf, p.delta_opt, p.u_opt);
    if (j < 5.0 * kappa)
        p.warnings.push_back("J = " + fmt(j / kappa) + " kappa is not in the strong-coupling regime J >> kappa");
    return p;
}

OptimalPoint dual_drive_optimum_asymptotic(double kappa, double j, double eta) {
    require_positive(kappa, "kappa", "dual_drive_optimum_asymptotic");
    require_positive(j, "J", "dual_drive_optimum_asymptotic");
    if (!(eta > 1.0))
        throw ParameterError("dual_drive_optimum_asymptotic: eta must exceed 1, got " + fmt(eta));
    const double eta_inv = std::isinf(eta) ? 0.0 : 1.0 / eta;
    OptimalPoint p;
    p.method = OptimumMethod::DualDriveAsymptotic;
    p.delta_opt = j * eta_inv;
    // eta/(eta^2 - 1) written in eta^{-1} so eta = inf is exact
    p.u_opt = kappa * kappa / (2.0 * j) * eta_inv / (1.0 - eta_inv * eta_inv);
    p.g2_min = hierarchy_g2_phi0(kappa, j, eta, p.delta_opt, p.u_opt);
    if (eta >= (j / kappa) * (j / kappa))
        p.warnings.push_back("eta = " + fmt(eta) + " is not << (J/kappa)^2; asymptotic conditions unreliable");
    if (j < 5.0 * kappa)
        p.warnings.push_back("J = " + fmt(j / kappa) + " kappa is not in the strong-coupling regime J >> kappa");
    return p;
}

Phi0Residuals phi0_condition_residuals(double kappa, double j, double eta, double delta, double u) {
    std::array<Real, 2> mags{};
    const auto sums = phi0_conditions<Real>(kappa, j, eta, delta, u, &mags);
    Phi0Residuals r;
    r.real_part = static_cast<double>(std::abs(sums[0]));
    r.imag_part = static_cast<double>(std::abs(sums[1]));
    r.real_relative = mags[0] > 0 ? static_cast<double>(std::abs(sums[0]) / mags[0]) : 0.0;
    r.imag_relative = mags[1] > 0 ? static_cast<double>(std::abs(sums[1]) / mags[1]) : 0.0;
    return r;
}

OptimalPoint dual_drive_optimum_exact_phi0(double kappa, double j, double eta) {
    require_positive(kappa, "kappa", "dual_drive_optimum_exact_phi0");
    require_positive(j, "J", "dual_drive_optimum_exact_phi0");
    if (!(eta > 1.0) || !std::isfinite(eta))
        throw ParameterError("dual_drive_optimum_exact_phi0: eta must be finite and exceed 1, got " + fmt(eta));

    const Real k = kappa, jj = j, e = eta;
    const Real seed_delta = jj / e;
    const Real seed_u = k * k / (2 * jj) * e / (e * e - 1);

    // Scan (0, 2J] for sign changes of the reduced condition.
    constexpr int samples = 4096;
    const Real upper = 2 * jj;
    auto f = [&](Real d) { return reduced_condition(k, jj, e, d); };

    bool found = false;
    Real best_delta = 0, best_u = 0, best_distance = std::numeric_limits<Real>::infinity();
    Real prev_d = upper / samples;
    Real prev_f = f(prev_d);
    for (int i = 2; i <= samples; ++i) {
        const Real d = upper * i / samples;
        const Real fd = f(d);
        if (prev_f == 0 || (prev_f < 0) != (fd < 0)) {
            Real lo = prev_d, hi = d, flo = prev_f;
            if (prev_f != 0) {
                for (int it = 0; it < 200 && hi - lo > 0; ++it) {
                    const Real mid = (lo + hi) / 2;
                    if (mid <= lo || mid >= hi)
                        break;
                    const Real fm = f(mid);
                    if (fm == 0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((fm < 0) == (flo < 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
            }
            const Real root = (lo + hi) / 2;
            const auto [numer, denom] = eliminate_u(k, jj, e, root);
            // Skip the spurious zero where the U-elimination pole is cleared.
            if (std::abs(denom) > 1e-12L * jj) {
                const Real u = numer / denom;
                const Real dist = std::hypot((root - seed_delta) / seed_delta, (u - seed_u) / seed_u);
                if (dist < best_distance) {
                    best_distance = dist;
                    best_delta = root;
                    best_u = u;
                    found = true;
                }
            }
        }
        prev_d = d;
        prev_f = fd;
    }
    if (!found)
        throw SolverError("dual_drive_optimum_exact_phi0: no root in (0, 2J] for J=" + fmt(j) +
                          ", eta=" + fmt(eta));

    OptimalPoint p;
    p.method = OptimumMethod::DualDriveExact;
    p.delta_opt = static_cast<double>(best_delta);
    p.u_opt = static_cast<double>(best_u);
    p.g2_min = hierarchy_g2_phi0(kappa, j, eta, p.delta_opt, p.u_opt);
    return p;
}

std::optional<double> antibunching_objective(double kappa, double j, double eta, double phi,
                                             double delta, double u,
                                             const NumericOptimumOptions& options) {
    const SymmetricSetting setting{kappa, j, delta, u, options.eps_a,
                                   std::isinf(eta) ? 0.0 : 1.0 / eta, phi};
    const SystemParams params = setting.to_params();
    try {
        switch (options.solver) {
            case ObjectiveSolver::Hierarchy: return g2_approx(hierarchy_amplitudes(params));
            case ObjectiveSolver::FullTruncated: return g2_approx(full_truncated_steady(params));
            case ObjectiveSolver::MasterEquation:
                return steady_state_observables(params,
                                                HilbertSpec(options.master_n_max, options.master_n_max))
                    .g2_a;
        }
    } catch (const SolverError&) {
        return std::nullopt;
    }
    return std::nullopt;
}

OptimalPoint numeric_optimum(double kappa, double j, double eta, double phi,
                             const NumericOptimumOptions& options) {
    require_positive(kappa, "kappa", "numeric_optimum");
    require_positive(j, "J", "numeric_optimum");
    if (!(eta > 0.0))
        throw ParameterError("numeric_optimum: eta must be positive (or +inf), got " + fmt(eta));
    if (options.grid_delta < 2 || options.grid_u < 2)
        throw ParameterError("numeric_optimum: grid needs at least 2 points per axis");

    auto objective = [&](double delta, double u) {
        return antibunching_objective(kappa, j, eta, phi, delta, u, options);
    };

    const double d_lo = options.delta_min * kappa;
    const double d_hi = options.delta_max_over_j * j;
    const double d_step = (d_hi - d_lo) / (options.grid_delta - 1);
    const double log_u_lo = std::log(options.u_min * kappa);
    const double log_u_hi = std::log(options.u_max * kappa);
    const double log_u_step = (log_u_hi - log_u_lo) / (options.grid_u - 1);

    // U ascending in the outer loop so that ties keep the weaker nonlinearity.
    bool any = false;
    double best = kInf, best_delta = 0.0, best_log_u = 0.0;
    for (int iu = 0; iu < options.grid_u; ++iu) {
        const double log_u = log_u_lo + iu * log_u_step;
        const double u = std::exp(log_u);
        for (int id = 0; id < options.grid_delta; ++id) {
            const double delta = d_lo + id * d_step;
            const auto g = objective(delta, u);
            if (!g || !std::isfinite(*g))
                continue;
            if (!any || *g < best - 1e-12) {
                any = true;
                best = *g;
                best_delta = delta;
                best_log_u = log_u;
            }
        }
    }
    if (!any)
        throw SolverError("numeric_optimum: objective is undefined on the whole grid (J=" + fmt(j) +
                          ", eta=" + fmt(eta) + ", phi=" + fmt(phi) + ")");

    using Vec2 = Eigen::Vector2d;
    auto nm_objective = [&](const Vec2& x) {
        const auto g = objective(x(0), std::exp(x(1)));
        return g ? *g : kInf;
    };
    const double tol = options.rel_tolerance;
    auto tolerance = [tol](int i, const Vec2& best_point) {
        // ln U differences are relative differences in U
        return i == 0 ? tol * std::max(std::abs(best_point(0)), 1e-3) : tol;
    };

    Vec2 start(best_delta, best_log_u);
    Vec2 step(d_step, log_u_step);
    NelderMeadResult<double, 2> result{start, best, 0, false};
    // Restart from the previous optimum until a restart no longer moves it.
    for (int round = 0; round < 4; ++round) {
        auto next = nelder_mead<2>(nm_objective, start, step, tolerance);
        const bool moved = std::abs(next.x(0) - start(0)) > tolerance(0, next.x) ||
                           std::abs(next.x(1) - start(1)) > tolerance(1, next.x);
        if (next.value <= result.value)
            result = next;
        if (!moved && round > 0)
            break;
        start = result.x;
        step = Vec2(std::max(0.05 * std::abs(start(0)), 1e-3), 0.05);
    }

    OptimalPoint p;
    p.method = OptimumMethod::Numeric;
    p.delta_opt = result.x(0);
    p.u_opt = std::exp(result.x(1));
    p.g2_min = objective(p.delta_opt, p.u_opt);
    if (!result.converged)
        p.warnings.push_back("local refinement stopped at the evaluation limit");
    return p;
}

BunchingCondition c10_zero_condition(double kappa, double j, double delta) {
    require_positive(kappa, "kappa", "c10_zero_condition");
    if (!(j > 0.0) || !std::isfinite(j))
        throw ParameterError("c10_zero_condition: J must be positive, got " + fmt(j));
    const cdouble z(delta, -0.5 * kappa);
    BunchingCondition c;
    c.phi_star = wrap_phase(-std::arg(z));
    c.eta_inv_star = std::abs(z) / j;
    return c;
}

double bunching_phase_curve(double kappa, double j, double eta) {
    return std::atan(eta * kappa / (2.0 * j));
}

bool bunching_phase_curve_valid(double kappa, double j, double eta) {
    return eta * kappa / (2.0 * j) <= 0.1;
}

}  // namespace photonmol

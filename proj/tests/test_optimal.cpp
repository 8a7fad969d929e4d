#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "photonmol/amplitude.hpp"
#include "photonmol/errors.hpp"
#include "photonmol/optimal.hpp"

using namespace photonmol;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

struct Conditions {
    long double first, second;        // polynomial values
    long double first_scale, second_scale;  // sums of term magnitudes
};

/// The two real phase-locked optimality polynomials, typed in term by term.
Conditions phi0_conditions(long double k, long double j, long double eta, long double d, long double u) {
    const long double terms1[] = {16 * j * d * d,         -4 * j * k * k,        6 * d * k * k * eta,
                                  -8 * d * d * d * eta,   -8 * d * j * j / eta,  16 * j * d * u,
                                  -4 * j * j / eta * u,   -4 * j * j * eta * u,  -8 * d * d * eta * u,
                                  2 * k * k * eta * u};
    const long double terms2[] = {4 * j * j * k / eta, 12 * k * d * d * eta, -k * k * k * eta,
                                  -16 * j * k * d,     8 * k * d * eta * u,  -8 * j * k * u};
    Conditions c{0, 0, 0, 0};
    for (long double t : terms1) {
        c.first += t;
        c.first_scale += std::fabs(t);
    }
    for (long double t : terms2) {
        c.second += t;
        c.second_scale += std::fabs(t);
    }
    return c;
}

double g2_hierarchy(double j, double eta, double phi, double delta, double u) {
    const double eta_inv = std::isinf(eta) ? 0.0 : 1.0 / eta;
    return *g2_approx(hierarchy_amplitudes(SymmetricSetting{1.0, j, delta, u, 0.01, eta_inv, phi}.to_params()));
}

}  // namespace

TEST_CASE("single-drive optimum") {
    const auto plus = single_drive_optimum(1.0, 10.0);
    CHECK(plus.delta_opt == doctest::Approx(0.28868).epsilon(1e-5));
    CHECK(plus.u_opt == doctest::Approx(0.0038490).epsilon(1e-5));
    CHECK(plus.method == OptimumMethod::SingleDriveAsymptotic);
    CHECK(plus.warnings.empty());

    const auto minus = single_drive_optimum(1.0, 10.0, Branch::Minus);
    CHECK(minus.delta_opt == -plus.delta_opt);
    CHECK(minus.u_opt == -plus.u_opt);

    const auto j20 = single_drive_optimum(1.0, 20.0);
    CHECK(j20.delta_opt == plus.delta_opt);
    CHECK(j20.u_opt == doctest::Approx(plus.u_opt / 4).epsilon(1e-14));

    CHECK_FALSE(single_drive_optimum(1.0, 2.0).warnings.empty());
    CHECK_THROWS_AS(single_drive_optimum(1.0, 0.0), ParameterError);
}

TEST_CASE("dual-drive asymptotic optimum") {
    const auto eta2 = dual_drive_optimum_asymptotic(1.0, 10.0, 2.0);
    CHECK(eta2.delta_opt == doctest::Approx(5.0));
    CHECK(eta2.u_opt == doctest::Approx(1.0 / 30.0));

    const auto eta3 = dual_drive_optimum_asymptotic(1.0, 10.0, 3.0);
    CHECK(eta3.delta_opt == doctest::Approx(3.3333).epsilon(1e-4));
    CHECK(eta3.u_opt == doctest::Approx(0.01875));

    CHECK(dual_drive_optimum_asymptotic(1.0, 10.0, 1.0 + 1e-9).u_opt > 1e6);
    CHECK_THROWS_AS(dual_drive_optimum_asymptotic(1.0, 10.0, 1.0), ParameterError);
    CHECK_THROWS_AS(dual_drive_optimum_asymptotic(1.0, 10.0, 0.5), ParameterError);
    CHECK_FALSE(dual_drive_optimum_asymptotic(1.0, 10.0, 150.0).warnings.empty());

    const auto limit = dual_drive_optimum_asymptotic(1.0, 10.0, inf);
    CHECK(limit.delta_opt == 0.0);
    CHECK(limit.u_opt == 0.0);
}

TEST_CASE("exact phase-locked optimum") {
    const auto p = dual_drive_optimum_exact_phi0(1.0, 10.0, 3.0);
    CHECK(p.method == OptimumMethod::DualDriveExact);
    CHECK(p.delta_opt == doctest::Approx(10.0 / 3.0).epsilon(0.05));
    CHECK(p.u_opt == doctest::Approx(0.01875).epsilon(0.05));

    const auto far = dual_drive_optimum_exact_phi0(1.0, 100.0, 3.0);
    const auto asym = dual_drive_optimum_asymptotic(1.0, 100.0, 3.0);
    CHECK(std::abs(far.delta_opt - asym.delta_opt) < 1e-3 * asym.delta_opt);
    CHECK(std::abs(far.u_opt - asym.u_opt) < 1e-3 * asym.u_opt);

    CHECK_THROWS_AS(dual_drive_optimum_exact_phi0(1.0, 10.0, 1.0), ParameterError);
    CHECK_THROWS_AS(dual_drive_optimum_exact_phi0(1.0, 10.0, inf), ParameterError);
}

TEST_CASE("exact optimum satisfies both conditions") {
    for (double j : {10.0, 20.0, 50.0}) {
        for (double eta : {1.5, 2.0, 3.0, 5.0, 8.0}) {
            CAPTURE(j);
            CAPTURE(eta);
            const auto p = dual_drive_optimum_exact_phi0(1.0, j, eta);
            const Conditions c = phi0_conditions(1.0L, j, eta, p.delta_opt, p.u_opt);
            CHECK(static_cast<double>(std::fabs(c.first) / c.first_scale) < 1e-10);
            CHECK(static_cast<double>(std::fabs(c.second) / c.second_scale) < 1e-10);

            const auto lib = phi0_condition_residuals(1.0, j, eta, p.delta_opt, p.u_opt);
            CHECK(lib.real_relative < 1e-10);
            CHECK(lib.imag_relative < 1e-10);

            // The conditions are exactly those that null c20.
            const auto amps = hierarchy_amplitudes(
                SymmetricSetting{1.0, j, p.delta_opt, p.u_opt, 0.01, 1.0 / eta, 0.0}.to_params());
            CHECK(std::abs(amps.c20) < 1e-10 * std::abs(amps.c11));
        }
    }
}

TEST_CASE("exact optimum converges to the asymptotic formulas") {
    double last_delta = inf, last_u = inf;
    for (double j : {10.0, 30.0, 100.0}) {
        const auto exact = dual_drive_optimum_exact_phi0(1.0, j, 3.0);
        const auto asym = dual_drive_optimum_asymptotic(1.0, j, 3.0);
        const double gap_delta = std::abs(exact.delta_opt - asym.delta_opt) / asym.delta_opt;
        const double gap_u = std::abs(exact.u_opt - asym.u_opt) / asym.u_opt;
        CHECK(gap_delta < last_delta);
        CHECK(gap_u < last_u);
        last_delta = gap_delta;
        last_u = gap_u;
    }
}

TEST_CASE("numeric optimum") {
    SUBCASE("single drive") {
        const auto p = numeric_optimum(1.0, 10.0, inf, 0.0);
        CHECK(p.method == OptimumMethod::Numeric);
        CHECK(p.delta_opt == doctest::Approx(0.2887).epsilon(0.1));
        CHECK(p.u_opt == doctest::Approx(0.00385).epsilon(0.1));
        REQUIRE(p.g2_min.has_value());
        CHECK(*p.g2_min < 1e-2);
    }
    SUBCASE("phase-locked dual drive") {
        const auto p = numeric_optimum(1.0, 10.0, 3.0, 0.0);
        CHECK(p.delta_opt == doctest::Approx(10.0 / 3.0).epsilon(0.1));
        CHECK(p.u_opt == doctest::Approx(0.01875).epsilon(0.1));
    }
    SUBCASE("weak second drive approaches the single-drive optimum") {
        const auto p = numeric_optimum(1.0, 10.0, 100.0, 0.0);
        CHECK(std::abs(p.delta_opt - 0.2887) < std::abs(p.delta_opt - 0.1));
    }
    SUBCASE("reported minimum is the objective at the reported point") {
        const auto p = numeric_optimum(1.0, 10.0, 2.0, 0.0);
        const auto g = antibunching_objective(1.0, 10.0, 2.0, 0.0, p.delta_opt, p.u_opt);
        REQUIRE(g.has_value());
        CHECK(std::abs(*g - *p.g2_min) <= 1e-12 * std::max(*g, 1e-300));
    }
}

TEST_CASE("numeric search never loses to the asymptotic candidate") {
    NumericOptimumOptions opts;
    opts.solver = ObjectiveSolver::Hierarchy;
    for (double eta : {2.0, 4.0, 8.0}) {
        for (double phi : {0.0, 0.3}) {
            const auto num = numeric_optimum(1.0, 10.0, eta, phi, opts);
            const auto asym = dual_drive_optimum_asymptotic(1.0, 10.0, eta);
            CHECK(*num.g2_min <= g2_hierarchy(10.0, eta, phi, asym.delta_opt, asym.u_opt));
        }
    }
}

TEST_CASE("c10 zero condition") {
    const auto b = c10_zero_condition(1.0, 10.0, 1.0 / (2.0 * std::sqrt(3.0)));
    CHECK(b.phi_star == doctest::Approx(pi / 3));
    CHECK(b.eta_inv_star == doctest::Approx(0.057735).epsilon(1e-5));

    const auto zero = c10_zero_condition(1.0, 10.0, 0.0);
    CHECK(zero.phi_star == doctest::Approx(pi / 2));
    CHECK(zero.eta_inv_star == doctest::Approx(0.05));

    CHECK_THROWS_AS(c10_zero_condition(1.0, 0.0, 1.0), ParameterError);

    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double delta = dist(rng);
        const auto cond = c10_zero_condition(1.0, 10.0, delta);
        CHECK(cond.phi_star > -pi);
        CHECK(cond.phi_star <= pi);
        const auto c = one_photon_amplitudes(
            SymmetricSetting{1.0, 10.0, delta, 0.0, 0.01, cond.eta_inv_star, cond.phi_star}.to_params());
        CHECK(std::abs(c.c10) < 1e-12 * std::abs(c.c01));
    }
}

TEST_CASE("bunching phase curve") {
    CHECK(bunching_phase_curve(1.0, 10.0, 0.0) == 0.0);
    CHECK(bunching_phase_curve(1.0, 10.0, 20.0) == doctest::Approx(pi / 4));
    CHECK(bunching_phase_curve_valid(1.0, 10.0, 1.0));
    CHECK_FALSE(bunching_phase_curve_valid(1.0, 10.0, 20.0));

    const double eta = 5.0;
    const auto asym = dual_drive_optimum_asymptotic(1.0, 10.0, eta);
    const double phi = bunching_phase_curve(1.0, 10.0, eta);
    CHECK(g2_hierarchy(10.0, eta, phi, asym.delta_opt, asym.u_opt) >=
          10 * g2_hierarchy(10.0, eta, 0.0, asym.delta_opt, asym.u_opt));
}

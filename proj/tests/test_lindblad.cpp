#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "photonmol/amplitude.hpp"
#include "photonmol/lindblad.hpp"
#include "photonmol/optimal.hpp"

using namespace photonmol;
using Matrix = Eigen::MatrixXcd;

namespace {

SystemParams optimum_point_eta3() {
    const double delta = 10.0 / 3.0;
    const double u = 3.0 / (2.0 * 10.0 * 8.0);
    return SymmetricSetting{1.0, 10.0, delta, u, 0.01, 1.0 / 3.0, 0.0}.to_params();
}

double rel_diff(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

}  // namespace

TEST_CASE("undriven steady state is the vacuum") {
    SystemParams p;
    p.coupling_j = 3.0;
    p.delta_a = 0.5;
    const HilbertSpec spec(3, 3);
    const auto rho = steady_state(liouvillian(p, spec));
    const Matrix expected = DensityMatrix<double>::vacuum(spec).entries;
    CHECK((rho.entries - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single driven linear mode is coherent") {
    SystemParams p;
    p.delta_a = 0.8;
    p.eps_a = 0.05;
    p.phi_a = 0.9;
    const auto obs = steady_state_observables(p, HilbertSpec(6, 0));
    const double expected = p.eps_a * p.eps_a / (p.delta_a * p.delta_a + 0.25);
    CHECK(obs.mean_n_a == doctest::Approx(expected).epsilon(1e-8));
    REQUIRE(obs.g2_a.has_value());
    CHECK(std::abs(*obs.g2_a - 1.0) < 1e-6);
    CHECK_FALSE(obs.g2_b.has_value());
}

TEST_CASE("coupled linear modes match linear response") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        SystemParams p = oracle::random_symmetric(rng);
        p.u_a = p.u_b = 0.0;
        const auto obs = steady_state_observables(p);
        const auto [alpha, beta] = oracle::linear_amplitudes(p);
        CHECK(std::abs(obs.mean_n_a - std::norm(alpha)) < 1e-8);
        CHECK(std::abs(obs.mean_n_b - std::norm(beta)) < 1e-8);
        CHECK(std::abs(*obs.g2_a - 1.0) < 1e-6);
        CHECK(std::abs(*obs.g2_b - 1.0) < 1e-6);
    }
}

TEST_CASE("steady state satisfies its residual bound") {
    const auto l = liouvillian(optimum_point_eta3(), HilbertSpec(3, 3));
    const auto rho = steady_state(l);
    const double residual = (l.matrix * vec(rho.entries)).cwiseAbs().maxCoeff();
    CHECK(residual <= 1e-10 * l.matrix.cwiseAbs().rowwise().sum().maxCoeff());
    CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
}

TEST_CASE("steady state agrees with long-time integration") {
    const HilbertSpec spec(3, 3);
    const auto l = liouvillian(optimum_point_eta3(), spec);
    const auto direct = steady_state(l);
    const auto integrated = evolve(l, DensityMatrix<double>::vacuum(spec), 50.0, 5e-3);
    CHECK((direct.entries - integrated.entries).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("evolve with a zero generator returns the initial state") {
    const HilbertSpec spec(2, 1);
    Liouvillian<double> l{spec, SystemParams{}, SuperoperatorMatrix<double>::Zero(spec.dim() * spec.dim(),
                                                                                 spec.dim() * spec.dim())};
    std::mt19937_64 rng(3);
    const DensityMatrix<double> rho0{spec, oracle::random_density(spec.dim(), rng)};
    const auto rho = evolve(l, rho0, 2.0, 0.1);
    CHECK((rho.entries - rho0.entries).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("evolve reproduces free decay of one photon") {
    const HilbertSpec spec(2, 2);
    SystemParams p;
    p.coupling_j = 0.0;
    const auto rho = evolve(liouvillian(p, spec), DensityMatrix<double>::projector(spec, 1, 0), 1.0, 1e-3);
    CHECK(std::abs(observables(rho).mean_n_a - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("evolve rejects unstable steps and bad arguments") {
    const HilbertSpec spec(3, 3);
    const auto l = liouvillian(optimum_point_eta3(), spec);
    const auto vac = DensityMatrix<double>::vacuum(spec);
    CHECK_THROWS_AS(evolve(l, vac, 10.0, 1.0), SolverError);
    CHECK_THROWS_AS(evolve(l, vac, 1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(evolve(l, DensityMatrix<double>::vacuum(HilbertSpec(2, 2)), 1.0, 0.1), DimensionError);
}

TEST_CASE("observables of simple states") {
    const HilbertSpec spec(3, 3);
    const auto vac = observables(DensityMatrix<double>::vacuum(spec));
    CHECK(vac.mean_n_a == 0.0);
    CHECK_FALSE(vac.g2_a.has_value());
    CHECK_FALSE(vac.g2_b.has_value());

    const auto one = observables(DensityMatrix<double>::projector(spec, 1, 0));
    CHECK(one.mean_n_a == doctest::Approx(1.0));
    REQUIRE(one.g2_a.has_value());
    CHECK(*one.g2_a == doctest::Approx(0.0));

    const auto two = observables(DensityMatrix<double>::projector(spec, 2, 3));
    CHECK(*two.g2_a == doctest::Approx(0.5));
    CHECK(*two.g2_b == doctest::Approx(6.0 / 9.0));
}

TEST_CASE("steady states are valid density matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = steady_state(liouvillian(oracle::random_symmetric(rng, 0.3), HilbertSpec(3, 3)));
        CHECK(rho.hermiticity_error() < 1e-12);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(rho.min_eigenvalue() > -1e-10);
    }
}

TEST_CASE("global drive phase is a gauge freedom") {
    std::mt19937_64 rng(11);
    SystemParams p = oracle::random_symmetric(rng, 0.2);
    const auto base = steady_state_observables(p);
    p.phi_a += 1.234;
    p.phi_b += 1.234;
    const auto shifted = steady_state_observables(p);
    CHECK(std::abs(base.mean_n_a - shifted.mean_n_a) < 1e-10);
    CHECK(rel_diff(*base.g2_a, *shifted.g2_a) < 1e-10);
    CHECK(rel_diff(*base.g2_b, *shifted.g2_b) < 1e-10);
}

TEST_CASE("exchanging the modes exchanges the observables") {
    std::mt19937_64 rng(13);
    const SystemParams p = oracle::random_general(rng, 0.3);
    const auto direct = steady_state_observables(p);
    const auto swapped = steady_state_observables(p.swapped_modes());
    CHECK(std::abs(direct.mean_n_a - swapped.mean_n_b) < 1e-10);
    CHECK(std::abs(direct.mean_n_b - swapped.mean_n_a) < 1e-10);
    CHECK(rel_diff(*direct.g2_a, *swapped.g2_b) < 1e-10);
    CHECK(rel_diff(*direct.g2_b, *swapped.g2_a) < 1e-10);
}

TEST_CASE("truncation 3 and 4 agree at weak drive") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const SystemParams p = oracle::random_symmetric(rng);
        const auto n3 = steady_state_observables(p, HilbertSpec(3, 3));
        const auto n4 = steady_state_observables(p, HilbertSpec(4, 4));
        CHECK(rel_diff(*n3.g2_a, *n4.g2_a) < 1e-6);
    }
}

TEST_CASE("master equation approaches the amplitude prediction as the drive weakens") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 3; ++trial) {
        const SystemParams base = oracle::random_symmetric(rng, 0.04);
        const double target = *g2_approx(hierarchy_amplitudes(base));
        double previous = std::numeric_limits<double>::infinity();
        for (double s : {1.0, 0.5, 0.25}) {
            SystemParams p = base;
            p.eps_a *= s;
            p.eps_b *= s;
            const double diff = std::abs(*steady_state_observables(p).g2_a - target);
            CHECK(diff < previous);
            previous = diff;
        }
    }
}

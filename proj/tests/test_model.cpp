#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "photonmol/lindblad.hpp"
#include "photonmol/model.hpp"

using namespace photonmol;
using Matrix = Eigen::MatrixXcd;

TEST_CASE("hamiltonian matrix elements") {
    const HilbertSpec spec(3, 3);
    SystemParams zero;
    CHECK(hamiltonian(zero, spec).cwiseAbs().maxCoeff() == 0.0);

    SystemParams p;
    p.delta_a = 0.7;
    p.delta_b = -0.2;
    p.coupling_j = 10.0;
    p.u_a = 0.013;
    p.u_b = 0.4;
    p.eps_a = 0.01;
    p.eps_b = 0.02;
    p.phi_a = 0.3;
    p.phi_b = -1.1;
    const Matrix h = hamiltonian(p, spec);
    auto el = [&](int a1, int b1, int a2, int b2) { return h(spec.index(a1, b1), spec.index(a2, b2)); };

    CHECK(el(2, 0, 2, 0).real() == doctest::Approx(2 * p.delta_a + 2 * p.u_a));
    CHECK(el(1, 0, 0, 1).real() == doctest::Approx(p.coupling_j));
    CHECK(el(1, 1, 2, 0).real() == doctest::Approx(std::sqrt(2.0) * p.coupling_j));
    CHECK(std::abs(el(1, 0, 0, 0) - std::polar(p.eps_a, p.phi_a)) < 1e-15);
    CHECK(std::abs(el(0, 1, 0, 0) - std::polar(p.eps_b, p.phi_b)) < 1e-15);
    CHECK(std::abs(el(1, 0, 2, 0) - std::sqrt(2.0) * std::polar(p.eps_a, -p.phi_a)) < 1e-15);
    CHECK(el(3, 3, 3, 3).real() == doctest::Approx(3 * (p.delta_a + p.delta_b) + 6 * (p.u_a + p.u_b)));
}

TEST_CASE("hamiltonian is Hermitian for random parameters") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const SystemParams p = oracle::random_general(rng, 1.0);
        const Matrix h = hamiltonian(p, HilbertSpec(3, 2));
        const double scale = h.cwiseAbs().maxCoeff();
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale);
    }
}

TEST_CASE("liouvillian reproduces the master equation on random states") {
    std::mt19937_64 rng(17);
    const HilbertSpec spec(2, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p = oracle::random_general(rng, 0.5);
        const auto l = liouvillian(p, spec);
        const Matrix rho = oracle::random_density(spec.dim(), rng);
        const Matrix lhs = unvec(l.matrix * vec(rho), spec.dim());
        const Matrix rhs = oracle::lindblad_rhs(hamiltonian(p, spec), oracle::ladder(spec, Mode::A),
                                                oracle::ladder(spec, Mode::B), p.kappa_a, p.kappa_b, rho);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("liouvillian preserves the trace") {
    std::mt19937_64 rng(23);
    const HilbertSpec spec(3, 3);
    const SystemParams p = oracle::random_general(rng, 0.5);
    const auto l = liouvillian(p, spec);
    const Eigen::Index dim = spec.dim();

    // identity under the adjoint action: sum of the rows belonging to diagonal entries
    Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        trace_row += l.matrix.row(i + i * dim);
    CHECK(trace_row.cwiseAbs().maxCoeff() < 1e-12);

    for (int trial = 0; trial < 10; ++trial) {
        const Matrix rho = oracle::random_density(dim, rng);
        CHECK(std::abs(unvec(l.matrix * vec(rho), dim).trace()) < 1e-12);
    }
}

TEST_CASE("undriven vacuum is stationary") {
    SystemParams p;
    p.delta_a = 0.4;
    p.delta_b = -1.3;
    const HilbertSpec spec(3, 3);
    const auto l = liouvillian(p, spec);
    const auto vacuum = DensityMatrix<double>::vacuum(spec);
    CHECK((l.matrix * vec(vacuum.entries)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vec and unvec use column stacking") {
    Matrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Eigen::VectorXcd v = vec(m);
    CHECK(v(1) == std::complex<double>(3.0));
    CHECK(v(2) == std::complex<double>(2.0));
    CHECK(unvec(v, 2) == m);
    CHECK_THROWS_AS(unvec(v, 3), DimensionError);
}

TEST_CASE("drive_ratios") {
    SystemParams p;
    p.eps_a = 0.01;
    p.eps_b = 0.005;
    p.phi_a = p.phi_b = 0.4;
    auto r = drive_ratios(p);
    CHECK(r.eta == doctest::Approx(2.0));
    CHECK(r.phi == 0.0);

    p.eps_b = 0.0;
    r = drive_ratios(p);
    CHECK(r.eta_is_infinite());
    CHECK(r.eta_inverse() == 0.0);

    p.eps_b = 0.01;
    p.phi_a = 0.0;
    p.phi_b = 3 * std::numbers::pi / 2;
    CHECK(drive_ratios(p).phi == doctest::Approx(std::numbers::pi / 2));

    p.eps_a = p.eps_b = 0.0;
    CHECK_THROWS_AS(drive_ratios(p), ParameterError);
}

TEST_CASE("wrap_phase maps into (-pi, pi]") {
    constexpr double pi = std::numbers::pi;
    CHECK(wrap_phase(pi) == doctest::Approx(pi));
    CHECK(wrap_phase(-pi) == doctest::Approx(pi));
    CHECK(wrap_phase(3 * pi) == doctest::Approx(pi));
    CHECK(wrap_phase(-pi / 2) == doctest::Approx(-pi / 2));
    CHECK(wrap_phase(2 * pi + 0.25) == doctest::Approx(0.25));
}

TEST_CASE("SystemParams validation") {
    SystemParams p;
    CHECK_NOTHROW(p.validate());
    p.kappa_b = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p.kappa_b = 1.0;
    p.eps_a = -0.1;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p.eps_a = 0.1;
    p.coupling_j = std::nan("");
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

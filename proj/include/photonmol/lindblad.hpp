#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseCore>

#include "photonmol/errors.hpp"
#include "photonmol/fock.hpp"
#include "photonmol/model.hpp"

namespace photonmol {

template <typename Scalar = double>
struct DensityMatrix {
    HilbertSpec spec;
    OperatorMatrix<Scalar> entries;

    static DensityMatrix projector(const HilbertSpec& spec, int n_a, int n_b) {
        const StateVector<Scalar> psi = basis_state<Scalar>(spec, n_a, n_b);
        return {spec, psi * psi.adjoint()};
    }

    static DensityMatrix vacuum(const HilbertSpec& spec) { return projector(spec, 0, 0); }

    Complex<Scalar> trace() const { return entries.trace(); }

    /// max |rho - rho'| entrywise
    Scalar hermiticity_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

    Scalar min_eigenvalue() const {
        const OperatorMatrix<Scalar> herm = Scalar(0.5) * (entries + entries.adjoint());
        Eigen::SelfAdjointEigenSolver<OperatorMatrix<Scalar>> solver(herm, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    Scalar population(int n_a, int n_b) const {
        const auto i = spec.index(n_a, n_b);
        return entries(i, i).real();
    }
};

/// Photon-statistics observables of the steady state. g2 is empty when the
/// corresponding mean photon number is too small to divide by.
struct Observables {
    double mean_n_a = 0.0;
    double mean_n_b = 0.0;
    std::optional<double> g2_a;
    std::optional<double> g2_b;
};

namespace detail {

template <typename Scalar>
Scalar operator_inf_norm(const OperatorMatrix<Scalar>& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace detail

/// Smallest reciprocal condition estimate accepted by steady_state.
inline constexpr double kSteadyStateMinRcond = 1e-14;

/// Unique steady state of `l`: the row of L vec(rho) = 0 belonging to rho(0,0) is
/// replaced by the trace constraint and the square system is solved by LU with one
/// step of iterative refinement.
template <typename Scalar>
DensityMatrix<Scalar> steady_state(const Liouvillian<Scalar>& l) {
    using C = Complex<Scalar>;
    const Eigen::Index dim = l.spec.dim();
    const Eigen::Index n = dim * dim;
    if (l.matrix.rows() != n || l.matrix.cols() != n)
        throw DimensionError("steady_state: superoperator does not match its Hilbert space");

    SuperoperatorMatrix<Scalar> system = l.matrix;
    system.row(0).setZero();
    for (Eigen::Index i = 0; i < dim; ++i)
        system(0, i + i * dim) = C(1, 0);
    StateVector<Scalar> rhs = StateVector<Scalar>::Zero(n);
    rhs(0) = C(1, 0);

    const Eigen::PartialPivLU<SuperoperatorMatrix<Scalar>> lu(system);
    const Scalar rcond = lu.rcond();
    if (!(rcond >= Scalar(kSteadyStateMinRcond))) {
        std::ostringstream msg;
        msg << "steady_state: ill-conditioned Liouvillian (rcond=" << static_cast<double>(rcond) << ") at "
            << l.params.describe();
        throw SolverError(msg.str());
    }

    StateVector<Scalar> x = lu.solve(rhs);
    x += lu.solve(StateVector<Scalar>(rhs - system * x));

    OperatorMatrix<Scalar> rho = unvec(x, dim);
    rho = Scalar(0.5) * (rho + OperatorMatrix<Scalar>(rho.adjoint()));
    rho /= rho.trace();

    const Scalar residual = (l.matrix * vec(rho)).cwiseAbs().maxCoeff();
    const Scalar scale = detail::operator_inf_norm<Scalar>(l.matrix);
    if (!(residual <= Scalar(1e-10) * scale))
        throw SolverError("steady_state: residual " + std::to_string(static_cast<double>(residual)) +
                          " exceeds tolerance at " + l.params.describe());
    return {l.spec, std::move(rho)};
}

/// Classic fourth-order Runge-Kutta integration of d vec(rho)/dt = L vec(rho) with the
/// trace renormalized after every step. The step is shortened so the last step lands
/// on t_final exactly.
template <typename Scalar>
DensityMatrix<Scalar> evolve(const Liouvillian<Scalar>& l, const DensityMatrix<Scalar>& rho0,
                             double t_final, double dt) {
    using C = Complex<Scalar>;
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ParameterError("evolve: dt must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
        throw ParameterError("evolve: t_final must be non-negative");
    if (!(rho0.spec == l.spec) || rho0.entries.rows() != l.spec.dim() ||
        rho0.entries.cols() != l.spec.dim())
        throw DimensionError("evolve: initial state does not match the Liouvillian's space");
    if (t_final == 0.0)
        return rho0;

    const Eigen::Index dim = l.spec.dim();
    const Eigen::SparseMatrix<C> gen = l.matrix.sparseView();
    const auto steps = static_cast<long long>(std::ceil(t_final / dt - 1e-9));
    const Scalar h = static_cast<Scalar>(t_final / static_cast<double>(steps));
    const Scalar half = h / Scalar(2);
    const Scalar sixth = h / Scalar(6);

    auto trace_of = [dim](const StateVector<Scalar>& v) {
        C tr(0, 0);
        for (Eigen::Index i = 0; i < dim; ++i)
            tr += v(i + i * dim);
        return tr;
    };

    StateVector<Scalar> x = vec(rho0.entries);
    const C target_trace = trace_of(x);
    StateVector<Scalar> k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
    for (long long step = 0; step < steps; ++step) {
        k1.noalias() = gen * x;
        k2.noalias() = gen * (x + half * k1);
        k3.noalias() = gen * (x + half * k2);
        k4.noalias() = gen * (x + h * k3);
        x += sixth * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);

        const C tr = trace_of(x);
        const Scalar drift = std::abs(tr - target_trace) / std::abs(target_trace);
        if (!(drift <= Scalar(1e-6)) || !(x.norm() <= Scalar(10) * std::abs(target_trace)))
            throw SolverError("evolve: integration unstable at step " + std::to_string(step) +
                              " (dt=" + std::to_string(static_cast<double>(h)) +
                              "); use a smaller dt. Parameters: " + l.params.describe());
        x *= target_trace / tr;
    }
    return {l.spec, unvec(x, dim)};
}

/// Mean photon numbers and equal-time g2 of both modes. a'a and a'a'aa are diagonal
/// in the Fock basis, so only the populations enter.
template <typename Scalar>
Observables observables(const DensityMatrix<Scalar>& rho) {
    const HilbertSpec& spec = rho.spec;
    if (rho.entries.rows() != spec.dim() || rho.entries.cols() != spec.dim())
        throw DimensionError("observables: density matrix does not match its Hilbert space");

    Scalar n_a(0), n_b(0), pairs_a(0), pairs_b(0);
    for (Eigen::Index i = 0; i < spec.dim(); ++i) {
        const auto [na, nb] = spec.occupation(i);
        const Scalar p = rho.entries(i, i).real();
        n_a += Scalar(na) * p;
        n_b += Scalar(nb) * p;
        pairs_a += Scalar(na) * Scalar(na - 1) * p;
        pairs_b += Scalar(nb) * Scalar(nb - 1) * p;
    }

    auto clamp = [](Scalar v, const char* what) {
        if (v < Scalar(-1e-10))
            throw SolverError(std::string("observables: negative ") + what + " " +
                              std::to_string(static_cast<double>(v)));
        return static_cast<double>(std::max(v, Scalar(0)));
    };
    auto g2 = [](double pairs, double mean) -> std::optional<double> {
        if (mean < 1e-300)
            return std::nullopt;
        return pairs / (mean * mean);
    };

    Observables obs;
    obs.mean_n_a = clamp(n_a, "<n_a>");
    obs.mean_n_b = clamp(n_b, "<n_b>");
    obs.g2_a = g2(clamp(pairs_a, "<a'a'aa>"), obs.mean_n_a);
    obs.g2_b = g2(clamp(pairs_b, "<b'b'bb>"), obs.mean_n_b);
    return obs;
}

/// Convenience: steady-state observables straight from the parameters.
template <typename Scalar = double>
Observables steady_state_observables(const SystemParams& params, const HilbertSpec& spec = {}) {
    params.validate();
    return observables(steady_state(liouvillian<Scalar>(params, spec)));
}

}  // namespace photonmol

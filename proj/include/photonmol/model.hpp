#pragma once

#include <cmath>
#include <utility>

#include "photonmol/fock.hpp"
#include "photonmol/params.hpp"

namespace photonmol {

/// Matrix acting on column-stacked density matrices, vec(rho)(i + j*dim) = rho(i, j).
template <typename Scalar = double>
using SuperoperatorMatrix = OperatorMatrix<Scalar>;

/// Lindblad generator together with the space and parameter point it was built from.
template <typename Scalar = double>
struct Liouvillian {
    HilbertSpec spec;
    SystemParams params;
    SuperoperatorMatrix<Scalar> matrix;
};

/// H = Da a'a + Db b'b + J(a b' + a'b) + Ua a'a'aa + Ub b'b'bb
///     + (eps_a e^{i phi_a} a' + eps_b e^{i phi_b} b' + h.c.)
template <typename Scalar = double>
OperatorMatrix<Scalar> hamiltonian(const SystemParams& params, const HilbertSpec& spec) {
    using C = Complex<Scalar>;
    const LadderOperators<Scalar> ops(spec);
    const auto& a = ops.a;
    const auto& b = ops.b;
    const OperatorMatrix<Scalar> ad = a.adjoint();
    const OperatorMatrix<Scalar> bd = b.adjoint();

    const auto s = [](double v) { return static_cast<Scalar>(v); };
    const C drive_a = std::polar(s(params.eps_a), s(params.phi_a));
    const C drive_b = std::polar(s(params.eps_b), s(params.phi_b));

    OperatorMatrix<Scalar> h = s(params.delta_a) * (ad * a) + s(params.delta_b) * (bd * b);
    h += s(params.coupling_j) * (a * bd + ad * b);
    h += s(params.u_a) * (ad * ad * a * a) + s(params.u_b) * (bd * bd * b * b);
    OperatorMatrix<Scalar> drive = drive_a * ad + drive_b * bd;
    h += drive + OperatorMatrix<Scalar>(drive.adjoint());
    return h;
}

/// Column-stacking vectorization.
template <typename Derived>
auto vec(const Eigen::MatrixBase<Derived>& rho) {
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v =
        Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>(rho.derived().eval().data(),
                                                                   rho.size());
    return v;
}

template <typename Derived>
auto unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index dim) {
    using Scalar = typename Derived::Scalar;
    if (v.size() != dim * dim)
        throw DimensionError("unvec: vector length does not match dim^2");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rho =
        Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>(v.derived().eval().data(),
                                                                                dim, dim);
    return rho;
}

/// out += coeff * (lhs (x) rhs), visiting only the nonzero entries of lhs.
template <typename Scalar, typename DerivedA, typename DerivedB>
void add_tensor(SuperoperatorMatrix<Scalar>& out, Complex<Scalar> coeff, const Eigen::MatrixBase<DerivedA>& lhs,
                const Eigen::MatrixBase<DerivedB>& rhs) {
    const Eigen::Index n = rhs.rows();
    const Eigen::Index m = rhs.cols();
    if (out.rows() != lhs.rows() * n || out.cols() != lhs.cols() * m)
        throw DimensionError("add_tensor: output dimension does not match the factors");
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
        for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
            const Complex<Scalar> w = lhs(i, j);
            if (w != Complex<Scalar>(0))
                out.block(i * n, j * m, n, m) += (coeff * w) * rhs;
        }
}

/// Superoperator of D[c] rho = c rho c' - (c'c rho + rho c'c)/2.
template <typename Scalar = double>
SuperoperatorMatrix<Scalar> dissipator(const OperatorMatrix<Scalar>& c) {
    const Eigen::Index dim = c.rows();
    const OperatorMatrix<Scalar> id = identity<Scalar>(dim);
    const OperatorMatrix<Scalar> cdc = c.adjoint() * c;
    const Complex<Scalar> one(1), minus_half(-0.5);
    SuperoperatorMatrix<Scalar> d = SuperoperatorMatrix<Scalar>::Zero(dim * dim, dim * dim);
    add_tensor(d, one, c.conjugate(), c);
    add_tensor(d, minus_half, id, cdc);
    add_tensor(d, minus_half, cdc.transpose(), id);
    return d;
}

/// Generator of d rho/dt = -i[H, rho] + kappa_a D[a] rho + kappa_b D[b] rho, with
/// vec(A X B) = (B^T (x) A) vec(X).
template <typename Scalar = double>
Liouvillian<Scalar> liouvillian(const SystemParams& params, const HilbertSpec& spec) {
    using C = Complex<Scalar>;
    const OperatorMatrix<Scalar> h = hamiltonian<Scalar>(params, spec);
    const LadderOperators<Scalar> ops(spec);
    const Eigen::Index dim = spec.dim();
    const OperatorMatrix<Scalar> id = identity<Scalar>(dim);

    SuperoperatorMatrix<Scalar> l = SuperoperatorMatrix<Scalar>::Zero(dim * dim, dim * dim);
    add_tensor(l, C(0, -1), id, h);
    add_tensor(l, C(0, 1), h.transpose(), id);
    const std::pair<const OperatorMatrix<Scalar>*, double> channels[] = {{&ops.a, params.kappa_a},
                                                                         {&ops.b, params.kappa_b}};
    for (const auto& [c, rate] : channels) {
        const OperatorMatrix<Scalar> cdc = c->adjoint() * *c;
        const auto k = static_cast<Scalar>(rate);
        add_tensor(l, C(k), c->conjugate(), *c);
        add_tensor(l, C(-k / 2), id, cdc);
        add_tensor(l, C(-k / 2), cdc.transpose(), id);
    }
    return {spec, params, std::move(l)};
}

}  // namespace photonmol

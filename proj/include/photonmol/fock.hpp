#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "photonmol/errors.hpp"

namespace photonmol {

template <typename Scalar = double>
using Complex = std::complex<Scalar>;

/// Dense complex matrix acting on a truncated Fock space.
template <typename Scalar = double>
using OperatorMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using StateVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

enum class Mode { A, B };

/// Truncated two-mode Fock space. |n_a, n_b> lives at index n_a*(n_max_b+1) + n_b,
/// so mode A is the slow index.
class HilbertSpec {
public:
    constexpr HilbertSpec() = default;
    HilbertSpec(int n_max_a, int n_max_b) : n_max_a_(n_max_a), n_max_b_(n_max_b) {
        if (n_max_a < 0 || n_max_b < 0)
            throw ParameterError("HilbertSpec: photon-number cutoffs must be non-negative, got (" +
                                 std::to_string(n_max_a) + ", " + std::to_string(n_max_b) + ")");
    }

    constexpr int n_max_a() const { return n_max_a_; }
    constexpr int n_max_b() const { return n_max_b_; }
    constexpr int cutoff(Mode mode) const { return mode == Mode::A ? n_max_a_ : n_max_b_; }

    constexpr Eigen::Index dim() const {
        return static_cast<Eigen::Index>(n_max_a_ + 1) * (n_max_b_ + 1);
    }

    constexpr Eigen::Index index(int n_a, int n_b) const {
        return static_cast<Eigen::Index>(n_a) * (n_max_b_ + 1) + n_b;
    }

    constexpr std::pair<int, int> occupation(Eigen::Index index) const {
        return {static_cast<int>(index / (n_max_b_ + 1)), static_cast<int>(index % (n_max_b_ + 1))};
    }

    constexpr bool contains(int n_a, int n_b) const {
        return n_a >= 0 && n_b >= 0 && n_a <= n_max_a_ && n_b <= n_max_b_;
    }

    friend constexpr bool operator==(const HilbertSpec&, const HilbertSpec&) = default;

private:
    // Default cutoff sits one level above the two-photon manifold.
    int n_max_a_ = 3;
    int n_max_b_ = 3;
};

/// Single-mode annihilation operator on {|0>, ..., |n_max>}: M(n-1, n) = sqrt(n).
template <typename Scalar = double>
OperatorMatrix<Scalar> destroy(int n_max) {
    if (n_max < 0)
        throw ParameterError("destroy: n_max must be non-negative");
    OperatorMatrix<Scalar> op = OperatorMatrix<Scalar>::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n)
        op(n - 1, n) = Complex<Scalar>(std::sqrt(static_cast<Scalar>(n)), 0);
    return op;
}

template <typename Scalar = double>
OperatorMatrix<Scalar> identity(Eigen::Index dim) {
    return OperatorMatrix<Scalar>::Identity(dim, dim);
}

/// Kronecker product; the left factor acts on the slow index.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& lhs, const Eigen::MatrixBase<DerivedB>& rhs) {
    using Scalar = typename DerivedA::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::kroneckerProduct(lhs.derived().eval(), rhs.derived().eval());
    return out;
}

/// Embed a single-mode operator on `mode`, identity on the other mode.
template <typename Derived>
auto mode_operator(const HilbertSpec& spec, Mode mode, const Eigen::MatrixBase<Derived>& op) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index expected = spec.cutoff(mode) + 1;
    if (op.rows() != expected || op.cols() != expected)
        throw DimensionError("mode_operator: operator is " + std::to_string(op.rows()) + "x" +
                             std::to_string(op.cols()) + " but mode " + (mode == Mode::A ? "A" : "B") +
                             " has dimension " + std::to_string(expected));
    if (mode == Mode::A)
        return tensor(op, Matrix::Identity(spec.n_max_b() + 1, spec.n_max_b() + 1));
    return tensor(Matrix::Identity(spec.n_max_a() + 1, spec.n_max_a() + 1), op);
}

/// Basis vector |n_a, n_b>.
template <typename Scalar = double>
StateVector<Scalar> basis_state(const HilbertSpec& spec, int n_a, int n_b) {
    if (!spec.contains(n_a, n_b))
        throw DimensionError("basis_state: |" + std::to_string(n_a) + "," + std::to_string(n_b) +
                             "> is outside the truncated space");
    StateVector<Scalar> v = StateVector<Scalar>::Zero(spec.dim());
    v(spec.index(n_a, n_b)) = Complex<Scalar>(1, 0);
    return v;
}

/// The annihilation operators a and b embedded in the two-mode space.
template <typename Scalar = double>
struct LadderOperators {
    OperatorMatrix<Scalar> a;
    OperatorMatrix<Scalar> b;

    explicit LadderOperators(const HilbertSpec& spec)
        : a(mode_operator(spec, Mode::A, destroy<Scalar>(spec.n_max_a()))),
          b(mode_operator(spec, Mode::B, destroy<Scalar>(spec.n_max_b()))) {}
};

}  // namespace photonmol

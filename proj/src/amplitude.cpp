#include "photonmol/amplitude.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "photonmol/errors.hpp"

namespace photonmol {

namespace {

using Matrix3 = Eigen::Matrix<cdouble, 3, 3>;
using Vector3 = Eigen::Matrix<cdouble, 3, 1>;
using Matrix5 = Eigen::Matrix<cdouble, 5, 5>;
using Vector5 = Eigen::Matrix<cdouble, 5, 1>;

constexpr cdouble kI{0.0, 1.0};
const double kSqrt2 = std::numbers::sqrt2;

void require_symmetric(const SystemParams& params, const char* who) {
    params.validate();
    if (!params.is_symmetric())
        throw ParameterError(std::string(who) +
                             ": closed form requires delta_a == delta_b and kappa_a == kappa_b, got " +
                             params.describe());
}

cdouble drive_a(const SystemParams& p) { return std::polar(p.eps_a, p.phi_a); }
cdouble drive_b(const SystemParams& p) { return std::polar(p.eps_b, p.phi_b); }

// Rows: c20, c02, c11 equations; columns: (c20, c11, c02).
Matrix3 two_photon_matrix(const SystemParams& p) {
    const double d = p.delta_a;
    const double k = p.kappa_a;
    const double j = p.coupling_j;
    Matrix3 m;
    m << 2.0 * d + 2.0 * p.u_a - kI * k, kSqrt2 * j, 0.0,
         0.0, kSqrt2 * j, 2.0 * d + 2.0 * p.u_b - kI * k,
         kSqrt2 * j, 2.0 * d - kI * k, kSqrt2 * j;
    return m;
}

Vector3 two_photon_rhs(const SystemParams& p, cdouble c10, cdouble c01) {
    const cdouble ea = drive_a(p);
    const cdouble eb = drive_b(p);
    return Vector3(-kSqrt2 * ea * c10, -kSqrt2 * eb * c01, -(eb * c10 + ea * c01));
}

// Unknowns ordered (c10, c01, c11, c20, c02).
Matrix5 full_matrix(const SystemParams& p) {
    const cdouble ea = drive_a(p);
    const cdouble eb = drive_b(p);
    const double j = p.coupling_j;
    const cdouble za = p.delta_a - 0.5 * kI * p.kappa_a;
    const cdouble zb = p.delta_b - 0.5 * kI * p.kappa_b;
    Matrix5 m = Matrix5::Zero();
    // c10
    m(0, 0) = za;
    m(0, 1) = j;
    m(0, 2) = std::conj(eb);
    m(0, 3) = kSqrt2 * std::conj(ea);
    // c01
    m(1, 0) = j;
    m(1, 1) = zb;
    m(1, 2) = std::conj(ea);
    m(1, 4) = kSqrt2 * std::conj(eb);
    // c11
    m(2, 0) = eb;
    m(2, 1) = ea;
    m(2, 2) = za + zb;
    m(2, 3) = kSqrt2 * j;
    m(2, 4) = kSqrt2 * j;
    // c20
    m(3, 0) = kSqrt2 * ea;
    m(3, 2) = kSqrt2 * j;
    m(3, 3) = 2.0 * za + 2.0 * p.u_a;
    // c02
    m(4, 1) = kSqrt2 * eb;
    m(4, 2) = kSqrt2 * j;
    m(4, 4) = 2.0 * zb + 2.0 * p.u_b;
    return m;
}

Vector5 full_rhs(const SystemParams& p) {
    Vector5 rhs = Vector5::Zero();
    rhs(0) = -drive_a(p);
    rhs(1) = -drive_b(p);
    return rhs;
}

template <typename Matrix, typename Vector>
double relative_residual(const Matrix& m, const Vector& x, const Vector& rhs) {
    const double r = (m * x - rhs).norm();
    const double scale = rhs.norm();
    return scale > 0.0 ? r / scale : r;
}

}  // namespace

OnePhotonAmplitudes one_photon_amplitudes(const SystemParams& params) {
    require_symmetric(params, "one_photon_amplitudes");
    const cdouble z(params.delta_a, -0.5 * params.kappa_a);
    const double j = params.coupling_j;
    const cdouble denom = z * z - j * j;
    const cdouble ea = drive_a(params);
    const cdouble eb = drive_b(params);
    return {(eb * j - ea * z) / denom, (ea * j - eb * z) / denom};
}

TwoPhotonAmplitudes two_photon_amplitudes(const SystemParams& params, cdouble c10, cdouble c01) {
    require_symmetric(params, "two_photon_amplitudes");
    const Matrix3 m = two_photon_matrix(params);
    const cdouble det = m.determinant();
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (!(std::abs(det) >= 1e-14 * norm * norm * norm))
        throw SolverError("two_photon_amplitudes: singular two-photon system at " + params.describe());
    const Vector3 x = m.partialPivLu().solve(two_photon_rhs(params, c10, c01));
    return {x(0), x(1), x(2)};
}

AmplitudeSet hierarchy_amplitudes(const SystemParams& params) {
    const auto one = one_photon_amplitudes(params);
    const auto two = two_photon_amplitudes(params, one.c10, one.c01);
    return {cdouble(1.0, 0.0), one.c10, one.c01, two.c20, two.c11, two.c02};
}

AmplitudeSet full_truncated_steady(const SystemParams& params) {
    params.validate();
    const Matrix5 m = full_matrix(params);
    const Eigen::FullPivLU<Matrix5> lu(m);
    if (!lu.isInvertible() || !(lu.rcond() >= 1e-14))
        throw SolverError("full_truncated_steady: singular amplitude system at " + params.describe());
    const Vector5 rhs = full_rhs(params);
    Vector5 x = lu.solve(rhs);
    x += lu.solve(Vector5(rhs - m * x));
    return {cdouble(1.0, 0.0), x(0), x(1), x(3), x(2), x(4)};
}

std::optional<double> g2_approx(const AmplitudeSet& amps) {
    const double n = std::norm(amps.c10);
    if (!(n > 0.0))
        return std::nullopt;
    return 2.0 * std::norm(amps.c20) / (n * n);
}

double mean_photon_approx(const AmplitudeSet& amps) { return std::norm(amps.c10); }

AmplitudeResiduals amplitude_residuals(const SystemParams& params, const AmplitudeSet& amps) {
    AmplitudeResiduals out;
    const cdouble ea = drive_a(params);
    const cdouble eb = drive_b(params);
    const double j = params.coupling_j;
    {
        Eigen::Matrix<cdouble, 2, 2> m;
        m << params.delta_a - 0.5 * kI * params.kappa_a, j,
             j, params.delta_b - 0.5 * kI * params.kappa_b;
        const Eigen::Matrix<cdouble, 2, 1> x(amps.c10, amps.c01);
        const Eigen::Matrix<cdouble, 2, 1> rhs(-ea * amps.c00, -eb * amps.c00);
        out.one_photon = relative_residual(m, x, rhs);
    }
    if (params.is_symmetric()) {
        const Vector3 x(amps.c20, amps.c11, amps.c02);
        out.two_photon = relative_residual(two_photon_matrix(params), x,
                                           two_photon_rhs(params, amps.c10, amps.c01));
    }
    {
        const Vector5 x(amps.c10, amps.c01, amps.c11, amps.c20, amps.c02);
        out.full = relative_residual(full_matrix(params), x, Vector5(amps.c00 * full_rhs(params)));
    }
    return out;
}

}  // namespace photonmol

#include "photonmol/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "photonmol/errors.hpp"

namespace photonmol {

void SystemParams::validate() const {
    const double fields[] = {delta_a, delta_b, coupling_j, u_a, u_b, eps_a,
                             eps_b,   phi_a,   phi_b,      kappa_a, kappa_b};
    for (double v : fields)
        if (!std::isfinite(v))
            throw ParameterError("non-finite parameter: " + describe());
    if (!(kappa_a > 0.0) || !(kappa_b > 0.0))
        throw ParameterError("dissipation rates must be positive: " + describe());
    if (eps_a < 0.0 || eps_b < 0.0)
        throw ParameterError("drive strengths must be non-negative (phases carry the sign): " +
                             describe());
    if (coupling_j < 0.0)
        throw ParameterError("coupling J must be non-negative: " + describe());
}

SystemParams SystemParams::swapped_modes() const {
    SystemParams s = *this;
    std::swap(s.delta_a, s.delta_b);
    std::swap(s.u_a, s.u_b);
    std::swap(s.eps_a, s.eps_b);
    std::swap(s.phi_a, s.phi_b);
    std::swap(s.kappa_a, s.kappa_b);
    return s;
}

bool SystemParams::is_symmetric() const {
    auto close = [](double x, double y) {
        return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    return close(kappa_a, kappa_b) && close(delta_a, delta_b);
}

std::string SystemParams::describe() const {
    std::ostringstream os;
    os.precision(10);
    os << "{delta_a=" << delta_a << ", delta_b=" << delta_b << ", j=" << coupling_j
       << ", u_a=" << u_a << ", u_b=" << u_b << ", eps_a=" << eps_a << ", eps_b=" << eps_b
       << ", phi_a=" << phi_a << ", phi_b=" << phi_b << ", kappa_a=" << kappa_a
       << ", kappa_b=" << kappa_b << "}";
    return os.str();
}

double wrap_phase(double angle) {
    constexpr double pi = std::numbers::pi;
    double w = std::remainder(angle, 2.0 * pi);  // [-pi, pi]
    if (w <= -pi)
        w += 2.0 * pi;
    return w;
}

DriveRatios drive_ratios(const SystemParams& params) {
    if (params.eps_a == 0.0 && params.eps_b == 0.0)
        throw ParameterError("drive ratios undefined: both drive strengths are zero");
    DriveRatios r;
    r.eta = params.eps_b == 0.0 ? std::numeric_limits<double>::infinity()
                                : params.eps_a / params.eps_b;
    r.phi = wrap_phase(params.phi_a - params.phi_b);
    return r;
}

SystemParams SymmetricSetting::to_params() const {
    SystemParams p;
    p.delta_a = p.delta_b = delta;
    p.coupling_j = coupling_j;
    p.u_a = p.u_b = u;
    p.eps_a = eps_a;
    p.eps_b = eta_inv * eps_a;
    p.phi_a = phi;
    p.phi_b = 0.0;
    p.kappa_a = p.kappa_b = kappa;
    return p;
}

}  // namespace photonmol

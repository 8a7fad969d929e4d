#pragma once

#include <complex>
#include <optional>

#include "photonmol/params.hpp"

namespace photonmol {

using cdouble = std::complex<double>;

/// Coefficients of |0,0>, |1,0>, |0,1>, |2,0>, |1,1>, |0,2> in the weak-drive
/// expansion of the steady state, normalized to c00 = 1.
struct AmplitudeSet {
    cdouble c00{1.0, 0.0};
    cdouble c10{}, c01{};
    cdouble c20{}, c11{}, c02{};

    /// Relabel A <-> B.
    AmplitudeSet swapped_modes() const { return {c00, c01, c10, c02, c11, c20}; }
};

struct OnePhotonAmplitudes {
    cdouble c10;
    cdouble c01;
};

struct TwoPhotonAmplitudes {
    cdouble c20;
    cdouble c11;
    cdouble c02;
};

/// Closed-form one-photon amplitudes, neglecting the two-photon feedback:
///   c10 = [eps_b e^{i phi_b} J - eps_a e^{i phi_a} z] / (z^2 - J^2),  z = delta - i kappa/2
/// and c01 with A and B exchanged. Requires equal detunings and dissipation rates.
OnePhotonAmplitudes one_photon_amplitudes(const SystemParams& params);

/// Two-photon amplitudes from the 3x3 steady-state system driven by the given
/// one-photon amplitudes. Requires equal detunings and dissipation rates.
TwoPhotonAmplitudes two_photon_amplitudes(const SystemParams& params, cdouble c10, cdouble c01);

/// one_photon_amplitudes followed by two_photon_amplitudes.
AmplitudeSet hierarchy_amplitudes(const SystemParams& params);

/// Steady state of the full truncated amplitude equations (all five non-vacuum
/// amplitudes solved together with c00 = 1), keeping the terms by which two-photon
/// amplitudes feed back into the one-photon ones. Handles unequal detunings and
/// dissipation rates.
AmplitudeSet full_truncated_steady(const SystemParams& params);

/// g2_a ~ 2|c20|^2 / |c10|^4; empty when c10 vanishes.
std::optional<double> g2_approx(const AmplitudeSet& amps);

/// <n_a> ~ |c10|^2.
double mean_photon_approx(const AmplitudeSet& amps);

/// Residuals of the defining linear equations, each relative to the norm of the
/// right-hand side of its system (absolute when that norm is zero).
struct AmplitudeResiduals {
    double one_photon = 0.0;
    double two_photon = 0.0;
    double full = 0.0;
};

/// Evaluates how well `amps` satisfies the hierarchy equations (one-photon 2x2 and
/// two-photon 3x3) and the full 5x5 system.
AmplitudeResiduals amplitude_residuals(const SystemParams& params, const AmplitudeSet& amps);

}  // namespace photonmol

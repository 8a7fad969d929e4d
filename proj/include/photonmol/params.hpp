#pragma once

#include <limits>
#include <string>

namespace photonmol {

/// Physical parameters of the driven two-mode Kerr system, rotating frame.
/// All rates and energies are in units of the common dissipation rate kappa.
struct SystemParams {
    double delta_a = 0.0;     ///< detuning of mode A from the drive
    double delta_b = 0.0;
    double coupling_j = 0.0;  ///< real inter-mode coupling J
    double u_a = 0.0;         ///< Kerr strength of mode A
    double u_b = 0.0;
    double eps_a = 0.0;       ///< drive amplitude on mode A (phase carried by phi_a)
    double eps_b = 0.0;
    double phi_a = 0.0;       ///< drive phase, radians
    double phi_b = 0.0;
    double kappa_a = 1.0;     ///< dissipation rate of mode A
    double kappa_b = 1.0;

    /// Throws ParameterError unless kappa_a, kappa_b > 0, eps_a, eps_b >= 0, j >= 0
    /// and every field is finite.
    void validate() const;

    /// The same system with the roles of modes A and B exchanged.
    SystemParams swapped_modes() const;

    /// True when kappa_a == kappa_b and delta_a == delta_b (up to rounding).
    bool is_symmetric() const;

    /// One-line rendering used in error messages.
    std::string describe() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Drive strength ratio eta = eps_a/eps_b and relative phase phi = phi_a - phi_b.
struct DriveRatios {
    double eta = 1.0;  ///< +infinity when eps_b == 0
    double phi = 0.0;  ///< wrapped to (-pi, pi]

    bool eta_is_infinite() const { return eta == std::numeric_limits<double>::infinity(); }
    double eta_inverse() const { return eta_is_infinite() ? 0.0 : 1.0 / eta; }
};

/// Throws ParameterError when both drives vanish.
DriveRatios drive_ratios(const SystemParams& params);

/// Wrap an angle into (-pi, pi].
double wrap_phase(double angle);

/// Parameters in the symmetric setting used throughout: equal detunings, equal
/// dissipation, equal Kerr strengths, eps_b = eta_inv * eps_a and phi_a - phi_b = phi
/// (with phi_b = 0).
struct SymmetricSetting {
    double kappa = 1.0;
    double coupling_j = 10.0;
    double delta = 0.0;
    double u = 0.0;
    double eps_a = 0.01;
    double eta_inv = 0.0;
    double phi = 0.0;

    SystemParams to_params() const;
};

}  // namespace photonmol

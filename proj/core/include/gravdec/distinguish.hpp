#pragma once

#include <span>

#include "gravdec/states.hpp"

namespace gravdec {

/// Single-mode fidelity (Bhattacharyya coefficient) between the conditional
/// environment states at separation dphi:
///   B = exp[-|alpha|^2 tanh(x/2) (1 - cos dphi)].
double fidelity_mode_phase(const DisplacedThermal& state, double dphi);

/// Single-mode fidelity at time t for the scenario's height separation.
double fidelity_mode_exact(const DisplacedThermal& state, double t,
                           const Scenario& sc);

/// Generic fidelity B(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)) via
/// Hermitian eigendecomposition. Eigenvalues within the PSD tolerance are
/// clipped to zero.
double fidelity_pair(const FockMatrix& rho, const FockMatrix& sigma);

/// Brute-force fidelity between rho and its number-phase rotation,
/// B(rho, e^{i dphi n} rho e^{-i dphi n}).
double fidelity_oracle(const FockMatrix& rho, double dphi);

/// log B over a macrofraction, compensated summation.
double log_fidelity_macrofraction(std::span<const DisplacedThermal> modes,
                                  double t, const Scenario& sc);

/// Product of per-mode fidelities over a macrofraction, computed in log
/// space; values below e^{-700} are reported as 0. Throws
/// std::invalid_argument on an empty macrofraction.
double fidelity_macrofraction(std::span<const DisplacedThermal> modes,
                              double t, const Scenario& sc);

/// Short-time Gaussian approximation
///   B ~ exp[-(t^2/8) (g dX / (hbar c^2))^2 sum_qfi].
double fidelity_short_time(double sum_qfi, double t, const Scenario& sc);

/// Distinguishability time tau_dst = sqrt8 hbar c^2 / (g |dX| sqrt(sum_qfi)).
/// Returns +infinity when the fraction carries no Fisher information.
double distinguishability_time(double sum_qfi, const Scenario& sc);

/// Distinguishability length dX_d = sqrt8 hbar c^2 / (g t sqrt(sum_qfi)).
/// Returns +infinity at t = 0.
double distinguishability_length(double sum_qfi, double t, const Scenario& sc);

/// Validity of the short-time fidelity regime: sum_qfi >= margin (8 hbar
/// omega_max)^2 (boundary inclusive).
RegimeCheck qfi_regime_valid(double sum_qfi, double omega_max,
                             const PhysicalConstants& k,
                             double margin = 100.0);

}  // namespace gravdec

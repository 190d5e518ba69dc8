#pragma once

#include <complex>
#include <span>

#include "gravdec/states.hpp"

namespace gravdec {

/// Single-mode decoherence factor modulus as a function of the accumulated
/// phase dphi:
///   |G| = |G_th| exp[-|alpha|^2 |G_th|^2 coth(x/2) (1 - cos dphi)],
///   |G_th| = [1 + 2 nbar (nbar+1) (1 - cos dphi)]^{-1/2}.
double gamma_mode_phase(const DisplacedThermal& state, double dphi);

/// Single-mode decoherence factor modulus at time t for the scenario's
/// height separation.
double gamma_mode_exact(const DisplacedThermal& state, double t,
                        const Scenario& sc);

/// Brute-force per-mode decoherence factor tr(e^{i dphi n} rho), complex.
std::complex<double> gamma_mode_oracle(const FockMatrix& rho, double dphi);

/// log |Gamma| over an unobserved fraction, accumulated with compensated
/// summation so the result is independent of mode order to roundoff.
double log_gamma_fraction(std::span<const DisplacedThermal> modes, double t,
                          const Scenario& sc);

/// Product of per-mode moduli over an unobserved fraction, computed in log
/// space. Values below e^{-700} are reported as 0 (see log_gamma_fraction to
/// detect the underflow). Throws std::invalid_argument on an empty fraction.
double gamma_fraction(std::span<const DisplacedThermal> modes, double t,
                      const Scenario& sc);

/// Short-time Gaussian approximation
///   |Gamma| ~ exp[-(g dX / (sqrt2 hbar c^2))^2 sum_variance t^2],
/// where sum_variance is the cumulative energy variance over the fraction.
double gamma_short_time(double sum_variance, double t, const Scenario& sc);

/// Decoherence time tau_dec = sqrt2 hbar c^2 / (g |dX| sqrt(sum_variance)).
/// Returns +infinity for a stationary (zero-variance) environment.
double decoherence_time(double sum_variance, const Scenario& sc);

/// Coherence length dX_c = sqrt2 hbar c^2 / (g t sqrt(sum_variance)).
/// Returns +infinity at t = 0.
double coherence_length(double sum_variance, double t, const Scenario& sc);

/// Validity of the short-time Gaussian: sum_variance >= margin (2 hbar
/// omega_max)^2 (boundary inclusive). The returned ratio is sum_variance /
/// (2 hbar omega_max)^2.
RegimeCheck short_time_valid(double sum_variance, double omega_max,
                             const PhysicalConstants& k,
                             double margin = 100.0);

/// Underflow floor used by the fraction products.
inline constexpr double log_underflow_floor = -700.0;

}  // namespace gravdec

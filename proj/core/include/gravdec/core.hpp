#pragma once

#include <cmath>
#include <stdexcept>

namespace gravdec {

/// SI constants used by every formula in the library. Defaults are the
/// CODATA 2018 values; g is the conventional laboratory value.
struct PhysicalConstants {
    double g = 9.81;                ///< gravitational acceleration [m/s^2]
    double c = 299792458.0;         ///< speed of light [m/s]
    double hbar = 1.054571817e-34;  ///< reduced Planck constant [J s]
    double kB = 1.380649e-23;       ///< Boltzmann constant [J/K]

    /// Redshift coupling scale g/c^2 [1/m].
    double coupling() const { return g / (c * c); }

    void validate() const {
        if (!(g > 0.0) || !(c > 0.0) || !(hbar > 0.0) || !(kB > 0.0))
            throw std::invalid_argument(
                "PhysicalConstants: all fields must be strictly positive");
    }
};

/// A height-separation scenario. delta_x may carry either sign; every
/// closed form depends on it only through |delta_x| or delta_x^2.
struct Scenario {
    double delta_x = 0.0;  ///< height separation X' - X [m]
    PhysicalConstants constants{};
};

/// Result of a "much greater than" regime check: the tested ratio plus the
/// verdict against the configured margin.
struct RegimeCheck {
    bool valid = false;
    double ratio = 0.0;
};

/// Gravitationally red-shifted frequency omega(X) = (1 + gX/c^2) omega.
inline double redshifted_frequency(double omega, double x,
                                   const PhysicalConstants& k) {
    return (1.0 + k.coupling() * x) * omega;
}

/// Phase difference accumulated between heights X and X' = X + delta_x:
/// dphi = g |delta_x| omega t / c^2.
inline double phase(double omega, double t, const Scenario& s) {
    return s.constants.coupling() * std::abs(s.delta_x) * omega * t;
}

/// 1 - cos(dphi) evaluated as 2 sin^2(dphi/2) for small-angle accuracy.
inline double one_minus_cos(double dphi) {
    const double h = std::sin(0.5 * dphi);
    return 2.0 * h * h;
}

}  // namespace gravdec

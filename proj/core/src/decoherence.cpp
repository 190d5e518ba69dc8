#include "gravdec/decoherence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gravdec {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Kahan-compensated accumulator; makes fraction products independent of
// reduction order to roundoff.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double gamma_mode_phase(const DisplacedThermal& state, double dphi) {
    const double x = one_minus_cos(dphi);
    const double gth =
        1.0 / std::sqrt(1.0 + 2.0 * state.nbar * (state.nbar + 1.0) * x);
    return gth * std::exp(-std::norm(state.alpha) * gth * gth *
                          coth_half_beta(state.nbar) * x);
}

double gamma_mode_exact(const DisplacedThermal& state, double t,
                        const Scenario& sc) {
    if (t < 0.0) throw std::invalid_argument("gamma_mode_exact: t must be >= 0");
    return gamma_mode_phase(state, phase(state.omega, t, sc));
}

std::complex<double> gamma_mode_oracle(const FockMatrix& rho, double dphi) {
    std::complex<double> g{0.0, 0.0};
    for (int n = 0; n < rho.dim(); ++n)
        g += std::polar(1.0, dphi * n) * rho.entries()(n, n);
    return g;
}

double log_gamma_fraction(std::span<const DisplacedThermal> modes, double t,
                          const Scenario& sc) {
    if (modes.empty())
        throw std::invalid_argument("log_gamma_fraction: empty fraction");
    CompensatedSum acc;
    for (const auto& m : modes) acc.add(std::log(gamma_mode_exact(m, t, sc)));
    return acc.sum;
}

double gamma_fraction(std::span<const DisplacedThermal> modes, double t,
                      const Scenario& sc) {
    const double lg = log_gamma_fraction(modes, t, sc);
    return lg < log_underflow_floor ? 0.0 : std::exp(lg);
}

double gamma_short_time(double sum_variance, double t, const Scenario& sc) {
    if (sum_variance < 0.0)
        throw std::invalid_argument("gamma_short_time: negative variance");
    const auto& k = sc.constants;
    const double a = k.coupling() * sc.delta_x / (std::sqrt(2.0) * k.hbar);
    return std::exp(-a * a * sum_variance * t * t);
}

double decoherence_time(double sum_variance, const Scenario& sc) {
    if (sum_variance <= 0.0) return inf;
    const auto& k = sc.constants;
    return std::sqrt(2.0) * k.hbar /
           (k.coupling() * std::abs(sc.delta_x) * std::sqrt(sum_variance));
}

double coherence_length(double sum_variance, double t, const Scenario& sc) {
    if (t <= 0.0 || sum_variance <= 0.0) return inf;
    const auto& k = sc.constants;
    return std::sqrt(2.0) * k.hbar /
           (k.coupling() * t * std::sqrt(sum_variance));
}

RegimeCheck short_time_valid(double sum_variance, double omega_max,
                             const PhysicalConstants& k, double margin) {
    if (!(omega_max > 0.0) || sum_variance < 0.0)
        throw std::invalid_argument("short_time_valid: bad inputs");
    const double scale = 2.0 * k.hbar * omega_max;
    const double ratio = sum_variance / (scale * scale);
    return {ratio >= margin, ratio};
}

}  // namespace gravdec

#include "gravdec/distinguish.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "gravdec/decoherence.hpp"

namespace gravdec {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

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

double fidelity_mode_phase(const DisplacedThermal& state, double dphi) {
    return std::exp(-std::norm(state.alpha) * tanh_half_beta(state.nbar) *
                    one_minus_cos(dphi));
}

double fidelity_mode_exact(const DisplacedThermal& state, double t,
                           const Scenario& sc) {
    if (t < 0.0)
        throw std::invalid_argument("fidelity_mode_exact: t must be >= 0");
    return fidelity_mode_phase(state, phase(state.omega, t, sc));
}

double fidelity_pair(const FockMatrix& rho, const FockMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("fidelity_pair: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
    const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd sqrt_rho = es.eigenvectors() *
                                      lambda.cwiseSqrt().asDiagonal() *
                                      es.eigenvectors().adjoint();
    const Eigen::MatrixXcd sandwiched = sqrt_rho * sigma.entries() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(
        0.5 * (sandwiched + sandwiched.adjoint().eval()),
        Eigen::EigenvaluesOnly);
    return inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double fidelity_oracle(const FockMatrix& rho, double dphi) {
    return fidelity_pair(rho, rotate_number_phase(rho, dphi));
}

double log_fidelity_macrofraction(std::span<const DisplacedThermal> modes,
                                  double t, const Scenario& sc) {
    if (modes.empty())
        throw std::invalid_argument(
            "log_fidelity_macrofraction: empty macrofraction");
    CompensatedSum acc;
    for (const auto& m : modes)
        acc.add(-std::norm(m.alpha) * tanh_half_beta(m.nbar) *
                one_minus_cos(phase(m.omega, t, sc)));
    return acc.sum;
}

double fidelity_macrofraction(std::span<const DisplacedThermal> modes,
                              double t, const Scenario& sc) {
    const double lb = log_fidelity_macrofraction(modes, t, sc);
    return lb < log_underflow_floor ? 0.0 : std::exp(lb);
}

double fidelity_short_time(double sum_qfi, double t, const Scenario& sc) {
    if (sum_qfi < 0.0)
        throw std::invalid_argument("fidelity_short_time: negative QFI");
    const auto& k = sc.constants;
    const double a = k.coupling() * sc.delta_x / k.hbar;
    return std::exp(-0.125 * a * a * sum_qfi * t * t);
}

double distinguishability_time(double sum_qfi, const Scenario& sc) {
    if (sum_qfi <= 0.0) return inf;
    const auto& k = sc.constants;
    return std::sqrt(8.0) * k.hbar /
           (k.coupling() * std::abs(sc.delta_x) * std::sqrt(sum_qfi));
}

double distinguishability_length(double sum_qfi, double t,
                                 const Scenario& sc) {
    if (t <= 0.0 || sum_qfi <= 0.0) return inf;
    const auto& k = sc.constants;
    return std::sqrt(8.0) * k.hbar / (k.coupling() * t * std::sqrt(sum_qfi));
}

RegimeCheck qfi_regime_valid(double sum_qfi, double omega_max,
                             const PhysicalConstants& k, double margin) {
    if (!(omega_max > 0.0) || sum_qfi < 0.0)
        throw std::invalid_argument("qfi_regime_valid: bad inputs");
    const double scale = 8.0 * k.hbar * omega_max;
    const double ratio = sum_qfi / (scale * scale);
    return {ratio >= margin, ratio};
}

}  // namespace gravdec

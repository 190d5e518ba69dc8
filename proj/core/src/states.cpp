#include "gravdec/states.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace gravdec {

double nbar_from_temperature(double omega, double temperature,
                             const PhysicalConstants& k) {
    if (!(omega > 0.0))
        throw std::invalid_argument("nbar_from_temperature: omega must be > 0");
    if (!(temperature > 0.0))
        throw std::domain_error(
            "nbar_from_temperature: temperature must be > 0");
    // 1/expm1 keeps full precision for hbar omega << kB T and underflows
    // cleanly to 0 in the opposite regime.
    return 1.0 / std::expm1(k.hbar * omega / (k.kB * temperature));
}

FockMatrix::FockMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
        throw std::invalid_argument("FockMatrix: entries must be square");
    const double herm =
        (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > hermiticity_tol)
        throw std::invalid_argument("FockMatrix: entries not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < psd_tol)
        throw std::invalid_argument(
            "FockMatrix: entries not positive semidefinite");
}

namespace {

// Smallest d with thermal tail (nbar/(nbar+1))^d < half_eps.
int thermal_cutoff(double nbar, double half_eps) {
    if (nbar <= 0.0) return 1;
    const double r = nbar / (nbar + 1.0);
    const int d = static_cast<int>(std::ceil(std::log(half_eps) / std::log(r)));
    return std::max(d, 1);
}

// Smallest d with Poisson(|alpha|^2) tail mass beyond d-1 below half_eps.
int coherent_cutoff(double alpha_sq, double half_eps) {
    if (alpha_sq <= 0.0) return 1;
    double term = std::exp(-alpha_sq);
    double cum = term;
    int d = 1;
    while (1.0 - cum >= half_eps && d < 100000) {
        term *= alpha_sq / d;
        cum += term;
        ++d;
    }
    return d;
}

Eigen::MatrixXcd build_displaced_thermal(const DisplacedThermal& s, int dim,
                                         int padding) {
    const int n = dim + padding;
    Eigen::VectorXd thermal(n);
    if (s.nbar <= 0.0) {
        thermal.setZero();
        thermal(0) = 1.0;
    } else {
        const double r = s.nbar / (s.nbar + 1.0);
        double w = 1.0 / (s.nbar + 1.0);
        for (int i = 0; i < n; ++i) {
            thermal(i) = w;
            w *= r;
        }
    }
    Eigen::MatrixXcd rho = thermal.cast<std::complex<double>>().asDiagonal();
    if (s.alpha != std::complex<double>{0.0, 0.0}) {
        // exact matrix exponential of alpha a^dag - alpha^* a on the padded
        // space; the padding absorbs edge leakage before the crop below
        Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(n, n);
        for (int m = 1; m < n; ++m) {
            const double root = std::sqrt(static_cast<double>(m));
            gen(m, m - 1) = s.alpha * root;
            gen(m - 1, m) = -std::conj(s.alpha) * root;
        }
        const Eigen::MatrixXcd disp = gen.exp();
        rho = disp * rho * disp.adjoint();
    }
    Eigen::MatrixXcd cropped = rho.topLeftCorner(dim, dim);
    return 0.5 * (cropped + cropped.adjoint().eval());
}

}  // namespace

FockMatrix to_fock(const DisplacedThermal& state, double epsilon,
                   int hard_cap) {
    if (!(epsilon > 0.0) || epsilon > 1e-3)
        throw std::invalid_argument("to_fock: epsilon must be in (0, 1e-3]");
    if (state.nbar < 0.0)
        throw std::invalid_argument("to_fock: nbar must be >= 0");
    const double half = 0.5 * epsilon;
    int dim = thermal_cutoff(state.nbar, half) +
              coherent_cutoff(std::norm(state.alpha), half) - 1;
    for (;;) {
        if (dim > hard_cap)
            throw std::length_error(
                "to_fock: required truncation dimension exceeds hard cap");
        Eigen::MatrixXcd rho = build_displaced_thermal(state, dim, 8);
        if (rho.trace().real() >= 1.0 - epsilon) return FockMatrix(std::move(rho));
        dim = dim + dim / 4 + 8;
    }
}

FockMatrix to_fock_with_dim(const DisplacedThermal& state, int dim,
                            int padding) {
    if (dim < 1 || padding < 0)
        throw std::invalid_argument("to_fock_with_dim: bad dimensions");
    if (state.nbar < 0.0)
        throw std::invalid_argument("to_fock_with_dim: nbar must be >= 0");
    return FockMatrix(build_displaced_thermal(state, dim, padding));
}

Eigen::VectorXd fock_energies(int dim, double omega,
                              const PhysicalConstants& k) {
    Eigen::VectorXd h(dim);
    for (int n = 0; n < dim; ++n) h(n) = k.hbar * omega * n;
    return h;
}

FockMatrix rotate_number_phase(const FockMatrix& rho, double dphi) {
    const int d = rho.dim();
    Eigen::VectorXcd u(d);
    for (int n = 0; n < d; ++n)
        u(n) = std::polar(1.0, dphi * n);
    Eigen::MatrixXcd out =
        u.asDiagonal() * rho.entries() * u.conjugate().asDiagonal();
    return FockMatrix(0.5 * (out + out.adjoint().eval()));
}

double energy_variance(const DisplacedThermal& state,
                       const PhysicalConstants& k) {
    const double e = k.hbar * state.omega;
    return e * e * (state.nbar * (state.nbar + 1.0) +
                    std::norm(state.alpha) * coth_half_beta(state.nbar));
}

double thermal_variance(const DisplacedThermal& state,
                        const PhysicalConstants& k) {
    const double e = k.hbar * state.omega;
    return e * e * state.nbar * (state.nbar + 1.0);
}

double qfi(const DisplacedThermal& state, const PhysicalConstants& k) {
    const double e = k.hbar * state.omega;
    return 4.0 * e * e * std::norm(state.alpha) * tanh_half_beta(state.nbar);
}

double qfi_generic(const FockMatrix& rho, const Eigen::VectorXd& h_diag) {
    if (h_diag.size() != rho.dim())
        throw std::invalid_argument("qfi_generic: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
    Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
    // <l_n| H |l_m> with H diagonal in the Fock basis
    const Eigen::MatrixXcd h_eig = es.eigenvectors().adjoint() *
                                   h_diag.asDiagonal() * es.eigenvectors();
    constexpr double floor = 1e-14;
    double f = 0.0;
    const int d = rho.dim();
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            const double sum = lambda(n) + lambda(m);
            if (sum < floor) continue;
            const double diff = lambda(n) - lambda(m);
            f += diff * diff / sum * std::norm(h_eig(n, m));
        }
    }
    return 2.0 * f;
}

}  // namespace gravdec

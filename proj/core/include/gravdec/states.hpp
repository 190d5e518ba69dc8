#pragma once

#include <complex>

#include <Eigen/Dense>

#include "gravdec/core.hpp"

namespace gravdec {

/// A displaced thermal oscillator state D(alpha) rho_th D(alpha)^dagger,
/// parameterized by the mode frequency, the mean thermal occupation nbar
/// and the displacement amplitude alpha.
struct DisplacedThermal {
    double omega = 0.0;                    ///< mode frequency [rad/s]
    double nbar = 0.0;                     ///< mean thermal occupation, >= 0
    std::complex<double> alpha{0.0, 0.0};  ///< displacement amplitude
};

/// Bose-Einstein occupation 1/(e^{hbar omega / kB T} - 1).
/// Stable in the deep quantum regime hbar omega >> kB T (underflows to 0).
double nbar_from_temperature(double omega, double temperature,
                             const PhysicalConstants& k);

// With nbar = 1/(e^x - 1) and x = hbar omega / (kB T):
//   coth(x/2) = 2 nbar + 1,   tanh(x/2) = 1/(2 nbar + 1).
// All temperature-dependent closed forms go through these identities so that
// states specified directly by nbar never need a temperature.
inline double coth_half_beta(double nbar) { return 2.0 * nbar + 1.0; }
inline double tanh_half_beta(double nbar) { return 1.0 / (2.0 * nbar + 1.0); }

/// A truncated Fock-space density matrix. Validates hermiticity (1e-12) and
/// positive semidefiniteness (eigenvalues >= -1e-10) on construction. The
/// trace may fall short of 1 by the truncation tail.
class FockMatrix {
  public:
    explicit FockMatrix(Eigen::MatrixXcd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    double trace() const { return entries_.trace().real(); }

    static constexpr double hermiticity_tol = 1e-12;
    static constexpr double psd_tol = -1e-10;

  private:
    Eigen::MatrixXcd entries_;
};

/// Truncated Fock representation of a displaced thermal state. The cutoff is
/// the smallest dimension whose estimated thermal and coherent tails are each
/// below epsilon/2, grown further if the realized trace deficit still exceeds
/// epsilon. Throws std::length_error if the required dimension exceeds
/// hard_cap.
FockMatrix to_fock(const DisplacedThermal& state, double epsilon = 1e-10,
                   int hard_cap = 512);

/// Same construction at an explicitly chosen truncation dimension.
FockMatrix to_fock_with_dim(const DisplacedThermal& state, int dim,
                            int padding = 8);

/// Oscillator energies hbar omega n for n = 0..dim-1 (zero-point dropped).
Eigen::VectorXd fock_energies(int dim, double omega,
                              const PhysicalConstants& k);

/// Conjugation by the number-phase unitary: entries_{mn} -> e^{i dphi (m-n)}
/// entries_{mn}. This is e^{i dphi n} rho e^{-i dphi n}.
FockMatrix rotate_number_phase(const FockMatrix& rho, double dphi);

/// Energy variance of the displaced thermal state [J^2]:
///   (hbar omega)^2 nbar (nbar+1) + (hbar omega |alpha|)^2 coth(x/2).
double energy_variance(const DisplacedThermal& state,
                       const PhysicalConstants& k);

/// Thermal part (hbar omega)^2 nbar (nbar+1) of the energy variance [J^2].
double thermal_variance(const DisplacedThermal& state,
                        const PhysicalConstants& k);

/// Closed-form quantum Fisher information of the displaced thermal state with
/// respect to its own Hamiltonian [J^2]: 4 (hbar omega |alpha|)^2 tanh(x/2).
double qfi(const DisplacedThermal& state, const PhysicalConstants& k);

/// Quantum Fisher information of an arbitrary Fock-space state via
/// eigendecomposition:
///   F = 2 sum_{m,n} (l_n - l_m)^2 / (l_n + l_m) |<l_n|H|l_m>|^2,
/// with H diagonal in the Fock basis (entries h_diag [J]). Pairs with
/// l_n + l_m below 1e-14 are skipped (removable singularity).
double qfi_generic(const FockMatrix& rho, const Eigen::VectorXd& h_diag);

}  // namespace gravdec

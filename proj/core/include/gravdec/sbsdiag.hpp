#pragma once

#include <cstddef>
#include <vector>

#include "gravdec/ensemble.hpp"

namespace gravdec {

/// Extended state of the center of mass restricted to a finite position grid
/// plus the observed environment modes: position weights, the coherence
/// matrix rho_0(X_k, X_l) Gamma_t(X_l - X_k), and per-(position, mode)
/// conditional environment states U_t(X_k) rho_i U_t(X_k)^dagger.
struct DiscreteExtendedState {
    std::vector<double> positions;  ///< grid points X_k [m]
    std::vector<double> weights;    ///< pointer probabilities p_0(X_k)
    Eigen::MatrixXcd coherences;    ///< rho_0(X_k, X_l) * Gamma_t
    /// conditional_env[k][i]: observed mode i (macrofractions concatenated)
    /// at position k
    std::vector<std::vector<FockMatrix>> conditional_env;
    std::vector<std::size_t> macro_sizes;  ///< observed modes per macrofraction
    double time = 0.0;
};

/// Build the discrete extended state at time t. Oracle scale only: throws
/// std::length_error when K^2 * cutoff^2 exceeds max_elements. The coherence
/// factor is the complex product of per-mode oracle traces over the
/// unobserved fraction at separation X_l - X_k.
DiscreteExtendedState build_extended(const std::vector<double>& positions,
                                     const std::vector<double>& weights,
                                     const Eigen::MatrixXcd& init_coherences,
                                     const EnvironmentPartition& partition,
                                     double t, const PhysicalConstants& k,
                                     int cutoff = 32,
                                     std::size_t max_elements = 1u << 26);

/// Proximity of an extended state to the spectrum broadcast form.
/// coherence_residue: max_{k != l} |coherences(k,l)| / sqrt(w_k w_l);
/// distinguishability_residue: max over macrofractions and position pairs of
/// the product of per-mode conditional-state fidelities. Both must fall below
/// their thresholds for sbs_proximate.
struct SbsDiagnostics {
    double coherence_residue = 0.0;
    double distinguishability_residue = 0.0;
    double coherence_threshold = 0.1;
    double distinguishability_threshold = 0.1;
    bool sbs_proximate = false;
};

SbsDiagnostics sbs_distance(const DiscreteExtendedState& state,
                            double coherence_threshold = 0.1,
                            double distinguishability_threshold = 0.1);

}  // namespace gravdec

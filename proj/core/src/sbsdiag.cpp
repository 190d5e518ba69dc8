#include "gravdec/sbsdiag.hpp"

#include <cmath>
#include <stdexcept>

namespace gravdec {

DiscreteExtendedState build_extended(const std::vector<double>& positions,
                                     const std::vector<double>& weights,
                                     const Eigen::MatrixXcd& init_coherences,
                                     const EnvironmentPartition& partition,
                                     double t, const PhysicalConstants& k,
                                     int cutoff, std::size_t max_elements) {
    const std::size_t K = positions.size();
    if (K < 2)
        throw std::invalid_argument("build_extended: need at least 2 positions");
    if (weights.size() != K)
        throw std::invalid_argument("build_extended: weights/positions mismatch");
    if (init_coherences.rows() != static_cast<Eigen::Index>(K) ||
        init_coherences.cols() != static_cast<Eigen::Index>(K))
        throw std::invalid_argument("build_extended: coherence matrix must be KxK");
    if (t < 0.0) throw std::invalid_argument("build_extended: t must be >= 0");
    if (cutoff < 1) throw std::invalid_argument("build_extended: bad cutoff");

    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw std::invalid_argument("build_extended: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("build_extended: weights must sum to 1");
    if ((init_coherences - init_coherences.adjoint()).cwiseAbs().maxCoeff() >
        1e-12)
        throw std::invalid_argument(
            "build_extended: coherence matrix not Hermitian");
    for (std::size_t i = 0; i < K; ++i)
        if (std::abs(init_coherences(i, i) - weights[i]) > 1e-12)
            throw std::invalid_argument(
                "build_extended: coherence diagonal must equal weights");

    const std::size_t d = static_cast<std::size_t>(cutoff);
    if (K * K * d * d > max_elements)
        throw std::length_error("build_extended: K^2 dim^2 exceeds budget");

    std::vector<FockMatrix> unobs;
    unobs.reserve(partition.unobserved.size());
    for (const auto& m : partition.unobserved)
        unobs.push_back(to_fock_with_dim(m, cutoff));

    DiscreteExtendedState st;
    st.positions = positions;
    st.weights = weights;
    st.time = t;

    // complex Gamma over the unobserved fraction at separation X_l - X_k;
    // Gamma(-dX) = conj(Gamma(dX)) keeps the matrix Hermitian
    st.coherences = init_coherences;
    const double rate = k.coupling() * t;
    for (std::size_t kk = 0; kk < K; ++kk) {
        for (std::size_t ll = kk + 1; ll < K; ++ll) {
            const double dx = positions[ll] - positions[kk];
            std::complex<double> g{1.0, 0.0};
            for (std::size_t u = 0; u < unobs.size(); ++u)
                g *= gamma_mode_oracle(
                    unobs[u], rate * dx * partition.unobserved[u].omega);
            st.coherences(kk, ll) *= g;
            st.coherences(ll, kk) *= std::conj(g);
        }
    }

    // Conditional states per (position, observed mode). The position
    // independent free rotation e^{-i omega t n} is factored out of
    // U_t(X) = e^{-i omega(X) t n}; only the gravitational part
    // e^{-i (g X / c^2) omega t n} is applied. The dropped factor is common
    // to all positions, so every diagnostic below is unchanged, and the
    // numerics avoid evaluating phases of order omega*t.
    st.conditional_env.resize(K);
    for (const auto& mac : partition.macrofractions)
        st.macro_sizes.push_back(mac.size());
    for (std::size_t kk = 0; kk < K; ++kk) {
        for (const auto& mac : partition.macrofractions) {
            for (const auto& m : mac) {
                const FockMatrix rho = to_fock_with_dim(m, cutoff);
                const double dphi = -rate * positions[kk] * m.omega;
                st.conditional_env[kk].push_back(
                    rotate_number_phase(rho, dphi));
            }
        }
    }
    return st;
}

SbsDiagnostics sbs_distance(const DiscreteExtendedState& state,
                            double coherence_threshold,
                            double distinguishability_threshold) {
    const std::size_t K = state.positions.size();
    SbsDiagnostics d;
    d.coherence_threshold = coherence_threshold;
    d.distinguishability_threshold = distinguishability_threshold;

    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t l = k + 1; l < K; ++l) {
            const double wkl = state.weights[k] * state.weights[l];
            if (wkl <= 0.0) continue;
            d.coherence_residue =
                std::max(d.coherence_residue,
                         std::abs(state.coherences(k, l)) / std::sqrt(wkl));
        }
    }

    if (state.macro_sizes.empty() || state.conditional_env.empty()) {
        d.distinguishability_residue = 1.0;  // nothing observed, no records
    } else {
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = k + 1; l < K; ++l) {
                std::size_t off = 0;
                for (std::size_t ms : state.macro_sizes) {
                    double b = 1.0;
                    for (std::size_t i = off; i < off + ms; ++i)
                        b *= fidelity_pair(state.conditional_env[k][i],
                                           state.conditional_env[l][i]);
                    d.distinguishability_residue =
                        std::max(d.distinguishability_residue, b);
                    off += ms;
                }
            }
        }
    }

    d.sbs_proximate = d.coherence_residue < coherence_threshold &&
                      d.distinguishability_residue <
                          distinguishability_threshold;
    return d;
}

}  // namespace gravdec

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gravdec/decoherence.hpp"
#include "gravdec/distinguish.hpp"

namespace gravdec {

/// Distribution of mode frequencies [rad/s].
///
/// Uniform draws use the top 53 bits of the raw 64-bit output, so the stream
/// is reproducible across platforms for a given generator seed. Discrete
/// lists are assigned round-robin (mode i of a fraction gets values[i % n]),
/// which keeps small hand-specified setups deterministic.
struct FrequencyDistribution {
    enum class Kind { Uniform, Discrete, Single };

    Kind kind = Kind::Single;
    double lo = 0.0, hi = 0.0;       // Uniform
    std::vector<double> values;      // Discrete
    double value = 0.0;              // Single

    static FrequencyDistribution uniform(double lo, double hi);
    static FrequencyDistribution discrete(std::vector<double> values);
    static FrequencyDistribution single(double omega);

    void validate() const;
    double draw(std::size_t index, std::mt19937_64& rng) const;
};

/// Per-mode state template: the displacement amplitude plus either nbar
/// directly or a temperature from which nbar(omega, T) is derived per mode.
/// If both are given, nbar wins.
struct StateTemplate {
    std::complex<double> alpha{0.0, 0.0};
    std::optional<double> nbar;
    std::optional<double> temperature;

    DisplacedThermal resolve(double omega, const PhysicalConstants& k) const;
};

/// Disjoint assignment of environment modes: the unobserved fraction driving
/// decoherence and the observed macrofractions carrying which-position
/// information.
struct EnvironmentPartition {
    std::vector<DisplacedThermal> unobserved;
    std::vector<std::vector<DisplacedThermal>> macrofractions;
};

/// Draw an environment partition. Deterministic for a given seed: fraction f
/// uses an mt19937_64 substream seeded by one splitmix64 step of
/// seed + (f+1) * 0x9E3779B97F4A7C15 (f = 0 for the unobserved fraction,
/// f = 1.. for the macrofractions), so fractions are independent and the
/// layout is stable under changes to other fractions' sizes.
EnvironmentPartition sample_partition(
    const FrequencyDistribution& unobserved_dist,
    const FrequencyDistribution& observed_dist, int n_perp, int n_mac,
    int n_fractions, const StateTemplate& tmpl, std::uint64_t seed,
    const PhysicalConstants& k);

/// Convenience overload drawing both fractions from the same distribution
/// (still with independent substreams).
EnvironmentPartition sample_partition(const FrequencyDistribution& dist,
                                      int n_perp, int n_mac, int n_fractions,
                                      const StateTemplate& tmpl,
                                      std::uint64_t seed,
                                      const PhysicalConstants& k);

/// Empirical mean energy variance over the unobserved fraction [J^2].
double mean_variance(const EnvironmentPartition& p,
                     const PhysicalConstants& k);

/// Empirical mean QFI over all macrofraction modes [J^2].
double mean_qfi(const EnvironmentPartition& p, const PhysicalConstants& k);

/// Cumulative energy variance of the unobserved fraction [J^2].
double sum_variance(const EnvironmentPartition& p, const PhysicalConstants& k);

/// Cumulative QFI of macrofraction index f [J^2].
double sum_qfi(const EnvironmentPartition& p, std::size_t fraction,
               const PhysicalConstants& k);

/// Time grid specification; Log requires t_min > 0.
struct TimeGrid {
    enum class Kind { Linear, Log };
    Kind kind = Kind::Linear;
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 2000;

    std::vector<double> times() const;
};

/// Time series of |Gamma| and per-macrofraction B plus the derived scales.
/// tau_dst, dx_d and the QFI regime check are computed from the first
/// macrofraction (all macrofractions are drawn from the same distribution).
struct SweepResult {
    std::vector<double> times;
    std::vector<double> gamma;
    std::vector<std::vector<double>> b_mac;  // [macrofraction][time]
    std::vector<double> dx_c;
    std::vector<double> dx_d;
    double tau_dec = 0.0;
    double tau_dst = 0.0;
    RegimeCheck gamma_regime;
    RegimeCheck b_regime;
    bool gamma_underflow = false;
};

/// Evaluate the exact fraction products on a strictly increasing,
/// nonnegative time grid.
SweepResult run_sweep(const EnvironmentPartition& p, const Scenario& sc,
                      std::span<const double> times);

}  // namespace gravdec

#include "gravdec/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gravdec {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t fraction) {
    return std::mt19937_64(
        splitmix64(seed + (fraction + 1) * 0x9E3779B97F4A7C15ULL));
}

// portable uniform double in [0, 1): top 53 bits of the raw draw
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

FrequencyDistribution FrequencyDistribution::uniform(double lo, double hi) {
    FrequencyDistribution d;
    d.kind = Kind::Uniform;
    d.lo = lo;
    d.hi = hi;
    d.validate();
    return d;
}

FrequencyDistribution FrequencyDistribution::discrete(
    std::vector<double> values) {
    FrequencyDistribution d;
    d.kind = Kind::Discrete;
    d.values = std::move(values);
    d.validate();
    return d;
}

FrequencyDistribution FrequencyDistribution::single(double omega) {
    FrequencyDistribution d;
    d.kind = Kind::Single;
    d.value = omega;
    d.validate();
    return d;
}

void FrequencyDistribution::validate() const {
    switch (kind) {
        case Kind::Uniform:
            if (!(lo > 0.0) || !(lo < hi))
                throw std::invalid_argument(
                    "FrequencyDistribution: uniform requires 0 < lo < hi");
            break;
        case Kind::Discrete:
            if (values.empty())
                throw std::invalid_argument(
                    "FrequencyDistribution: discrete requires values");
            for (double v : values)
                if (!(v > 0.0))
                    throw std::invalid_argument(
                        "FrequencyDistribution: frequencies must be > 0");
            break;
        case Kind::Single:
            if (!(value > 0.0))
                throw std::invalid_argument(
                    "FrequencyDistribution: frequency must be > 0");
            break;
    }
}

double FrequencyDistribution::draw(std::size_t index,
                                   std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::Uniform:
            return lo + unit_uniform(rng) * (hi - lo);
        case Kind::Discrete:
            return values[index % values.size()];
        case Kind::Single:
            return value;
    }
    throw std::logic_error("FrequencyDistribution: bad kind");
}

DisplacedThermal StateTemplate::resolve(double omega,
                                        const PhysicalConstants& k) const {
    DisplacedThermal s;
    s.omega = omega;
    s.alpha = alpha;
    if (nbar) {
        if (*nbar < 0.0)
            throw std::invalid_argument("StateTemplate: nbar must be >= 0");
        s.nbar = *nbar;
    } else if (temperature && *temperature > 0.0) {
        s.nbar = nbar_from_temperature(omega, *temperature, k);
    } else {
        s.nbar = 0.0;  // T = 0 (or unspecified): frozen mode
    }
    return s;
}

EnvironmentPartition sample_partition(
    const FrequencyDistribution& unobserved_dist,
    const FrequencyDistribution& observed_dist, int n_perp, int n_mac,
    int n_fractions, const StateTemplate& tmpl, std::uint64_t seed,
    const PhysicalConstants& k) {
    if (n_perp < 1 || n_mac < 1 || n_fractions < 1)
        throw std::invalid_argument("sample_partition: counts must be >= 1");
    unobserved_dist.validate();
    observed_dist.validate();

    EnvironmentPartition p;
    auto rng = substream(seed, 0);
    p.unobserved.reserve(n_perp);
    for (int i = 0; i < n_perp; ++i)
        p.unobserved.push_back(
            tmpl.resolve(unobserved_dist.draw(i, rng), k));
    p.macrofractions.resize(n_fractions);
    for (int f = 0; f < n_fractions; ++f) {
        auto frng = substream(seed, 1 + static_cast<std::uint64_t>(f));
        p.macrofractions[f].reserve(n_mac);
        for (int i = 0; i < n_mac; ++i)
            p.macrofractions[f].push_back(
                tmpl.resolve(observed_dist.draw(i, frng), k));
    }
    return p;
}

EnvironmentPartition sample_partition(const FrequencyDistribution& dist,
                                      int n_perp, int n_mac, int n_fractions,
                                      const StateTemplate& tmpl,
                                      std::uint64_t seed,
                                      const PhysicalConstants& k) {
    return sample_partition(dist, dist, n_perp, n_mac, n_fractions, tmpl, seed,
                            k);
}

double mean_variance(const EnvironmentPartition& p,
                     const PhysicalConstants& k) {
    if (p.unobserved.empty())
        throw std::invalid_argument("mean_variance: empty unobserved fraction");
    double s = 0.0;
    for (const auto& m : p.unobserved) s += energy_variance(m, k);
    return s / static_cast<double>(p.unobserved.size());
}

double mean_qfi(const EnvironmentPartition& p, const PhysicalConstants& k) {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& mac : p.macrofractions) {
        for (const auto& m : mac) s += qfi(m, k);
        n += mac.size();
    }
    if (n == 0)
        throw std::invalid_argument("mean_qfi: no macrofraction modes");
    return s / static_cast<double>(n);
}

double sum_variance(const EnvironmentPartition& p,
                    const PhysicalConstants& k) {
    double s = 0.0;
    for (const auto& m : p.unobserved) s += energy_variance(m, k);
    return s;
}

double sum_qfi(const EnvironmentPartition& p, std::size_t fraction,
               const PhysicalConstants& k) {
    if (fraction >= p.macrofractions.size())
        throw std::invalid_argument("sum_qfi: macrofraction index out of range");
    double s = 0.0;
    for (const auto& m : p.macrofractions[fraction]) s += qfi(m, k);
    return s;
}

std::vector<double> TimeGrid::times() const {
    if (points < 2)
        throw std::invalid_argument("TimeGrid: need at least 2 points");
    if (!(t_max > t_min))
        throw std::invalid_argument("TimeGrid: t_max must exceed t_min");
    if (t_min < 0.0)
        throw std::invalid_argument("TimeGrid: t_min must be >= 0");
    std::vector<double> ts(points);
    if (kind == Kind::Log) {
        if (!(t_min > 0.0))
            throw std::invalid_argument("TimeGrid: log grid needs t_min > 0");
        const double l0 = std::log(t_min), l1 = std::log(t_max);
        for (int i = 0; i < points; ++i)
            ts[i] = std::exp(l0 + (l1 - l0) * i / (points - 1));
    } else {
        for (int i = 0; i < points; ++i)
            ts[i] = t_min + (t_max - t_min) * i / (points - 1);
    }
    return ts;
}

SweepResult run_sweep(const EnvironmentPartition& p, const Scenario& sc,
                      std::span<const double> times) {
    if (p.unobserved.empty())
        throw std::invalid_argument("run_sweep: empty unobserved fraction");
    if (p.macrofractions.empty())
        throw std::invalid_argument("run_sweep: no macrofractions");
    for (const auto& mac : p.macrofractions)
        if (mac.empty())
            throw std::invalid_argument("run_sweep: empty macrofraction");
    if (times.empty() || times.front() < 0.0)
        throw std::invalid_argument("run_sweep: bad time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument(
                "run_sweep: time grid must be strictly increasing");

    const auto& k = sc.constants;
    SweepResult r;
    r.times.assign(times.begin(), times.end());
    const double sv = sum_variance(p, k);
    const double sq = sum_qfi(p, 0, k);
    r.tau_dec = decoherence_time(sv, sc);
    r.tau_dst = distinguishability_time(sq, sc);

    double omega_perp_max = 0.0;
    for (const auto& m : p.unobserved)
        omega_perp_max = std::max(omega_perp_max, m.omega);
    double omega_mac_max = 0.0;
    for (const auto& m : p.macrofractions[0])
        omega_mac_max = std::max(omega_mac_max, m.omega);
    r.gamma_regime = short_time_valid(sv, omega_perp_max, k);
    r.b_regime = qfi_regime_valid(sq, omega_mac_max, k);

    const std::size_t nt = times.size();
    r.gamma.resize(nt);
    r.dx_c.resize(nt);
    r.dx_d.resize(nt);
    r.b_mac.assign(p.macrofractions.size(), std::vector<double>(nt));
    for (std::size_t i = 0; i < nt; ++i) {
        const double t = times[i];
        const double lg = log_gamma_fraction(p.unobserved, t, sc);
        if (lg < log_underflow_floor) {
            r.gamma[i] = 0.0;
            r.gamma_underflow = true;
        } else {
            r.gamma[i] = std::exp(lg);
        }
        for (std::size_t f = 0; f < p.macrofractions.size(); ++f)
            r.b_mac[f][i] = fidelity_macrofraction(p.macrofractions[f], t, sc);
        r.dx_c[i] = coherence_length(sv, t, sc);
        r.dx_d[i] = distinguishability_length(sq, t, sc);
    }
    return r;
}

}  // namespace gravdec

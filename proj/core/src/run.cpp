#include "gravdec/run.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "gravdec/sbsdiag.hpp"

namespace gravdec {

namespace {

using nlohmann::json;

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

json oracle_report(const EnvironmentPartition& p, const Scenario& sc,
                   std::span<const double> times) {
    // Cross-check closed forms against the truncated Fock oracle on a
    // subsample: up to 4 modes per fraction, up to 12 time points.
    std::vector<double> ts;
    const std::size_t stride = std::max<std::size_t>(1, times.size() / 12);
    for (std::size_t i = 0; i < times.size(); i += stride)
        ts.push_back(times[i]);

    double max_gamma_dev = 0.0, max_b_dev = 0.0;
    const std::size_t nu = std::min<std::size_t>(4, p.unobserved.size());
    for (std::size_t i = 0; i < nu; ++i) {
        const auto& m = p.unobserved[i];
        const FockMatrix rho = to_fock(m);
        for (double t : ts) {
            const double dphi = phase(m.omega, t, sc);
            max_gamma_dev = std::max(
                max_gamma_dev, std::abs(gamma_mode_exact(m, t, sc) -
                                        std::abs(gamma_mode_oracle(rho, dphi))));
        }
    }
    const std::size_t no =
        std::min<std::size_t>(4, p.macrofractions[0].size());
    for (std::size_t i = 0; i < no; ++i) {
        const auto& m = p.macrofractions[0][i];
        const FockMatrix rho = to_fock(m);
        for (double t : ts) {
            const double dphi = phase(m.omega, t, sc);
            max_b_dev = std::max(max_b_dev,
                                 std::abs(fidelity_mode_exact(m, t, sc) -
                                          fidelity_oracle(rho, dphi)));
        }
    }
    json r;
    r["modes_checked_unobserved"] = nu;
    r["modes_checked_observed"] = no;
    r["times_checked"] = ts.size();
    r["max_gamma_abs_deviation"] = max_gamma_dev;
    r["max_fidelity_abs_deviation"] = max_b_dev;
    r["tolerance"] = 1e-6;
    r["within_tolerance"] = max_gamma_dev <= 1e-6 && max_b_dev <= 1e-6;
    return r;
}

}  // namespace

RunArtifacts run(const RunConfig& cfg, std::uint64_t seed,
                 const std::filesystem::path& out_dir, bool oracle_checks) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    const auto& k = cfg.scenario.constants;
    const EnvironmentPartition partition = sample_partition(
        cfg.freq_unobserved, cfg.freq_observed, cfg.n_unobserved, cfg.n_mac,
        cfg.n_fractions, cfg.state, seed, k);

    TimeGrid grid = cfg.grid;
    const double tau_dst =
        distinguishability_time(sum_qfi(partition, 0, k), cfg.scenario);
    const double tau_dec =
        decoherence_time(sum_variance(partition, k), cfg.scenario);
    if (cfg.auto_t_max) {
        if (std::isfinite(tau_dst))
            grid.t_max = 5.0 * tau_dst;
        else if (std::isfinite(tau_dec))
            grid.t_max = 5.0 * tau_dec;
        else
            throw ConfigError(
                "run: stationary environment, give time_grid.t_max explicitly");
    }
    const std::vector<double> times = grid.times();
    const SweepResult sweep = run_sweep(partition, cfg.scenario, times);

    RunArtifacts artifacts;
    artifacts.csv = out_dir / (cfg.name + "_sweep.csv");
    {
        std::ofstream csv(artifacts.csv);
        if (!csv)
            throw std::runtime_error("run: cannot write " +
                                     artifacts.csv.string());
        csv << "t,gamma_abs";
        for (std::size_t f = 1; f <= sweep.b_mac.size(); ++f)
            csv << ",b_mac_" << f;
        csv << "\n";
        for (std::size_t i = 0; i < sweep.times.size(); ++i) {
            csv << fmt17(sweep.times[i]) << ',' << fmt17(sweep.gamma[i]);
            for (const auto& b : sweep.b_mac) csv << ',' << fmt17(b[i]);
            csv << "\n";
        }
    }

    const double t_ref = cfg.reference_time.value_or(
        std::isfinite(sweep.tau_dst) ? sweep.tau_dst
                                     : times[times.size() / 2]);
    json summary;
    summary["name"] = cfg.name;
    summary["seed"] = seed;
    {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%016" PRIx64, config_hash(cfg));
        summary["config_hash"] = buf;
    }
    summary["n_unobserved"] = cfg.n_unobserved;
    summary["n_fractions"] = cfg.n_fractions;
    summary["n_mac"] = cfg.n_mac;
    summary["tau_dec"] = finite_or_null(sweep.tau_dec);
    summary["tau_dst"] = finite_or_null(sweep.tau_dst);
    summary["reference_time"] = t_ref;
    summary["dx_c"] = finite_or_null(
        coherence_length(sum_variance(partition, k), t_ref, cfg.scenario));
    summary["dx_d"] = finite_or_null(distinguishability_length(
        sum_qfi(partition, 0, k), t_ref, cfg.scenario));
    summary["short_time_ratio"] = sweep.gamma_regime.ratio;
    summary["short_time_valid"] = sweep.gamma_regime.valid;
    summary["qfi_ratio"] = sweep.b_regime.ratio;
    summary["qfi_regime_valid"] = sweep.b_regime.valid;
    summary["gamma_underflow"] = sweep.gamma_underflow;
    summary["t_max"] = grid.t_max;
    summary["points"] = grid.points;

    artifacts.summary = out_dir / (cfg.name + "_summary.json");
    {
        std::ofstream js(artifacts.summary);
        if (!js)
            throw std::runtime_error("run: cannot write " +
                                     artifacts.summary.string());
        js << summary.dump(2) << "\n";
    }

    if (oracle_checks) {
        const json report = oracle_report(partition, cfg.scenario, times);
        artifacts.oracle_report = out_dir / (cfg.name + "_oracle.json");
        std::ofstream js(*artifacts.oracle_report);
        if (!js)
            throw std::runtime_error("run: cannot write " +
                                     artifacts.oracle_report->string());
        js << report.dump(2) << "\n";
    }
    return artifacts;
}

}  // namespace gravdec

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gravdec/decoherence.hpp"
#include "gravdec/distinguish.hpp"

using namespace gravdec;

namespace {

const PhysicalConstants kSI{};
const Scenario kScenario{1e-6, {}};

double uni(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("fidelity_mode_exact boundary values") {
    const DisplacedThermal s{4.9e11, 2.2, {1.0, 0.0}};
    CHECK(fidelity_mode_exact(s, 0.0, kScenario) == 1.0);
    // a stationary (alpha = 0) mode encodes nothing
    const DisplacedThermal th{4.9e11, 2.2, {0.0, 0.0}};
    for (double t : {1e5, 1e9, 1e12})
        CHECK(fidelity_mode_exact(th, t, kScenario) == 1.0);
    CHECK_THROWS_AS(fidelity_mode_exact(s, -1.0, kScenario),
                    std::invalid_argument);
}

TEST_CASE("fidelity closed form at dphi = pi") {
    const DisplacedThermal s{5e11, 2.15, {1.0, 0.0}};
    const double pi = std::acos(-1.0);
    // exp[-2 tanh(beta hbar w / 2)] with tanh = 1/(2 nbar + 1)
    const double expected = std::exp(-2.0 / (2.0 * 2.15 + 1.0));
    CHECK(fidelity_mode_phase(s, pi) ==
          doctest::Approx(expected).epsilon(1e-12));
    const FockMatrix rho = to_fock(s);
    CHECK(fidelity_mode_phase(s, pi) ==
          doctest::Approx(fidelity_oracle(rho, pi)).epsilon(1e-6));
}

TEST_CASE("fidelity_oracle basics") {
    const FockMatrix rho = to_fock({1e11, 1.5, {0.7, 0.2}});
    CHECK(fidelity_oracle(rho, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
    // pure coherent state: B equals the overlap modulus
    const double a = 1.3;
    const FockMatrix coh = to_fock({1e11, 0.0, {a, 0.0}});
    for (double dphi : {0.4, 1.7, 3.0}) {
        const double overlap =
            std::exp(-a * a * (1.0 - std::cos(dphi)));
        CHECK(fidelity_oracle(coh, dphi) ==
              doctest::Approx(overlap).epsilon(1e-8));
    }
}

TEST_CASE("closed form vs oracle across random draws") {
    // this cross-check validates the whole displaced-thermal fidelity
    // derivation, not just the implementation
    std::mt19937_64 rng(23);
    for (int i = 0; i < 40; ++i) {
        const DisplacedThermal s{
            uni(rng, 1e11, 5e11), uni(rng, 0.0, 5.0),
            std::polar(uni(rng, 0.0, 2.0), uni(rng, 0.0, 6.28))};
        const FockMatrix rho = to_fock(s);
        const double dphi = uni(rng, 0.0, 2.0 * std::acos(-1.0));
        CHECK(fidelity_mode_phase(s, dphi) ==
              doctest::Approx(fidelity_oracle(rho, dphi)).epsilon(1e-6));
    }
}

TEST_CASE("fidelity bounds, periodicity, temperature monotonicity") {
    std::mt19937_64 rng(29);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int i = 0; i < 200; ++i) {
        const DisplacedThermal s{
            uni(rng, 1e11, 5e11), uni(rng, 0.0, 8.0),
            std::polar(uni(rng, 0.0, 2.0), uni(rng, 0.0, 6.28))};
        const double dphi = uni(rng, 0.0, 20.0);
        const double b = fidelity_mode_phase(s, dphi);
        CHECK(b > 0.0);
        CHECK(b <= 1.0);
        CHECK(b == doctest::Approx(fidelity_mode_phase(s, dphi + two_pi))
                       .epsilon(1e-10));
    }
    // B increases with nbar at fixed dphi, alpha
    for (double dphi : {0.3, 1.0, 3.0}) {
        double prev = 0.0;
        for (double nb : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
            const double b =
                fidelity_mode_phase({2e11, nb, {1.0, 0.0}}, dphi);
            CHECK(b > prev);
            prev = b;
        }
    }
}

TEST_CASE("pure-state coincidence: B equals |Gamma| at nbar = 0") {
    const DisplacedThermal s{3.6e11, 0.0, {1.0, 0.0}};
    for (int i = 0; i < 1000; ++i) {
        const double t = i * 3e8;
        CHECK(std::abs(fidelity_mode_exact(s, t, kScenario) -
                       gamma_mode_exact(s, t, kScenario)) <= 1e-12);
    }
}

TEST_CASE("high-temperature scaling of the information deficit") {
    // (1 - B) kB T / (hbar w) stays bounded as T grows at fixed dphi
    const double omega = 5e11;
    double ref = 0.0;
    for (double T : {1e2, 1e3, 1e4, 1e5}) {
        const double nb = nbar_from_temperature(omega, T, kSI);
        const double b = fidelity_mode_phase({omega, nb, {1.0, 0.0}}, 1.0);
        const double scaled = (1.0 - b) * kSI.kB * T / (kSI.hbar * omega);
        if (T == 1e2) ref = scaled;
        CHECK(scaled < 2.0 * ref);
        CHECK(scaled > 0.5 * ref);
    }
}

TEST_CASE("fidelity_macrofraction") {
    const DisplacedThermal s{4.9e11, 2.2, {1.0, 0.0}};
    const double t = 3e10;
    const std::vector<DisplacedThermal> one{s};
    CHECK(fidelity_macrofraction(one, t, kScenario) ==
          doctest::Approx(fidelity_mode_exact(s, t, kScenario))
              .epsilon(1e-14));
    const std::vector<DisplacedThermal> seven(7, s);
    CHECK(fidelity_macrofraction(seven, t, kScenario) ==
          doctest::Approx(std::pow(fidelity_mode_exact(s, t, kScenario), 7))
              .epsilon(1e-12));
    CHECK_THROWS_AS(
        fidelity_macrofraction(std::span<const DisplacedThermal>{}, t,
                               kScenario),
        std::invalid_argument);
}

TEST_CASE("macrofraction fidelity is multiplicative over unions") {
    std::mt19937_64 rng(31);
    std::vector<DisplacedThermal> a, b, both;
    for (int i = 0; i < 60; ++i) {
        DisplacedThermal m{uni(rng, 1e11, 5e11), uni(rng, 0.0, 5.0),
                          {uni(rng, -1.5, 1.5), uni(rng, -1.5, 1.5)}};
        (i % 2 ? a : b).push_back(m);
        both.push_back(m);
    }
    const double t = 5e9;
    CHECK(fidelity_macrofraction(both, t, kScenario) ==
          doctest::Approx(fidelity_macrofraction(a, t, kScenario) *
                          fidelity_macrofraction(b, t, kScenario))
              .epsilon(1e-12));
}

TEST_CASE("fidelity_short_time") {
    CHECK(fidelity_short_time(1e-44, 0.0, kScenario) == 1.0);
    // matched cumulative quantities: sum_qfi = 4 sum_variance makes the two
    // Gaussians coincide (coefficient algebra 4/8 = 1/2)
    const double sv = 3.3e-41;
    for (double t : {1e8, 7e8, 3e9})
        CHECK(fidelity_short_time(4.0 * sv, t, kScenario) ==
              doctest::Approx(gamma_short_time(sv, t, kScenario))
                  .epsilon(1e-13));
}

TEST_CASE("short-time fidelity error scales as dphi^4") {
    std::mt19937_64 rng(37);
    std::vector<DisplacedThermal> modes;
    double sum_f = 0.0, omega_max = 0.0;
    for (int i = 0; i < 400; ++i) {
        modes.push_back({uni(rng, 1e11, 5e11), uni(rng, 0.0, 5.0),
                         {1.0, 0.0}});
        sum_f += qfi(modes.back(), kSI);
        omega_max = std::max(omega_max, modes.back().omega);
    }
    const double rate = kScenario.constants.coupling() *
                        std::abs(kScenario.delta_x) * omega_max;
    double prev_err = 0.0;
    for (double dphi_max : {0.02, 0.01, 0.005}) {
        const double t = dphi_max / rate;
        const double exact = log_fidelity_macrofraction(modes, t, kScenario);
        const double gauss =
            std::log(fidelity_short_time(sum_f, t, kScenario));
        const double err = std::abs(exact - gauss);
        if (dphi_max == 0.02)
            CHECK(std::abs(std::exp(exact) - std::exp(gauss)) <= 1e-5);
        else
            CHECK(prev_err / err >= 12.0);
        prev_err = err;
    }
}

TEST_CASE("distinguishability time and length") {
    const double sq = 1.9e-45;
    const double tau = distinguishability_time(sq, kScenario);
    CHECK(fidelity_short_time(sq, tau, kScenario) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::isinf(distinguishability_time(0.0, kScenario)));

    const double t = 4e9;
    const double dxd = distinguishability_length(sq, t, kScenario);
    CHECK(distinguishability_length(sq, 2.0 * t, kScenario) ==
          doctest::Approx(0.5 * dxd).epsilon(1e-12));
    Scenario at{dxd, {}};
    CHECK(fidelity_short_time(sq, t, at) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::isinf(distinguishability_length(sq, 0.0, kScenario)));
}

TEST_CASE("tau_dst >= tau_dec and dX_d >= dX_c for shared mode sets") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<DisplacedThermal> modes;
        double sv = 0.0, sq = 0.0;
        for (int i = 0; i < 50; ++i) {
            modes.push_back(
                {uni(rng, 1e11, 5e11), uni(rng, 0.0, 5.0),
                 std::polar(uni(rng, 0.0, 2.0), uni(rng, 0.0, 6.28))});
            sv += energy_variance(modes.back(), kSI);
            sq += qfi(modes.back(), kSI);
        }
        if (sq == 0.0) continue;
        CHECK(distinguishability_time(sq, kScenario) >=
              decoherence_time(sv, kScenario));
        CHECK(distinguishability_length(sq, 1e9, kScenario) >=
              coherence_length(sv, 1e9, kScenario));
    }
}

TEST_CASE("qfi_regime_valid") {
    const double omega = 3e11;
    const double scale = 8.0 * kSI.hbar * omega;
    auto check = qfi_regime_valid(100.5 * scale * scale, omega, kSI);
    CHECK(check.valid);
    CHECK(check.ratio == doctest::Approx(100.5).epsilon(1e-12));
    CHECK_FALSE(qfi_regime_valid(99.0 * scale * scale, omega, kSI).valid);
    // alpha = 0 ensemble has zero QFI
    CHECK_FALSE(qfi_regime_valid(0.0, omega, kSI).valid);
}

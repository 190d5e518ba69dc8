#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gravdec/states.hpp"

using namespace gravdec;

namespace {

const PhysicalConstants kSI{};

// Fock-oracle moments tr(rho n^k)
double moment_n(const FockMatrix& rho, int power) {
    double m = 0.0;
    for (int n = 0; n < rho.dim(); ++n)
        m += std::pow(static_cast<double>(n), power) *
             rho.entries()(n, n).real();
    return m;
}

}  // namespace

TEST_CASE("nbar_from_temperature") {
    // frozen from 40-digit evaluation of 1/(e^{hbar omega / kB T} - 1)
    CHECK(nbar_from_temperature(5e11, 10.0, kSI) ==
          doctest::Approx(2.150155653849369).epsilon(1e-12));
    CHECK(nbar_from_temperature(5e11, 10.0, kSI) ==
          doctest::Approx(2.150).epsilon(1e-3));
    // asymptotic series kT/(hbar w) - 1/2 to 1%
    const double series = kSI.kB * 10.0 / (kSI.hbar * 1e11) - 0.5;
    CHECK(nbar_from_temperature(1e11, 10.0, kSI) ==
          doctest::Approx(series).epsilon(0.01));
    // frozen-mode limit: underflows cleanly to 0
    CHECK(nbar_from_temperature(1e13, 1e-3, kSI) == 0.0);
    CHECK_THROWS_AS(nbar_from_temperature(1e11, 0.0, kSI), std::domain_error);
    CHECK_THROWS_AS(nbar_from_temperature(1e11, -5.0, kSI),
                    std::domain_error);
}

TEST_CASE("to_fock ground state") {
    const FockMatrix rho = to_fock({1e11, 0.0, {0.0, 0.0}});
    CHECK(rho.entries()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("to_fock thermal diagonal matches the geometric weights") {
    const double nb = 2.15;
    const FockMatrix rho = to_fock({1e11, nb, {0.0, 0.0}});
    CHECK(rho.trace() >= 1.0 - 1e-10);
    for (int n = 0; n < std::min(rho.dim(), 20); ++n) {
        const double expected = std::pow(nb, n) / std::pow(nb + 1.0, n + 1);
        CHECK(rho.entries()(n, n).real() ==
              doctest::Approx(expected).epsilon(1e-12));
        for (int m = 0; m < n; ++m)
            CHECK(std::abs(rho.entries()(n, m)) < 1e-14);
    }
}

TEST_CASE("to_fock displaced thermal moments") {
    const DisplacedThermal s{1e11, 2.15, {1.0, 0.0}};
    const FockMatrix rho = to_fock(s);
    CHECK(rho.trace() >= 1.0 - 1e-10);
    // <n> = nbar + |alpha|^2
    CHECK(moment_n(rho, 1) == doctest::Approx(3.15).epsilon(1e-8));
    // <n^2> for the displaced thermal state:
    //   2 nbar^2 + nbar + |a|^2 (4 nbar + 1) + |a|^4
    const double nb = 2.15, a2 = 1.0;
    const double n2 = 2 * nb * nb + nb + a2 * (4 * nb + 1) + a2 * a2;
    CHECK(moment_n(rho, 2) == doctest::Approx(n2).epsilon(1e-8));
}

TEST_CASE("to_fock rejects bad inputs and oversized states") {
    CHECK_THROWS_AS(to_fock({1e11, -0.5, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(to_fock({1e11, 1.0, {0, 0}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(to_fock({1e11, 1.0, {0, 0}}, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(to_fock({1e11, 500.0, {0, 0}}, 1e-10, 64),
                    std::length_error);
}

TEST_CASE("FockMatrix validation") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.5, std::complex<double>(0.1, 0.2), 0.3, 0.5;
    CHECK_THROWS_AS(FockMatrix{bad}, std::invalid_argument);
    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Identity(2, 2);
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(FockMatrix{neg}, std::invalid_argument);
}

TEST_CASE("energy variance") {
    const double e = kSI.hbar * 1e11;
    CHECK(energy_variance({1e11, 0.0, {0, 0}}, kSI) == 0.0);
    // thermal part is the derived identity (hbar w)^2 nbar (nbar+1); check
    // against the Fock-oracle variance tr(rho H^2) - tr(rho H)^2
    {
        const DisplacedThermal s{1e11, 2.15, {0, 0}};
        const FockMatrix rho = to_fock(s);
        const double oracle =
            e * e * (moment_n(rho, 2) - moment_n(rho, 1) * moment_n(rho, 1));
        CHECK(energy_variance(s, kSI) ==
              doctest::Approx(e * e * 2.15 * 3.15).epsilon(1e-12));
        CHECK(energy_variance(s, kSI) ==
              doctest::Approx(oracle).epsilon(1e-8));
    }
    // coherent-state variance (hbar w)^2 |alpha|^2
    CHECK(energy_variance({1e11, 0.0, {1.0, 0.0}}, kSI) ==
          doctest::Approx(e * e).epsilon(1e-12));
    // full displaced thermal vs the oracle
    {
        const DisplacedThermal s{1e11, 2.15, {1.0, 0.0}};
        const FockMatrix rho = to_fock(s);
        const double oracle =
            e * e * (moment_n(rho, 2) - moment_n(rho, 1) * moment_n(rho, 1));
        CHECK(energy_variance(s, kSI) ==
              doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("closed-form QFI") {
    const double e = kSI.hbar * 5e11;
    CHECK(qfi({5e11, 3.7, {0, 0}}, kSI) == 0.0);
    CHECK(qfi({5e11, 0.0, {1.0, 0.0}}, kSI) ==
          doctest::Approx(4.0 * e * e).epsilon(1e-12));
    // tanh(beta hbar w / 2) = 1/(2 nbar + 1) at nbar = 2.150155653849369
    const double nb = nbar_from_temperature(5e11, 10.0, kSI);
    CHECK(qfi({5e11, nb, {1.0, 0.0}}, kSI) ==
          doctest::Approx(4.0 * e * e * 0.18866816342419232).epsilon(1e-10));
}

TEST_CASE("qfi_generic") {
    // diagonal state: F = 0
    {
        const FockMatrix rho = to_fock({1e11, 2.15, {0, 0}});
        CHECK(qfi_generic(rho, fock_energies(rho.dim(), 1e11, kSI)) ==
              doctest::Approx(0.0).epsilon(1e-20));
    }
    // pure coherent state: F = 4 (Delta H)^2
    {
        const DisplacedThermal s{1e11, 0.0, {1.0, 0.0}};
        const FockMatrix rho = to_fock_with_dim(s, 40);
        const double f = qfi_generic(rho, fock_energies(40, 1e11, kSI));
        CHECK(f == doctest::Approx(4.0 * energy_variance(s, kSI))
                       .epsilon(1e-6));
    }
    // displaced thermal: matches the closed form
    {
        const DisplacedThermal s{1e11, 2.15, {1.0, 0.0}};
        const FockMatrix rho = to_fock(s);
        const double f =
            qfi_generic(rho, fock_energies(rho.dim(), 1e11, kSI));
        CHECK(f == doctest::Approx(qfi(s, kSI)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(
        qfi_generic(to_fock({1e11, 1.0, {0, 0}}), Eigen::VectorXd::Zero(3)),
        std::invalid_argument);
}

TEST_CASE("gain-disturbance identity and QFI bound over random draws") {
    std::mt19937_64 rng(42);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 200; ++i) {
        const DisplacedThermal s{uni(5e10, 5e11), uni(0.0, 5.0),
                                 std::polar(uni(0.0, 2.0), uni(0.0, 6.28))};
        const double dv = energy_variance(s, kSI) - thermal_variance(s, kSI);
        const double f = qfi(s, kSI);
        const double rhs =
            4.0 * std::pow(kSI.hbar * s.omega * std::abs(s.alpha), 4);
        if (rhs > 0.0)
            CHECK(dv * f == doctest::Approx(rhs).epsilon(1e-12));
        else
            CHECK(dv * f == 0.0);
        CHECK(f <= 4.0 * energy_variance(s, kSI) * (1.0 + 1e-14));
    }
}

TEST_CASE("qfi_generic converges to the closed form as epsilon shrinks") {
    const DisplacedThermal s{1e11, 1.3, {0.8, 0.4}};
    const double closed = qfi(s, kSI);
    double prev = 1e300;
    for (double eps : {1e-6, 1e-8, 1e-10}) {
        const FockMatrix rho = to_fock(s, eps);
        const double err = std::abs(
            qfi_generic(rho, fock_energies(rho.dim(), 1e11, kSI)) - closed);
        CHECK(err <= prev * (1.0 + 1e-12));
        prev = err;
    }
    CHECK(prev / closed < 1e-6);
}

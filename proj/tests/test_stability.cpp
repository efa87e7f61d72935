#include <doctest.h>

#include <cmath>
#include <random>

#include "ncn/stability.hpp"

using Complex = std::complex<double>;

TEST_CASE("amplification factor closed values")
{
    CHECK(ncn::amplification_factor(0.0, 1.0, 1.0) == Complex{1.0, 0.0});
    const Complex q = ncn::amplification_factor(Complex{0.0, 1.0}, 1.0, 1.0);
    CHECK(q.real() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(q.imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(ncn::amplification_modulus_squared(Complex{0.0, 1.0}, 1.0, 1.0) == doctest::Approx(9.0).epsilon(1e-15));

    CHECK_THROWS_AS(ncn::amplification_factor(Complex{0.0, 2.0}, 1.0, 1.0), ncn::SingularInputError);
    CHECK_THROWS_AS(ncn::amplification_factor(Complex{0.0, 1.0}, 2.0, 1.0), ncn::SingularInputError);
    CHECK_THROWS_AS(ncn::amplification_factor(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ncn::amplification_factor(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("real eigenvalues give unimodular factors")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    for (int i = 0; i < 10000; ++i) {
        const double lambda = (i % 2 ? 1.0 : -1.0) * std::pow(10.0, mag(rng));
        CHECK(std::abs(std::abs(ncn::amplification_factor(lambda, 0.01, 1.0)) - 1.0) <= 1e-15);
        CHECK(ncn::spectral_condition(lambda, 0.01, 1e-6, 1.0));
        CHECK(ncn::min_kappa(lambda, 0.01, 1.0) == 0.0);
    }
}

TEST_CASE("modulus formula agrees with direct evaluation")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> re(-50.0, 50.0);
    std::uniform_real_distribution<double> im(-5.0, 5.0);
    std::uniform_real_distribution<double> logtau(-5.0, -1.0);
    for (int i = 0; i < 10000; ++i) {
        const Complex lambda{re(rng), im(rng)};
        const double tau = std::pow(10.0, logtau(rng));
        const double a = 0.5 + (i % 4);
        const double direct = std::norm(ncn::amplification_factor(lambda, tau, a));
        CHECK(std::abs(ncn::amplification_modulus_squared(lambda, tau, a) - direct) <= 1e-13 * direct);
    }
}

TEST_CASE("conjugate eigenvalues have reciprocal moduli")
{
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex lambda{d(rng), d(rng)};
        const double prod = std::abs(ncn::amplification_factor(lambda, 0.05, 1.0)) *
                            std::abs(ncn::amplification_factor(std::conj(lambda), 0.05, 1.0));
        CHECK(prod == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("spectral condition and its rewritten form")
{
    const Complex i{0.0, 1.0};
    CHECK_FALSE(ncn::spectral_condition(i, 1.0, 1.0, 1.0));
    CHECK(ncn::spectral_condition(i, 1.0, 2.0, 1.0));
    CHECK(ncn::rewritten_condition(i, 1.0, 2.0, 1.0));
    CHECK_FALSE(ncn::rewritten_condition(i, 1.0, 1.0, 1.0));
    CHECK(ncn::rewritten_condition(Complex{1.0, 1e-9}, 1e-3, 1.0, 1.0));
    CHECK_THROWS_AS(ncn::rewritten_condition(Complex{1.0, 0.0}, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ncn::rewritten_condition(Complex{1.0, -1.0}, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK(ncn::spectral_condition(Complex{3.0, -2.0}, 0.1, 1e-9, 1.0));

    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> logu(-4.0, 3.0);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    int disagreements = 0;
    for (int n = 0; n < 10000; ++n) {
        const Complex lambda{(sign(rng) < 0 ? -1.0 : 1.0) * std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng))};
        const double tau = std::pow(10.0, logu(rng) - 2.0);
        const double kappa = std::pow(10.0, logu(rng));
        const double a = std::pow(10.0, logu(rng) / 3.0);
        if (ncn::spectral_condition(lambda, tau, kappa, a) != ncn::rewritten_condition(lambda, tau, kappa, a)) {
            ++disagreements;
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("minimal growth rate")
{
    const Complex i{0.0, 1.0};
    CHECK(ncn::min_kappa(i, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ncn::min_kappa(-i, 1.0, 1.0) == 0.0);
    CHECK(ncn::min_kappa(5.0, 1.0, 1.0) == 0.0);

    // The condition holds exactly from min_kappa upwards.
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> d(0.01, 20.0);
    for (int n = 0; n < 1000; ++n) {
        const Complex lambda{d(rng), d(rng)};
        const double tau = d(rng) * 1e-3;
        const double k = ncn::min_kappa(lambda, tau, 1.0);
        CHECK(k > 0.0);
        CHECK(ncn::spectral_condition(lambda, tau, k * (1.0 + 1e-9), 1.0));
        CHECK_FALSE(ncn::spectral_condition(lambda, tau, k * (1.0 - 1e-9), 1.0));
        // Larger imaginary parts need larger growth rates.
        CHECK(ncn::min_kappa(lambda + Complex{0.0, 1.0}, tau, 1.0) > k);
    }
}

TEST_CASE("necessary condition constants")
{
    const auto c = ncn::necessary_condition(Complex{0.0, 1.0}, 1.0, 1.0, 1.0);
    CHECK(c.c0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.c1 == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-15));
    CHECK(c.c2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    const auto lower = ncn::necessary_condition(Complex{2.0, -0.3}, 1.5, 1.0, 1.0);
    const auto upper = ncn::necessary_condition(Complex{2.0, 0.3}, 1.5, 1.0, 1.0);
    CHECK(lower.c1 == upper.c1);
    CHECK(lower.c2 == upper.c2);
    CHECK(lower.c0 == upper.c0);

    CHECK_THROWS_AS(ncn::necessary_condition(Complex{2.0, 0.0}, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ncn::necessary_condition(Complex{2.0, 1.0}, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("spectral condition on the replicated family implies the necessary inequality")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(0.05, 5.0);
    std::uniform_real_distribution<double> logtau(-6.0, -1.0);
    std::uniform_int_distribution<int> copies(1, 200);
    const double kappa = 1.0;
    const double tau0 = 0.1;
    int holding = 0;
    for (int n = 0; n < 20000; ++n) {
        const Complex lambda0{d(rng), d(rng) * 0.1};
        const double h0 = d(rng);
        const int K = copies(rng);
        const double tau = std::pow(10.0, logtau(rng));
        const auto c = ncn::necessary_condition(lambda0, h0, 1.0, kappa);
        const Complex lambda = static_cast<double>(K) * static_cast<double>(K) * lambda0;
        if (ncn::spectral_condition(lambda, tau, kappa, 1.0)) {
            ++holding;
            CHECK(ncn::necessary_inequality_holds(c, tau, h0 / K, kappa, tau0));
        }
    }
    CHECK(holding > 1000);
}

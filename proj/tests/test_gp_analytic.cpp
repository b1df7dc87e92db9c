#include "doctest.h"

#include <cmath>

#include "roughcp/change_stats.hpp"
#include "roughcp/gp_analytic.hpp"
#include "oracles.hpp"

using namespace roughcp;

TEST_CASE("fbm_cov anchors: unit variance, zero at the origin, Brownian minimum") {
    for (double H : {0.2, 0.5, 0.8}) {
        CHECK(fbm_cov(1.0, 1.0, H) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(fbm_cov(0.0, 3.0, H) == doctest::Approx(0.0));
        CHECK(fbm_cov(2.0, 5.0, H) == fbm_cov(5.0, 2.0, H));
    }
    CHECK(fbm_cov(2.0, 5.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fbm_cov(7.0, 3.0, 0.5) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(fbm_cov(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fbm_cov(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fbm_cov(-1.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("fgn_autocorr anchors and pinned value") {
    CHECK(fgn_autocorr(0, 0.3) == doctest::Approx(1.0));
    for (long tau : {1L, 2L, 5L, 100L}) CHECK(fgn_autocorr(tau, 0.5) == doctest::Approx(0.0));
    CHECK(fgn_autocorr(1, 0.7) == doctest::Approx(0.3195079107728942).epsilon(1e-15));
    CHECK(fgn_autocorr(1, 0.7) == doctest::Approx(0.5 * (std::pow(2.0, 1.4) - 2.0)).epsilon(1e-15));
    CHECK(fgn_autocorr(-3, 0.7) == fgn_autocorr(3, 0.7));
    CHECK(fgn_autocorr(1, 0.3) < 0.0);  // anti-persistent
}

TEST_CASE("fgn_autocorr approaches its power-law asymptote") {
    CHECK(fgn_autocorr_asymptote(10, 0.5) == 0.0);

    CHECK(fgn_autocorr(1000, 0.7) / fgn_autocorr_asymptote(1000, 0.7) ==
          doctest::Approx(1.0).epsilon(1e-3));

    double prev_gap = std::numeric_limits<double>::infinity();
    for (long tau : {10L, 100L, 1000L, 10000L}) {
        const double ratio = fgn_autocorr(tau, 0.9) / fgn_autocorr_asymptote(tau, 0.9);
        const double gap = std::abs(ratio - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-6);
    CHECK_THROWS_AS(fgn_autocorr_asymptote(0, 0.7), std::invalid_argument);
}

TEST_CASE("change_prob_from_cov anchors") {
    CHECK(change_prob_from_cov(0.0, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    // perfectly correlated equal-variance increments never change direction
    CHECK(change_prob_from_cov(1.0, 1.0, 1.0) == doctest::Approx(0.0));
    // perfectly anti-correlated increments always change direction
    CHECK(change_prob_from_cov(-1.0, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(change_prob_from_cov(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(change_prob_from_cov(2.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(change_prob_from_cov(-2.0, 1.0, 1.0), std::invalid_argument);
    // tiny numerical overshoot of the radicand is clamped, not rejected
    CHECK(change_prob_from_cov(1.0 + 5e-13, 1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("fbm increment moments reproduce the closed-form change probability") {
    const double taus[] = {1.0, 7.0, 64.0};
    for (int i = 1; i <= 99; ++i) {
        const double H = i / 100.0;
        const double closed = fbm_change_prob(H);
        for (const double tau : taus) {
            const double var1 = fbm_cov(tau, tau, H) - 2 * fbm_cov(0.0, tau, H) + fbm_cov(0.0, 0.0, H);
            const double var2 = fbm_cov(2 * tau, 2 * tau, H) - 2 * fbm_cov(tau, 2 * tau, H) +
                                fbm_cov(tau, tau, H);
            const double cov = fbm_cov(tau, 2 * tau, H) - fbm_cov(tau, tau, H) -
                               fbm_cov(0.0, 2 * tau, H) + fbm_cov(0.0, tau, H);
            CHECK(change_prob_from_cov(cov, var1, var2) == doctest::Approx(closed).epsilon(1e-12));
        }
    }
}

TEST_CASE("fbm_change_prob anchors and pinned value") {
    CHECK(fbm_change_prob(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fbm_change_prob(0.7) == doctest::Approx(0.3964823998218414).epsilon(1e-15));
    CHECK(fbm_change_prob(1e-9) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(fbm_change_prob(1.0 - 1e-9) < 1e-4);
    double prev = 1.0;
    for (int i = 1; i <= 99; ++i) {
        const double p = fbm_change_prob(i / 100.0);
        CHECK(p < prev);  // rougher processes change direction more often
        prev = p;
    }
}

TEST_CASE("hurst_of_delay_from_variance inverts the variance ratio") {
    CHECK(hurst_of_delay_from_variance(1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double H : {0.2, 0.5, 0.9}) {
        const double v1 = std::pow(3.0, 2 * H), v2 = std::pow(6.0, 2 * H);
        CHECK(hurst_of_delay_from_variance(v1, v2) == doctest::Approx(H).epsilon(1e-13));
    }
    CHECK_THROWS_AS(hurst_of_delay_from_variance(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hurst_of_delay_from_variance(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("change probability and variance ratio give the same exponent") {
    // For a stationary-increment Gaussian process, h(p(tau)) must equal
    // (1/2) log2(Var(X_2tau)/Var(X_tau)); exercised here on random moment
    // triples (v, c) with |c| < v so both formulas are defined.
    for (int i = 0; i < 50; ++i) {
        const double v = 0.5 + 0.1 * i;
        const double c = v * (-0.95 + 1.9 * (i / 49.0) * 0.99);
        const double lhs = h_transform(change_prob_from_cov(c, v, v));
        const double rhs = hurst_of_delay_from_variance(v, 2 * v + 2 * c);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("cauchy_increment_autocorr anchors, pinned value, and tail") {
    CHECK(cauchy_increment_autocorr(0, 1.0, 0.5) == doctest::Approx(1.0));
    CHECK(cauchy_increment_autocorr(3, 2.0, 0.8) == doctest::Approx(0.3981071705534972).epsilon(1e-15));
    const double tail = cauchy_increment_autocorr(10000, 2.0, 0.8) * std::pow(10000.0, 0.8);
    CHECK(tail == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_THROWS_AS(cauchy_increment_autocorr(1, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cauchy_increment_autocorr(1, 2.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cauchy_increment_autocorr(1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cauchy_increment_autocorr(1, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("variance_from_autocorr handles white noise and fGn exactly") {
    const auto zero = [](Eigen::Index) { return 0.0; };
    for (Eigen::Index n : {1, 2, 10, 1000}) CHECK(variance_from_autocorr(n, zero) == doctest::Approx(n));

    for (double H : {0.3, 0.6, 0.8}) {
        const auto ac = [H](Eigen::Index k) { return fgn_autocorr(static_cast<long>(k), H); };
        for (Eigen::Index n : {1, 2, 3, 16, 61, 256, 2048}) {
            CHECK(variance_from_autocorr(n, ac) ==
                  doctest::Approx(std::pow(static_cast<double>(n), 2 * H)).epsilon(1e-9));
        }
    }
}

TEST_CASE("variance_from_autocorr matches the full double sum") {
    const GaussianModel cauchy = GaussianModel::make_cauchy(1.0, 0.6, 2.0);
    const auto ac = [&](Eigen::Index k) { return cauchy.autocorr(static_cast<long>(k)); };
    for (long n : {1L, 2L, 7L, 33L, 64L}) {
        const double fast = variance_from_autocorr(n, ac, cauchy.var1);
        const double slow = oracle::variance_double_sum(n, ac, cauchy.var1);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
    }
}

TEST_CASE("variance_from_autocorr rejects inconsistent autocorrelations") {
    const auto bad = [](Eigen::Index) { return -1.1; };
    CHECK_THROWS_AS(variance_from_autocorr(2, bad), std::runtime_error);
    CHECK_THROWS_AS(variance_from_autocorr(0, [](Eigen::Index) { return 0.0; }), std::invalid_argument);
    CHECK_THROWS_AS(variance_from_autocorr(2, [](Eigen::Index) { return 0.0; }, 0.0),
                    std::invalid_argument);
}

TEST_CASE("GaussianModel factories validate and expose the implied exponent") {
    const GaussianModel fbm = GaussianModel::make_fbm(0.7);
    CHECK(fbm.hurst() == 0.7);
    CHECK(fbm.autocorr(1) == doctest::Approx(fgn_autocorr(1, 0.7)));

    const GaussianModel cauchy = GaussianModel::make_cauchy(2.0, 0.8);
    CHECK(cauchy.hurst() == doctest::Approx(0.6));
    CHECK(cauchy.autocorr(3) == doctest::Approx(0.3981071705534972));

    CHECK_THROWS_AS(GaussianModel::make_fbm(1.5), std::invalid_argument);
    CHECK_THROWS_AS(GaussianModel::make_cauchy(3.0, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(GaussianModel::make_cauchy(2.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(GaussianModel::make_fbm(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("theorem1_h_of_delay is exactly H for fbm at every delay") {
    const GaussianModel fbm = GaussianModel::make_fbm(0.37);
    for (long tau : {1L, 2L, 16L, 1024L}) CHECK(theorem1_h_of_delay(fbm, tau) == 0.37);
    CHECK_THROWS_AS(theorem1_h_of_delay(fbm, 0), std::invalid_argument);
}

TEST_CASE("theorem1_h_of_delay reproduces the pinned Cauchy dyadic table") {
    const GaussianModel m = GaussianModel::make_cauchy(2.0, 0.8);
    const double expected[] = {
        0.9069093832821397, 0.8513873197421535, 0.795176521889959,  0.7489173802182276,
        0.7142247062161662, 0.6888898542534407, 0.6703153037276134, 0.6564780629853776,
        0.6459677686252266, 0.6378302493603915, 0.6314195683696283,
    };
    for (int k = 0; k <= 10; ++k)
        CHECK(theorem1_h_of_delay(m, 1L << k) == doctest::Approx(expected[k]).epsilon(1e-12));

    const GaussianModel rough = GaussianModel::make_cauchy(1.0, 0.8);
    CHECK(theorem1_h_of_delay(rough, 1024) == doctest::Approx(0.6377880680363404).epsilon(1e-12));
}

TEST_CASE("the Cauchy dyadic exponents decrease toward the implied limit") {
    const GaussianModel m = GaussianModel::make_cauchy(2.0, 0.8);
    double prev = 1.0;
    for (int k = 0; k <= 10; ++k) {
        const double h = theorem1_h_of_delay(m, 1L << k);
        CHECK(h < prev);
        CHECK(h > m.hurst());
        prev = h;
    }
}

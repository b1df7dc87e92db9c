#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "roughcp/change_stats.hpp"
#include "oracles.hpp"

using namespace roughcp;

namespace {

Eigen::ArrayXd to_array(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

HeightField random_field(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    HeightField f;
    f.values.resize(rows, cols);
    GaussianSampler g(seed);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) f.values(i, j) = g.uniform();
    return f;
}

}  // namespace

TEST_CASE("h_transform hits the exact anchor points") {
    CHECK(h_transform(0.0) == 1.0);
    CHECK(h_transform(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(h_transform(2.0 / 3.0)) < 1e-15);
    CHECK(std::isinf(h_transform(1.0)));
    CHECK(h_transform(1.0) < 0.0);
    CHECK(std::isnan(h_transform(std::numeric_limits<double>::quiet_NaN())));
    CHECK_THROWS_AS(h_transform(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(h_transform(1.01), std::invalid_argument);
}

TEST_CASE("h_transform is strictly decreasing on [0, 1)") {
    double prev = h_transform(0.0);
    for (int i = 1; i < 100; ++i) {
        const double h = h_transform(i / 100.0);
        CHECK(h < prev);
        prev = h;
    }
}

TEST_CASE("count_changes classifies hand-built windows") {
    CHECK(count_changes(to_array({1, 2, 1}), 1) == std::pair<long, long>{1, 1});   // peak
    CHECK(count_changes(to_array({2, 1, 2}), 1) == std::pair<long, long>{1, 1});   // valley
    CHECK(count_changes(to_array({1, 2, 3}), 1) == std::pair<long, long>{0, 1});   // rise
    CHECK(count_changes(to_array({3, 2, 1}), 1) == std::pair<long, long>{0, 1});   // fall
    CHECK(count_changes(to_array({1, 2, 2}), 1) == std::pair<long, long>{1, 1});   // rise-flat
    CHECK(count_changes(to_array({1, 1, 2}), 1) == std::pair<long, long>{1, 1});   // flat-rise
    CHECK(count_changes(to_array({2, 2, 1}), 1) == std::pair<long, long>{0, 1});   // flat-fall
    CHECK(count_changes(to_array({2, 1, 1}), 1) == std::pair<long, long>{0, 1});   // fall-flat
    CHECK(count_changes(to_array({1, 1, 1}), 1) == std::pair<long, long>{0, 1});   // flat
    CHECK(count_changes(to_array({1, 2, 1, 2, 1}), 1) == std::pair<long, long>{3, 3});
    CHECK(count_changes(to_array({1, 2, 1, 2, 1}), 2) == std::pair<long, long>{0, 1});
}

TEST_CASE("count_changes strides by tau and respects the window budget") {
    // With tau = 2 the windows of [0,3,1,4,1,5] are (0,1,1), (3,4,5): flat-rise
    // counts, monotone rise does not.
    CHECK(count_changes(to_array({0, 3, 1, 4, 1, 5}), 2) == std::pair<long, long>{1, 2});
    // 5 samples = 4 increments < 2 tau for tau = 3: no usable window
    CHECK(count_changes(to_array({1, 5, 2, 4, 3}), 3) == std::pair<long, long>{0, 0});
    CHECK_THROWS_AS(count_changes(to_array({1, 2, 3}), 0), std::invalid_argument);
    CHECK_THROWS_AS(count_changes(to_array({1, 2, 3}), -2), std::invalid_argument);
}

TEST_CASE("count_changes matches the sign-pair oracle on random inputs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> len_dist(3, 30);
    std::uniform_int_distribution<int> tau_dist(1, 5);
    std::uniform_int_distribution<int> level_dist(0, 4);

    for (int rep = 0; rep < 2000; ++rep) {
        const int len = len_dist(rng);
        const long tau = tau_dist(rng);
        std::vector<double> x(len);
        const bool discrete = rep % 2 == 0;
        for (double& v : x) v = discrete ? static_cast<double>(level_dist(rng)) : unif(rng);
        const auto expect = oracle::count_changes(x, tau);
        CHECK(count_changes(to_array(x), tau) == expect);
    }
}

TEST_CASE("estimate_change_prob pools counts across profiles") {
    ProfileSet<double> set;
    set.push_back(to_array({1, 2, 1, 2, 1}));  // 3 changes / 3 windows at tau 1
    set.push_back(to_array({1, 2, 3, 4, 5}));  // 0 changes / 3 windows
    set.push_back(to_array({1, 2}));           // too short: contributes (0, 0)
    CHECK(estimate_change_prob(set, 1) == doctest::Approx(0.5));

    ProfileSet<double> short_only;
    short_only.push_back(to_array({1, 2, 3}));
    CHECK(std::isnan(estimate_change_prob(short_only, 2)));
}

TEST_CASE("tau_max follows the fourth-root rule") {
    CHECK(tau_max(256, 256) == 16);
    CHECK(tau_max(100, 100) == 10);
    CHECK(tau_max(50, 60) == 8);
    CHECK(tau_max(512, 512) == 23);
    CHECK(tau_max(128, 128) == 12);
    CHECK_THROWS_AS(tau_max(0, 10), std::invalid_argument);
}

TEST_CASE("analyze on a plane yields zero change probability and unit Hurst") {
    // integer coefficients keep the detrend residual exactly zero, so every
    // window is a tie and no change is counted
    HeightField f;
    f.values.resize(24, 24);
    for (Eigen::Index i = 0; i < 24; ++i)
        for (Eigen::Index j = 0; j < 24; ++j) f.values(i, j) = 2.0 * i + 3.0 * j;

    AnalysisConfig cfg;
    cfg.n_phi = 6;
    cfg.delays = {3, 4};
    const RoughnessMatrix m = analyze(f, cfg);
    REQUIRE(m.p.rows() == 6);
    REQUIRE(m.p.cols() == 2);
    CHECK((m.p == 0.0).all());
    CHECK((m.hurst() == 1.0).all());
}

TEST_CASE("analyze angles and default delays follow the config") {
    const HeightField f = random_field(32, 32, 3);
    AnalysisConfig cfg;
    cfg.n_phi = 4;
    const RoughnessMatrix m = analyze(f, cfg);
    REQUIRE(m.angles_deg.size() == 4);
    CHECK(m.angles_deg(0) == 0.0);
    CHECK(m.angles_deg(1) == 45.0);
    CHECK(m.angles_deg(2) == 90.0);
    CHECK(m.angles_deg(3) == 135.0);
    CHECK(m.delays == std::vector<int>{3, 4, 5, 6});  // tau_max(32, 32) = 6
    CHECK((m.p >= 0.0 && m.p <= 1.0).all());
}

TEST_CASE("analyze is invariant under monotone value transforms") {
    const HeightField f = random_field(24, 24, 7);
    HeightField g = f;
    g.values = g.values.exp() * 3.0 + 1.0;

    AnalysisConfig cfg;
    cfg.n_phi = 8;
    cfg.delays = {3, 4, 5};
    cfg.interp = Interp::nearest;
    cfg.detrend = false;
    const RoughnessMatrix mf = analyze(f, cfg);
    const RoughnessMatrix mg = analyze(g, cfg);
    CHECK((mf.p == mg.p).all());
}

TEST_CASE("analyze at the axis angles equals direct row and column counting") {
    const HeightField f = random_field(20, 17, 12);
    AnalysisConfig cfg;
    cfg.n_phi = 2;  // 0 and 90 degrees
    cfg.delays = {3};
    cfg.detrend = false;
    const RoughnessMatrix m = analyze(f, cfg);

    long num0 = 0, den0 = 0, num90 = 0, den90 = 0;
    for (Eigen::Index j = 0; j < f.width(); ++j) {
        const auto [n, d] = count_changes(f.values.col(j), 3);
        num0 += n;
        den0 += d;
    }
    for (Eigen::Index i = 0; i < f.height(); ++i) {
        const auto [n, d] = count_changes(f.values.row(i), 3);
        num90 += n;
        den90 += d;
    }
    CHECK(m.p(0, 0) == static_cast<double>(num0) / den0);
    CHECK(m.p(1, 0) == static_cast<double>(num90) / den90);
}

TEST_CASE("analyze validates its configuration") {
    const HeightField f = random_field(16, 16, 1);
    AnalysisConfig cfg;
    cfg.n_phi = 0;
    CHECK_THROWS_AS(analyze(f, cfg), std::invalid_argument);
    cfg.n_phi = 4;
    cfg.delta = 0.0;
    CHECK_THROWS_AS(analyze(f, cfg), std::invalid_argument);
    cfg.delta = 1.0;
    cfg.delays = {0};
    CHECK_THROWS_AS(analyze(f, cfg), std::invalid_argument);
}

TEST_CASE("median_hurst commutes with h for odd delay counts") {
    RoughnessMatrix m;
    m.angles_deg = Eigen::ArrayXd::Zero(1);
    m.delays = {3, 4, 5};
    m.p.resize(1, 3);
    m.p << 0.3, 0.6, 0.4;
    const Eigen::ArrayXd med = median_hurst(m, 3, 5);
    REQUIRE(med.size() == 1);
    CHECK(med(0) == doctest::Approx(h_transform(0.4)).epsilon(1e-14));
}

TEST_CASE("median_hurst averages the middle pair before transforming") {
    RoughnessMatrix m;
    m.angles_deg = Eigen::ArrayXd::Zero(1);
    m.delays = {3, 4};
    m.p.resize(1, 2);
    m.p << 0.4, 0.6;
    const Eigen::ArrayXd med = median_hurst(m, 3, 4);
    // h of the median probability, not the median of the h values
    CHECK(med(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(med(0) != doctest::Approx(0.5 * (h_transform(0.4) + h_transform(0.6))).epsilon(1e-6));
}

TEST_CASE("median_hurst skips undefined entries and validates the range") {
    RoughnessMatrix m;
    m.angles_deg = Eigen::ArrayXd::Zero(2);
    m.delays = {3, 4, 5};
    m.p.resize(2, 3);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    m.p << 0.4, nan, 0.5, nan, nan, nan;
    const Eigen::ArrayXd med = median_hurst(m, 3, 5);
    CHECK(med(0) == doctest::Approx(h_transform(0.45)).epsilon(1e-14));
    CHECK(std::isnan(med(1)));

    CHECK_THROWS_AS(median_hurst(m, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(median_hurst(m, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(median_hurst(m, 3, 6), std::invalid_argument);  // delay 6 absent
}

TEST_CASE("median over a constant probability row is that probability's h") {
    RoughnessMatrix m;
    m.angles_deg = Eigen::ArrayXd::Zero(1);
    m.delays = {3, 4, 5, 6};
    m.p = Eigen::ArrayXXd::Constant(1, 4, 0.5);
    CHECK(median_hurst(m, 3, 6)(0) == doctest::Approx(0.5).epsilon(1e-14));
}

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "roughcp/height_field.hpp"
#include "roughcp/profiles.hpp"

namespace roughcp {

// Maps a change probability to a Hurst-type exponent:
// h(x) = 1 + log2(sin(pi (1 - x) / 2)). Monotone decreasing on [0, 1] with
// h(0) = 1, h(0.5) = 0.5, h(2/3) = 0, and h(1) = -inf (returned as such).
inline double h_transform(double p) {
    if (std::isnan(p)) return p;
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("h_transform: p must lie in [0, 1]");
    return 1.0 + std::log2(std::sin(EIGEN_PI * (1.0 - p) / 2.0));
}

// Number of windows (t, t+tau, t+2*tau) whose middle value is a strict
// maximum or strict minimum (ties broken toward "no change" at the first
// comparison, toward "change" at the second), plus the window count.
// A profile with fewer than 2*tau increments contributes (0, 0).
template <typename Derived>
std::pair<long, long> count_changes(const Eigen::DenseBase<Derived>& profile, long tau) {
    if (tau < 1) throw std::invalid_argument("count_changes: tau must be >= 1");
    const auto& x = profile.derived();
    const long m = static_cast<long>(x.size()) - 1;
    if (m < 2 * tau) return {0, 0};
    long num = 0;
    for (long t = 0; t + 2 * tau <= m; ++t) {
        const auto a = x(t), b = x(t + tau), c = x(t + 2 * tau);
        if ((a < b && b >= c) || (a >= b && b < c)) ++num;
    }
    return {num, m - 2 * tau + 1};
}

// Pooled estimate over a profile set: total changes / total windows.
// NaN when no profile is long enough for the delay.
template <typename Scalar>
double estimate_change_prob(const ProfileSet<Scalar>& profiles, long tau) {
    long num = 0, den = 0;
    for (const auto& p : profiles) {
        const auto [n, d] = count_changes(p, tau);
        num += n;
        den += d;
    }
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den)
                   : std::numeric_limits<double>::quiet_NaN();
}

// Largest delay worth estimating on a w_x-by-w_y field: ceil((w_x*w_y)^(1/4)).
inline int tau_max(Eigen::Index w_x, Eigen::Index w_y) {
    if (w_x < 1 || w_y < 1) throw std::invalid_argument("tau_max: dimensions must be positive");
    return static_cast<int>(
        std::ceil(std::pow(static_cast<double>(w_x) * static_cast<double>(w_y), 0.25) - 1e-9));
}

struct AnalysisConfig {
    int n_phi = 30;
    std::vector<int> delays;  // empty selects 3..tau_max(width, height)
    double delta = 1.0;
    Interp interp = Interp::bilinear;
    bool detrend = true;
};

struct RoughnessMatrix {
    Eigen::ArrayXd angles_deg;  // n_phi angles, k * 180 / n_phi
    std::vector<int> delays;    // one column per delay
    Eigen::ArrayXXd p;          // change probabilities, NaN where undefined

    Eigen::ArrayXXd hurst() const {
        Eigen::ArrayXXd h(p.rows(), p.cols());
        for (Eigen::Index i = 0; i < p.rows(); ++i)
            for (Eigen::Index j = 0; j < p.cols(); ++j) h(i, j) = h_transform(p(i, j));
        return h;
    }
};

// Full directional sweep: detrend (optional), extract profiles at n_phi
// angles, estimate the change probability at every configured delay.
RoughnessMatrix analyze(const HeightField& field, const AnalysisConfig& config);

// Per-angle h(median of defined change probabilities over integer delays
// tau_min..tau_max_inclusive, which must all be present in the matrix).
// NaN for angles with no defined entry.
Eigen::ArrayXd median_hurst(const RoughnessMatrix& matrix, int tau_min, int tau_max_inclusive);

}  // namespace roughcp

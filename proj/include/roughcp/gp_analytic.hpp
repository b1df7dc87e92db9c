#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace roughcp {

namespace detail {

inline void require_hurst(double H, const char* who) {
    if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument(std::string(who) + ": H must lie in (0, 1)");
}

}  // namespace detail

// Cov(X_s, X_t) of fractional Brownian motion with Var(X_1) = 1.
inline double fbm_cov(double s, double t, double H) {
    detail::require_hurst(H, "fbm_cov");
    if (s < 0.0 || t < 0.0) throw std::invalid_argument("fbm_cov: times must be >= 0");
    return 0.5 * (std::pow(s, 2 * H) + std::pow(t, 2 * H) - std::pow(std::abs(t - s), 2 * H));
}

// Autocorrelation of fractional Gaussian noise at integer lag tau.
inline double fgn_autocorr(long tau, double H) {
    detail::require_hurst(H, "fgn_autocorr");
    const double k = std::abs(static_cast<double>(tau));
    return 0.5 * (std::pow(k + 1, 2 * H) - 2 * std::pow(k, 2 * H) + std::pow(std::abs(k - 1), 2 * H));
}

// Large-lag comparator H(2H-1) tau^(2H-2) for fgn_autocorr.
inline double fgn_autocorr_asymptote(long tau, double H) {
    detail::require_hurst(H, "fgn_autocorr_asymptote");
    if (tau < 1) throw std::invalid_argument("fgn_autocorr_asymptote: tau must be >= 1");
    return H * (2 * H - 1) * std::pow(static_cast<double>(tau), 2 * H - 2);
}

// Change probability of a Gaussian triple from its increment moments:
// 1 - (2/pi) asin(sqrt(cov_inc / (2 sqrt(var1 var2)) + 1/2)).
inline double change_prob_from_cov(double cov_inc, double var1, double var2) {
    if (!(var1 > 0.0) || !(var2 > 0.0))
        throw std::invalid_argument("change_prob_from_cov: variances must be > 0");
    double radicand = cov_inc / (2.0 * std::sqrt(var1 * var2)) + 0.5;
    if (radicand < -1e-12 || radicand > 1.0 + 1e-12)
        throw std::invalid_argument("change_prob_from_cov: invalid covariance triple");
    radicand = std::clamp(radicand, 0.0, 1.0);
    return 1.0 - (2.0 / EIGEN_PI) * std::asin(std::sqrt(radicand));
}

// Closed-form change probability of fBm, independent of the delay.
inline double fbm_change_prob(double H) {
    detail::require_hurst(H, "fbm_change_prob");
    return 1.0 - (2.0 / EIGEN_PI) * std::asin(std::pow(2.0, H - 1.0));
}

// H(tau) = (1/2) log2(Var(X_{2 tau}) / Var(X_tau)).
inline double hurst_of_delay_from_variance(double var_tau, double var_2tau) {
    if (!(var_tau > 0.0) || !(var_2tau > 0.0))
        throw std::invalid_argument("hurst_of_delay_from_variance: variances must be > 0");
    return 0.5 * std::log2(var_2tau / var_tau);
}

// Cauchy-class increment autocorrelation (1 + |tau|^alpha)^(-beta/alpha);
// long-range dependence exponent decouples from alpha, implied Hurst
// exponent 1 - beta/2.
inline double cauchy_increment_autocorr(long tau, double alpha, double beta) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("cauchy_increment_autocorr: alpha must lie in (0, 2]");
    if (!(beta > 0.0 && beta < 2.0))
        throw std::invalid_argument("cauchy_increment_autocorr: beta must lie in (0, 2)");
    return std::pow(1.0 + std::pow(std::abs(static_cast<double>(tau)), alpha), -beta / alpha);
}

// Var(X_n) = Var(X_1) (n + 2 sum_{k=1}^{n-1} (n - k) c(k)) for a stationary
// unit-lag increment process with autocorrelation c; O(n).
template <typename Fn>
double variance_from_autocorr(Eigen::Index n, Fn&& autocorr, double var1 = 1.0) {
    if (n < 1) throw std::invalid_argument("variance_from_autocorr: n must be >= 1");
    if (!(var1 > 0.0)) throw std::invalid_argument("variance_from_autocorr: var1 must be > 0");
    double s1 = 0.0, s2 = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) {
        const double c = autocorr(k);
        s1 += c;
        s2 += static_cast<double>(k) * c;
    }
    const double var = var1 * (static_cast<double>(n) + 2.0 * (static_cast<double>(n) * s1 - s2));
    if (!(var > 0.0)) throw std::runtime_error("variance_from_autocorr: inconsistent autocorrelation");
    return var;
}

struct GaussianModel {
    enum class Kind { fbm, cauchy_increments };

    Kind kind = Kind::fbm;
    double H = 0.5;      // fbm only
    double alpha = 2.0;  // cauchy_increments only
    double beta = 1.0;   // cauchy_increments only
    double var1 = 1.0;

    static GaussianModel make_fbm(double H, double var1 = 1.0) {
        detail::require_hurst(H, "GaussianModel");
        if (!(var1 > 0.0)) throw std::invalid_argument("GaussianModel: var1 must be > 0");
        GaussianModel m;
        m.kind = Kind::fbm;
        m.H = H;
        m.var1 = var1;
        return m;
    }

    static GaussianModel make_cauchy(double alpha, double beta, double var1 = 1.0) {
        if (!(var1 > 0.0)) throw std::invalid_argument("GaussianModel: var1 must be > 0");
        GaussianModel m;
        m.kind = Kind::cauchy_increments;
        m.alpha = alpha;
        m.beta = beta;
        m.var1 = var1;
        m.autocorr(0);  // validates alpha/beta ranges
        return m;
    }

    double autocorr(long tau) const {
        return kind == Kind::fbm ? fgn_autocorr(tau, H) : cauchy_increment_autocorr(tau, alpha, beta);
    }

    // Long-range-dependence Hurst exponent implied by the model.
    double hurst() const { return kind == Kind::fbm ? H : 1.0 - beta / 2.0; }
};

// Scale-dependent Hurst exponent H(tau) of the model's aggregated process.
// Self-affinity makes the fBm case exactly H at every delay; the Cauchy case
// goes through the variance recursion.
inline double theorem1_h_of_delay(const GaussianModel& model, long tau) {
    if (tau < 1) throw std::invalid_argument("theorem1_h_of_delay: tau must be >= 1");
    if (model.kind == GaussianModel::Kind::fbm) return model.H;
    const auto ac = [&model](Eigen::Index k) { return model.autocorr(static_cast<long>(k)); };
    return hurst_of_delay_from_variance(variance_from_autocorr(tau, ac, model.var1),
                                        variance_from_autocorr(2 * tau, ac, model.var1));
}

}  // namespace roughcp

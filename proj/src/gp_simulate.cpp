#include "roughcp/gp_simulate.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "roughcp/rng.hpp"

namespace roughcp {

namespace {

constexpr Eigen::Index kMaxSimulationLength = Eigen::Index{1} << 22;
constexpr Eigen::Index kMaxCholeskyLength = Eigen::Index{1} << 13;

Eigen::ArrayXd sample_circulant(Eigen::Index n, const std::vector<double>& lambda,
                                GaussianSampler& g) {
    const auto M = static_cast<Eigen::Index>(lambda.size());
    const Eigen::Index half = M / 2;

    const auto amplitude = [&](Eigen::Index k) {
        // eigenvalues within the nonnegativity slack may still be tiny negatives
        return std::sqrt(std::max(lambda[static_cast<std::size_t>(k)], 0.0));
    };

    std::vector<std::complex<double>> w(static_cast<std::size_t>(M));
    const double inv_m = 1.0 / static_cast<double>(M);
    w[0] = amplitude(0) * std::sqrt(inv_m) * g.normal();
    w[static_cast<std::size_t>(half)] = amplitude(half) * std::sqrt(inv_m) * g.normal();
    for (Eigen::Index k = 1; k < half; ++k) {
        const double re = g.normal(), im = g.normal();
        const std::complex<double> v = amplitude(k) * std::sqrt(0.5 * inv_m) *
                                       std::complex<double>(re, im);
        w[static_cast<std::size_t>(k)] = v;
        w[static_cast<std::size_t>(M - k)] = std::conj(v);
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, w);
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = spectrum[static_cast<std::size_t>(i)].real();
    return out;
}

Eigen::ArrayXd sample_cholesky(Eigen::Index n,
                               const std::function<double(Eigen::Index)>& autocorr,
                               GaussianSampler& g) {
    if (n > kMaxCholeskyLength)
        throw std::invalid_argument(
            "simulate_from_autocorr: covariance too large for the dense backend");
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) cov(i, j) = cov(j, i) = autocorr(i - j);
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("simulate_from_autocorr: covariance is not positive definite");
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = g.normal();
    return (llt.matrixL() * z).array();
}

}  // namespace

Eigen::ArrayXd simulate_from_autocorr(Eigen::Index n,
                                      const std::function<double(Eigen::Index)>& autocorr,
                                      std::uint64_t seed, SimBackend backend) {
    if (n < 1) throw std::invalid_argument("simulate_from_autocorr: n must be >= 1");
    if (n > kMaxSimulationLength)
        throw std::invalid_argument("simulate_from_autocorr: n exceeds the supported maximum");
    if (std::abs(autocorr(0) - 1.0) > 1e-12)
        throw std::invalid_argument("simulate_from_autocorr: autocorr(0) must be 1");

    GaussianSampler g(seed);
    if (backend == SimBackend::cholesky) return sample_cholesky(n, autocorr, g);

    // circulant embedding of the covariance, padded to a power of two
    const auto M = static_cast<Eigen::Index>(
        std::bit_ceil(static_cast<std::uint64_t>(std::max<Eigen::Index>(2 * (n - 1), 2))));
    const Eigen::Index half = M / 2;
    std::vector<std::complex<double>> row(static_cast<std::size_t>(M));
    for (Eigen::Index k = 0; k <= half; ++k) row[static_cast<std::size_t>(k)] = autocorr(k);
    for (Eigen::Index k = 1; k < half; ++k)
        row[static_cast<std::size_t>(M - k)] = row[static_cast<std::size_t>(k)];

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, row);
    std::vector<double> lambda(static_cast<std::size_t>(M));
    double lam_min = spectrum[0].real(), lam_max = lam_min;
    for (Eigen::Index k = 0; k < M; ++k) {
        lambda[static_cast<std::size_t>(k)] = spectrum[static_cast<std::size_t>(k)].real();
        lam_min = std::min(lam_min, lambda[static_cast<std::size_t>(k)]);
        lam_max = std::max(lam_max, lambda[static_cast<std::size_t>(k)]);
    }

    if (lam_min < -1e-9 * std::max(lam_max, 0.0)) {
        if (backend == SimBackend::circulant)
            throw std::runtime_error("simulate_from_autocorr: embedding is not nonnegative definite");
        return sample_cholesky(n, autocorr, g);
    }
    return sample_circulant(n, lambda, g);
}

Eigen::ArrayXd simulate_fgn(Eigen::Index n, double H, std::uint64_t seed, SimBackend backend) {
    detail::require_hurst(H, "simulate_fgn");
    return simulate_from_autocorr(
        n, [H](Eigen::Index k) { return fgn_autocorr(static_cast<long>(k), H); }, seed, backend);
}

SimulatedPath simulate_fbm(Eigen::Index n, double H, std::uint64_t seed, SimBackend backend) {
    SimulatedPath out;
    out.increments = simulate_fgn(n, H, seed, backend);
    out.path.resize(n + 1);
    out.path(0) = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) out.path(i + 1) = out.path(i) + out.increments(i);
    out.model = GaussianModel::make_fbm(H);
    out.seed = seed;
    return out;
}

namespace {

void fft2_inplace(Eigen::ArrayXXcd& a, bool inverse) {
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> in, out;
    in.resize(static_cast<std::size_t>(a.cols()));
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) in[static_cast<std::size_t>(c)] = a(r, c);
        inverse ? fft.inv(out, in) : fft.fwd(out, in);
        for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = out[static_cast<std::size_t>(c)];
    }
    in.resize(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) in[static_cast<std::size_t>(r)] = a(r, c);
        inverse ? fft.inv(out, in) : fft.fwd(out, in);
        for (Eigen::Index r = 0; r < a.rows(); ++r) a(r, c) = out[static_cast<std::size_t>(r)];
    }
}

// |k|-th discrete frequency magnitude of an n-point transform
double freq_abs(Eigen::Index k, Eigen::Index n) {
    return static_cast<double>(std::min(k, n - k)) / static_cast<double>(n);
}

}  // namespace

HeightField simulate_surface(Eigen::Index width, Eigen::Index height, double H_x, double H_y,
                             std::uint64_t seed) {
    detail::require_hurst(H_x, "simulate_surface");
    detail::require_hurst(H_y, "simulate_surface");
    if (width < 16 || height < 16)
        throw std::invalid_argument("simulate_surface: dimensions must be at least 16");

    GaussianSampler g(seed);
    Eigen::ArrayXXcd z(height, width);
    for (Eigen::Index r = 0; r < height; ++r)
        for (Eigen::Index c = 0; c < width; ++c) z(r, c) = g.normal();
    fft2_inplace(z, false);

    // keep only the phases: unit-modulus modes remove realization-to-
    // realization amplitude noise from the target spectrum
    for (Eigen::Index r = 0; r < height; ++r)
        for (Eigen::Index c = 0; c < width; ++c) {
            const double mag = std::abs(z(r, c));
            z(r, c) = mag == 0.0 ? std::complex<double>(1.0, 0.0) : z(r, c) / mag;
        }

    // anisotropic power-law amplitude via an operator-scaling pseudo-norm:
    // along each axis the profile spectrum decays as |f|^-(2H + 1)
    const double h_bar = std::max(H_x, H_y);
    const double ax = h_bar / H_x, ay = h_bar / H_y;
    const double exponent = -(h_bar + (ax + ay) / 2.0) / 2.0;
    for (Eigen::Index r = 0; r < height; ++r) {
        const double fy = freq_abs(r, height);
        for (Eigen::Index c = 0; c < width; ++c) {
            const double fx = freq_abs(c, width);
            const double psi2 = std::pow(fx, 2.0 / ax) + std::pow(fy, 2.0 / ay);
            z(r, c) *= psi2 == 0.0 ? 0.0 : std::pow(psi2, exponent);
        }
    }
    fft2_inplace(z, true);

    HeightField field;
    field.values = z.real();
    const double sd = std::sqrt((field.values - field.values.mean()).square().mean());
    field.values /= sd;
    return field;
}

}  // namespace roughcp

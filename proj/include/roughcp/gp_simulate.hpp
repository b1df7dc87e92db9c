#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "roughcp/gp_analytic.hpp"
#include "roughcp/height_field.hpp"

namespace roughcp {

enum class SimBackend { automatic, circulant, cholesky };

struct SimulatedPath {
    Eigen::ArrayXd increments;  // length n
    Eigen::ArrayXd path;        // length n + 1, path[0] = 0, unit-lag cumulative sums
    GaussianModel model;
    std::uint64_t seed = 0;
};

// Stationary Gaussian sequence with the given autocorrelation (autocorr(0)
// must be 1) and unit variance. Circulant embedding when the embedding is
// nonnegative definite, dense Cholesky otherwise; `backend` can force either.
Eigen::ArrayXd simulate_from_autocorr(Eigen::Index n,
                                      const std::function<double(Eigen::Index)>& autocorr,
                                      std::uint64_t seed, SimBackend backend = SimBackend::automatic);

// Fractional Gaussian noise.
Eigen::ArrayXd simulate_fgn(Eigen::Index n, double H, std::uint64_t seed,
                            SimBackend backend = SimBackend::automatic);

// Fractional Brownian motion path built from simulate_fgn increments.
SimulatedPath simulate_fbm(Eigen::Index n, double H, std::uint64_t seed,
                           SimBackend backend = SimBackend::automatic);

// Anisotropic self-affine test surface: white noise is Fourier-filtered so
// that profiles along rows roughen with H_x and along columns with H_y, then
// normalized to zero mean and unit population standard deviation.
HeightField simulate_surface(Eigen::Index width, Eigen::Index height, double H_x, double H_y,
                             std::uint64_t seed);

}  // namespace roughcp

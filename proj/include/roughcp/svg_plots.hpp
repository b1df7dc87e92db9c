#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughcp/change_stats.hpp"

namespace roughcp {

// All renderers emit standalone SVG 1.1 with fixed canvas, fonts, and number
// formatting, so identical inputs give byte-identical files. Undefined values
// (NaN or infinite) break the affected polyline.

// Closed polar curves of the Hurst matrix, one per requested delay; each
// half-turn curve is mirrored to phi + 180 degrees.
void render_polar_svg(const RoughnessMatrix& matrix, const std::vector<int>& taus_to_plot,
                      const std::string& path);

// Single per-angle polar curve (used for the median Hurst summary).
void render_polar_svg(const Eigen::ArrayXd& angles_deg, const Eigen::ArrayXd& values,
                      const std::string& label, const std::string& path);

// Hurst exponent against delay, one polyline per angle.
void render_delay_svg(const RoughnessMatrix& matrix, const std::string& path);

// Log-log error-versus-sigma curves, one per estimator; nonpositive points
// cannot be drawn on log axes and are skipped.
void render_noise_svg(const std::vector<double>& sigmas,
                      const std::vector<std::string>& estimator_names,
                      const std::vector<std::vector<double>>& errors_per_sigma,
                      const std::string& path);

// Per-delay mean with a +-1 sd band and the analytic target line.
void render_fbm_svg(const std::vector<int>& taus, const Eigen::ArrayXd& mean,
                    const Eigen::ArrayXd& sd, double target, const std::string& path);

}  // namespace roughcp

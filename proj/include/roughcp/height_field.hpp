#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "roughcp/rng.hpp"

namespace roughcp {

// Rectangular grid of heights, row-major w_y rows by w_x columns, with a
// physical pixel spacing. Values are kept floating-point for the whole
// analysis; quantization happens only on PGM export.
template <typename Scalar>
struct HeightFieldT {
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;
    Scalar pixel_spacing = Scalar(1);

    Eigen::Index width() const { return values.cols(); }
    Eigen::Index height() const { return values.rows(); }
};

using HeightField = HeightFieldT<double>;

struct PointCloud {
    std::vector<Eigen::Vector3d> points;
};

// Spread of pixel values about their mean with divisor w_x*w_y - 1.
template <typename Scalar>
Scalar image_std(const HeightFieldT<Scalar>& field) {
    const auto n = field.values.size();
    if (n < 2) throw std::invalid_argument("image_std: field needs at least 2 pixels");
    const Scalar mean = field.values.mean();
    const Scalar ss = (field.values - mean).square().sum();
    return std::sqrt(ss / Scalar(n - 1));
}

// Subtract the least-squares plane a*i + b*j + c (i = row, j = column).
// Centered coordinates make the normal equations diagonal, so the fit is the
// exact OLS solution.
template <typename Scalar>
HeightFieldT<Scalar> detrend(const HeightFieldT<Scalar>& field) {
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index rows = field.height(), cols = field.width();
    const Scalar ibar = Scalar(rows - 1) / Scalar(2);
    const Scalar jbar = Scalar(cols - 1) / Scalar(2);

    Eigen::Array<Scalar, Eigen::Dynamic, 1> ic(rows), jc(cols);
    for (Eigen::Index i = 0; i < rows; ++i) ic(i) = Scalar(i) - ibar;
    for (Eigen::Index j = 0; j < cols; ++j) jc(j) = Scalar(j) - jbar;

    const Scalar sii = cols * ic.square().sum();
    const Scalar sjj = rows * jc.square().sum();
    const Scalar siz = (field.values.colwise() * ic).sum();
    const Scalar sjz = (field.values.rowwise() * jc.transpose()).sum();

    const Scalar a = sii > Scalar(0) ? siz / sii : Scalar(0);
    const Scalar b = sjj > Scalar(0) ? sjz / sjj : Scalar(0);
    const Scalar c = field.values.mean();

    Array plane = a * ic.replicate(1, cols) + b * jc.transpose().replicate(rows, 1) + c;
    return {field.values - plane, field.pixel_spacing};
}

// Add i.i.d. zero-mean Gaussian noise with standard deviation sigma to every
// pixel (row-major order), reproducibly for a given seed.
template <typename Scalar>
HeightFieldT<Scalar> add_white_noise(const HeightFieldT<Scalar>& field, Scalar sigma,
                                     std::uint64_t seed) {
    if (sigma < Scalar(0)) throw std::invalid_argument("add_white_noise: sigma must be >= 0");
    HeightFieldT<Scalar> out = field;
    GaussianSampler g(seed);
    for (Eigen::Index i = 0; i < out.values.rows(); ++i)
        for (Eigen::Index j = 0; j < out.values.cols(); ++j)
            out.values(i, j) += sigma * Scalar(g.normal());
    return out;
}

template <typename Scalar>
HeightFieldT<Scalar> crop(const HeightFieldT<Scalar>& field, Eigen::Index x0, Eigen::Index y0,
                          Eigen::Index w, Eigen::Index h) {
    if (w < 3 || h < 3) throw std::invalid_argument("crop: result must be at least 3x3");
    if (x0 < 0 || y0 < 0 || x0 + w > field.width() || y0 + h > field.height())
        throw std::out_of_range("crop: rectangle exceeds field bounds");
    return {field.values.block(y0, x0, h, w), field.pixel_spacing};
}

struct GridStats {
    std::int64_t far_cells = 0;  // cells whose nearest point is farther than 4*cell_size
    double max_distance = 0.0;
};

// Nearest-neighbor gridding of a scattered point cloud onto a regular grid
// spanning the x/y bounding box. Ties break toward the lowest point index.
HeightField grid_point_cloud(const PointCloud& cloud, double cell_size,
                             GridStats* stats = nullptr);

}  // namespace roughcp

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "roughcp/height_field.hpp"

namespace roughcp {

enum class Interp { bilinear, nearest };

template <typename Scalar>
using ProfileSet = std::vector<Eigen::Array<Scalar, Eigen::Dynamic, 1>>;

namespace detail {

// Direction components that are meant to be axis-aligned must be exact so
// that axis profiles reproduce rows/columns bit-for-bit.
inline double snap_unit(double c) {
    if (std::abs(c) < 1e-12) return 0.0;
    if (std::abs(c - 1.0) < 1e-12) return 1.0;
    if (std::abs(c + 1.0) < 1e-12) return -1.0;
    return c;
}

constexpr double kLineEps = 1e-9;

}  // namespace detail

template <typename Derived>
typename Derived::Scalar sample_bilinear(const Eigen::DenseBase<Derived>& field, double x, double y) {
    const auto& f = field.derived();
    const Eigen::Index w = f.cols(), h = f.rows();
    if (w < 2 || h < 2) throw std::invalid_argument("sample_bilinear: field must be at least 2x2");
    if (x < 0.0 || x > w - 1.0 || y < 0.0 || y > h - 1.0)
        throw std::invalid_argument("sample_bilinear: coordinates outside field");
    const Eigen::Index x0 = std::min(static_cast<Eigen::Index>(std::floor(x)), w - 2);
    const Eigen::Index y0 = std::min(static_cast<Eigen::Index>(std::floor(y)), h - 2);
    const double fx = x - x0, fy = y - y0;
    return static_cast<typename Derived::Scalar>(f(y0, x0) * (1 - fx) * (1 - fy) +
                                                 f(y0, x0 + 1) * fx * (1 - fy) +
                                                 f(y0 + 1, x0) * (1 - fx) * fy +
                                                 f(y0 + 1, x0 + 1) * fx * fy);
}

template <typename Derived>
typename Derived::Scalar sample_nearest(const Eigen::DenseBase<Derived>& field, double x, double y) {
    const auto& f = field.derived();
    const Eigen::Index c =
        std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::nearbyint(x)), 0, f.cols() - 1);
    const Eigen::Index r =
        std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::nearbyint(y)), 0, f.rows() - 1);
    return f(r, c);
}

// Samples equally spaced parallel lines across the whole field. The line
// direction for angle phi is u = (sin phi, cos phi) in (x = column,
// y = row) coordinates, so phi = 0 walks down columns and phi = 90 walks
// along rows; offsets step by delta along the normal v = (cos phi, -sin phi)
// from an anchor at the central pixel. Lines with fewer than 3 integer
// sample positions inside the field are dropped.
template <typename Derived>
ProfileSet<typename Derived::Scalar> extract_profiles(const Eigen::DenseBase<Derived>& field,
                                                      double angle_deg, double delta = 1.0,
                                                      Interp interp = Interp::bilinear) {
    using Scalar = typename Derived::Scalar;
    const auto& f = field.derived();
    const Eigen::Index w = f.cols(), h = f.rows();
    if (w < 3 || h < 3) throw std::invalid_argument("extract_profiles: field must be at least 3x3");
    if (!(delta > 0.0)) throw std::invalid_argument("extract_profiles: delta must be > 0");

    const double limx = w - 1.0, limy = h - 1.0;
    const double phi = angle_deg * EIGEN_PI / 180.0;
    const double ux = detail::snap_unit(std::sin(phi)), uy = detail::snap_unit(std::cos(phi));
    const double vx = detail::snap_unit(std::cos(phi)), vy = detail::snap_unit(-std::sin(phi));
    const double ax = std::floor((w - 1) / 2.0 + 0.5);
    const double ay = std::floor((h - 1) / 2.0 + 0.5);

    double reach = 0.0;
    for (double cx : {0.0, limx})
        for (double cy : {0.0, limy}) reach = std::max(reach, std::hypot(cx - ax, cy - ay));
    const long kmax = static_cast<long>(std::ceil(reach / delta)) + 1;

    constexpr double eps = detail::kLineEps;
    ProfileSet<Scalar> profiles;
    for (long k = -kmax; k <= kmax; ++k) {
        const double ox = ax + k * delta * vx, oy = ay + k * delta * vy;
        double tlo = -std::numeric_limits<double>::infinity();
        double thi = std::numeric_limits<double>::infinity();
        bool inside = true;
        for (auto [o, u, lim] : {std::array{ox, ux, limx}, std::array{oy, uy, limy}}) {
            if (std::abs(u) < 1e-12) {
                if (o < -eps || o > lim + eps) {
                    inside = false;
                    break;
                }
            } else {
                double a = (0.0 - o) / u, b = (lim - o) / u;
                if (a > b) std::swap(a, b);
                tlo = std::max(tlo, a);
                thi = std::min(thi, b);
            }
        }
        if (!inside) continue;
        const long t0 = static_cast<long>(std::ceil(tlo - eps));
        const long t1 = static_cast<long>(std::floor(thi + eps));
        const long n = t1 - t0 + 1;
        if (n < 3) continue;
        Eigen::Array<Scalar, Eigen::Dynamic, 1> prof(n);
        for (long t = t0; t <= t1; ++t) {
            const double x = std::clamp(ox + t * ux, 0.0, limx);
            const double y = std::clamp(oy + t * uy, 0.0, limy);
            prof(t - t0) = interp == Interp::bilinear ? sample_bilinear(f, x, y) : sample_nearest(f, x, y);
        }
        profiles.push_back(std::move(prof));
    }
    return profiles;
}

template <typename Scalar>
ProfileSet<Scalar> extract_profiles(const HeightFieldT<Scalar>& field, double angle_deg,
                                    double delta = 1.0, Interp interp = Interp::bilinear) {
    return extract_profiles(field.values, angle_deg, delta, interp);
}

}  // namespace roughcp

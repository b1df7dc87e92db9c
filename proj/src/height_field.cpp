#include "roughcp/height_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roughcp {

namespace {

struct Buckets {
    double ox, oy, cell;
    Eigen::Index nx, ny;
    std::vector<std::vector<std::int32_t>> cells;

    Eigen::Index clampx(double x) const {
        return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor((x - ox) / cell)), 0, nx - 1);
    }
    Eigen::Index clampy(double y) const {
        return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor((y - oy) / cell)), 0, ny - 1);
    }
    std::vector<std::int32_t>& at(Eigen::Index bx, Eigen::Index by) { return cells[by * nx + bx]; }
    const std::vector<std::int32_t>& at(Eigen::Index bx, Eigen::Index by) const {
        return cells[by * nx + bx];
    }
};

}  // namespace

HeightField grid_point_cloud(const PointCloud& cloud, double cell_size, GridStats* stats) {
    if (cloud.points.empty()) throw std::invalid_argument("grid_point_cloud: empty cloud");
    if (!(cell_size > 0.0)) throw std::invalid_argument("grid_point_cloud: cell_size must be > 0");

    double minx = cloud.points[0].x(), maxx = minx;
    double miny = cloud.points[0].y(), maxy = miny;
    for (const auto& p : cloud.points) {
        if (!p.allFinite()) throw std::invalid_argument("grid_point_cloud: non-finite point");
        minx = std::min(minx, p.x());
        maxx = std::max(maxx, p.x());
        miny = std::min(miny, p.y());
        maxy = std::max(maxy, p.y());
    }

    const double eps = 1e-9 * std::max(1.0, std::max(maxx - minx, maxy - miny));
    const Eigen::Index nx = static_cast<Eigen::Index>(std::floor((maxx - minx) / cell_size + eps)) + 1;
    const Eigen::Index ny = static_cast<Eigen::Index>(std::floor((maxy - miny) / cell_size + eps)) + 1;

    Buckets b{minx, miny, cell_size, nx, ny, {}};
    b.cells.resize(static_cast<std::size_t>(nx * ny));
    for (std::size_t k = 0; k < cloud.points.size(); ++k) {
        const auto& p = cloud.points[k];
        b.at(b.clampx(p.x()), b.clampy(p.y())).push_back(static_cast<std::int32_t>(k));
    }

    HeightField out;
    out.values.resize(ny, nx);
    out.pixel_spacing = cell_size;
    if (stats) *stats = GridStats{};

    const double far2 = 16.0 * cell_size * cell_size;
    const Eigen::Index max_ring = std::max(nx, ny);
    for (Eigen::Index gy = 0; gy < ny; ++gy) {
        for (Eigen::Index gx = 0; gx < nx; ++gx) {
            const double cx = minx + gx * cell_size;
            const double cy = miny + gy * cell_size;
            double best = std::numeric_limits<double>::infinity();
            std::int32_t best_idx = -1;
            for (Eigen::Index ring = 0; ring <= max_ring; ++ring) {
                // once a candidate is at hand, points in farther rings cannot beat it
                if (best_idx >= 0) {
                    const double reach = (ring - 1) * cell_size;
                    if (reach >= 0.0 && best <= reach * reach) break;
                }
                const Eigen::Index bx0 = std::max<Eigen::Index>(0, gx - ring);
                const Eigen::Index bx1 = std::min(nx - 1, gx + ring);
                const Eigen::Index by0 = std::max<Eigen::Index>(0, gy - ring);
                const Eigen::Index by1 = std::min(ny - 1, gy + ring);
                for (Eigen::Index by = by0; by <= by1; ++by) {
                    for (Eigen::Index bx = bx0; bx <= bx1; ++bx) {
                        if (ring > 0 && bx != bx0 && bx != bx1 && by != by0 && by != by1) continue;
                        for (std::int32_t idx : b.at(bx, by)) {
                            const auto& p = cloud.points[static_cast<std::size_t>(idx)];
                            const double dx = p.x() - cx, dy = p.y() - cy;
                            const double d2 = dx * dx + dy * dy;
                            if (d2 < best || (d2 == best && idx < best_idx)) {
                                best = d2;
                                best_idx = idx;
                            }
                        }
                    }
                }
            }
            out.values(gy, gx) = cloud.points[static_cast<std::size_t>(best_idx)].z();
            if (stats) {
                stats->max_distance = std::max(stats->max_distance, std::sqrt(best));
                if (best > far2) ++stats->far_cells;
            }
        }
    }
    return out;
}

}  // namespace roughcp

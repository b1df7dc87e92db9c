#include "roughcp/svg_plots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace roughcp {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fx(double v, int precision = 2) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

std::string tick_label(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

struct ValueRange {
    double lo = 0.0, hi = 1.0;

    static ValueRange of(const std::vector<double>& finite_values) {
        ValueRange r;
        if (finite_values.empty()) return r;
        r.lo = *std::min_element(finite_values.begin(), finite_values.end());
        r.hi = *std::max_element(finite_values.begin(), finite_values.end());
        if (r.hi - r.lo < 1e-9) {
            r.lo -= 0.5;
            r.hi += 0.5;
        } else {
            const double pad = 0.05 * (r.hi - r.lo);
            r.lo -= pad;
            r.hi += pad;
        }
        return r;
    }

    double unit(double v) const { return (v - lo) / (hi - lo); }
};

class Svg {
public:
    Svg(int width, int height) : width_(width), height_(height) {
        ss_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
            << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
            << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width = 1.0, const std::string& extra = "") {
        ss_ << "<line x1=\"" << fx(x1) << "\" y1=\"" << fx(y1) << "\" x2=\"" << fx(x2)
            << "\" y2=\"" << fx(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
            << fx(stroke_width, 1) << "\"" << extra << "/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& stroke,
                const std::string& fill = "none") {
        ss_ << "<circle cx=\"" << fx(cx) << "\" cy=\"" << fx(cy) << "\" r=\"" << fx(r)
            << "\" stroke=\"" << stroke << "\" fill=\"" << fill << "\"/>\n";
    }

    // one subpath per run of finite points; closed only when unbroken
    void path(const std::vector<std::pair<double, double>>& pts, const std::vector<bool>& defined,
              const std::string& stroke, bool close, double stroke_width = 1.5,
              const std::string& extra = "") {
        std::string d;
        bool open = false, broken = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!defined[i]) {
                open = false;
                broken = true;
                continue;
            }
            d += open ? "L" : "M";
            d += fx(pts[i].first) + " " + fx(pts[i].second) + " ";
            open = true;
        }
        if (d.empty()) return;
        if (close && !broken) d += "Z";
        ss_ << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
            << fx(stroke_width, 1) << "\"" << extra << "/>\n";
    }

    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                 const std::string& opacity) {
        ss_ << "<polygon points=\"";
        for (const auto& [x, y] : pts) ss_ << fx(x) << "," << fx(y) << " ";
        ss_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\" stroke=\"none\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 12,
              const std::string& anchor = "start", const std::string& fill = "#333333") {
        ss_ << "<text x=\"" << fx(x) << "\" y=\"" << fx(y)
            << "\" font-family=\"monospace\" font-size=\"" << size << "\" text-anchor=\"" << anchor
            << "\" fill=\"" << fill << "\">" << s << "</text>\n";
    }

    void save(const std::string& path) {
        ss_ << "</svg>\n";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path + " for writing");
        const std::string bytes = ss_.str();
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed for " + path);
    }

    int width() const { return width_; }
    int height() const { return height_; }

private:
    int width_, height_;
    std::ostringstream ss_;
};

void render_polar(const Eigen::ArrayXd& angles_deg,
                  const std::vector<std::pair<std::string, Eigen::ArrayXd>>& curves,
                  const std::string& path) {
    for (const auto& [label, v] : curves)
        if (v.size() != angles_deg.size())
            throw std::invalid_argument("render_polar_svg: angle/value length mismatch");
    constexpr double cx = 300.0, cy = 300.0, radius = 225.0;
    Svg svg(600, 600);

    std::vector<double> finite;
    for (const auto& [label, v] : curves)
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (std::isfinite(v(i))) finite.push_back(v(i));
    const ValueRange range = ValueRange::of(finite);

    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        svg.circle(cx, cy, radius * frac, "#cccccc");
        svg.text(cx + 4.0, cy - radius * frac - 3.0,
                 tick_label(range.lo + frac * (range.hi - range.lo)), 10, "start", "#888888");
    }
    svg.line(cx - radius, cy, cx + radius, cy, "#cccccc");
    svg.line(cx, cy - radius, cx, cy + radius, "#cccccc");
    svg.text(cx, cy - radius - 8.0, "0", 12, "middle");
    svg.text(cx + radius + 14.0, cy + 4.0, "90", 12, "middle");
    svg.text(cx, cy + radius + 16.0, "180", 12, "middle");
    svg.text(cx - radius - 16.0, cy + 4.0, "270", 12, "middle");
    svg.text(cx, 20.0, "Hurst exponent by profile direction (degrees)", 13, "middle");

    const auto n = angles_deg.size();
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& values = curves[ci].second;
        std::vector<std::pair<double, double>> pts;
        std::vector<bool> defined;
        for (Eigen::Index k = 0; k < 2 * n; ++k) {
            const double ang = angles_deg(k % n) + (k < n ? 0.0 : 180.0);
            const double v = values(k % n);
            const bool ok = std::isfinite(v);
            const double r = ok ? radius * range.unit(v) : 0.0;
            const double theta = ang * EIGEN_PI / 180.0;
            pts.emplace_back(cx + r * std::sin(theta), cy - r * std::cos(theta));
            defined.push_back(ok);
        }
        const std::string color = kPalette[ci % kPaletteSize];
        svg.path(pts, defined, color, true);
        svg.text(20.0, 40.0 + 16.0 * static_cast<double>(ci), curves[ci].first, 12, "start", color);
    }
    svg.save(path);
}

struct Frame {
    double left, right, top, bottom;  // plot box in canvas coordinates

    double x(double u) const { return left + u * (right - left); }
    double y(double u) const { return bottom - u * (bottom - top); }
};

void draw_frame(Svg& svg, const Frame& f, const std::string& x_label, const std::string& y_label) {
    svg.line(f.left, f.bottom, f.right, f.bottom, "#333333");
    svg.line(f.left, f.bottom, f.left, f.top, "#333333");
    svg.text((f.left + f.right) / 2.0, f.bottom + 36.0, x_label, 13, "middle");
    svg.text(18.0, (f.top + f.bottom) / 2.0, y_label, 13, "middle",
             "#333333\" transform=\"rotate(-90 18 " + fx((f.top + f.bottom) / 2.0) + ")");
}

void y_ticks(Svg& svg, const Frame& f, const ValueRange& range, int count = 5) {
    for (int i = 0; i < count; ++i) {
        const double u = static_cast<double>(i) / (count - 1);
        const double ypos = f.y(u);
        svg.line(f.left - 4.0, ypos, f.left, ypos, "#333333");
        svg.text(f.left - 8.0, ypos + 4.0, tick_label(range.lo + u * (range.hi - range.lo)), 10,
                 "end");
    }
}

}  // namespace

void render_polar_svg(const RoughnessMatrix& matrix, const std::vector<int>& taus_to_plot,
                      const std::string& path) {
    const Eigen::ArrayXXd hurst = matrix.hurst();
    std::vector<std::pair<std::string, Eigen::ArrayXd>> curves;
    for (int t : taus_to_plot) {
        const auto it = std::find(matrix.delays.begin(), matrix.delays.end(), t);
        if (it == matrix.delays.end())
            throw std::invalid_argument("render_polar_svg: delay " + std::to_string(t) +
                                        " missing from the matrix");
        curves.emplace_back("tau=" + std::to_string(t),
                            hurst.col(it - matrix.delays.begin()));
    }
    render_polar(matrix.angles_deg, curves, path);
}

void render_polar_svg(const Eigen::ArrayXd& angles_deg, const Eigen::ArrayXd& values,
                      const std::string& label, const std::string& path) {
    if (angles_deg.size() != values.size())
        throw std::invalid_argument("render_polar_svg: angle/value length mismatch");
    render_polar(angles_deg, {{label, values}}, path);
}

void render_delay_svg(const RoughnessMatrix& matrix, const std::string& path) {
    Svg svg(700, 450);
    const Frame f{70.0, 680.0, 20.0, 400.0};

    const Eigen::ArrayXXd hurst = matrix.hurst();
    std::vector<double> finite;
    for (Eigen::Index i = 0; i < hurst.rows(); ++i)
        for (Eigen::Index j = 0; j < hurst.cols(); ++j)
            if (std::isfinite(hurst(i, j))) finite.push_back(hurst(i, j));
    const ValueRange yr = ValueRange::of(finite);

    const double t_lo = *std::min_element(matrix.delays.begin(), matrix.delays.end());
    const double t_hi = *std::max_element(matrix.delays.begin(), matrix.delays.end());
    const double t_span = std::max(t_hi - t_lo, 1.0);

    draw_frame(svg, f, "delay tau", "Hurst exponent");
    y_ticks(svg, f, yr);
    const std::size_t step = std::max<std::size_t>(1, matrix.delays.size() / 8);
    for (std::size_t j = 0; j < matrix.delays.size(); j += step) {
        const double xpos = f.x((matrix.delays[j] - t_lo) / t_span);
        svg.line(xpos, f.bottom, xpos, f.bottom + 4.0, "#333333");
        svg.text(xpos, f.bottom + 16.0, std::to_string(matrix.delays[j]), 10, "middle");
    }

    for (Eigen::Index i = 0; i < hurst.rows(); ++i) {
        std::vector<std::pair<double, double>> pts;
        std::vector<bool> defined;
        for (Eigen::Index j = 0; j < hurst.cols(); ++j) {
            const double v = hurst(i, j);
            const bool ok = std::isfinite(v);
            pts.emplace_back(f.x((matrix.delays[static_cast<std::size_t>(j)] - t_lo) / t_span),
                             ok ? f.y(yr.unit(v)) : 0.0);
            defined.push_back(ok);
        }
        svg.path(pts, defined, "#5b7fa6", false, 1.0, " stroke-opacity=\"0.55\"");
    }
    svg.text(f.right, f.top + 8.0, "one polyline per angle", 11, "end", "#888888");
    svg.save(path);
}

void render_noise_svg(const std::vector<double>& sigmas,
                      const std::vector<std::string>& estimator_names,
                      const std::vector<std::vector<double>>& errors_per_sigma,
                      const std::string& path) {
    if (errors_per_sigma.size() != sigmas.size())
        throw std::invalid_argument("render_noise_svg: row count must match sigmas");

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (sigmas[i] > 0.0) lx.push_back(std::log10(sigmas[i]));
        for (double e : errors_per_sigma[i])
            if (e > 0.0 && std::isfinite(e)) ly.push_back(std::log10(e));
    }
    const ValueRange xr = ValueRange::of(lx);
    const ValueRange yr = ValueRange::of(ly);

    Svg svg(700, 450);
    const Frame f{80.0, 680.0, 20.0, 400.0};
    draw_frame(svg, f, "noise sigma (log scale)", "error (log scale)");
    for (int i = 0; i < 5; ++i) {
        const double u = static_cast<double>(i) / 4.0;
        const double ypos = f.y(u);
        svg.line(f.left - 4.0, ypos, f.left, ypos, "#333333");
        svg.text(f.left - 8.0, ypos + 4.0,
                 tick_label(std::pow(10.0, yr.lo + u * (yr.hi - yr.lo))), 10, "end");
    }
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > 0.0)) continue;
        const double xpos = f.x(xr.unit(std::log10(sigmas[i])));
        svg.line(xpos, f.bottom, xpos, f.bottom + 4.0, "#333333");
        svg.text(xpos, f.bottom + 16.0, tick_label(sigmas[i]), 10, "middle");
    }

    for (std::size_t e = 0; e < estimator_names.size(); ++e) {
        std::vector<std::pair<double, double>> pts;
        std::vector<bool> defined;
        for (std::size_t i = 0; i < sigmas.size(); ++i) {
            const double err = e < errors_per_sigma[i].size()
                                   ? errors_per_sigma[i][e]
                                   : std::numeric_limits<double>::quiet_NaN();
            const bool ok = sigmas[i] > 0.0 && err > 0.0 && std::isfinite(err);
            pts.emplace_back(ok ? f.x(xr.unit(std::log10(sigmas[i]))) : 0.0,
                             ok ? f.y(yr.unit(std::log10(err))) : 0.0);
            defined.push_back(ok);
        }
        const std::string color = kPalette[e % kPaletteSize];
        svg.path(pts, defined, color, false);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (defined[i]) svg.circle(pts[i].first, pts[i].second, 3.0, color, color);
        svg.text(f.left + 12.0, f.top + 16.0 + 16.0 * static_cast<double>(e), estimator_names[e],
                 12, "start", color);
    }
    svg.save(path);
}

void render_fbm_svg(const std::vector<int>& taus, const Eigen::ArrayXd& mean,
                    const Eigen::ArrayXd& sd, double target, const std::string& path) {
    if (static_cast<Eigen::Index>(taus.size()) != mean.size() || mean.size() != sd.size())
        throw std::invalid_argument("render_fbm_svg: length mismatch");

    std::vector<double> finite{target};
    for (Eigen::Index j = 0; j < mean.size(); ++j)
        if (std::isfinite(mean(j)) && std::isfinite(sd(j))) {
            finite.push_back(mean(j) - sd(j));
            finite.push_back(mean(j) + sd(j));
        }
    const ValueRange yr = ValueRange::of(finite);
    const double t_lo = *std::min_element(taus.begin(), taus.end());
    const double t_hi = *std::max_element(taus.begin(), taus.end());
    const double t_span = std::max(t_hi - t_lo, 1.0);

    Svg svg(700, 450);
    const Frame f{70.0, 680.0, 20.0, 400.0};
    draw_frame(svg, f, "delay tau", "estimated Hurst exponent");
    y_ticks(svg, f, yr);
    const std::size_t step = std::max<std::size_t>(1, taus.size() / 8);
    for (std::size_t j = 0; j < taus.size(); j += step) {
        const double xpos = f.x((taus[j] - t_lo) / t_span);
        svg.line(xpos, f.bottom, xpos, f.bottom + 4.0, "#333333");
        svg.text(xpos, f.bottom + 16.0, std::to_string(taus[j]), 10, "middle");
    }

    std::vector<std::pair<double, double>> band;
    bool band_ok = true;
    for (Eigen::Index j = 0; j < mean.size(); ++j) {
        if (!std::isfinite(mean(j)) || !std::isfinite(sd(j))) band_ok = false;
        band.emplace_back(f.x((taus[static_cast<std::size_t>(j)] - t_lo) / t_span),
                          f.y(yr.unit(mean(j) + sd(j))));
    }
    for (Eigen::Index j = mean.size() - 1; j >= 0; --j)
        band.emplace_back(f.x((taus[static_cast<std::size_t>(j)] - t_lo) / t_span),
                          f.y(yr.unit(mean(j) - sd(j))));
    if (band_ok) svg.polygon(band, "#1f77b4", "0.2");

    std::vector<std::pair<double, double>> pts;
    std::vector<bool> defined;
    for (Eigen::Index j = 0; j < mean.size(); ++j) {
        const bool ok = std::isfinite(mean(j));
        pts.emplace_back(f.x((taus[static_cast<std::size_t>(j)] - t_lo) / t_span),
                         ok ? f.y(yr.unit(mean(j))) : 0.0);
        defined.push_back(ok);
    }
    svg.path(pts, defined, "#1f77b4", false);
    svg.line(f.left, f.y(yr.unit(target)), f.right, f.y(yr.unit(target)), "#d62728", 1.5);
    svg.text(f.left + 12.0, f.top + 16.0, "mean estimate with sd band", 12, "start", "#1f77b4");
    svg.text(f.left + 12.0, f.top + 32.0, "analytic target", 12, "start", "#d62728");
    svg.save(path);
}

}  // namespace roughcp

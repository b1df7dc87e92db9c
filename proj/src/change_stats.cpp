#include "roughcp/change_stats.hpp"

#include <algorithm>
#include <future>

namespace roughcp {

RoughnessMatrix analyze(const HeightField& field, const AnalysisConfig& config) {
    if (config.n_phi < 1) throw std::invalid_argument("analyze: n_phi must be >= 1");
    if (!(config.delta > 0.0)) throw std::invalid_argument("analyze: delta must be > 0");

    std::vector<int> delays = config.delays;
    if (delays.empty())
        for (int t = 3; t <= tau_max(field.width(), field.height()); ++t) delays.push_back(t);
    if (delays.empty()) throw std::invalid_argument("analyze: no delays to estimate");
    for (int t : delays)
        if (t < 1) throw std::invalid_argument("analyze: delays must be >= 1");

    const HeightField work = config.detrend ? detrend(field) : field;

    RoughnessMatrix out;
    out.delays = delays;
    out.angles_deg.resize(config.n_phi);
    for (int i = 0; i < config.n_phi; ++i) out.angles_deg(i) = i * 180.0 / config.n_phi;
    out.p.resize(config.n_phi, static_cast<Eigen::Index>(delays.size()));

    const auto run_angle = [&work, &config, &delays](double angle_deg) {
        const auto profiles = extract_profiles(work.values, angle_deg, config.delta, config.interp);
        Eigen::ArrayXd row(static_cast<Eigen::Index>(delays.size()));
        for (std::size_t j = 0; j < delays.size(); ++j)
            row(static_cast<Eigen::Index>(j)) = estimate_change_prob(profiles, delays[j]);
        return row;
    };

    std::vector<std::future<Eigen::ArrayXd>> pending;
    pending.reserve(static_cast<std::size_t>(config.n_phi));
    for (int i = 0; i < config.n_phi; ++i)
        pending.push_back(std::async(std::launch::async, run_angle, out.angles_deg(i)));
    for (int i = 0; i < config.n_phi; ++i) out.p.row(i) = pending[static_cast<std::size_t>(i)].get();
    return out;
}

Eigen::ArrayXd median_hurst(const RoughnessMatrix& matrix, int tau_min, int tau_max_inclusive) {
    if (tau_min < 3) throw std::invalid_argument("median_hurst: tau_min must be >= 3");
    if (tau_max_inclusive < tau_min)
        throw std::invalid_argument("median_hurst: empty delay range");
    std::vector<Eigen::Index> cols;
    for (int t = tau_min; t <= tau_max_inclusive; ++t) {
        const auto it = std::find(matrix.delays.begin(), matrix.delays.end(), t);
        if (it == matrix.delays.end())
            throw std::invalid_argument("median_hurst: delay " + std::to_string(t) +
                                        " missing from the matrix");
        cols.push_back(it - matrix.delays.begin());
    }

    Eigen::ArrayXd out(matrix.p.rows());
    std::vector<double> vals;
    for (Eigen::Index i = 0; i < matrix.p.rows(); ++i) {
        vals.clear();
        for (Eigen::Index j : cols)
            if (!std::isnan(matrix.p(i, j))) vals.push_back(matrix.p(i, j));
        if (vals.empty()) {
            out(i) = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        std::sort(vals.begin(), vals.end());
        const std::size_t mid = vals.size() / 2;
        const double median =
            vals.size() % 2 == 1 ? vals[mid] : 0.5 * (vals[mid - 1] + vals[mid]);
        out(i) = h_transform(median);
    }
    return out;
}

}  // namespace roughcp

#include "roughcp/reports.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "roughcp/change_stats.hpp"
#include "roughcp/csv_io.hpp"
#include "roughcp/gp_simulate.hpp"
#include "roughcp/rng.hpp"
#include "roughcp/svg_plots.hpp"

namespace roughcp {

double noise_error(const Eigen::ArrayXd& h_clean, const Eigen::ArrayXd& h_noisy, int n_phi,
                   int* n_used) {
    if (h_clean.size() != h_noisy.size() || h_clean.size() != n_phi)
        throw std::invalid_argument("noise_error: expected two vectors of n_phi entries");
    double sum = 0.0;
    int used = 0;
    for (Eigen::Index i = 0; i < h_clean.size(); ++i) {
        if (!std::isfinite(h_clean(i)) || !std::isfinite(h_noisy(i))) continue;
        const double d = h_noisy(i) - h_clean(i);
        sum += d * d;
        ++used;
    }
    if (n_used) *n_used = used;
    if (used == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(sum) / used;
}

NoiseReport run_noise_experiment(const HeightField& field, const std::vector<double>& sigmas,
                                 const std::vector<int>& taus, int n_phi, std::uint64_t seed) {
    if (taus.empty()) throw std::invalid_argument("run_noise_experiment: no delays given");
    for (double s : sigmas)
        if (!(s >= 0.0)) throw std::invalid_argument("run_noise_experiment: sigmas must be >= 0");

    // the analysis covers the requested delays plus the median estimator's range
    const int t_max = tau_max(field.width(), field.height());
    std::set<int> delay_set(taus.begin(), taus.end());
    for (int t = 3; t <= t_max; ++t) delay_set.insert(t);

    AnalysisConfig config;
    config.n_phi = n_phi;
    config.delays.assign(delay_set.begin(), delay_set.end());

    const RoughnessMatrix clean = analyze(field, config);
    const Eigen::ArrayXXd h_clean = clean.hurst();
    const Eigen::ArrayXd med_clean = median_hurst(clean, 3, t_max);

    std::vector<Eigen::Index> tau_cols;
    for (int t : taus) {
        const auto it = std::find(config.delays.begin(), config.delays.end(), t);
        tau_cols.push_back(it - config.delays.begin());
    }

    NoiseReport report;
    report.sigmas = sigmas;
    report.sigma_img = image_std(field);
    report.n_phi = n_phi;
    report.seed = seed;
    for (int t : taus) report.estimator_names.push_back("tau=" + std::to_string(t));
    report.estimator_names.push_back("median");

    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        const HeightField noisy = add_white_noise(field, sigmas[i], derive_seed(seed, i));
        const RoughnessMatrix m = analyze(noisy, config);
        const Eigen::ArrayXXd h_noisy = m.hurst();
        const Eigen::ArrayXd med_noisy = median_hurst(m, 3, t_max);

        std::vector<double> row;
        int dropped = 0, used = 0;
        for (Eigen::Index col : tau_cols) {
            row.push_back(noise_error(h_clean.col(col), h_noisy.col(col), n_phi, &used));
            dropped += n_phi - used;
        }
        row.push_back(noise_error(med_clean, med_noisy, n_phi, &used));
        dropped += n_phi - used;
        report.errors.push_back(std::move(row));
        report.undefined_exclusions.push_back(dropped);
    }
    return report;
}

void write_noise_report(const NoiseReport& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> header{"sigma", "sigma_over_sigma_img"};
    for (const auto& name : report.estimator_names) header.push_back("err(" + name + ")");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < report.sigmas.size(); ++i) {
        std::vector<double> row{report.sigmas[i], report.sigmas[i] / report.sigma_img};
        row.insert(row.end(), report.errors[i].begin(), report.errors[i].end());
        rows.push_back(std::move(row));
    }
    write_table_csv((std::filesystem::path(out_dir) / "noise_error.csv").string(), header, rows,
                    std::string("rng: ") + rng_algorithm_id + " seed=" + std::to_string(report.seed));
    render_noise_svg(report.sigmas, report.estimator_names, report.errors,
                     (std::filesystem::path(out_dir) / "noise_error.svg").string());
}

FbmValidationReport run_fbm_validation(double H, Eigen::Index n, int reps,
                                       const std::vector<int>& taus, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("run_fbm_validation: reps must be >= 1");
    if (taus.empty()) throw std::invalid_argument("run_fbm_validation: no delays given");

    const auto n_taus = static_cast<Eigen::Index>(taus.size());
    Eigen::ArrayXXd estimates(reps, n_taus);
    for (int r = 0; r < reps; ++r) {
        const SimulatedPath sim = simulate_fbm(n, H, derive_seed(seed, static_cast<std::uint64_t>(r)));
        for (Eigen::Index j = 0; j < n_taus; ++j) {
            const auto [num, den] = count_changes(sim.path, taus[static_cast<std::size_t>(j)]);
            estimates(r, j) = den > 0
                                  ? h_transform(static_cast<double>(num) / static_cast<double>(den))
                                  : std::numeric_limits<double>::quiet_NaN();
        }
    }

    FbmValidationReport report;
    report.H = H;
    report.n = n;
    report.reps = reps;
    report.seed = seed;
    report.taus = taus;
    report.mean = estimates.colwise().mean();
    report.sd.resize(n_taus);
    for (Eigen::Index j = 0; j < n_taus; ++j) {
        if (reps < 2) {
            report.sd(j) = 0.0;
            continue;
        }
        const double m = report.mean(j);
        report.sd(j) = std::sqrt((estimates.col(j) - m).square().sum() / (reps - 1));
    }
    return report;
}

void write_fbm_report(const FbmValidationReport& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < report.taus.size(); ++j)
        rows.push_back({static_cast<double>(report.taus[j]),
                        report.mean(static_cast<Eigen::Index>(j)),
                        report.sd(static_cast<Eigen::Index>(j)), report.H});
    write_table_csv((std::filesystem::path(out_dir) / "fbm_validation.csv").string(),
                    {"tau", "mean", "sd", "target"}, rows,
                    std::string("rng: ") + rng_algorithm_id + " seed=" + std::to_string(report.seed));
    render_fbm_svg(report.taus, report.mean, report.sd, report.H,
                   (std::filesystem::path(out_dir) / "fbm_validation.svg").string());
}

}  // namespace roughcp

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughcp/height_field.hpp"

namespace roughcp {

// Error between a clean and a noisy estimate over n_phi angles:
// sqrt(sum of squared differences) / n. Entries undefined on either side are
// excluded pairwise and n reduced to the defined count (reported through
// n_used); the all-undefined case returns NaN with n_used = 0.
double noise_error(const Eigen::ArrayXd& h_clean, const Eigen::ArrayXd& h_noisy, int n_phi,
                   int* n_used = nullptr);

struct NoiseReport {
    std::vector<double> sigmas;  // absolute noise standard deviations
    double sigma_img = 0.0;      // sample standard deviation of the clean field
    int n_phi = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> estimator_names;       // "tau=..." per delay, then "median"
    std::vector<std::vector<double>> errors;        // [sigma index][estimator index]
    std::vector<int> undefined_exclusions;          // per sigma, entries dropped pairwise
};

// Reanalyzes the field once per sigma with fresh noise (substream i of the
// master seed) and reports the error of each per-delay estimator and of the
// median estimator against the clean run. External baseline estimators can be
// compared offline against the emitted CSV.
NoiseReport run_noise_experiment(const HeightField& field, const std::vector<double>& sigmas,
                                 const std::vector<int>& taus, int n_phi, std::uint64_t seed);

// noise_error.csv and noise_error.svg under out_dir.
void write_noise_report(const NoiseReport& report, const std::string& out_dir);

struct FbmValidationReport {
    double H = 0.5;
    Eigen::Index n = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<int> taus;
    Eigen::ArrayXd mean;  // per delay, over reps
    Eigen::ArrayXd sd;    // sample standard deviation per delay
};

// Estimates H(tau) on reps independent fBm paths (substream r per rep).
FbmValidationReport run_fbm_validation(double H, Eigen::Index n, int reps,
                                       const std::vector<int>& taus, std::uint64_t seed);

// fbm_validation.csv and fbm_validation.svg under out_dir.
void write_fbm_report(const FbmValidationReport& report, const std::string& out_dir);

}  // namespace roughcp

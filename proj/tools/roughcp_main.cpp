#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "roughcp/change_stats.hpp"
#include "roughcp/csv_io.hpp"
#include "roughcp/gp_analytic.hpp"
#include "roughcp/gp_simulate.hpp"
#include "roughcp/pgm.hpp"
#include "roughcp/reports.hpp"
#include "roughcp/rng.hpp"
#include "roughcp/svg_plots.hpp"

namespace fs = std::filesystem;
using namespace roughcp;

namespace {

int parse_int(const std::string& s, const std::string& what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("cannot parse " + what + " '" + s + "'");
    return v;
}

// "a:b" inclusive ranges and plain integers, comma-separated; duplicates are
// kept once in first-seen order.
std::vector<int> parse_delay_spec(const std::string& spec) {
    std::vector<int> out;
    std::set<int> seen;
    std::stringstream ss(spec);
    std::string item;
    const auto push = [&](int t) {
        if (seen.insert(t).second) out.push_back(t);
    };
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            push(parse_int(item, "delay"));
        } else {
            const int a = parse_int(item.substr(0, colon), "delay range start");
            const int b = parse_int(item.substr(colon + 1), "delay range end");
            if (b < a) throw std::runtime_error("empty delay range '" + item + "'");
            for (int t = a; t <= b; ++t) push(t);
        }
    }
    if (out.empty()) throw std::runtime_error("empty delay specification '" + spec + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& spec, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
            throw std::runtime_error("cannot parse " + what + " '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::runtime_error("empty " + what + " list");
    return out;
}

HeightField load_field(const std::string& input, double cell_size, const std::string& crop_spec) {
    std::string ext = fs::path(input).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    HeightField field;
    if (ext == ".pgm") {
        field = read_pgm(input);
    } else if (ext == ".xyz") {
        if (!(cell_size > 0.0))
            throw std::runtime_error("--cell-size is required for .xyz input " + input);
        GridStats stats;
        field = grid_point_cloud(read_xyz(input), cell_size, &stats);
        if (stats.far_cells > 0)
            std::cerr << "warning: " << stats.far_cells
                      << " grid cells are farther than 4 cell sizes from the nearest point\n";
    } else {
        throw std::runtime_error("unsupported input extension for " + input +
                                 " (expected .pgm or .xyz)");
    }

    if (!crop_spec.empty()) {
        std::stringstream ss(crop_spec);
        std::string item;
        std::vector<int> parts;
        while (std::getline(ss, item, ':')) parts.push_back(parse_int(item, "crop value"));
        if (parts.size() != 4) throw std::runtime_error("--crop expects x0:y0:w:h");
        field = crop(field, parts[0], parts[1], parts[2], parts[3]);
    }
    return field;
}

void warn_small_delays(const std::vector<int>& delays) {
    for (int t : delays)
        if (t < 3) {
            std::cerr << "warning: estimates at delays 1 and 2 are dominated by sampling"
                         " artifacts; interpret them with care\n";
            return;
        }
}

struct AnalyzeArgs {
    std::string input, delays, interp = "bilinear", crop, out = ".";
    int angles = 30;
    double delta = 1.0, cell_size = 0.0;
    bool no_detrend = false;
};

void run_analyze(const AnalyzeArgs& args) {
    const HeightField field = load_field(args.input, args.cell_size, args.crop);

    AnalysisConfig config;
    config.n_phi = args.angles;
    config.delta = args.delta;
    config.interp = args.interp == "nearest" ? Interp::nearest : Interp::bilinear;
    config.detrend = !args.no_detrend;
    if (!args.delays.empty()) config.delays = parse_delay_spec(args.delays);
    warn_small_delays(config.delays);

    const RoughnessMatrix matrix = analyze(field, config);

    fs::create_directories(args.out);
    const fs::path out(args.out);
    write_csv(matrix, (out / "p_hat.csv").string(), false);
    write_csv(matrix, (out / "h_hat.csv").string(), true);

    std::vector<int> taus_plot;
    const auto n = matrix.delays.size();
    for (std::size_t idx : {std::size_t{0}, n / 3, 2 * n / 3, n - 1}) {
        const int t = matrix.delays[std::min(idx, n - 1)];
        if (std::find(taus_plot.begin(), taus_plot.end(), t) == taus_plot.end())
            taus_plot.push_back(t);
    }
    render_polar_svg(matrix, taus_plot, (out / "polar.svg").string());
    render_delay_svg(matrix, (out / "delay.svg").string());

    const int t_max = tau_max(field.width(), field.height());
    bool covers_median_range = t_max >= 3;
    for (int t = 3; t <= t_max && covers_median_range; ++t)
        covers_median_range =
            std::find(matrix.delays.begin(), matrix.delays.end(), t) != matrix.delays.end();
    if (covers_median_range) {
        const Eigen::ArrayXd med = median_hurst(matrix, 3, t_max);
        render_polar_svg(matrix.angles_deg, med, "median tau=3:" + std::to_string(t_max),
                         (out / "median_polar.svg").string());
    } else {
        std::cerr << "note: median_polar.svg skipped (delays do not cover 3.."
                  << t_max << ")\n";
    }

    std::cout << "analyzed " << field.width() << "x" << field.height() << " field, "
              << config.n_phi << " angles, " << matrix.delays.size()
              << " delays (tau_max=" << t_max << ")\n"
              << "wrote p_hat.csv h_hat.csv polar.svg delay.svg"
              << (covers_median_range ? " median_polar.svg" : "") << " in " << args.out << "\n";
}

struct SimulateArgs {
    int width = 512, height = 512, bitdepth = 16;
    double hx = 0.5, hy = 0.5;
    std::uint64_t seed = 1;
    std::string out = ".";
};

void run_simulate(const SimulateArgs& args) {
    const HeightField field = simulate_surface(args.width, args.height, args.hx, args.hy, args.seed);
    fs::create_directories(args.out);
    const std::string path = (fs::path(args.out) / "surface.pgm").string();
    const std::string comment = std::string("rng: ") + rng_algorithm_id +
                                " seed=" + std::to_string(args.seed) + " hx=" +
                                format_number(args.hx) + " hy=" + format_number(args.hy);
    write_pgm(path, field, args.bitdepth, comment);
    std::cout << "wrote " << path << " (" << args.width << "x" << args.height << ", "
              << args.bitdepth << "-bit)\nrng: " << rng_algorithm_id << " seed=" << args.seed
              << "\n";
}

struct FbmArgs {
    double hurst = 0.5;
    long n = 1 << 16;
    int reps = 100;
    std::string delays = "3:32", out = ".";
    std::uint64_t seed = 1;
};

void run_validate_fbm(const FbmArgs& args) {
    const std::vector<int> taus = parse_delay_spec(args.delays);
    warn_small_delays(taus);
    const FbmValidationReport report =
        run_fbm_validation(args.hurst, args.n, args.reps, taus, args.seed);
    write_fbm_report(report, args.out);

    double lo = report.mean(0), hi = report.mean(0), dev = 0.0;
    for (Eigen::Index j = 0; j < report.mean.size(); ++j) {
        lo = std::min(lo, report.mean(j));
        hi = std::max(hi, report.mean(j));
        dev = std::max(dev, std::abs(report.mean(j) - report.H));
    }
    std::cout << "fBm H=" << format_number(report.H) << ", n=" << report.n << ", reps="
              << report.reps << ": mean curve spread " << format_number(hi - lo)
              << ", max deviation from target " << format_number(dev) << "\n"
              << "wrote fbm_validation.csv fbm_validation.svg in " << args.out << "\nrng: "
              << rng_algorithm_id << " seed=" << args.seed << "\n";
}

struct NoiseArgs {
    std::string input, sigmas = "1e-4,1e-3,1e-2,1e-1", taus = "3,25", out = ".", crop;
    int angles = 20;
    double cell_size = 0.0;
    std::uint64_t seed = 1;
};

void run_noise(const NoiseArgs& args) {
    const HeightField field = load_field(args.input, args.cell_size, args.crop);
    const std::vector<double> fractions = parse_double_list(args.sigmas, "sigma");
    std::vector<int> taus;
    for (int t : parse_delay_spec(args.taus)) taus.push_back(t);
    warn_small_delays(taus);

    const double sigma_img = image_std(field);
    std::vector<double> absolute;
    for (double f : fractions) absolute.push_back(f * sigma_img);

    const NoiseReport report = run_noise_experiment(field, absolute, taus, args.angles, args.seed);
    write_noise_report(report, args.out);

    std::cout << "sigma_img=" << format_number(report.sigma_img) << ", n_phi=" << report.n_phi
              << "\n";
    for (std::size_t i = 0; i < report.sigmas.size(); ++i) {
        std::cout << "sigma=" << format_number(fractions[i]) << "*sigma_img:";
        for (std::size_t e = 0; e < report.estimator_names.size(); ++e)
            std::cout << "  err(" << report.estimator_names[e]
                      << ")=" << format_number(report.errors[i][e]);
        std::cout << "\n";
    }
    std::cout << "wrote noise_error.csv noise_error.svg in " << args.out << "\nrng: "
              << rng_algorithm_id << " seed=" << args.seed << "\n";
}

struct Theorem1Args {
    double alpha = 2.0, beta = 0.8, var1 = 1.0;
};

void run_theorem1(const Theorem1Args& args) {
    const GaussianModel model = GaussianModel::make_cauchy(args.alpha, args.beta, args.var1);
    std::cout << "Cauchy-class increments, alpha=" << format_number(args.alpha)
              << " beta=" << format_number(args.beta)
              << "; limit Hurst exponent 1 - beta/2 = " << format_number(model.hurst()) << "\n";
    std::cout << "tau       H(tau)               |H(tau) - limit|\n";
    for (int k = 0; k <= 10; ++k) {
        const long tau = 1L << k;
        const double ht = theorem1_h_of_delay(model, tau);
        std::cout << std::string("2^") + std::to_string(k)
                  << std::string(k < 10 ? 7 : 6, ' ') << format_number(ht) << "  "
                  << format_number(std::abs(ht - model.hurst())) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directional, scale-dependent roughness of gridded height fields"};
    app.require_subcommand(1);

    AnalyzeArgs a;
    auto* analyze_cmd = app.add_subcommand(
        "analyze", "Estimate change probabilities and Hurst exponents per direction and delay");
    analyze_cmd->add_option("input", a.input, "Height field (.pgm) or point cloud (.xyz)")
        ->required();
    analyze_cmd->add_option("--angles", a.angles, "Number of profile directions in [0, 180)")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--delays", a.delays,
                            "Delays, e.g. '3:16' or '3,5,9' (default 3:tau_max)");
    analyze_cmd->add_option("--delta", a.delta, "Profile spacing in pixels")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_flag("--no-detrend", a.no_detrend, "Skip least-squares plane removal");
    analyze_cmd->add_option("--interp", a.interp, "Profile sampling rule")
        ->check(CLI::IsMember({"bilinear", "nearest"}));
    analyze_cmd->add_option("--cell-size", a.cell_size, "Grid cell size for .xyz input");
    analyze_cmd->add_option("--crop", a.crop, "Crop rectangle x0:y0:w:h before analysis");
    analyze_cmd->add_option("--out", a.out, "Output directory");
    analyze_cmd->callback([&a] { run_analyze(a); });

    SimulateArgs s;
    auto* simulate_cmd =
        app.add_subcommand("simulate", "Synthesize an anisotropic self-affine test surface");
    simulate_cmd->add_option("--width", s.width, "Surface width")->check(CLI::Range(16, 1 << 14));
    simulate_cmd->add_option("--height", s.height, "Surface height")->check(CLI::Range(16, 1 << 14));
    simulate_cmd->add_option("--hx", s.hx, "Hurst exponent along rows");
    simulate_cmd->add_option("--hy", s.hy, "Hurst exponent along columns");
    simulate_cmd->add_option("--seed", s.seed, "RNG seed");
    simulate_cmd->add_option("--bitdepth", s.bitdepth, "PGM sample depth")
        ->check(CLI::IsMember({8, 16}));
    simulate_cmd->add_option("--out", s.out, "Output directory");
    simulate_cmd->callback([&s] { run_simulate(s); });

    FbmArgs f;
    auto* fbm_cmd = app.add_subcommand(
        "validate-fbm", "Monte-Carlo check of the estimator against fractional Brownian motion");
    fbm_cmd->add_option("--hurst", f.hurst, "Target Hurst exponent");
    fbm_cmd->add_option("--n", f.n, "Path length (increments)")->check(CLI::PositiveNumber);
    fbm_cmd->add_option("--reps", f.reps, "Independent simulations")->check(CLI::PositiveNumber);
    fbm_cmd->add_option("--delays", f.delays, "Delays to estimate");
    fbm_cmd->add_option("--seed", f.seed, "RNG seed");
    fbm_cmd->add_option("--out", f.out, "Output directory");
    fbm_cmd->callback([&f] { run_validate_fbm(f); });

    NoiseArgs n;
    auto* noise_cmd = app.add_subcommand(
        "noise", "Noise-robustness report: estimator error against the clean field");
    noise_cmd->add_option("input", n.input, "Height field (.pgm) or point cloud (.xyz)")
        ->required();
    noise_cmd->add_option("--sigmas", n.sigmas, "Noise levels as fractions of the image sigma");
    noise_cmd->add_option("--taus", n.taus, "Per-delay estimators to track");
    noise_cmd->add_option("--angles", n.angles, "Number of profile directions")
        ->check(CLI::PositiveNumber);
    noise_cmd->add_option("--cell-size", n.cell_size, "Grid cell size for .xyz input");
    noise_cmd->add_option("--crop", n.crop, "Crop rectangle x0:y0:w:h before analysis");
    noise_cmd->add_option("--seed", n.seed, "RNG seed");
    noise_cmd->add_option("--out", n.out, "Output directory");
    noise_cmd->callback([&n] { run_noise(n); });

    Theorem1Args t;
    auto* theorem_cmd = app.add_subcommand(
        "theorem1-check", "Print the scale-dependent Hurst exponent of a Cauchy-class model");
    theorem_cmd->add_option("--alpha", t.alpha, "Cauchy shape parameter in (0, 2]");
    theorem_cmd->add_option("--beta", t.beta, "Cauchy decay parameter in (0, 2)");
    theorem_cmd->add_option("--var1", t.var1, "Unit-lag increment variance");
    theorem_cmd->callback([&t] { run_theorem1(t); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// Batch front end: every experiment is a flat key = value parameter set
// (config file and/or flags, flags win) plus a subcommand naming the
// pipeline. Each run writes its artifacts and a manifest echoing the
// resolved configuration with SHA-256 checksums, so a run can be
// reproduced byte-for-byte from its manifest.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levelcross/billiards.hpp"
#include "levelcross/crossings.hpp"
#include "levelcross/harness.hpp"
#include "levelcross/io.hpp"
#include "levelcross/osc.hpp"
#include "levelcross/smooth.hpp"
#include "levelcross/spectrum.hpp"

namespace fs = std::filesystem;
using namespace lcross;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string model = "rect";
    std::optional<double> eps_min_opt, eps_max_opt;
    double eps_min = 0.0;
    double eps_max = 100.0;
    double mu = 1.0;  // fixed parameter for `levels`
    std::optional<double> mu_min, mu_max;
    double gamma = 4.0 / (kPi * kPi);
    int m_max = 150;
    int m_max_osc2 = 40;
    int m_max_series = 500;
    std::optional<int> bins;
    int grid_nmu = 512;
    int grid_neps = 512;
    int samples = 512;
    unsigned workers = 1;
    std::string out = "out";
    long seed = 0;  // reserved; deterministic pipelines ignore it
    std::optional<std::string> zero_mode;  // resolved per subcommand

    std::string zmode = "exclude";

    double lo() const { return mu_min.value(); }
    double hi() const { return mu_max.value(); }

    void resolve_and_validate(const std::string& sub) {
        if (model != "rect" && model != "cylinder")
            throw ConfigError("model: expected 'rect' or 'cylinder', got '" + model + "'");
        const bool rect = model == "rect";
        if (!mu_min) mu_min = rect ? 1.0 : 0.0;
        if (!mu_max) mu_max = rect ? 2.0 : 1.0;
        // the flux-integrated pipeline defaults to the band-head window
        eps_min = eps_min_opt.value_or(sub == "flux-integrated" ? 90.0 : 0.0);
        eps_max = eps_max_opt.value_or(sub == "flux-integrated" ? 1406.0 : 100.0);
        if (!(std::isfinite(eps_max)) || eps_max < 0.0)
            throw ConfigError("eps_max: must be finite and nonnegative");
        if (!(std::isfinite(eps_min)) || eps_min < 0.0 || eps_min > eps_max)
            throw ConfigError("eps_min: must satisfy 0 <= eps_min <= eps_max");
        if (!(*mu_min < *mu_max)) throw ConfigError("mu_min: need mu_min < mu_max");
        if (rect && !(*mu_min > 0.0)) throw ConfigError("mu_min: must be positive for rect");
        if (rect && !(mu > 0.0)) throw ConfigError("mu: must be positive for rect");
        if (!(gamma > 0.0)) throw ConfigError("gamma: must be positive");
        if (m_max < 0) throw ConfigError("m_max: must be nonnegative");
        if (m_max_osc2 < 0) throw ConfigError("m_max_osc2: must be nonnegative");
        if (m_max_series < 0) throw ConfigError("m_max_series: must be nonnegative");
        if (bins && *bins < 1) throw ConfigError("bins: must be at least 1");
        if (grid_nmu < 1 || grid_neps < 1)
            throw ConfigError("grid_nmu/grid_neps: must be at least 1");
        if (samples < 1) throw ConfigError("samples: must be at least 1");
        if (workers < 1) throw ConfigError("workers: must be at least 1");
        // Count-replication pipelines default to the benchmark counting
        // convention (no n1 = 0 tower); spectrum-facing pipelines keep
        // the physical spectrum.
        const bool physical = sub == "osc-grid" || sub == "flux-integrated";
        zmode = zero_mode.value_or(physical ? "include" : "exclude");
        if (zmode != "include" && zmode != "exclude")
            throw ConfigError("zero_mode: expected 'include' or 'exclude', got '" + zmode + "'");
        if (sub == "flux-integrated" && model != "cylinder")
            throw ConfigError("model: flux-integrated requires model = cylinder");
    }

    Billiard billiard() const {
        return model == "rect" ? Billiard::rectangle() : Billiard::cylinder(gamma);
    }

    CrossingWindow window() const {
        return {billiard(), eps_max, lo(), hi(), zmode == "include"};
    }

    std::map<std::string, std::string> echo(const std::string& sub) const {
        auto g17 = [](double x) { return io::format_g(x, 17); };
        std::map<std::string, std::string> m;
        m["subcommand"] = sub;
        m["model"] = model;
        m["eps_min"] = g17(eps_min);
        m["eps_max"] = g17(eps_max);
        m["mu"] = g17(mu);
        m["mu_min"] = g17(lo());
        m["mu_max"] = g17(hi());
        m["gamma"] = g17(gamma);
        m["m_max"] = std::to_string(m_max);
        m["m_max_osc2"] = std::to_string(m_max_osc2);
        m["m_max_series"] = std::to_string(m_max_series);
        if (bins) m["bins"] = std::to_string(*bins);
        m["grid_nmu"] = std::to_string(grid_nmu);
        m["grid_neps"] = std::to_string(grid_neps);
        m["samples"] = std::to_string(samples);
        m["workers"] = std::to_string(workers);
        m["out"] = out;
        m["seed"] = std::to_string(seed);
        m["zero_mode"] = zmode;
        return m;
    }
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

std::string report_line(const std::string& key, const std::string& value) {
    return key + " = " + value;
}

// ------------------------------------------------------------ subcommands

io::ArtifactList run_levels(const RunConfig& cfg) {
    const auto levels = enumerate_levels({cfg.billiard(), cfg.eps_max, cfg.mu});
    io::ArtifactList arts;
    arts.emplace_back("levels.csv", io::write_levels_csv(fs::path(cfg.out) / "levels.csv", levels));
    return arts;
}

io::ArtifactList run_crossings(const RunConfig& cfg) {
    const auto crossings = enumerate_crossings(cfg.window(), cfg.workers);
    io::ArtifactList arts;
    arts.emplace_back("crossings.csv",
                      io::write_crossings_csv(fs::path(cfg.out) / "crossings.csv", crossings));
    std::size_t plus = 0, minus = 0;
    for (const auto& c : crossings) {
        if (c.sign_class == '+') ++plus;
        if (c.sign_class == '-') ++minus;
    }
    io::ArtifactWriter summary(fs::path(cfg.out) / "summary.txt");
    summary.line(report_line("n_c", std::to_string(crossings.size())));
    if (cfg.model == "cylinder") {
        summary.line(report_line("n_c_plus", std::to_string(plus)));
        summary.line(report_line("n_c_minus", std::to_string(minus)));
    }
    arts.emplace_back("summary.txt", summary.commit());
    return arts;
}

io::ArtifactList run_smooth(const RunConfig& cfg) {
    // dn_c/d_eps integrated over the parameter window
    const auto xs = linspace(cfg.eps_min, cfg.eps_max, cfg.samples);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] = cfg.model == "rect"
                    ? smooth::rect_integrated_count(xs[i], cfg.lo(), cfg.hi())
                    : smooth::cyl_density(xs[i], cfg.gamma) * (cfg.hi() - cfg.lo());
    io::ArtifactList arts;
    arts.emplace_back("density.csv", io::write_table_csv(fs::path(cfg.out) / "density.csv",
                                                         {"eps", "density"}, {xs, ys}));
    return arts;
}

io::ArtifactList run_gv(const RunConfig& cfg) {
    const bool rect = cfg.model == "rect";
    const double vmax = rect ? 1.0 : 2.0;
    const auto crossings = enumerate_crossings(cfg.window(), cfg.workers);

    io::ArtifactList arts;
    // sampled curve
    const auto vs = linspace(0.0, vmax, cfg.samples);
    std::vector<double> g(vs.size()), gp(vs.size()), gm(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (rect) {
            g[i] = smooth::rect_gv(vs[i]);
        } else {
            const auto parts = smooth::cyl_gv(vs[i]);
            g[i] = parts.total;
            gp[i] = parts.plus_part;
            gm[i] = parts.minus_part;
        }
    }
    arts.emplace_back("gv.csv",
                      io::write_table_csv(fs::path(cfg.out) / "gv.csv", {"v", "g"}, {vs, g}));
    if (!rect)
        arts.emplace_back("gv_components.csv",
                          io::write_table_csv(fs::path(cfg.out) / "gv_components.csv",
                                              {"v", "g_plus", "g_minus"}, {vs, gp, gm}));

    // histogram against the predicted bin masses
    const int bins = cfg.bins.value_or(50);
    const auto hist = harness::bin_crossings(crossings, {0.0, vmax, bins}, harness::BinBy::v);
    const smooth::GvTable table(rect ? Model::rect : Model::cylinder);
    std::vector<double> prediction(hist.counts.size());
    const double n_total = static_cast<double>(hist.total());
    for (std::size_t i = 0; i < prediction.size(); ++i)
        prediction[i] =
            n_total * (table.cdf(hist.edges[i + 1]) - table.cdf(hist.edges[i]));
    arts.emplace_back("hist.csv", io::write_histogram_csv(fs::path(cfg.out) / "hist.csv", hist,
                                                          prediction, 1.0));

    // KS of the sample against the quadrature CDF
    std::vector<double> sample;
    sample.reserve(crossings.size());
    std::size_t plus = 0, minus = 0;
    for (const auto& c : crossings) {
        sample.push_back(c.v);
        if (c.sign_class == '+') ++plus;
        if (c.sign_class == '-') ++minus;
    }
    io::ArtifactWriter report(fs::path(cfg.out) / "report.txt");
    report.line(report_line("n_c", std::to_string(crossings.size())));
    if (!rect) {
        report.line(report_line("n_c_plus", std::to_string(plus)));
        report.line(report_line("n_c_minus", std::to_string(minus)));
    }
    if (!sample.empty()) {
        const double ks =
            harness::ks_distance(sample, [&](double v) { return table.cdf(v); });
        report.line(report_line("ks", io::format_g(ks)));
    }
    report.line(report_line("g_total_mass", io::format_g(table.total_mass())));
    arts.emplace_back("report.txt", report.commit());
    return arts;
}

io::ArtifactList run_osc_grid(const RunConfig& cfg) {
    osc::GridWindow window{cfg.lo(), cfg.hi(), cfg.eps_min, cfg.eps_max, cfg.grid_nmu,
                           cfg.grid_neps};
    const auto grid = osc::osc1_grid(cfg.billiard(), window, cfg.m_max, cfg.workers);
    io::ArtifactList arts;
    arts.emplace_back("grid.dat", io::write_grid(fs::path(cfg.out) / "grid.dat", window, grid));
    // exact crossings inside the same window, for overlays
    auto crossings = enumerate_crossings(cfg.window(), cfg.workers);
    std::erase_if(crossings, [&](const Crossing& c) { return c.energy < cfg.eps_min; });
    arts.emplace_back("crossings.csv",
                      io::write_crossings_csv(fs::path(cfg.out) / "crossings.csv", crossings));
    return arts;
}

io::ArtifactList run_flux_integrated(const RunConfig& cfg) {
    const double width = cfg.hi() - cfg.lo();
    const int bins = cfg.bins.value_or(
        std::max(1, static_cast<int>(std::lround(cfg.eps_max - cfg.eps_min))));
    const auto crossings = enumerate_crossings(cfg.window(), cfg.workers);
    const auto hist = harness::bin_crossings(crossings, {cfg.eps_min, cfg.eps_max, bins},
                                             harness::BinBy::energy);

    // bin-averaged series: smooth and smooth + rotationless orbit sum
    const int sub = 200;
    std::vector<double> centers(bins), smooth_col(bins), osc1_col(bins), osc2_col(bins);
    const double bw = hist.bin_width();
    for (int i = 0; i < bins; ++i) {
        centers[i] = hist.center(i);
        double acc_s = 0.0, acc_o = 0.0;
        for (int k = 0; k < sub; ++k) {
            const double eps = hist.edges[i] + bw * (k + 0.5) / sub;
            const double s = smooth::cyl_density(eps, cfg.gamma);
            acc_s += s;
            acc_o += s + osc::cyl_integrated_osc1(eps, cfg.gamma, cfg.m_max_series);
        }
        smooth_col[i] = acc_s / sub * width;
        osc1_col[i] = acc_o / sub * width;
        osc2_col[i] =
            osc1_col[i] + osc::cyl_osc2_flux_avg(centers[i], cfg.gamma, cfg.m_max_osc2) * width;
    }

    io::ArtifactList arts;
    arts.emplace_back("series.csv",
                      io::write_table_csv(fs::path(cfg.out) / "series.csv",
                                          {"eps", "smooth", "smooth_osc1", "smooth_osc1_osc2"},
                                          {centers, smooth_col, osc1_col, osc2_col}));
    std::vector<double> prediction(bins);
    for (int i = 0; i < bins; ++i) prediction[i] = osc1_col[i] * bw;
    arts.emplace_back("hist.csv", io::write_histogram_csv(fs::path(cfg.out) / "hist.csv", hist,
                                                          prediction, width));

    const auto hist_peaks = harness::detect_peaks(hist.density(width));
    const auto series_peaks = harness::detect_peaks(osc1_col);
    io::ArtifactWriter peaks(fs::path(cfg.out) / "peaks.txt");
    auto emit = [&](const char* tag, const std::vector<int>& idx) {
        std::string line = std::string(tag) + " =";
        for (int i : idx) line += " " + io::format_g(centers[i]);
        peaks.line(line);
    };
    emit("hist_peaks", hist_peaks);
    emit("series_peaks", series_peaks);
    arts.emplace_back("peaks.txt", peaks.commit());
    return arts;
}

io::ArtifactList run_compare(const RunConfig& cfg) {
    const bool rect = cfg.model == "rect";
    const double width = cfg.hi() - cfg.lo();
    const int bins = cfg.bins.value_or(100);
    const auto crossings = enumerate_crossings(cfg.window(), cfg.workers);
    const auto hist = harness::bin_crossings(crossings, {cfg.eps_min, cfg.eps_max, bins},
                                             harness::BinBy::energy);
    const auto density = [&](double eps) {
        return rect ? smooth::rect_integrated_count(eps, cfg.lo(), cfg.hi())
                    : smooth::cyl_density(eps, cfg.gamma) * width;
    };
    // the cylinder histogram carries band-head spikes whose pileup
    // ladders span a few bins; the spike bin and a margin around it are
    // excluded from the chi^2 score
    std::vector<int> exclude;
    if (!rect) {
        for (int p : harness::detect_peaks(hist.density(1.0)))
            for (int k = -3; k <= 3; ++k)
                if (p + k >= 0 && p + k < bins) exclude.push_back(p + k);
        std::sort(exclude.begin(), exclude.end());
        exclude.erase(std::unique(exclude.begin(), exclude.end()), exclude.end());
    }
    const auto rep = harness::compare_to_smooth(hist, density, 1.0, exclude);

    io::ArtifactList arts;
    arts.emplace_back("compare.csv", io::write_histogram_csv(fs::path(cfg.out) / "compare.csv",
                                                             hist, rep.expected, width));
    io::ArtifactWriter report(fs::path(cfg.out) / "report.txt");
    report.line(report_line("n_c", std::to_string(crossings.size())));
    report.line(report_line("chi2", io::format_g(rep.chi2)));
    report.line(report_line("dof", std::to_string(rep.dof)));
    report.line(report_line("chi2_per_dof", io::format_g(rep.chi2_per_dof)));
    report.line(report_line("excluded_bins", std::to_string(rep.excluded_bins.size())));
    if (rect) {
        const auto [slope, icpt] = harness::density_slope(hist, 1.0, cfg.eps_min, cfg.eps_max);
        report.line(report_line("density_slope", io::format_g(slope)));
        report.line(report_line("density_intercept", io::format_g(icpt)));
        report.line(
            report_line("predicted_slope", io::format_g(0.25 * std::log(cfg.hi() / cfg.lo()))));
    }
    arts.emplace_back("report.txt", report.commit());
    return arts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-crossing statistics for two integrable billiards"};
    app.set_config("--config", "", "key = value configuration file; flags override");
    app.allow_config_extras(false);

    RunConfig cfg;
    std::string subcommand;
    app.add_option("subcommand", subcommand,
                   "one of: levels, crossings, smooth, gv, osc-grid, flux-integrated, compare")
        ->required();
    app.add_option("--model", cfg.model, "rect | cylinder");
    app.add_option("--eps-min,--eps_min", cfg.eps_min_opt,
                   "lower energy bound (default 0; flux-integrated 90)");
    app.add_option("--eps-max,--eps_max", cfg.eps_max_opt,
                   "energy cutoff (default 100; flux-integrated 1406)");
    app.add_option("--mu", cfg.mu, "fixed parameter for the levels subcommand");
    double mu_min_flag = 0.0, mu_max_flag = 0.0;
    auto* omin = app.add_option("--mu-min,--mu_min", mu_min_flag,
                                "parameter window start (default: rect 1, cylinder 0)");
    auto* omax = app.add_option("--mu-max,--mu_max", mu_max_flag,
                                "parameter window end, exclusive (default: rect 2, cylinder 1)");
    app.add_option("--gamma", cfg.gamma, "cylinder geometry ratio");
    app.add_option("--m-max,--m_max", cfg.m_max, "orbit-topology truncation");
    app.add_option("--m-max-osc2,--m_max_osc2", cfg.m_max_osc2,
                   "truncation of the two-orbit flux-averaged sum");
    app.add_option("--m-max-series,--m_max_series", cfg.m_max_series,
                   "truncation of the flux-integrated bounce series");
    int bins_flag = 0;
    auto* obins = app.add_option("--bins", bins_flag, "histogram bin count");
    app.add_option("--grid-nmu,--grid_nmu", cfg.grid_nmu, "grid columns (parameter axis)");
    app.add_option("--grid-neps,--grid_neps", cfg.grid_neps, "grid rows (energy axis)");
    app.add_option("--samples", cfg.samples, "points per sampled curve");
    app.add_option("--workers", cfg.workers, "worker threads");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--seed", cfg.seed, "reserved");
    std::string zero_mode_flag;
    auto* ozm = app.add_option("--zero-mode,--zero_mode", zero_mode_flag,
                               "include | exclude the cylinder n1 = 0 tower in crossing "
                               "enumeration (default: include for osc-grid and "
                               "flux-integrated, exclude otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (omin->count() > 0) cfg.mu_min = mu_min_flag;
    if (omax->count() > 0) cfg.mu_max = mu_max_flag;
    if (obins->count() > 0) cfg.bins = bins_flag;
    if (ozm->count() > 0) cfg.zero_mode = zero_mode_flag;

    try {
        cfg.resolve_and_validate(subcommand);
        io::ArtifactList arts;
        if (subcommand == "levels") arts = run_levels(cfg);
        else if (subcommand == "crossings") arts = run_crossings(cfg);
        else if (subcommand == "smooth") arts = run_smooth(cfg);
        else if (subcommand == "gv") arts = run_gv(cfg);
        else if (subcommand == "osc-grid") arts = run_osc_grid(cfg);
        else if (subcommand == "flux-integrated") arts = run_flux_integrated(cfg);
        else if (subcommand == "compare") arts = run_compare(cfg);
        else throw ConfigError("subcommand: unknown subcommand '" + subcommand + "'");
        io::write_manifest(fs::path(cfg.out) / "manifest.txt", cfg.echo(subcommand), arts);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levelcross/crossings.hpp"

// Binning of enumerated crossings and scoring against the smooth /
// oscillating predictions: chi^2 with Poisson weights, Kolmogorov-Smirnov
// distances, least-squares density slopes and peak lists.

namespace lcross::harness {

struct HistogramSpec {
    double lo = 0.0;
    double hi = 1.0;
    int bins = 100;
};

struct Histogram {
    std::vector<double> edges;         // bins + 1 ascending
    std::vector<std::int64_t> counts;  // left-closed, right-open bins
    double bin_width() const { return edges[1] - edges[0]; }
    double center(int i) const { return 0.5 * (edges[i] + edges[i + 1]); }
    std::int64_t total() const;
    // counts / (bin width * param_width): a density per unit x per unit
    // parameter-window width.
    std::vector<double> density(double param_width = 1.0) const;
};

// Values outside [lo, hi) are dropped; a value exactly on an interior
// edge lands in the bin to its right.
Histogram bin_values(const std::vector<double>& xs, const HistogramSpec& spec);

enum class BinBy { energy, v };
Histogram bin_crossings(const std::vector<Crossing>& crossings, const HistogramSpec& spec,
                        BinBy what);

struct ComparisonReport {
    std::vector<double> expected;   // integrated prediction per bin
    std::vector<double> residuals;  // count - expected
    double chi2 = 0.0;
    int dof = 0;
    double chi2_per_dof = 0.0;
    std::vector<int> excluded_bins;  // peak bins left out of chi^2
};

// Pearson-style chi^2 of the counts against an integrated prediction
// (integral of the density across each bin) with Poisson weights; bins
// with zero counts are weighted by the expected count instead. Bins
// listed in `exclude` are reported but not scored.
ComparisonReport compare_to_smooth(const Histogram& hist,
                                   const std::function<double(double)>& density,
                                   double param_width = 1.0,
                                   const std::vector<int>& exclude = {});

// Least-squares line through (center_i, density_i) for centers inside
// [x_lo, x_hi]; returns {slope, intercept}.
std::pair<double, double> density_slope(const Histogram& hist, double param_width, double x_lo,
                                        double x_hi);

// One-sample Kolmogorov-Smirnov distance of samples against a CDF.
// Samples need not be sorted.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct PeakParams {
    int median_window = 9;  // moving-median detrend width (bins)
    int iqr_window = 51;    // local spread estimate width (bins)
    double threshold = 3.0; // peaks must exceed threshold * local IQR
};

// Indices of local maxima of the detrended series whose residual
// exceeds the prominence threshold. Invariant under adding a constant.
std::vector<int> detect_peaks(const std::vector<double>& series, const PeakParams& params = {});

}  // namespace lcross::harness

#include "levelcross/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levelcross/quadrature.hpp"

namespace lcross::harness {

std::int64_t Histogram::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::vector<double> Histogram::density(double param_width) const {
    std::vector<double> d(counts.size());
    const double w = bin_width() * param_width;
    for (std::size_t i = 0; i < counts.size(); ++i) d[i] = static_cast<double>(counts[i]) / w;
    return d;
}

Histogram bin_values(const std::vector<double>& xs, const HistogramSpec& spec) {
    if (spec.bins < 1 || !(spec.hi > spec.lo))
        throw std::domain_error("bin_values: need bins >= 1 and hi > lo");
    Histogram h;
    h.edges.resize(spec.bins + 1);
    for (int i = 0; i <= spec.bins; ++i)
        h.edges[i] = spec.lo + (spec.hi - spec.lo) * i / spec.bins;
    h.counts.assign(spec.bins, 0);
    const double scale = spec.bins / (spec.hi - spec.lo);
    for (double x : xs) {
        if (x < spec.lo || x >= spec.hi) continue;
        int i = static_cast<int>((x - spec.lo) * scale);
        if (i >= spec.bins) i = spec.bins - 1;
        // the edge convention is decided by the edges themselves, not the
        // rounded multiplication above
        if (x < h.edges[i]) --i;
        else if (x >= h.edges[i + 1]) ++i;
        ++h.counts[i];
    }
    return h;
}

Histogram bin_crossings(const std::vector<Crossing>& crossings, const HistogramSpec& spec,
                        BinBy what) {
    std::vector<double> xs;
    xs.reserve(crossings.size());
    for (const auto& c : crossings) xs.push_back(what == BinBy::energy ? c.energy : c.v);
    return bin_values(xs, spec);
}

ComparisonReport compare_to_smooth(const Histogram& hist,
                                   const std::function<double(double)>& density,
                                   double param_width, const std::vector<int>& exclude) {
    ComparisonReport rep;
    const int n = static_cast<int>(hist.counts.size());
    rep.expected.resize(n);
    rep.residuals.resize(n);
    rep.excluded_bins = exclude;
    std::sort(rep.excluded_bins.begin(), rep.excluded_bins.end());
    for (int i = 0; i < n; ++i) {
        const double e =
            quad::integrate(density, hist.edges[i], hist.edges[i + 1], 1e-9) * param_width;
        rep.expected[i] = e;
        rep.residuals[i] = static_cast<double>(hist.counts[i]) - e;
    }
    rep.chi2 = 0.0;
    rep.dof = 0;
    for (int i = 0; i < n; ++i) {
        if (std::binary_search(rep.excluded_bins.begin(), rep.excluded_bins.end(), i)) continue;
        const double weight =
            hist.counts[i] > 0 ? static_cast<double>(hist.counts[i]) : rep.expected[i];
        if (weight <= 0.0) continue;  // empty bin with zero prediction carries no information
        rep.chi2 += rep.residuals[i] * rep.residuals[i] / weight;
        ++rep.dof;
    }
    rep.chi2_per_dof = rep.dof > 0 ? rep.chi2 / rep.dof : 0.0;
    return rep;
}

std::pair<double, double> density_slope(const Histogram& hist, double param_width, double x_lo,
                                        double x_hi) {
    const auto dens = hist.density(param_width);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < dens.size(); ++i) {
        const double x = hist.center(static_cast<int>(i));
        if (x < x_lo || x > x_hi) continue;
        sx += x;
        sy += dens[i];
        sxx += x * x;
        sxy += x * dens[i];
        ++n;
    }
    if (n < 2) throw std::domain_error("density_slope: fewer than two bins in range");
    const double det = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::domain_error("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;  // step over ties together
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

namespace {

double window_median(const std::vector<double>& y, int center, int half) {
    const int n = static_cast<int>(y.size());
    const int lo = std::max(0, center - half);
    const int hi = std::min(n - 1, center + half);
    std::vector<double> w(y.begin() + lo, y.begin() + hi + 1);
    const std::size_t mid = w.size() / 2;
    std::nth_element(w.begin(), w.begin() + mid, w.end());
    double m = w[mid];
    if (w.size() % 2 == 0) {
        std::nth_element(w.begin(), w.begin() + mid - 1, w.end());
        m = 0.5 * (m + w[mid - 1]);
    }
    return m;
}

double window_iqr(const std::vector<double>& y, int center, int half) {
    const int n = static_cast<int>(y.size());
    const int lo = std::max(0, center - half);
    const int hi = std::min(n - 1, center + half);
    std::vector<double> w(y.begin() + lo, y.begin() + hi + 1);
    const std::size_t q1 = w.size() / 4;
    const std::size_t q3 = (3 * w.size()) / 4;
    std::nth_element(w.begin(), w.begin() + q1, w.end());
    const double lo_q = w[q1];
    std::nth_element(w.begin(), w.begin() + q3, w.end());
    const double hi_q = w[q3];
    return hi_q - lo_q;
}

}  // namespace

std::vector<int> detect_peaks(const std::vector<double>& series, const PeakParams& params) {
    const int n = static_cast<int>(series.size());
    std::vector<int> peaks;
    if (n < 3) return peaks;
    std::vector<double> resid(n);
    const int med_half = std::max(1, params.median_window / 2);
    for (int i = 0; i < n; ++i) resid[i] = series[i] - window_median(series, i, med_half);
    const int iqr_half = std::max(2, params.iqr_window / 2);
    for (int i = 1; i + 1 < n; ++i) {
        if (!(resid[i] > resid[i - 1] && resid[i] >= resid[i + 1])) continue;
        if (resid[i] > params.threshold * window_iqr(resid, i, iqr_half)) peaks.push_back(i);
    }
    return peaks;
}

}  // namespace lcross::harness

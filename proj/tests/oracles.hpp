#pragma once

// Test-only reference implementations, independent of the library's
// analytic paths: finite-difference slopes and a grid-scan-plus-bisection
// crossing finder.

#include <algorithm>
#include <cmath>
#include <vector>

#include "levelcross/billiards.hpp"
#include "levelcross/crossings.hpp"

namespace lcross::oracle {

inline double fd_slope(const Billiard& billiard, LevelKey key, double mu, double h = 1e-6) {
    return (billiard.energy(key, mu + h) - billiard.energy(key, mu - h)) / (2.0 * h);
}

struct BruteCrossing {
    LevelKey a, b;
    double mu_star;
    double energy;
};

// All levels that could participate: generous rectangular lattice bounds,
// filtered by the minimum of the energy over the closed window.
inline std::vector<LevelKey> brute_candidates(const CrossingWindow& w) {
    std::vector<LevelKey> keys;
    if (w.billiard.model() == Model::rect) {
        const int n1_max = static_cast<int>(std::ceil(std::sqrt(w.eps_max / w.mu_min))) + 2;
        const int n2_max = static_cast<int>(std::ceil(std::sqrt(w.eps_max * w.mu_max))) + 2;
        for (int n1 = 1; n1 <= n1_max; ++n1)
            for (int n2 = 1; n2 <= n2_max; ++n2) {
                double lo = 1e300;
                for (double mu : {w.mu_min, w.mu_max, std::clamp(double(n2) / n1, w.mu_min, w.mu_max)})
                    lo = std::min(lo, w.billiard.energy({n1, n2}, mu));
                if (lo <= w.eps_max) keys.push_back({n1, n2});
            }
    } else {
        const double gamma = w.billiard.gamma();
        const int span = static_cast<int>(std::ceil(std::sqrt(w.eps_max / gamma))) + 2;
        const int n1_lo = static_cast<int>(std::floor(w.mu_min)) - span;
        const int n1_hi = static_cast<int>(std::ceil(w.mu_max)) + span;
        const int n2_max = static_cast<int>(std::ceil(std::sqrt(w.eps_max)));
        for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
            if (!w.include_zero_mode && n1 == 0) continue;
            for (int n2 = 0; n2 <= n2_max; ++n2) {
                const double d = std::max({w.mu_min - n1, double(n1) - w.mu_max, 0.0});
                if (gamma * d * d + (n2 + 1.0) * (n2 + 1.0) <= w.eps_max) keys.push_back({n1, n2});
            }
        }
    }
    return keys;
}

// Scan the energy difference of every candidate pair on a uniform grid,
// bisect each sign change down to ~1e-12, keep roots in [mu_min, mu_max)
// with crossing energy <= eps_max.
inline std::vector<BruteCrossing> brute_force_crossings(const CrossingWindow& w,
                                                        double grid_step = 1e-4) {
    const std::vector<LevelKey> keys = brute_candidates(w);
    const int n_grid = static_cast<int>(std::ceil((w.mu_max - w.mu_min) / grid_step));
    std::vector<BruteCrossing> out;

    std::vector<double> grid(n_grid + 1);
    for (int g = 0; g <= n_grid; ++g)
        grid[g] = w.mu_min + (w.mu_max - w.mu_min) * g / n_grid;

    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            const LevelKey k1 = keys[i], k2 = keys[j];
            auto diff = [&](double mu) {
                return w.billiard.energy(k1, mu) - w.billiard.energy(k2, mu);
            };
            double prev = diff(grid[0]);
            for (int g = 0; g <= n_grid; ++g) {
                const double cur = diff(grid[g]);
                double root = std::numeric_limits<double>::quiet_NaN();
                if (cur == 0.0) {
                    root = grid[g];
                } else if (g > 0 && prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
                    double lo = grid[g - 1], hi = grid[g], flo = prev;
                    for (int it = 0; it < 100; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = diff(mid);
                        if (fm == 0.0) { lo = hi = mid; break; }
                        if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; }
                        else hi = mid;
                    }
                    root = 0.5 * (lo + hi);
                }
                prev = cur;
                if (!std::isnan(root) && root >= w.mu_min && root < w.mu_max) {
                    const double e = w.billiard.energy(k1, root);
                    if (e <= w.eps_max) {
                        LevelKey a = k1, b = k2;
                        if (b < a) std::swap(a, b);
                        out.push_back({a, b, root, e});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const BruteCrossing& x, const BruteCrossing& y) {
        if (x.mu_star != y.mu_star) return x.mu_star < y.mu_star;
        if (x.energy != y.energy) return x.energy < y.energy;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

}  // namespace lcross::oracle

#include "levelcross/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace lcross {

static void sort_levels(std::vector<Level>& out) {
    std::sort(out.begin(), out.end(), [](const Level& a, const Level& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.key < b.key;
    });
}

std::vector<Level> enumerate_levels(const SpectrumWindow& window) {
    std::vector<Level> out;
    const double eps = window.eps_max;
    if (!(eps > 0.0) && window.billiard.model() == Model::rect) return out;

    // Bounds get a +1 safety margin; the inclusive e <= eps test decides.
    if (window.billiard.model() == Model::rect) {
        const double mu = window.mu;
        if (!(mu > 0.0)) throw std::domain_error("rect spectrum: mu must be positive");
        const int n1_max = static_cast<int>(std::floor(std::sqrt(eps / mu))) + 1;
        for (int n1 = 1; n1 <= n1_max; ++n1) {
            const double rem = eps - mu * static_cast<double>(n1) * static_cast<double>(n1);
            const int n2_max = rem > 0.0 ? static_cast<int>(std::floor(std::sqrt(rem * mu))) + 1 : 1;
            for (int n2 = 1; n2 <= n2_max; ++n2) {
                const LevelKey k{n1, n2};
                const double e = RectBilliard::energy(k, mu);
                if (e <= eps) out.push_back({k, e});
            }
        }
    } else {
        const double phi = window.mu;
        const double gamma = window.billiard.gamma();
        if (!(eps >= 1.0)) return out;  // ground band starts at (n2+1)^2 = 1
        const double half_width = std::sqrt(eps / gamma);
        const int n1_lo = static_cast<int>(std::ceil(phi - half_width)) - 1;
        const int n1_hi = static_cast<int>(std::floor(phi + half_width)) + 1;
        const CylinderBilliard cyl{gamma};
        for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
            const double d = static_cast<double>(n1) - phi;
            const double rem = eps - gamma * d * d;
            const int n2_max = rem > 1.0 ? static_cast<int>(std::floor(std::sqrt(rem))) : 1;
            for (int n2 = 0; n2 <= n2_max; ++n2) {
                const LevelKey k{n1, n2};
                const double e = cyl.energy(k, phi);
                if (e <= eps) out.push_back({k, e});
            }
        }
    }
    sort_levels(out);
    return out;
}

std::vector<double> level_curve(const Billiard& billiard, LevelKey key,
                                const std::vector<double>& mu_grid) {
    std::vector<double> out;
    out.reserve(mu_grid.size());
    for (double mu : mu_grid) out.push_back(billiard.energy(key, mu));
    return out;
}

}  // namespace lcross

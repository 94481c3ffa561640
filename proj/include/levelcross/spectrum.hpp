#pragma once

#include <utility>
#include <vector>

#include "levelcross/billiards.hpp"

namespace lcross {

struct SpectrumWindow {
    Billiard billiard = Billiard::rectangle();
    double eps_max = 0.0;
    double mu = 1.0;  // flux for the cylinder
};

struct Level {
    LevelKey key;
    double energy;
};

// All levels with energy <= eps_max at fixed parameter, sorted by
// (energy, n1, n2). Bounds come from the closed-form energies:
// rect n1 <= sqrt(eps/mu), n2 <= sqrt(eps*mu); cylinder |n1-phi| <= sqrt(eps/gamma),
// n2+1 <= sqrt(eps). An empty window yields an empty list.
std::vector<Level> enumerate_levels(const SpectrumWindow& window);

// Element-wise energy of one level over a parameter grid.
std::vector<double> level_curve(const Billiard& billiard, LevelKey key,
                                const std::vector<double>& mu_grid);

}  // namespace lcross

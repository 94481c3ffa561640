#pragma once

#include <vector>

#include "levelcross/billiards.hpp"

namespace lcross {

// A resolved degeneracy of two distinct levels at parameter mu_star.
// sign_class: '+' slopes share their sign, '-' they do not (or one
// vanishes), '.' not applicable (rectangle).
struct Crossing {
    LevelKey a, b;        // canonical order: a < b lexicographically
    double mu_star = 0.0;
    double energy = 0.0;
    double V = 0.0;       // |slope(a) - slope(b)| at mu_star
    double v = 0.0;       // relative slope gap, in [0,1] rect / [0,2] cylinder
    char sign_class = '.';
};

// Search region. The parameter interval is half-open [mu_min, mu_max);
// the energy cutoff applies to the energy at the crossing, inclusively.
// include_zero_mode (cylinder only): whether the n1 = 0 tower takes part
// in pair enumeration. The reference counts for the gamma = 4/pi^2
// benchmark omit that tower, so batch runs reproducing them disable it.
struct CrossingWindow {
    Billiard billiard = Billiard::rectangle();
    double eps_max = 0.0;
    double mu_min = 0.0;
    double mu_max = 1.0;
    bool include_zero_mode = true;
};

// All parameter roots of h(key1, mu) = h(key2, mu) in the model's
// admissible range (at most one for both models), with classification.
// Precondition: key1 != key2, both admissible.
std::vector<Crossing> crossing_of_pair(const Billiard& billiard, LevelKey key1, LevelKey key2);

// Every crossing inside the window, each unordered pair once, sorted by
// (mu_star, energy, keys). Deterministic for any worker count.
std::vector<Crossing> enumerate_crossings(const CrossingWindow& window, unsigned workers = 1);

// Relative sign of the slopes at an already-located cylinder crossing.
char classify_sign(const Billiard& billiard, const Crossing& crossing);

}  // namespace lcross

#pragma once

#include <vector>

#include "levelcross/billiards.hpp"

// Smooth (non-oscillating) predictions: crossing densities, integrated
// counts, sign-class fractions and slope-gap distributions g(v). The g
// integrals are evaluated numerically after endpoint-desingularizing
// substitutions; no special-function closed forms are used.

namespace lcross::smooth {

// Crossings per unit energy per unit parameter.
double rect_density(double eps, double mu);               // eps / (4 mu)
double cyl_density(double eps, double gamma);             // 2 sqrt(eps/gamma)

// dn_c/d_eps for the rectangle integrated over mu in [mu1, mu2].
double rect_integrated_count(double eps, double mu1, double mu2);

// Fractions of same-sign / opposite-sign cylinder crossings: the
// component masses of the smooth density divided by its total, i.e.
// (1 - pi/4, pi/4). Independent of energy and geometry.
std::pair<double, double> cyl_sign_fractions();

// Slope-gap distribution of the rectangle on [0, 1].
double rect_gv(double v);

struct CylGv {
    double total = 0.0;
    double plus_part = 0.0;   // same-sign component (support [0,1])
    double minus_part = 0.0;  // opposite-sign component (support [0,2])
};

// Slope-gap distribution of the cylinder on [0, 2], with the component
// breakdown.
CylGv cyl_gv(double v);

// Smooth joint density <rho_c(eps, mu, v)>, evaluated from the generic
// one-dimensional integral over I1 (the branch decomposition of the
// slope-gap change of variables), not from the closed-form g products.
// For the cylinder, `mu` is ignored (flux independence) and the geometry
// is taken from the billiard.
double generic_dcds(const Billiard& billiard, double eps, double mu, double v);

// Tabulated CDF of a g distribution on [0, vmax], linear interpolation
// between uniformly spaced nodes. Used for Kolmogorov-Smirnov scoring.
class GvTable {
public:
    GvTable(Model model, int nodes = 8192);
    double vmax() const { return vmax_; }
    double cdf(double v) const;
    double total_mass() const { return cdf_.back(); }

private:
    double vmax_;
    std::vector<double> cdf_;
};

}  // namespace lcross::smooth

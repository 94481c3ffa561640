#pragma once

#include <vector>

#include "levelcross/billiards.hpp"

// Truncated periodic-orbit (oscillating) contributions to the crossing
// density. Topologies (m1, m2) follow the positive-quadrant convention:
// rectangle m1, m2 >= 1; cylinder m1 >= 0 (rotations, doubled for
// m1 != 0 by time reversal) with m2 >= 1 bounces. m2 = 0 families sit on
// the shell edge where the stationary-phase amplitude degenerates and
// are excluded. Terms are accumulated in increasing m1^2 + m2^2 with
// compensated summation.

namespace lcross::osc {

// One periodic-orbit class. The action is the full phase argument at
// unit hbar; the stationary-phase offset is -pi/4 for both models (the
// Maslov parts cancel modulo 2 pi). multiplicity counts time-reversed
// partners; the printed rectangle amplitudes absorb it, the cylinder
// sums carry it explicitly.
struct OrbitTopology {
    int m1 = 0;
    int m2 = 0;
    double multiplicity = 1.0;
    double action = 0.0;
    double phase = -0.25 * kPi;
};

OrbitTopology rect_topology(int m1, int m2, double mu, double eps);
OrbitTopology cyl_topology(int m1, int m2, double gamma, double eps);

// Per-topology data for one fixed parameter value: the cosine argument
// is freq * sqrt(eps) - pi/4 and the prefactor eps^(3/4) (rect) or
// eps^(1/4) (cylinder) is applied outside the sum.
struct TermTable {
    std::vector<double> amp;
    std::vector<double> freq;
};

TermTable rect_osc1_table(double mu, int m_max);
TermTable cyl_osc1_table(double phi, double gamma, int m_max);

double rect_osc1(double eps, double mu, int m_max);
double rect_osc2(double eps, double mu, int m_max);
double cyl_osc1(double eps, double phi, double gamma, int m_max);
double cyl_osc2(double eps, double phi, double gamma, int m_max);

// Flux average of cyl_osc2 over one period, reduced analytically by
// cosine orthogonality (only m1 = m1' products survive; the m1 = -m1'
// channel collapses to m1 = m1' = 0 where its weight vanishes).
double cyl_osc2_flux_avg(double eps, double gamma, int m_max);

// Flux-integrated first contribution: the m1 = 0 rotationless families,
//   2 (eps/gamma)^(1/4) sum_{m2 >= 1} m2^(-1/2) cos(2 pi m2 sqrt(eps) - pi/4).
double cyl_integrated_osc1(double eps, double gamma, int m_max);

struct GridWindow {
    double mu_min = 0.0, mu_max = 1.0;   // parameter axis (mu or flux)
    double eps_min = 0.0, eps_max = 1.0;
    int n_mu = 512, n_eps = 512;
};

// osc1 sampled at cell centers; row-major with the eps index slowest.
// value[i_eps * n_mu + i_mu].
std::vector<double> osc1_grid(const Billiard& billiard, const GridWindow& window, int m_max,
                              unsigned workers = 1);

}  // namespace lcross::osc

#include "levelcross/osc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "levelcross/kernels.hpp"
#include "levelcross/parallel.hpp"

namespace lcross::osc {

namespace {

constexpr double kQuarterTurn = -0.25 * kPi;

struct Neumaier {
    double sum = 0.0, comp = 0.0;
    void add(double y) {
        const double t = sum + y;
        comp += std::abs(sum) >= std::abs(y) ? (sum - t) + y : (y - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

// (m1, m2) lattice sorted by m1^2 + m2^2 (ties by m1, m2): the term
// accumulation order of every sum below.
std::vector<std::pair<int, int>> topology_order(int m1_lo, int m1_hi, int m2_lo, int m2_hi) {
    std::vector<std::pair<int, int>> ms;
    for (int m1 = m1_lo; m1 <= m1_hi; ++m1)
        for (int m2 = m2_lo; m2 <= m2_hi; ++m2) ms.emplace_back(m1, m2);
    std::sort(ms.begin(), ms.end(), [](auto a, auto b) {
        const long ra = long(a.first) * a.first + long(a.second) * a.second;
        const long rb = long(b.first) * b.first + long(b.second) * b.second;
        if (ra != rb) return ra < rb;
        return a < b;
    });
    return ms;
}

void check_trunc(int m_max) {
    if (m_max < 0) throw std::domain_error("osc: m_max must be nonnegative");
}

}  // namespace

OrbitTopology rect_topology(int m1, int m2, double mu, double eps) {
    if (m1 < 1 || m2 < 1)
        throw std::domain_error("rect_topology: topologies have m1, m2 >= 1");
    if (!(mu > 0.0) || !(eps > 0.0)) throw std::domain_error("rect_topology: need mu, eps > 0");
    OrbitTopology t;
    t.m1 = m1;
    t.m2 = m2;
    t.multiplicity = 2.0;  // each topology has a time-reversed partner
    t.action = 2.0 * kPi *
               std::sqrt((double(m1) * m1 / mu + double(m2) * m2 * mu) * eps);
    return t;
}

OrbitTopology cyl_topology(int m1, int m2, double gamma, double eps) {
    if (m1 < 0 || m2 < 1)
        throw std::domain_error("cyl_topology: need m1 >= 0 rotations and m2 >= 1 bounces");
    if (!(gamma > 0.0) || !(eps > 0.0))
        throw std::domain_error("cyl_topology: need gamma, eps > 0");
    OrbitTopology t;
    t.m1 = m1;
    t.m2 = m2;
    t.multiplicity = m1 == 0 ? 1.0 : 2.0;  // rotationless orbits are self-conjugate
    t.action = 2.0 * kPi * std::sqrt(eps / gamma * (double(m1) * m1 + gamma * double(m2) * m2));
    return t;
}

TermTable rect_osc1_table(double mu, int m_max) {
    check_trunc(m_max);
    if (!(mu > 0.0)) throw std::domain_error("rect_osc1: mu must be positive");
    TermTable t;
    if (m_max == 0) return t;
    const auto ms = topology_order(1, m_max, 1, m_max);
    t.amp.reserve(ms.size());
    t.freq.reserve(ms.size());
    const double inv_mu34 = std::pow(mu, -0.75);
    for (auto [m1i, m2i] : ms) {
        const double m1 = m1i, m2 = m2i;
        const double a2 = m1 * m1 + m2 * m2 * mu * mu;
        const double bracket =
            (4.0 * m1 * m2 * mu + kPi * m2 * m2 * mu * mu - kPi * m1 * m1) / (8.0 * a2) +
            (m1 * m1 - m2 * m2 * mu * mu) / (2.0 * a2) * std::asin(m1 / std::sqrt(a2));
        t.amp.push_back(inv_mu34 * std::pow(a2, -0.25) * bracket);
        t.freq.push_back(2.0 * kPi * std::sqrt(m1 * m1 / mu + m2 * m2 * mu));
    }
    return t;
}

TermTable cyl_osc1_table(double phi, double gamma, int m_max) {
    check_trunc(m_max);
    if (!(gamma > 0.0)) throw std::domain_error("cyl_osc1: gamma must be positive");
    phi -= std::floor(phi);  // integer m1 makes the flux dependence 1-periodic
    TermTable t;
    if (m_max == 0) return t;
    const auto ms = topology_order(0, m_max, 1, m_max);
    t.amp.reserve(ms.size());
    t.freq.reserve(ms.size());
    for (auto [m1i, m2i] : ms) {
        const double m1 = m1i, m2 = m2i;
        const double a2 = m1 * m1 + gamma * m2 * m2;
        const double sa = std::sqrt(a2);
        const double delta = (m1i == 0) ? 1.0 : 2.0;
        const double amp0 = delta * std::pow(gamma * a2, -0.25) *
                            ((m1 / sa) * std::asin(m1 / sa) + std::sqrt(gamma) * m2 / sa);
        t.amp.push_back(amp0 * std::cos(2.0 * kPi * m1 * phi));
        t.freq.push_back(2.0 * kPi * std::sqrt(a2 / gamma));
    }
    return t;
}

double rect_osc1(double eps, double mu, int m_max) {
    if (!(eps > 0.0)) throw std::domain_error("rect_osc1: eps must be positive");
    const TermTable t = rect_osc1_table(mu, m_max);
    const double body =
        kernels::sum_amp_cos(t.amp.data(), t.freq.data(), t.amp.size(), std::sqrt(eps), kQuarterTurn);
    return std::pow(eps, 0.75) * body;
}

double cyl_osc1(double eps, double phi, double gamma, int m_max) {
    if (!(eps > 0.0)) throw std::domain_error("cyl_osc1: eps must be positive");
    const TermTable t = cyl_osc1_table(phi, gamma, m_max);
    const double body =
        kernels::sum_amp_cos(t.amp.data(), t.freq.data(), t.amp.size(), std::sqrt(eps), kQuarterTurn);
    return std::pow(eps, 0.25) * body;
}

double rect_osc2(double eps, double mu, int m_max) {
    check_trunc(m_max);
    if (!(eps > 0.0) || !(mu > 0.0)) throw std::domain_error("rect_osc2: need eps, mu > 0");
    if (m_max == 0) return 0.0;
    const auto ms = topology_order(1, m_max, 1, m_max);
    const std::size_t n = ms.size();
    std::vector<double> t(n), k(n);
    const double sqe = std::sqrt(eps);
    for (std::size_t j = 0; j < n; ++j) {
        const double m1 = ms[j].first, m2 = ms[j].second;
        const double a2 = m1 * m1 + m2 * m2 * mu * mu;
        t[j] = std::pow(a2, -0.25) *
               std::cos(2.0 * kPi * std::sqrt(m1 * m1 / mu + m2 * m2 * mu) * sqe + kQuarterTurn);
        k[j] = m1 * m1 / a2;
    }
    Neumaier acc;
    for (std::size_t j = 0; j < n; ++j)
        acc.add(t[j] * kernels::dot_abs_diff(t.data(), k.data(), n, k[j]));
    return std::sqrt(eps / mu) * acc.get();
}

namespace {

struct CylTerms {
    std::vector<double> k;        // m1 / (m1^2 + gamma m2^2)
    std::vector<double> cs, sn;   // cos/sin of 2 pi S~
    std::vector<double> cp, sp;   // cos/sin of 2 pi m1 phi
    std::vector<int> m1;
};

CylTerms cyl_osc2_terms(double eps, double phi, double gamma, int m_max) {
    const auto ms = topology_order(0, m_max, 1, m_max);
    CylTerms T;
    const std::size_t n = ms.size();
    T.k.resize(n);
    T.cs.resize(n);
    T.sn.resize(n);
    T.cp.resize(n);
    T.sp.resize(n);
    T.m1.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double m1 = ms[j].first, m2 = ms[j].second;
        const double a2 = m1 * m1 + gamma * m2 * m2;
        const double s_tilde = std::sqrt(eps / gamma * a2);
        T.k[j] = m1 / a2;
        T.cs[j] = std::cos(2.0 * kPi * s_tilde);
        T.sn[j] = std::sin(2.0 * kPi * s_tilde);
        T.cp[j] = std::cos(2.0 * kPi * m1 * phi);
        T.sp[j] = std::sin(2.0 * kPi * m1 * phi);
        T.m1[j] = ms[j].first;
    }
    return T;
}

}  // namespace

double cyl_osc2(double eps, double phi, double gamma, int m_max) {
    check_trunc(m_max);
    if (!(eps > 0.0) || !(gamma > 0.0)) throw std::domain_error("cyl_osc2: need eps, gamma > 0");
    if (m_max == 0) return 0.0;
    const CylTerms T = cyl_osc2_terms(eps, phi, gamma, m_max);
    const std::size_t n = T.k.size();
    Neumaier acc;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            // cos(2pi(S~ - S~')), sin(2pi(S~ + S~')) and the two flux factors
            const double cos_dS = T.cs[j] * T.cs[i] + T.sn[j] * T.sn[i];
            const double sin_sS = T.sn[j] * T.cs[i] + T.cs[j] * T.sn[i];
            const double cos_dphi = T.cp[j] * T.cp[i] + T.sp[j] * T.sp[i];
            const double cos_sphi = T.cp[j] * T.cp[i] - T.sp[j] * T.sp[i];
            const double kd = std::abs(T.k[j] - T.k[i]);
            const double ks = T.k[j] + T.k[i];
            acc.add(kd * (cos_dS * cos_dphi + sin_sS * cos_sphi) +
                    ks * (sin_sS * cos_dphi + cos_dS * cos_sphi));
        }
    }
    return acc.get();
}

double cyl_osc2_flux_avg(double eps, double gamma, int m_max) {
    check_trunc(m_max);
    if (!(eps > 0.0) || !(gamma > 0.0))
        throw std::domain_error("cyl_osc2_flux_avg: need eps, gamma > 0");
    if (m_max == 0) return 0.0;
    Neumaier acc;
    for (int m1 = 0; m1 <= m_max; ++m1) {
        for (int m2 = 1; m2 <= m_max; ++m2) {
            const double a2 = double(m1) * m1 + gamma * double(m2) * m2;
            const double k = m1 / a2;
            const double s = std::sqrt(eps / gamma * a2);
            for (int m2p = 1; m2p <= m_max; ++m2p) {
                const double a2p = double(m1) * m1 + gamma * double(m2p) * m2p;
                const double kp = m1 / a2p;
                const double sp = std::sqrt(eps / gamma * a2p);
                acc.add(std::abs(k - kp) * std::cos(2.0 * kPi * (s - sp)) +
                        (k + kp) * std::sin(2.0 * kPi * (s + sp)));
            }
        }
    }
    return acc.get();
}

double cyl_integrated_osc1(double eps, double gamma, int m_max) {
    check_trunc(m_max);
    if (!(eps > 0.0) || !(gamma > 0.0))
        throw std::domain_error("cyl_integrated_osc1: need eps, gamma > 0");
    if (m_max == 0) return 0.0;
    std::vector<double> amp(m_max), freq(m_max);
    for (int m2 = 1; m2 <= m_max; ++m2) {
        amp[m2 - 1] = 1.0 / std::sqrt(double(m2));
        freq[m2 - 1] = 2.0 * kPi * m2;
    }
    const double body =
        kernels::sum_amp_cos(amp.data(), freq.data(), amp.size(), std::sqrt(eps), kQuarterTurn);
    return 2.0 * std::pow(eps / gamma, 0.25) * body;
}

std::vector<double> osc1_grid(const Billiard& billiard, const GridWindow& window, int m_max,
                              unsigned workers) {
    if (window.n_mu < 1 || window.n_eps < 1)
        throw std::domain_error("osc1_grid: grid dimensions must be positive");
    if (!(window.mu_min < window.mu_max) || !(window.eps_min < window.eps_max))
        throw std::domain_error("osc1_grid: empty window");
    const int n_mu = window.n_mu, n_eps = window.n_eps;
    const double dmu = (window.mu_max - window.mu_min) / n_mu;
    const double deps = (window.eps_max - window.eps_min) / n_eps;

    std::vector<double> grid(static_cast<std::size_t>(n_mu) * n_eps);
    const bool rect = billiard.model() == Model::rect;
    const double gamma = rect ? 0.0 : billiard.gamma();

    parallel_for(static_cast<std::size_t>(n_mu), workers, [&](std::size_t col) {
        const double mu = window.mu_min + (static_cast<double>(col) + 0.5) * dmu;
        const TermTable t =
            rect ? rect_osc1_table(mu, m_max) : cyl_osc1_table(mu, gamma, m_max);
        for (int row = 0; row < n_eps; ++row) {
            const double eps = window.eps_min + (row + 0.5) * deps;
            const double body = kernels::sum_amp_cos(t.amp.data(), t.freq.data(), t.amp.size(),
                                                     std::sqrt(eps), kQuarterTurn);
            const double scale = rect ? std::pow(eps, 0.75) : std::pow(eps, 0.25);
            grid[static_cast<std::size_t>(row) * n_mu + col] = scale * body;
        }
    });
    return grid;
}

}  // namespace lcross::osc

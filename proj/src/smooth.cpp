#include "levelcross/smooth.hpp"

#include <cmath>
#include <stdexcept>

#include "levelcross/quadrature.hpp"

namespace lcross::smooth {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

double rect_density(double eps, double mu) {
    require(eps >= 0.0, "rect_density: eps must be nonnegative");
    require(mu > 0.0, "rect_density: mu must be positive");
    return 0.25 * eps / mu;
}

double cyl_density(double eps, double gamma) {
    require(eps >= 0.0, "cyl_density: eps must be nonnegative");
    require(gamma > 0.0, "cyl_density: gamma must be positive");
    return 2.0 * std::sqrt(eps / gamma);
}

double rect_integrated_count(double eps, double mu1, double mu2) {
    require(mu1 > 0.0 && mu2 >= mu1, "rect_integrated_count: need 0 < mu1 <= mu2");
    return 0.25 * eps * std::log(mu2 / mu1);
}

std::pair<double, double> cyl_sign_fractions() {
    return {1.0 - kPi / 4.0, kPi / 4.0};
}

// g(v) = v * int_{sqrt(v)}^{1} dz / sqrt((1-z^2)(1-z^2+v)(z^2-v)).
// Substituting z = sqrt(v + w^2) and then w = sqrt(1-v) sin(theta)
// removes both inverse-square-root endpoints:
//   g(v) = v * int_0^{pi/2} dtheta / (sqrt(1-w^2) sqrt(v+w^2)).
double rect_gv(double v) {
    require(v >= 0.0 && v <= 1.0, "rect_gv: v must lie in [0,1]");
    if (v <= 0.0 || v >= 1.0) return 0.0;
    const double s = std::sqrt(1.0 - v);
    const auto f = [v, s](double theta) {
        const double w = s * std::sin(theta);
        return 1.0 / (std::sqrt(1.0 - w * w) * std::sqrt(v + w * w));
    };
    return v * quad::integrate(f, 0.0, 0.5 * kPi, 1e-10);
}

CylGv cyl_gv(double v) {
    require(v >= 0.0 && v <= 2.0, "cyl_gv: v must lie in [0,2]");
    CylGv out;
    if (v <= 0.0 || v >= 2.0) return out;
    if (v <= 1.0) {
        // Same-sign piece, z = sin(theta) removes the z = 1 endpoint:
        //   g_I^+(v) = (v/2) int_{asin v}^{pi/2} dtheta / sqrt(1-(sin t - v)^2)
        const auto fp = [v](double theta) {
            const double d = std::sin(theta) - v;
            return 1.0 / std::sqrt(1.0 - d * d);
        };
        out.plus_part = 0.5 * v * quad::integrate(fp, std::asin(v), 0.5 * kPi, 1e-10);
        // Opposite-sign piece on [0, v]; endpoints turn singular at v = 1.
        const auto fm = [v](double z) {
            const double d = v - z;
            return 1.0 / (std::sqrt(1.0 - d * d) * std::sqrt(1.0 - z * z));
        };
        out.minus_part = 0.25 * v * quad::integrate_endpoint_singular(fm, 0.0, v, 1e-10);
    } else {
        // g_II^-(v) = (v/4) int_{asin(v-1)}^{pi/2} dtheta / sqrt(1-(v-sin t)^2);
        // the lower end keeps an inverse-square-root singularity.
        const auto fm = [v](double theta) {
            const double d = v - std::sin(theta);
            return 1.0 / std::sqrt(1.0 - d * d);
        };
        out.minus_part =
            0.25 * v * quad::integrate_endpoint_singular(fm, std::asin(v - 1.0), 0.5 * kPi, 1e-10);
    }
    out.total = out.plus_part + out.minus_part;
    return out;
}

namespace {

// One branch of the (I1, I1') -> (I1, V) change of variables: integrate
// 1/(omega2(I1) * K(I1')) over I1 in [lo, hi], with I1' = i1p(I1) and
// K = |omega2' dmu(omega1') - omega1' dmu(omega2')| (fixed-action
// derivatives). Endpoints carry the usual inverse-square-root shell
// singularities, so the desingularized rule is used.
template <class Omega2, class I1p, class Kfun>
double branch_integral(const Omega2& omega2, const I1p& i1p, const Kfun& kernel, double lo,
                       double hi) {
    if (!(hi > lo)) return 0.0;
    const auto f = [&](double i1) {
        const double ip = i1p(i1);
        return 1.0 / (omega2(i1) * kernel(ip));
    };
    return quad::integrate_endpoint_singular(f, lo, hi, 1e-12);
}

double rect_dcds(double eps, double mu, double v) {
    const double vmax = 2.0 * eps / mu;
    const double V = v * vmax;
    const double shell = eps / mu;  // I1^2 at the shell edge
    const double L = std::sqrt(shell);
    const auto omega2 = [&](double i1) {
        return 2.0 * std::sqrt(std::max(shell - i1 * i1, 0.0));
    };
    // omega1' = 2 mu I1', dmu(omega1') = 2 I1', dmu(omega2') = -omega2'/mu
    // give K = 4 I1' omega2'.
    const auto kernel = [&](double ip) { return 4.0 * ip * omega2(ip); };
    const double half_v = 0.5 * V;
    double sum = 0.0;
    // descending branch: I1'^2 = I1^2 - V/2
    sum += branch_integral(
        omega2, [&](double i1) { return std::sqrt(std::max(i1 * i1 - half_v, 0.0)); }, kernel,
        std::sqrt(half_v), L);
    // ascending branch: I1'^2 = I1^2 + V/2
    if (shell > half_v)
        sum += branch_integral(
            omega2, [&](double i1) { return std::sqrt(i1 * i1 + half_v); }, kernel, 0.0,
            std::sqrt(shell - half_v));
    return 0.5 * V * sum * vmax;  // joint density in v
}

double cyl_dcds(double eps, double gamma, double v) {
    const double L = std::sqrt(eps / gamma);
    const double dV_dv = 2.0 * std::sqrt(gamma * eps);
    const double V = v * dV_dv;
    const double d = V / (2.0 * gamma);  // |I1 -+ I1'| at the given gap
    const auto omega2 = [&](double i1) {
        return 2.0 * std::sqrt(std::max(eps - gamma * i1 * i1, 0.0));
    };
    // omega1' = 2 gamma (I1' +- phi), dmu(omega1') = +-2 gamma,
    // dmu(omega2') = 0 give K = 2 gamma omega2'.
    const auto kernel = [&](double ip) { return 2.0 * gamma * omega2(ip); };
    double same = 0.0;
    if (d < L) {
        same += branch_integral(omega2, [&](double i1) { return i1 - d; }, kernel, d, L);
        same += branch_integral(omega2, [&](double i1) { return i1 + d; }, kernel, 0.0, L - d);
    }
    double opp = 0.0;
    const double lo = std::max(0.0, d - L), hi = std::min(L, d);
    if (lo < hi)
        opp = branch_integral(omega2, [&](double i1) { return d - i1; }, kernel, lo, hi);
    return V * (same + opp) * dV_dv;  // joint density in v
}

}  // namespace

double generic_dcds(const Billiard& billiard, double eps, double mu, double v) {
    require(eps > 0.0, "generic_dcds: eps must be positive");
    if (billiard.model() == Model::rect) {
        require(mu > 0.0, "generic_dcds: mu must be positive");
        require(v >= 0.0 && v <= 1.0, "generic_dcds: rect v must lie in [0,1]");
        if (v <= 0.0 || v >= 1.0) return 0.0;
        return rect_dcds(eps, mu, v);
    }
    require(v >= 0.0 && v <= 2.0, "generic_dcds: cylinder v must lie in [0,2]");
    if (v <= 0.0 || v >= 2.0) return 0.0;
    return cyl_dcds(eps, billiard.gamma(), v);
}

GvTable::GvTable(Model model, int nodes) {
    vmax_ = model == Model::rect ? 1.0 : 2.0;
    const int n = std::max(nodes, 16);
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double v = vmax_ * i / n;
        g[i] = model == Model::rect ? rect_gv(v) : cyl_gv(v).total;
    }
    cdf_.assign(n + 1, 0.0);
    const double h = vmax_ / n;
    for (int i = 1; i <= n; ++i) cdf_[i] = cdf_[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
}

double GvTable::cdf(double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= vmax_) return cdf_.back();
    const int n = static_cast<int>(cdf_.size()) - 1;
    const double x = v / vmax_ * n;
    const int i = std::min(static_cast<int>(x), n - 1);
    const double frac = x - i;
    return cdf_[i] * (1.0 - frac) + cdf_[i + 1] * frac;
}

}  // namespace lcross::smooth

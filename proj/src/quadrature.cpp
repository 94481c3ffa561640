#include "levelcross/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lcross::quad {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_g = wg[3] * fc;
    double result_k = wgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        result_k += wgk[i] * fsum;
        if (i % 2 == 1) result_g += wg[i / 2] * fsum;
    }
    result_g *= h;
    result_k *= h;
    const double err = std::abs(result_k - result_g);
    return {a, b, result_k, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Panel> queue;
    queue.push(eval_panel(f, a, b));
    double total_err = queue.top().error;
    int panels = 1;
    while (total_err > abs_tol && panels < max_intervals) {
        const Panel worst = queue.top();
        queue.pop();
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at rounding limit
            queue.push(worst);
            total_err += worst.error;
            break;
        }
        const Panel left = eval_panel(f, worst.a, mid);
        const Panel right = eval_panel(f, mid, worst.b);
        total_err += left.error + right.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    double sum = 0.0, comp = 0.0;
    while (!queue.empty()) {
        const double y = queue.top().value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        queue.pop();
    }
    if (!std::isfinite(sum)) throw std::runtime_error("quadrature: non-finite result");
    return sign * sum;
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double abs_tol, int max_intervals) {
    if (a == b) return 0.0;
    if (b < a) return -integrate_endpoint_singular(f, b, a, abs_tol, max_intervals);
    const double half = 0.5 * (b - a);
    const double t_max = std::sqrt(half);
    const auto left = [&](double t) { return 2.0 * t * f(a + t * t); };
    const auto right = [&](double t) { return 2.0 * t * f(b - t * t); };
    return integrate(left, 0.0, t_max, 0.5 * abs_tol, max_intervals) +
           integrate(right, 0.0, t_max, 0.5 * abs_tol, max_intervals);
}

}  // namespace lcross::quad

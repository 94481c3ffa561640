#include "levelcross/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "levelcross/parallel.hpp"

namespace lcross {

namespace {

bool key_less(const Crossing& x, const Crossing& y) {
    if (x.mu_star != y.mu_star) return x.mu_star < y.mu_star;
    if (x.energy != y.energy) return x.energy < y.energy;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

void canonicalize(LevelKey& k1, LevelKey& k2) {
    if (k2 < k1) std::swap(k1, k2);
}

// Rect pair root: mu*^2 = (n2'^2 - n2^2) / (n1^2 - n1'^2) when positive.
// Everything is evaluated from the canonical (lexicographically sorted)
// pair, so the result is bit-identical under argument exchange.
bool rect_pair(LevelKey k1, LevelKey k2, Crossing& out) {
    canonicalize(k1, k2);
    const std::int64_t a1 = k1.n1, b1 = k1.n2, a2 = k2.n1, b2 = k2.n2;
    const std::int64_t dA = a1 * a1 - a2 * a2;
    const std::int64_t dB = b2 * b2 - b1 * b1;
    if (dA == 0 || dB == 0 || (dA > 0) != (dB > 0)) return false;
    const double mu = std::sqrt(static_cast<double>(dB) / static_cast<double>(dA));
    const double eps = mu * static_cast<double>(a1 * a1) + static_cast<double>(b1 * b1) / mu;
    out.a = k1;
    out.b = k2;
    out.mu_star = mu;
    out.energy = eps;
    out.V = 2.0 * static_cast<double>(std::abs(dA));
    out.v = out.V * mu / (2.0 * eps);
    out.sign_class = '.';
    return true;
}

// Cylinder pair root: phi* = (n1+n1')/2 - D/(2 gamma (n1-n1')),
// D = (n2'+1)^2 - (n2+1)^2. Parallel parabolas (n1 = n1') never cross.
bool cyl_pair(double gamma, LevelKey k1, LevelKey k2, Crossing& out) {
    if (k1.n1 == k2.n1) return false;
    canonicalize(k1, k2);
    const double s1 = static_cast<double>(k1.n1), s2 = static_cast<double>(k2.n1);
    const double h1 = static_cast<double>(k1.n2) + 1.0, h2 = static_cast<double>(k2.n2) + 1.0;
    const double delta = h2 * h2 - h1 * h1;
    const double phi = 0.5 * (s1 + s2) - delta / (2.0 * gamma * (s1 - s2));
    const double d1 = s1 - phi;
    const double eps = gamma * d1 * d1 + h1 * h1;
    out.a = k1;
    out.b = k2;
    out.mu_star = phi;
    out.energy = eps;
    out.V = 2.0 * gamma * std::abs(s1 - s2);
    out.v = std::sqrt(gamma / eps) * std::abs(s1 - s2);
    const double d2 = s2 - phi;
    out.sign_class = (d1 * d2 > 0.0) ? '+' : '-';
    return true;
}

struct CandidateLevels {
    std::vector<LevelKey> keys;
};

// Levels that dip below eps_max somewhere in the closed parameter window.
CandidateLevels rect_candidates(const CrossingWindow& w) {
    CandidateLevels out;
    const double eps = w.eps_max;
    if (!(eps > 0.0)) return out;
    const int n1_max = static_cast<int>(std::floor(std::sqrt(eps / w.mu_min))) + 1;
    const int n2_max = static_cast<int>(std::floor(std::sqrt(eps * w.mu_max))) + 1;
    for (int n1 = 1; n1 <= n1_max; ++n1) {
        for (int n2 = 1; n2 <= n2_max; ++n2) {
            const double opt = std::clamp(static_cast<double>(n2) / n1, w.mu_min, w.mu_max);
            const double e_min = opt * n1 * n1 + static_cast<double>(n2) * n2 / opt;
            if (e_min <= eps) out.keys.push_back({n1, n2});
        }
    }
    return out;
}

CandidateLevels cyl_candidates(const CrossingWindow& w) {
    CandidateLevels out;
    const double eps = w.eps_max;
    const double gamma = w.billiard.gamma();
    if (!(eps >= 1.0)) return out;
    const double half_width = std::sqrt(eps / gamma);
    const int n1_lo = static_cast<int>(std::ceil(w.mu_min - half_width)) - 1;
    const int n1_hi = static_cast<int>(std::floor(w.mu_max + half_width)) + 1;
    const int n2_max = static_cast<int>(std::floor(std::sqrt(eps)));
    for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
        if (!w.include_zero_mode && n1 == 0) continue;
        const double dist = std::max({w.mu_min - n1, static_cast<double>(n1) - w.mu_max, 0.0});
        for (int n2 = 0; n2 <= n2_max; ++n2) {
            const double h = static_cast<double>(n2) + 1.0;
            if (gamma * dist * dist + h * h <= eps) out.keys.push_back({n1, n2});
        }
    }
    return out;
}

}  // namespace

std::vector<Crossing> crossing_of_pair(const Billiard& billiard, LevelKey key1, LevelKey key2) {
    if (key1 == key2)
        throw std::domain_error("crossing_of_pair: keys must label distinct levels");
    if (!billiard.valid_key(key1) || !billiard.valid_key(key2))
        throw std::domain_error("crossing_of_pair: key outside the admissible lattice");

    std::vector<Crossing> out;
    Crossing c;
    if (billiard.model() == Model::rect) {
        if (rect_pair(key1, key2, c)) out.push_back(c);
    } else {
        if (key1.n1 == key2.n1 && key1.n2 == key2.n2)
            throw std::domain_error("crossing_of_pair: identical energy curves");
        if (cyl_pair(billiard.gamma(), key1, key2, c)) out.push_back(c);
    }
    return out;
}

char classify_sign(const Billiard& billiard, const Crossing& crossing) {
    if (billiard.model() == Model::rect) return '.';
    const double sa = billiard.slope(crossing.a, crossing.mu_star);
    const double sb = billiard.slope(crossing.b, crossing.mu_star);
    return (sa * sb > 0.0) ? '+' : '-';
}

std::vector<Crossing> enumerate_crossings(const CrossingWindow& window, unsigned workers) {
    if (!(window.mu_min < window.mu_max))
        throw std::domain_error("enumerate_crossings: need mu_min < mu_max");
    const bool rect = window.billiard.model() == Model::rect;
    if (rect && !(window.mu_min > 0.0))
        throw std::domain_error("enumerate_crossings: rect window needs mu_min > 0");

    const CandidateLevels cand = rect ? rect_candidates(window) : cyl_candidates(window);
    const std::size_t n = cand.keys.size();
    if (n < 2) return {};

    const double gamma = rect ? 0.0 : window.billiard.gamma();
    const double mu_lo = window.mu_min, mu_hi = window.mu_max, eps_max = window.eps_max;

    const std::size_t n_chunks = std::min<std::size_t>(n, 128);
    std::vector<std::vector<Crossing>> buffers(n_chunks);

    parallel_for(n_chunks, workers, [&](std::size_t chunk) {
        std::vector<Crossing>& local = buffers[chunk];
        Crossing c;
        for (std::size_t i = chunk; i < n; i += n_chunks) {
            const LevelKey k1 = cand.keys[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                const LevelKey k2 = cand.keys[j];
                const bool hit = rect ? rect_pair(k1, k2, c) : cyl_pair(gamma, k1, k2, c);
                if (!hit) continue;
                if (c.mu_star >= mu_lo && c.mu_star < mu_hi && c.energy <= eps_max)
                    local.push_back(c);
            }
        }
    });

    std::size_t total = 0;
    for (const auto& b : buffers) total += b.size();
    std::vector<Crossing> out;
    out.reserve(total);
    for (const auto& b : buffers) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end(), key_less);
    return out;
}

}  // namespace lcross

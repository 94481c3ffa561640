#pragma once

#include <cmath>
#include <compare>
#include <numbers>
#include <stdexcept>
#include <string>

// Two integrable billiards in rescaled action variables (hbar = 1).
//
// Rectangle with unit area and shape parameter mu = b/a:
//     h(n1, n2; mu) = mu*n1^2 + n2^2/mu,          n1, n2 >= 1.
// Aharonov-Bohm cylinder with geometry ratio gamma = a^2/(pi^2 r^2),
// threaded by a flux phi (the parameter):
//     h(n1, n2; phi) = gamma*(n1 - phi)^2 + (n2 + 1)^2,
// with n1 any integer (signed angular momentum, unfolding the two
// rotation branches) and n2 >= 0 the libration quantum number.
// Both energy formulas are exact under torus quantization.

namespace lcross {

inline constexpr double kPi = std::numbers::pi;

enum class Model { rect, cylinder };

inline const char* model_name(Model m) { return m == Model::rect ? "rect" : "cylinder"; }

// Quantum-number label. Lattice depends on the model:
// rect: n1, n2 >= 1;  cylinder: n1 in Z, n2 >= 0.
struct LevelKey {
    int n1 = 0;
    int n2 = 0;
    friend auto operator<=>(const LevelKey&, const LevelKey&) = default;
};

// On-shell data returned by frequencies_and_actions().
struct ShellPoint {
    double i2 = 0.0;      // transverse action on the energy shell
    double omega2 = 0.0;  // conjugate frequency dH/dI2
};

struct RectBilliard {
    static bool valid_key(LevelKey k) { return k.n1 >= 1 && k.n2 >= 1; }

    static void check(LevelKey k, double mu) {
        if (!valid_key(k))
            throw std::domain_error("rect: quantum numbers must satisfy n1,n2 >= 1, got (" +
                                    std::to_string(k.n1) + "," + std::to_string(k.n2) + ")");
        if (!(mu > 0.0))
            throw std::domain_error("rect: shape parameter must be positive, got mu=" +
                                    std::to_string(mu));
    }

    static double energy(LevelKey k, double mu) {
        check(k, mu);
        const double a = static_cast<double>(k.n1), b = static_cast<double>(k.n2);
        return mu * a * a + b * b / mu;
    }

    // dh/dmu at fixed quantum numbers.
    static double slope(LevelKey k, double mu) {
        check(k, mu);
        const double a = static_cast<double>(k.n1), b = static_cast<double>(k.n2);
        return a * a - b * b / (mu * mu);
    }

    // I2 and omega2 on the shell h = eps at continuous action i1.
    static ShellPoint frequencies_and_actions(double eps, double i1, double mu) {
        if (!(mu > 0.0)) throw std::domain_error("rect: mu must be positive");
        const double rad = mu * eps - mu * mu * i1 * i1;
        if (rad < 0.0)
            throw std::domain_error("rect: off shell, mu*eps - mu^2*I1^2 = " + std::to_string(rad));
        const double i2 = std::sqrt(rad);
        return {i2, 2.0 * i2 / mu};
    }
};

struct CylinderBilliard {
    double gamma = 4.0 / (kPi * kPi);

    static bool valid_key(LevelKey k) { return k.n2 >= 0; }

    static void check(LevelKey k) {
        if (!valid_key(k))
            throw std::domain_error("cylinder: libration quantum number must satisfy n2 >= 0, got " +
                                    std::to_string(k.n2));
    }

    // Any real flux is accepted (curves are plotted outside [0,1) too);
    // the spectrum as a set is periodic with period 1.
    double energy(LevelKey k, double phi) const {
        check(k);
        const double d = static_cast<double>(k.n1) - phi;
        const double b = static_cast<double>(k.n2) + 1.0;
        return gamma * d * d + b * b;
    }

    // dh/dphi at fixed quantum numbers.
    double slope(LevelKey k, double phi) const {
        check(k);
        return -2.0 * gamma * (static_cast<double>(k.n1) - phi);
    }

    ShellPoint frequencies_and_actions(double eps, double i1, double phi) const {
        const double d = i1 - phi;
        const double rad = eps - gamma * d * d;
        if (rad < 0.0)
            throw std::domain_error("cylinder: off shell, eps - gamma*(I1-phi)^2 = " +
                                    std::to_string(rad));
        const double i2 = std::sqrt(rad);
        return {i2, 2.0 * i2};
    }
};

// Model-erased handle used by the enumeration and prediction modules.
class Billiard {
public:
    static Billiard rectangle() { return Billiard(Model::rect, 0.0); }
    static Billiard cylinder(double gamma = 4.0 / (kPi * kPi)) {
        if (!(gamma > 0.0)) throw std::domain_error("cylinder: gamma must be positive");
        return Billiard(Model::cylinder, gamma);
    }

    Model model() const { return model_; }
    double gamma() const { return gamma_; }

    bool valid_key(LevelKey k) const {
        return model_ == Model::rect ? RectBilliard::valid_key(k) : CylinderBilliard::valid_key(k);
    }

    double energy(LevelKey k, double mu) const {
        return model_ == Model::rect ? RectBilliard::energy(k, mu) : cyl().energy(k, mu);
    }

    double slope(LevelKey k, double mu) const {
        return model_ == Model::rect ? RectBilliard::slope(k, mu) : cyl().slope(k, mu);
    }

    ShellPoint frequencies_and_actions(double eps, double i1, double mu) const {
        return model_ == Model::rect ? RectBilliard::frequencies_and_actions(eps, i1, mu)
                                     : cyl().frequencies_and_actions(eps, i1, mu);
    }

private:
    Billiard(Model m, double g) : model_(m), gamma_(g) {}
    CylinderBilliard cyl() const { return CylinderBilliard{gamma_}; }

    Model model_;
    double gamma_;
};

}  // namespace lcross

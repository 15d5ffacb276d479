#include "forcing.hpp"

#include <cmath>

namespace podes {

namespace {

// Adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

} // namespace

double forcing_eval(const ForcingSpec& spec, double s) {
    switch (spec.kind) {
        case ForcingKind::zero:
            return 0.0;
        case ForcingKind::power_law:
            return spec.k0 * std::pow(std::abs(s), spec.theta) * s;
        case ForcingKind::custom_table: {
            const double v = spec.table(s);
            if (v * s < 0.0)
                throw std::invalid_argument("custom forcing violates f(s)*s >= 0");
            return v;
        }
    }
    return 0.0;
}

double forcing_potential(const ForcingSpec& spec, double s) {
    switch (spec.kind) {
        case ForcingKind::zero:
            return 0.0;
        case ForcingKind::power_law:
            return spec.k0 * std::pow(std::abs(s), spec.theta + 2.0) / (spec.theta + 2.0);
        case ForcingKind::custom_table: {
            auto f = [&spec](double x) {
                const double v = spec.table(x);
                if (v * x < 0.0)
                    throw std::invalid_argument("custom forcing violates f(s)*s >= 0");
                return v;
            };
            return integrate(f, 0.0, s, 1e-12);
        }
    }
    return 0.0;
}

} // namespace podes

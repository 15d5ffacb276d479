#include "analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace podes {

DecayFit fit_decay_rate(const std::vector<double>& times,
                        const std::vector<double>& energies, double t0, double t1) {
    if (times.size() != energies.size())
        throw std::invalid_argument("decay fit: series lengths differ");
    if (!(t0 < t1)) throw std::invalid_argument("decay fit: window must have t0 < t1");
    const double e0 = energies.empty() ? 0.0 : energies.front();
    const double floor = 1e-14 * e0;

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t n = 0;
    bool any_in_window = false;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < t0 || times[k] > t1) continue;
        any_in_window = true;
        if (!(energies[k] > floor)) continue;
        const double x = times[k];
        const double y = std::log(energies[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    if (any_in_window && n == 0)
        throw std::runtime_error("decay fit: energy already at floor over the window");
    if (n < 10) throw std::invalid_argument("decay fit: fewer than 10 usable samples");

    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    const double slope = (dn * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / dn;

    DecayFit fit;
    fit.t0 = t0;
    fit.t1 = t1;
    fit.used_samples = n;
    fit.gamma = -slope;
    fit.C = std::exp(intercept);
    const double sst = syy - sy * sy / dn;
    if (sst > 0.0) {
        double ssr = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (times[k] < t0 || times[k] > t1 || !(energies[k] > floor)) continue;
            const double r = std::log(energies[k]) - (intercept + slope * times[k]);
            ssr += r * r;
        }
        fit.r2 = 1.0 - ssr / sst;
    } else {
        fit.r2 = 0.0;  // constant series; undefined, reported as 0
    }
    return fit;
}

ConvergenceResult orders_from_errors(const std::vector<double>& errors) {
    ConvergenceResult r;
    r.errors = errors;
    r.exact = true;
    for (double e : errors)
        if (e > 1e-13) r.exact = false;
    if (r.exact) return r;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        if (errors[k + 1] >= errors[k]) r.pre_asymptotic = true;
        r.orders.push_back(std::log2(errors[k] / errors[k + 1]));
    }
    return r;
}

} // namespace podes

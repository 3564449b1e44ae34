#include "cwmix/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cwmix {

void ModelParams::validate() const {
    if (n < 2) throw std::invalid_argument("ModelParams: n must be >= 2, got " + std::to_string(n));
    if (!(beta >= 0) || !std::isfinite(beta))
        throw std::invalid_argument("ModelParams: beta must be finite and >= 0");
}

UpdateProbs update_probabilities(double beta, double s) {
    const double u = beta * s;
    // Evaluate tanh on |u| only and build the pair from one value so that
    // p_plus + p_minus == 1 exactly (1 - p_hi is exact by Sterbenz, p_hi
    // being in [1/2, 1]) and the s -> -s symmetry is bitwise.
    const double t = std::tanh(std::fabs(u));
    const double p_hi = 0.5 * (1.0 + t);
    const double p_lo = 1.0 - p_hi;
    if (u >= 0) return {p_hi, p_lo};
    return {p_lo, p_hi};
}

double contraction_rate(const ModelParams& p) {
    p.validate();
    return 1.0 - (1.0 - p.n * std::tanh(p.beta / p.n)) / p.n;
}

double s_star(double beta) {
    if (!(beta > 0) || !std::isfinite(beta)) {
        if (std::isfinite(beta) && beta >= 0) return 0.0;
        throw std::invalid_argument("s_star: beta must be finite and >= 0");
    }
    if (beta <= 1.0) return 0.0;
    // tanh(beta*s) - s is positive at 1e-6 (slope beta > 1 at 0) and
    // negative at 1, so bisection brackets the unique positive root.
    double lo = 1e-6, hi = 1.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::tanh(beta * mid) - mid > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double gamma_star(double beta) {
    if (!(beta > 1.0))
        throw std::domain_error("gamma_star: defined only for beta > 1");
    const double s = s_star(beta);
    const double c = std::cosh(beta * s);
    return beta / (c * c);
}

double free_energy(double beta, double z) {
    if (!(std::fabs(z) < 0.5))
        throw std::domain_error("free_energy: requires |z| < 1/2");
    const double a = 1.0 + 2.0 * z;
    const double b = 1.0 - 2.0 * z;
    // x log x -> 0 as x -> 0, so guard the log at the (excluded) endpoints.
    const double term_a = (a > 0) ? 0.5 * a * std::log(a) : 0.0;
    const double term_b = (b > 0) ? 0.5 * b * std::log(b) : 0.0;
    return term_a + term_b - 2.0 * beta * z * z;
}

double cutoff_center(const ModelParams& p) {
    p.validate();
    if (p.beta >= 1.0)
        throw std::domain_error("cutoff_center: defined only for beta < 1");
    return p.n * std::log(static_cast<double>(p.n)) / (2.0 * (1.0 - p.beta));
}

DerivedConstants derive(const ModelParams& p) {
    p.validate();
    DerivedConstants d;
    d.rho = contraction_rate(p);
    d.s_star = s_star(p.beta);
    d.gamma_star = (p.beta > 1.0) ? gamma_star(p.beta) : std::nan("");
    d.t_n = (p.beta < 1.0) ? cutoff_center(p) : std::nan("");
    d.t_crit = std::pow(static_cast<double>(p.n), 1.5);
    return d;
}

}  // namespace cwmix

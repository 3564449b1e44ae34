#pragma once

#include <cstdint>

namespace cwmix {

// Mean-field Ising model on the complete graph with n sites and coupling
// beta/n per pair.  All chain code takes its numeric inputs from here.
struct ModelParams {
    int n = 0;        // number of sites, >= 2
    double beta = 0;  // inverse temperature, >= 0

    void validate() const;  // throws std::invalid_argument on bad values
};

// Heat-bath update probabilities for the refreshed spin given the
// magnetization-without-self s = S(sigma) - sigma(i)/n:
//   p_plus(s)  = (1 + tanh(beta*s)) / 2
//   p_minus(s) = (1 - tanh(beta*s)) / 2
// Construction guarantees, bit-exactly:
//   p_plus + p_minus == 1, and p_plus(-s) == p_minus(s),
// which the magnetization kernel inherits as an exact +/- symmetry.
struct UpdateProbs {
    double p_plus;
    double p_minus;
};
UpdateProbs update_probabilities(double beta, double s);

// One-step contraction rate of the site-coupled dynamics:
//   rho = 1 - (1 - n*tanh(beta/n)) / n
double contraction_rate(const ModelParams& p);

// Unique positive root of tanh(beta*s) = s for beta > 1 (bisection on
// [1e-6, 1] to width <= 1e-15); defined as 0 for beta <= 1.
double s_star(double beta);

// gamma* = beta / cosh^2(beta * s_star); only defined for beta > 1
// (throws std::domain_error otherwise).  Always < 1.
double gamma_star(double beta);

// Large-deviation rate function for the magnetization density z = S/2,
//   f(z) = (1+2z)/2 log(1+2z) + (1-2z)/2 log(1-2z) - 2 beta z^2,
// defined for |z| < 1/2 (throws std::domain_error outside).
double free_energy(double beta, double z);

// Cutoff center n*log(n) / (2(1-beta)) for beta < 1 (throws
// std::domain_error for beta >= 1).
double cutoff_center(const ModelParams& p);

// Reference scales bundled for convenience.
struct DerivedConstants {
    double rho;         // contraction rate
    double s_star;      // 0 for beta <= 1
    double gamma_star;  // quiet NaN for beta <= 1
    double t_n;         // cutoff center; quiet NaN for beta >= 1
    double t_crit;      // n^{3/2}
};
DerivedConstants derive(const ModelParams& p);

}  // namespace cwmix

#pragma once

#include <cstdint>
#include <vector>

#include "cwmix/model.hpp"

namespace cwmix {

// Tridiagonal transition kernel of the plus-count (equivalently
// magnetization) birth-death chain induced by single-site heat-bath updates.
// States are k in {0..n}, s = (2k-n)/n:
//   up[k]   = ((n-k)/n) * p_plus ((2k+1-n)/n)
//   down[k] = (k/n)     * p_minus((2k-1-n)/n)
//   stay[k] = 1 - up[k] - down[k]
// For restricted == true the chain lives on the non-negative-magnetization
// half: entries below k_min are zero and the bottom row folds the rejected
// down-move (into the up-move for even n, into the stay-move for odd n).
struct MagKernel {
    int n = 0;
    double beta = 0;
    bool restricted = false;
    std::vector<double> up, down, stay;  // size n+1 each

    int k_min() const { return restricted ? (n + 1) / 2 : 0; }
    int size() const { return n + 1; }
};

MagKernel build_kernel(const ModelParams& p, bool restricted = false);

// Probability vector over plus counts {0..n}.
struct ProbVector {
    std::vector<double> mass;

    static ProbVector point(int n, int k);
    int size() const { return static_cast<int>(mass.size()); }
    double sum() const;
    // Exact first and second moments of S = (2k-n)/n under this law.
    double mean_s() const;
    double var_s() const;
    double mean_abs_s() const;
};

// Unnormalized stationary log-weights, log C(n,k) + beta (2k-n)^2 / (2n),
// folded and shifted for the restricted chain (entries below k_min are
// -infinity).  Computed in extended precision via lgammal.
std::vector<double> stationary_log_weights(const MagKernel& kernel);

// Normalized stationary law (log-sum-exp; safe for beta > 1 at large n).
ProbVector stationary_dist(const MagKernel& kernel);

// Pushes dist forward `steps` times.  Throws std::invalid_argument for
// negative steps or size mismatch.  Renormalizes if accumulated float drift
// of the total mass exceeds 1e-12 (checked every 10000 steps).
ProbVector evolve(const MagKernel& kernel, const ProbVector& dist, std::int64_t steps);

// Total variation distance (1/2) sum |a-b|.
double tv_distance(const ProbVector& a, const ProbVector& b);

// TV distance to stationarity at each requested time (times must be sorted
// ascending; computed with a single forward pass).
std::vector<double> distance_profile(const MagKernel& kernel, const ProbVector& start,
                                     const std::vector<std::int64_t>& times);

// Smallest t with max-over-starts TV(law_t, pi) <= eps, each start a point
// mass at the given plus count.  Doubling bracket + binary search; probe
// distributions are re-evolved exactly from memoized snapshots.
std::int64_t t_mix_exact(const MagKernel& kernel, const std::vector<int>& starts,
                         double eps = 0.25);

// Exact one-step drift E[S_1 - s | S_0 = s] for the state with plus count k,
// via the closed form (f_n(s) - s + theta_n(s)) / n.
double drift_exact(const MagKernel& kernel, int k);

// Expected hitting times of increasing levels for the restricted chain,
// via the birth-death return-time identity
//   E_{l-1}[tau_l] = sum_{j<l} pi(j) / (pi(l) * down[l]),
// evaluated in log space.  levels[i] = k_min+1+i up to `top`.
struct HittingTable {
    int k_min = 0;
    std::vector<int> levels;        // k_min+1 .. top
    std::vector<double> step_time;  // E_{l-1}[tau_l]
    std::vector<double> cum_time;   // E_{k_min}[tau_l]
};
HittingTable hitting_time_table(const MagKernel& kernel, int top);

// Conductance of the negative-magnetization cut A = {s < 0} in the
// unrestricted chain.  Tridiagonal structure means only the boundary pair
// contributes; evaluated in log space so it stays finite for beta > 1 at
// large n.  Returns {phi, log_phi}.
struct CheegerCut {
    double phi;
    double log_phi;
};
CheegerCut cheeger_cut(const ModelParams& p);

}  // namespace cwmix

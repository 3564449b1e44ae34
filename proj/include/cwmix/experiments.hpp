#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cwmix/model.hpp"
#include "cwmix/rng.hpp"
#include "cwmix/table.hpp"

namespace cwmix {

// Shared configuration for the experiment drivers.  Every output is fully
// determined by this struct (plus the code version): replica r always draws
// from RngStream(seed, r), so worker count and scheduling never change
// results.
struct ExperimentSpec {
    std::vector<int> n_list;
    double beta = 0.5;
    std::uint64_t seed = 1;
    int replicas = 0;  // 0 disables Monte Carlo overlays
    int workers = 1;
    // Cutoff window offsets (units of n) and the window threshold.
    std::vector<double> gammas = {-10, -5, -2, -1, 0, 1, 2, 5, 10};
    double window_eps = 0.25;
    // Mixing-time threshold.
    double eps = 0.25;
    // Metastable level offsets: top level ceil(n s* + c3 sqrt(n)); the
    // hit-from-the-top stop S <= s* + alpha/sqrt(n).
    double c3 = 1.0;
    double alpha = 1.0;
    // System size for Monte Carlo overlays (0 = first entry of n_list).
    int mc_n = 0;
};

// Exact cutoff profile at beta < 1: TV-to-stationarity of the all-plus start
// at times t_n + gamma*n, plus the window width w(n, eps) = t_{eps} - t_{1-eps}
// normalized by n.  One row per (n, gamma).
ResultTable cutoff_profile(const ExperimentSpec& spec);

// Exact mixing times at beta = 1 with a log-log least-squares slope; when
// replicas > 0, overlays the median magnetization-meeting time of the
// crossing + reflection/equal-magnetization composite coupling at mc_n.
ResultTable critical_scaling(const ExperimentSpec& spec);

// Restricted-chain scales at beta > 1: exact mixing time, expected climb
// from the bottom to the metastable level (birth-death identity), and the
// negative-cut conductance with its log-slope; when replicas > 0, overlays
// a Monte Carlo hit-from-the-top check at mc_n.
ResultTable metastability_suite(const ExperimentSpec& spec);

// Coupling measurements at beta < 1: mean coupled distance under the shared
// (site, uniform) coupling at t in {n, 2n, 4n} against the rho^t * n bound,
// and the tail P(tau_mag > t_n + gamma*n) of the three-phase coupling
// (shared randomness to t_n, independent until the plus counts nearly meet,
// then paired-site updates).
ResultTable coupling_validation(const ExperimentSpec& spec);

// Exact lemma margins (bound - value, all expected >= -1e-10):
//   mean_decay:      E[S_t] from all-plus vs 2 exp(-(1-beta) t / n), beta < 1
//   variance_step:   Var(S_t) vs (16/n^2) min(t, 1/(1-rho^2)),       beta <= 1
//   variance_scale:  n Var(S_t) vs 16/(n (1-rho^2)) at large t,      beta < 1
//                    n^2 Var(S_t)/t vs 16 up to t = n^(3/2),         beta = 1
ResultTable lemma_checks(const ExperimentSpec& spec);

// Composite couplings used by the experiments (exposed for tests).
// Three-phase magnetization-meeting coupling for beta < 1; returns the first
// time the plus counts agree, or nullopt if censored at max_steps.
std::optional<std::int64_t> magnetization_meeting_time(const ModelParams& p, RngStream& rng,
                                                       std::int64_t max_steps);
// Crossing + reflection/equal-magnetization composite for beta = 1 from the
// all-plus / all-minus pair; returns the first time the magnetizations agree.
std::optional<std::int64_t> composite_meeting_time(const ModelParams& p, RngStream& rng,
                                                   std::int64_t max_steps);

// Deterministic fan-out helper: runs f(0..count-1) on up to `workers`
// threads.  f must only touch its own slot of any shared output.
void parallel_for(int count, int workers, const std::function<void(int)>& f);

}  // namespace cwmix

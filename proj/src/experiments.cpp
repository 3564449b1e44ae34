#include "cwmix/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "cwmix/couplings.hpp"
#include "cwmix/glauber.hpp"
#include "cwmix/magchain.hpp"

namespace cwmix {

namespace {

nlohmann::json spec_json(const ExperimentSpec& spec) {
    return nlohmann::json{{"n_list", spec.n_list}, {"beta", spec.beta},
                          {"seed", spec.seed},     {"replicas", spec.replicas},
                          {"workers", spec.workers}, {"gammas", spec.gammas},
                          {"window_eps", spec.window_eps}, {"eps", spec.eps},
                          {"c3", spec.c3},         {"alpha", spec.alpha},
                          {"mc_n", spec.mc_n}};
}

std::string meta_string(const ExperimentSpec& spec, const char* experiment,
                        nlohmann::json bands) {
    nlohmann::json meta;
    meta["experiment"] = experiment;
    meta["spec"] = spec_json(spec);
    meta["seed"] = spec.seed;
    meta["bands"] = std::move(bands);
    meta["version"] = code_version();
    return meta.dump();
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0;
    const double mu = mean_of(xs);
    double acc = 0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    const double var = acc / static_cast<double>(xs.size() - 1);
    return std::sqrt(var / static_cast<double>(xs.size()));
}

double quantile_of(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    const size_t idx = static_cast<size_t>(q * static_cast<double>(xs.size() - 1) + 0.5);
    return xs[std::min(idx, xs.size() - 1)];
}

// One heat-bath write at `site` decided by the uniform `u` (shared-uniform
// couplings reuse this with the same u in both chains).
void write_with_uniform(SpinConfiguration& c, const ModelParams& p, int site, double u) {
    const int numer = c.magnetization_numerator() - c.spin(site);
    const double p_plus =
        update_probabilities(p.beta, numer / static_cast<double>(c.n())).p_plus;
    c.set_spin(site, u < p_plus ? std::int8_t{1} : std::int8_t{-1});
}

}  // namespace

void parallel_for(int count, int workers, const std::function<void(int)>& f) {
    if (count <= 0) return;
    const int w = std::max(1, std::min(workers, count));
    if (w == 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(w));
    for (int j = 0; j < w; ++j)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < count;) f(i);
        });
    for (std::thread& th : pool) th.join();
}

std::optional<std::int64_t> magnetization_meeting_time(const ModelParams& p, RngStream& rng,
                                                       std::int64_t max_steps) {
    p.validate();
    require(p.beta < 1.0, "magnetization_meeting_time: requires beta < 1");
    const std::int64_t t_n = std::llround(cutoff_center(p));

    // Phase 1: shared (site, uniform) updates from the extreme pair keep the
    // chains ordered, so the plus-count gap can only shrink.
    CoupledPair pair(CouplingKind::kGrand, SpinConfiguration::all_plus(p.n),
                     SpinConfiguration::all_minus(p.n), p);
    while (pair.time() < t_n && pair.time() < max_steps) {
        if (pair.stops().tau_mag) return pair.stops().tau_mag;
        pair.step(rng);
    }
    if (pair.stops().tau_mag) return pair.stops().tau_mag;
    if (pair.time() >= max_steps) return std::nullopt;

    // Phase 2: independent refreshes let the counts cross; stop once they
    // are within one move of each other.
    CoupledPair indep(CouplingKind::kIndependent, pair.x(), pair.x_tilde(), p);
    const std::int64_t base = pair.time();
    while (std::abs(indep.x().plus_count() - indep.x_tilde().plus_count()) > 1) {
        if (base + indep.time() >= max_steps) return std::nullopt;
        indep.step(rng);
    }
    if (indep.x().plus_count() == indep.x_tilde().plus_count()) return base + indep.time();

    // Phase 3: freeze a site matching (greedy by index, pluses to pluses
    // first) and drive both chains with the same site/uniform through it.
    SpinConfiguration x = indep.x();
    SpinConfiguration xt = indep.x_tilde();
    std::int64_t t = base + indep.time();
    std::vector<int> plus_x, minus_x, plus_t, minus_t;
    for (int i = 0; i < p.n; ++i) {
        (x.spin(i) == 1 ? plus_x : minus_x).push_back(i);
        (xt.spin(i) == 1 ? plus_t : minus_t).push_back(i);
    }
    std::vector<int> match(static_cast<size_t>(p.n), -1);
    size_t ip = 0, it = 0;
    while (ip < plus_x.size() && it < plus_t.size()) match[static_cast<size_t>(plus_x[ip++])] = plus_t[it++];
    size_t im = 0, jm = 0;
    while (im < minus_x.size() && jm < minus_t.size()) match[static_cast<size_t>(minus_x[im++])] = minus_t[jm++];
    while (ip < plus_x.size()) match[static_cast<size_t>(plus_x[ip++])] = minus_t[jm++];
    while (im < minus_x.size()) match[static_cast<size_t>(minus_x[im++])] = plus_t[it++];

    while (t < max_steps) {
        const int site = rng.uniform_below(p.n);
        const double u = rng.uniform01();
        write_with_uniform(x, p, site, u);
        write_with_uniform(xt, p, match[static_cast<size_t>(site)], u);
        ++t;
        if (x.plus_count() == xt.plus_count()) return t;
    }
    return std::nullopt;
}

std::optional<std::int64_t> composite_meeting_time(const ModelParams& p, RngStream& rng,
                                                   std::int64_t max_steps) {
    p.validate();
    require(p.n % 2 == 0, "composite_meeting_time: requires even n");
    CoupledPair indep(CouplingKind::kIndependent, SpinConfiguration::all_plus(p.n),
                      SpinConfiguration::all_minus(p.n), p);
    std::int64_t t = 0;
    SpinConfiguration x = indep.x(), xt = indep.x_tilde();

    auto num = [](const SpinConfiguration& c) { return c.magnetization_numerator(); };
    while (t < max_steps) {
        // Run independently until |S| dips to |S~|, then give the pair one
        // more step and inspect the outcome.
        CoupledPair phase(CouplingKind::kIndependent, x, xt, p);
        while (std::abs(num(phase.x())) > std::abs(num(phase.x_tilde()))) {
            if (t + phase.time() >= max_steps) return std::nullopt;
            phase.step(rng);
            if (num(phase.x()) == num(phase.x_tilde())) return t + phase.time();
        }
        if (t + phase.time() >= max_steps) return std::nullopt;
        phase.step(rng);
        t += phase.time();
        x = phase.x();
        xt = phase.x_tilde();
        if (num(x) == num(xt)) return t;
        if (num(x) == -num(xt)) {
            // Mirrored magnetizations: reflect until S hits 0 (even n), at
            // which point S~ = -S = 0 too and the counts agree.
            CoupledPair refl(CouplingKind::kReflection, x, xt, p);
            while (num(refl.x()) != 0) {
                if (t + refl.time() >= max_steps) return std::nullopt;
                refl.step(rng);
            }
            return t + refl.time();
        }
        // Attempt failed; loop and wait for the next crossing.
    }
    return std::nullopt;
}

ResultTable cutoff_profile(const ExperimentSpec& spec) {
    require(!spec.n_list.empty(), "cutoff_profile: n_list must be non-empty");
    require(spec.beta < 1.0, "cutoff_profile: requires beta < 1");
    require(spec.window_eps > 0 && spec.window_eps < 0.5,
            "cutoff_profile: window_eps must be in (0, 1/2)");

    ResultTable table;
    table.columns = {"n", "beta", "gamma", "t", "d", "t_n", "window_over_n"};
    table.meta_json = meta_string(
        spec, "cutoff",
        {{"d_early_min", 0.9}, {"d_late_max", 0.1}, {"window_ratio_band", {0.5, 2.0}}});

    struct PerN {
        std::vector<std::pair<double, std::int64_t>> gamma_times;
        std::vector<double> d_values;
        double t_n = 0;
        double window_over_n = 0;
    };
    std::vector<PerN> results(spec.n_list.size());

    parallel_for(static_cast<int>(spec.n_list.size()), spec.workers, [&](int idx) {
        const int n = spec.n_list[static_cast<size_t>(idx)];
        const ModelParams p{n, spec.beta};
        const MagKernel kernel = build_kernel(p);
        const ProbVector pi = stationary_dist(kernel);
        PerN& out = results[static_cast<size_t>(idx)];
        out.t_n = cutoff_center(p);

        std::int64_t t_last = 0;
        for (double g : spec.gammas) {
            const std::int64_t t =
                std::max<std::int64_t>(0, std::llround(out.t_n + g * n));
            out.gamma_times.emplace_back(g, t);
            t_last = std::max(t_last, t);
        }
        out.d_values.assign(out.gamma_times.size(), 0.0);

        ProbVector dist = ProbVector::point(n, n);
        std::int64_t t_hi = -1, t_lo = -1;
        const double hi_level = spec.window_eps;        // t_hi: first d <= eps
        const double lo_level = 1.0 - spec.window_eps;  // t_lo: first d <= 1-eps
        const std::int64_t cap = t_last + 100 * static_cast<std::int64_t>(n) + 1000000;
        for (std::int64_t t = 0;; ++t) {
            const double d = tv_distance(dist, pi);
            for (size_t j = 0; j < out.gamma_times.size(); ++j)
                if (out.gamma_times[j].second == t) out.d_values[j] = d;
            if (t_lo < 0 && d <= lo_level) t_lo = t;
            if (t_hi < 0 && d <= hi_level) t_hi = t;
            if (t >= t_last && t_hi >= 0) break;
            if (t > cap) throw std::runtime_error("cutoff_profile: window scan exceeded cap");
            dist = evolve(kernel, dist, 1);
        }
        out.window_over_n = static_cast<double>(t_hi - t_lo) / n;
    });

    for (size_t i = 0; i < spec.n_list.size(); ++i) {
        const PerN& r = results[i];
        for (size_t j = 0; j < r.gamma_times.size(); ++j)
            table.add_row({static_cast<std::int64_t>(spec.n_list[i]), spec.beta,
                           r.gamma_times[j].first, r.gamma_times[j].second, r.d_values[j],
                           r.t_n, r.window_over_n});
    }
    return table;
}

ResultTable critical_scaling(const ExperimentSpec& spec) {
    require(!spec.n_list.empty(), "critical_scaling: n_list must be non-empty");
    require(std::fabs(spec.beta - 1.0) < 1e-12, "critical_scaling: requires beta = 1");

    std::vector<std::int64_t> tmix(spec.n_list.size());
    parallel_for(static_cast<int>(spec.n_list.size()), spec.workers, [&](int idx) {
        const int n = spec.n_list[static_cast<size_t>(idx)];
        const MagKernel kernel = build_kernel(ModelParams{n, 1.0});
        tmix[static_cast<size_t>(idx)] = t_mix_exact(kernel, {0, n}, spec.eps);
    });

    // Least-squares slope of log t_mix against log n.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(spec.n_list.size());
    for (size_t i = 0; i < spec.n_list.size(); ++i) {
        const double lx = std::log(static_cast<double>(spec.n_list[i]));
        const double ly = std::log(static_cast<double>(tmix[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope =
        spec.n_list.size() > 1 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::nan("");

    // Optional Monte Carlo overlay: composite coupling meeting times.
    double mc_median_ratio = std::nan("");
    std::int64_t mc_n = 0, mc_censored = 0;
    if (spec.replicas > 0) {
        mc_n = spec.mc_n > 0 ? spec.mc_n : spec.n_list.front();
        require(mc_n % 2 == 0, "critical_scaling: mc_n must be even");
        const ModelParams p{static_cast<int>(mc_n), 1.0};
        const std::int64_t cap =
            64 * static_cast<std::int64_t>(std::pow(static_cast<double>(mc_n), 1.5));
        std::vector<double> taus(static_cast<size_t>(spec.replicas));
        std::vector<char> censored(static_cast<size_t>(spec.replicas), 0);
        parallel_for(spec.replicas, spec.workers, [&](int r) {
            RngStream rng(spec.seed, static_cast<std::uint64_t>(r));
            const std::optional<std::int64_t> tau = composite_meeting_time(p, rng, cap);
            if (tau) {
                taus[static_cast<size_t>(r)] = static_cast<double>(*tau);
            } else {
                taus[static_cast<size_t>(r)] = static_cast<double>(cap);
                censored[static_cast<size_t>(r)] = 1;
            }
        });
        mc_censored = std::count(censored.begin(), censored.end(), 1);
        const MagKernel kernel = build_kernel(p);
        const std::int64_t tmix_mc = t_mix_exact(kernel, {0, static_cast<int>(mc_n)}, spec.eps);
        mc_median_ratio = quantile_of(taus, 0.5) / static_cast<double>(tmix_mc);
    }

    ResultTable table;
    table.columns = {"n",       "t_mix",  "log_n",         "log_t_mix",
                     "slope",   "mc_n",   "mc_median_ratio", "mc_censored"};
    table.meta_json = meta_string(spec, "critical",
                                  {{"slope_band", {1.35, 1.65}}, {"mc_median_ratio_max", 8.0}});
    for (size_t i = 0; i < spec.n_list.size(); ++i)
        table.add_row({static_cast<std::int64_t>(spec.n_list[i]), tmix[i],
                       std::log(static_cast<double>(spec.n_list[i])),
                       std::log(static_cast<double>(tmix[i])), slope, mc_n, mc_median_ratio,
                       mc_censored});
    return table;
}

ResultTable metastability_suite(const ExperimentSpec& spec) {
    require(!spec.n_list.empty(), "metastability_suite: n_list must be non-empty");
    require(spec.beta > 1.0, "metastability_suite: requires beta > 1");

    const double ss = s_star(spec.beta);
    struct PerN {
        std::int64_t tmix = 0;
        double climb = 0;
        double phi = 0, log_phi = 0;
    };
    std::vector<PerN> results(spec.n_list.size());
    parallel_for(static_cast<int>(spec.n_list.size()), spec.workers, [&](int idx) {
        const int n = spec.n_list[static_cast<size_t>(idx)];
        const ModelParams p{n, spec.beta};
        const MagKernel kernel = build_kernel(p, true);
        PerN& out = results[static_cast<size_t>(idx)];
        out.tmix = t_mix_exact(kernel, {kernel.k_min(), n}, spec.eps);
        const int top = std::min(
            n, static_cast<int>(std::ceil(n * ss + spec.c3 * std::sqrt(static_cast<double>(n)))));
        const HittingTable ht = hitting_time_table(kernel, top);
        out.climb = ht.cum_time.back();
        const CheegerCut cut = cheeger_cut(p);
        out.phi = cut.phi;
        out.log_phi = cut.log_phi;
    });

    // Optional Monte Carlo overlay: hit the metastable shell from all-plus.
    double mc_mean = std::nan(""), mc_p95 = std::nan("");
    std::int64_t mc_n = 0, mc_censored = 0;
    if (spec.replicas > 0) {
        mc_n = spec.mc_n > 0 ? spec.mc_n : spec.n_list.front();
        const ModelParams p{static_cast<int>(mc_n), spec.beta};
        const double level = ss + spec.alpha / std::sqrt(static_cast<double>(mc_n));
        const std::int64_t cap = static_cast<std::int64_t>(
            8.0 * mc_n * std::log(static_cast<double>(mc_n))) + 1;
        std::vector<double> taus(static_cast<size_t>(spec.replicas));
        std::vector<char> censored(static_cast<size_t>(spec.replicas), 0);
        parallel_for(spec.replicas, spec.workers, [&](int r) {
            RngStream rng(spec.seed, static_cast<std::uint64_t>(r));
            RestrictedChain chain(SpinConfiguration::all_plus(p.n), p);
            const auto hit = run_until(
                chain, rng,
                [&](const RestrictedChain& c) { return c.magnetization() <= level; }, cap);
            if (hit) {
                taus[static_cast<size_t>(r)] = static_cast<double>(*hit);
            } else {
                taus[static_cast<size_t>(r)] = static_cast<double>(cap);
                censored[static_cast<size_t>(r)] = 1;
            }
        });
        mc_censored = std::count(censored.begin(), censored.end(), 1);
        mc_mean = mean_of(taus);
        mc_p95 = quantile_of(taus, 0.95);
    }

    ResultTable table;
    table.columns = {"n",           "beta",        "t_mix_restricted", "t_mix_over_nlogn",
                     "climb_expected", "climb_over_nlogn", "phi",        "log_phi",
                     "logphi_slope", "mc_n",       "mc_hit_mean",      "mc_hit_p95",
                     "mc_censored"};
    table.meta_json = meta_string(spec, "metastable",
                                  {{"tmix_ratio_band", {0.5, 2.0}},
                                   {"climb_ratio_band", {0.5, 2.0}},
                                   {"logphi_slope_tol", 0.1}});
    for (size_t i = 0; i < spec.n_list.size(); ++i) {
        const int n = spec.n_list[i];
        const double nlogn = n * std::log(static_cast<double>(n));
        const double slope =
            i == 0 ? std::nan("")
                   : (results[i].log_phi - results[i - 1].log_phi) /
                         static_cast<double>(spec.n_list[i] - spec.n_list[i - 1]);
        table.add_row({static_cast<std::int64_t>(n), spec.beta, results[i].tmix,
                       static_cast<double>(results[i].tmix) / nlogn, results[i].climb,
                       results[i].climb / nlogn, results[i].phi, results[i].log_phi, slope,
                       mc_n, mc_mean, mc_p95, mc_censored});
    }
    return table;
}

ResultTable coupling_validation(const ExperimentSpec& spec) {
    require(!spec.n_list.empty(), "coupling_validation: n_list must be non-empty");
    require(spec.beta < 1.0, "coupling_validation: requires beta < 1");
    require(spec.replicas > 0, "coupling_validation: needs replicas > 0");
    const int n = spec.n_list.front();
    const ModelParams p{n, spec.beta};
    const double rho = contraction_rate(p);
    const double t_n = cutoff_center(p);

    ResultTable table;
    table.columns = {"kind", "n", "beta", "param", "value", "se", "bound", "margin",
                     "replicas", "censored"};
    table.meta_json =
        meta_string(spec, "coupling", {{"contraction_rule", "value <= bound + 3*se"}});

    // Shared-randomness contraction: mean Hamming distance from the extreme
    // pair at t = n, 2n, 4n against rho^t * n.
    const std::vector<std::int64_t> checkpoints = {n, 2 * static_cast<std::int64_t>(n),
                                                   4 * static_cast<std::int64_t>(n)};
    std::vector<std::vector<double>> dists(checkpoints.size(),
                                           std::vector<double>(static_cast<size_t>(spec.replicas)));
    parallel_for(spec.replicas, spec.workers, [&](int r) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(r));
        CoupledPair pair(CouplingKind::kGrand, SpinConfiguration::all_plus(n),
                         SpinConfiguration::all_minus(n), p);
        size_t next_cp = 0;
        while (next_cp < checkpoints.size()) {
            pair.step(rng);
            if (pair.time() == checkpoints[next_cp]) {
                dists[next_cp][static_cast<size_t>(r)] = pair.disagreements();
                ++next_cp;
            }
        }
    });
    for (size_t c = 0; c < checkpoints.size(); ++c) {
        const double value = mean_of(dists[c]);
        const double se = stderr_of(dists[c]);
        const double bound = std::pow(rho, static_cast<double>(checkpoints[c])) * n;
        table.add_row({std::string("grand_contraction"), static_cast<std::int64_t>(n),
                       spec.beta, static_cast<double>(checkpoints[c]), value, se, bound,
                       bound + 3 * se - value, static_cast<std::int64_t>(spec.replicas),
                       std::int64_t{0}});
    }

    // Magnetization meeting-time tail under the three-phase coupling.
    std::vector<double> tail_gammas;
    for (double g : spec.gammas)
        if (g > 0) tail_gammas.push_back(g);
    if (tail_gammas.empty()) tail_gammas = {1, 4, 16};
    const double g_max = *std::max_element(tail_gammas.begin(), tail_gammas.end());
    const std::int64_t cap = std::llround(t_n + (g_max + 1) * n);
    std::vector<double> taus(static_cast<size_t>(spec.replicas));
    std::int64_t censored = 0;
    parallel_for(spec.replicas, spec.workers, [&](int r) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(r) + 1000000);
        const std::optional<std::int64_t> tau = magnetization_meeting_time(p, rng, cap);
        taus[static_cast<size_t>(r)] =
            tau ? static_cast<double>(*tau) : std::numeric_limits<double>::infinity();
    });
    for (double t : taus) censored += std::isinf(t);
    for (double g : tail_gammas) {
        const double cutoff_t = t_n + g * n;
        double count = 0;
        for (double t : taus) count += (t > cutoff_t);
        const double phat = count / static_cast<double>(spec.replicas);
        const double se = std::sqrt(phat * (1 - phat) / static_cast<double>(spec.replicas));
        table.add_row({std::string("meeting_tail"), static_cast<std::int64_t>(n), spec.beta, g,
                       phat, se, std::nan(""), std::nan(""),
                       static_cast<std::int64_t>(spec.replicas), censored});
    }
    return table;
}

ResultTable lemma_checks(const ExperimentSpec& spec) {
    require(!spec.n_list.empty(), "lemma_checks: n_list must be non-empty");

    ResultTable table;
    table.columns = {"kind", "n", "beta", "start_k", "t", "value", "bound", "margin"};
    table.meta_json = meta_string(spec, "lemmas", {{"margin_min", -1e-10}});

    const std::vector<double> betas = {0.0, 0.5, 0.9, 1.0};
    const std::vector<double> t_factors = {0.25, 0.5, 1, 2, 4, 8, 16};

    for (int n : spec.n_list) {
        for (double beta : betas) {
            const ModelParams p{n, beta};
            const MagKernel kernel = build_kernel(p);
            const double rho = contraction_rate(p);
            const double v1_bound = 16.0 / (static_cast<double>(n) * n);
            const double relax = 1.0 / (1.0 - rho * rho);  // finite for beta <= 1

            std::vector<std::int64_t> times;
            for (double f : t_factors)
                times.push_back(std::max<std::int64_t>(1, std::llround(f * n)));
            if (beta == 1.0)
                times.push_back(static_cast<std::int64_t>(std::pow(n, 1.5)));
            if (beta < 1.0)
                times.push_back(std::llround(5 * cutoff_center(p)));
            std::sort(times.begin(), times.end());
            times.erase(std::unique(times.begin(), times.end()), times.end());

            for (int start : {n, (3 * n + 3) / 4}) {
                ProbVector dist = ProbVector::point(n, start);
                std::int64_t t_cur = 0;
                for (std::int64_t t : times) {
                    dist = evolve(kernel, dist, t - t_cur);
                    t_cur = t;
                    const double var = dist.var_s();
                    const double step_bound =
                        v1_bound * std::min(static_cast<double>(t), relax);
                    table.add_row({std::string("variance_step"),
                                   static_cast<std::int64_t>(n), beta,
                                   static_cast<std::int64_t>(start), t, var, step_bound,
                                   step_bound - var});
                    if (start == n && beta < 1.0) {
                        const double mean = dist.mean_s();
                        const double decay_bound =
                            2.0 * std::exp(-(1.0 - beta) * static_cast<double>(t) / n);
                        table.add_row({std::string("mean_decay"),
                                       static_cast<std::int64_t>(n), beta,
                                       static_cast<std::int64_t>(start), t, mean, decay_bound,
                                       decay_bound - mean});
                    }
                    if (start == n) {
                        if (beta == 1.0) {
                            const double scaled = var * n * static_cast<double>(n) / t;
                            table.add_row({std::string("variance_scale"),
                                           static_cast<std::int64_t>(n), beta,
                                           static_cast<std::int64_t>(start), t, scaled, 16.0,
                                           16.0 - scaled});
                        } else if (t == times.back()) {
                            const double scaled = var * n;
                            const double bound = 16.0 * relax / n;
                            table.add_row({std::string("variance_scale"),
                                           static_cast<std::int64_t>(n), beta,
                                           static_cast<std::int64_t>(start), t, scaled, bound,
                                           bound - scaled});
                        }
                    }
                }
            }
        }
    }
    return table;
}

}  // namespace cwmix

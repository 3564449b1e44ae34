#include "cwmix/magchain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cwmix {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const std::vector<double>& v, int lo, int hi) {  // [lo, hi)
    double m = kNegInf;
    for (int i = lo; i < hi; ++i) m = std::max(m, v[static_cast<size_t>(i)]);
    if (m == kNegInf) return kNegInf;
    double acc = 0;
    for (int i = lo; i < hi; ++i) acc += std::exp(v[static_cast<size_t>(i)] - m);
    return m + std::log(acc);
}

}  // namespace

MagKernel build_kernel(const ModelParams& p, bool restricted) {
    p.validate();
    const int n = p.n;
    MagKernel ker;
    ker.n = n;
    ker.beta = p.beta;
    ker.restricted = restricted;
    ker.up.assign(static_cast<size_t>(n + 1), 0.0);
    ker.down.assign(static_cast<size_t>(n + 1), 0.0);
    ker.stay.assign(static_cast<size_t>(n + 1), 0.0);
    const double dn = n;
    for (int k = 0; k <= n; ++k) {
        // Integer numerators keep the +/- symmetry of the arguments exact.
        const double x_up = (2 * k + 1 - n) / dn;
        const double x_dn = (2 * k - 1 - n) / dn;
        double up = ((n - k) / dn) * update_probabilities(p.beta, x_up).p_plus;
        double down = (k / dn) * update_probabilities(p.beta, x_dn).p_minus;
        ker.up[static_cast<size_t>(k)] = up;
        ker.down[static_cast<size_t>(k)] = down;
    }
    if (restricted) {
        const int bot = ker.k_min();
        for (int k = 0; k < bot; ++k) {
            ker.up[static_cast<size_t>(k)] = 0.0;
            ker.down[static_cast<size_t>(k)] = 0.0;
        }
        // A rejected down-move from the bottom state is replaced by the
        // negated proposal: same |S| cell for odd n (stay), the +2/n cell
        // for even n (the proposal at -2/n folds to +2/n).
        if (n % 2 == 0)
            ker.up[static_cast<size_t>(bot)] += ker.down[static_cast<size_t>(bot)];
        ker.down[static_cast<size_t>(bot)] = 0.0;
    }
    for (int k = 0; k <= n; ++k) {
        const size_t i = static_cast<size_t>(k);
        ker.stay[i] = 1.0 - (ker.up[i] + ker.down[i]);
    }
    return ker;
}

ProbVector ProbVector::point(int n, int k) {
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("ProbVector::point: need 0 <= k <= n");
    ProbVector v;
    v.mass.assign(static_cast<size_t>(n + 1), 0.0);
    v.mass[static_cast<size_t>(k)] = 1.0;
    return v;
}

double ProbVector::sum() const {
    double s = 0;
    for (double m : mass) s += m;
    return s;
}

double ProbVector::mean_s() const {
    const int n = size() - 1;
    double acc = 0;
    for (int k = 0; k <= n; ++k)
        acc += mass[static_cast<size_t>(k)] * (2 * k - n);
    return acc / n;
}

double ProbVector::var_s() const {
    const int n = size() - 1;
    const double mu = mean_s();
    double acc = 0;
    for (int k = 0; k <= n; ++k) {
        const double d = static_cast<double>(2 * k - n) / n - mu;
        acc += mass[static_cast<size_t>(k)] * d * d;
    }
    return acc;
}

double ProbVector::mean_abs_s() const {
    const int n = size() - 1;
    double acc = 0;
    for (int k = 0; k <= n; ++k)
        acc += mass[static_cast<size_t>(k)] * std::abs(2 * k - n);
    return acc / n;
}

std::vector<double> stationary_log_weights(const MagKernel& kernel) {
    const int n = kernel.n;
    std::vector<double> lw(static_cast<size_t>(n + 1), kNegInf);
    const long double lgn = std::lgammal(static_cast<long double>(n) + 1.0L);
    for (int k = kernel.k_min(); k <= n; ++k) {
        const long double lbinom = lgn - std::lgammal(static_cast<long double>(k) + 1.0L) -
                                   std::lgammal(static_cast<long double>(n - k) + 1.0L);
        const long double m = 2 * k - n;
        long double w = lbinom + static_cast<long double>(kernel.beta) * m * m /
                                     (2.0L * static_cast<long double>(n));
        // Folding |S|: both signed states land in each positive cell; the
        // s = 0 cell (even n) is its own mirror image.
        if (kernel.restricted && m > 0) w += 0.6931471805599453094L;  // log 2
        lw[static_cast<size_t>(k)] = static_cast<double>(w);
    }
    return lw;
}

ProbVector stationary_dist(const MagKernel& kernel) {
    const std::vector<double> lw = stationary_log_weights(kernel);
    const double logz = logsumexp(lw, kernel.k_min(), kernel.n + 1);
    ProbVector pi;
    pi.mass.assign(static_cast<size_t>(kernel.n + 1), 0.0);
    for (int k = kernel.k_min(); k <= kernel.n; ++k)
        pi.mass[static_cast<size_t>(k)] = std::exp(lw[static_cast<size_t>(k)] - logz);
    return pi;
}

ProbVector evolve(const MagKernel& kernel, const ProbVector& dist, std::int64_t steps) {
    if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
    if (dist.size() != kernel.size())
        throw std::invalid_argument("evolve: dist size " + std::to_string(dist.size()) +
                                    " does not match kernel size " + std::to_string(kernel.size()));
    const int n = kernel.n;
    ProbVector cur = dist;
    ProbVector next;
    next.mass.assign(static_cast<size_t>(n + 1), 0.0);
    for (std::int64_t t = 0; t < steps; ++t) {
        std::fill(next.mass.begin(), next.mass.end(), 0.0);
        for (int k = 0; k <= n; ++k) {
            const size_t i = static_cast<size_t>(k);
            const double m = cur.mass[i];
            if (m == 0.0) continue;
            next.mass[i] += m * kernel.stay[i];
            if (k < n) next.mass[i + 1] += m * kernel.up[i];
            if (k > 0) next.mass[i - 1] += m * kernel.down[i];
        }
        cur.mass.swap(next.mass);
        if ((t + 1) % 10000 == 0) {
            const double s = cur.sum();
            if (std::fabs(s - 1.0) > 1e-12)
                for (double& m : cur.mass) m /= s;
        }
    }
    return cur;
}

double tv_distance(const ProbVector& a, const ProbVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("tv_distance: size mismatch");
    double acc = 0;
    for (int i = 0; i < a.size(); ++i)
        acc += std::fabs(a.mass[static_cast<size_t>(i)] - b.mass[static_cast<size_t>(i)]);
    return 0.5 * acc;
}

std::vector<double> distance_profile(const MagKernel& kernel, const ProbVector& start,
                                     const std::vector<std::int64_t>& times) {
    for (size_t i = 0; i + 1 < times.size(); ++i)
        if (times[i] > times[i + 1])
            throw std::invalid_argument("distance_profile: times must be sorted ascending");
    if (!times.empty() && times.front() < 0)
        throw std::invalid_argument("distance_profile: times must be >= 0");
    const ProbVector pi = stationary_dist(kernel);
    std::vector<double> out;
    out.reserve(times.size());
    ProbVector cur = start;
    std::int64_t t = 0;
    for (std::int64_t target : times) {
        cur = evolve(kernel, cur, target - t);
        t = target;
        out.push_back(tv_distance(cur, pi));
    }
    return out;
}

std::int64_t t_mix_exact(const MagKernel& kernel, const std::vector<int>& starts, double eps) {
    if (starts.empty()) throw std::invalid_argument("t_mix_exact: need at least one start");
    if (!(eps > 0)) throw std::invalid_argument("t_mix_exact: eps must be > 0");
    for (int k : starts)
        if (k < kernel.k_min() || k > kernel.n)
            throw std::invalid_argument("t_mix_exact: start outside state space");

    const ProbVector pi = stationary_dist(kernel);
    auto d_max = [&](const std::vector<ProbVector>& ds) {
        double m = 0;
        for (const ProbVector& d : ds) m = std::max(m, tv_distance(d, pi));
        return m;
    };

    // Laws at time lo, maintained with d(lo) > eps throughout.
    std::vector<ProbVector> snap_lo;
    for (int k : starts) snap_lo.push_back(ProbVector::point(kernel.n, k));
    if (d_max(snap_lo) <= eps) return 0;

    // Doubling phase: advance until the distance drops through eps, keeping
    // the bracket's lower snapshot for the binary search.
    std::int64_t lo = 0, hi = 1;
    constexpr std::int64_t kCap = std::int64_t{1} << 40;
    while (true) {
        std::vector<ProbVector> cand;
        cand.reserve(snap_lo.size());
        for (const ProbVector& d : snap_lo) cand.push_back(evolve(kernel, d, hi - lo));
        if (d_max(cand) <= eps) break;
        lo = hi;
        snap_lo = std::move(cand);
        hi *= 2;
        if (hi > kCap) throw std::runtime_error("t_mix_exact: exceeded step cap");
    }
    // Invariant: d(lo) > eps >= d(hi); TV to stationarity is non-increasing.
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        std::vector<ProbVector> cand;
        cand.reserve(snap_lo.size());
        for (const ProbVector& d : snap_lo) cand.push_back(evolve(kernel, d, mid - lo));
        if (d_max(cand) <= eps) {
            hi = mid;
        } else {
            lo = mid;
            snap_lo = std::move(cand);
        }
    }
    return hi;
}

double drift_exact(const MagKernel& kernel, int k) {
    if (k < kernel.k_min() || k > kernel.n)
        throw std::invalid_argument("drift_exact: k outside state space");
    const int n = kernel.n;
    const double s = static_cast<double>(2 * k - n) / n;
    const double tp = std::tanh(kernel.beta * (s + 1.0 / n));
    const double tm = std::tanh(kernel.beta * (s - 1.0 / n));
    const double f_n = 0.5 * (tp + tm);
    const double theta_n = -0.5 * s * (tp - tm);
    return (f_n - s + theta_n) / n;
}

HittingTable hitting_time_table(const MagKernel& kernel, int top) {
    if (!kernel.restricted)
        throw std::invalid_argument("hitting_time_table: requires the restricted kernel");
    const int bot = kernel.k_min();
    if (top <= bot || top > kernel.n)
        throw std::invalid_argument("hitting_time_table: need k_min < top <= n");
    const std::vector<double> lw = stationary_log_weights(kernel);
    HittingTable table;
    table.k_min = bot;
    double cum = 0;
    for (int level = bot + 1; level <= top; ++level) {
        const double log_below = logsumexp(lw, bot, level);
        const double q = kernel.down[static_cast<size_t>(level)];
        const double e_step =
            std::exp(log_below - lw[static_cast<size_t>(level)] - std::log(q));
        cum += e_step;
        table.levels.push_back(level);
        table.step_time.push_back(e_step);
        table.cum_time.push_back(cum);
    }
    return table;
}

CheegerCut cheeger_cut(const ModelParams& p) {
    p.validate();
    const MagKernel ker = build_kernel(p, false);
    const std::vector<double> lw = stationary_log_weights(ker);
    const int n = p.n;
    // Boundary pair of the cut {s < 0}: the top negative state and its
    // upward neighbour.
    const int k_edge = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
    const double logz = logsumexp(lw, 0, n + 1);
    const double log_mu_a = logsumexp(lw, 0, k_edge + 1) - logz;
    const double log_flow = lw[static_cast<size_t>(k_edge)] - logz +
                            std::log(ker.up[static_cast<size_t>(k_edge)]);
    CheegerCut cut;
    cut.log_phi = log_flow - log_mu_a;
    cut.phi = std::exp(cut.log_phi);
    return cut;
}

}  // namespace cwmix

#include "cwmix/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cwmix/couplings.hpp"
#include "cwmix/experiments.hpp"
#include "cwmix/glauber.hpp"
#include "cwmix/magchain.hpp"
#include "cwmix/model.hpp"
#include "cwmix/rng.hpp"
#include "cwmix/spin_config.hpp"
#include "cwmix/table.hpp"
#include "cwmix/timegrid.hpp"

namespace cwmix {
namespace {

using nlohmann::json;

// Flat JSON config files: {"n": 400, "beta": 0.5, "times": "0..20n:step n"}.
// Keys are long option names without the leading dashes and refer to the
// invoked subcommand's options; command-line flags override file values
// (CLI11 only applies config to options not already set).  Config items are
// qualified with the parsed subcommand chain so the top-level config option
// reaches the right leaf.
class JsonConfig : public CLI::Config {
  public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        try {
            input >> doc;
        } catch (const json::parse_error& e) {
            throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            throw CLI::FileError("config must be a flat JSON object");
        }
        std::vector<std::string> parents;
        for (const CLI::App* cur = root_; !cur->get_subcommands().empty();) {
            cur = cur->get_subcommands().front();
            parents.push_back(cur->get_name());
        }
        std::vector<CLI::ConfigItem> out;
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            const json& v = it.value();
            if (v.is_string()) {
                item.inputs = {v.get<std::string>()};
            } else if (v.is_boolean()) {
                item.inputs = {v.get<bool>() ? "true" : "false"};
            } else if (v.is_number()) {
                item.inputs = {v.dump()};
            } else if (v.is_array()) {
                for (const json& e : v) {
                    if (e.is_string()) {
                        item.inputs.push_back(e.get<std::string>());
                    } else if (e.is_number()) {
                        item.inputs.push_back(e.dump());
                    } else {
                        throw CLI::FileError("config key '" + it.key() +
                                             "': arrays may hold only numbers or strings");
                    }
                }
            } else {
                throw CLI::FileError("config key '" + it.key() +
                                     "': values must be scalars or flat arrays");
            }
            out.push_back(std::move(item));
        }
        return out;
    }

  private:
    const CLI::App* root_;
};

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CWMIX_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

int start_plus_count(const std::string& text, int n) {
    if (text == "all-plus") return n;
    if (text == "all-minus") return 0;
    try {
        size_t pos = 0;
        const int k = std::stoi(text, &pos);
        if (pos == text.size() && k >= 0 && k <= n) return k;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("--start: expected all-plus, all-minus, or a plus-count in 0.." +
                                std::to_string(n) + ", got '" + text + "'");
}

SpinConfiguration start_config(const std::string& text, int n, RngStream& rng) {
    if (text == "random") {
        std::vector<std::int8_t> spins(static_cast<size_t>(n));
        for (auto& s : spins) s = rng.uniform01() < 0.5 ? std::int8_t{-1} : std::int8_t{1};
        return SpinConfiguration(std::move(spins));
    }
    return {n, start_plus_count(text, n)};
}

CouplingKind parse_kind(const std::string& text) {
    static const std::map<std::string, CouplingKind> kinds = {
        {"independent", CouplingKind::kIndependent},
        {"grand", CouplingKind::kGrand},
        {"matched-site", CouplingKind::kMatchedSite},
        {"two-coordinate", CouplingKind::kTwoCoordinate},
        {"reflection", CouplingKind::kReflection},
    };
    const auto it = kinds.find(text);
    if (it == kinds.end()) throw std::invalid_argument("--kind: unknown coupling '" + text + "'");
    return it->second;
}

// Canonical starting pair for each coupling: extreme pair where any two
// starts are legal, a half-plus configuration against its site reversal
// where equal magnetizations are required.
CoupledPair make_couple_pair(CouplingKind kind, const ModelParams& p, int start_k) {
    const int n = p.n;
    if (kind == CouplingKind::kMatchedSite || kind == CouplingKind::kTwoCoordinate) {
        const int k = start_k >= 0 ? start_k : n / 2;
        if (k > n) throw std::invalid_argument("--start-k exceeds n");
        SpinConfiguration x(n, k);
        std::vector<std::int8_t> rev(x.spins().rbegin(), x.spins().rend());
        SpinConfiguration xt(std::move(rev));
        if (kind == CouplingKind::kTwoCoordinate) {
            return {kind, std::move(x), std::move(xt), p, SpinConfiguration::all_plus(n)};
        }
        return {kind, std::move(x), std::move(xt), p, std::nullopt};
    }
    return {kind, SpinConfiguration::all_plus(n), SpinConfiguration::all_minus(n), p, std::nullopt};
}

std::string resolve_out(const std::string& out, const std::string& stem, const std::string& format) {
    return out.empty() ? stem + "." + format : out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json meta_for(const std::string& command, std::uint64_t seed, json spec) {
    return json{{"command", command}, {"seed", seed}, {"spec", std::move(spec)},
                {"version", code_version()}};
}

void run_and_emit(const json& meta, const std::string& out, const std::string& format,
                  const std::function<ResultTable()>& compute) {
    std::cerr << meta.dump() << "\n";
    const auto t0 = std::chrono::steady_clock::now();
    ResultTable table = compute();
    if (table.meta_json == "{}") table.meta_json = meta.dump();
    emit(table, out, format, seconds_since(t0));
}

Cell opt_cell(const std::optional<std::int64_t>& v) {
    return v ? Cell{*v} : Cell{std::int64_t{-1}};
}

// ---------------------------------------------------------------------------
// Subcommand registration.  Each leaf owns an options struct kept alive by
// the callback closure; handlers throw and dispatch() maps exceptions to
// exit codes.

void add_common_output(CLI::App* cmd, std::shared_ptr<std::string> out,
                       std::shared_ptr<std::string> format) {
    cmd->add_option("--out", *out, "output path (default: <subcommand>.<format>)");
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void add_exact_tv(CLI::App& app) {
    struct Opts {
        int n = 400;
        double beta = 0.5;
        std::string start = "all-plus";
        std::string times = "0..20n:step n";
        bool restricted = false;
        std::string out, format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand(
        "exact-tv", "TV distance to stationarity of the magnetization chain at given times");
    cmd->add_option("--n", o->n, "system size")->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--start", o->start, "all-plus | all-minus | plus-count")
        ->capture_default_str();
    cmd->add_option("--times", o->times, "time grid, e.g. \"t_n-10n..t_n+10n:step n\"")
        ->capture_default_str();
    cmd->add_flag("--restricted", o->restricted, "use the non-negative-magnetization chain");
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    cmd->callback([o] {
        ModelParams p{o->n, o->beta};
        p.validate();
        const json meta = meta_for(
            "exact-tv", 0,
            json{{"n", o->n}, {"beta", o->beta}, {"start", o->start}, {"times", o->times},
                 {"restricted", o->restricted}, {"out", resolve_out(o->out, "exact_tv", o->format)},
                 {"format", o->format}});
        run_and_emit(meta, resolve_out(o->out, "exact_tv", o->format), o->format, [&] {
            const MagKernel kernel = build_kernel(p, o->restricted);
            const auto times = parse_time_grid(o->times, p);
            const ProbVector start = ProbVector::point(o->n, start_plus_count(o->start, o->n));
            const auto dists = distance_profile(kernel, start, times);
            ResultTable t;
            t.columns = {"n", "beta", "t", "d"};
            for (size_t i = 0; i < times.size(); ++i) {
                t.add_row({std::int64_t{o->n}, o->beta, times[i], dists[i]});
            }
            return t;
        });
    });
}

void add_stationary(CLI::App& app) {
    struct Opts {
        int n = 200;
        double beta = 1.0;
        bool restricted = false;
        std::string out, format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* cmd =
        app.add_subcommand("stationary", "stationary law of the magnetization chain");
    cmd->add_option("--n", o->n, "system size")->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    cmd->add_flag("--restricted", o->restricted, "use the non-negative-magnetization chain");
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    cmd->callback([o] {
        ModelParams p{o->n, o->beta};
        p.validate();
        const json meta =
            meta_for("stationary", 0,
                     json{{"n", o->n}, {"beta", o->beta}, {"restricted", o->restricted},
                          {"out", resolve_out(o->out, "stationary", o->format)},
                          {"format", o->format}});
        run_and_emit(meta, resolve_out(o->out, "stationary", o->format), o->format, [&] {
            const MagKernel kernel = build_kernel(p, o->restricted);
            const ProbVector pi = stationary_dist(kernel);
            const auto logw = stationary_log_weights(kernel);
            ResultTable t;
            t.columns = {"k", "s", "log_weight", "pi"};
            for (int k = kernel.k_min(); k <= o->n; ++k) {
                t.add_row({std::int64_t{k}, static_cast<double>(2 * k - o->n) / o->n,
                           static_cast<double>(logw[static_cast<size_t>(k)]),
                           pi.mass[static_cast<size_t>(k)]});
            }
            return t;
        });
    });
}

void add_hitting(CLI::App& app) {
    struct Opts {
        int n = 200;
        double beta = 1.5;
        int top = 0;
        std::string out, format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand(
        "hitting", "expected upward hitting times of the restricted magnetization chain");
    cmd->add_option("--n", o->n, "system size")->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--top", o->top,
                    "highest plus-count level (default: ceil(n s* + sqrt(n)), needs beta > 1)")
        ->capture_default_str();
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    cmd->callback([o] {
        ModelParams p{o->n, o->beta};
        p.validate();
        int top = o->top;
        if (top == 0) {
            top = std::min(o->n, static_cast<int>(std::ceil(o->n * s_star(o->beta) +
                                                            std::sqrt(static_cast<double>(o->n)))));
        }
        const json meta = meta_for("hitting", 0,
                                   json{{"n", o->n}, {"beta", o->beta}, {"top", top},
                                        {"out", resolve_out(o->out, "hitting", o->format)},
                                        {"format", o->format}});
        run_and_emit(meta, resolve_out(o->out, "hitting", o->format), o->format, [&] {
            const MagKernel kernel = build_kernel(p, true);
            const HittingTable h = hitting_time_table(kernel, top);
            ResultTable t;
            t.columns = {"ell", "expected_time", "cumulative"};
            for (size_t i = 0; i < h.levels.size(); ++i) {
                t.add_row({std::int64_t{h.levels[i]}, h.step_time[i], h.cum_time[i]});
            }
            return t;
        });
    });
}

void add_cheeger(CLI::App& app) {
    struct Opts {
        int n = 200;
        double beta = 1.5;
        std::string out, format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand(
        "cheeger", "conductance of the negative-magnetization cut");
    cmd->add_option("--n", o->n, "system size")->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    cmd->callback([o] {
        ModelParams p{o->n, o->beta};
        p.validate();
        const json meta = meta_for("cheeger", 0,
                                   json{{"n", o->n}, {"beta", o->beta},
                                        {"out", resolve_out(o->out, "cheeger", o->format)},
                                        {"format", o->format}});
        run_and_emit(meta, resolve_out(o->out, "cheeger", o->format), o->format, [&] {
            const CheegerCut c = cheeger_cut(p);
            ResultTable t;
            t.columns = {"n", "beta", "phi", "log_phi"};
            t.add_row({std::int64_t{o->n}, o->beta, c.phi, c.log_phi});
            return t;
        });
    });
}

void add_simulate(CLI::App& app) {
    struct Opts {
        int n = 200;
        double beta = 1.0;
        std::int64_t steps = 10000;
        std::uint64_t seed = 1;
        std::string start = "all-plus";
        bool restricted = false;
        std::int64_t record_every = 0;
        std::string out, format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand("simulate", "single Glauber chain trajectory");
    cmd->add_option("--n", o->n, "system size")->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--steps", o->steps, "number of single-site updates")->capture_default_str();
    cmd->add_option("--seed", o->seed, "RNG seed")->capture_default_str();
    cmd->add_option("--start", o->start, "all-plus | all-minus | plus-count | random")
        ->capture_default_str();
    cmd->add_flag("--restricted", o->restricted, "use the non-negative-magnetization dynamics");
    cmd->add_option("--record-every", o->record_every,
                    "row cadence in steps (default: ~1000 rows total)")
        ->capture_default_str();
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    cmd->callback([o] {
        ModelParams p{o->n, o->beta};
        p.validate();
        if (o->steps < 0) throw std::invalid_argument("--steps must be >= 0");
        const std::int64_t rec =
            o->record_every > 0 ? o->record_every : std::max<std::int64_t>(1, o->steps / 1000);
        const json meta = meta_for(
            "simulate", o->seed,
            json{{"n", o->n}, {"beta", o->beta}, {"steps", o->steps}, {"seed", o->seed},
                 {"start", o->start}, {"restricted", o->restricted}, {"record_every", rec},
                 {"out", resolve_out(o->out, "simulate", o->format)}, {"format", o->format}});
        run_and_emit(meta, resolve_out(o->out, "simulate", o->format), o->format, [&] {
            RngStream rng(o->seed, 0);
            SpinConfiguration config = start_config(o->start, o->n, rng);
            ResultTable t;
            t.columns = {"t", "k", "s"};
            if (o->restricted) {
                RestrictedChain chain(std::move(config), p);
                t.add_row({std::int64_t{0}, std::int64_t{chain.plus_count()},
                           chain.magnetization()});
                for (std::int64_t step = 1; step <= o->steps; ++step) {
                    chain.step(rng);
                    if (step % rec == 0 || step == o->steps) {
                        t.add_row({step, std::int64_t{chain.plus_count()}, chain.magnetization()});
                    }
                }
            } else {
                t.add_row({std::int64_t{0}, std::int64_t{config.plus_count()},
                           config.magnetization()});
                for (std::int64_t step = 1; step <= o->steps; ++step) {
                    glauber_step(config, p, rng);
                    if (step % rec == 0 || step == o->steps) {
                        t.add_row({step, std::int64_t{config.plus_count()},
                                   config.magnetization()});
                    }
                }
            }
            return t;
        });
    });
}

void add_couple(CLI::App& app) {
    struct Opts {
        int n = 200;
        double beta = 0.5;
        std::string kind = "grand";
        int replicas = 1;
        std::int64_t max_steps = 0;
        std::uint64_t seed = 1;
        int start_k = -1;
        int workers = 0;
        std::string out, format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* cmd = app.add_subcommand(
        "couple", "run a coupled pair of chains and record its stopping times");
    cmd->add_option("--n", o->n, "system size")->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--kind", o->kind,
                    "independent | grand | matched-site | two-coordinate | reflection")
        ->capture_default_str();
    cmd->add_option("--replicas", o->replicas, "number of independent replicas")
        ->capture_default_str();
    cmd->add_option("--max-steps", o->max_steps, "step cap per replica (default: 64 n ln n)")
        ->capture_default_str();
    cmd->add_option("--seed", o->seed, "RNG seed; replica r uses stream r")
        ->capture_default_str();
    cmd->add_option("--start-k", o->start_k,
                    "shared starting plus-count for the equal-magnetization couplings "
                    "(default n/2)")
        ->capture_default_str();
    cmd->add_option("--workers", o->workers, "worker threads (0: CWMIX_WORKERS, then cores)")
        ->capture_default_str();
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    cmd->callback([o] {
        ModelParams p{o->n, o->beta};
        p.validate();
        const CouplingKind kind = parse_kind(o->kind);
        if (o->replicas < 1) throw std::invalid_argument("--replicas must be >= 1");
        const std::int64_t cap =
            o->max_steps > 0
                ? o->max_steps
                : static_cast<std::int64_t>(std::ceil(64.0 * o->n * std::log(std::max(o->n, 2))));
        const int workers = resolve_workers(o->workers);
        const json meta = meta_for(
            "couple", o->seed,
            json{{"n", o->n}, {"beta", o->beta}, {"kind", o->kind}, {"replicas", o->replicas},
                 {"max_steps", cap}, {"seed", o->seed}, {"start_k", o->start_k},
                 {"workers", workers}, {"out", resolve_out(o->out, "couple", o->format)},
                 {"format", o->format}});
        run_and_emit(meta, resolve_out(o->out, "couple", o->format), o->format, [&] {
            std::vector<CoupledStops> stops(static_cast<size_t>(o->replicas));
            parallel_for(o->replicas, workers, [&](int r) {
                RngStream rng(o->seed, static_cast<std::uint64_t>(r));
                CoupledPair pair = make_couple_pair(kind, p, o->start_k);
                while (!pair.stops().tau_coalesce && pair.time() < cap) pair.step(rng);
                stops[static_cast<size_t>(r)] = pair.stops();
            });
            ResultTable t;
            t.columns = {"kind",     "n",       "beta",    "replica", "max_steps",
                         "tau_zero", "tau_mag", "tau_abs", "tau_coalesce"};
            for (int r = 0; r < o->replicas; ++r) {
                const CoupledStops& s = stops[static_cast<size_t>(r)];
                t.add_row({o->kind, std::int64_t{o->n}, o->beta, std::int64_t{r}, cap,
                           opt_cell(s.tau_zero), opt_cell(s.tau_mag), opt_cell(s.tau_abs),
                           opt_cell(s.tau_coalesce)});
            }
            return t;
        });
    });
}

struct ExpOpts {
    std::vector<int> n_list;
    double beta = 0.5;
    std::uint64_t seed = 1;
    int replicas = 0;
    int workers = 0;
    std::vector<double> gammas = {-10, -5, -2, -1, 0, 1, 2, 5, 10};
    double window_eps = 0.25;
    double eps = 0.25;
    double c3 = 1.0;
    double alpha = 1.0;
    int mc_n = 0;
    std::string out, format = "csv";
};

ExperimentSpec make_spec(const ExpOpts& o) {
    ExperimentSpec s;
    s.n_list = o.n_list;
    s.beta = o.beta;
    s.seed = o.seed;
    s.replicas = o.replicas;
    s.workers = resolve_workers(o.workers);
    s.gammas = o.gammas;
    s.window_eps = o.window_eps;
    s.eps = o.eps;
    s.c3 = o.c3;
    s.alpha = o.alpha;
    s.mc_n = o.mc_n;
    return s;
}

json spec_json(const ExperimentSpec& s, const std::string& out, const std::string& format) {
    return json{{"n_list", s.n_list},   {"beta", s.beta},
                {"seed", s.seed},       {"replicas", s.replicas},
                {"workers", s.workers}, {"gammas", s.gammas},
                {"window_eps", s.window_eps}, {"eps", s.eps},
                {"c3", s.c3},           {"alpha", s.alpha},
                {"mc_n", s.mc_n},       {"out", out},
                {"format", format}};
}

void add_experiment_leaf(CLI::App* exp, const std::string& name, const std::string& desc,
                         ExpOpts defaults, ResultTable (*builder)(const ExperimentSpec&)) {
    auto o = std::make_shared<ExpOpts>(std::move(defaults));
    CLI::App* cmd = exp->add_subcommand(name, desc);
    cmd->add_option("--n-list", o->n_list, "system sizes (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--beta", o->beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--seed", o->seed, "RNG seed; replica r uses stream r")
        ->capture_default_str();
    cmd->add_option("--replicas", o->replicas, "Monte Carlo replicas (0: exact engine only)")
        ->capture_default_str();
    cmd->add_option("--workers", o->workers, "worker threads (0: CWMIX_WORKERS, then cores)")
        ->capture_default_str();
    cmd->add_option("--gammas", o->gammas, "window offsets in units of n")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--window-eps", o->window_eps, "cutoff window threshold")
        ->capture_default_str();
    cmd->add_option("--eps", o->eps, "mixing-time threshold")->capture_default_str();
    cmd->add_option("--c3", o->c3, "metastable level offset: top = ceil(n s* + c3 sqrt(n))")
        ->capture_default_str();
    cmd->add_option("--alpha", o->alpha, "hit-from-the-top stop: S <= s* + alpha/sqrt(n)")
        ->capture_default_str();
    cmd->add_option("--mc-n", o->mc_n, "system size for MC overlays (0: first of n-list)")
        ->capture_default_str();
    add_common_output(cmd, std::shared_ptr<std::string>(o, &o->out),
                      std::shared_ptr<std::string>(o, &o->format));
    const std::string stem = "experiment_" + name;
    cmd->callback([o, builder, name, stem] {
        const ExperimentSpec spec = make_spec(*o);
        const std::string out = resolve_out(o->out, stem, o->format);
        std::cerr << json{{"command", "experiment " + name},
                          {"seed", spec.seed},
                          {"spec", spec_json(spec, out, o->format)},
                          {"version", code_version()}}
                         .dump()
                  << "\n";
        const auto t0 = std::chrono::steady_clock::now();
        ResultTable table = builder(spec);
        emit(table, out, o->format, seconds_since(t0));
    });
}

void add_experiment(CLI::App& app) {
    CLI::App* exp = app.add_subcommand("experiment", "full-scale experiment drivers");
    exp->require_subcommand(1);

    ExpOpts cutoff;
    cutoff.n_list = {200, 400, 800, 1600};
    cutoff.beta = 0.5;
    add_experiment_leaf(exp, "cutoff", "exact TV profile around the cutoff center (beta < 1)",
                        cutoff, &cutoff_profile);

    ExpOpts critical;
    critical.n_list = {64, 128, 256, 512, 1024};
    critical.beta = 1.0;
    add_experiment_leaf(exp, "critical", "exact mixing-time scaling at beta = 1", critical,
                        &critical_scaling);

    ExpOpts metastable;
    metastable.n_list = {128, 256, 512, 1024};
    metastable.beta = 1.5;
    add_experiment_leaf(exp, "metastable",
                        "restricted-chain mixing, climb times, and conductance (beta > 1)",
                        metastable, &metastability_suite);

    ExpOpts coupling;
    coupling.n_list = {500};
    coupling.beta = 0.5;
    coupling.replicas = 500;
    add_experiment_leaf(exp, "coupling",
                        "coupled-distance contraction and meeting-time tails (beta < 1)",
                        coupling, &coupling_validation);

    ExpOpts lemmas;
    lemmas.n_list = {64, 256};
    add_experiment_leaf(exp, "lemmas", "exact moment-bound margins over the internal beta grid",
                        lemmas, &lemma_checks);
}

}  // namespace

int dispatch(int argc, char** argv) {
    CLI::App app{"Curie-Weiss Glauber dynamics: exact magnetization chain, couplings, "
                 "and mixing-time experiments"};
    app.set_version_flag("--version", std::string(code_version()));
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "",
                   "flat JSON key-value config for the invoked subcommand; "
                   "command-line flags override file values");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();  // lets --config appear after the subcommand name
    app.require_subcommand(1);

    add_exact_tv(app);
    add_stationary(app);
    add_hitting(app);
    add_cheeger(app);
    add_simulate(app);
    add_couple(app);
    add_experiment(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cwmix

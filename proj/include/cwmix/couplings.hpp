#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cwmix/glauber.hpp"
#include "cwmix/model.hpp"
#include "cwmix/rng.hpp"
#include "cwmix/spin_config.hpp"

namespace cwmix {

enum class CouplingKind {
    kIndependent,    // separate site and spin randomness per chain
    kGrand,          // shared (site, uniform); monotone in the pointwise order
    kMatchedSite,    // requires S(x) = S(x~); pairs disagreement sites so the
                     //   magnetizations stay equal and disagreements only shrink
    kTwoCoordinate,  // requires S(x) = S(x~) and a reference sigma0; pairs
                     //   same-spin sites so the agreement-count gap R moves by <= 1
    kReflection,     // requires S(x~) = -S(x); mirrors the update so the
                     //   magnetizations stay opposite
};

// Uniform sampling from dynamic site classes: each site sits in one class,
// moves are O(1) (swap with last), sampling is O(1).
class SiteClasses {
  public:
    SiteClasses(int n_sites, int n_classes);
    void assign(int site, int cls);  // initial placement or move
    int size(int cls) const { return static_cast<int>(members_[static_cast<size_t>(cls)].size()); }
    int sample(int cls, RngStream& rng) const;
    int class_of(int site) const { return class_of_[static_cast<size_t>(site)]; }

  private:
    std::vector<std::vector<int>> members_;
    std::vector<int> class_of_;
    std::vector<int> pos_;
};

// First-hit times observed along a coupled trajectory (nullopt = not yet).
struct CoupledStops {
    std::optional<std::int64_t> tau_zero;      // first |S_t| <= 1/n (first chain)
    std::optional<std::int64_t> tau_mag;       // first S_t = S~_t
    std::optional<std::int64_t> tau_abs;       // first |S_t| <= |S~_t|
    std::optional<std::int64_t> tau_coalesce;  // first X_t = X~_t
};

// A pair of chains advanced under one of the couplings above.  Every step
// leaves each marginal an exact single-site heat-bath update.
class CoupledPair {
  public:
    // sigma0 is required for kTwoCoordinate (the agreement reference) and
    // ignored otherwise.  Preconditions (equal or opposite magnetization)
    // are validated; violations throw std::logic_error.
    CoupledPair(CouplingKind kind, SpinConfiguration x, SpinConfiguration x_tilde,
                const ModelParams& p,
                std::optional<SpinConfiguration> sigma0 = std::nullopt);

    CouplingKind kind() const { return kind_; }
    const ModelParams& params() const { return params_; }
    const SpinConfiguration& x() const { return x_; }
    const SpinConfiguration& x_tilde() const { return xt_; }
    const SpinConfiguration& sigma0() const { return sigma0_; }
    std::int64_t time() const { return time_; }
    const CoupledStops& stops() const { return stops_; }
    int disagreements() const { return disagreements_; }

    // Agreement counts of each chain against sigma0 (maintained for every
    // kind) and their gap R = U(x~) - U(x), which drives the two-coordinate
    // coupling.
    UvCounts uv() const { return {u_, v_}; }
    UvCounts uv_tilde() const { return {ut_, vt_}; }
    int r_gap() const { return ut_ - u_; }

    void step(RngStream& rng);

    // Validates the maintained counters and class structure against a full
    // rebuild; throws std::logic_error on any mismatch.  O(n); meant for
    // tests and debug sweeps.
    void check_structure() const;

  private:
    void refresh_stops();
    // All spin writes go through these so the agreement counters stay fresh.
    void write_x(int site, std::int8_t value);
    void write_xt(int site, std::int8_t value);
    void step_independent(RngStream& rng);
    void step_grand(RngStream& rng);
    void step_matched(RngStream& rng);
    void step_two_coordinate(RngStream& rng);
    void step_reflection(RngStream& rng);
    void move_site_class(int site);

    CouplingKind kind_;
    SpinConfiguration x_, xt_, sigma0_;
    ModelParams params_;
    std::int64_t time_ = 0;
    CoupledStops stops_;
    int disagreements_ = 0;
    int u_ = 0, v_ = 0, ut_ = 0, vt_ = 0;
    // kMatchedSite: classes of disagreement type; kTwoCoordinate/kReflection:
    // classes of x~ by spin.  Unused classes stay empty.
    SiteClasses classes_;
};

// Per-kind one-step drift rates of R for the two-coordinate coupling:
//   a = P(R decreases), b = P(R increases), from the current (U, V, R).
struct RMoveRates {
    double a;
    double b;
};
RMoveRates two_coordinate_rates(const CoupledPair& pair);

}  // namespace cwmix

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "cwmix/model.hpp"
#include "cwmix/rng.hpp"
#include "cwmix/spin_config.hpp"

namespace cwmix {

// One heat-bath update: pick a uniform site I, refresh its spin to +1 with
// probability p_plus(S - sigma(I)/n).  Returns the updated site.
int glauber_step(SpinConfiguration& config, const ModelParams& p, RngStream& rng);

// Dynamics restricted to non-negative magnetization: a proposed move with
// S < 0 is replaced by its global negation.  The negation is lazy — an O(1)
// sign flag — so a step stays O(1).
class RestrictedChain {
  public:
    RestrictedChain(SpinConfiguration start, const ModelParams& p);

    int n() const { return raw_.n(); }
    int sign() const { return sign_; }
    std::int8_t spin(int i) const { return static_cast<std::int8_t>(sign_ * raw_.spin(i)); }
    int plus_count() const { return sign_ > 0 ? raw_.plus_count() : n() - raw_.plus_count(); }
    int magnetization_numerator() const { return 2 * plus_count() - n(); }
    double magnetization() const {
        return static_cast<double>(magnetization_numerator()) / n();
    }
    SpinConfiguration materialize() const;  // applies the sign flag

    void step(RngStream& rng);

  private:
    SpinConfiguration raw_;
    ModelParams params_;
    int sign_ = 1;
};

// Runs until `stop(state)` returns true or max_steps elapse.  Returns the
// stopping time, or nullopt when censored at max_steps.  The predicate is
// checked before the first step (a start inside the stopping set gives 0).
std::optional<std::int64_t> run_until(SpinConfiguration& config, const ModelParams& p,
                                      RngStream& rng,
                                      const std::function<bool(const SpinConfiguration&)>& stop,
                                      std::int64_t max_steps);
std::optional<std::int64_t> run_until(RestrictedChain& chain, RngStream& rng,
                                      const std::function<bool(const RestrictedChain&)>& stop,
                                      std::int64_t max_steps);

// Half the spin sum over a site block A: M(A) = (1/2) sum_{i in A} sigma(i).
// Throws std::invalid_argument on out-of-range or duplicate indices.
double block_statistic(const SpinConfiguration& config, std::span<const int> sites);

// Agreement counts against a reference configuration:
//   U = #{i : sigma(i) = sigma0(i) = +1},  V = #{i : sigma(i) = sigma0(i) = -1}.
struct UvCounts {
    int u;
    int v;
};
UvCounts project_uv(const SpinConfiguration& config, const SpinConfiguration& reference);

}  // namespace cwmix

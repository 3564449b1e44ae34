#include "cwmix/glauber.hpp"

#include <stdexcept>
#include <vector>

namespace cwmix {

int glauber_step(SpinConfiguration& config, const ModelParams& p, RngStream& rng) {
    const int n = config.n();
    const int site = rng.uniform_below(n);
    // S - sigma(I)/n with an integral numerator: (2k - n - sigma(I)) / n.
    const int numer = config.magnetization_numerator() - config.spin(site);
    const double p_plus = update_probabilities(p.beta, numer / static_cast<double>(n)).p_plus;
    config.set_spin(site, rng.uniform01() < p_plus ? std::int8_t{1} : std::int8_t{-1});
    return site;
}

RestrictedChain::RestrictedChain(SpinConfiguration start, const ModelParams& p)
    : raw_(std::move(start)), params_(p) {
    params_.validate();
    if (raw_.n() != params_.n)
        throw std::invalid_argument("RestrictedChain: config size does not match params");
    if (raw_.magnetization_numerator() < 0)
        throw std::invalid_argument("RestrictedChain: start must have S >= 0");
}

SpinConfiguration RestrictedChain::materialize() const {
    if (sign_ > 0) return raw_;
    std::vector<std::int8_t> flipped(static_cast<size_t>(n()));
    for (int i = 0; i < n(); ++i)
        flipped[static_cast<size_t>(i)] = static_cast<std::int8_t>(-raw_.spin(i));
    return SpinConfiguration(std::move(flipped));
}

void RestrictedChain::step(RngStream& rng) {
    const int nn = n();
    const int site = rng.uniform_below(nn);
    const int exposed_spin = sign_ * raw_.spin(site);
    const int numer = magnetization_numerator() - exposed_spin;
    const double p_plus =
        update_probabilities(params_.beta, numer / static_cast<double>(nn)).p_plus;
    const int new_spin = rng.uniform01() < p_plus ? 1 : -1;
    raw_.set_spin(site, static_cast<std::int8_t>(sign_ * new_spin));
    if (magnetization_numerator() < 0) sign_ = -sign_;
}

std::optional<std::int64_t> run_until(SpinConfiguration& config, const ModelParams& p,
                                      RngStream& rng,
                                      const std::function<bool(const SpinConfiguration&)>& stop,
                                      std::int64_t max_steps) {
    for (std::int64_t t = 0; t <= max_steps; ++t) {
        if (stop(config)) return t;
        if (t == max_steps) break;
        glauber_step(config, p, rng);
    }
    return std::nullopt;
}

std::optional<std::int64_t> run_until(RestrictedChain& chain, RngStream& rng,
                                      const std::function<bool(const RestrictedChain&)>& stop,
                                      std::int64_t max_steps) {
    for (std::int64_t t = 0; t <= max_steps; ++t) {
        if (stop(chain)) return t;
        if (t == max_steps) break;
        chain.step(rng);
    }
    return std::nullopt;
}

double block_statistic(const SpinConfiguration& config, std::span<const int> sites) {
    std::vector<bool> seen(static_cast<size_t>(config.n()), false);
    int sum = 0;
    for (int i : sites) {
        if (i < 0 || i >= config.n())
            throw std::invalid_argument("block_statistic: site index out of range");
        if (seen[static_cast<size_t>(i)])
            throw std::invalid_argument("block_statistic: duplicate site index");
        seen[static_cast<size_t>(i)] = true;
        sum += config.spin(i);
    }
    return 0.5 * sum;
}

UvCounts project_uv(const SpinConfiguration& config, const SpinConfiguration& reference) {
    if (config.n() != reference.n())
        throw std::invalid_argument("project_uv: size mismatch");
    UvCounts out{0, 0};
    for (int i = 0; i < config.n(); ++i) {
        if (reference.spin(i) == 1) {
            out.u += (config.spin(i) == 1);
        } else {
            out.v += (config.spin(i) == -1);
        }
    }
    return out;
}

}  // namespace cwmix

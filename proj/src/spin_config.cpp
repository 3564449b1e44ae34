#include "cwmix/spin_config.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace cwmix {

SpinConfiguration::SpinConfiguration(int n, int plus_count) {
    if (n < 1 || plus_count < 0 || plus_count > n)
        throw std::invalid_argument("SpinConfiguration: need 0 <= plus_count <= n");
    spins_.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < plus_count; ++i) spins_[static_cast<size_t>(i)] = 1;
    plus_count_ = plus_count;
}

SpinConfiguration::SpinConfiguration(std::vector<std::int8_t> spins)
    : spins_(std::move(spins)) {
    for (std::int8_t s : spins_) {
        if (s != 1 && s != -1)
            throw std::invalid_argument("SpinConfiguration: spins must be +/-1");
        if (s == 1) ++plus_count_;
    }
}

void SpinConfiguration::set_spin(int i, std::int8_t value) {
    assert(i >= 0 && i < n());
    assert(value == 1 || value == -1);
    std::int8_t& slot = spins_[static_cast<size_t>(i)];
    plus_count_ += (value == 1) - (slot == 1);
    slot = value;
#ifndef NDEBUG
    int recount = 0;
    for (std::int8_t s : spins_) recount += (s == 1);
    assert(recount == plus_count_);
#endif
}

int hamming_distance(const SpinConfiguration& a, const SpinConfiguration& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("hamming_distance: size mismatch " +
                                    std::to_string(a.n()) + " vs " + std::to_string(b.n()));
    int d = 0;
    for (int i = 0; i < a.n(); ++i) d += (a.spin(i) != b.spin(i));
    return d;
}

}  // namespace cwmix

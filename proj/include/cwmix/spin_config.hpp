#pragma once

#include <cstdint>
#include <vector>

namespace cwmix {

// A +/-1 spin configuration with its plus-site count maintained
// incrementally (full recount only in debug assertions).
class SpinConfiguration {
  public:
    SpinConfiguration() = default;
    // Deterministic start with the first k sites +1.
    SpinConfiguration(int n, int plus_count);
    explicit SpinConfiguration(std::vector<std::int8_t> spins);

    static SpinConfiguration all_plus(int n) { return {n, n}; }
    static SpinConfiguration all_minus(int n) { return {n, 0}; }

    int n() const { return static_cast<int>(spins_.size()); }
    int plus_count() const { return plus_count_; }
    std::int8_t spin(int i) const { return spins_[static_cast<size_t>(i)]; }
    const std::vector<std::int8_t>& spins() const { return spins_; }

    // S(sigma) = (2k - n)/n; numerator kept integral for exactness.
    int magnetization_numerator() const { return 2 * plus_count_ - n(); }
    double magnetization() const {
        return static_cast<double>(magnetization_numerator()) / n();
    }

    // Writes value (+1/-1) at site i, keeping plus_count consistent.
    void set_spin(int i, std::int8_t value);

    bool operator==(const SpinConfiguration& other) const {
        return spins_ == other.spins_;
    }

  private:
    std::vector<std::int8_t> spins_;
    int plus_count_ = 0;
};

// Number of disagreeing sites; throws std::invalid_argument on size mismatch.
int hamming_distance(const SpinConfiguration& a, const SpinConfiguration& b);

}  // namespace cwmix

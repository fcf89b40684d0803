#ifndef BANMIN_RANDOM_HPP
#define BANMIN_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace banmin {

/// Deterministic RNG: mt19937_64 with hand-rolled distributions so the same
/// seed yields the same stream no matter which standard library is linked.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform integer in [lo, hi], inclusive.
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return lo + eng_() % (hi - lo + 1);
  }

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace banmin

#endif  // BANMIN_RANDOM_HPP

#ifndef BANMIN_SPACES_HPP
#define BANMIN_SPACES_HPP

#include <string>

#include "banmin/errors.hpp"

namespace banmin {

/// Which sequence space a problem lives in.  Hilbert is the plain ell_2
/// pairing (everything reduces to the Gram matrix), Lp is ell_p with
/// exponent p in (1, inf), L1 is ell_1 with functionals taken from c0.
struct SpaceTag {
  enum class Kind { Hilbert, Lp, L1 };

  Kind kind = Kind::Hilbert;
  double p = 2.0;  // meaningful only for Kind::Lp

  static SpaceTag hilbert() { return SpaceTag{Kind::Hilbert, 2.0}; }

  static SpaceTag lp(double p) {
    if (!(p > 1.0)) throw ParameterError("SpaceTag: Lp exponent must exceed 1, got " + std::to_string(p));
    return SpaceTag{Kind::Lp, p};
  }

  static SpaceTag l1() { return SpaceTag{Kind::L1, 1.0}; }

  bool is_hilbert() const { return kind == Kind::Hilbert; }
  bool is_lp() const { return kind == Kind::Lp; }
  bool is_l1() const { return kind == Kind::L1; }

  /// q with 1/p + 1/q = 1.  Only defined for Lp.
  double conjugate_exponent() const {
    if (kind != Kind::Lp) throw ParameterError("conjugate_exponent: only defined for Lp spaces");
    return p / (p - 1.0);
  }

  std::string name() const {
    switch (kind) {
      case Kind::Hilbert: return "hilbert";
      case Kind::Lp: return "lp(" + std::to_string(p) + ")";
      case Kind::L1: return "l1";
    }
    return "?";
  }
};

}  // namespace banmin

#endif  // BANMIN_SPACES_HPP

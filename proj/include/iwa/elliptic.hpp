#pragma once

// Elliptic curves over Q: integral Weierstrass models, reduction
// classification at a prime from the Delta/c4/c6 criteria (the input must
// be minimal at that prime), naive point counting for a_l, ordinarity, and
// quadratic twists.

#include "iwa/padic.hpp"

#include <optional>

namespace iwa {

enum class ReductionType { good, split_mult, nonsplit_mult, additive };

std::string reduction_name(ReductionType t);

struct LocalData {
  Int ell;
  ReductionType type = ReductionType::good;
  Int a_ell = 0;  // 0 for additive
  // euler polynomial P_l(X) = e0 + e1 X + e2 X^2 with integer coefficients:
  // good: 1 - a_l X + l X^2; split: 1 - X; nonsplit: 1 + X; additive: 1
  Int e0 = 1, e1 = 0, e2 = 0;
};

class CurveQ {
 public:
  CurveQ(const Int& a1, const Int& a2, const Int& a3, const Int& a4, const Int& a6,
         std::string label = "");

  // "a1,a2,a3,a4,a6"
  static CurveQ parse(const std::string& text, std::string label = "");

  const Int& a1() const { return a1_; }
  const Int& a2() const { return a2_; }
  const Int& a3() const { return a3_; }
  const Int& a4() const { return a4_; }
  const Int& a6() const { return a6_; }
  const Int& c4() const { return c4_; }
  const Int& c6() const { return c6_; }
  const Int& disc() const { return disc_; }
  const std::string& label() const { return label_; }

  bool minimal_at(const Int& ell) const;

  std::string str() const;

 private:
  Int a1_, a2_, a3_, a4_, a6_;
  Int c4_, c6_, disc_;
  std::string label_;
};

// Reduction type at l; requires an l-minimal model.
LocalData classify_reduction(const CurveQ& E, const Int& ell,
                             long point_count_bound = 1000000);

// a_l = l + 1 - #E(F_l) by enumeration; requires good reduction at l.
Int count_points(const CurveQ& E, const Int& ell, long bound = 1000000);

struct OrdinaryData {
  bool ordinary = false;
  ReductionType type = ReductionType::good;
  std::optional<PadicNumber> alpha;  // unit root when ordinary
  Int a_p = 0;
  bool anomalous = false;  // good ordinary with a_p = 1 mod p
};

// Good: ordinary iff p does not divide a_p, alpha from hensel_unit_root.
// Multiplicative: always ordinary with alpha = a_p = +-1.
// Additive at p is refused.
OrdinaryData is_ordinary(const CurveQ& E, const Int& p, long k_prec);

// Twist by squarefree d: c4 -> d^2 c4, c6 -> d^3 c6.  For a1=a3=0 models the
// result is y^2 = x^3 + (d^2 a4') x + (d^3 a6') on the depressed cubic, kept
// integral and minimal away from 2, 3 wherever the input was.
CurveQ quadratic_twist(const CurveQ& E, const Int& d);

}  // namespace iwa

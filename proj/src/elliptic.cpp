#include "iwa/elliptic.hpp"

#include <sstream>

namespace iwa {

std::string reduction_name(ReductionType t) {
  switch (t) {
    case ReductionType::good: return "good";
    case ReductionType::split_mult: return "split_mult";
    case ReductionType::nonsplit_mult: return "nonsplit_mult";
    case ReductionType::additive: return "additive";
  }
  return "?";
}

CurveQ::CurveQ(const Int& a1, const Int& a2, const Int& a3, const Int& a4, const Int& a6,
               std::string label)
    : a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6), label_(std::move(label)) {
  Int b2 = a1_ * a1_ + 4 * a2_;
  Int b4 = 2 * a4_ + a1_ * a3_;
  Int b6 = a3_ * a3_ + 4 * a6_;
  c4_ = b2 * b2 - 24 * b4;
  c6_ = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc_ = (c4_ * c4_ * c4_ - c6_ * c6_) / 1728;
  if (disc_ == 0) throw input_error("singular model: discriminant is zero");
  if (1728 * disc_ != c4_ * c4_ * c4_ - c6_ * c6_)
    throw std::logic_error("c4/c6/disc inconsistency");
}

CurveQ CurveQ::parse(const std::string& text, std::string label) {
  std::vector<Int> a;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') { a.push_back(parse_int(cur)); cur.clear(); }
    else if (!isspace((unsigned char)ch)) cur.push_back(ch);
  }
  if (!cur.empty()) a.push_back(parse_int(cur));
  if (a.size() != 5) throw input_error("curve spec needs five integers a1,a2,a3,a4,a6");
  return CurveQ(a[0], a[1], a[2], a[3], a[4], std::move(label));
}

bool CurveQ::minimal_at(const Int& ell) const {
  // sufficient criterion: v(Delta) < 12 or v(c4) < 4
  if (mod_floor(disc_, ell) != 0) return true;
  long vd = valuation_int(disc_, ell);
  if (vd < 12) return true;
  if (c4_ == 0) return false;
  return valuation_int(c4_, ell) < 4;
}

std::string CurveQ::str() const {
  std::ostringstream os;
  os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
  if (!label_.empty()) os << " (" << label_ << ")";
  return os.str();
}

Int count_points(const CurveQ& E, const Int& ell, long bound) {
  if (!is_prime(ell)) throw input_error("count_points: l must be prime");
  if (ell > bound) throw input_error("count_points: l exceeds the configured bound");
  if (mod_floor(E.disc(), ell) == 0)
    throw std::domain_error("count_points: bad reduction at l");
  long l = ell.get_si();
  long count = 1;  // point at infinity
  if (l <= 3 || E.a1() != 0 || E.a3() != 0) {
    // full Weierstrass enumeration
    long A1 = mod_floor(E.a1(), ell).get_si();
    long A2 = mod_floor(E.a2(), ell).get_si();
    long A3 = mod_floor(E.a3(), ell).get_si();
    long A4 = mod_floor(E.a4(), ell).get_si();
    long A6 = mod_floor(E.a6(), ell).get_si();
    for (long x = 0; x < l; ++x) {
      long rhs = ((x + A2) % l * x % l + A4) % l * x % l;
      rhs = (rhs + A6) % l;
      long lin = (A1 * x + A3) % l;
      for (long y = 0; y < l; ++y) {
        long lhs = (y * y + lin * y) % l;
        if (lhs % l == rhs) ++count;
      }
    }
  } else {
    // y^2 = cubic: quadratic-character table
    std::vector<char> qr((size_t)l, 0);
    for (long t = 0; t < l; ++t) qr[(size_t)(t * (unsigned long)t % (unsigned long)l)] = 1;
    long A2 = mod_floor(E.a2(), ell).get_si();
    long A4 = mod_floor(E.a4(), ell).get_si();
    long A6 = mod_floor(E.a6(), ell).get_si();
    for (long x = 0; x < l; ++x) {
      unsigned long rhs = ((unsigned long)x + A2) % (unsigned long)l;
      rhs = (rhs * x + A4) % (unsigned long)l;
      rhs = (rhs * x + A6) % (unsigned long)l;
      if (rhs == 0) count += 1;
      else count += qr[(size_t)rhs] ? 2 : 0;
    }
  }
  return ell + 1 - count;
}

// tangent-slope test at the singular point: multiplicative reduction is
// split iff the tangent quadratic splits over F_l (used at l = 2, 3 where
// the -c6 square test degenerates)
static bool split_by_tangent(const CurveQ& E, long l) {
  auto md = [&](const Int& a) { return (long)mod_floor(a, Int(l)).get_si(); };
  long A1 = md(E.a1()), A2 = md(E.a2()), A3 = md(E.a3()), A4 = md(E.a4()), A6 = md(E.a6());
  auto F = [&](long x, long y) {
    long lhs = (y * y + A1 * x % l * y + A3 * y) % l;
    long rhs = (((x + A2) % l * x % l + A4) % l * x % l + A6) % l;
    return ((lhs - rhs) % l + l) % l;
  };
  // partial derivatives
  auto Fx = [&](long x, long y) {
    long v = (A1 * y % l - (3 * x % l * x % l + 2 * A2 * x % l + A4) % l) % l;
    return ((v % l) + l) % l;
  };
  auto Fy = [&](long x, long y) {
    long v = (2 * y + A1 * x % l + A3) % l;
    return ((v % l) + l) % l;
  };
  for (long x = 0; x < l; ++x)
    for (long y = 0; y < l; ++y) {
      if (F(x, y) != 0 || Fx(x, y) != 0 || Fy(x, y) != 0) continue;
      // singular point (x,y): shift to origin, collect the degree-2 part of
      // F(x+X, y+Y) = ... = Y^2 + a1 X Y + a3' Y - (X^3 + a2' X^2 + ...):
      // quad form Q(X,Y) = Y^2 + a1 X Y - (a2 + 3x) X^2 (the Y-linear and
      // X-linear terms vanish at a singular point)
      long qa = 1;                                   // Y^2
      long qb = A1 % l;                              // XY
      long qc = ((-(A2 + 3 * x)) % l + l) % l;       // X^2
      // split iff Q factors into two distinct linear forms over F_l
      long roots = 0;
      for (long t = 0; t < l; ++t) {  // slopes Y = tX
        long v = (qa * t % l * t % l + qb * t % l + qc) % l;
        if (v == 0) ++roots;
      }
      // also the vertical tangent X = 0: qa = 1 so Y^2 term nonzero, no
      return roots == 2;
    }
  throw std::logic_error("no singular point found for multiplicative reduction");
}

LocalData classify_reduction(const CurveQ& E, const Int& ell, long bound) {
  if (!is_prime(ell)) throw input_error("classify_reduction: l must be prime");
  LocalData d;
  d.ell = ell;
  if (mod_floor(E.disc(), ell) != 0) {
    d.type = ReductionType::good;
    d.a_ell = count_points(E, ell, bound);
    d.e0 = 1; d.e1 = -d.a_ell; d.e2 = ell;
    if (d.a_ell * d.a_ell > 4 * ell) throw std::logic_error("Hasse bound violated");
    return d;
  }
  if (!E.minimal_at(ell))
    throw input_error("model is not minimal at " + ell.get_str() +
                      "; supply an l-minimal model");
  if (mod_floor(E.c4(), ell) != 0) {
    // multiplicative
    bool split;
    if (ell > 3) {
      Int r = mod_floor(-E.c6(), ell);
      split = (r != 0) && kronecker(r, ell) == 1;
    } else {
      split = split_by_tangent(E, ell.get_si());
    }
    if (split) { d.type = ReductionType::split_mult; d.a_ell = 1; d.e0 = 1; d.e1 = -1; }
    else { d.type = ReductionType::nonsplit_mult; d.a_ell = -1; d.e0 = 1; d.e1 = 1; }
    return d;
  }
  d.type = ReductionType::additive;
  d.a_ell = 0;
  d.e0 = 1; d.e1 = 0; d.e2 = 0;
  return d;
}

OrdinaryData is_ordinary(const CurveQ& E, const Int& p, long k_prec) {
  if (p < 3) throw hypothesis_error("requires an odd prime p");
  LocalData d = classify_reduction(E, p);
  OrdinaryData out;
  out.type = d.type;
  switch (d.type) {
    case ReductionType::good: {
      out.a_p = d.a_ell;
      if (mod_floor(d.a_ell, p) == 0) { out.ordinary = false; return out; }
      out.ordinary = true;
      out.alpha = hensel_unit_root(d.a_ell, p, k_prec);
      out.anomalous = (mod_floor(d.a_ell - 1, p) == 0);
      return out;
    }
    case ReductionType::split_mult:
    case ReductionType::nonsplit_mult: {
      out.a_p = d.a_ell;
      out.ordinary = true;
      out.alpha = PadicNumber(p, k_prec, d.a_ell);
      return out;
    }
    case ReductionType::additive:
      throw hypothesis_error(
          "not covered: additive reduction at p (requires good ordinary or "
          "multiplicative reduction)");
  }
  return out;
}

CurveQ quadratic_twist(const CurveQ& E, const Int& d) {
  if (d == 0 || !is_squarefree(d)) throw input_error("twist parameter must be squarefree and nonzero");
  if (E.a1() == 0 && E.a3() == 0) {
    // complete the square is already done: depressed model via x -> x + a2/3
    // is unnecessary, twist acts directly on y^2 = x^3 + a2 x^2 + a4 x + a6
    return CurveQ(0, d * E.a2(), 0, d * d * E.a4(), d * d * d * E.a6(),
                  E.label().empty() ? "" : E.label() + "*twist" + d.get_str());
  }
  // general model: go through c4/c6 (scale 6) and undo the 6 when possible
  Int A = -27 * E.c4() * d * d;
  Int B = -54 * E.c6() * d * d * d;
  for (Int u : {Int(6), Int(3), Int(2)}) {
    Int u4 = pow_int(u, 4), u6 = pow_int(u, 6);
    if (A % u4 == 0 && B % u6 == 0) { A /= u4; B /= u6; break; }
  }
  return CurveQ(0, 0, 0, A, B,
                E.label().empty() ? "" : E.label() + "*twist" + d.get_str());
}

}  // namespace iwa

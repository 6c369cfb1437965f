#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/rational.hpp"

namespace fatpoints {

/**
 * The Hirzebruch surface F_r, r >= 1: the projectivization of O + O(r) over
 * the projective line. Its Picard group is Z{F, E} where F is a fiber of
 * the ruling and E the section with E^2 = -r (the unique negative curve).
 * The Cox ring has four variables with classes
 *   deg(x1) = deg(x3) = F,   deg(x2) = E,   deg(x4) = E + rF,
 * so E is the vanishing locus of x2 and fibers are the pencil spanned by
 * x1, x3.
 */
struct HirzebruchSurface {
  int r;
  explicit HirzebruchSurface(int r_) : r(r_) {
    if (r < 1) throw InvalidInput("HirzebruchSurface requires r >= 1");
  }
};

/// Element aF + bE of the Picard group in the {fiber, negative-section}
/// basis.
struct DivisorClass {
  long a = 0;  // coefficient of F
  long b = 0;  // coefficient of E

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  /// Intersection form: F^2 = 0, F.E = 1, E^2 = -r.
  long intersect(const DivisorClass& o, int r) const {
    return a * o.b + o.a * b - static_cast<long>(r) * b * o.b;
  }
  long self_intersection(int r) const { return intersect(*this, r); }
  bool is_nef(int r) const { return b >= 0 && a >= static_cast<long>(r) * b; }

  DivisorClass scaled(long k) const { return {a * k, b * k}; }
};

/// The ample class of minimal degree and volume, L_r = (r+1)F + E. All
/// initial degrees in this library are taken with respect to it.
inline DivisorClass minimal_polarization(const HirzebruchSurface& s) {
  return {static_cast<long>(s.r) + 1, 1};
}

/// Exponent vector of a Cox monomial x1^e1 x2^e2 x3^e3 x4^e4. For a
/// monomial of class aF + bE:  e2 + e4 = b  and  e1 + e3 + r e4 = a.
struct CoxMonomial {
  long e1 = 0, e2 = 0, e3 = 0, e4 = 0;

  friend bool operator==(const CoxMonomial&, const CoxMonomial&) = default;

  DivisorClass divisor_class(int r) const {
    return {e1 + e3 + static_cast<long>(r) * e4, e2 + e4};
  }
};

/// dim H^0 of d L_r: (1/2) r d (d+1) + (d+1)^2. Must agree with the size of
/// section_basis(s, d L_r); the two routes are checked against each other.
inline long h0_value(const HirzebruchSurface& s, long d) {
  if (d < 0) throw InvalidInput("h0_value: negative degree");
  return s.r * d * (d + 1) / 2 + (d + 1) * (d + 1);
}

/**
 * All Cox monomials of the class D, ordered lexicographically by (e4, e3).
 * A class with 0 <= a < r b has the negative curve in its base locus; the
 * fixed part is stripped (b replaced by floor(a/r)) and the stripped
 * multiple of x2 is added back to every monomial, so the returned exponent
 * vectors still have class D. Throws NotEffective when a < 0 or b < 0.
 */
inline std::vector<CoxMonomial> section_basis(const HirzebruchSurface& s,
                                              const DivisorClass& d) {
  if (d.a < 0 || d.b < 0)
    throw NotEffective("section_basis: class " + std::to_string(d.a) + "F+" +
                       std::to_string(d.b) + "E is not effective");
  long b = d.b;
  long fixed_e2 = 0;
  if (static_cast<long>(s.r) * b > d.a) {
    const long stripped = d.a / s.r;
    fixed_e2 = b - stripped;
    b = stripped;
  }
  std::vector<CoxMonomial> out;
  for (long e4 = 0; e4 <= b; ++e4) {
    const long rem = d.a - static_cast<long>(s.r) * e4;
    for (long e3 = 0; e3 <= rem; ++e3)
      out.push_back({rem - e3, b - e4 + fixed_e2, e3, e4});
  }
  return out;
}

/**
 * A point of F_r in Cox coordinates. Valid iff (x1,x3) != (0,0) and
 * (x2,x4) != (0,0); two coordinate vectors describe the same point iff they
 * differ by the torus action
 *   (x1, x2, x3, x4) ~ (l x1, m x2, l x3, l^r m x4),  l, m != 0.
 */
struct SurfacePoint {
  Rational x1, x2, x3, x4;

  SurfacePoint(Rational a, Rational b, Rational c, Rational d)
      : x1(std::move(a)), x2(std::move(b)), x3(std::move(c)), x4(std::move(d)) {
    if (x1.is_zero() && x3.is_zero())
      throw InvalidInput("SurfacePoint: (x1,x3) = (0,0)");
    if (x2.is_zero() && x4.is_zero())
      throw InvalidInput("SurfacePoint: (x2,x4) = (0,0)");
  }

  std::string str() const {
    return "(" + x1.str() + ", " + x2.str() + ", " + x3.str() + ", " + x4.str() + ")";
  }
};

/// True iff the point lies on the negative curve E_r = {x2 = 0}.
inline bool on_negative_curve(const SurfacePoint& p) { return p.x2.is_zero(); }

/// True iff the two points lie in one fiber, i.e. (x1:x3) agree projectively.
inline bool same_fiber(const SurfacePoint& p, const SurfacePoint& q) {
  return p.x1 * q.x3 == p.x3 * q.x1;
}

/// Equality under the torus action on F_r. The fiber coordinates fix the
/// rescaling l up to nothing, so only the cross-ratio of the section pair
/// remains to compare.
inline bool torus_equal(const SurfacePoint& p, const SurfacePoint& q, int r) {
  if (!same_fiber(p, q)) return false;
  const Rational lambda = !p.x1.is_zero() ? q.x1 / p.x1 : q.x3 / p.x3;
  return p.x2 * q.x4 == lambda.pow(static_cast<unsigned>(r)) * p.x4 * q.x2;
}

enum class FiberPivot { X1, X3 };
enum class SectionPivot { X2, X4 };

/**
 * An affine chart of F_r given by choosing one fiber coordinate and one
 * section coordinate as pivots; valid at a point iff both pivots are
 * nonzero there. The four charts cover the surface.
 */
struct Chart {
  FiberPivot fiber;
  SectionPivot section;

  friend bool operator==(const Chart&, const Chart&) = default;

  std::string name() const {
    return std::string(fiber == FiberPivot::X1 ? "x1" : "x3") + "," +
           (section == SectionPivot::X2 ? "x2" : "x4");
  }
};

/// Chart preference order; point normalization uses the first valid one.
inline constexpr std::array<Chart, 4> kChartOrder = {{
    {FiberPivot::X1, SectionPivot::X2},
    {FiberPivot::X1, SectionPivot::X4},
    {FiberPivot::X3, SectionPivot::X2},
    {FiberPivot::X3, SectionPivot::X4},
}};

inline bool chart_valid(const SurfacePoint& p, const Chart& c) {
  const Rational& f = c.fiber == FiberPivot::X1 ? p.x1 : p.x3;
  const Rational& s = c.section == SectionPivot::X2 ? p.x2 : p.x4;
  return !f.is_zero() && !s.is_zero();
}

inline Chart preferred_chart(const SurfacePoint& p) {
  for (const Chart& c : kChartOrder)
    if (chart_valid(p, c)) return c;
  throw ChartInvalid("no valid chart (invalid point)");  // unreachable for valid points
}

inline std::vector<Chart> valid_charts(const SurfacePoint& p) {
  std::vector<Chart> out;
  for (const Chart& c : kChartOrder)
    if (chart_valid(p, c)) out.push_back(c);
  return out;
}

/// Chart exponents (u-exponent, v-exponent) of a monomial: the exponents of
/// the non-pivot fiber and section coordinates. Always a genuine monomial,
/// never Laurent.
inline std::pair<long, long> localize(const CoxMonomial& m, const Chart& c) {
  const long u = c.fiber == FiberPivot::X1 ? m.e3 : m.e1;
  const long v = c.section == SectionPivot::X2 ? m.e4 : m.e2;
  return {u, v};
}

/**
 * Coordinates (u, v) of p in the chart: the two non-pivot coordinates after
 * the unique torus rescaling that sets both pivots to 1. Throws
 * ChartInvalid when a pivot vanishes at p.
 */
inline std::pair<Rational, Rational> normalize_to_chart(const SurfacePoint& p,
                                                        const Chart& c, int r) {
  if (!chart_valid(p, c))
    throw ChartInvalid("chart (" + c.name() + ") pivot vanishes at " + p.str());
  const Rational& fp = c.fiber == FiberPivot::X1 ? p.x1 : p.x3;
  const Rational& fu = c.fiber == FiberPivot::X1 ? p.x3 : p.x1;
  const Rational u = fu / fp;
  const Rational fpr = fp.pow(static_cast<unsigned>(r));
  Rational v = c.section == SectionPivot::X2 ? p.x4 / (fpr * p.x2)
                                             : p.x2 * fpr / p.x4;
  return {u, std::move(v)};
}

/// The representative of p with both chart pivots rescaled to 1.
inline SurfacePoint chart_representative(const SurfacePoint& p, const Chart& c, int r) {
  const auto [u, v] = normalize_to_chart(p, c, r);
  const Rational one(1);
  if (c.fiber == FiberPivot::X1) {
    if (c.section == SectionPivot::X2) return {one, one, u, v};
    return {one, v, u, one};
  }
  if (c.section == SectionPivot::X2) return {u, one, one, v};
  return {u, v, one, one};
}

/// Value of the monomial at the given coordinate representative.
inline Rational evaluate(const CoxMonomial& m, const SurfacePoint& p) {
  return p.x1.pow(static_cast<unsigned>(m.e1)) * p.x2.pow(static_cast<unsigned>(m.e2)) *
         p.x3.pow(static_cast<unsigned>(m.e3)) * p.x4.pow(static_cast<unsigned>(m.e4));
}

}  // namespace fatpoints

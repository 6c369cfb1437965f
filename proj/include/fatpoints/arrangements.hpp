#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/rational.hpp"
#include "fatpoints/rng.hpp"

namespace fatpoints {

/// Homogeneous point (x : y : z) of the projective plane, exact rationals,
/// not all zero. Equality is up to scaling.
struct PlanePoint {
  Rational x, y, z;

  PlanePoint(Rational a, Rational b, Rational c)
      : x(std::move(a)), y(std::move(b)), z(std::move(c)) {
    if (x.is_zero() && y.is_zero() && z.is_zero())
      throw InvalidInput("PlanePoint: all coordinates zero");
  }

  /// Scales so the first nonzero coordinate is 1; a unique representative.
  PlanePoint canonical() const {
    const Rational& lead = !x.is_zero() ? x : (!y.is_zero() ? y : z);
    const Rational inv = lead.reciprocal();
    return {x * inv, y * inv, z * inv};
  }

  std::string str() const {
    return "(" + x.str() + " : " + y.str() + " : " + z.str() + ")";
  }
};

inline bool plane_equal(const PlanePoint& p, const PlanePoint& q) {
  return (p.x * q.y == p.y * q.x) && (p.x * q.z == p.z * q.x) && (p.y * q.z == p.z * q.y);
}

/// Total order on canonical representatives; used only for deterministic
/// output ordering.
inline bool plane_less(const PlanePoint& p, const PlanePoint& q) {
  const PlanePoint a = p.canonical(), b = q.canonical();
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

/// The line Ax + By + Cz = 0, coefficients exact and not all zero; equality
/// up to scaling.
struct ProjLine {
  Rational a, b, c;

  ProjLine(Rational a_, Rational b_, Rational c_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a.is_zero() && b.is_zero() && c.is_zero())
      throw InvalidInput("ProjLine: all coefficients zero");
  }
};

inline bool line_equal(const ProjLine& l, const ProjLine& m) {
  return (l.a * m.b == l.b * m.a) && (l.a * m.c == l.c * m.a) && (l.b * m.c == l.c * m.b);
}

inline bool incident(const ProjLine& l, const PlanePoint& p) {
  return (l.a * p.x + l.b * p.y + l.c * p.z).is_zero();
}

/// Intersection point of two distinct lines (cross product of coefficient
/// vectors).
inline PlanePoint meet(const ProjLine& l, const ProjLine& m) {
  if (line_equal(l, m)) throw InvalidInput("meet: lines coincide");
  return {l.b * m.c - l.c * m.b, l.c * m.a - l.a * m.c, l.a * m.b - l.b * m.a};
}

/// Line spanned by two distinct points.
inline ProjLine join(const PlanePoint& p, const PlanePoint& q) {
  if (plane_equal(p, q)) throw InvalidInput("join: points coincide");
  return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}

/// A finite set of pairwise distinct lines with a distinguished point Q.
struct Arrangement {
  std::vector<ProjLine> lines;
  PlanePoint q;

  Arrangement(std::vector<ProjLine> ls, PlanePoint q_)
      : lines(std::move(ls)), q(std::move(q_)) {
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j)
        if (line_equal(lines[i], lines[j]))
          throw InvalidInput("Arrangement: lines " + std::to_string(i) + " and " +
                             std::to_string(j) + " coincide");
  }

  int multiplicity_at_q() const {
    int m = 0;
    for (const auto& l : lines)
      if (incident(l, q)) ++m;
    return m;
  }
};

struct SingularPoint {
  PlanePoint point;
  int multiplicity;  // number of lines through the point, >= 2
};

/**
 * All pairwise intersection points of the lines, deduplicated exactly, each
 * with the number of lines through it. Sorted by canonical coordinates, so
 * the order is deterministic.
 */
inline std::vector<SingularPoint> singular_points(const std::vector<ProjLine>& lines) {
  std::vector<SingularPoint> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const PlanePoint p = meet(lines[i], lines[j]);
      bool seen = false;
      for (const auto& s : out)
        if (plane_equal(s.point, p)) {
          seen = true;
          break;
        }
      if (seen) continue;
      int mult = 0;
      for (const auto& l : lines)
        if (incident(l, p)) ++mult;
      out.push_back({p.canonical(), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& s, const SingularPoint& t) {
    return plane_less(s.point, t.point);
  });
  return out;
}

/// Binomial coefficient C(n, 2).
inline long choose2(long n) { return n * (n - 1) / 2; }

/// Upper bound C(d,2) - C(m,2) for the number of singular points away from
/// a point of multiplicity m on a reduced degree-d curve. Requires
/// 2 <= m <= d.
inline long singular_point_bound(long d, long m) {
  if (m < 2 || m > d) throw InvalidInput("singular_point_bound requires 2 <= m <= d");
  return choose2(d) - choose2(m);
}

struct ArrangementReport {
  long d = 0;                     // number of lines
  long m = 0;                     // multiplicity at Q
  long away_count = 0;            // singular points away from Q
  long bound = 0;                 // C(d,2) - C(m,2)
  bool within_bound = false;
  bool attains_bound = false;
  bool extremal = false;          // attains the bound with the pencil+star structure
  std::vector<std::string> violations;
  std::vector<SingularPoint> away_points;
};

/**
 * Counts singular points away from Q and checks them against the bound.
 * When the bound is attained, verifies the extremal structure: the lines
 * split into the m lines through Q and d-m further lines in general
 * position whose pairwise intersections avoid the lines through Q.
 */
inline ArrangementReport check_singular_bound(const Arrangement& arr) {
  ArrangementReport rep;
  rep.d = static_cast<long>(arr.lines.size());
  rep.m = arr.multiplicity_at_q();
  if (rep.m < 2)
    throw InvalidInput("check_singular_bound: Q must have multiplicity >= 2");
  rep.bound = singular_point_bound(rep.d, rep.m);

  for (const auto& s : singular_points(arr.lines))
    if (!plane_equal(s.point, arr.q)) rep.away_points.push_back(s);
  rep.away_count = static_cast<long>(rep.away_points.size());
  rep.within_bound = rep.away_count <= rep.bound;
  if (!rep.within_bound) rep.violations.push_back("count exceeds the bound");
  rep.attains_bound = rep.away_count == rep.bound;

  if (rep.attains_bound) {
    std::vector<ProjLine> pencil, star;
    for (const auto& l : arr.lines)
      (incident(l, arr.q) ? pencil : star).push_back(l);
    for (const auto& s : rep.away_points)
      if (s.multiplicity != 2)
        rep.violations.push_back("point " + s.point.str() + " has multiplicity " +
                                 std::to_string(s.multiplicity));
    for (std::size_t i = 0; i < star.size(); ++i) {
      for (std::size_t j = i + 1; j < star.size(); ++j) {
        const PlanePoint p = meet(star[i], star[j]);
        for (const auto& l : pencil)
          if (incident(l, p))
            rep.violations.push_back("star intersection " + p.str() +
                                     " lies on a line through Q");
      }
    }
    rep.extremal = rep.violations.empty();
  }
  return rep;
}

namespace detail {

inline Rational draw_coeff(Rng& rng) { return Rational(rng.range(-30, 30)); }

}  // namespace detail

/**
 * m random lines through Q = (0:0:1) plus d-m further random lines,
 * validated for general position: star lines pairwise non-parallel, none
 * through Q, no three concurrent, and no star-star intersection on a
 * pencil line. Deterministic per seed; throws DegenerateSeed when the draw
 * violates a constraint (callers retry with another seed).
 */
inline Arrangement make_pencil_star(long d, long m, std::uint64_t seed) {
  if (m < 2 || m > d) throw InvalidInput("make_pencil_star requires 2 <= m <= d");
  Rng rng(seed);
  const PlanePoint q{0, 0, 1};
  std::vector<ProjLine> lines;

  const auto push_unique = [&](ProjLine l) {
    for (const auto& prev : lines)
      if (line_equal(prev, l)) throw DegenerateSeed("coincident lines drawn");
    lines.push_back(std::move(l));
  };

  for (long i = 0; i < m; ++i) {
    Rational a = detail::draw_coeff(rng), b = detail::draw_coeff(rng);
    if (a.is_zero() && b.is_zero()) a = Rational(1);
    push_unique(ProjLine{a, b, 0});
  }
  for (long i = m; i < d; ++i) {
    Rational a = detail::draw_coeff(rng), b = detail::draw_coeff(rng);
    Rational c = detail::draw_coeff(rng);
    if (c.is_zero()) c = Rational(1);  // star lines must miss Q
    if (a.is_zero() && b.is_zero()) a = Rational(1);
    push_unique(ProjLine{a, b, c});
  }

  const auto star_begin = lines.begin() + m;
  for (auto i = star_begin; i != lines.end(); ++i) {
    for (auto j = i + 1; j != lines.end(); ++j) {
      if ((i->a * j->b - i->b * j->a).is_zero())
        throw DegenerateSeed("parallel star lines");
      const PlanePoint p = meet(*i, *j);
      for (auto k = star_begin; k != lines.end(); ++k)
        if (k != i && k != j && incident(*k, p))
          throw DegenerateSeed("three concurrent star lines");
      for (auto k = lines.begin(); k != star_begin; ++k)
        if (incident(*k, p)) throw DegenerateSeed("star intersection on a pencil line");
    }
  }
  return Arrangement(std::move(lines), q);
}

/// make_pencil_star with bounded seed retries; returns the first
/// non-degenerate draw. Deterministic given the starting seed.
inline Arrangement make_pencil_star_retrying(long d, long m, std::uint64_t seed,
                                             int max_tries = 64) {
  for (int t = 0; t < max_tries; ++t) {
    try {
      return make_pencil_star(d, m, seed + static_cast<std::uint64_t>(t));
    } catch (const DegenerateSeed&) {
    }
  }
  throw DegenerateSeed("make_pencil_star: no valid draw in " + std::to_string(max_tries) +
                       " attempts");
}

/**
 * d pairwise distinct random lines, the first k forced through Q = (0:0:1);
 * no general-position validation beyond distinctness. Used by randomized
 * arrangement checks.
 */
inline Arrangement random_arrangement(long d, long k, std::uint64_t seed) {
  if (k < 0 || k > d) throw InvalidInput("random_arrangement: need 0 <= k <= d");
  Rng rng(seed);
  std::vector<ProjLine> lines;
  int guard = 0;
  while (static_cast<long>(lines.size()) < d) {
    if (++guard > 10000) throw DegenerateSeed("random_arrangement: cannot draw distinct lines");
    Rational a = detail::draw_coeff(rng), b = detail::draw_coeff(rng);
    Rational c = static_cast<long>(lines.size()) < k ? Rational(0) : detail::draw_coeff(rng);
    if (a.is_zero() && b.is_zero()) {
      if (c.is_zero()) continue;
      if (static_cast<long>(lines.size()) < k) a = Rational(1);
    }
    ProjLine l{a, b, c};
    bool dup = false;
    for (const auto& prev : lines)
      if (line_equal(prev, l)) dup = true;
    if (!dup) lines.push_back(std::move(l));
  }
  return Arrangement(std::move(lines), PlanePoint{0, 0, 1});
}

}  // namespace fatpoints

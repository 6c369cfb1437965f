#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/arrangements.hpp"
#include "fatpoints/errors.hpp"
#include "fatpoints/rational.hpp"
#include "fatpoints/rng.hpp"
#include "fatpoints/toric.hpp"

namespace fatpoints {

/// The fixed blow-up center on the plane side of F_1 -> P^2.
inline PlanePoint blowup_center() { return PlanePoint{0, 0, 1}; }

/**
 * Lifts a plane point p != Q = (0:0:1) to F_1 in Cox coordinates
 * (x1, x2, x3, x4) = (x, 1, y, z). The image never lies on the exceptional
 * curve (x2 = 1), rescaling p moves the image by the torus action, and Cox
 * monomial evaluation at the lift agrees with plane monomial evaluation
 * x^e1 y^e3 z^e4 at p — the property tests pin all three facts down.
 */
inline SurfacePoint blowup_point(const PlanePoint& p) {
  if (p.x.is_zero() && p.y.is_zero())
    throw CenterPoint("blowup_point: the blow-up center has no unique preimage");
  return {p.x, Rational(1), p.y, p.z};
}

/// Blow-down of a point of F_1 off the exceptional curve:
/// (x1 x2 : x2 x3 : x4). Points with x2 = 0 all map to the center.
inline PlanePoint blow_down(const SurfacePoint& p) {
  return {p.x1 * p.x2, p.x2 * p.x3, p.x4};
}

/// A single point on the negative curve E_r: (1, 0, 0, 1).
inline std::vector<SurfacePoint> point_on_negative_curve(int r) {
  if (r < 1) throw InvalidInput("point_on_negative_curve: r >= 1 required");
  return {SurfacePoint{Rational(1), Rational(0), Rational(0), Rational(1)}};
}

/// k distinct points in the fiber (x1:x3) = (1:0), none on the negative
/// curve.
inline std::vector<SurfacePoint> fiber_points(int r, int k) {
  if (r < 1 || k < 1) throw InvalidInput("fiber_points: r >= 1 and k >= 1 required");
  std::vector<SurfacePoint> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i)
    out.push_back(SurfacePoint{Rational(1), Rational(1), Rational(0), Rational(i)});
  return out;
}

/// A pencil-plus-star configuration on F_1: the full data of the plane
/// arrangement, its intersection points away from Q, and their lifts.
struct PencilStarConfig {
  Arrangement arrangement;
  std::vector<PlanePoint> plane_points;
  std::vector<SurfacePoint> points;
};

/**
 * Builds a lines through Q plus a general star lines, collects ALL pairwise
 * intersection points away from Q — a^2 pencil-star points plus C(a,2)
 * star-star points, C(2a,2) - C(a,2) in total — and lifts them to F_1.
 * Deterministic per seed; DegenerateSeed on a general-position violation.
 */
inline PencilStarConfig pencil_star_config(long a, std::uint64_t seed) {
  if (a < 2) throw InvalidInput("pencil_star_config: a >= 2 required");
  Arrangement arr = make_pencil_star(2 * a, a, seed);

  std::vector<PlanePoint> plane;
  for (const auto& s : singular_points(arr.lines))
    if (!plane_equal(s.point, arr.q)) plane.push_back(s.point);
  const long expected = choose2(2 * a) - choose2(a);
  if (static_cast<long>(plane.size()) != expected)
    throw DegenerateSeed("pencil_star_config: expected " + std::to_string(expected) +
                         " intersection points, found " + std::to_string(plane.size()));

  std::vector<SurfacePoint> lifted;
  lifted.reserve(plane.size());
  for (const auto& p : plane) lifted.push_back(blowup_point(p));
  return {std::move(arr), std::move(plane), std::move(lifted)};
}

/// pencil_star_config with bounded seed retries; deterministic given the
/// starting seed.
inline PencilStarConfig pencil_star_config_retrying(long a, std::uint64_t seed,
                                                    int max_tries = 64) {
  for (int t = 0; t < max_tries; ++t) {
    try {
      return pencil_star_config(a, seed + static_cast<std::uint64_t>(t));
    } catch (const DegenerateSeed&) {
    }
  }
  throw DegenerateSeed("pencil_star_config: no valid draw in " +
                       std::to_string(max_tries) + " attempts");
}

/// Placement constraints for random schemes. The default rejects points on
/// the negative curve and shared fibers; coincidences only appear when
/// asked for.
struct SchemeConstraints {
  enum class Curve { Off, On, Any };
  Curve curve = Curve::Off;
  bool single_fiber = false;
};

/**
 * n pairwise distinct points with integer coordinates in [-1000, 1000],
 * honoring the constraints; collisions and unwanted coincidences are
 * rejected and redrawn. Deterministic per seed.
 */
inline std::vector<SurfacePoint> random_scheme(int r, int n, std::uint64_t seed,
                                               const SchemeConstraints& c = {}) {
  if (r < 1 || n < 1) throw InvalidInput("random_scheme: r >= 1 and n >= 1 required");
  Rng rng(seed);
  const auto draw = [&] { return Rational(rng.range(-1000, 1000)); };
  std::vector<SurfacePoint> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++guard > 100000) throw DegenerateSeed("random_scheme: rejection loop stuck");

    Rational x1, x3;
    if (c.single_fiber && !out.empty()) {
      x1 = out[0].x1;
      x3 = out[0].x3;
    } else {
      x1 = draw();
      x3 = draw();
      if (x1.is_zero() && x3.is_zero()) continue;
    }

    Rational x2;
    switch (c.curve) {
      case SchemeConstraints::Curve::On: x2 = Rational(0); break;
      case SchemeConstraints::Curve::Off:
        x2 = draw();
        if (x2.is_zero()) continue;
        break;
      case SchemeConstraints::Curve::Any: x2 = draw(); break;
    }
    Rational x4 = draw();
    if (x2.is_zero() && x4.is_zero()) continue;

    SurfacePoint p{std::move(x1), std::move(x2), std::move(x3), std::move(x4)};
    bool clash = false;
    for (const auto& prev : out) {
      if (torus_equal(prev, p, r)) clash = true;
      if (!c.single_fiber && same_fiber(prev, p)) clash = true;  // reject coincidences
    }
    if (!clash) out.push_back(std::move(p));
  }
  return out;
}

/**
 * Decides whether the points are exactly the lifted intersection points of
 * a pencil-plus-star configuration with parameter a: blows the points down,
 * reconstructs the candidate star lines (the lines carrying exactly 2a-1 of
 * the points), then checks the full incidence structure — a star lines, a
 * pencil lines through Q with a points each, star-star points off the
 * pencil, every pencil-star intersection a scheme point.
 */
inline bool recognize_pencil_star(const std::vector<SurfacePoint>& points, long a) {
  if (a < 2) return false;
  const long expected = choose2(2 * a) - choose2(a);
  if (static_cast<long>(points.size()) != expected) return false;
  for (const auto& p : points)
    if (on_negative_curve(p)) return false;

  const PlanePoint q = blowup_center();
  std::vector<PlanePoint> plane;
  plane.reserve(points.size());
  for (const auto& p : points) {
    PlanePoint down = blow_down(p);
    if (plane_equal(down, q)) return false;
    plane.push_back(std::move(down));
  }

  const auto count_incident = [&](const ProjLine& l) {
    long c = 0;
    for (const auto& p : plane)
      if (incident(l, p)) ++c;
    return c;
  };

  // Candidate star lines: spanned by point pairs, carrying exactly 2a-1 of
  // the points, missing Q.
  std::vector<ProjLine> star;
  for (std::size_t i = 0; i < plane.size(); ++i) {
    for (std::size_t j = i + 1; j < plane.size(); ++j) {
      const ProjLine l = join(plane[i], plane[j]);
      if (incident(l, q)) continue;
      if (count_incident(l) != 2 * a - 1) continue;
      bool dup = false;
      for (const auto& prev : star)
        if (line_equal(prev, l)) dup = true;
      if (!dup) star.push_back(l);
    }
  }
  if (static_cast<long>(star.size()) != a) return false;

  // Star-star intersection points must be distinct scheme points.
  std::vector<PlanePoint> star_star;
  for (std::size_t i = 0; i < star.size(); ++i) {
    for (std::size_t j = i + 1; j < star.size(); ++j) {
      const PlanePoint p = meet(star[i], star[j]);
      for (const auto& prev : star_star)
        if (plane_equal(prev, p)) return false;  // concurrent star lines
      bool in_scheme = false;
      for (const auto& sp : plane)
        if (plane_equal(sp, p)) in_scheme = true;
      if (!in_scheme) return false;
      star_star.push_back(p);
    }
  }

  // The remaining a^2 points must group into a pencil lines of a points.
  std::vector<PlanePoint> rest;
  for (const auto& p : plane) {
    bool is_ss = false;
    for (const auto& s : star_star)
      if (plane_equal(s, p)) is_ss = true;
    if (!is_ss) rest.push_back(p);
  }
  if (static_cast<long>(rest.size()) != a * a) return false;

  std::vector<ProjLine> pencil;
  std::vector<long> group_size;
  for (const auto& p : rest) {
    const ProjLine l = join(q, p);
    bool found = false;
    for (std::size_t k = 0; k < pencil.size(); ++k)
      if (line_equal(pencil[k], l)) {
        ++group_size[k];
        found = true;
      }
    if (!found) {
      pencil.push_back(l);
      group_size.push_back(1);
    }
  }
  if (static_cast<long>(pencil.size()) != a) return false;
  for (long g : group_size)
    if (g != a) return false;

  for (const auto& s : star_star)
    for (const auto& l : pencil)
      if (incident(l, s)) return false;

  // Every pencil-star intersection must be one of the scheme points.
  for (const auto& lp : pencil) {
    for (const auto& ls : star) {
      const PlanePoint p = meet(lp, ls);
      bool in_scheme = false;
      for (const auto& sp : plane)
        if (plane_equal(sp, p)) in_scheme = true;
      if (!in_scheme) return false;
    }
  }
  return true;
}

}  // namespace fatpoints

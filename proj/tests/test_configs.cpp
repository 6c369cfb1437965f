#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <utility>
#include <vector>

#include "fatpoints/classification.hpp"
#include "fatpoints/configs.hpp"
#include "fatpoints/interpolation.hpp"
#include "fatpoints/matrix.hpp"
#include "fatpoints/rng.hpp"

using namespace fatpoints;

namespace {

// Independent route for the F_1 correspondence: the least d such that a
// plane curve of degree 2d has multiplicity >= d at Q = (0:0:1) and
// multiplicity >= m at every given point. Works with the restricted plane
// monomial basis x^a y^b z^c, a+b+c = 2d, a+b >= d, and vanishing
// conditions computed in an affine chart of the plane — it never touches
// the Cox-coordinate machinery it cross-checks.
long plane_alpha(const std::vector<PlanePoint>& pts, int m, long d_cap = 10) {
  for (long d = 1; d <= d_cap; ++d) {
    std::vector<std::array<long, 3>> mons;
    for (long a = 0; a <= 2 * d; ++a)
      for (long b = 0; a + b <= 2 * d; ++b)
        if (a + b >= d) mons.push_back({a, b, 2 * d - a - b});

    const std::size_t rows_per_point = static_cast<std::size_t>(m) * (m + 1) / 2;
    DenseMatrix<Rational> cond(pts.size() * rows_per_point, mons.size());
    std::size_t row = 0;
    for (const auto& p : pts) {
      // Dehomogenize with respect to the largest-index nonzero coordinate.
      int chart = !p.z.is_zero() ? 2 : (!p.y.is_zero() ? 1 : 0);
      const Rational& div = chart == 2 ? p.z : (chart == 1 ? p.y : p.x);
      const Rational c0 = (chart == 0 ? p.y : p.x) / div;
      const Rational c1 = (chart == 2 ? p.y : p.z) / div;
      // Exponent picks per chart: z=1 -> (a, b); y=1 -> (a, c); x=1 -> (b, c).
      for (long t = 0; t < m; ++t) {
        for (long i = 0; i <= t; ++i, ++row) {
          const long j = t - i;
          for (std::size_t k = 0; k < mons.size(); ++k) {
            const auto [a, b, c] = mons[k];
            const long e0 = chart == 0 ? b : a;
            const long e1 = chart == 2 ? b : c;
            if (e0 < i || e1 < j) continue;
            Rational f(1);
            for (long t2 = 0; t2 < i; ++t2) f *= Rational(e0 - t2);
            for (long t2 = 0; t2 < j; ++t2) f *= Rational(e1 - t2);
            cond(row, k) = f * c0.pow(static_cast<unsigned>(e0 - i)) *
                           c1.pow(static_cast<unsigned>(e1 - j));
          }
        }
      }
    }
    if (rank_exact(cond) < cond.cols()) return d;
  }
  return -1;
}

}  // namespace

TEST_CASE("blow-up of plane points") {
  const SurfacePoint p = blowup_point(PlanePoint{Rational(1), Rational(0), Rational(0)});
  CHECK(torus_equal(p, SurfacePoint{Rational(1), Rational(1), Rational(0), Rational(0)}, 1));
  CHECK_FALSE(on_negative_curve(p));
  CHECK_THROWS_AS(blowup_point(PlanePoint{Rational(0), Rational(0), Rational(3)}), CenterPoint);

  Rng rng(11);
  for (int iter = 0; iter < 10; ++iter) {
    const PlanePoint q{Rational(rng.range(-9, 9)), Rational(rng.range(1, 9)),
                       Rational(rng.range(-9, 9))};
    const Rational t(rng.range(1, 7));
    const SurfacePoint lift = blowup_point(q);
    const SurfacePoint lift_scaled = blowup_point(PlanePoint{q.x * t, q.y * t, q.z * t});
    CHECK(torus_equal(lift, lift_scaled, 1));
    CHECK_FALSE(on_negative_curve(lift));
    CHECK(plane_equal(blow_down(lift), q));
  }
}

TEST_CASE("sections of d L_1 match plane monomials of degree 2d") {
  const HirzebruchSurface s(1);
  Rng rng(22);
  for (long d = 1; d <= 3; ++d) {
    const auto basis = section_basis(s, minimal_polarization(s).scaled(d));

    // Bijection with {x^e1 y^e3 z^e4 : e1+e3+e4 = 2d, e1+e3 >= d}.
    long plane_count = 0;
    for (long a = 0; a <= 2 * d; ++a)
      for (long b = 0; a + b <= 2 * d; ++b)
        if (a + b >= d) ++plane_count;
    CHECK(static_cast<long>(basis.size()) == plane_count);
    for (const auto& mon : basis) {
      CHECK(mon.e2 + mon.e4 == d);
      CHECK(mon.e1 + mon.e3 + mon.e4 == 2 * d);
      CHECK(mon.e1 + mon.e3 >= d);
    }

    // Evaluation commutes with the lift.
    for (int iter = 0; iter < 5; ++iter) {
      const PlanePoint p{Rational(rng.range(-9, 9)), Rational(rng.range(-9, 9)),
                         Rational(rng.range(1, 9))};
      const SurfacePoint lift = blowup_point(p);
      for (const auto& mon : basis) {
        const Rational plane_value = p.x.pow(static_cast<unsigned>(mon.e1)) *
                                     p.y.pow(static_cast<unsigned>(mon.e3)) *
                                     p.z.pow(static_cast<unsigned>(mon.e4));
        CHECK(evaluate(mon, lift) == plane_value);
      }
    }
  }
}

TEST_CASE("negative curve point generator") {
  for (int r = 1; r <= 4; ++r) {
    const auto z = point_on_negative_curve(r);
    REQUIRE(z.size() == 1);
    CHECK(on_negative_curve(z[0]));
  }
  // Initial sequence all ones through m = r+2 (here r = 2, m <= 4).
  const auto rep = initial_sequence(HirzebruchSurface(2), point_on_negative_curve(2), 4);
  CHECK(rep.alphas == std::vector<long>{1, 1, 1, 1});
  // alpha(6Z) = ceil(6/5) = 2 for r = 3.
  CHECK(alpha(HirzebruchSurface(3), point_on_negative_curve(3), 6).alpha == 2);
}

TEST_CASE("fiber point generator") {
  const auto pts = fiber_points(2, 3);
  REQUIRE(pts.size() == 3);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK_FALSE(on_negative_curve(pts[i]));
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      CHECK(same_fiber(pts[i], pts[j]));
      CHECK_FALSE(torus_equal(pts[i], pts[j], 2));
    }
  }

  // Moving one point off the fiber shortens the plateau strictly.
  const HirzebruchSurface s(2);
  CHECK(initial_sequence(s, pts, 4).plateau_length == 3);
  auto moved = pts;
  moved[2] = SurfacePoint{Rational(1), Rational(1), Rational(1), Rational(2)};
  CHECK(initial_sequence(s, moved, 4).plateau_length < 3);
}

TEST_CASE("pencil-star configurations") {
  for (long a = 2; a <= 4; ++a) {
    const PencilStarConfig cfg = pencil_star_config_retrying(a, 1000 + a);
    CHECK(static_cast<long>(cfg.points.size()) == choose2(2 * a) - choose2(a));
    for (const auto& p : cfg.points) CHECK_FALSE(on_negative_curve(p));
    CHECK(check_singular_bound(cfg.arrangement).extremal);
  }
  CHECK(pencil_star_config_retrying(3, 1).points.size() == 12);
  CHECK(pencil_star_config_retrying(2, 1).points.size() == 5);
  CHECK_THROWS_AS(pencil_star_config(1, 1), InvalidInput);
}

TEST_CASE("pencil-star initial sequence on F_1") {
  const HirzebruchSurface s(1);
  const PencilStarConfig cfg = pencil_star_config_retrying(2, 42);
  const auto rep = initial_sequence(s, cfg.points, 3);
  CHECK(rep.alphas[0] == 2);
  CHECK(rep.alphas[1] == 2);
  CHECK(rep.alphas[2] > 2);  // the plateau has length exactly r+1 = 2
  CHECK(rep.plateau_length == 2);
}

TEST_CASE("surface alpha agrees with the plane interpolation oracle") {
  const HirzebruchSurface s(1);
  for (long a = 2; a <= 3; ++a) {
    const PencilStarConfig cfg = pencil_star_config_retrying(a, 90 + a);
    long prev = 1;
    for (int m = 1; m <= 2; ++m) {
      const long surface_alpha = alpha(s, cfg.points, m, {}, prev).alpha;
      prev = surface_alpha;
      CHECK(surface_alpha == plane_alpha(cfg.plane_points, m, 6));
    }
  }
  // Also off the pencil-star family: random plane points, single and double.
  Rng rng(314);
  for (int iter = 0; iter < 3; ++iter) {
    std::vector<PlanePoint> plane;
    std::vector<SurfacePoint> lifted;
    for (int k = 0; k < 3; ++k) {
      const PlanePoint p{Rational(rng.range(-20, 20)), Rational(rng.range(-20, 20)),
                         Rational(rng.range(1, 20))};
      if (p.x.is_zero() && p.y.is_zero()) continue;
      bool dup = false;
      for (const auto& q : plane)
        if (plane_equal(q, p)) dup = true;
      if (dup) continue;
      plane.push_back(p);
      lifted.push_back(blowup_point(p));
    }
    if (plane.empty()) continue;
    for (int m = 1; m <= 2; ++m)
      CHECK(alpha(s, lifted, m).alpha == plane_alpha(plane, m, 8));
  }
}

TEST_CASE("generators are deterministic per seed") {
  const auto a = pencil_star_config_retrying(3, 77).points;
  const auto b = pencil_star_config_retrying(3, 77).points;
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x1 == b[i].x1);
    CHECK(a[i].x2 == b[i].x2);
    CHECK(a[i].x3 == b[i].x3);
    CHECK(a[i].x4 == b[i].x4);
  }
  const auto r1 = random_scheme(2, 4, 555);
  const auto r2 = random_scheme(2, 4, 555);
  for (std::size_t i = 0; i < r1.size(); ++i) CHECK(torus_equal(r1[i], r2[i], 2));
}

TEST_CASE("two random same-fiber points on F_3 plateau at r+1") {
  SchemeConstraints c;
  c.single_fiber = true;
  const auto pts = random_scheme(3, 2, 4242, c);
  REQUIRE(same_fiber(pts[0], pts[1]));
  const auto rep = initial_sequence(HirzebruchSurface(3), pts, 5);
  CHECK(rep.plateau_length == 4);
  CHECK(rep.alphas[0] == 1);
}

TEST_CASE("random scheme constraints") {
  Rng seeds(5);
  for (int iter = 0; iter < 6; ++iter) {
    const int r = 1 + iter % 3;
    SchemeConstraints c;

    const auto general = random_scheme(r, 4, seeds.next());
    for (std::size_t i = 0; i < general.size(); ++i) {
      CHECK_FALSE(on_negative_curve(general[i]));
      for (std::size_t j = i + 1; j < general.size(); ++j) {
        CHECK_FALSE(torus_equal(general[i], general[j], r));
        CHECK_FALSE(same_fiber(general[i], general[j]));
      }
    }

    c.curve = SchemeConstraints::Curve::On;
    for (const auto& p : random_scheme(r, 3, seeds.next(), c))
      CHECK(on_negative_curve(p));

    c.curve = SchemeConstraints::Curve::Off;
    c.single_fiber = true;
    const auto fib = random_scheme(r, 3, seeds.next(), c);
    for (std::size_t i = 1; i < fib.size(); ++i) CHECK(same_fiber(fib[0], fib[i]));
  }
  CHECK_THROWS_AS(random_scheme(0, 1, 1), InvalidInput);
  CHECK_THROWS_AS(random_scheme(1, 0, 1), InvalidInput);
}

TEST_CASE("pencil-star recognition") {
  for (long a = 2; a <= 3; ++a) {
    const PencilStarConfig cfg = pencil_star_config_retrying(a, 7 * a);
    CHECK(recognize_pencil_star(cfg.points, a));
    CHECK_FALSE(recognize_pencil_star(cfg.points, a + 1));

    auto broken = cfg.points;
    broken.pop_back();
    CHECK_FALSE(recognize_pencil_star(broken, a));
  }
  Rng rng(2024);
  CHECK_FALSE(recognize_pencil_star(random_scheme(1, 5, rng.next()), 2));
}

TEST_CASE("classifier tags pencil-star schemes") {
  const HirzebruchSurface s(1);
  const PencilStarConfig cfg = pencil_star_config_retrying(2, 13);
  const auto cls = classify_plateau(s, cfg.points);
  CHECK(cls.tag == PlateauTag::F1PencilStar);
  CHECK(cls.plateau_length == 2);
  CHECK(cls.alphas[0] == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fatpoints/classification.hpp"
#include "fatpoints/configs.hpp"
#include "fatpoints/interpolation.hpp"
#include "fatpoints/rng.hpp"

using namespace fatpoints;

namespace {

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("conditions matrix shape") {
  const HirzebruchSurface s(2);
  const SurfacePoint p{Rational(1), Rational(1), Rational(2), Rational(3)};

  FatPointScheme simple(s, {p}, 1);
  auto m1 = conditions_matrix(simple, 2);
  CHECK(m1.rows() == 1);
  CHECK(m1.cols() == static_cast<std::size_t>(h0_value(s, 2)));
  CHECK(kernel_basis(m1).size() == m1.cols() - 1);  // one linear condition

  FatPointScheme dbl(s, {p}, 2);
  CHECK(conditions_matrix(dbl, 2).rows() == 3);

  FatPointScheme triple(s, {p, point_on_negative_curve(2)[0]}, 3);
  CHECK(conditions_matrix(triple, 2).rows() == 2 * 6);
  CHECK(triple.condition_count() == 12);

  CHECK_THROWS_AS(conditions_matrix(simple, 0), InvalidInput);
  CHECK_THROWS_AS(FatPointScheme(s, {p, p}, 1), InvalidInput);
  CHECK_THROWS_AS(FatPointScheme(s, {p}, 0), InvalidInput);
}

TEST_CASE("conditions matrix entries match the hand-checked example") {
  // P = (2, 1, 4, 6) on F_1 normalizes to (u, v) = (2, 3) in the (x1, x2)
  // chart; in degree 1 the localized basis is {1, u, u^2, v, uv}.
  const HirzebruchSurface s(1);
  const SurfacePoint p{Rational(2), Rational(1), Rational(4), Rational(6)};
  const auto m = conditions_matrix(FatPointScheme(s, {p}, 2), 1);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 5);
  const long expected[3][5] = {
      {1, 2, 4, 3, 6},  // values
      {0, 0, 0, 1, 2},  // d/dv
      {0, 1, 4, 0, 3},  // d/du
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(m(i, j) == Rational(expected[i][j]));
  CHECK(rank_exact(m) == 3);
}

TEST_CASE("kernel in degree 1 contains the fiber-plus-negative-curve section") {
  // Single point on E_2, multiplicity 4: x2 x3^3 (the divisor 3F_P + E_2)
  // vanishes to order r+2 = 4 there.
  const HirzebruchSurface s(2);
  FatPointScheme z(s, point_on_negative_curve(2), 4);
  const auto m = conditions_matrix(z, 1);

  const auto basis = section_basis(s, minimal_polarization(s));
  std::size_t idx = basis.size();
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (basis[k] == CoxMonomial{0, 1, 3, 0}) idx = k;
  REQUIRE(idx < basis.size());

  std::vector<Rational> v(m.cols(), Rational(0));
  v[idx] = Rational(1);
  CHECK(all_zero(m.apply(v)));
  CHECK(!kernel_basis(m).empty());
}

TEST_CASE("alpha for a single point on the negative curve") {
  for (int r = 1; r <= 3; ++r) {
    const HirzebruchSurface s(r);
    const auto z = point_on_negative_curve(r);
    for (int m = 1; m <= r + 2; ++m) {
      CHECK(alpha(s, z, m).alpha == 1);
    }
    const auto res = alpha(s, z, r + 3);
    CHECK(res.alpha == 2);
    CHECK(verify_certificate(FatPointScheme(s, z, r + 3), res.certificate));
  }
}

TEST_CASE("alpha for a single general point") {
  Rng rng(5150);
  for (int r = 1; r <= 3; ++r) {
    const HirzebruchSurface s(r);
    const auto z = random_scheme(r, 1, rng.next());
    REQUIRE(!on_negative_curve(z[0]));
    CHECK(alpha(s, z, r + 1).alpha == 1);
    CHECK(alpha(s, z, r + 2).alpha == 2);
  }
}

TEST_CASE("alpha closed form for the negative-curve point") {
  // ceil(m / (r+2)), checked by the rank computation for r = 3 up to m = 12.
  const HirzebruchSurface s(3);
  const auto z = point_on_negative_curve(3);
  long prev = 1;
  for (int m = 1; m <= 12; ++m) {
    const auto res = alpha(s, z, m, {}, prev);
    prev = res.alpha;
    CHECK(res.alpha == (m + 4) / 5);
  }
}

TEST_CASE("initial sequence reports") {
  SUBCASE("single point on E_1") {
    const HirzebruchSurface s(1);
    const auto rep = initial_sequence(s, point_on_negative_curve(1), 4);
    CHECK(rep.alphas == std::vector<long>{1, 1, 1, 2});
    CHECK(rep.plateau_length == 3);
    CHECK(rep.chudnovsky == Rational(1, 3));
    CHECK(!rep.refined.has_value());
    CHECK(rep.waldschmidt_upper == Rational(1, 3));
    CHECK(rep.lower_bound() == rep.waldschmidt_upper);  // bound attained
    for (std::size_t m = 1; m <= rep.certificates.size(); ++m) {
      CHECK(verify_certificate(
          FatPointScheme(s, point_on_negative_curve(1), static_cast<int>(m)),
          rep.certificates[m - 1]));
    }
  }
  SUBCASE("three points in one fiber of F_2") {
    const HirzebruchSurface s(2);
    const auto rep = initial_sequence(s, fiber_points(2, 3), 4);
    CHECK(rep.alphas == std::vector<long>{1, 1, 1, 2});
    CHECK(rep.plateau_length == 3);  // exactly r+1
  }
  SUBCASE("monotonicity and the Chudnovsky inequality on random schemes") {
    Rng rng(8080);
    for (int iter = 0; iter < 6; ++iter) {
      const int r = 1 + iter % 3;
      const HirzebruchSurface s(r);
      SchemeConstraints c;
      c.curve = iter % 2 ? SchemeConstraints::Curve::Any : SchemeConstraints::Curve::Off;
      const auto z = random_scheme(r, 1 + static_cast<int>(rng.next() % 4), rng.next(), c);
      const auto rep = initial_sequence(s, z, 4);
      for (std::size_t m = 1; m < rep.alphas.size(); ++m)
        CHECK(rep.alphas[m] >= rep.alphas[m - 1]);
      for (std::size_t m = 1; m <= rep.alphas.size(); ++m) {
        CHECK(rep.alphas[m - 1] * (r + 2) >= static_cast<long>(m) * rep.alphas[0]);
        if (rep.alphas[0] >= 2)
          CHECK(rep.alphas[m - 1] * (r + 2) > static_cast<long>(m) * rep.alphas[0]);
      }
    }
  }
}

TEST_CASE("lower bound formulas") {
  CHECK(chudnovsky_lower(1, 2) == Rational(2, 3));
  CHECK(chudnovsky_lower(2, 1) == Rational(1, 4));
  CHECK_THROWS_AS(chudnovsky_lower(1, 0), InvalidInput);

  CHECK(refined_lower(1, 2) == Rational(5, 6));
  CHECK(refined_lower(2, 2) == Rational(3, 4));
  CHECK_THROWS_AS(refined_lower(3, 1), InvalidInput);

  // The refined bound strictly improves on the basic one for alpha >= 2.
  for (int r = 1; r <= 5; ++r)
    for (long a = 2; a <= 9; ++a) CHECK(refined_lower(r, a) > chudnovsky_lower(r, a));
}

TEST_CASE("waldschmidt bounds") {
  for (int r = 1; r <= 3; ++r) {
    const auto [lower, upper] =
        waldschmidt_bounds(HirzebruchSurface(r), point_on_negative_curve(r), r + 2);
    CHECK(lower == Rational(1, r + 2));
    CHECK(upper == Rational(1, r + 2));
  }
  Rng rng(64);
  const auto z = random_scheme(1, 1, rng.next());
  const auto [lower, upper] = waldschmidt_bounds(HirzebruchSurface(1), z, 4);
  CHECK(upper <= Rational(1, 2));  // alpha(2Z) = 1 for a single general point
  CHECK(lower <= upper);
}

TEST_CASE("rank is chart independent") {
  Rng rng(2718);
  for (int iter = 0; iter < 8; ++iter) {
    const int r = 1 + iter % 3;
    const HirzebruchSurface s(r);
    SchemeConstraints c;
    c.curve = SchemeConstraints::Curve::Any;
    const auto pts = random_scheme(r, 1 + static_cast<int>(rng.next() % 2), rng.next(), c);
    FatPointScheme z(s, pts, 1 + static_cast<int>(rng.next() % 2));
    const long d = 1 + static_cast<long>(rng.next() % 2);

    const std::size_t base_rank = rank_exact(conditions_matrix(z, d));
    std::vector<Chart> charts;
    for (const auto& p : pts) charts.push_back(preferred_chart(p));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (const Chart& alt : valid_charts(pts[i])) {
        auto mixed = charts;
        mixed[i] = alt;
        CHECK(rank_exact(conditions_matrix(z, d, mixed)) == base_rank);
      }
    }
  }
}

TEST_CASE("certificates verify in every chart") {
  const HirzebruchSurface s(2);
  const auto pts = fiber_points(2, 2);
  const auto res = alpha(s, pts, 3);
  FatPointScheme z(s, pts, 3);
  CHECK(verify_certificate(z, res.certificate));
  std::vector<Chart> charts;
  for (const auto& p : pts) charts.push_back(valid_charts(p).back());
  CHECK(verify_certificate(z, res.certificate, charts));

  Certificate corrupt = res.certificate;
  corrupt.coefficients[0] += Rational(1);
  CHECK_FALSE(verify_certificate(z, corrupt));
  Certificate zero = res.certificate;
  for (auto& c : zero.coefficients) c = Rational(0);
  CHECK_FALSE(verify_certificate(z, zero));
}

TEST_CASE("subscheme monotonicity") {
  Rng rng(1234);
  const HirzebruchSurface s(2);
  const auto z = random_scheme(2, 3, rng.next());
  const std::vector<SurfacePoint> sub(z.begin(), z.begin() + 2);
  long prev_full = 1, prev_sub = 1;
  for (int m = 1; m <= 3; ++m) {
    const long full = alpha(s, z, m, {}, prev_full).alpha;
    const long part = alpha(s, sub, m, {}, prev_sub).alpha;
    prev_full = full;
    prev_sub = part;
    CHECK(part <= full);
  }
}

TEST_CASE("mixed multiplicities in the data model") {
  // Experimental: per-point multiplicities drive the matrix layer only.
  const HirzebruchSurface s(2);
  const SurfacePoint p{Rational(1), Rational(1), Rational(2), Rational(3)};
  const SurfacePoint q{Rational(1), Rational(1), Rational(0), Rational(1)};
  FatPointScheme z(s, {p, q}, std::vector<int>{2, 1});
  CHECK(z.condition_count() == 3 + 1);
  const auto m = conditions_matrix(z, 2);
  CHECK(m.rows() == 4);
  const auto kernel = kernel_basis(m);
  CHECK(kernel.size() == m.cols() - rank_exact(m));
  for (const auto& v : kernel) {
    bool zero = true;
    for (const auto& entry : m.apply(v))
      if (!entry.is_zero()) zero = false;
    CHECK(zero);
  }
  CHECK_THROWS_AS(FatPointScheme(s, {p, q}, std::vector<int>{1}), InvalidInput);
  CHECK_THROWS_AS(FatPointScheme(s, {p, q}, std::vector<int>{1, 0}), InvalidInput);
  // A uniform vector collapses to the uniform notion.
  CHECK(FatPointScheme(s, {p, q}, std::vector<int>{3, 3}).multiplicity == 3);
}

TEST_CASE("degree ceiling") {
  SearchOptions opts;
  opts.d_ceiling = 1;
  const HirzebruchSurface s(1);
  CHECK_THROWS_AS(alpha(s, point_on_negative_curve(1), 4, opts), Error);
  CHECK_THROWS_AS(alpha(s, {}, 1), InvalidInput);
}

TEST_CASE("plateau classification of basic schemes") {
  for (int r = 1; r <= 3; ++r) {
    const HirzebruchSurface s(r);
    const auto neg = classify_plateau(s, point_on_negative_curve(r));
    CHECK(neg.tag == PlateauTag::NegativeCurvePoint);
    CHECK(neg.plateau_length == r + 2);
    CHECK(neg.alphas[0] == 1);
  }
  {
    const HirzebruchSurface s(2);
    const auto fib = classify_plateau(s, fiber_points(2, 3));
    CHECK(fib.tag == PlateauTag::SingleFiber);
    CHECK(fib.plateau_length == 3);
  }
  {
    Rng rng(31415);
    const HirzebruchSurface s(2);
    const auto cls = classify_plateau(s, random_scheme(2, 5, rng.next()));
    CHECK(cls.tag == PlateauTag::NoPlateauStructure);
    CHECK(cls.plateau_length <= 2);
  }
  {
    // A single point off the negative curve sits in one fiber: plateau r+1.
    Rng rng(9);
    const HirzebruchSurface s(3);
    const auto cls = classify_plateau(s, random_scheme(3, 1, rng.next()));
    CHECK(cls.tag == PlateauTag::SingleFiber);
    CHECK(cls.plateau_length == 4);
  }
}

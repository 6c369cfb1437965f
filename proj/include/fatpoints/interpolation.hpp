#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/matrix.hpp"
#include "fatpoints/prime_field.hpp"
#include "fatpoints/rational.hpp"
#include "fatpoints/rng.hpp"
#include "fatpoints/toric.hpp"

namespace fatpoints {

/**
 * A finite set of pairwise distinct points of F_r with multiplicities. The
 * associated interpolation question: which sections of d L_r vanish to
 * order >= m_i at the i-th point?
 *
 * The uniform case (one m for all points) is the primary notion here and
 * the only one the degree-search operations consume. Mixed multiplicities
 * are carried by the data model for experimentation with the matrix/kernel
 * layer but have no classification theory attached.
 */
struct FatPointScheme {
  HirzebruchSurface surface;
  std::vector<SurfacePoint> points;
  int multiplicity;                    // uniform multiplicity; 0 when mixed
  std::vector<int> multiplicities;    // per point, always populated

  FatPointScheme(HirzebruchSurface s, std::vector<SurfacePoint> pts, int m)
      : FatPointScheme(std::move(s), std::move(pts),
                       std::vector<int>(), m) {}

  /// Experimental mixed-multiplicity constructor.
  FatPointScheme(HirzebruchSurface s, std::vector<SurfacePoint> pts, std::vector<int> ms)
      : FatPointScheme(std::move(s), std::move(pts), std::move(ms), 0) {}

  std::size_t condition_count() const {
    std::size_t total = 0;
    for (const int m : multiplicities)
      total += static_cast<std::size_t>(m) * (static_cast<std::size_t>(m) + 1) / 2;
    return total;
  }

 private:
  FatPointScheme(HirzebruchSurface s, std::vector<SurfacePoint> pts, std::vector<int> ms,
                 int uniform)
      : surface(s), points(std::move(pts)), multiplicity(uniform), multiplicities(std::move(ms)) {
    if (multiplicities.empty()) {
      if (uniform < 1) throw InvalidInput("FatPointScheme: multiplicity < 1");
      multiplicities.assign(points.size(), uniform);
    } else {
      if (multiplicities.size() != points.size())
        throw InvalidInput("FatPointScheme: one multiplicity per point required");
      bool all_equal = true;
      for (const int m : multiplicities) {
        if (m < 1) throw InvalidInput("FatPointScheme: multiplicity < 1");
        all_equal = all_equal && m == multiplicities.front();
      }
      if (all_equal && !multiplicities.empty()) multiplicity = multiplicities.front();
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (torus_equal(points[i], points[j], surface.r))
          throw InvalidInput("FatPointScheme: points " + std::to_string(i) + " and " +
                             std::to_string(j) + " coincide");
  }
};

namespace detail {

/// Falling factorial e (e-1) ... (e-k+1) as an exact rational.
inline Rational falling(long e, long k) {
  Rational acc(1);
  for (long i = 0; i < k; ++i) acc *= Rational(e - i);
  return acc;
}

inline std::uint64_t falling_mod(long e, long k, std::uint64_t p) {
  std::uint64_t acc = 1;
  for (long i = 0; i < k; ++i)
    acc = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(acc) * static_cast<std::uint64_t>((e - i) % static_cast<long>(p)) % p);
  return acc;
}

inline std::vector<Chart> resolve_charts(const FatPointScheme& z,
                                         const std::vector<Chart>& override_charts) {
  if (!override_charts.empty()) {
    if (override_charts.size() != z.points.size())
      throw InvalidInput("chart override size mismatch");
    for (std::size_t i = 0; i < z.points.size(); ++i)
      if (!chart_valid(z.points[i], override_charts[i]))
        throw ChartInvalid("chart override invalid at point " + std::to_string(i));
    return override_charts;
  }
  std::vector<Chart> charts;
  charts.reserve(z.points.size());
  for (const auto& p : z.points) charts.push_back(preferred_chart(p));
  return charts;
}

}  // namespace detail

/**
 * The vanishing-condition matrix of the scheme in degree d: one row per
 * point and per mixed partial d^{i+j}/du^i dv^j with i+j <= m-1, one column
 * per basis monomial of d L_r. Rows localize each monomial in the point's
 * chart and evaluate the honest mixed partial at the chart coordinates of
 * the point. Sections of d L_r vanishing on the fat scheme correspond
 * exactly to the right kernel.
 *
 * Row order: points in order; per point, derivative order t = i+j ascending,
 * then i ascending. Column order: the (e4, e3)-lexicographic basis order.
 */
inline DenseMatrix<Rational> conditions_matrix(const FatPointScheme& z, long d,
                                               const std::vector<Chart>& override_charts = {}) {
  if (d < 1) throw InvalidInput("conditions_matrix: degree must be >= 1");
  const HirzebruchSurface& s = z.surface;
  const auto basis = section_basis(s, minimal_polarization(s).scaled(d));
  const std::vector<Chart> charts = detail::resolve_charts(z, override_charts);

  DenseMatrix<Rational> out(z.condition_count(), basis.size());
  std::size_t row = 0;
  for (std::size_t pi = 0; pi < z.points.size(); ++pi) {
    const long m = z.multiplicities[pi];
    const Chart chart = charts[pi];
    const auto [u0, v0] = normalize_to_chart(z.points[pi], chart, s.r);

    std::vector<std::pair<long, long>> exps(basis.size());
    long max_u = 0, max_v = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      exps[k] = localize(basis[k], chart);
      max_u = std::max(max_u, exps[k].first);
      max_v = std::max(max_v, exps[k].second);
    }
    std::vector<Rational> upow(max_u + 1), vpow(max_v + 1);
    upow[0] = Rational(1);
    for (long t = 1; t <= max_u; ++t) upow[t] = upow[t - 1] * u0;
    vpow[0] = Rational(1);
    for (long t = 1; t <= max_v; ++t) vpow[t] = vpow[t - 1] * v0;

    for (long t = 0; t < m; ++t) {
      for (long i = 0; i <= t; ++i, ++row) {
        const long j = t - i;
        for (std::size_t k = 0; k < basis.size(); ++k) {
          const auto [a, b] = exps[k];
          if (a < i || b < j) continue;
          out(row, k) = detail::falling(a, i) * detail::falling(b, j) *
                        upow[a - i] * vpow[b - j];
        }
      }
    }
  }
  return out;
}

/// Same matrix built directly over Z/p; used as the fast rank filter.
inline DenseMatrix<Fp> conditions_matrix_mod(const FatPointScheme& z, long d,
                                             std::uint64_t p,
                                             const std::vector<Chart>& override_charts = {}) {
  if (d < 1) throw InvalidInput("conditions_matrix_mod: degree must be >= 1");
  const HirzebruchSurface& s = z.surface;
  const auto basis = section_basis(s, minimal_polarization(s).scaled(d));
  const std::vector<Chart> charts = detail::resolve_charts(z, override_charts);

  DenseMatrix<Fp> out(z.condition_count(), basis.size(), Fp::zero(p));
  std::size_t row = 0;
  for (std::size_t pi = 0; pi < z.points.size(); ++pi) {
    const long m = z.multiplicities[pi];
    const Chart chart = charts[pi];
    const auto [u0q, v0q] = normalize_to_chart(z.points[pi], chart, s.r);
    const Fp u0 = Fp::from_rational(u0q, p);
    const Fp v0 = Fp::from_rational(v0q, p);

    std::vector<std::pair<long, long>> exps(basis.size());
    long max_u = 0, max_v = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      exps[k] = localize(basis[k], chart);
      max_u = std::max(max_u, exps[k].first);
      max_v = std::max(max_v, exps[k].second);
    }
    std::vector<Fp> upow(max_u + 1, Fp::one(p)), vpow(max_v + 1, Fp::one(p));
    for (long t = 1; t <= max_u; ++t) upow[t] = upow[t - 1] * u0;
    for (long t = 1; t <= max_v; ++t) vpow[t] = vpow[t - 1] * v0;

    for (long t = 0; t < m; ++t) {
      for (long i = 0; i <= t; ++i, ++row) {
        const long j = t - i;
        for (std::size_t k = 0; k < basis.size(); ++k) {
          const auto [a, b] = exps[k];
          if (a < i || b < j) continue;
          out(row, k) = Fp(detail::falling_mod(a, i, p), p) *
                        Fp(detail::falling_mod(b, j, p), p) * upow[a - i] * vpow[b - j];
        }
      }
    }
  }
  return out;
}

/// Knobs for the degree search. The ceiling is a hard stop; the search is
/// already capped by the first degree whose section count exceeds the
/// number of conditions, which forces a kernel.
struct SearchOptions {
  int d_ceiling = 64;
  int prime_count = 1;
  std::uint64_t prime_seed = 0x5eedf00dULL;
};

/// A section certifying alpha(mZ) <= degree: the coefficient vector of a
/// kernel element of the conditions matrix, over reduced rationals.
struct Certificate {
  long degree = 0;
  int multiplicity = 1;
  std::vector<Rational> coefficients;
};

/// Rebuilds the conditions matrix from scratch and checks exactly that the
/// certificate is a nonzero kernel vector, i.e. all partial-derivative
/// conditions vanish. Chart overrides allow re-verifying in other charts.
inline bool verify_certificate(const FatPointScheme& z, const Certificate& cert,
                               const std::vector<Chart>& override_charts = {}) {
  const auto m = conditions_matrix(z, cert.degree, override_charts);
  if (cert.coefficients.size() != m.cols()) return false;
  bool nonzero = false;
  for (const auto& c : cert.coefficients)
    if (!c.is_zero()) nonzero = true;
  if (!nonzero) return false;
  for (const auto& entry : m.apply(cert.coefficients))
    if (!entry.is_zero()) return false;
  return true;
}

struct AlphaResult {
  long alpha = 0;
  Certificate certificate;
};

/**
 * The initial degree alpha(mZ): the least d >= 1 such that some section of
 * d L_r vanishes to order >= m at every point of z_red.
 *
 * Degrees are scanned linearly from start_degree (callers pass the previous
 * alpha; the sequence is non-decreasing). A degree is ruled out by full
 * column rank mod a random prime — exact, since the modular rank is a lower
 * bound for the rational rank. Only candidate degrees are confirmed over
 * the rationals, and the returned certificate always re-verifies exactly,
 * so no probabilistic step can affect the answer.
 */
inline AlphaResult alpha(const HirzebruchSurface& s, const std::vector<SurfacePoint>& z_red,
                         int m, const SearchOptions& opts = {}, long start_degree = 1) {
  if (z_red.empty()) throw InvalidInput("alpha: empty point set");
  if (m < 1) throw InvalidInput("alpha: multiplicity < 1");
  FatPointScheme z(s, z_red, m);

  const long conditions = static_cast<long>(z.condition_count());
  long forced = 1;
  while (h0_value(s, forced) <= conditions) ++forced;

  Rng prime_rng(opts.prime_seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(m)));
  const long d_max = std::min<long>(forced, opts.d_ceiling);

  for (long d = std::max<long>(1, start_degree); d <= d_max; ++d) {
    const std::size_t cols = static_cast<std::size_t>(h0_value(s, d));
    FpElimination elim;
    bool ruled_out = false;
    for (int t = 0; t < std::max(1, opts.prime_count); ++t) {
      for (int attempt = 0;; ++attempt) {
        const std::uint64_t p = random_prime(prime_rng);
        try {
          elim = fp_eliminate(conditions_matrix_mod(z, d, p));
          break;
        } catch (const BadPrime&) {
          if (attempt > 16) {
            elim = FpElimination{};  // give up on filtering; confirm exactly
            break;
          }
        }
      }
      if (elim.rank == cols) {
        ruled_out = true;  // kernel provably trivial in this degree
        break;
      }
    }
    if (ruled_out) continue;

    const auto exact = conditions_matrix(z, d);
    const auto kernel = kernel_via_modular_rows(exact, elim.pivot_rows);
    if (!kernel.empty()) {
      Certificate cert{d, m, kernel.front()};
      return {d, std::move(cert)};
    }
    // The prime undercounted the rank; the kernel is exactly trivial here.
  }
  if (d_max < forced)
    throw Error("alpha: degree ceiling " + std::to_string(opts.d_ceiling) +
                " exceeded before a section was found (raise --dceil or FATPOINTS_DCEIL)");
  throw Error("alpha: internal search failure");  // unreachable: the forced degree has a kernel
}

/// Chudnovsky-type lower bound alpha(Z)/(r+2) for alpha(mZ)/m, valid for
/// all m >= 1.
inline Rational chudnovsky_lower(int r, long alpha1) {
  if (alpha1 < 1) throw InvalidInput("chudnovsky_lower: alpha(Z) must be >= 1");
  return Rational(alpha1, r + 2);
}

/// Sharper lower bound ((r/2)(a-1) + a)/(r+2), valid when a = alpha(Z) >= 2.
inline Rational refined_lower(int r, long a) {
  if (a < 2) throw InvalidInput("refined_lower requires alpha(Z) >= 2");
  return Rational(static_cast<long>(r) * (a - 1) + 2 * a, 2 * (r + 2));
}

/**
 * The initial sequence alpha(Z), alpha(2Z), ..., alpha(m_max Z) together
 * with its plateau length (number of leading equal terms), the Chudnovsky
 * and refined lower bounds, and the best finite upper bound for the
 * Waldschmidt constant.
 */
struct SequenceReport {
  int r = 1;
  std::vector<long> alphas;
  std::vector<Certificate> certificates;
  int plateau_length = 0;
  Rational chudnovsky;
  std::optional<Rational> refined;
  Rational waldschmidt_upper;

  /// min over computed m of alpha(mZ)/m; the infimum over all m is the
  /// Waldschmidt constant itself.
  Rational lower_bound() const { return refined ? *refined : chudnovsky; }
};

namespace detail {

inline int leading_run(const std::vector<long>& alphas) {
  int run = 0;
  while (run < static_cast<int>(alphas.size()) && alphas[run] == alphas[0]) ++run;
  return run;
}

inline SequenceReport finish_report(int r, std::vector<long> alphas,
                                    std::vector<Certificate> certs) {
  SequenceReport rep;
  rep.r = r;
  rep.alphas = std::move(alphas);
  rep.certificates = std::move(certs);
  rep.plateau_length = leading_run(rep.alphas);
  rep.chudnovsky = chudnovsky_lower(r, rep.alphas[0]);
  if (rep.alphas[0] >= 2) rep.refined = refined_lower(r, rep.alphas[0]);
  rep.waldschmidt_upper = Rational(rep.alphas[0], 1);
  for (std::size_t m = 1; m <= rep.alphas.size(); ++m) {
    const Rational ratio(rep.alphas[m - 1], static_cast<long>(m));
    if (ratio < rep.waldschmidt_upper) rep.waldschmidt_upper = ratio;
  }
  if (rep.waldschmidt_upper < rep.lower_bound())
    throw Error("initial_sequence: computed upper bound fell below the lower bound");
  for (std::size_t m = 1; m < rep.alphas.size(); ++m)
    if (rep.alphas[m] < rep.alphas[m - 1])
      throw Error("initial_sequence: sequence not monotone");
  return rep;
}

}  // namespace detail

inline SequenceReport initial_sequence(const HirzebruchSurface& s,
                                       const std::vector<SurfacePoint>& z_red, int m_max,
                                       const SearchOptions& opts = {}) {
  if (m_max < 1) throw InvalidInput("initial_sequence: m_max < 1");
  std::vector<long> alphas;
  std::vector<Certificate> certs;
  long prev = 1;
  for (int m = 1; m <= m_max; ++m) {
    AlphaResult res = alpha(s, z_red, m, opts, prev);
    prev = res.alpha;
    alphas.push_back(res.alpha);
    certs.push_back(std::move(res.certificate));
  }
  return detail::finish_report(s.r, std::move(alphas), std::move(certs));
}

/// Initial sequence computed only far enough to see the plateau end:
/// stops after the first strict increase or after max_terms terms.
inline SequenceReport plateau_sequence(const HirzebruchSurface& s,
                                       const std::vector<SurfacePoint>& z_red, int max_terms,
                                       const SearchOptions& opts = {}) {
  if (max_terms < 1) throw InvalidInput("plateau_sequence: max_terms < 1");
  std::vector<long> alphas;
  std::vector<Certificate> certs;
  long prev = 1;
  for (int m = 1; m <= max_terms; ++m) {
    AlphaResult res = alpha(s, z_red, m, opts, prev);
    prev = res.alpha;
    alphas.push_back(res.alpha);
    certs.push_back(std::move(res.certificate));
    if (res.alpha != alphas[0]) break;
  }
  return detail::finish_report(s.r, std::move(alphas), std::move(certs));
}

/// (lower, upper) bounds for the Waldschmidt constant from the first m_max
/// sequence terms. lower <= upper always.
inline std::pair<Rational, Rational> waldschmidt_bounds(const HirzebruchSurface& s,
                                                        const std::vector<SurfacePoint>& z_red,
                                                        int m_max,
                                                        const SearchOptions& opts = {}) {
  const SequenceReport rep = initial_sequence(s, z_red, m_max, opts);
  return {rep.lower_bound(), rep.waldschmidt_upper};
}

}  // namespace fatpoints

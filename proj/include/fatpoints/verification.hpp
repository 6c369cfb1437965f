#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/arrangements.hpp"
#include "fatpoints/classification.hpp"
#include "fatpoints/configs.hpp"
#include "fatpoints/interpolation.hpp"
#include "fatpoints/parallel.hpp"
#include "fatpoints/rng.hpp"
#include "fatpoints/toric.hpp"

namespace fatpoints {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;  // wall time; reporting only, never part of results
};

struct VerifyOptions {
  int r_min = 1;
  int r_max = 3;
  int seeds = 100;  // randomized-search configurations per surface
  std::uint64_t base_seed = 20240901ULL;
  int jobs = 1;
  SearchOptions search;
};

/// A computed initial sequence together with the scheme it belongs to;
/// the raw material for the cross-cutting inequality and certificate checks.
struct SequenceEvidence {
  int r;
  std::vector<SurfacePoint> points;
  SequenceReport report;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  Rng rng(base ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
  return rng.next();
}

inline SchemeConstraints search_constraints(int combo) {
  SchemeConstraints c;
  switch (combo % 4) {
    case 0: c.curve = SchemeConstraints::Curve::Off; break;
    case 1: c.curve = SchemeConstraints::Curve::Any; break;
    case 2:
      c.curve = SchemeConstraints::Curve::Off;
      c.single_fiber = true;
      break;
    case 3: c.curve = SchemeConstraints::Curve::On; break;
  }
  return c;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Criterion 1: the closed dimension formula equals basis enumeration for
/// r = 1..5, d = 0..6.
inline CheckResult check_dimension_formula() {
  detail::Stopwatch sw;
  CheckResult out{"dimension-formula", true, "", 0};
  long cases = 0;
  for (int r = 1; r <= 5 && out.pass; ++r) {
    const HirzebruchSurface s(r);
    for (long d = 0; d <= 6; ++d, ++cases) {
      const auto basis = section_basis(s, minimal_polarization(s).scaled(d));
      if (static_cast<long>(basis.size()) != h0_value(s, d)) {
        out.pass = false;
        out.details = "mismatch at r=" + std::to_string(r) + " d=" + std::to_string(d);
        break;
      }
    }
  }
  if (out.pass) out.details = std::to_string(cases) + " (r,d) pairs, enumeration == formula";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 2: the single negative-curve point has initial sequence
/// 1, ..., 1 (r+2 ones) followed by a strictly larger term, for r = 1..4.
inline CheckResult check_negative_curve_sequences(std::vector<SequenceEvidence>& evidence,
                                                  const SearchOptions& opts) {
  detail::Stopwatch sw;
  CheckResult out{"negative-curve-point-sequence", true, "", 0};
  for (int r = 1; r <= 4 && out.pass; ++r) {
    const HirzebruchSurface s(r);
    const auto pts = point_on_negative_curve(r);
    const SequenceReport rep = initial_sequence(s, pts, r + 3, opts);
    for (int m = 1; m <= r + 2; ++m)
      if (rep.alphas[m - 1] != 1) out.pass = false;
    if (rep.alphas[r + 2] <= 1) out.pass = false;
    if (!out.pass) out.details = "failed at r=" + std::to_string(r);
    evidence.push_back({r, pts, rep});
  }
  if (out.pass) out.details = "r=1..4: r+2 leading ones, then a strict increase";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 3: randomized search for a plateau of length r+3 (must find
/// none). Sizes 1-6 cycle with placement constraints; every computed
/// sequence is kept as evidence for the later cross-checks.
inline CheckResult check_plateau_length_bound(const VerifyOptions& opts,
                                              std::vector<SequenceEvidence>& evidence) {
  detail::Stopwatch sw;
  CheckResult out{"plateau-length-bound", true, "", 0};
  long witnesses = 0;
  long total = 0;
  for (int r = opts.r_min; r <= opts.r_max; ++r) {
    const HirzebruchSurface s(r);
    std::vector<SequenceEvidence> slot(opts.seeds, SequenceEvidence{r, {}, {}});
    parallel_for(static_cast<std::size_t>(opts.seeds), opts.jobs, [&](std::size_t k) {
      const int n = 1 + static_cast<int>(k % 6);
      const SchemeConstraints c = detail::search_constraints(static_cast<int>(k % 4));
      const auto pts = random_scheme(
          r, n, detail::mix_seed(opts.base_seed, static_cast<std::uint64_t>(r), k), c);
      slot[k] = {r, pts, plateau_sequence(s, pts, r + 3, opts.search)};
    });
    for (auto& e : slot) {
      total += 1;
      if (e.report.plateau_length >= r + 3) ++witnesses;
      evidence.push_back(std::move(e));
    }
  }
  out.pass = witnesses == 0;
  out.details = std::to_string(total) + " configurations, " + std::to_string(witnesses) +
                " plateaus of length r+3";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 4: plateau length r+2 always classifies as a single
/// negative-curve point with alpha = 1; single points off the curve never
/// reach past plateau r+1.
inline CheckResult check_long_plateau_classification(const VerifyOptions& opts,
                                                     const std::vector<SequenceEvidence>& evidence) {
  detail::Stopwatch sw;
  CheckResult out{"long-plateau-classification", true, "", 0};
  long classified = 0;
  for (const auto& e : evidence) {
    if (e.report.plateau_length != e.r + 2) continue;
    ++classified;
    const Classification cls =
        classify_plateau(HirzebruchSurface(e.r), e.points, opts.search);
    if (cls.tag != PlateauTag::NegativeCurvePoint || cls.alphas[0] != 1) {
      out.pass = false;
      out.details = "a plateau-(r+2) scheme failed classification at r=" + std::to_string(e.r);
    }
  }
  long singles = 0;
  for (int r = opts.r_min; r <= opts.r_max && out.pass; ++r) {
    const HirzebruchSurface s(r);
    for (int k = 0; k < 5; ++k, ++singles) {
      const auto pts = random_scheme(
          r, 1, detail::mix_seed(opts.base_seed * 3, static_cast<std::uint64_t>(r), k));
      const SequenceReport rep = plateau_sequence(s, pts, r + 2, opts.search);
      if (rep.plateau_length > r + 1) {
        out.pass = false;
        out.details = "single point off the curve exceeded plateau r+1 at r=" + std::to_string(r);
      }
    }
  }
  if (out.pass)
    out.details = std::to_string(classified) + " plateau-(r+2) schemes classified, " +
                  std::to_string(singles) + " off-curve single points bounded";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 5: k points in one fiber have plateau exactly r+1 with
/// alpha = 1 (r = 2, 3; k = 2, 3, 4), and moving one point off the fiber
/// strictly shortens the plateau.
inline CheckResult check_fiber_plateau(std::vector<SequenceEvidence>& evidence,
                                       const SearchOptions& opts) {
  detail::Stopwatch sw;
  CheckResult out{"fiber-plateau", true, "", 0};
  for (int r = 2; r <= 3 && out.pass; ++r) {
    const HirzebruchSurface s(r);
    for (int k = 2; k <= 4 && out.pass; ++k) {
      const auto pts = fiber_points(r, k);
      const SequenceReport rep = initial_sequence(s, pts, r + 2, opts);
      evidence.push_back({r, pts, rep});
      if (rep.plateau_length != r + 1 || rep.alphas[0] != 1) {
        out.pass = false;
        out.details = "fiber scheme r=" + std::to_string(r) + " k=" + std::to_string(k) +
                      " has plateau " + std::to_string(rep.plateau_length);
        break;
      }
      auto moved = pts;
      moved.back() = SurfacePoint{Rational(1), Rational(1), Rational(1), Rational(k)};
      const SequenceReport moved_rep = plateau_sequence(s, moved, r + 1, opts);
      evidence.push_back({r, moved, moved_rep});
      if (moved_rep.plateau_length >= r + 1) {
        out.pass = false;
        out.details = "perturbation failed to shorten the plateau at r=" + std::to_string(r) +
                      " k=" + std::to_string(k);
      }
    }
  }
  if (out.pass) out.details = "r=2,3 x k=2,3,4: plateau r+1 exact; perturbations shorten";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 6: the pencil-plus-star scheme on F_1 has
/// alpha(Z) = alpha(2Z) = a for a = 2, 3.
inline CheckResult check_pencil_star_plateau(const VerifyOptions& opts,
                                             std::vector<SequenceEvidence>& evidence) {
  detail::Stopwatch sw;
  CheckResult out{"pencil-star-plateau", true, "", 0};
  const HirzebruchSurface s(1);
  for (long a = 2; a <= 3 && out.pass; ++a) {
    const PencilStarConfig cfg = pencil_star_config_retrying(a, opts.base_seed + a);
    const SequenceReport rep = initial_sequence(s, cfg.points, 2, opts.search);
    evidence.push_back({1, cfg.points, rep});
    if (rep.alphas != std::vector<long>{a, a}) {
      out.pass = false;
      out.details = "a=" + std::to_string(a) + " produced alphas (" +
                    std::to_string(rep.alphas[0]) + ", " + std::to_string(rep.alphas[1]) + ")";
    }
    const Classification cls = classify_plateau(s, cfg.points, opts.search);
    if (cls.tag != PlateauTag::F1PencilStar) {
      out.pass = false;
      out.details = "a=" + std::to_string(a) + " not recognized as a pencil-star scheme";
    }
  }
  if (out.pass) out.details = "a=2,3: alpha(Z) = alpha(2Z) = a and recognized";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 7: across every sequence computed anywhere in the suite,
/// alpha(mZ) (r+2) >= m alpha(Z), strictly when alpha(Z) >= 2.
inline CheckResult check_chudnovsky(const std::vector<SequenceEvidence>& evidence) {
  detail::Stopwatch sw;
  CheckResult out{"chudnovsky-inequality", true, "", 0};
  long pairs = 0;
  for (const auto& e : evidence) {
    const long a1 = e.report.alphas[0];
    for (std::size_t m = 1; m <= e.report.alphas.size(); ++m, ++pairs) {
      const long lhs = e.report.alphas[m - 1] * (e.r + 2);
      const long rhs = static_cast<long>(m) * a1;
      const bool ok = a1 >= 2 ? lhs > rhs : lhs >= rhs;
      if (!ok) {
        out.pass = false;
        out.details = "violated at r=" + std::to_string(e.r) + " m=" + std::to_string(m);
      }
    }
  }
  if (out.pass)
    out.details = std::to_string(pairs) + " (m, alpha) pairs satisfy the inequality";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 8: for the negative-curve point the finite upper bound reaches
/// the Chudnovsky lower bound 1/(r+2) by m = r+3 (r = 1..3).
inline CheckResult check_waldschmidt_attainment(std::vector<SequenceEvidence>& evidence,
                                                const SearchOptions& opts) {
  detail::Stopwatch sw;
  CheckResult out{"waldschmidt-attainment", true, "", 0};
  for (int r = 1; r <= 3 && out.pass; ++r) {
    const HirzebruchSurface s(r);
    const auto pts = point_on_negative_curve(r);
    const SequenceReport rep = initial_sequence(s, pts, r + 3, opts);
    evidence.push_back({r, pts, rep});
    const Rational expected(1, r + 2);
    if (rep.lower_bound() != expected || rep.waldschmidt_upper != expected) {
      out.pass = false;
      out.details = "bounds disagree at r=" + std::to_string(r) + ": lower " +
                    rep.lower_bound().str() + ", upper " + rep.waldschmidt_upper.str();
    }
  }
  if (out.pass) out.details = "r=1..3: upper bound equals 1/(r+2) exactly";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 9: arrangement checks — the pair-count identity on random
/// arrangements, the singular-point bound, extremal pencil-star draws, and
/// a concurrency degeneration strictly below the bound.
inline CheckResult check_arrangements(const VerifyOptions& opts) {
  detail::Stopwatch sw;
  CheckResult out{"line-arrangement-bound", true, "", 0};
  long identity_cases = 0, bound_cases = 0;

  for (int k = 0; k < 200 && out.pass; ++k) {
    const std::uint64_t seed = detail::mix_seed(opts.base_seed * 5, 9, k);
    Rng rng(seed);
    const long d = 2 + static_cast<long>(rng.next() % 7);
    const long through_q = 2 + static_cast<long>(rng.next() % (d - 1));
    const Arrangement arr = random_arrangement(d, through_q, rng.next());

    long pair_total = 0;
    for (const auto& s : singular_points(arr.lines)) pair_total += choose2(s.multiplicity);
    if (pair_total != choose2(d)) {
      out.pass = false;
      out.details = "pair-count identity failed for seed " + std::to_string(k);
      break;
    }
    ++identity_cases;

    if (arr.multiplicity_at_q() >= 2) {
      if (!check_singular_bound(arr).within_bound) {
        out.pass = false;
        out.details = "bound exceeded for seed " + std::to_string(k);
        break;
      }
      ++bound_cases;
    }
  }

  for (const auto& [d, m] : {std::pair<long, long>{4, 2}, {6, 3}, {8, 4}}) {
    if (!out.pass) break;
    const Arrangement arr = make_pencil_star_retrying(d, m, opts.base_seed + d * 10 + m);
    const ArrangementReport rep = check_singular_bound(arr);
    if (!rep.attains_bound || !rep.extremal) {
      out.pass = false;
      out.details = "pencil-star (" + std::to_string(d) + "," + std::to_string(m) +
                    ") did not attain the bound extremally";
    }
  }

  if (out.pass) {
    // Degeneration: three star lines through one common point collapse
    // their pairwise intersections, so the count drops strictly.
    std::vector<ProjLine> lines = {
        {Rational(1), Rational(0), Rational(0)},
        {Rational(0), Rational(1), Rational(0)},
        {Rational(1), Rational(-1), Rational(0)},
        {Rational(1), Rational(1), Rational(-2)},
        {Rational(1), Rational(-2), Rational(1)},
        {Rational(3), Rational(1), Rational(-4)},
    };
    const Arrangement degenerate(std::move(lines),
                                 PlanePoint{Rational(0), Rational(0), Rational(1)});
    const ArrangementReport rep = check_singular_bound(degenerate);
    if (!(rep.within_bound && rep.away_count < rep.bound)) {
      out.pass = false;
      out.details = "concurrent-star degeneration did not drop the count";
    }
  }

  if (out.pass)
    out.details = std::to_string(identity_cases) + " identities, " +
                  std::to_string(bound_cases) + " bounded arrangements, extremal draws ok";
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 10: every certificate collected by the suite re-verifies
/// exactly (in the default charts and in an alternate chart assignment),
/// and conditions-matrix ranks are chart independent on random pairs.
inline CheckResult check_certificates(const VerifyOptions& opts,
                                      const std::vector<SequenceEvidence>& evidence) {
  detail::Stopwatch sw;
  CheckResult out{"certificate-soundness", true, "", 0};
  long verified = 0;

  std::vector<char> ok(evidence.size(), 1);
  parallel_for(evidence.size(), opts.jobs, [&](std::size_t i) {
    const auto& e = evidence[i];
    const HirzebruchSurface s(e.r);
    for (std::size_t m = 1; m <= e.report.certificates.size(); ++m) {
      const Certificate& cert = e.report.certificates[m - 1];
      FatPointScheme z(s, e.points, static_cast<int>(m));
      if (!verify_certificate(z, cert)) ok[i] = 0;
      std::vector<Chart> alt;
      for (const auto& p : e.points) alt.push_back(valid_charts(p).back());
      if (!verify_certificate(z, cert, alt)) ok[i] = 0;
    }
  });
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    verified += static_cast<long>(evidence[i].report.certificates.size());
    if (!ok[i]) {
      out.pass = false;
      out.details = "certificate failed re-verification (evidence " + std::to_string(i) + ")";
    }
  }

  long rank_pairs = 0;
  std::vector<char> rank_ok(50, 1);
  parallel_for(50, opts.jobs, [&](std::size_t k) {
    Rng rng(detail::mix_seed(opts.base_seed * 7, 13, k));
    const int r = 1 + static_cast<int>(k % 3);
    const HirzebruchSurface s(r);
    SchemeConstraints c;
    c.curve = SchemeConstraints::Curve::Any;
    const auto pts = random_scheme(r, 1 + static_cast<int>(k % 2), rng.next(), c);
    FatPointScheme z(s, pts, 1 + static_cast<int>(k % 3));
    const long d = 1 + static_cast<long>(k % 3);

    const std::size_t base_rank = rank_exact(conditions_matrix(z, d));
    std::vector<Chart> charts;
    for (const auto& p : pts) charts.push_back(preferred_chart(p));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (const Chart& alt : valid_charts(pts[i])) {
        auto mixed = charts;
        mixed[i] = alt;
        if (rank_exact(conditions_matrix(z, d, mixed)) != base_rank) rank_ok[k] = 0;
      }
    }
  });
  for (std::size_t k = 0; k < rank_ok.size(); ++k) {
    ++rank_pairs;
    if (!rank_ok[k]) {
      out.pass = false;
      out.details = "chart-dependent rank found (pair " + std::to_string(k) + ")";
    }
  }

  if (out.pass)
    out.details = std::to_string(verified) + " certificates re-verified, " +
                  std::to_string(rank_pairs) + " chart-independence pairs";
  out.seconds = sw.seconds();
  return out;
}

/// Runs the whole verification suite in criterion order.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opts = {}) {
  std::vector<CheckResult> results;
  std::vector<SequenceEvidence> evidence;

  results.push_back(check_dimension_formula());
  results.push_back(check_negative_curve_sequences(evidence, opts.search));
  results.push_back(check_plateau_length_bound(opts, evidence));
  results.push_back(check_long_plateau_classification(opts, evidence));
  results.push_back(check_fiber_plateau(evidence, opts.search));
  results.push_back(check_pencil_star_plateau(opts, evidence));
  results.push_back(check_chudnovsky(evidence));
  results.push_back(check_waldschmidt_attainment(evidence, opts.search));
  results.push_back(check_arrangements(opts));
  results.push_back(check_certificates(opts, evidence));
  return results;
}

}  // namespace fatpoints

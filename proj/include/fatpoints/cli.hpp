#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fatpoints/arrangements.hpp"
#include "fatpoints/classification.hpp"
#include "fatpoints/configs.hpp"
#include "fatpoints/errors.hpp"
#include "fatpoints/interpolation.hpp"
#include "fatpoints/parallel.hpp"
#include "fatpoints/verification.hpp"

namespace fatpoints {

using Json = nlohmann::ordered_json;

/**
 * A fully-specified job. Given equal JobSpecs the produced results block is
 * byte-identical: fixed key order, reduced-fraction printing, seeded
 * randomness, and no timestamps inside results (timing is opt-in and sits
 * outside).
 */
struct JobSpec {
  std::string command;  // alpha | sequence | waldschmidt | classify | verify | arrangement | search

  int r = 1;
  int r_min = 1, r_max = 3;  // verify / search ranges

  std::string points_text;  // point file contents ("" when a generator is used)
  bool plane_input = false;
  std::string config;  // negcurve-point | fiber-points | pencil-star | random
  long config_k = 3;   // fiber-points count
  long config_a = 2;   // pencil-star parameter
  int config_n = 4;    // random scheme size
  SchemeConstraints constraints;

  int m = 1;
  int m_max = 4;
  int d_ceiling = 64;
  int prime_count = 1;
  std::uint64_t seed = 20240901ULL;
  int seeds = 100;
  int jobs = 1;

  long arr_d = 6, arr_m = 3;  // arrangement command
  bool pencil_star = false;

  std::string format = "json";  // json | csv
  bool timing = false;
};

/**
 * Parses the point-file format: one point per line, four whitespace-
 * separated rationals (three with plane_input, which lifts through the
 * blow-up and requires r = 1), '#' comments, blank lines ignored. Rejects
 * torus-duplicate points.
 */
inline std::vector<SurfacePoint> parse_points(const std::string& text, int r,
                                              bool plane_input = false) {
  std::vector<SurfacePoint> out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    const std::size_t expected = plane_input ? 3 : 4;
    if (tokens.size() != expected)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(expected) + " rationals, got " +
                       std::to_string(tokens.size()));
    std::vector<Rational> coords;
    for (const auto& t : tokens) {
      try {
        coords.push_back(Rational::parse(t));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    try {
      if (plane_input) {
        out.push_back(blowup_point(PlanePoint{coords[0], coords[1], coords[2]}));
      } else {
        out.push_back(SurfacePoint{coords[0], coords[1], coords[2], coords[3]});
      }
    } catch (const CenterPoint&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      if (torus_equal(out[i], out.back(), r))
        throw DuplicatePoint("line " + std::to_string(line_no) +
                             " repeats point " + std::to_string(i + 1));
  }
  return out;
}

namespace detail {

inline Json point_json(const SurfacePoint& p) {
  return Json::array({p.x1.str(), p.x2.str(), p.x3.str(), p.x4.str()});
}

inline Json certificate_json(const HirzebruchSurface& s,
                             const std::vector<SurfacePoint>& pts, const Certificate& cert) {
  Json out;
  out["degree"] = cert.degree;
  out["multiplicity"] = cert.multiplicity;
  const auto basis = section_basis(s, minimal_polarization(s).scaled(cert.degree));
  Json support = Json::array();
  for (std::size_t k = 0; k < cert.coefficients.size(); ++k) {
    if (cert.coefficients[k].is_zero()) continue;
    Json entry;
    entry["monomial"] = {basis[k].e1, basis[k].e2, basis[k].e3, basis[k].e4};
    entry["coefficient"] = cert.coefficients[k].str();
    support.push_back(std::move(entry));
  }
  out["basis_size"] = cert.coefficients.size();
  out["support"] = std::move(support);
  out["verified"] = verify_certificate(FatPointScheme(s, pts, cert.multiplicity), cert);
  return out;
}

inline SearchOptions search_options(const JobSpec& spec) {
  SearchOptions opts;
  opts.d_ceiling = spec.d_ceiling;
  opts.prime_count = spec.prime_count;
  opts.prime_seed = spec.seed ^ 0xa5a5a5a5a5a5a5a5ULL;
  return opts;
}

/// Materializes the job's point set from a generator or the point text.
inline std::vector<SurfacePoint> resolve_points(const JobSpec& spec) {
  if (!spec.config.empty()) {
    if (spec.config == "negcurve-point") return point_on_negative_curve(spec.r);
    if (spec.config == "fiber-points") return fiber_points(spec.r, static_cast<int>(spec.config_k));
    if (spec.config == "pencil-star") {
      if (spec.r != 1) throw InvalidInput("pencil-star configurations live on F_1; use --r 1");
      return pencil_star_config_retrying(spec.config_a, spec.seed).points;
    }
    if (spec.config == "random")
      return random_scheme(spec.r, spec.config_n, spec.seed, spec.constraints);
    throw InvalidInput("unknown --config '" + spec.config + "'");
  }
  auto pts = parse_points(spec.points_text, spec.r, spec.plane_input);
  if (pts.empty()) throw InvalidInput("no points given: use --points/--point or --config");
  return pts;
}

inline Json job_echo(const JobSpec& spec, const std::vector<SurfacePoint>* pts) {
  Json job;
  job["command"] = spec.command;
  if (spec.command == "verify" || spec.command == "search") {
    job["r_min"] = spec.r_min;
    job["r_max"] = spec.r_max;
    job["seeds"] = spec.seeds;
  } else if (spec.command != "arrangement") {
    job["r"] = spec.r;
  }
  if (spec.command == "alpha") job["m"] = spec.m;
  if (spec.command == "sequence" || spec.command == "waldschmidt") job["m_max"] = spec.m_max;
  if (spec.command == "arrangement") {
    job["d"] = spec.arr_d;
    job["m"] = spec.arr_m;
  }
  if (!spec.config.empty()) {
    job["config"] = spec.config;
    if (spec.config == "fiber-points") job["k"] = spec.config_k;
    if (spec.config == "pencil-star") job["a"] = spec.config_a;
    if (spec.config == "random") job["n"] = spec.config_n;
  }
  job["seed"] = spec.seed;
  job["d_ceiling"] = spec.d_ceiling;
  job["primes"] = spec.prime_count;
  job["format"] = spec.format;
  if (pts) {
    Json arr = Json::array();
    for (const auto& p : *pts) arr.push_back(point_json(p));
    job["points"] = std::move(arr);
  }
  return job;
}

inline void require_json(const JobSpec& spec) {
  if (spec.format != "json")
    throw InvalidInput("--format csv is only available for sequence tables "
                       "(sequence, waldschmidt)");
}

inline Json sequence_results(const JobSpec& spec, const std::vector<SurfacePoint>& pts,
                             const SequenceReport& rep) {
  Json res;
  res["alphas"] = rep.alphas;
  res["plateau_length"] = rep.plateau_length;
  res["chudnovsky_lower"] = rep.chudnovsky.str();
  if (rep.refined)
    res["refined_lower"] = rep.refined->str();
  else
    res["refined_lower"] = nullptr;
  res["waldschmidt_lower"] = rep.lower_bound().str();
  res["waldschmidt_upper"] = rep.waldschmidt_upper.str();
  const HirzebruchSurface s(spec.r);
  Json certs = Json::array();
  for (const auto& c : rep.certificates) certs.push_back(certificate_json(s, pts, c));
  res["certificates"] = std::move(certs);
  return res;
}

struct SearchWitness {
  int r;
  std::uint64_t seed;
  std::vector<SurfacePoint> points;
  std::vector<long> alphas;
};

}  // namespace detail

/// Outcome of a job: the exit code and the rendered report.
struct JobOutcome {
  int exit_code = 0;
  std::string output;
};

inline JobOutcome run_job(const JobSpec& spec) {
  Json doc;
  int exit_code = 0;
  std::string csv;
  const detail::Stopwatch sw;
  const SearchOptions search = detail::search_options(spec);

  if (spec.command == "alpha") {
    detail::require_json(spec);
    const HirzebruchSurface s(spec.r);
    const auto pts = detail::resolve_points(spec);
    doc["job"] = detail::job_echo(spec, &pts);
    const AlphaResult res = alpha(s, pts, spec.m, search);
    Json results;
    results["alpha"] = res.alpha;
    results["certificate"] = detail::certificate_json(s, pts, res.certificate);
    if (!results["certificate"]["verified"].get<bool>()) exit_code = 1;
    doc["results"] = std::move(results);

  } else if (spec.command == "sequence" || spec.command == "waldschmidt") {
    const HirzebruchSurface s(spec.r);
    const auto pts = detail::resolve_points(spec);
    const SequenceReport rep = initial_sequence(s, pts, spec.m_max, search);
    if (spec.format == "csv") {
      std::ostringstream table;
      table << "m,alpha\n";
      for (std::size_t m = 1; m <= rep.alphas.size(); ++m)
        table << m << "," << rep.alphas[m - 1] << "\n";
      csv = table.str();
    } else {
      doc["job"] = detail::job_echo(spec, &pts);
      doc["results"] = detail::sequence_results(spec, pts, rep);
    }

  } else if (spec.command == "classify") {
    detail::require_json(spec);
    const HirzebruchSurface s(spec.r);
    const auto pts = detail::resolve_points(spec);
    doc["job"] = detail::job_echo(spec, &pts);
    const Classification cls = classify_plateau(s, pts, search);
    Json results;
    results["tag"] = to_string(cls.tag);
    results["plateau_length"] = cls.plateau_length;
    results["alphas"] = cls.alphas;
    Json certs = Json::array();
    for (const auto& c : cls.certificates) certs.push_back(detail::certificate_json(s, pts, c));
    results["certificates"] = std::move(certs);
    results["details"] = cls.details;
    doc["results"] = std::move(results);
    if (cls.tag == PlateauTag::ImpossibleWitness) exit_code = 1;

  } else if (spec.command == "verify") {
    detail::require_json(spec);
    doc["job"] = detail::job_echo(spec, nullptr);
    VerifyOptions vo;
    vo.r_min = spec.r_min;
    vo.r_max = spec.r_max;
    vo.seeds = spec.seeds;
    vo.base_seed = spec.seed;
    vo.jobs = spec.jobs;
    vo.search = search;
    const auto checks = run_verification(vo);
    Json list = Json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
      Json entry;
      entry["name"] = c.name;
      entry["pass"] = c.pass;
      entry["details"] = c.details;
      list.push_back(std::move(entry));
      all_pass = all_pass && c.pass;
    }
    Json results;
    results["checks"] = std::move(list);
    results["all_pass"] = all_pass;
    doc["results"] = std::move(results);
    if (!all_pass) exit_code = 1;

  } else if (spec.command == "arrangement") {
    detail::require_json(spec);
    if (!spec.pencil_star)
      throw InvalidInput("arrangement requires --pencil-star (the only generator)");
    doc["job"] = detail::job_echo(spec, nullptr);
    const Arrangement arr = make_pencil_star_retrying(spec.arr_d, spec.arr_m, spec.seed);
    const ArrangementReport rep = check_singular_bound(arr);
    Json results;
    results["d"] = rep.d;
    results["m"] = rep.m;
    results["singular_away_count"] = rep.away_count;
    results["bound"] = rep.bound;
    results["within_bound"] = rep.within_bound;
    results["attains_bound"] = rep.attains_bound;
    results["extremal"] = rep.extremal;
    results["violations"] = rep.violations;
    Json pts = Json::array();
    for (const auto& s : rep.away_points) {
      Json entry;
      entry["point"] = Json::array(
          {s.point.x.str(), s.point.y.str(), s.point.z.str()});
      entry["multiplicity"] = s.multiplicity;
      pts.push_back(std::move(entry));
    }
    results["points"] = std::move(pts);
    doc["results"] = std::move(results);
    if (!rep.within_bound) exit_code = 1;

  } else if (spec.command == "search") {
    detail::require_json(spec);
    doc["job"] = detail::job_echo(spec, nullptr);
    std::vector<detail::SearchWitness> witnesses;
    std::map<int, std::map<int, long>> histogram;
    long total = 0;
    for (int r = spec.r_min; r <= spec.r_max; ++r) {
      const HirzebruchSurface s(r);
      struct Row {
        int plateau = 0;
        std::uint64_t seed = 0;
        std::vector<SurfacePoint> pts;
        std::vector<long> alphas;
      };
      std::vector<Row> rows(spec.seeds);
      parallel_for(static_cast<std::size_t>(spec.seeds), spec.jobs, [&](std::size_t k) {
        const int n = 1 + static_cast<int>(k % 6);
        const SchemeConstraints c = detail::search_constraints(static_cast<int>(k % 4));
        const std::uint64_t sd =
            detail::mix_seed(spec.seed, static_cast<std::uint64_t>(r), k);
        const auto pts = random_scheme(r, n, sd, c);
        const SequenceReport rep = plateau_sequence(s, pts, r + 3, search);
        rows[k] = {rep.plateau_length, sd, pts, rep.alphas};
      });
      for (const auto& row : rows) {
        ++total;
        ++histogram[r][row.plateau];
        if (row.plateau >= r + 3) witnesses.push_back({r, row.seed, row.pts, row.alphas});
      }
    }
    Json results;
    results["configurations"] = total;
    Json hist = Json::array();
    for (const auto& [r, by_plateau] : histogram)
      for (const auto& [plateau, count] : by_plateau) {
        Json entry;
        entry["r"] = r;
        entry["plateau"] = plateau;
        entry["count"] = count;
        hist.push_back(std::move(entry));
      }
    results["plateau_histogram"] = std::move(hist);
    Json wit = Json::array();
    for (const auto& w : witnesses) {
      Json entry;
      entry["r"] = w.r;
      entry["seed"] = w.seed;
      entry["alphas"] = w.alphas;
      Json pts = Json::array();
      for (const auto& p : w.points) pts.push_back(detail::point_json(p));
      entry["points"] = std::move(pts);
      wit.push_back(std::move(entry));
    }
    results["witnesses"] = std::move(wit);
    doc["results"] = std::move(results);
    if (!witnesses.empty()) exit_code = 1;

  } else {
    throw InvalidInput("unknown command '" + spec.command + "'");
  }

  if (!csv.empty()) return {exit_code, csv};
  if (spec.timing) doc["timing_ms"] = static_cast<long>(sw.seconds() * 1000.0);
  return {exit_code, doc.dump(2) + "\n"};
}

}  // namespace fatpoints

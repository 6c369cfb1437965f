// fatpoints: initial degrees, initial sequences, Waldschmidt bounds, and
// plateau classification for fat-point schemes on Hirzebruch surfaces,
// plus exact plane line-arrangement checks. All arithmetic is exact; every
// reported alpha ships with a re-verifiable kernel certificate.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fatpoints/cli.hpp"

namespace {

int default_dceil() {
  if (const char* env = std::getenv("FATPOINTS_DCEIL")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid FATPOINTS_DCEIL='" << env << "'\n";
  }
  return 64;
}

std::string read_points_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw fatpoints::ParseError("cannot open points file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void parse_r_range(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (...) {
    throw fatpoints::InvalidInput("bad --r range '" + text + "' (use e.g. 2 or 1..3)");
  }
  if (lo < 1 || hi < lo) throw fatpoints::InvalidInput("bad --r range '" + text + "'");
}

struct CommonArgs {
  std::string points_file;
  std::vector<std::string> inline_points;
  bool on_curve = false;
  bool any_curve = false;
  bool same_fiber = false;
  std::string r_range = "1..3";
};

void add_point_sources(CLI::App* cmd, fatpoints::JobSpec& spec, CommonArgs& args) {
  cmd->add_option("--points", args.points_file,
                  "point file (one point per line, '-' for stdin)");
  cmd->add_option("--point", args.inline_points,
                  "inline point, e.g. --point '1 0 0 1' (repeatable)")
      ->take_all();
  cmd->add_flag("--plane", spec.plane_input,
                "points are plane points (3 rationals), lifted through the blow-up; r must be 1");
  cmd->add_option("--config", spec.config,
                  "generator: negcurve-point | fiber-points | pencil-star | random");
  cmd->add_option("--k", spec.config_k, "fiber-points count")->check(CLI::PositiveNumber);
  cmd->add_option("--a", spec.config_a, "pencil-star parameter (>= 2)");
  cmd->add_option("--n", spec.config_n, "random scheme size")->check(CLI::PositiveNumber);
  cmd->add_flag("--on-curve", args.on_curve, "random points on the negative curve");
  cmd->add_flag("--any-curve", args.any_curve, "random points may touch the negative curve");
  cmd->add_flag("--same-fiber", args.same_fiber, "random points share one fiber");
}

void add_common(CLI::App* cmd, fatpoints::JobSpec& spec) {
  cmd->add_option("--seed", spec.seed, "random seed (generators, modular filter)");
  cmd->add_option("--dceil", spec.d_ceiling, "hard degree ceiling for the search")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--primes", spec.prime_count, "independent primes in the rank filter")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", spec.jobs, "worker threads for seed sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", spec.format, "output format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timing", spec.timing, "append wall-clock timing outside the results block");
}

void finalize(fatpoints::JobSpec& spec, CommonArgs& args) {
  if (!args.points_file.empty()) spec.points_text = read_points_file(args.points_file);
  for (const auto& p : args.inline_points) {
    spec.points_text += p;
    spec.points_text += '\n';
  }
  if (!spec.points_text.empty() && !spec.config.empty())
    throw fatpoints::InvalidInput("give either points or --config, not both");
  if (args.on_curve && args.any_curve)
    throw fatpoints::InvalidInput("--on-curve conflicts with --any-curve");
  if (args.on_curve) spec.constraints.curve = fatpoints::SchemeConstraints::Curve::On;
  if (args.any_curve) spec.constraints.curve = fatpoints::SchemeConstraints::Curve::Any;
  spec.constraints.single_fiber = args.same_fiber;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fatpoints: exact fat-point interpolation on Hirzebruch surfaces F_r.\n"
      "Computes initial degrees alpha(mZ) with respect to the minimal ample\n"
      "class L_r = (r+1)F + E, initial sequences, Waldschmidt-constant bounds,\n"
      "plateau classification, and line-arrangement singular-point checks."};
  app.require_subcommand(1);

  fatpoints::JobSpec spec;
  spec.d_ceiling = default_dceil();
  CommonArgs args;

  auto* cmd_alpha = app.add_subcommand("alpha", "initial degree alpha(mZ) for one m");
  cmd_alpha->add_option("--r", spec.r, "surface index r >= 1")->check(CLI::PositiveNumber);
  cmd_alpha->add_option("--m", spec.m, "multiplicity m >= 1")->check(CLI::PositiveNumber);
  add_point_sources(cmd_alpha, spec, args);
  add_common(cmd_alpha, spec);

  auto* cmd_seq = app.add_subcommand("sequence", "initial sequence alpha(Z), ..., alpha(m_max Z)");
  cmd_seq->add_option("--r", spec.r, "surface index r >= 1")->check(CLI::PositiveNumber);
  cmd_seq->add_option("--mmax", spec.m_max, "last multiplicity")->check(CLI::PositiveNumber);
  add_point_sources(cmd_seq, spec, args);
  add_common(cmd_seq, spec);

  auto* cmd_wald = app.add_subcommand("waldschmidt", "finite Waldschmidt-constant bounds");
  cmd_wald->add_option("--r", spec.r, "surface index r >= 1")->check(CLI::PositiveNumber);
  cmd_wald->add_option("--mmax", spec.m_max, "last multiplicity")->check(CLI::PositiveNumber);
  add_point_sources(cmd_wald, spec, args);
  add_common(cmd_wald, spec);

  auto* cmd_cls = app.add_subcommand("classify", "plateau length and classification tag");
  cmd_cls->add_option("--r", spec.r, "surface index r >= 1")->check(CLI::PositiveNumber);
  add_point_sources(cmd_cls, spec, args);
  add_common(cmd_cls, spec);

  auto* cmd_verify = app.add_subcommand("verify", "run the full verification suite");
  cmd_verify->add_option("--r", args.r_range, "surface range for the randomized search, e.g. 1..3");
  cmd_verify->add_option("--seeds", spec.seeds, "configurations per surface")
      ->check(CLI::PositiveNumber);
  add_common(cmd_verify, spec);

  auto* cmd_arr = app.add_subcommand("arrangement", "plane line-arrangement analysis");
  cmd_arr->add_flag("--pencil-star", spec.pencil_star, "m lines through Q plus d-m general lines");
  cmd_arr->add_option("--d", spec.arr_d, "total number of lines")->check(CLI::PositiveNumber);
  cmd_arr->add_option("--m", spec.arr_m, "lines through Q (>= 2)")->check(CLI::PositiveNumber);
  add_common(cmd_arr, spec);

  auto* cmd_search = app.add_subcommand("search", "randomized plateau search (expects no witnesses)");
  cmd_search->add_option("--r", args.r_range, "surface range, e.g. 1..3");
  cmd_search->add_option("--seeds", spec.seeds, "configurations per surface")
      ->check(CLI::PositiveNumber);
  add_common(cmd_search, spec);

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto* cmd : {cmd_alpha, cmd_seq, cmd_wald, cmd_cls})
      if (cmd->parsed()) spec.command = cmd->get_name();
    if (cmd_verify->parsed()) spec.command = "verify";
    if (cmd_arr->parsed()) spec.command = "arrangement";
    if (cmd_search->parsed()) spec.command = "search";

    if (spec.command == "verify" || spec.command == "search")
      parse_r_range(args.r_range, spec.r_min, spec.r_max);
    else
      finalize(spec, args);

    const fatpoints::JobOutcome outcome = fatpoints::run_job(spec);
    std::cout << outcome.output;
    return outcome.exit_code;
  } catch (const fatpoints::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: every verification and scenario in the library is a
// subcommand emitting one deterministic JSON report on stdout.
// Exit codes: 0 all checks passed, 1 a check failed or an exact count
// overflowed, 2 usage/parse errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permsym/counting.hpp"
#include "permsym/hilbert.hpp"
#include "permsym/observables.hpp"
#include "permsym/permutation.hpp"
#include "permsym/report.hpp"
#include "permsym/scenarios.hpp"

namespace {

using permsym::CheckItem;
using permsym::RandomSpec;
using permsym::ReportEnvelope;
using permsym::StateVector;
using permsym::SymmetryClass;
using JVal = permsym::report::Value;

int emit(const ReportEnvelope& envelope) {
  std::cout << envelope.render() << "\n";
  return envelope.all_pass() ? 0 : 1;
}

CheckItem upper_bound_check(const std::string& name, double value, double threshold) {
  return CheckItem{name, value, threshold, value <= threshold};
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return nlohmann::json::parse(in);
}

SymmetryClass stats_to_class(const std::string& stats) {
  return stats == "bose" ? SymmetryClass::kBoson : SymmetryClass::kFermion;
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

struct AxiomsOptions {
  int dim = 2;
  int trials = 50;
  std::uint64_t seed = 0;
};

int run_axioms(const AxiomsOptions& opt) {
  permsym::require(opt.dim >= 2 && opt.dim <= 8, "axioms: --dim must be in [2, 8]");
  permsym::require(opt.trials >= 1, "axioms: --trials must be >= 1");

  std::map<std::string, double> worst;
  double worst_spectrum = 0.0;
  for (int t = 0; t < opt.trials; ++t) {
    const permsym::AxiomReport r =
        permsym::verify_axioms(opt.dim, RandomSpec{opt.seed, static_cast<std::uint64_t>(t)});
    for (const auto& [key, value] : r.residuals)
      worst[key] = std::max(worst[key], value);
    worst_spectrum = std::max(worst_spectrum, r.spectrum_residual);
  }

  ReportEnvelope env;
  env.command = "axioms";
  env.params.set("dim", JVal::integer(opt.dim))
      .set("trials", JVal::integer(opt.trials))
      .set("seed", JVal::integer(static_cast<long long>(opt.seed)));
  JVal residuals = JVal::object();
  for (const auto& [key, value] : worst) {
    residuals.set(key, JVal::number(value));
    env.checks.push_back(upper_bound_check(key, value, 1e-12));
  }
  env.results = JVal::object();
  env.results.set("residuals", std::move(residuals));
  env.results.set("spectrum_residual", JVal::number(worst_spectrum));
  env.checks.push_back(upper_bound_check("spectrum_pm_one", worst_spectrum, 1e-10));
  return emit(env);
}

// ---------------------------------------------------------------------------
// equivalence
// ---------------------------------------------------------------------------

struct EquivalenceOptions {
  int dim = 2;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string stats = "bose";
};

int run_equivalence(const EquivalenceOptions& opt) {
  permsym::require(opt.dim >= 2 && opt.dim <= permsym::kMaxSiteDim,
                   "equivalence: --dim out of range");
  permsym::require(opt.trials >= 1, "equivalence: --trials must be >= 1");
  const SymmetryClass cls = stats_to_class(opt.stats);

  double max_deviation = 0.0;
  double max_normalized = 0.0;
  double max_overlap = 0.0;
  permsym::EquivalenceReport last;
  for (int t = 0; t < opt.trials; ++t) {
    const auto stream = [&](int slot) {
      return RandomSpec{opt.seed, 4ULL * static_cast<std::uint64_t>(t) + slot};
    };
    const StateVector psi = permsym::random_state(opt.dim, stream(0));
    const StateVector chi = permsym::random_state(opt.dim, stream(1));
    // Two projection passes give orthogonality at machine precision even for
    // unlucky nearly-parallel draws.
    StateVector phi = permsym::normalize(
        StateVector(chi.amps - permsym::inner(psi, chi) * psi.amps));
    phi = permsym::normalize(
        StateVector(phi.amps - permsym::inner(psi, phi) * psi.amps));
    const permsym::Operator a = permsym::random_hermitian(opt.dim, stream(2));
    const permsym::Operator b = permsym::random_hermitian(opt.dim, stream(3));

    last = permsym::equivalence_check(psi, phi, a, b, cls);
    max_deviation = std::max(max_deviation, last.deviation);
    max_normalized = std::max(
        max_normalized, last.deviation / (1e-10 * (1.0 + std::abs(last.rhs))));
    max_overlap = std::max(max_overlap, last.overlap);
  }

  ReportEnvelope env;
  env.command = "equivalence";
  env.params.set("dim", JVal::integer(opt.dim))
      .set("trials", JVal::integer(opt.trials))
      .set("seed", JVal::integer(static_cast<long long>(opt.seed)))
      .set("stats", JVal::str(opt.stats));
  env.results.set("lambda", JVal::integer(permsym::lambda_of(cls)))
      .set("lhs", JVal::number(last.lhs))
      .set("rhs", JVal::number(last.rhs))
      .set("overlap", JVal::number(last.overlap))
      .set("deviation", JVal::number(last.deviation))
      .set("max_deviation", JVal::number(max_deviation))
      .set("max_normalized_deviation", JVal::number(max_normalized))
      .set("max_overlap", JVal::number(max_overlap));
  env.checks.push_back(
      upper_bound_check("deviation_within_budget", max_normalized, 1.0));
  env.checks.push_back(
      upper_bound_check("constituents_orthogonal", max_overlap, 1e-12));
  return emit(env);
}

// ---------------------------------------------------------------------------
// fapp
// ---------------------------------------------------------------------------

struct FappOptions {
  int dim = 4;
  std::vector<double> overlaps{1e-1, 1e-2, 1e-3, 1e-4};
  int trials = 200;
  std::uint64_t seed = 0;
  std::string stats = "bose";
};

int run_fapp(const FappOptions& opt) {
  const permsym::SweepReport sweep = permsym::fapp_sweep(
      opt.dim, opt.overlaps, opt.trials, RandomSpec{opt.seed, 0},
      stats_to_class(opt.stats));

  ReportEnvelope env;
  env.command = "fapp";
  JVal overlaps = JVal::array();
  for (double s : opt.overlaps) overlaps.push(JVal::number(s));
  env.params.set("dim", JVal::integer(opt.dim))
      .set("overlaps", std::move(overlaps))
      .set("trials", JVal::integer(opt.trials))
      .set("seed", JVal::integer(static_cast<long long>(opt.seed)))
      .set("stats", JVal::str(opt.stats));
  JVal svals = JVal::array();
  JVal devs = JVal::array();
  for (std::size_t i = 0; i < sweep.s_values.size(); ++i) {
    svals.push(JVal::number(sweep.s_values[i]));
    devs.push(JVal::number(sweep.max_deviation[i]));
  }
  env.results.set("s_values", std::move(svals))
      .set("max_deviation", std::move(devs))
      .set("slope", JVal::number(sweep.slope));
  env.checks.push_back(upper_bound_check("slope_upper", sweep.slope, 2.1));
  env.checks.push_back(
      CheckItem{"slope_lower", sweep.slope, 1.9, sweep.slope >= 1.9});
  return emit(env);
}

// ---------------------------------------------------------------------------
// count / entropy
// ---------------------------------------------------------------------------

struct CountOptions {
  std::string levels_file;
  std::string demo;
  bool equal_internal = false;
  int particles = 0;
  std::string energy;
  bool extensivity = false;  // entropy only
};

JVal occupation_to_json(const permsym::OccupationVector& occ) {
  JVal counts = JVal::array();
  for (int c : occ.counts) counts.push(JVal::integer(c));
  return counts;
}

JVal count_results_json(const permsym::CountReport& counts) {
  JVal out = JVal::object();
  out.set("N", JVal::integer(counts.n));
  JVal energy = JVal::object();
  energy.set("numerator", JVal::count(counts.energy.num));
  energy.set("denominator", JVal::count(counts.energy.den));
  out.set("energy", std::move(energy));
  out.set("W_dist", JVal::count(counts.w_dist));
  out.set("W_bose", JVal::count(counts.w_bose));
  out.set("W_fermi", JVal::count(counts.w_fermi));
  out.set("W_ident", JVal::count(counts.w_bose));
  JVal per = JVal::array();
  for (const auto& [occ, ways] : counts.per_occupation) {
    JVal item = JVal::object();
    item.set("counts", occupation_to_json(occ));
    item.set("ways", JVal::count(ways));
    per.push(std::move(item));
  }
  out.set("per_occupation", std::move(per));
  return out;
}

void add_count_structure_checks(ReportEnvelope& env, const permsym::CountReport& c) {
  const bool ordered = c.w_fermi <= c.w_bose && c.w_bose <= c.w_dist;
  env.checks.push_back(
      CheckItem{"count_ordering", ordered ? 1.0 : 0.0, 1.0, ordered});
  long long total = 0;
  for (const auto& [occ, ways] : c.per_occupation)
    total = permsym::exact::add(total, ways);
  const bool consistent = total == c.w_dist;
  env.checks.push_back(CheckItem{"multinomial_sum_consistent",
                                 consistent ? 1.0 : 0.0, 1.0, consistent});
}

/// Resolves the (levels, N, E) triple shared by count and entropy.
struct ResolvedCount {
  permsym::LevelSpec levels;
  int particles = 0;
  permsym::Rational energy;
};

ResolvedCount resolve_levels(const CountOptions& opt) {
  permsym::require(!opt.levels_file.empty(), "expected --levels <file>");
  permsym::require(opt.particles >= 1, "expected --particles >= 1");
  permsym::require(!opt.energy.empty(), "expected --energy <value>");
  ResolvedCount out{permsym::level_spec_from_json(load_json_file(opt.levels_file)),
                    opt.particles, permsym::parse_rational(opt.energy)};
  return out;
}

int run_count(const CountOptions& opt) {
  permsym::require(opt.levels_file.empty() != opt.demo.empty(),
                   "count: give exactly one of --levels or --demo");
  ReportEnvelope env;
  env.command = "count";

  permsym::CountReport counts;
  permsym::GibbsReport gibbs;
  if (!opt.demo.empty()) {
    permsym::require(opt.demo == "hydrogen", "count: unknown demo '" + opt.demo + "'");
    permsym::require(opt.particles == 0 && opt.energy.empty(),
                     "count: --demo fixes particles and energy");
    counts = permsym::hydrogen_pair_count(opt.equal_internal);
    env.params.set("demo", JVal::str(opt.demo))
        .set("equal_internal", JVal::boolean(opt.equal_internal));
    // The demo's admissibility rule is positional, so the generic
    // energy-only gibbs checker does not apply; report counts alone.
    env.results = count_results_json(counts);
  } else {
    const ResolvedCount in = resolve_levels(opt);
    counts = permsym::count_microstates(in.levels, in.particles, in.energy);
    gibbs = permsym::gibbs_check(in.levels, in.particles, in.energy);
    env.params.set("levels", JVal::str(opt.levels_file))
        .set("particles", JVal::integer(opt.particles))
        .set("energy", JVal::str(opt.energy));
    env.results = count_results_json(counts);
    JVal gj = JVal::object();
    gj.set("holds", JVal::boolean(gibbs.holds));
    gj.set("multiplicity_free", JVal::boolean(gibbs.multiplicity_free));
    gj.set("factorial_match", JVal::boolean(gibbs.factorial_match));
    gj.set("n_factorial", JVal::count(gibbs.n_factorial));
    gj.set("witness", gibbs.witness ? occupation_to_json(*gibbs.witness) : JVal());
    env.results.set("gibbs", std::move(gj));
  }
  add_count_structure_checks(env, counts);
  return emit(env);
}

int run_entropy(const CountOptions& opt) {
  const ResolvedCount in = resolve_levels(opt);
  const permsym::CountReport counts =
      permsym::count_microstates(in.levels, in.particles, in.energy);
  const permsym::EntropyReport entropy = permsym::entropy_from_counts(counts);

  ReportEnvelope env;
  env.command = "entropy";
  env.params.set("levels", JVal::str(opt.levels_file))
      .set("particles", JVal::integer(opt.particles))
      .set("energy", JVal::str(opt.energy))
      .set("extensivity", JVal::boolean(opt.extensivity));
  const auto opt_number = [](const std::optional<double>& v) {
    return v ? JVal::number(*v) : JVal();
  };
  env.results.set("N", JVal::integer(entropy.n))
      .set("W_dist", JVal::count(counts.w_dist))
      .set("W_ident", JVal::count(counts.w_bose))
      .set("ln_W_dist", opt_number(entropy.ln_w_dist))
      .set("ln_W_ident", opt_number(entropy.ln_w_ident))
      .set("gibbs_correction", JVal::number(entropy.gibbs_correction))
      .set("corrected", opt_number(entropy.corrected));

  const bool defined = entropy.ln_w_dist.has_value() && entropy.ln_w_ident.has_value();
  env.checks.push_back(
      CheckItem{"entropy_defined", defined ? 1.0 : 0.0, 1.0, defined});
  if (defined) {
    // With every admissible occupation multiplicity-free, the corrected
    // labeled entropy coincides with the identical-particle entropy.
    const permsym::GibbsReport gibbs =
        permsym::gibbs_check(in.levels, in.particles, in.energy);
    if (gibbs.multiplicity_free)
      env.checks.push_back(upper_bound_check(
          "corrected_matches_identical",
          std::abs(*entropy.corrected - *entropy.ln_w_ident), 1e-12));
  }

  if (opt.extensivity) {
    const permsym::ExtensivityReport ext =
        permsym::extensivity_experiment(in.levels, in.particles, in.energy);
    JVal ej = JVal::object();
    ej.set("single", count_results_json(ext.single));
    ej.set("combined", count_results_json(ext.combined));
    ej.set("ident_gap", JVal::number(ext.ident_gap));
    ej.set("dist_gap_uncorrected", JVal::number(ext.dist_gap_uncorrected));
    ej.set("dist_gap_corrected", JVal::number(ext.dist_gap_corrected));
    ej.set("partition_term", JVal::number(ext.partition_term));
    env.results.set("extensivity", std::move(ej));
    env.checks.push_back(upper_bound_check("extensivity_identical_gap",
                                           std::abs(ext.ident_gap), 1e-12));
    env.checks.push_back(upper_bound_check("extensivity_corrected_gap",
                                           std::abs(ext.dist_gap_corrected), 1e-12));
    env.checks.push_back(upper_bound_check(
        "uncorrected_gap_is_partition_term",
        std::abs(ext.dist_gap_uncorrected - ext.partition_term), 1e-12));
  }
  return emit(env);
}

// ---------------------------------------------------------------------------
// gaussian / doublewell
// ---------------------------------------------------------------------------

struct GaussianOptions {
  double separation = 0.0;
  double width = 1.0;
  double threshold = permsym::kDefaultFappThreshold;
};

int run_gaussian(const GaussianOptions& opt) {
  const permsym::GaussianSpec spec{opt.separation, opt.width};
  const double overlap = permsym::gaussian_overlap(spec);
  // Classify using the overlap value itself on a 2D stand-in pair: the
  // verdict depends only on the magnitude.
  permsym::Differentiation verdict;
  if (overlap <= permsym::kExactOverlapTol)
    verdict = permsym::Differentiation::kExact;
  else if (overlap <= opt.threshold)
    verdict = permsym::Differentiation::kFapp;
  else
    verdict = permsym::Differentiation::kNotDifferentiating;

  ReportEnvelope env;
  env.command = "gaussian";
  env.params.set("sep", JVal::number(opt.separation))
      .set("width", JVal::number(opt.width))
      .set("threshold", JVal::number(opt.threshold));
  env.results.set("overlap", JVal::number(overlap))
      .set("verdict", JVal::str(permsym::name_of(verdict)))
      .set("threshold", JVal::number(opt.threshold));
  const bool in_unit = overlap >= 0.0 && overlap <= 1.0;
  env.checks.push_back(
      CheckItem{"overlap_in_unit_interval", overlap, 1.0, in_unit});
  return emit(env);
}

struct WellOptions {
  std::string preset;
  std::string config;
};

int run_doublewell(const WellOptions& opt) {
  permsym::require(opt.preset.empty() != opt.config.empty(),
                   "doublewell: give exactly one of --preset or --config");
  const permsym::WellSpec spec = opt.config.empty()
                                     ? permsym::well_preset(opt.preset)
                                     : permsym::well_spec_from_json(
                                           load_json_file(opt.config));
  const permsym::WellReport report = permsym::solve_double_well(spec);

  ReportEnvelope env;
  env.command = "doublewell";
  if (!opt.preset.empty()) env.params.set("preset", JVal::str(opt.preset));
  if (!opt.config.empty()) env.params.set("config", JVal::str(opt.config));
  JVal sj = JVal::object();
  sj.set("grid_points", JVal::integer(spec.grid_points));
  sj.set("domain_half_width", JVal::number(spec.domain_half_width));
  sj.set("barrier_height", JVal::number(spec.barrier_height));
  sj.set("barrier_half_width", JVal::number(spec.barrier_half_width));
  sj.set("well_depth", JVal::number(spec.well_depth));
  env.params.set("spec", std::move(sj));
  env.results.set("grid_spacing", JVal::number(report.grid_spacing))
      .set("e_even", JVal::number(report.e_even))
      .set("e_odd", JVal::number(report.e_odd))
      .set("splitting", JVal::number(report.splitting))
      .set("left_mass", JVal::number(report.left_mass))
      .set("right_mass", JVal::number(report.right_mass))
      .set("lr_overlap", JVal::number(report.lr_overlap))
      .set("mass_closure", JVal::number(report.mass_closure))
      .set("residual_even", JVal::number(report.residual_even))
      .set("residual_odd", JVal::number(report.residual_odd));
  env.checks.push_back(
      upper_bound_check("eigen_residual_even", report.residual_even, 1e-8));
  env.checks.push_back(
      upper_bound_check("eigen_residual_odd", report.residual_odd, 1e-8));
  env.checks.push_back(
      upper_bound_check("lr_orthogonal", std::abs(report.lr_overlap), 1e-12));
  env.checks.push_back(
      upper_bound_check("mass_closure", report.mass_closure, 1e-10));
  env.checks.push_back(CheckItem{"spectrum_ordered", report.splitting, 0.0,
                                 report.splitting >= 0.0});
  return emit(env);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identical-particle formalism: verifications and scenarios"};
  app.require_subcommand(1);

  AxiomsOptions axioms_opt;
  CLI::App* cmd_axioms = app.add_subcommand(
      "axioms", "Verify exchange-operator and projector identities");
  cmd_axioms->add_option("--dim", axioms_opt.dim, "One-particle dimension (2-8)");
  cmd_axioms->add_option("--trials", axioms_opt.trials, "Random trials");
  cmd_axioms->add_option("--seed", axioms_opt.seed, "Random seed");

  EquivalenceOptions eq_opt;
  CLI::App* cmd_eq = app.add_subcommand(
      "equivalence", "Identical-vs-different expectation agreement");
  cmd_eq->add_option("--dim", eq_opt.dim, "One-particle dimension");
  cmd_eq->add_option("--trials", eq_opt.trials, "Random trials");
  cmd_eq->add_option("--seed", eq_opt.seed, "Random seed");
  cmd_eq->add_option("--stats", eq_opt.stats, "bose or fermi")
      ->check(CLI::IsMember({"bose", "fermi"}));

  FappOptions fapp_opt;
  CLI::App* cmd_fapp = app.add_subcommand(
      "fapp", "Deviation scaling against controlled overlaps");
  cmd_fapp->add_option("--dim", fapp_opt.dim, "One-particle dimension");
  cmd_fapp->add_option("--overlaps", fapp_opt.overlaps, "Comma-separated overlap values")
      ->delimiter(',');
  cmd_fapp->add_option("--trials", fapp_opt.trials, "Trials per overlap");
  cmd_fapp->add_option("--seed", fapp_opt.seed, "Random seed");
  cmd_fapp->add_option("--stats", fapp_opt.stats, "bose or fermi")
      ->check(CLI::IsMember({"bose", "fermi"}));

  CountOptions count_opt;
  CLI::App* cmd_count = app.add_subcommand(
      "count", "Exact microstate counts at fixed N and total energy");
  cmd_count->add_option("--levels", count_opt.levels_file, "Level-spec JSON file");
  cmd_count->add_option("--demo", count_opt.demo, "Named demo (hydrogen)");
  cmd_count->add_flag("--equal-internal", count_opt.equal_internal,
                      "Demo variant with equal internal states");
  cmd_count->add_option("--particles", count_opt.particles, "Particle count N");
  cmd_count->add_option("--energy", count_opt.energy, "Total energy (exact decimal)");

  CountOptions entropy_opt;
  CLI::App* cmd_entropy = app.add_subcommand(
      "entropy", "Entropies of the exact counts, optionally doubled system");
  cmd_entropy->add_option("--levels", entropy_opt.levels_file, "Level-spec JSON file");
  cmd_entropy->add_option("--particles", entropy_opt.particles, "Particle count N");
  cmd_entropy->add_option("--energy", entropy_opt.energy, "Total energy (exact decimal)");
  cmd_entropy->add_flag("--extensivity", entropy_opt.extensivity,
                        "Compare against two confined copies");

  GaussianOptions gauss_opt;
  CLI::App* cmd_gauss = app.add_subcommand(
      "gaussian", "Overlap of two separated Gaussian packets");
  cmd_gauss->add_option("--sep", gauss_opt.separation, "Separation D")->required();
  cmd_gauss->add_option("--width", gauss_opt.width, "Std deviation of |psi|^2")
      ->required();
  cmd_gauss->add_option("--threshold", gauss_opt.threshold,
                        "Practical differentiation threshold");

  WellOptions well_opt;
  CLI::App* cmd_well = app.add_subcommand(
      "doublewell", "Lowest pair of a symmetric double square well");
  cmd_well->add_option("--preset", well_opt.preset, "none, medium, or high")
      ->check(CLI::IsMember({"none", "medium", "high"}));
  cmd_well->add_option("--config", well_opt.config, "Well-spec JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_axioms->parsed()) return run_axioms(axioms_opt);
    if (cmd_eq->parsed()) return run_equivalence(eq_opt);
    if (cmd_fapp->parsed()) return run_fapp(fapp_opt);
    if (cmd_count->parsed()) return run_count(count_opt);
    if (cmd_entropy->parsed()) return run_entropy(entropy_opt);
    if (cmd_gauss->parsed()) return run_gaussian(gauss_opt);
    if (cmd_well->parsed()) return run_doublewell(well_opt);
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

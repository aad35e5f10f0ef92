// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permsym/common.hpp"

namespace permsym {

// Scale caps for exhaustive enumeration.
inline constexpr int kMaxParticles = 8;
inline constexpr int kMaxLevels = 12;

// ---------------------------------------------------------------------------
// Exact arithmetic
// ---------------------------------------------------------------------------

namespace exact {

inline long long add(long long a, long long b) {
  long long out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error("exact::add: 64-bit overflow");
  return out;
}

inline long long mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("exact::mul: 64-bit overflow");
  return out;
}

inline long long factorial(int n) {
  require(n >= 0 && n <= 20, "factorial: argument out of exact 64-bit range");
  long long out = 1;
  for (int k = 2; k <= n; ++k) out = mul(out, k);
  return out;
}

inline long long binomial(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "binomial: bad arguments");
  long long out = 1;
  for (int i = 1; i <= k; ++i) {
    out = mul(out, n - k + i);
    out /= i;  // exact: out is always a binomial coefficient here
  }
  return out;
}

}  // namespace exact

/// Exact decimal value num / den with den a positive power of ten.
struct Rational {
  long long num = 0;
  long long den = 1;
};

/// Parses "[+-]digits[.digits]" exactly (no exponents, no rounding).
inline Rational parse_rational(const std::string& text) {
  require(!text.empty(), "parse_rational: empty input");
  std::size_t pos = 0;
  long long sign = 1;
  if (text[pos] == '+' || text[pos] == '-') {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  require(pos < text.size(), "parse_rational: missing digits");
  long long num = 0;
  long long den = 1;
  bool any_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.') {
      require(!after_point, "parse_rational: repeated decimal point");
      after_point = true;
      continue;
    }
    require(std::isdigit(static_cast<unsigned char>(c)),
            "parse_rational: invalid character in number");
    any_digit = true;
    num = exact::add(exact::mul(num, 10), c - '0');
    if (after_point) den = exact::mul(den, 10);
  }
  require(any_digit, "parse_rational: no digits");
  return Rational{sign * num, den};
}

// ---------------------------------------------------------------------------
// Energy levels
// ---------------------------------------------------------------------------

/// M discrete one-particle energy levels. Inputs given as decimals are
/// cleared to one common power-of-ten denominator so that all later energy
/// comparisons are exact integer identities (never floating tolerances).
/// Degenerate levels stay distinct: equality of energy does not merge them.
struct LevelSpec {
  std::vector<long long> scaled;  // energy of level i = scaled[i] / denominator
  long long denominator = 1;
  std::vector<std::string> labels;  // empty, or one label per level

  int size() const { return static_cast<int>(scaled.size()); }

  static LevelSpec from_rationals(const std::vector<Rational>& values,
                                  std::vector<std::string> labels = {}) {
    require(!values.empty(), "LevelSpec: need at least one level");
    require(static_cast<int>(values.size()) <= kMaxLevels,
            "LevelSpec: more levels than the supported maximum");
    require(labels.empty() || labels.size() == values.size(),
            "LevelSpec: labels must be absent or one per level");
    long long common = 1;
    for (const Rational& r : values) {
      require(r.den >= 1, "LevelSpec: denominators must be positive");
      common = exact::mul(common / std::gcd(common, r.den), r.den);
    }
    LevelSpec out;
    out.denominator = common;
    for (const Rational& r : values)
      out.scaled.push_back(exact::mul(r.num, common / r.den));
    out.labels = std::move(labels);
    return out;
  }

  static LevelSpec from_integers(const std::vector<long long>& values,
                                 std::vector<std::string> labels = {}) {
    std::vector<Rational> rats;
    rats.reserve(values.size());
    for (long long v : values) rats.push_back(Rational{v, 1});
    return from_rationals(rats, std::move(labels));
  }
};

/// Reads {"energies": [...], "labels": [...]} with energies given as JSON
/// integers or as decimal strings (parsed exactly; JSON floats are rejected
/// because their decimal intent is already lost).
inline LevelSpec level_spec_from_json(const nlohmann::json& doc) {
  require(doc.is_object() && doc.contains("energies"),
          "level spec: expected an object with an \"energies\" array");
  const auto& energies = doc.at("energies");
  require(energies.is_array() && !energies.empty(),
          "level spec: \"energies\" must be a non-empty array");
  std::vector<Rational> values;
  for (const auto& item : energies) {
    if (item.is_number_integer())
      values.push_back(Rational{item.get<long long>(), 1});
    else if (item.is_string())
      values.push_back(parse_rational(item.get<std::string>()));
    else
      throw std::invalid_argument(
          "level spec: energies must be integers or decimal strings");
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const auto& raw = doc.at("labels");
    require(raw.is_array(), "level spec: \"labels\" must be an array");
    for (const auto& item : raw) {
      require(item.is_string(), "level spec: labels must be strings");
      labels.push_back(item.get<std::string>());
    }
  }
  return LevelSpec::from_rationals(values, std::move(labels));
}

// ---------------------------------------------------------------------------
// Microstate counting
// ---------------------------------------------------------------------------

/// How many particles sit on each level. One occupation vector is one
/// bosonic microstate; it is fermionically admissible when no level holds
/// more than one particle.
struct OccupationVector {
  std::vector<int> counts;
  int total = 0;

  bool fermionic() const {
    for (int c : counts)
      if (c > 1) return false;
    return true;
  }
};

/// Exact microstate counts at fixed particle number and total energy.
///   w_dist  : labeled (distinguishable) assignments, sum of multinomials
///   w_bose  : admissible occupation vectors
///   w_fermi : admissible occupation vectors with all counts <= 1
struct CountReport {
  int n = 0;
  Rational energy;
  long long w_dist = 0;
  long long w_bose = 0;
  long long w_fermi = 0;
  std::vector<std::pair<OccupationVector, long long>> per_occupation;
};

namespace detail {

/// N! / prod(counts!) computed as a product of binomials (always integral).
inline long long multinomial(int n, const std::vector<int>& counts) {
  long long out = 1;
  int remaining = n;
  for (int c : counts) {
    out = exact::mul(out, exact::binomial(remaining, c));
    remaining -= c;
  }
  require(remaining == 0, "multinomial: counts do not sum to n");
  return out;
}

/// Visits every composition of n over the level set, i.e. every occupation
/// vector with sum n, in lexicographic order.
inline void for_each_occupation(int levels, int n,
                                const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> counts(levels, 0);
  std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index == levels - 1) {
      counts[index] = remaining;
      visit(counts);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[index] = c;
      rec(index + 1, remaining - c);
    }
  };
  rec(0, n);
}

/// Core enumerator: tallies every occupation accepted by the predicate.
inline CountReport tally(const LevelSpec& levels, int n, const Rational& energy,
                         const std::function<bool(const std::vector<int>&)>& admit) {
  CountReport report;
  report.n = n;
  report.energy = energy;
  for_each_occupation(levels.size(), n, [&](const std::vector<int>& counts) {
    if (!admit(counts)) return;
    OccupationVector occ{counts, n};
    const long long ways = multinomial(n, counts);
    report.w_dist = exact::add(report.w_dist, ways);
    report.w_bose = exact::add(report.w_bose, 1);
    if (occ.fermionic()) report.w_fermi = exact::add(report.w_fermi, 1);
    report.per_occupation.emplace_back(std::move(occ), ways);
  });
  return report;
}

/// Exact test of sum(counts[i] * scaled[i]) / denominator == energy.
inline bool energy_matches(const LevelSpec& levels, const std::vector<int>& counts,
                           const Rational& energy) {
  long long scaled_sum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0)
      scaled_sum = exact::add(scaled_sum, exact::mul(levels.scaled[i], counts[i]));
  // scaled_sum / denominator == num / den  <=>  scaled_sum * den == num * denom
  return exact::mul(scaled_sum, energy.den) ==
         exact::mul(energy.num, levels.denominator);
}

}  // namespace detail

/// Exhaustive exact enumeration of all occupation vectors with the given
/// particle number and total energy.
inline CountReport count_microstates(const LevelSpec& levels, int n,
                                     const Rational& energy) {
  require(n >= 1 && n <= kMaxParticles, "count_microstates: particle count out of range");
  require(levels.size() <= kMaxLevels, "count_microstates: too many levels");
  return detail::tally(levels, n, energy, [&](const std::vector<int>& counts) {
    return detail::energy_matches(levels, counts, energy);
  });
}

/// The two-hydrogen-atom demo: one atom at location state psi, one at phi,
/// internal states phi_n and phi_m fixed by the total energy. The four
/// composite levels are (location, internal) pairs; configurations are
/// restricted to exactly one atom per location. With distinct internal
/// states there are 4 labeled assignments but only 2 occupation patterns;
/// with equal internal states, 2 and 1.
inline CountReport hydrogen_pair_count(bool internal_states_equal) {
  // Composite levels carry energy 10 + eps_internal with eps_n = 1 and
  // eps_m = 2, so the total energy pins the internal pair {n, m}. When the
  // internal states coincide there are only two composite states at all.
  if (internal_states_equal) {
    LevelSpec levels =
        LevelSpec::from_integers({11, 11}, {"psi:phi_n", "phi:phi_n"});
    const Rational energy{22, 1};
    return detail::tally(levels, 2, energy, [&](const std::vector<int>& counts) {
      if (counts[0] != 1 || counts[1] != 1) return false;
      return detail::energy_matches(levels, counts, energy);
    });
  }
  LevelSpec levels = LevelSpec::from_integers(
      {11, 12, 11, 12}, {"psi:phi_n", "psi:phi_m", "phi:phi_n", "phi:phi_m"});
  const Rational energy{23, 1};  // one atom carrying n, the other carrying m
  return detail::tally(levels, 2, energy, [&](const std::vector<int>& counts) {
    const int at_psi = counts[0] + counts[1];
    const int at_phi = counts[2] + counts[3];
    if (at_psi != 1 || at_phi != 1) return false;
    return detail::energy_matches(levels, counts, energy);
  });
}

// ---------------------------------------------------------------------------
// The permutation over-counting factor
// ---------------------------------------------------------------------------

/// Whether the labeled count is exactly n! times the identical count, which
/// holds precisely when no admissible occupation puts two particles on one
/// level. The first multiply-occupied occupation (if any) is the witness.
struct GibbsReport {
  bool holds = false;
  bool multiplicity_free = false;
  bool factorial_match = false;
  long long n_factorial = 1;
  CountReport counts;
  std::optional<OccupationVector> witness;
};

inline GibbsReport gibbs_check(const LevelSpec& levels, int n, const Rational& energy) {
  GibbsReport report;
  report.counts = count_microstates(levels, n, energy);
  report.n_factorial = exact::factorial(n);
  report.multiplicity_free = true;
  for (const auto& [occ, ways] : report.counts.per_occupation) {
    if (!occ.fermionic()) {
      report.multiplicity_free = false;
      if (!report.witness) report.witness = occ;
    }
  }
  report.factorial_match =
      report.counts.w_dist == exact::mul(report.n_factorial, report.counts.w_bose);
  report.holds = report.multiplicity_free && report.factorial_match;
  return report;
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

/// Dimensionless entropies (k_B = 1) of the exact counts. A zero count has
/// no logarithm; the corresponding field is absent rather than zero. The
/// identical-particle count used is the occupation-pattern count (each
/// unordered configuration once).
struct EntropyReport {
  int n = 0;
  std::optional<double> ln_w_dist;
  std::optional<double> ln_w_ident;
  double gibbs_correction = 0.0;  // ln n!
  std::optional<double> corrected;  // ln W_dist - ln n!
};

inline EntropyReport entropy_from_counts(const CountReport& counts) {
  EntropyReport report;
  report.n = counts.n;
  report.gibbs_correction = std::log(static_cast<double>(exact::factorial(counts.n)));
  if (counts.w_dist >= 1) {
    report.ln_w_dist = std::log(static_cast<double>(counts.w_dist));
    report.corrected = *report.ln_w_dist - report.gibbs_correction;
  }
  if (counts.w_bose >= 1)
    report.ln_w_ident = std::log(static_cast<double>(counts.w_bose));
  return report;
}

inline EntropyReport entropy_report(const LevelSpec& levels, int n,
                                    const Rational& energy) {
  return entropy_from_counts(count_microstates(levels, n, energy));
}

// ---------------------------------------------------------------------------
// Extensivity
// ---------------------------------------------------------------------------

/// Entropy additivity probe: the doubled system keeps each copy's particles
/// on its own (disjoint) level set with its own energy budget — the model of
/// two separated containers examined side by side.
struct ExtensivityReport {
  CountReport single;
  CountReport combined;
  double ident_gap = 0.0;             // ln W_bose(2 copies) - 2 ln W_bose(1)
  double dist_gap_uncorrected = 0.0;  // ln W_dist(2 copies) - 2 ln W_dist(1)
  double dist_gap_corrected = 0.0;    // same, after subtracting ln(2N)! and 2 ln N!
  double partition_term = 0.0;        // ln C(2N, N), the label-partition count
};

inline ExtensivityReport extensivity_experiment(const LevelSpec& levels, int n,
                                                const Rational& energy,
                                                int copies = 2) {
  require(copies == 2, "extensivity_experiment: only two copies are modeled");
  require(2 * levels.size() <= kMaxLevels,
          "extensivity_experiment: doubled level set exceeds scale cap");
  require(2 * n <= kMaxParticles,
          "extensivity_experiment: doubled particle count exceeds scale cap");

  ExtensivityReport report;
  report.single = count_microstates(levels, n, energy);
  require(report.single.w_dist >= 1 && report.single.w_bose >= 1,
          "extensivity_experiment: single copy has no admissible state");

  // Disjoint doubled level set: copy A then copy B of the same energies.
  LevelSpec doubled;
  doubled.denominator = levels.denominator;
  doubled.scaled = levels.scaled;
  doubled.scaled.insert(doubled.scaled.end(), levels.scaled.begin(), levels.scaled.end());
  for (int copy = 0; copy < 2; ++copy)
    for (int i = 0; i < levels.size(); ++i) {
      const std::string base =
          levels.labels.empty() ? ("level" + std::to_string(i)) : levels.labels[i];
      doubled.labels.push_back((copy == 0 ? "A:" : "B:") + base);
    }

  const int m = levels.size();
  const Rational total_energy{exact::mul(energy.num, 2), energy.den};
  report.combined =
      detail::tally(doubled, 2 * n, total_energy, [&](const std::vector<int>& counts) {
        std::vector<int> part_a(counts.begin(), counts.begin() + m);
        std::vector<int> part_b(counts.begin() + m, counts.end());
        int total_a = 0, total_b = 0;
        for (int c : part_a) total_a += c;
        for (int c : part_b) total_b += c;
        if (total_a != n || total_b != n) return false;
        return detail::energy_matches(levels, part_a, energy) &&
               detail::energy_matches(levels, part_b, energy);
      });

  const auto safe_log = [](long long w) { return std::log(static_cast<double>(w)); };
  report.ident_gap =
      safe_log(report.combined.w_bose) - 2.0 * safe_log(report.single.w_bose);
  report.dist_gap_uncorrected =
      safe_log(report.combined.w_dist) - 2.0 * safe_log(report.single.w_dist);
  const double ln_fact_2n = std::log(static_cast<double>(exact::factorial(2 * n)));
  const double ln_fact_n = std::log(static_cast<double>(exact::factorial(n)));
  report.dist_gap_corrected = (safe_log(report.combined.w_dist) - ln_fact_2n) -
                              2.0 * (safe_log(report.single.w_dist) - ln_fact_n);
  report.partition_term =
      std::log(static_cast<double>(exact::binomial(2 * n, n)));
  return report;
}

}  // namespace permsym

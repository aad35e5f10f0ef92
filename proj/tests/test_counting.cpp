// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "permsym/counting.hpp"
#include "test_support.hpp"

using namespace permsym;

namespace {

/// Shorthand for integer-level instances.
CountReport count_ints(const std::vector<long long>& energies, int n, long long e) {
  return count_microstates(LevelSpec::from_integers(energies), n, Rational{e, 1});
}

}  // namespace

TEST_CASE("checked 64-bit arithmetic", "[counting]") {
  CHECK(exact::add(2, 3) == 5);
  CHECK(exact::mul(-4, 5) == -20);
  CHECK(exact::factorial(0) == 1);
  CHECK(exact::factorial(6) == 720);
  CHECK(exact::factorial(20) == 2432902008176640000LL);
  CHECK(exact::binomial(6, 3) == 20);
  CHECK(exact::binomial(0, 0) == 1);
  CHECK(exact::binomial(52, 5) == 2598960);

  const long long big = 0x7FFFFFFFFFFFFFFFLL;
  CHECK_THROWS_AS(exact::add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(exact::mul(big, 2), std::overflow_error);
  CHECK_THROWS_AS(exact::factorial(21), std::invalid_argument);
  CHECK_THROWS_AS(exact::binomial(5, 7), std::invalid_argument);
  CHECK_THROWS_AS(exact::binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("exact decimal parsing", "[counting]") {
  auto is = [](const Rational& r, long long num, long long den) {
    return r.num == num && r.den == den;
  };
  CHECK(is(parse_rational("6"), 6, 1));
  CHECK(is(parse_rational("+3"), 3, 1));
  CHECK(is(parse_rational("1.5"), 15, 10));
  CHECK(is(parse_rational("0.125"), 125, 1000));
  CHECK(is(parse_rational("-2.50"), -250, 100));
  CHECK(is(parse_rational("0"), 0, 1));
  CHECK(is(parse_rational("10."), 10, 1));

  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("."), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("-"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("--1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(" 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);

  // 2^63 does not fit; neither does a 10^19 denominator.
  CHECK_THROWS_AS(parse_rational("9223372036854775808"), std::overflow_error);
  CHECK_THROWS_AS(parse_rational("0.0000000000000000001"), std::overflow_error);
}

TEST_CASE("level sets clear denominators exactly", "[counting]") {
  const LevelSpec ints = LevelSpec::from_integers({1, 2, 4}, {"a", "b", "c"});
  CHECK(ints.size() == 3);
  CHECK(ints.denominator == 1);
  CHECK(ints.scaled == std::vector<long long>{1, 2, 4});
  CHECK(ints.labels == std::vector<std::string>{"a", "b", "c"});

  const LevelSpec dec = LevelSpec::from_rationals(
      {parse_rational("0.5"), parse_rational("0.25"), parse_rational("2")});
  CHECK(dec.denominator == 100);
  CHECK(dec.scaled == std::vector<long long>{50, 25, 200});

  // Denominators that are not powers of ten still clear via the lcm.
  const LevelSpec thirds = LevelSpec::from_rationals({Rational{1, 3}, Rational{1, 2}});
  CHECK(thirds.denominator == 6);
  CHECK(thirds.scaled == std::vector<long long>{2, 3});

  CHECK_THROWS_AS(LevelSpec::from_rationals({}), std::invalid_argument);
  CHECK_THROWS_AS(LevelSpec::from_rationals({Rational{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(LevelSpec::from_integers({1, 2}, {"only-one"}), std::invalid_argument);
  CHECK_THROWS_AS(
      LevelSpec::from_integers({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}),
      std::invalid_argument);
}

TEST_CASE("level sets parse from JSON", "[counting]") {
  const auto doc = nlohmann::json::parse(
      R"({"energies": [1, "0.5", 3], "labels": ["x", "y", "z"]})");
  const LevelSpec spec = level_spec_from_json(doc);
  CHECK(spec.denominator == 10);
  CHECK(spec.scaled == std::vector<long long>{10, 5, 30});
  CHECK(spec.labels == std::vector<std::string>{"x", "y", "z"});

  const LevelSpec unlabeled =
      level_spec_from_json(nlohmann::json::parse(R"({"energies": [2, 3]})"));
  CHECK(unlabeled.labels.empty());

  // JSON floats have already lost their decimal intent and are rejected.
  CHECK_THROWS_AS(level_spec_from_json(nlohmann::json::parse(R"({"energies": [1.5]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(level_spec_from_json(nlohmann::json::parse(R"({"energies": []})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(level_spec_from_json(nlohmann::json::parse(R"({"energies": 5})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(level_spec_from_json(nlohmann::json::parse(R"([1, 2])")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      level_spec_from_json(nlohmann::json::parse(R"({"energies": [1], "labels": [2]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(level_spec_from_json(nlohmann::json::parse(
                      R"({"energies": [1, 2], "labels": ["a"]})")),
                  std::invalid_argument);
}

TEST_CASE("microstate counts on hand-checked instances", "[counting]") {
  // Three equally spaced levels: the energy budget 6 is met both by one
  // particle per level (6 labeled ways) and by all three on the middle level.
  const CountReport spaced = count_ints({1, 2, 3}, 3, 6);
  CHECK(spaced.w_dist == 7);
  CHECK(spaced.w_bose == 2);
  CHECK(spaced.w_fermi == 1);
  REQUIRE(spaced.per_occupation.size() == 2);
  CHECK(spaced.per_occupation[0].first.counts == std::vector<int>{1, 1, 1});
  CHECK(spaced.per_occupation[0].second == 6);
  CHECK(spaced.per_occupation[1].first.counts == std::vector<int>{0, 3, 0});
  CHECK(spaced.per_occupation[1].second == 1);

  // A gapped ladder admits only the all-distinct configuration.
  const CountReport ladder = count_ints({1, 2, 4}, 3, 7);
  CHECK(ladder.w_dist == 6);
  CHECK(ladder.w_bose == 1);
  CHECK(ladder.w_fermi == 1);

  // Two degenerate levels: all two-particle configurations have energy 2.
  const CountReport degen = count_ints({1, 1}, 2, 2);
  CHECK(degen.w_dist == 4);
  CHECK(degen.w_bose == 3);
  CHECK(degen.w_fermi == 1);

  // Single level, both particles forced onto it.
  const CountReport mono = count_ints({5}, 2, 10);
  CHECK(mono.w_dist == 1);
  CHECK(mono.w_bose == 1);
  CHECK(mono.w_fermi == 0);

  // Two particles over four levels, two ways to split the budget 5.
  const CountReport four = count_ints({1, 2, 3, 4}, 2, 5);
  CHECK(four.w_dist == 4);
  CHECK(four.w_bose == 2);
  CHECK(four.w_fermi == 2);

  // Larger instance with no fermionic configuration at all.
  const CountReport packed = count_ints({1, 2, 3}, 4, 8);
  CHECK(packed.w_dist == 19);
  CHECK(packed.w_bose == 3);
  CHECK(packed.w_fermi == 0);

  // Unreachable energy.
  const CountReport empty = count_ints({1, 2}, 2, 99);
  CHECK(empty.w_dist == 0);
  CHECK(empty.w_bose == 0);
  CHECK(empty.per_occupation.empty());

  // Decimal levels compare exactly, never through floating point.
  const LevelSpec halves = LevelSpec::from_rationals(
      {parse_rational("0.5"), parse_rational("1.0")});
  const CountReport dec = count_microstates(halves, 2, parse_rational("1.5"));
  CHECK(dec.w_dist == 2);
  CHECK(dec.w_bose == 1);
  CHECK(dec.w_fermi == 1);

  CHECK_THROWS_AS(count_ints({1, 2}, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(count_ints({1, 2}, 9, 2), std::invalid_argument);
  LevelSpec too_wide;
  too_wide.scaled.assign(13, 1);
  CHECK_THROWS_AS(count_microstates(too_wide, 2, Rational{2, 1}),
                  std::invalid_argument);
}

TEST_CASE("microstate counts agree with brute-force assignment enumeration",
          "[counting]") {
  const std::vector<std::vector<long long>> level_sets{
      {1, 2, 3}, {1, 2, 4}, {1, 1}, {1, 2, 3, 4}, {2, 2, 3}, {1, 3, 3, 7}};
  for (const auto& energies : level_sets) {
    for (int n = 1; n <= 4; ++n) {
      long long lo = 0, hi = 0;
      for (long long e : energies) {
        lo = std::min(lo, e * n);
        hi = std::max(hi, e * n);
      }
      for (long long e = lo; e <= hi; ++e) {
        const testsupport::BruteCounts brute =
            testsupport::brute_force_counts(energies, n, e);
        const CountReport got = count_ints(energies, n, e);
        INFO("levels=" << energies.size() << " n=" << n << " E=" << e);
        CHECK(got.w_dist == brute.w_dist);
        CHECK(got.w_bose == brute.w_bose);
        CHECK(got.w_fermi == brute.w_fermi);
        // Per-occupation multiplicities match the grouped assignments.
        for (const auto& [occ, ways] : got.per_occupation) {
          REQUIRE(brute.assignments_per_occupation.count(occ.counts) == 1);
          CHECK(brute.assignments_per_occupation.at(occ.counts) == ways);
        }
        CHECK(got.per_occupation.size() == brute.assignments_per_occupation.size());
      }
    }
  }
}

TEST_CASE("per-occupation table is consistent with the totals", "[counting]") {
  const CountReport report = count_ints({1, 2, 3, 4}, 4, 10);
  long long sum = 0;
  long long fermi = 0;
  for (const auto& [occ, ways] : report.per_occupation) {
    CHECK(occ.total == 4);
    int occ_sum = 0;
    for (int c : occ.counts) occ_sum += c;
    CHECK(occ_sum == 4);
    sum += ways;
    if (occ.fermionic()) ++fermi;
  }
  CHECK(sum == report.w_dist);
  CHECK(static_cast<long long>(report.per_occupation.size()) == report.w_bose);
  CHECK(fermi == report.w_fermi);
}

TEST_CASE("two-atom demo counts", "[counting]") {
  // Distinct internal states: four labeled assignments, two patterns.
  const CountReport distinct = hydrogen_pair_count(false);
  CHECK(distinct.n == 2);
  CHECK(distinct.w_dist == 4);
  CHECK(distinct.w_bose == 2);
  CHECK(distinct.w_fermi == 2);

  // Equal internal states: swapping the atoms changes nothing at all.
  const CountReport same = hydrogen_pair_count(true);
  CHECK(same.w_dist == 2);
  CHECK(same.w_bose == 1);
  CHECK(same.w_fermi == 1);

  // Entropy overcount in the distinct case is exactly ln 2.
  const EntropyReport ent = entropy_from_counts(distinct);
  REQUIRE(ent.ln_w_dist.has_value());
  REQUIRE(ent.ln_w_ident.has_value());
  CHECK(*ent.ln_w_dist - *ent.ln_w_ident == std::log(2.0));
}

TEST_CASE("factorial relation between labeled and identical counts", "[counting]") {
  SECTION("holds whenever no level is multiply occupied") {
    const GibbsReport r =
        gibbs_check(LevelSpec::from_integers({1, 2, 4}), 3, Rational{7, 1});
    CHECK(r.holds);
    CHECK(r.multiplicity_free);
    CHECK(r.factorial_match);
    CHECK(r.n_factorial == 6);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.counts.w_dist == 6);

    // Binary ladder: the only way to reach 2^n - 1 is one particle per
    // occupied level, so the relation holds for every particle number.
    const std::vector<long long> binary{1, 2, 4, 8, 16, 32};
    for (int n = 2; n <= 6; ++n) {
      const std::vector<long long> levels(binary.begin(), binary.begin() + n);
      const long long target = (1LL << n) - 1;
      const GibbsReport b =
          gibbs_check(LevelSpec::from_integers(levels), n, Rational{target, 1});
      INFO("n=" << n);
      CHECK(b.holds);
      CHECK(b.counts.w_dist == exact::factorial(n));
      CHECK(b.counts.w_bose == 1);
      CHECK(b.counts.w_fermi == 1);
    }

    // A single particle is trivially multiplicity-free.
    CHECK(gibbs_check(LevelSpec::from_integers({1, 2, 3}), 1, Rational{2, 1}).holds);
  }

  SECTION("fails with a witness when a level holds two or more particles") {
    const GibbsReport degen =
        gibbs_check(LevelSpec::from_integers({1, 1}), 2, Rational{2, 1});
    CHECK_FALSE(degen.holds);
    CHECK_FALSE(degen.multiplicity_free);
    CHECK_FALSE(degen.factorial_match);  // 4 != 2! * 3
    REQUIRE(degen.witness.has_value());
    CHECK(degen.witness->counts == std::vector<int>{2, 0});

    const GibbsReport spaced =
        gibbs_check(LevelSpec::from_integers({1, 2, 3}), 3, Rational{6, 1});
    CHECK_FALSE(spaced.holds);
    CHECK_FALSE(spaced.factorial_match);  // 7 != 3! * 2
    REQUIRE(spaced.witness.has_value());
    CHECK(spaced.witness->counts == std::vector<int>{0, 3, 0});
  }
}

TEST_CASE("entropy from exact counts", "[counting]") {
  SECTION("corrected labeled entropy equals the identical-particle entropy "
          "exactly when the factorial relation holds") {
    const EntropyReport r =
        entropy_report(LevelSpec::from_integers({1, 2, 4}), 3, Rational{7, 1});
    REQUIRE(r.ln_w_dist.has_value());
    REQUIRE(r.ln_w_ident.has_value());
    REQUIRE(r.corrected.has_value());
    CHECK(r.gibbs_correction == std::log(6.0));
    // W_dist = 6 = 3! and W_ident = 1: the corrected value vanishes exactly.
    CHECK(*r.corrected == 0.0);
    CHECK(*r.ln_w_ident == 0.0);
  }

  SECTION("degenerate case keeps the residual mismatch") {
    const EntropyReport r =
        entropy_report(LevelSpec::from_integers({1, 2, 3}), 3, Rational{6, 1});
    REQUIRE(r.corrected.has_value());
    // ln 7 - ln 6 vs ln 2: correction under-shoots for multiply occupied levels.
    CHECK(*r.corrected == Catch::Approx(std::log(7.0) - std::log(6.0)).margin(1e-15));
    CHECK(*r.ln_w_ident == Catch::Approx(std::log(2.0)).margin(1e-15));
    CHECK(*r.corrected < *r.ln_w_ident);
  }

  SECTION("zero counts have no logarithm") {
    const EntropyReport r =
        entropy_report(LevelSpec::from_integers({1, 2}), 2, Rational{99, 1});
    CHECK(r.n == 2);
    CHECK_FALSE(r.ln_w_dist.has_value());
    CHECK_FALSE(r.ln_w_ident.has_value());
    CHECK_FALSE(r.corrected.has_value());
    CHECK(r.gibbs_correction == std::log(2.0));
  }
}

TEST_CASE("entropy additivity for two separated copies", "[counting]") {
  SECTION("unique-occupation instance") {
    const ExtensivityReport r = extensivity_experiment(
        LevelSpec::from_integers({1, 2, 4}, {"e1", "e2", "e4"}), 3, Rational{7, 1});
    CHECK(r.single.w_dist == 6);
    CHECK(r.single.w_bose == 1);
    CHECK(r.combined.w_bose == 1);
    CHECK(r.combined.w_dist == 720);  // C(6,3) * 6 * 6
    // Identical-particle entropy is exactly additive.
    CHECK(r.ident_gap == 0.0);
    // Labeled entropy over-counts by exactly the label-partition term.
    CHECK(r.dist_gap_uncorrected == Catch::Approx(r.partition_term).margin(1e-12));
    CHECK(r.partition_term == Catch::Approx(std::log(20.0)).margin(1e-14));
    // Subtracting ln N! from each side removes the excess entirely.
    CHECK(r.dist_gap_corrected == 0.0);
  }

  SECTION("degenerate instance") {
    const ExtensivityReport r =
        extensivity_experiment(LevelSpec::from_integers({1, 2, 3}), 3, Rational{6, 1});
    CHECK(r.single.w_bose == 2);
    CHECK(r.combined.w_bose == 4);
    CHECK(r.combined.w_dist == 980);  // C(6,3) * 7 * 7
    CHECK(std::abs(r.ident_gap) <= 1e-14);
    CHECK(std::abs(r.dist_gap_corrected) <= 1e-12);
    CHECK(r.dist_gap_uncorrected ==
          Catch::Approx(r.partition_term).margin(1e-12));
  }

  SECTION("single level") {
    const ExtensivityReport r =
        extensivity_experiment(LevelSpec::from_integers({5}), 2, Rational{10, 1});
    CHECK(r.single.w_dist == 1);
    CHECK(r.combined.w_dist == 6);  // C(4,2)
    CHECK(r.ident_gap == 0.0);
    CHECK(r.dist_gap_uncorrected == Catch::Approx(r.partition_term).margin(1e-14));
    CHECK(std::abs(r.dist_gap_corrected) <= 1e-12);
  }

  SECTION("scale and argument validation") {
    const LevelSpec ok = LevelSpec::from_integers({1, 2, 4});
    CHECK_THROWS_AS(extensivity_experiment(ok, 3, Rational{7, 1}, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(extensivity_experiment(ok, 5, Rational{7, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        extensivity_experiment(LevelSpec::from_integers({1, 2, 3, 4, 5, 6, 7}), 2,
                               Rational{3, 1}),
        std::invalid_argument);
    // No admissible single-copy state: nothing to compare.
    CHECK_THROWS_AS(extensivity_experiment(ok, 2, Rational{99, 1}),
                    std::invalid_argument);
  }
}

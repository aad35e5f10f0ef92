// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

#include "permsym/scenarios.hpp"
#include "test_support.hpp"

using namespace permsym;

namespace {

nlohmann::json load_json(const std::string& relative) {
  std::ifstream in(testsupport::source_path(relative));
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("gaussian packet overlap", "[scenarios]") {
  SECTION("coincident packets overlap completely") {
    CHECK(gaussian_overlap({0.0, 1.0}) == 1.0);
    CHECK(gaussian_overlap({0.0, 0.3}) == 1.0);
  }

  SECTION("four standard deviations of separation give exp(-2)") {
    CHECK(gaussian_overlap({4.0, 1.0}) ==
          Catch::Approx(0.1353352832366127).margin(1e-16));
    CHECK(gaussian_overlap({2.0, 0.5}) ==
          Catch::Approx(std::exp(-2.0)).margin(1e-16));
  }

  SECTION("closed form matches direct quadrature") {
    for (double sigma : {1.0, 0.7, 2.5}) {
      for (double ratio : {0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double d = ratio * sigma;
        const double closed = gaussian_overlap({d, sigma});
        const double quad = testsupport::gaussian_overlap_quadrature(d, sigma);
        INFO("sigma=" << sigma << " separation=" << d);
        CHECK(std::abs(closed - quad) <= 1e-8);
      }
    }
  }

  SECTION("overlap decreases monotonically with separation") {
    double previous = 2.0;
    for (double d : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double value = gaussian_overlap({d, 1.0});
      CHECK(value < previous);
      previous = value;
      CHECK(value >= 0.0);
      CHECK(value <= 1.0);
    }
  }

  SECTION("spec parsing and validation") {
    const GaussianSpec spec =
        gaussian_spec_from_json(nlohmann::json::parse(R"({"separation": 2.0, "sigma": 0.5})"));
    CHECK(spec.separation == 2.0);
    CHECK(spec.sigma == 0.5);
    CHECK_THROWS_AS(gaussian_spec_from_json(nlohmann::json::parse(R"({"sigma": 1.0})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian_overlap({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_overlap({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_overlap({-1.0, 1.0}), std::invalid_argument);
  }
}

TEST_CASE("localized combinations of even and odd grid states", "[scenarios]") {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXd even(3), odd(3);
  even << r, 0.0, r;
  odd << r, 0.0, -r;
  const LocalizedPair pair = localized_states(even, odd);
  CHECK(std::abs(pair.left(0) - 1.0) <= 1e-15);
  CHECK(std::abs(pair.left(2)) <= 1e-15);
  CHECK(std::abs(pair.right(2) - 1.0) <= 1e-15);
  CHECK(pair.left_mass == Catch::Approx(1.0).margin(1e-15));
  CHECK(pair.right_mass == Catch::Approx(1.0).margin(1e-15));
  CHECK(std::abs(pair.lr_overlap) <= 1e-15);
  CHECK(pair.mass_closure <= 1e-15);

  Eigen::VectorXd four(4);
  four.setZero();
  CHECK_THROWS_AS(localized_states(four, four), std::invalid_argument);
  Eigen::VectorXd five(5);
  five.setZero();
  CHECK_THROWS_AS(localized_states(even, five), std::invalid_argument);
}

TEST_CASE("double-well spec handling", "[scenarios]") {
  SECTION("presets") {
    const WellSpec none = well_preset("none");
    CHECK(none.barrier_height == 0.0);
    CHECK(none.grid_points == 2001);
    CHECK(none.domain_half_width == 8.0);
    CHECK(none.barrier_half_width == 1.0);
    CHECK(none.well_depth == 0.0);
    CHECK(well_preset("medium").barrier_height == 1.0);
    CHECK(well_preset("high").barrier_height == 8.0);
    CHECK_THROWS_AS(well_preset("bogus"), std::invalid_argument);
  }

  SECTION("shipped config files mirror the compiled presets") {
    for (const std::string name : {"none", "medium", "high"}) {
      const WellSpec from_file =
          well_spec_from_json(load_json("data/doublewell_" + name + ".json"));
      const WellSpec compiled = well_preset(name);
      INFO("preset " << name);
      CHECK(from_file.grid_points == compiled.grid_points);
      CHECK(from_file.domain_half_width == compiled.domain_half_width);
      CHECK(from_file.barrier_height == compiled.barrier_height);
      CHECK(from_file.barrier_half_width == compiled.barrier_half_width);
      CHECK(from_file.well_depth == compiled.well_depth);
    }
  }

  SECTION("validation") {
    WellSpec spec;  // defaults are valid
    CHECK_NOTHROW(validate(spec));
    spec.grid_points = 2000;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.grid_points = 101;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = WellSpec{};
    spec.barrier_half_width = 8.0;  // touches the wall
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = WellSpec{};
    spec.barrier_height = -1.0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = WellSpec{};
    spec.domain_half_width = 0.0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    CHECK_THROWS_AS(
        well_spec_from_json(nlohmann::json::parse(R"({"grid_points": 2001})")),
        nlohmann::json::exception);
  }
}

TEST_CASE("double-well spectra against an independent solver", "[scenarios]") {
  // Frozen values from a second tridiagonal eigensolver run on the same
  // discretization (same grid, independent implementation).
  struct Frozen {
    const char* preset;
    double e_even, e_odd, splitting, left_mass;
  };
  const Frozen table[] = {
      {"none", 0.03855313427617459, 0.15421244218605973, 0.11565930790988513,
       0.9244129203014616},
      {"medium", 0.1416946623505556, 0.16374008334683482, 0.022045420996279208,
       0.9945950805135576},
      {"high", 0.18247023688850955, 0.182724757633017, 0.000254520744507436,
       0.9999954768426093},
  };

  double previous_split = 1.0;
  for (const Frozen& want : table) {
    const WellReport got = solve_double_well(well_preset(want.preset));
    INFO("preset " << want.preset);
    CHECK(got.e_even == Catch::Approx(want.e_even).margin(1e-9));
    CHECK(got.e_odd == Catch::Approx(want.e_odd).margin(1e-9));
    CHECK(got.splitting == Catch::Approx(want.splitting).margin(1e-9));
    CHECK(got.left_mass == Catch::Approx(want.left_mass).margin(1e-8));
    CHECK(got.right_mass == Catch::Approx(want.left_mass).margin(1e-8));

    CHECK(got.e_even < got.e_odd);
    CHECK(got.residual_even <= 1e-8);
    CHECK(got.residual_odd <= 1e-8);
    CHECK(std::abs(got.lr_overlap) <= 1e-12);
    CHECK(got.mass_closure <= 1e-10);
    CHECK(got.grid_spacing == Catch::Approx(16.0 / 2002.0).margin(1e-15));

    // Raising the barrier tightens the splitting.
    CHECK(got.splitting < previous_split);
    previous_split = got.splitting;

    // Unit-norm eigenvectors and pinned signs.
    CHECK(got.phi_even.norm() == Catch::Approx(1.0).margin(1e-12));
    CHECK(got.phi_odd.norm() == Catch::Approx(1.0).margin(1e-12));
    CHECK(got.phi_even.sum() > 0.0);
    double left_lobe = 0.0;
    for (int i = 0; i < (got.spec.grid_points - 1) / 2; ++i)
      left_lobe += got.phi_odd(i);
    CHECK(left_lobe > 0.0);
  }

  SECTION("zero barrier reproduces the box-spectrum gap") {
    const WellReport flat = solve_double_well(well_preset("none"));
    const double width = 2.0 * flat.spec.domain_half_width;
    const double analytic_gap = 3.0 * M_PI * M_PI / (width * width);
    CHECK(std::abs(flat.splitting - analytic_gap) / analytic_gap < 0.02);
  }

  SECTION("high barrier localizes the packets almost completely") {
    const WellReport high = solve_double_well(well_preset("high"));
    CHECK(high.left_mass >= 0.99);
    CHECK(high.right_mass >= 0.99);
    // Localized states are exchanged by reflection, up to the solver's
    // parity guarantee on the underlying eigenvectors.
    const Eigen::VectorXd mirror = high.left_state.reverse();
    CHECK((mirror - high.right_state).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("opposite spins differentiate any spatial pair", "[scenarios]") {
  SECTION("identical spatial states with default up/down spins") {
    const StateVector psi = random_state(3, RandomSpec{800, 0});
    const SpinOverlapReport r = spin_differentiating(psi, psi);
    CHECK(r.magnitude == 0.0);
    CHECK(r.verdict.verdict == Differentiation::kExact);
  }

  SECTION("one hundred random non-orthogonal spatial pairs") {
    for (int t = 0; t < 100; ++t) {
      const int d = 2 + (t % 3);
      const StateVector psi = random_state(d, RandomSpec{801, (std::uint64_t)t * 2});
      const StateVector phi = random_state(d, RandomSpec{801, (std::uint64_t)t * 2 + 1});
      const SpinOverlapReport r = spin_differentiating(psi, phi);
      CHECK(r.magnitude <= 1e-15);
      CHECK(r.verdict.verdict == Differentiation::kExact);
    }
  }

  SECTION("equal spins restore the spatial overlap") {
    const StateVector psi = random_state(4, RandomSpec{802, 0});
    const StateVector up = basis_state(2, 0);
    const SpinOverlapReport same = spin_differentiating(psi, psi, up, up);
    CHECK(same.magnitude == Catch::Approx(1.0).margin(1e-14));
    CHECK(same.verdict.verdict == Differentiation::kNotDifferentiating);
  }

  SECTION("overlap factorizes into spatial and spin parts") {
    for (int t = 0; t < 20; ++t) {
      const StateVector psi = random_state(3, RandomSpec{803, (std::uint64_t)t * 4});
      const StateVector phi = random_state(3, RandomSpec{803, (std::uint64_t)t * 4 + 1});
      const StateVector sa = random_state(2, RandomSpec{803, (std::uint64_t)t * 4 + 2});
      const StateVector sb = random_state(2, RandomSpec{803, (std::uint64_t)t * 4 + 3});
      const SpinOverlapReport r = spin_differentiating(psi, phi, sa, sb);
      const double factored = std::abs(inner(psi, phi)) * std::abs(inner(sa, sb));
      CHECK(std::abs(r.magnitude - factored) <= 1e-12);
    }
  }

  SECTION("input validation") {
    const StateVector psi = random_state(3, RandomSpec{804, 0});
    CHECK_THROWS_AS(spin_differentiating(psi, random_state(4, RandomSpec{804, 1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(spin_differentiating(psi, psi, basis_state(3, 0), basis_state(2, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("the singlet is the antisymmetric up-down pair", "[scenarios]") {
  const TwoParticleState s = singlet();
  CHECK(s.kind == PairKind::kIdentical);
  CHECK(s.lambda == -1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.vector.amps(0)) <= 1e-15);
  CHECK(std::abs(s.vector.amps(1) - Complex(r)) <= 1e-15);
  CHECK(std::abs(s.vector.amps(2) + Complex(r)) <= 1e-15);
  CHECK(std::abs(s.vector.amps(3)) <= 1e-15);
  CHECK(norm(s.vector) == Catch::Approx(1.0).margin(1e-15));

  const Operator pi = permutator(2);
  const Vector residual = pi.mat * s.vector.amps + s.vector.amps;
  CHECK(residual.cwiseAbs().maxCoeff() <= 1e-12);
}

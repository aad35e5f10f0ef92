// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>
#include <lapacke.h>

#include "permsym/common.hpp"
#include "permsym/hilbert.hpp"
#include "permsym/observables.hpp"
#include "permsym/permutation.hpp"

namespace permsym {

// ---------------------------------------------------------------------------
// Gaussian wave-packet overlap
// ---------------------------------------------------------------------------

/// Two identical 1D Gaussian packets a distance `separation` apart. `sigma`
/// is the standard deviation of the probability density |psi|^2, i.e.
/// psi(x) = (2 pi sigma^2)^(-1/4) exp(-(x - x0)^2 / (4 sigma^2)).
struct GaussianSpec {
  double separation = 0.0;
  double sigma = 1.0;
};

inline GaussianSpec gaussian_spec_from_json(const nlohmann::json& doc) {
  require(doc.is_object() && doc.contains("separation") && doc.contains("sigma"),
          "gaussian spec: expected {\"separation\": ..., \"sigma\": ...}");
  GaussianSpec spec;
  spec.separation = doc.at("separation").get<double>();
  spec.sigma = doc.at("sigma").get<double>();
  return spec;
}

/// <psi_0 | psi_D> = exp(-D^2 / (8 sigma^2)) under the convention above.
inline double gaussian_overlap(const GaussianSpec& spec) {
  require(spec.sigma > 0.0, "gaussian_overlap: sigma must be positive");
  require(spec.separation >= 0.0, "gaussian_overlap: separation must be >= 0");
  const double d = spec.separation;
  return std::exp(-d * d / (8.0 * spec.sigma * spec.sigma));
}

// ---------------------------------------------------------------------------
// Symmetric double square well
// ---------------------------------------------------------------------------

/// 1D particle (units hbar^2 / 2m = 1) on [-domain_half_width,
/// +domain_half_width] with hard walls, a rectangular barrier of the given
/// height for |x| <= barrier_half_width, and floor well_depth outside it.
struct WellSpec {
  int grid_points = 2001;  // interior points; odd so a grid point sits at x=0
  double domain_half_width = 8.0;
  double barrier_height = 0.0;
  double barrier_half_width = 1.0;
  double well_depth = 0.0;
};

inline void validate(const WellSpec& spec) {
  require(spec.grid_points >= 201, "well spec: grid_points must be >= 201");
  require(spec.grid_points % 2 == 1, "well spec: grid_points must be odd");
  require(spec.domain_half_width > 0.0, "well spec: domain_half_width must be > 0");
  require(spec.barrier_height >= 0.0, "well spec: barrier_height must be >= 0");
  require(spec.barrier_half_width > 0.0 &&
              spec.barrier_half_width < spec.domain_half_width,
          "well spec: barrier must fit strictly inside the domain");
  require(std::isfinite(spec.well_depth), "well spec: well_depth must be finite");
}

inline WellSpec well_spec_from_json(const nlohmann::json& doc) {
  require(doc.is_object(), "well spec: expected a JSON object");
  WellSpec spec;
  spec.grid_points = doc.at("grid_points").get<int>();
  spec.domain_half_width = doc.at("domain_half_width").get<double>();
  spec.barrier_height = doc.at("barrier_height").get<double>();
  spec.barrier_half_width = doc.at("barrier_half_width").get<double>();
  if (doc.contains("well_depth")) spec.well_depth = doc.at("well_depth").get<double>();
  validate(spec);
  return spec;
}

/// The three shipped barrier heights; parameter values are mirrored in the
/// data/doublewell_*.json config files.
inline WellSpec well_preset(const std::string& name) {
  WellSpec spec;  // grid 2001, half-width 8, barrier half-width 1, floor 0
  if (name == "none")
    spec.barrier_height = 0.0;
  else if (name == "medium")
    spec.barrier_height = 1.0;
  else if (name == "high")
    spec.barrier_height = 8.0;
  else
    throw std::invalid_argument("well_preset: unknown preset '" + name + "'");
  return spec;
}

/// Left/right wave packets built from the lowest even/odd eigenstates.
struct LocalizedPair {
  Eigen::VectorXd left;   // (even + odd) / sqrt(2)
  Eigen::VectorXd right;  // (even - odd) / sqrt(2)
  double left_mass = 0.0;   // weight of `left` on the left half-domain
  double right_mass = 0.0;  // weight of `right` on the right half-domain
  double lr_overlap = 0.0;  // <left, right>, zero for an orthonormal input pair
  double mass_closure = 0.0;  // worst |left weight + right weight - 1|
};

namespace detail {
/// Grid weight of v on one half of a symmetric odd-size grid; the center
/// point contributes half to each side.
inline double half_mass(const Eigen::VectorXd& v, bool left_half) {
  const int n = static_cast<int>(v.size());
  const int c = (n - 1) / 2;
  double mass = 0.5 * v(c) * v(c);
  if (left_half)
    for (int i = 0; i < c; ++i) mass += v(i) * v(i);
  else
    for (int i = c + 1; i < n; ++i) mass += v(i) * v(i);
  return mass;
}
}  // namespace detail

inline LocalizedPair localized_states(const Eigen::VectorXd& even,
                                      const Eigen::VectorXd& odd) {
  require(even.size() == odd.size() && even.size() >= 3,
          "localized_states: mismatched or too-short grids");
  require(even.size() % 2 == 1, "localized_states: grid size must be odd");
  LocalizedPair pair;
  pair.left = (even + odd) / std::sqrt(2.0);
  pair.right = (even - odd) / std::sqrt(2.0);
  pair.left_mass = detail::half_mass(pair.left, true);
  pair.right_mass = detail::half_mass(pair.right, false);
  pair.lr_overlap = pair.left.dot(pair.right);
  const double closure_left =
      std::abs(pair.left_mass + detail::half_mass(pair.left, false) - 1.0);
  const double closure_right =
      std::abs(pair.right_mass + detail::half_mass(pair.right, true) - 1.0);
  pair.mass_closure = std::max(closure_left, closure_right);
  return pair;
}

/// Lowest two eigenstates of the double well plus the localized +-
/// combinations. Eigenvectors are unit grid vectors (sum of squares 1).
struct WellReport {
  WellSpec spec;
  double grid_spacing = 0.0;
  double e_even = 0.0;
  double e_odd = 0.0;
  double splitting = 0.0;  // e_odd - e_even
  double residual_even = 0.0;
  double residual_odd = 0.0;
  Eigen::VectorXd phi_even;
  Eigen::VectorXd phi_odd;
  Eigen::VectorXd left_state;
  Eigen::VectorXd right_state;
  double left_mass = 0.0;
  double right_mass = 0.0;
  double lr_overlap = 0.0;
  double mass_closure = 0.0;
};

namespace detail {
inline Eigen::VectorXd reflected(const Eigen::VectorXd& v) {
  return v.reverse();
}

/// || H v - E v ||_2 for the tridiagonal H given by (diag, off).
inline double tridiag_residual(const std::vector<double>& diag,
                               const std::vector<double>& off,
                               const Eigen::VectorXd& v, double energy) {
  const int n = static_cast<int>(diag.size());
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double hv = diag[i] * v(i);
    if (i > 0) hv += off[i - 1] * v(i - 1);
    if (i + 1 < n) hv += off[i] * v(i + 1);
    const double r = hv - energy * v(i);
    sum += r * r;
  }
  return std::sqrt(sum);
}
}  // namespace detail

/// Three-point finite differences with Dirichlet walls; the two lowest
/// eigenpairs come from LAPACK's tridiagonal RRR solver. Parity about the
/// center is identified from the reflection residual, and signs are pinned
/// (positive total sum for the even state, positive left lobe for the odd
/// one) so reports are deterministic.
inline WellReport solve_double_well(const WellSpec& spec) {
  validate(spec);
  const int n = spec.grid_points;
  const double length = spec.domain_half_width;
  const double h = 2.0 * length / (n + 1);
  const double kinetic = 1.0 / (h * h);

  std::vector<double> diag(n), off(n - 1, -kinetic);
  for (int i = 0; i < n; ++i) {
    const double x = -length + (i + 1) * h;
    const double v = std::abs(x) <= spec.barrier_half_width ? spec.barrier_height
                                                            : spec.well_depth;
    diag[i] = 2.0 * kinetic + v;
  }

  std::vector<double> diag_work = diag;
  std::vector<double> off_work(off.begin(), off.end());
  off_work.push_back(0.0);  // stevr wants length n scratch for E
  std::vector<double> eigenvalues(n, 0.0);
  std::vector<double> z(static_cast<std::size_t>(n) * 2, 0.0);
  std::vector<lapack_int> isuppz(4, 0);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', n, diag_work.data(), off_work.data(), 0.0, 0.0,
      1, 2, 0.0, &found, eigenvalues.data(), z.data(), n, isuppz.data());
  require(info == 0 && found == 2, "solve_double_well: eigensolver failed");

  Eigen::VectorXd v0 = Eigen::Map<Eigen::VectorXd>(z.data(), n);
  Eigen::VectorXd v1 = Eigen::Map<Eigen::VectorXd>(z.data() + n, n);
  v0 /= v0.norm();
  v1 /= v1.norm();

  // Parity identification: the ground state must be reflection-even and the
  // first excited state reflection-odd, or the input is not the symmetric
  // problem this report promises.
  const double even_score0 = (v0 - detail::reflected(v0)).norm();
  const double odd_score1 = (v1 + detail::reflected(v1)).norm();
  require(even_score0 <= 1e-6,
          "solve_double_well: ground state is not reflection-even");
  require(odd_score1 <= 1e-6,
          "solve_double_well: first excited state is not reflection-odd");

  if (v0.sum() < 0.0) v0 = -v0;
  double left_lobe = 0.0;
  for (int i = 0; i < (n - 1) / 2; ++i) left_lobe += v1(i);
  if (left_lobe < 0.0) v1 = -v1;

  WellReport report;
  report.spec = spec;
  report.grid_spacing = h;
  report.e_even = eigenvalues[0];
  report.e_odd = eigenvalues[1];
  report.splitting = report.e_odd - report.e_even;
  require(report.splitting >= 0.0, "solve_double_well: eigenvalue order violated");
  report.residual_even = detail::tridiag_residual(diag, off, v0, report.e_even);
  report.residual_odd = detail::tridiag_residual(diag, off, v1, report.e_odd);
  require(report.residual_even <= 1e-8 && report.residual_odd <= 1e-8,
          "solve_double_well: eigenpair residual exceeds 1e-8");
  report.phi_even = std::move(v0);
  report.phi_odd = std::move(v1);

  const LocalizedPair pair = localized_states(report.phi_even, report.phi_odd);
  report.left_state = pair.left;
  report.right_state = pair.right;
  report.left_mass = pair.left_mass;
  report.right_mass = pair.right_mass;
  report.lr_overlap = pair.lr_overlap;
  report.mass_closure = pair.mass_closure;
  return report;
}

// ---------------------------------------------------------------------------
// Spin as the differentiating degree of freedom
// ---------------------------------------------------------------------------

struct SpinOverlapReport {
  Complex overlap;          // <psi (x) spin_a, phi (x) spin_b>
  double magnitude = 0.0;
  DifferentiationVerdict verdict;
};

/// Opposite spins make any two one-particle states differentiating, no
/// matter how much the spatial parts overlap: the tensor inner product
/// factorizes and the spin factor vanishes.
inline SpinOverlapReport spin_differentiating(
    const StateVector& psi, const StateVector& phi, const StateVector& spin_a,
    const StateVector& spin_b, double threshold = kDefaultFappThreshold) {
  require(psi.dim() == phi.dim(), "spin_differentiating: spatial dim mismatch");
  require(spin_a.dim() == 2 && spin_b.dim() == 2,
          "spin_differentiating: spin factors must have dimension 2");
  const StateVector a = tensor_state(normalize(psi), normalize(spin_a));
  const StateVector b = tensor_state(normalize(phi), normalize(spin_b));
  SpinOverlapReport report;
  report.overlap = inner(a, b);
  report.magnitude = std::abs(report.overlap);
  report.verdict = classify(a, b, threshold);
  return report;
}

/// Default spins: up for psi, down for phi.
inline SpinOverlapReport spin_differentiating(
    const StateVector& psi, const StateVector& phi,
    double threshold = kDefaultFappThreshold) {
  return spin_differentiating(psi, phi, basis_state(2, 0), basis_state(2, 1),
                              threshold);
}

/// The two-spin singlet (0, 1/sqrt(2), -1/sqrt(2), 0): the antisymmetrized
/// pair of up and down, an exchange eigenvector with eigenvalue -1.
inline TwoParticleState singlet() {
  return identical_pair_state(basis_state(2, 0), basis_state(2, 1),
                              SymmetryClass::kFermion);
}

}  // namespace permsym

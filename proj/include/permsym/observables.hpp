// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "permsym/common.hpp"
#include "permsym/hilbert.hpp"
#include "permsym/permutation.hpp"

namespace permsym {

// Overlap below which two one-particle states are treated as exactly
// distinguishable, and the default practical ("for all practical purposes")
// threshold above it.
inline constexpr double kExactOverlapTol = 1e-12;
inline constexpr double kDefaultFappThreshold = 1e-6;

// ---------------------------------------------------------------------------
// Differentiating-state classification
// ---------------------------------------------------------------------------

enum class Differentiation { kExact, kFapp, kNotDifferentiating };

inline const char* name_of(Differentiation d) {
  switch (d) {
    case Differentiation::kExact: return "exact";
    case Differentiation::kFapp: return "fapp";
    default: return "not_differentiating";
  }
}

struct DifferentiationVerdict {
  double overlap_magnitude = 0.0;
  Differentiation verdict = Differentiation::kNotDifferentiating;
  double threshold = kDefaultFappThreshold;
};

/// Grades |<psi, phi>|: exact when it vanishes within 1e-12, practical when
/// it stays under the threshold, otherwise the pair cannot be told apart.
inline DifferentiationVerdict classify(const StateVector& psi,
                                       const StateVector& phi,
                                       double threshold = kDefaultFappThreshold) {
  require(psi.dim() == phi.dim(), "classify: dimension mismatch");
  require(threshold > 0.0, "classify: threshold must be positive");
  DifferentiationVerdict v;
  v.overlap_magnitude = std::abs(inner(psi, phi));
  v.threshold = threshold;
  if (v.overlap_magnitude <= kExactOverlapTol)
    v.verdict = Differentiation::kExact;
  else if (v.overlap_magnitude <= threshold)
    v.verdict = Differentiation::kFapp;
  else
    v.verdict = Differentiation::kNotDifferentiating;
  return v;
}

// ---------------------------------------------------------------------------
// State-sensitive observables
// ---------------------------------------------------------------------------

/// A one-particle observable restricted to act only when the particle is
/// found in the anchor state: realized = P_psi A P_psi.
struct StateSensitiveObservable {
  Operator base;         // A
  StateVector anchor;    // psi
  Operator realized;     // P_psi A P_psi
  bool commutes = false; // max |[A, P_psi]| <= 1e-12
};

inline StateSensitiveObservable state_sensitive(const Operator& a,
                                                const StateVector& psi) {
  require(a.is_hermitian, "state_sensitive: base observable must be hermitian");
  require(a.dim() == psi.dim(), "state_sensitive: dimension mismatch");
  const Operator p = projector_from_state(psi);
  Matrix realized = p.mat * a.mat * p.mat;
  const bool commutes = max_abs(a.mat * p.mat - p.mat * a.mat) <= kEntryTol;
  // (P A P)^dagger = P A P for hermitian A, so the flag is justified.
  return StateSensitiveObservable{a, psi, Operator::hermitian(std::move(realized)),
                                  commutes};
}

/// A_psi (x) B_phi + B_phi (x) A_psi: detects "the particle in psi shows A
/// while the particle in phi shows B", in either slot order. Exchange
/// symmetry of the construction is certified at build time.
inline Operator differentiating_observable(const Operator& a, const StateVector& psi,
                                           const Operator& b, const StateVector& phi) {
  require(a.dim() == psi.dim() && b.dim() == phi.dim() && a.dim() == b.dim(),
          "differentiating_observable: dimension mismatch");
  const Operator a_psi = state_sensitive(a, psi).realized;
  const Operator b_phi = state_sensitive(b, phi).realized;
  Matrix out = tensor_op(a_psi, b_phi).mat + tensor_op(b_phi, a_psi).mat;
  const Operator pi = permutator(a.dim());
  require(max_abs(out * pi.mat - pi.mat * out) <= kEntryTol,
          "differentiating_observable: output fails to commute with exchange");
  return Operator::hermitian(std::move(out));
}

/// A (x) 1 + 1 (x) A, the standard exchange-invariant two-particle lift.
inline Operator one_particle_observable(const Operator& a) {
  require(a.is_hermitian, "one_particle_observable: observable must be hermitian");
  const Operator eye = Operator::identity(a.dim());
  Matrix out = tensor_op(a, eye).mat + tensor_op(eye, a).mat;
  const Operator pi = permutator(a.dim());
  require(max_abs(out * pi.mat - pi.mat * out) <= kEntryTol,
          "one_particle_observable: output fails to commute with exchange");
  return Operator::hermitian(std::move(out));
}

// ---------------------------------------------------------------------------
// Two-particle states: symmetrized vs. plain product
// ---------------------------------------------------------------------------

enum class PairKind { kIdentical, kDifferent };

struct TwoParticleState {
  PairKind kind = PairKind::kDifferent;
  int lambda = 0;  // +1 / -1 for identical pairs, 0 for plain products
  StateVector vector;
  StateVector psi;
  StateVector phi;
};

/// Normalized (1 + lambda Pi)(psi (x) phi): the physical state of two
/// identical particles prepared in psi and phi. Fermions with parallel
/// constituents are excluded (the antisymmetrizer annihilates them).
inline TwoParticleState identical_pair_state(const StateVector& psi,
                                             const StateVector& phi,
                                             SymmetryClass cls) {
  require(psi.dim() == phi.dim(), "identical_pair_state: dimension mismatch");
  const StateVector upsi = normalize(psi);
  const StateVector uphi = normalize(phi);
  const int d = upsi.dim();
  const Operator proj = identical_projector(d, cls);
  const StateVector raw = apply(proj, tensor_state(upsi, uphi));
  const double n = norm(raw);
  require(n > kExactOverlapTol,
          "identical_pair_state: projection annihilated the product "
          "(fermion with parallel constituents)");
  StateVector vec(raw.amps / n);
  const int lambda = lambda_of(cls);
  // Certify the eigenvector property and normalization we promise.
  const Operator pi = permutator(d);
  require((pi.mat * vec.amps - static_cast<double>(lambda) * vec.amps)
              .cwiseAbs()
              .maxCoeff() <= kEntryTol,
          "identical_pair_state: output is not an exchange eigenvector");
  return TwoParticleState{PairKind::kIdentical, lambda, std::move(vec), upsi, uphi};
}

/// Plain product psi (x) phi: two distinguishable particles.
inline TwoParticleState product_pair_state(const StateVector& psi,
                                           const StateVector& phi) {
  require(psi.dim() == phi.dim(), "product_pair_state: dimension mismatch");
  const StateVector upsi = normalize(psi);
  const StateVector uphi = normalize(phi);
  StateVector vec = tensor_state(upsi, uphi);
  return TwoParticleState{PairKind::kDifferent, 0, std::move(vec), upsi, uphi};
}

/// Product state -> symmetrized state of the requested symmetry class.
inline TwoParticleState to_identical(const TwoParticleState& s, SymmetryClass cls) {
  require(s.kind == PairKind::kDifferent, "to_identical: input must be a product pair");
  return identical_pair_state(s.psi, s.phi, cls);
}

/// Symmetrized state -> product state via sqrt(2) (P_psi (x) P_phi). Only
/// defined when the constituents are orthogonal; then it inverts
/// to_identical exactly (including the fermion sign).
inline TwoParticleState to_product(const TwoParticleState& s, const StateVector& psi,
                                   const StateVector& phi) {
  require(s.kind == PairKind::kIdentical, "to_product: input must be an identical pair");
  require(psi.dim() == phi.dim() && psi.dim() * phi.dim() == s.vector.dim(),
          "to_product: dimension mismatch");
  const StateVector upsi = normalize(psi);
  const StateVector uphi = normalize(phi);
  require(std::abs(inner(upsi, uphi)) <= kExactOverlapTol,
          "to_product: constituents must be orthogonal");
  const Operator inv = tensor_op(projector_from_state(upsi), projector_from_state(uphi));
  StateVector vec(std::sqrt(2.0) * (inv.mat * s.vector.amps));
  return TwoParticleState{PairKind::kDifferent, 0, std::move(vec), upsi, uphi};
}

// ---------------------------------------------------------------------------
// Equivalence of the two descriptions
// ---------------------------------------------------------------------------

/// Compares the two ways of predicting a joint A-on-psi, B-on-phi
/// measurement: lhs uses the symmetrized identical-particle state with the
/// state-sensitive pair observable; rhs treats the particles as different
/// and uses plain A (x) B on the product state.
struct EquivalenceReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  double overlap = 0.0;
  int lambda = 0;
  bool pass = false;
};

/// Pass rule: for orthogonal constituents (overlap <= 1e-12) the two sides
/// must agree to 1e-10 * (1 + |rhs|). For overlapping constituents the
/// residual |lhs - rhs| equals |rhs| * overlap^2 for this construction, so
/// the bound widens by exactly that term.
inline EquivalenceReport equivalence_check(const StateVector& psi,
                                           const StateVector& phi, const Operator& a,
                                           const Operator& b, SymmetryClass cls) {
  require(a.is_hermitian && b.is_hermitian,
          "equivalence_check: observables must be hermitian");
  const TwoParticleState ident = identical_pair_state(psi, phi, cls);
  const TwoParticleState prod = product_pair_state(psi, phi);

  const Operator joint = differentiating_observable(a, ident.psi, b, ident.phi);
  EquivalenceReport r;
  r.lhs = expectation(joint, ident.vector);
  r.rhs = expectation(tensor_op(a, b), prod.vector);
  r.deviation = std::abs(r.lhs - r.rhs);
  r.overlap = std::abs(inner(ident.psi, ident.phi));
  r.lambda = lambda_of(cls);
  const double exact_budget = 1e-10 * (1.0 + std::abs(r.rhs));
  if (r.overlap <= kExactOverlapTol)
    r.pass = r.deviation <= exact_budget;
  else
    r.pass = r.deviation <= r.overlap * r.overlap * std::abs(r.rhs) + exact_budget;
  return r;
}

// ---------------------------------------------------------------------------
// Deviation scaling with overlap
// ---------------------------------------------------------------------------

/// Measured worst-case disagreement per controlled overlap value, plus the
/// least-squares slope of log(deviation) against log(s). Quadratic scaling
/// (slope ~ 2) is what makes small overlaps practically negligible.
struct SweepReport {
  std::vector<double> s_values;
  std::vector<double> max_deviation;
  double slope = 0.0;
  bool slope_in_band = false;  // slope within [1.9, 2.1]
};

namespace detail {
inline RandomSpec substream(const RandomSpec& spec, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = spec.stream ^ (0x9E3779B97F4A7C15ULL * (a + 1));
  const std::uint64_t mixed = splitmix64(state) + b;
  return RandomSpec{spec.seed, mixed};
}
}  // namespace detail

/// For each s, builds trials of (psi, phi_s) with |<psi, phi_s>| controlled
/// by mixing psi into a random orthogonal partner:
///   phi_s = (phi_perp + s psi) / ||.||
/// and records the worst |lhs - rhs| over random unit-scale hermitian pairs.
inline SweepReport fapp_sweep(int dim, const std::vector<double>& overlaps, int trials,
                              const RandomSpec& spec, SymmetryClass cls) {
  require(dim >= 2 && dim <= kMaxSiteDim, "fapp_sweep: dimension out of range");
  require(trials >= 1, "fapp_sweep: trials must be >= 1");
  std::vector<double> distinct = overlaps;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  require(distinct.size() >= 3, "fapp_sweep: need at least 3 distinct overlap values");
  for (double s : distinct)
    require(s > 0.0 && s <= 0.5, "fapp_sweep: overlap values must lie in (0, 0.5]");

  SweepReport report;
  report.s_values = distinct;
  report.max_deviation.assign(distinct.size(), 0.0);
  for (std::size_t si = 0; si < distinct.size(); ++si) {
    const double s = distinct[si];
    for (int t = 0; t < trials; ++t) {
      const StateVector psi = random_state(dim, detail::substream(spec, si * 4 + 0, t));
      const StateVector chi = random_state(dim, detail::substream(spec, si * 4 + 1, t));
      // Orthogonalize chi against psi, then remix a controlled overlap.
      Vector perp = chi.amps - inner(psi, chi) * psi.amps;
      const StateVector phi_perp = normalize(StateVector(std::move(perp)));
      const StateVector phi_s =
          normalize(StateVector(phi_perp.amps + s * psi.amps));

      Operator a = random_hermitian(dim, detail::substream(spec, si * 4 + 2, t));
      Operator b = random_hermitian(dim, detail::substream(spec, si * 4 + 3, t));
      a = Operator::hermitian(a.mat / max_abs(a.mat));
      b = Operator::hermitian(b.mat / max_abs(b.mat));

      const EquivalenceReport r = equivalence_check(psi, phi_s, a, b, cls);
      report.max_deviation[si] = std::max(report.max_deviation[si], r.deviation);
    }
  }

  // Least-squares slope of log(deviation) vs log(s).
  const std::size_t n = distinct.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    require(report.max_deviation[i] > 0.0,
            "fapp_sweep: zero deviation makes the log-log fit degenerate");
    const double x = std::log(report.s_values[i]);
    const double y = std::log(report.max_deviation[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  require(std::abs(denom) > 1e-9, "fapp_sweep: degenerate abscissae for the fit");
  report.slope = (n * sxy - sx * sy) / denom;
  report.slope_in_band = report.slope >= 1.9 && report.slope <= 2.1;
  return report;
}

/// Energy carried by a particle known to occupy psi_k: the expectation of
/// the state-sensitive hamiltonian, which coincides with <psi_k, H psi_k>.
inline double energy_of_state(const Operator& h, const StateVector& psi_k) {
  require(h.is_hermitian, "energy_of_state: hamiltonian must be hermitian");
  const StateVector unit = normalize(psi_k);
  return expectation(state_sensitive(h, unit).realized, unit);
}

}  // namespace permsym

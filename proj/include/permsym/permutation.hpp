// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "permsym/common.hpp"
#include "permsym/hilbert.hpp"

namespace permsym {

// ---------------------------------------------------------------------------
// Particle exchange symmetry classes
// ---------------------------------------------------------------------------

enum class SymmetryClass { kBoson, kFermion };

/// Sign lambda entering the projector (1 + lambda * Pi) / 2.
inline int lambda_of(SymmetryClass c) {
  return c == SymmetryClass::kBoson ? +1 : -1;
}

inline const char* name_of(SymmetryClass c) {
  return c == SymmetryClass::kBoson ? "boson" : "fermion";
}

// ---------------------------------------------------------------------------
// Abstract permutations
// ---------------------------------------------------------------------------

/// A bijection of {0, ..., n-1}. images[k] is the image of k.
struct Permutation {
  std::vector<int> images;

  explicit Permutation(std::vector<int> im) : images(std::move(im)) {
    const int n = static_cast<int>(images.size());
    require(n >= 1, "Permutation: size must be >= 1");
    std::vector<bool> seen(n, false);
    for (int v : images) {
      require(v >= 0 && v < n && !seen[v], "Permutation: not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int k) const { return images[k]; }

  /// +1 for even, -1 for odd, by counting inversions.
  int parity() const {
    int inversions = 0;
    const int n = size();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (images[i] > images[j]) ++inversions;
    return (inversions % 2 == 0) ? +1 : -1;
  }

  /// (sigma . tau)(k) = sigma(tau(k)); this composes with *this as sigma.
  Permutation compose(const Permutation& tau) const {
    require(size() == tau.size(), "Permutation::compose: size mismatch");
    std::vector<int> im(size());
    for (int k = 0; k < size(); ++k) im[k] = images[tau(k)];
    return Permutation(std::move(im));
  }

  Permutation inverse() const {
    std::vector<int> im(size());
    for (int k = 0; k < size(); ++k) im[images[k]] = k;
    return Permutation(std::move(im));
  }

  bool operator==(const Permutation& other) const {
    return images == other.images;
  }
};

/// All n! permutations of {0, ..., n-1} in lexicographic order.
inline std::vector<Permutation> all_permutations(int n) {
  require(n >= 1 && n <= 8, "all_permutations: n must be in [1, 8]");
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(im));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Permutation operators on tensor products
// ---------------------------------------------------------------------------

namespace detail {
/// Power d^n guarded against the operator size cap.
inline int tensor_power_dim(int d, int n, const char* who) {
  require(d >= 1 && d <= kMaxSiteDim, std::string(who) + ": site dimension out of range");
  require(n >= 1, std::string(who) + ": particle count must be >= 1");
  long total = 1;
  for (int k = 0; k < n; ++k) {
    total *= d;
    require(total <= kMaxOperatorDim,
            std::string(who) + ": total dimension exceeds operator maximum");
  }
  return static_cast<int>(total);
}
}  // namespace detail

/// Operator representation of sigma on (C^d)^{tensor n}: the factor sitting
/// in slot k is moved to slot sigma(k). With this convention the map is a
/// homomorphism: perm_operator(d, sigma) * perm_operator(d, tau) equals
/// perm_operator(d, sigma.compose(tau)).
inline Operator perm_operator(int d, const Permutation& sigma) {
  const int n = sigma.size();
  const int total = detail::tensor_power_dim(d, n, "perm_operator");
  // Column index encodes source slots (row-major, slot 0 most significant).
  // Row r satisfies digit_{sigma(k)}(r) = digit_k(column) for every k.
  Matrix out = Matrix::Zero(total, total);
  std::vector<long> stride(n);
  long s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[k] = s;
    s *= d;
  }
  std::vector<int> digits(n);
  for (int col = 0; col < total; ++col) {
    int rest = col;
    for (int k = 0; k < n; ++k) {
      digits[k] = static_cast<int>(rest / stride[k]);
      rest = static_cast<int>(rest % stride[k]);
    }
    long row = 0;
    for (int k = 0; k < n; ++k) row += digits[k] * stride[sigma(k)];
    out(row, col) = 1.0;
  }
  // A permutation matrix is real orthogonal; it is hermitian only when the
  // permutation is an involution, so flags stay conservative.
  bool involution = sigma.compose(sigma) == Permutation::identity(n);
  return Operator{std::move(out), involution, false};
}

/// Two-particle exchange Pi on C^d (x) C^d: Pi (a (x) b) = b (x) a.
inline Operator permutator(int d) {
  std::vector<int> swap_im{1, 0};
  return perm_operator(d, Permutation(std::move(swap_im)));
}

/// S = (1 + Pi) / 2, the projector onto exchange-symmetric two-particle
/// states.
inline Operator symmetrizer(int d) {
  const Operator pi = permutator(d);
  Matrix s = (Matrix::Identity(pi.dim(), pi.dim()) + pi.mat) / 2.0;
  return Operator::projector(std::move(s));
}

/// A = (1 - Pi) / 2, the projector onto exchange-antisymmetric states.
inline Operator antisymmetrizer(int d) {
  const Operator pi = permutator(d);
  Matrix a = (Matrix::Identity(pi.dim(), pi.dim()) - pi.mat) / 2.0;
  return Operator::projector(std::move(a));
}

/// I = (1 + lambda Pi) / 2: symmetrizer for bosons, antisymmetrizer for
/// fermions.
inline Operator identical_projector(int d, SymmetryClass c) {
  return c == SymmetryClass::kBoson ? symmetrizer(d) : antisymmetrizer(d);
}

namespace detail {
/// (1/n!) sum over sigma of coeff(sigma) * P_sigma, accumulated entrywise so
/// no intermediate permutation matrices are materialized.
inline Operator weighted_perm_sum(int d, int n, bool signed_sum, const char* who) {
  require(n <= 6, std::string(who) + ": particle count must be <= 6");
  const int total = tensor_power_dim(d, n, who);
  std::vector<long> stride(n);
  long s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[k] = s;
    s *= d;
  }
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  Matrix out = Matrix::Zero(total, total);
  std::vector<int> digits(n);
  for (const Permutation& sigma : all_permutations(n)) {
    const double coeff =
        (signed_sum ? static_cast<double>(sigma.parity()) : 1.0) / factorial;
    for (int col = 0; col < total; ++col) {
      int rest = col;
      for (int k = 0; k < n; ++k) {
        digits[k] = static_cast<int>(rest / stride[k]);
        rest = static_cast<int>(rest % stride[k]);
      }
      long row = 0;
      for (int k = 0; k < n; ++k) row += digits[k] * stride[sigma(k)];
      out(row, col) += coeff;
    }
  }
  return Operator::projector(std::move(out));
}
}  // namespace detail

/// n-particle symmetrizer (1/n!) sum_sigma P_sigma on (C^d)^{tensor n}.
inline Operator n_symmetrizer(int d, int n) {
  return detail::weighted_perm_sum(d, n, false, "n_symmetrizer");
}

/// n-particle antisymmetrizer (1/n!) sum_sigma sgn(sigma) P_sigma.
inline Operator n_antisymmetrizer(int d, int n) {
  return detail::weighted_perm_sum(d, n, true, "n_antisymmetrizer");
}

/// Dimension of the range of a projector, read off from its trace. The trace
/// must sit within 1e-8 of an integer.
inline int subspace_dimension(const Operator& p) {
  require(p.is_projector, "subspace_dimension: operator is not flagged projector");
  const Complex tr = p.mat.trace();
  require(std::abs(tr.imag()) <= 1e-8,
          "subspace_dimension: trace has non-negligible imaginary part");
  const double rounded = std::round(tr.real());
  require(std::abs(tr.real() - rounded) <= 1e-8,
          "subspace_dimension: trace is not within 1e-8 of an integer");
  return static_cast<int>(rounded);
}

/// Sorted (ascending) eigenvalues of a hermitian operator.
inline std::vector<double> spectrum(const Operator& op) {
  require(op.is_hermitian, "spectrum: operator is not flagged hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.mat, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, "spectrum: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

/// Residuals of the defining algebraic identities of the exchange operator
/// and its projectors at one site dimension, using one random operator pair
/// for the conjugation identity.
struct AxiomReport {
  int dim = 0;
  std::map<std::string, double> residuals;
  double spectrum_residual = 0.0;
  bool pass = false;
};

/// Checks, on C^d (x) C^d:
///   pi_squared        : Pi^2 = 1
///   hermiticity       : Pi = Pi^dagger
///   conjugation       : Pi^dagger (A (x) B) Pi = B (x) A  (random A, B)
///   projector_sum     : S + A = 1
///   projector_product : S A = 0
///   idempotence_S     : S^2 = S
///   idempotence_A     : A^2 = A
/// plus the distance of every Pi eigenvalue from {+1, -1}.
inline AxiomReport verify_axioms(int d, const RandomSpec& spec) {
  require(d >= 2 && d <= kMaxSiteDim, "verify_axioms: dimension out of range");
  const Operator pi = permutator(d);
  const Operator s = symmetrizer(d);
  const Operator a = antisymmetrizer(d);
  const Matrix eye = Matrix::Identity(pi.dim(), pi.dim());

  RandomSpec spec_a{spec.seed, spec.stream * 2};
  RandomSpec spec_b{spec.seed, spec.stream * 2 + 1};
  const Operator opa = random_operator(d, spec_a);
  const Operator opb = random_operator(d, spec_b);

  AxiomReport report;
  report.dim = d;
  report.residuals["pi_squared"] = max_abs(pi.mat * pi.mat - eye);
  report.residuals["hermiticity"] = max_abs(pi.mat - pi.mat.adjoint());
  report.residuals["conjugation"] =
      max_abs(pi.mat.adjoint() * tensor_op(opa, opb).mat * pi.mat -
              tensor_op(opb, opa).mat);
  report.residuals["projector_sum"] = max_abs(s.mat + a.mat - eye);
  report.residuals["projector_product"] = max_abs(s.mat * a.mat);
  report.residuals["idempotence_S"] = max_abs(s.mat * s.mat - s.mat);
  report.residuals["idempotence_A"] = max_abs(a.mat * a.mat - a.mat);

  double worst = 0.0;
  for (double ev : spectrum(pi))
    worst = std::max(worst, std::min(std::abs(ev - 1.0), std::abs(ev + 1.0)));
  report.spectrum_residual = worst;

  report.pass = report.spectrum_residual <= 1e-10;
  for (const auto& [key, value] : report.residuals)
    if (value > kEntryTol) report.pass = false;
  return report;
}

}  // namespace permsym

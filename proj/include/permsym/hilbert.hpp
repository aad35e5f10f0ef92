// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "permsym/common.hpp"

namespace permsym {

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// Identifies a reproducible random stream. Same (seed, stream) -> same draws
/// within one build of the library.
struct RandomSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Expands (seed, stream) into an engine. Streams with equal seeds are
/// decorrelated by hashing rather than by offsetting.
inline std::mt19937_64 make_engine(const RandomSpec& spec) {
  std::uint64_t s = spec.seed;
  std::uint64_t a = detail::splitmix64(s);
  s ^= 0xD1B54A32D192ED03ULL * (spec.stream + 1);
  std::uint64_t b = detail::splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

/// A ray-agnostic ket: a finite column of complex amplitudes. Values are
/// treated as immutable; every operation returns a fresh vector.
struct StateVector {
  Vector amps;

  explicit StateVector(Vector a) : amps(std::move(a)) {
    require(amps.size() >= 1, "StateVector: dimension must be >= 1");
    require(amps.size() <= kMaxTotalDim,
            "StateVector: dimension exceeds supported maximum (" +
                std::to_string(kMaxTotalDim) + ")");
  }

  int dim() const { return static_cast<int>(amps.size()); }
};

/// Computational basis vector e_k in dimension dim.
inline StateVector basis_state(int dim, int k) {
  require(dim >= 1 && dim <= kMaxTotalDim, "basis_state: bad dimension");
  require(k >= 0 && k < dim, "basis_state: index out of range");
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return StateVector(std::move(v));
}

/// <a|b>, conjugate-linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
  require(a.dim() == b.dim(), "inner: dimension mismatch");
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the left factor.
}

inline double norm(const StateVector& a) { return a.amps.norm(); }

inline StateVector normalize(const StateVector& a) {
  const double n = norm(a);
  require(n > 1e-150, "normalize: vector has (numerically) zero norm");
  return StateVector(a.amps / n);
}

/// Kronecker product of kets. Index convention is row-major: component
/// (i, j) of a (x) b lands at i * dim(b) + j, so the left factor is the
/// most significant index.
inline StateVector tensor_state(const StateVector& a, const StateVector& b) {
  const long total = static_cast<long>(a.dim()) * b.dim();
  require(total <= kMaxTotalDim,
          "tensor_state: product dimension exceeds supported maximum");
  Vector out(total);
  for (int i = 0; i < a.dim(); ++i)
    out.segment(static_cast<long>(i) * b.dim(), b.dim()) = a.amps(i) * b.amps;
  return StateVector(std::move(out));
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

namespace detail {
inline double hermiticity_residual(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

/// Idempotence residual. Exact (max |M^2 - M|) for moderate sizes; for large
/// matrices the O(d^3) product is replaced by deterministic random probes
/// |M(Mv) - Mv|, which bounds the same property with O(d^2) work.
inline double idempotence_residual(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  if (d <= 1024) return max_abs(m * m - m);
  std::mt19937_64 eng(0x1D3A57ULL + static_cast<std::uint64_t>(d));
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(eng), gauss(eng));
    v /= v.norm();
    const Vector mv = m * v;
    worst = std::max(worst, (m * mv - mv).cwiseAbs().maxCoeff());
  }
  return worst;
}
}  // namespace detail

/// A dense square matrix plus verified structural flags. The flags are part
/// of the value: a true flag certifies the corresponding residual was within
/// kEntryTol at construction time.
struct Operator {
  Matrix mat;
  bool is_hermitian = false;
  bool is_projector = false;

  int dim() const { return static_cast<int>(mat.rows()); }

  /// Wraps a matrix with no structural claims.
  static Operator plain(Matrix m) {
    check_shape(m);
    return Operator{std::move(m), false, false};
  }

  /// Wraps a matrix that must be hermitian (max |M - M^dagger| <= kEntryTol).
  static Operator hermitian(Matrix m) {
    check_shape(m);
    require(detail::hermiticity_residual(m) <= kEntryTol,
            "Operator::hermitian: matrix fails hermiticity within tolerance");
    return Operator{std::move(m), true, false};
  }

  /// Wraps a matrix that must be an orthogonal projector (hermitian and
  /// idempotent within kEntryTol).
  static Operator projector(Matrix m) {
    check_shape(m);
    require(detail::hermiticity_residual(m) <= kEntryTol,
            "Operator::projector: matrix fails hermiticity within tolerance");
    require(detail::idempotence_residual(m) <= kEntryTol,
            "Operator::projector: matrix fails idempotence within tolerance");
    return Operator{std::move(m), true, true};
  }

  static Operator identity(int d) {
    require(d >= 1 && d <= kMaxOperatorDim, "Operator::identity: bad dimension");
    return Operator{Matrix::Identity(d, d), true, true};
  }

 private:
  static void check_shape(const Matrix& m) {
    require(m.rows() == m.cols(), "Operator: matrix must be square");
    require(m.rows() >= 1, "Operator: dimension must be >= 1");
    require(m.rows() <= kMaxOperatorDim,
            "Operator: dimension exceeds supported maximum (" +
                std::to_string(kMaxOperatorDim) + ")");
  }
};

inline StateVector apply(const Operator& op, const StateVector& v) {
  require(op.dim() == v.dim(), "apply: dimension mismatch");
  return StateVector(op.mat * v.amps);
}

/// Kronecker product of operators, same index convention as tensor_state.
/// Hermiticity and projector structure survive the product, so the flags
/// are carried through.
inline Operator tensor_op(const Operator& a, const Operator& b) {
  const long total = static_cast<long>(a.dim()) * b.dim();
  require(total <= kMaxOperatorDim,
          "tensor_op: product dimension exceeds supported maximum");
  Matrix out(total, total);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      out.block(static_cast<long>(i) * b.dim(), static_cast<long>(j) * b.dim(),
                b.dim(), b.dim()) = a.mat(i, j) * b.mat;
  return Operator{std::move(out), a.is_hermitian && b.is_hermitian,
                  a.is_projector && b.is_projector};
}

/// Rank-one projector |psi><psi| onto the ray of psi. The input is
/// normalized internally, so the result has unit trace.
inline Operator projector_from_state(const StateVector& psi) {
  require(psi.dim() <= kMaxOperatorDim,
          "projector_from_state: dimension exceeds operator maximum");
  const StateVector unit = normalize(psi);
  Matrix p = unit.amps * unit.amps.adjoint();
  // Hermitian and idempotent by construction up to rounding; certify anyway.
  return Operator::projector(std::move(p));
}

/// AB - BA, with no structural flags (a commutator of hermitians is
/// anti-hermitian, not hermitian).
inline Operator commutator(const Operator& a, const Operator& b) {
  require(a.dim() == b.dim(), "commutator: dimension mismatch");
  return Operator::plain(a.mat * b.mat - b.mat * a.mat);
}

/// <v| M |v> for hermitian M, returned as the (mathematically real) value.
/// Throws if the flag is absent or the imaginary part exceeds 1e-10.
inline double expectation(const Operator& op, const StateVector& v) {
  require(op.is_hermitian, "expectation: operator is not flagged hermitian");
  require(op.dim() == v.dim(), "expectation: dimension mismatch");
  const Complex value = v.amps.dot(op.mat * v.amps);
  require(std::abs(value.imag()) <= 1e-10,
          "expectation: imaginary part exceeds tolerance");
  return value.real();
}

// ---------------------------------------------------------------------------
// Random draws
// ---------------------------------------------------------------------------

/// Haar-ish random unit vector: i.i.d. complex normal entries, normalized.
inline StateVector random_state(int dim, const RandomSpec& spec) {
  require(dim >= 1 && dim <= kMaxTotalDim, "random_state: bad dimension");
  auto eng = make_engine(spec);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(eng), gauss(eng));
  return normalize(StateVector(std::move(v)));
}

/// GUE-style random hermitian: (G + G^dagger) / 2 for complex Gaussian G.
inline Operator random_hermitian(int dim, const RandomSpec& spec) {
  require(dim >= 1 && dim <= kMaxOperatorDim, "random_hermitian: bad dimension");
  auto eng = make_engine(spec);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(eng), gauss(eng));
  Matrix h = (g + g.adjoint()) / 2.0;
  return Operator::hermitian(std::move(h));
}

/// Unconstrained complex Gaussian matrix (useful for testing identities that
/// must hold for arbitrary operators).
inline Operator random_operator(int dim, const RandomSpec& spec) {
  require(dim >= 1 && dim <= kMaxOperatorDim, "random_operator: bad dimension");
  auto eng = make_engine(spec);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(eng), gauss(eng));
  return Operator::plain(std::move(g));
}

}  // namespace permsym

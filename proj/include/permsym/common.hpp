// Copyright 2026 The Permsym Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace permsym {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Absolute tolerance for operator identities (hermiticity, idempotence,
// commutation residuals).
inline constexpr double kEntryTol = 1e-12;

// Relative tolerance when comparing expectation values.
inline constexpr double kExpectationTol = 1e-10;

// Desk-scale caps. Everything is dense; reject anything bigger up front.
inline constexpr int kMaxSiteDim = 12;      // one-particle space
inline constexpr int kMaxTotalDim = 20736;  // any tensor-product state (12^4)
inline constexpr int kMaxOperatorDim = 4096;  // dense square matrices

/// Largest |entry| of a matrix.
inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace permsym

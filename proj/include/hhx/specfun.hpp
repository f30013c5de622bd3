// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace hhx::specfun {

// Largest Bessel order served; twice the largest filter bandwidth used by the
// direction-estimation stage.
inline constexpr int kMaxOrder = 512;

/// Bessel function of the first kind J_n(x) for integer n >= 0 and x >= 0.
/// Absolute error below 1e-12 over x in [0, 1000].
double bessel_j(int order, double x);

/// Derivative J'_n(x).
double bessel_j_prime(int order, double x);

/// J_0(x) .. J_max_order(x) in one backward-recurrence pass. Cheaper than
/// per-order calls when a whole ladder of orders is needed.
std::vector<double> bessel_j_sequence(int max_order, double x);

/// First-kind Hankel function H^(1)_q(x) = J_q(x) + i Y_q(x), q in {0,1,2},
/// x > 0. Relative error below 1e-10 over x in [1e-3, 1e4].
std::complex<double> hankel1(int order, double x);

}  // namespace hhx::specfun

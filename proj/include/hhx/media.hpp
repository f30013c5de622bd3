// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "hhx/grid.hpp"

namespace hhx {

/// Speed samples on a grid, bilinearly interpolated; constant extension of
/// the edge values outside the data footprint (absorbing layers may poke
/// slightly past it).
struct GriddedVelocity {
    CartesianGrid grid;
    std::vector<double> speed;
    double smoothing_sigma = 0.0;
};

/// Wave speed model c(x) with squared slowness m(x) = 1/c(x)^2.
class Medium {
  public:
    static Medium homogeneous(double c0);
    static Medium constant_gradient(double c0, Vec2 gradient, Vec2 x0);
    /// Compactly supported squared-slowness bump
    ///   m(x) = 1 + amp * h(r) * exp(-r^2 / (2 sigma^2)),  r = |x - center|,
    /// where h == 1 for r <= alpha, h == 0 for r >= beta, and h bridges the
    /// two plateaus with exp(2 e^{-1/t} / (t-1)), t = (r-alpha)/(beta-alpha).
    static Medium gaussian_bump(double alpha = 0.16, double beta = 0.22,
                                double sigma = 0.15, Vec2 center = {0.2, 0.2},
                                double amplitude = 0.2);
    static Medium gridded(GriddedVelocity data);

    double speed(Vec2 x) const;
    double slowness_sq(Vec2 x) const;

    bool is_homogeneous() const { return kind_ == Kind::Homogeneous; }

  private:
    enum class Kind { Homogeneous, ConstantGradient, GaussianBump, Gridded };
    Kind kind_ = Kind::Homogeneous;
    double c0_ = 1.0;
    Vec2 grad_{}, x0_{};
    double alpha_ = 0, beta_ = 0, sigma_ = 0, amp_ = 0;
    Vec2 bump_center_{};
    GriddedVelocity data_;
};

/// Gaussian smoothing of a gridded speed model; sigma is in physical length
/// units, the kernel is truncated at 4 sigma, and edges are replicated.
GriddedVelocity smooth(const GriddedVelocity& in, double sigma);

/// Free-space field of a unit point source in a homogeneous unit-speed
/// medium: (i/4) H_0^(1)(omega |x - x0|).
std::complex<double> exact_homogeneous(double omega, Vec2 x, Vec2 x0);

/// Travel time for c(x) = c0 + g . (x - x0); reduces to |x-x0|/c0 when
/// g = 0. Verified against the eikonal residual by the test suite.
double exact_phase_constant_gradient(double c0, Vec2 gradient, Vec2 x0, Vec2 x);

/// Analytic gradient of the travel time above.
Vec2 exact_phase_gradient_constant_gradient(double c0, Vec2 gradient, Vec2 x0, Vec2 x);

}  // namespace hhx

// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include "hhx/media.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhx/specfun.hpp"

namespace hhx {

Medium Medium::homogeneous(double c0) {
    if (!(c0 > 0.0)) throw std::invalid_argument("Medium: speed must be positive");
    Medium m;
    m.kind_ = Kind::Homogeneous;
    m.c0_ = c0;
    return m;
}

Medium Medium::constant_gradient(double c0, Vec2 gradient, Vec2 x0) {
    if (!(c0 > 0.0)) throw std::invalid_argument("Medium: speed must be positive");
    Medium m;
    m.kind_ = Kind::ConstantGradient;
    m.c0_ = c0;
    m.grad_ = gradient;
    m.x0_ = x0;
    return m;
}

Medium Medium::gaussian_bump(double alpha, double beta, double sigma, Vec2 center,
                             double amplitude) {
    Medium m;
    m.kind_ = Kind::GaussianBump;
    m.alpha_ = alpha;
    m.beta_ = beta;
    m.sigma_ = sigma;
    m.amp_ = amplitude;
    m.bump_center_ = center;
    return m;
}

Medium Medium::gridded(GriddedVelocity data) {
    for (double v : data.speed)
        if (!(v > 0.0)) throw std::invalid_argument("Medium: gridded speeds must be positive");
    Medium m;
    m.kind_ = Kind::Gridded;
    m.data_ = std::move(data);
    return m;
}

namespace {

// Plateau-to-plateau bridge h(r): 1 for r <= alpha, 0 for r >= beta,
// exp(2 e^{-1/t} / (t - 1)) in between with t = (r - alpha)/(beta - alpha).
double bump_profile(double r, double alpha, double beta) {
    if (r <= alpha) return 1.0;
    if (r >= beta) return 0.0;
    const double t = (r - alpha) / (beta - alpha);
    return std::exp(2.0 * std::exp(-1.0 / t) / (t - 1.0));
}

double gridded_speed(const GriddedVelocity& d, Vec2 x) {
    // clamp to the data footprint: constant extension outside
    const auto& g = d.grid;
    const Vec2 ur = g.upper_right();
    const double px = std::clamp(x.x, g.origin.x, ur.x);
    const double py = std::clamp(x.y, g.origin.y, ur.y);
    int i = std::clamp(static_cast<int>(std::floor((px - g.origin.x) / g.hx)), 0, g.nx - 2);
    int j = std::clamp(static_cast<int>(std::floor((py - g.origin.y) / g.hy)), 0, g.ny - 2);
    const double fx = (px - g.origin.x) / g.hx - i;
    const double fy = (py - g.origin.y) / g.hy - j;
    const auto& v = d.speed;
    return v[g.index(i, j)] * (1 - fx) * (1 - fy) + v[g.index(i + 1, j)] * fx * (1 - fy) +
           v[g.index(i, j + 1)] * (1 - fx) * fy + v[g.index(i + 1, j + 1)] * fx * fy;
}

}  // namespace

double Medium::speed(Vec2 x) const {
    switch (kind_) {
        case Kind::Homogeneous:
            return c0_;
        case Kind::ConstantGradient: {
            const double c = c0_ + grad_.dot(x - x0_);
            if (!(c > 0.0))
                throw std::domain_error("Medium: constant-gradient speed nonpositive here");
            return c;
        }
        case Kind::GaussianBump:
            return 1.0 / std::sqrt(slowness_sq(x));
        case Kind::Gridded:
            return gridded_speed(data_, x);
    }
    return c0_;
}

double Medium::slowness_sq(Vec2 x) const {
    if (kind_ == Kind::GaussianBump) {
        const double r = (x - bump_center_).norm();
        const double h = bump_profile(r, alpha_, beta_);
        return 1.0 + amp_ * h * std::exp(-r * r / (2.0 * sigma_ * sigma_));
    }
    const double c = speed(x);
    return 1.0 / (c * c);
}

GriddedVelocity smooth(const GriddedVelocity& in, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("smooth: sigma must be nonnegative");
    GriddedVelocity out = in;
    out.smoothing_sigma = sigma;
    if (sigma == 0.0) return out;

    auto kernel = [&](double h) {
        const int radius = static_cast<int>(std::ceil(4.0 * sigma / h));
        std::vector<double> w(static_cast<size_t>(2 * radius + 1));
        double sum = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            const double v = std::exp(-0.5 * (k * h) * (k * h) / (sigma * sigma));
            w[static_cast<size_t>(k + radius)] = v;
            sum += v;
        }
        for (double& v : w) v /= sum;
        return w;
    };

    const auto& g = in.grid;
    const auto wx = kernel(g.hx);
    const auto wy = kernel(g.hy);
    const int rx = (static_cast<int>(wx.size()) - 1) / 2;
    const int ry = (static_cast<int>(wy.size()) - 1) / 2;

    std::vector<double> tmp(in.speed.size());
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            for (int k = -rx; k <= rx; ++k) {
                const int ii = std::clamp(i + k, 0, g.nx - 1);
                acc += wx[static_cast<size_t>(k + rx)] *
                       in.speed[static_cast<size_t>(g.index(ii, j))];
            }
            tmp[static_cast<size_t>(g.index(i, j))] = acc;
        }
    }
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            for (int k = -ry; k <= ry; ++k) {
                const int jj = std::clamp(j + k, 0, g.ny - 1);
                acc += wy[static_cast<size_t>(k + ry)] *
                       tmp[static_cast<size_t>(g.index(i, jj))];
            }
            out.speed[static_cast<size_t>(g.index(i, j))] = acc;
        }
    }
    return out;
}

std::complex<double> exact_homogeneous(double omega, Vec2 x, Vec2 x0) {
    const double r = (x - x0).norm();
    if (r == 0.0) throw std::domain_error("exact_homogeneous: evaluation at the source");
    return std::complex<double>(0.0, 0.25) * specfun::hankel1(0, omega * r);
}

double exact_phase_constant_gradient(double c0, Vec2 gradient, Vec2 x0, Vec2 x) {
    const double g = gradient.norm();
    const double r = (x - x0).norm();
    if (g * r < 1e-10 * c0) {
        // homogeneous limit of the inverse-cosh travel time
        return r / c0;
    }
    const double c = c0 + gradient.dot(x - x0);
    if (!(c > 0.0))
        throw std::domain_error("exact_phase_constant_gradient: speed nonpositive");
    const double u = 1.0 + g * g * r * r / (2.0 * c0 * c);
    return std::acosh(std::max(u, 1.0)) / g;
}

Vec2 exact_phase_gradient_constant_gradient(double c0, Vec2 gradient, Vec2 x0, Vec2 x) {
    const double g = gradient.norm();
    const Vec2 d = x - x0;
    const double r = d.norm();
    const double c = c0 + gradient.dot(d);
    if (g * r < 1e-10 * c0) {
        if (r == 0.0) return {0.0, 0.0};
        return d / (r * c0);
    }
    const double u = 1.0 + g * g * r * r / (2.0 * c0 * c);
    const Vec2 du = (d * 2.0 - gradient * (r * r / c)) * (g * g / (2.0 * c0 * c));
    const double s = std::sqrt(std::max(u * u - 1.0, 0.0));
    return du / (g * s);
}

}  // namespace hhx

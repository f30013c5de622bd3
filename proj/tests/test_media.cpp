// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hhx/media.hpp"
#include "hhx/specfun.hpp"

using namespace hhx;

TEST_SUITE("media") {

TEST_CASE("gaussian bump squared slowness") {
    const Medium m = Medium::gaussian_bump();
    // at the bump center r = 0: m = 1 + 0.2 * 1 * exp(0)
    CHECK(m.slowness_sq({0.2, 0.2}) == doctest::Approx(1.2).epsilon(1e-14));
    // outside the support radius
    CHECK(m.slowness_sq({0.2 + 0.22, 0.2}) == doctest::Approx(1.0));
    CHECK(m.slowness_sq({-0.4, -0.4}) == doctest::Approx(1.0));
    // slowness_sq = 1/speed^2 everywhere
    const Vec2 p{0.31, 0.12};
    CHECK(m.slowness_sq(p) == doctest::Approx(1.0 / (m.speed(p) * m.speed(p))));
}

TEST_CASE("gaussian bump is C2-smooth across the plateau radii") {
    const Medium m = Medium::gaussian_bump();
    const double h = 1e-3;
    auto second_radial = [&](double r) {
        auto f = [&](double rr) { return m.slowness_sq({0.2 + rr, 0.2}); };
        return (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
    };
    // bounded and continuous second differences across r = alpha and r = beta
    for (double r0 : {0.16, 0.22}) {
        const double inner = second_radial(r0 - 5 * h);
        const double outer = second_radial(r0 + 5 * h);
        CHECK(std::abs(inner) < 1e3);
        CHECK(std::abs(outer) < 1e3);
        CHECK(std::abs(second_radial(r0 + h) - second_radial(r0 - h)) < 0.5);
    }
}

TEST_CASE("constant gradient speed") {
    const Medium m = Medium::constant_gradient(1.0, {0.1, -0.2}, {0, 0});
    CHECK(m.speed({0, 0}) == doctest::Approx(1.0));
    CHECK(m.speed({0.3, 0.1}) == doctest::Approx(1.0 + 0.03 - 0.02));
}

TEST_CASE("smooth: identity at sigma zero, constants preserved, unit mass") {
    GriddedVelocity v;
    v.grid = CartesianGrid(11, 9, 0.1, 0.1, {0, 0});
    v.speed.assign(99, 2.5);

    const auto same = smooth(v, 0.0);
    CHECK(same.speed == v.speed);

    const auto blurred = smooth(v, 0.25);
    for (double s : blurred.speed) CHECK(s == doctest::Approx(2.5).epsilon(1e-13));

    // impulse response sums to one (kernel normalization); keep the impulse
    // a full kernel radius away from the edges so replication never clips it
    GriddedVelocity imp;
    imp.grid = CartesianGrid(25, 25, 0.1, 0.1, {0, 0});
    imp.speed.assign(625, 0.0);
    imp.speed[imp.grid.index(12, 12)] = 1.0;
    const auto resp = smooth(imp, 0.12);
    double total = 0.0, peak = 0.0;
    for (double s : resp.speed) {
        total += s;
        peak = std::max(peak, s);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(peak < 1.0);
}

TEST_CASE("smooth preserves bounds") {
    GriddedVelocity v;
    v.grid = CartesianGrid(21, 21, 0.05, 0.05, {0, 0});
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(1.5, 4.5);
    v.speed.resize(441);
    for (double& s : v.speed) s = dist(rng);
    const auto b = smooth(v, 0.1);
    const auto [lo, hi] = std::minmax_element(v.speed.begin(), v.speed.end());
    for (double s : b.speed) {
        CHECK(s >= *lo - 1e-12);
        CHECK(s <= *hi + 1e-12);
    }
}

TEST_CASE("gridded medium interpolates and extends edge values") {
    GriddedVelocity v;
    v.grid = CartesianGrid(5, 5, 0.25, 0.25, {0, 0});
    v.speed.resize(25);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i) v.speed[v.grid.index(i, j)] = 1.0 + 0.1 * i;
    const Medium m = Medium::gridded(v);
    CHECK(m.speed({0.5, 0.5}) == doctest::Approx(1.2));
    CHECK(m.speed({0.125, 0.3}) == doctest::Approx(1.05));
    // outside the footprint: constant extension
    CHECK(m.speed({2.0, 0.5}) == doctest::Approx(1.4));
    CHECK(m.speed({-1.0, -1.0}) == doctest::Approx(1.0));
}

TEST_CASE("exact_homogeneous value and asymptotics") {
    const std::complex<double> u = exact_homogeneous(100.0, {0.5, 0.0}, {0, 0});
    const std::complex<double> want =
        std::complex<double>(0, 0.25) * specfun::hankel1(0, 50.0);
    CHECK(std::abs(u - want) <= 1e-14);

    // phase advances ~ omega per unit distance along a radius
    const double omega = 200.0;
    const double r1 = 1.0, r2 = 1.0 + 0.01;
    const auto u1 = exact_homogeneous(omega, {r1, 0}, {0, 0});
    const auto u2 = exact_homogeneous(omega, {r2, 0}, {0, 0});
    const double dphase = std::arg(u2 / u1);
    CHECK(dphase == doctest::Approx(omega * (r2 - r1)).epsilon(1e-3));

    // amplitude decays like r^{-1/2}
    const auto a1 = std::abs(exact_homogeneous(omega, {1.0, 0}, {0, 0}));
    const auto a4 = std::abs(exact_homogeneous(omega, {4.0, 0}, {0, 0}));
    CHECK(a1 / a4 == doctest::Approx(2.0).epsilon(1e-3));

    CHECK_THROWS_AS(exact_homogeneous(10.0, {0, 0}, {0, 0}), std::domain_error);
}

TEST_CASE("constant-gradient phase: homogeneous limit and source value") {
    CHECK(exact_phase_constant_gradient(2.0, {0, 0}, {0, 0}, {0.3, 0.4}) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(exact_phase_constant_gradient(1.0, {0.1, -0.2}, {0, 0}, {0, 0}) == 0.0);
}

TEST_CASE("constant-gradient phase satisfies the eikonal equation") {
    const double c0 = 1.0;
    const Vec2 g{0.1, -0.2}, x0{0, 0};
    const Medium med = Medium::constant_gradient(c0, g, x0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    const double h = 1e-6;
    int tested = 0;
    while (tested < 1000) {
        const Vec2 p{dist(rng), dist(rng)};
        if ((p - x0).norm() < 0.05) continue;
        ++tested;
        auto phi = [&](Vec2 q) {
            return exact_phase_constant_gradient(c0, g, x0, q);
        };
        const double px = (phi({p.x + h, p.y}) - phi({p.x - h, p.y})) / (2 * h);
        const double py = (phi({p.x, p.y + h}) - phi({p.x, p.y - h})) / (2 * h);
        const double residual = std::hypot(px, py) * med.speed(p) - 1.0;
        CHECK(std::abs(residual) <= 1e-6);

        // analytic gradient agrees with the finite differences
        const Vec2 gp = exact_phase_gradient_constant_gradient(c0, g, x0, p);
        CHECK(gp.x == doctest::Approx(px).epsilon(1e-5));
        CHECK(gp.y == doctest::Approx(py).epsilon(1e-5));
    }
}

}  // TEST_SUITE

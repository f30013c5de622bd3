// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "hhx/eikonal.hpp"

using namespace hhx;

namespace {

CartesianGrid unit_square(int cells) {
    return CartesianGrid(cells + 1, cells + 1, 1.0 / cells, 1.0 / cells, {-0.5, -0.5});
}

// max |a - b| over nodes with r_lo <= |x - x0| <= r_hi, staying `rim` cells
// away from the domain boundary
double max_diff_in_annulus(const ScalarField& a, const ScalarField& b, Vec2 x0,
                           double r_lo, double r_hi, int rim = 3) {
    const auto& g = a.grid;
    double worst = 0.0;
    for (int j = rim; j < g.ny - rim; ++j) {
        for (int i = rim; i < g.nx - rim; ++i) {
            const double r = (g.node(i, j) - x0).norm();
            if (r < r_lo || r > r_hi) continue;
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE("eikonal") {

TEST_CASE("homogeneous medium: factor is one, phi = r") {
    const auto grid = unit_square(64);
    const auto medium = Medium::homogeneous(1.0);
    const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
    double worst = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            worst = std::max(worst,
                             std::abs(phi.at(i, j) - grid.node(i, j).norm()));
    CHECK(worst <= 1e-10);
}

TEST_CASE("source must be a grid node") {
    const auto grid = unit_square(16);
    CHECK_THROWS_AS(solve_factored_eikonal(Medium::homogeneous(1.0),
                                           {0.013, 0.0}, grid),
                    std::invalid_argument);
}

TEST_CASE("phi symmetric for a symmetric medium and centered source") {
    const auto grid = unit_square(40);
    const auto medium = Medium::gaussian_bump(0.16, 0.22, 0.15, {0.0, 0.0});
    const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            CHECK(phi.at(i, j) ==
                  doctest::Approx(phi.at(grid.nx - 1 - i, j)).epsilon(1e-9));
            CHECK(phi.at(i, j) ==
                  doctest::Approx(phi.at(i, grid.ny - 1 - j)).epsilon(1e-9));
        }
}

TEST_CASE("constant-gradient medium: phi converges at order >= 4") {
    const double c0 = 1.0;
    const Vec2 g0{0.1, -0.2}, x0{0, 0};
    const auto medium = Medium::constant_gradient(c0, g0, x0);
    SweepConfig cfg;
    cfg.tolerance = 1e-13;

    std::vector<double> errs;
    for (int cells : {16, 32, 64}) {
        const auto grid = unit_square(cells);
        const auto phi = solve_factored_eikonal(medium, x0, grid, cfg);
        ScalarField exact(grid);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                exact.at(i, j) =
                    exact_phase_constant_gradient(c0, g0, x0, grid.node(i, j));
        errs.push_back(max_diff_in_annulus(phi, exact, x0, 0.0, 0.35));
    }
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    INFO("errors ", errs[0], " ", errs[1], " ", errs[2], " orders ", order1, " ",
         order2);
    CHECK(0.5 * (order1 + order2) >= 4.0);
}

TEST_CASE("sweep cycle updates never increase") {
    const auto grid = unit_square(48);
    const auto medium = Medium::constant_gradient(1.0, {0.1, -0.2}, {0, 0});
    std::vector<double> updates;
    solve_factored_eikonal(medium, {0, 0}, grid, {}, &updates);
    REQUIRE(updates.size() >= 2);
    for (size_t k = 1; k < updates.size(); ++k)
        CHECK(updates[k] <= updates[k - 1] * (1.0 + 1e-6) + 1e-13);
}

TEST_CASE("causality: gradient descent paths end at the source") {
    const auto grid = unit_square(48);
    const auto medium = Medium::gaussian_bump();
    const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
    const auto [si, sj] = source_node(grid, {0, 0});

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, grid.nx - 1);
    for (int walk = 0; walk < 100; ++walk) {
        int i = pick(rng), j = pick(rng);
        double cur = phi.at(i, j);
        for (int step = 0; step < 10000; ++step) {
            if (i == si && j == sj) break;
            int bi = i, bj = j;
            double best = cur;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= grid.nx || jj >= grid.ny) continue;
                    if (phi.at(ii, jj) < best) {
                        best = phi.at(ii, jj);
                        bi = ii;
                        bj = jj;
                    }
                }
            REQUIRE(best <= cur);  // phi nondecreasing along the ray direction
            if (bi == i && bj == j) break;  // local min: must be the source
            i = bi;
            j = bj;
            cur = best;
        }
        CHECK(i == si);
        CHECK(j == sj);
    }
}

TEST_CASE("phase_derivatives: homogeneous closed forms") {
    const auto grid = unit_square(40);
    const auto medium = Medium::homogeneous(1.0);
    const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
    const auto eik = phase_derivatives(phi, medium, {0, 0});

    const double h3 = std::pow(grid.hx, 3);
    for (int j = 2; j < grid.ny - 2; ++j) {
        for (int i = 2; i < grid.nx - 2; ++i) {
            const Vec2 p = grid.node(i, j);
            if (p.norm() <= eik.r_src) continue;
            CHECK(std::abs(eik.grad_phi_sq.x.at(i, j) - 2.0 * p.x) <= 50 * h3);
            CHECK(std::abs(eik.grad_phi_sq.y.at(i, j) - 2.0 * p.y) <= 50 * h3);
            CHECK(std::abs(eik.lap_phi_sq.at(i, j) - 4.0) <= 1e-6);
        }
    }

    // inside the source patch the analytic values are exact by construction
    const auto [si, sj] = source_node(grid, {0, 0});
    const Vec2 q = grid.node(si + 1, sj);
    CHECK(eik.grad_phi_sq.x.at(si + 1, sj) == doctest::Approx(2.0 * q.x));
    CHECK(eik.lap_phi_sq.at(si + 1, sj) == doctest::Approx(4.0));
    CHECK(eik.grad_phi.x.at(si, sj) == 0.0);  // undefined at the source: zeroed
}

TEST_CASE("phase_derivatives: eikonal residual small off the source") {
    const auto grid = unit_square(128);
    const auto medium = Medium::constant_gradient(1.0, {0.1, -0.2}, {0, 0});
    const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
    const auto eik = phase_derivatives(phi, medium, {0, 0});
    double worst = 0.0;
    for (int j = 2; j < grid.ny - 2; ++j) {
        for (int i = 2; i < grid.nx - 2; ++i) {
            const Vec2 p = grid.node(i, j);
            if (p.norm() <= eik.r_src) continue;
            const double gn =
                std::hypot(eik.grad_phi.x.at(i, j), eik.grad_phi.y.at(i, j));
            worst = std::max(worst, std::abs(gn * medium.speed(p) - 1.0));
        }
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("transport v0: homogeneous constant amplitude") {
    const auto grid = unit_square(48);
    const auto medium = Medium::homogeneous(1.0);
    const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
    const auto eik = phase_derivatives(phi, medium, {0, 0});
    const auto v0 = solve_transport_v0(eik, medium);
    const double want = 1.0 / (2.0 * std::sqrt(M_PI));
    for (double v : v0.v0.values) CHECK(std::abs(v - want) <= 1e-8);
}

TEST_CASE("transport v0: positive and self-convergent at order >= 2.5") {
    const auto medium = Medium::constant_gradient(1.0, {0.1, -0.2}, {0, 0});
    std::vector<ScalarField> sols;
    std::vector<CartesianGrid> grids;
    for (int cells : {16, 32, 64}) {
        const auto grid = unit_square(cells);
        const auto phi = solve_factored_eikonal(medium, {0, 0}, grid);
        const auto eik = phase_derivatives(phi, medium, {0, 0});
        auto v0 = solve_transport_v0(eik, medium);
        for (double v : v0.v0.values) CHECK(v > 0.0);
        sols.push_back(std::move(v0.v0));
        grids.push_back(grid);
    }
    // compare on the common coarse nodes, against the finest solve
    auto err_vs_fine = [&](int which) {
        const int scale = 1 << (2 - which);
        double worst = 0.0;
        const auto& g = grids[which];
        for (int j = 3; j < g.ny - 3; ++j)
            for (int i = 3; i < g.nx - 3; ++i) {
                if (g.node(i, j).norm() > 0.35) continue;
                worst = std::max(worst, std::abs(sols[which].at(i, j) -
                                                 sols[2].at(i * scale, j * scale)));
            }
        return worst;
    };
    const double e0 = err_vs_fine(0), e1 = err_vs_fine(1);
    const double order = std::log2(e0 / e1);
    INFO("v0 self errors ", e0, " ", e1, " order ", order);
    CHECK(order >= 2.5);
}

TEST_CASE("transport v1: homogeneous vanishes, finite everywhere") {
    const auto grid = unit_square(48);
    const auto medium = Medium::homogeneous(1.0);
    const auto et = solve_eikonal_transport(medium, {0, 0}, grid);
    for (double v : et.trans.v1.values) {
        CHECK(std::isfinite(v));
        CHECK(std::abs(v) <= 1e-6);
    }
}

TEST_CASE("transport v1: self-convergent at order >= 0.8") {
    const auto medium = Medium::constant_gradient(1.0, {0.1, -0.2}, {0, 0});
    std::vector<ScalarField> sols;
    std::vector<CartesianGrid> grids;
    for (int cells : {16, 32, 64}) {
        const auto grid = unit_square(cells);
        const auto et = solve_eikonal_transport(medium, {0, 0}, grid);
        for (double v : et.trans.v1.values) CHECK(std::isfinite(v));
        sols.push_back(et.trans.v1);
        grids.push_back(grid);
    }
    auto err_vs_fine = [&](int which) {
        const int scale = 1 << (2 - which);
        double worst = 0.0;
        const auto& g = grids[which];
        for (int j = 3; j < g.ny - 3; ++j)
            for (int i = 3; i < g.nx - 3; ++i) {
                if (g.node(i, j).norm() > 0.35) continue;
                worst = std::max(worst, std::abs(sols[which].at(i, j) -
                                                 sols[2].at(i * scale, j * scale)));
            }
        return worst;
    };
    const double e0 = err_vs_fine(0), e1 = err_vs_fine(1);
    const double order = std::log2(e0 / e1);
    INFO("v1 self errors ", e0, " ", e1, " order ", order);
    CHECK(order >= 0.8);
}

}  // TEST_SUITE

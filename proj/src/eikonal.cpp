// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include "hhx/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hhx {
namespace {

constexpr double kWenoEps = 1e-6;
constexpr double kSqrtPiInv = 0.28209479177387814347;  // 1/(2 sqrt(pi))

// ----- one-sided derivative reconstructions -------------------------------
// Get(k) returns the field value k nodes away along the sweep axis.

template <class Get>
double weno5_minus(Get v, double h) {
    const double dm2 = v(-1) - v(-2), dm1 = v(0) - v(-1);
    const double dp0 = v(1) - v(0), dp1 = v(2) - v(1);
    const double dm3 = v(-2) - v(-3);
    const double linear = (-dm2 + 7.0 * dm1 + 7.0 * dp0 - dp1) / (12.0 * h);
    const double h2 = h * h;
    const double a = (dm2 - dm3) / h2;  // second differences
    const double b = (dm1 - dm2) / h2;
    const double c = (dp0 - dm1) / h2;
    const double d = (dp1 - dp0) / h2;
    const double is0 = 13.0 * (a - b) * (a - b) + 3.0 * (a - 3.0 * b) * (a - 3.0 * b);
    const double is1 = 13.0 * (b - c) * (b - c) + 3.0 * (b + c) * (b + c);
    const double is2 = 13.0 * (c - d) * (c - d) + 3.0 * (3.0 * c - d) * (3.0 * c - d);
    const double a0 = 1.0 / ((kWenoEps + is0) * (kWenoEps + is0));
    const double a1 = 6.0 / ((kWenoEps + is1) * (kWenoEps + is1));
    const double a2 = 3.0 / ((kWenoEps + is2) * (kWenoEps + is2));
    const double w0 = a0 / (a0 + a1 + a2);
    const double w2 = a2 / (a0 + a1 + a2);
    const double phi =
        (w0 / 3.0) * (a - 2.0 * b + c) + ((w2 - 0.5) / 6.0) * (b - 2.0 * c + d);
    return linear - phi * h;
}

template <class Get>
double weno5_plus(Get v, double h) {
    auto mirrored = [&](int k) { return v(-k); };
    return -weno5_minus(mirrored, h);
}

template <class Get>
double weno3_minus(Get v, double h) {
    const double s_left = v(0) - 2.0 * v(-1) + v(-2);
    const double s_mid = v(1) - 2.0 * v(0) + v(-1);
    const double r = (kWenoEps + s_left * s_left) / (kWenoEps + s_mid * s_mid);
    const double w = 1.0 / (1.0 + 2.0 * r * r);
    return (1.0 - w) * (v(1) - v(-1)) / (2.0 * h) +
           w * (3.0 * v(0) - 4.0 * v(-1) + v(-2)) / (2.0 * h);
}

template <class Get>
double weno3_plus(Get v, double h) {
    auto mirrored = [&](int k) { return v(-k); };
    return -weno3_minus(mirrored, h);
}

// Order-adaptive biased derivatives at position pos of n along the axis;
// near the domain edge the stencil degrades gracefully (WENO5 -> WENO3 ->
// first order -> whatever one-sided difference exists).
template <class Get>
double biased_minus(Get v, double h, int pos, int n, int order) {
    const int left = pos, right = n - 1 - pos;
    if (order >= 5 && left >= 3 && right >= 2) return weno5_minus(v, h);
    if (order >= 3 && left >= 2 && right >= 1) return weno3_minus(v, h);
    if (left >= 1) return (v(0) - v(-1)) / h;
    return (v(1) - v(0)) / h;
}

template <class Get>
double biased_plus(Get v, double h, int pos, int n, int order) {
    const int left = pos, right = n - 1 - pos;
    if (order >= 5 && right >= 3 && left >= 2) return weno5_plus(v, h);
    if (order >= 3 && right >= 2 && left >= 1) return weno3_plus(v, h);
    if (right >= 1) return (v(1) - v(0)) / h;
    return (v(0) - v(-1)) / h;
}

// ----- 4th-order finite differences with one-sided edge closures ----------

double fd4_first(const double* f, int pos, int n, int stride, double h) {
    auto v = [&](int k) { return f[(pos + k) * stride]; };
    if (pos >= 2 && pos <= n - 3)
        return (-v(2) + 8.0 * v(1) - 8.0 * v(-1) + v(-2)) / (12.0 * h);
    if (pos == 0)
        return (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) /
               (12.0 * h);
    if (pos == 1)
        return (-3.0 * v(-1) - 10.0 * v(0) + 18.0 * v(1) - 6.0 * v(2) + v(3)) / (12.0 * h);
    if (pos == n - 1)
        return (25.0 * v(0) - 48.0 * v(-1) + 36.0 * v(-2) - 16.0 * v(-3) + 3.0 * v(-4)) /
               (12.0 * h);
    // pos == n - 2
    return (3.0 * v(1) + 10.0 * v(0) - 18.0 * v(-1) + 6.0 * v(-2) - v(-3)) / (12.0 * h);
}

double fd4_second(const double* f, int pos, int n, int stride, double h) {
    auto v = [&](int k) { return f[(pos + k) * stride]; };
    if (pos >= 2 && pos <= n - 3)
        return (-v(2) + 16.0 * v(1) - 30.0 * v(0) + 16.0 * v(-1) - v(-2)) / (12.0 * h * h);
    if (pos == 0) return (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / (h * h);
    if (pos == n - 1) return (2.0 * v(0) - 5.0 * v(-1) + 4.0 * v(-2) - v(-3)) / (h * h);
    return (v(1) - 2.0 * v(0) + v(-1)) / (h * h);  // pos 1 or n-2
}

void fd4_gradient(const ScalarField& f, VectorField& out) {
    const auto& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            out.x.at(i, j) = fd4_first(&f.values[g.index(0, j)], i, g.nx, 1, g.hx);
            out.y.at(i, j) = fd4_first(&f.values[g.index(i, 0)], j, g.ny, g.nx, g.hy);
        }
}

void fd4_laplacian(const ScalarField& f, ScalarField& out) {
    const auto& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = fd4_second(&f.values[g.index(0, j)], i, g.nx, 1, g.hx) +
                           fd4_second(&f.values[g.index(i, 0)], j, g.ny, g.nx, g.hy);
}

// The four alternating Gauss-Seidel orderings.
struct SweepOrder {
    int i0, i1, istep, j0, j1, jstep;
};

std::array<SweepOrder, 4> sweep_orders(int nx, int ny) {
    return {{{0, nx, 1, 0, ny, 1},
             {nx - 1, -1, -1, 0, ny, 1},
             {nx - 1, -1, -1, ny - 1, -1, -1},
             {0, nx, 1, ny - 1, -1, -1}}};
}

}  // namespace

std::pair<int, int> source_node(const CartesianGrid& grid, Vec2 x0) {
    const double fi = (x0.x - grid.origin.x) / grid.hx;
    const double fj = (x0.y - grid.origin.y) / grid.hy;
    const int i = static_cast<int>(std::lround(fi));
    const int j = static_cast<int>(std::lround(fj));
    if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny ||
        std::abs(fi - i) > 1e-9 || std::abs(fj - j) > 1e-9)
        throw std::invalid_argument("source_node: x0 does not coincide with a grid node");
    return {i, j};
}

ScalarField solve_factored_eikonal(const Medium& medium, Vec2 x0,
                                   const CartesianGrid& grid,
                                   const SweepConfig& config,
                                   std::vector<double>* cycle_updates) {
    if (grid.nx < 5 || grid.ny < 5)
        throw std::invalid_argument("solve_factored_eikonal: grid too small for WENO stencils");
    const auto [si, sj] = source_node(grid, x0);
    const int nx = grid.nx, ny = grid.ny;
    const double m0 = medium.slowness_sq(x0);
    const double s0 = std::sqrt(m0);  // slowness at the source

    // factored ingredients: phi0 and its gradient
    ScalarField phi0(grid);
    VectorField gphi0(grid);
    ScalarField slowness(grid);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Vec2 d = grid.node(i, j) - x0;
            const double r = d.norm();
            phi0.at(i, j) = s0 * r;
            gphi0.x.at(i, j) = r > 0 ? s0 * d.x / r : 0.0;
            gphi0.y.at(i, j) = r > 0 ? s0 * d.y / r : 0.0;
            slowness.at(i, j) = std::sqrt(medium.slowness_sq(grid.node(i, j)));
        }
    }

    ScalarField tau(grid, 1.0);
    const auto orders = sweep_orders(nx, ny);

    auto run_stage = [&](int order, double tol, int max_cycles, bool record) {
        for (int cycle = 0; cycle < max_cycles; ++cycle) {
            // per-axis viscosities from the current iterate:
            // dH/dp = phi0 * w_x / |w| with w = tau grad(phi0) + phi0 grad(tau)
            double sx = 0.0, sy = 0.0;
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    if (i == si && j == sj) continue;
                    const double tx =
                        (tau.values[grid.index(std::min(i + 1, nx - 1), j)] -
                         tau.values[grid.index(std::max(i - 1, 0), j)]) /
                        ((std::min(i + 1, nx - 1) - std::max(i - 1, 0)) * grid.hx);
                    const double ty =
                        (tau.values[grid.index(i, std::min(j + 1, ny - 1))] -
                         tau.values[grid.index(i, std::max(j - 1, 0))]) /
                        ((std::min(j + 1, ny - 1) - std::max(j - 1, 0)) * grid.hy);
                    const double wx = tau.at(i, j) * gphi0.x.at(i, j) + phi0.at(i, j) * tx;
                    const double wy = tau.at(i, j) * gphi0.y.at(i, j) + phi0.at(i, j) * ty;
                    const double wn = std::max(std::hypot(wx, wy), 1e-12);
                    sx = std::max(sx, phi0.at(i, j) * std::abs(wx) / wn);
                    sy = std::max(sy, phi0.at(i, j) * std::abs(wy) / wn);
                }
            }
            sx = config.lf_margin * std::max(sx, 1e-12);
            sy = config.lf_margin * std::max(sy, 1e-12);
            const double denom = sx / grid.hx + sy / grid.hy;

            double max_update = 0.0;
            for (const auto& ord : orders) {
                for (int j = ord.j0; j != ord.j1; j += ord.jstep) {
                    for (int i = ord.i0; i != ord.i1; i += ord.istep) {
                        if (i == si && j == sj) continue;
                        double* base = tau.values.data();
                        auto vx = [&](int k) { return base[grid.index(i + k, j)]; };
                        auto vy = [&](int k) { return base[grid.index(i, j + k)]; };
                        const double pm = biased_minus(vx, grid.hx, i, nx, order);
                        const double pp = biased_plus(vx, grid.hx, i, nx, order);
                        const double qm = biased_minus(vy, grid.hy, j, ny, order);
                        const double qp = biased_plus(vy, grid.hy, j, ny, order);
                        const double pc = 0.5 * (pm + pp), qc = 0.5 * (qm + qp);
                        const double wx =
                            tau.at(i, j) * gphi0.x.at(i, j) + phi0.at(i, j) * pc;
                        const double wy =
                            tau.at(i, j) * gphi0.y.at(i, j) + phi0.at(i, j) * qc;
                        const double ham = std::hypot(wx, wy) - slowness.at(i, j);
                        const double visc =
                            0.5 * sx * (pp - pm) + 0.5 * sy * (qp - qm);
                        const double tnew = tau.at(i, j) + (-ham + visc) / denom;
                        max_update = std::max(max_update, std::abs(tnew - tau.at(i, j)));
                        tau.at(i, j) = tnew;
                    }
                }
            }
            if (record && cycle_updates) cycle_updates->push_back(max_update);
            if (max_update < tol) return true;
        }
        return false;
    };

    // first-order pass gives the WENO stage a causally ordered start
    const bool first_ok = run_stage(1, std::max(config.tolerance, 1e-10),
                                    config.max_sweeps, config.weno_order <= 1);
    if (config.weno_order <= 1) {
        if (!first_ok)
            throw std::runtime_error("solve_factored_eikonal: sweeping did not converge");
    } else if (!run_stage(config.weno_order, config.tolerance, config.max_sweeps, true)) {
        throw std::runtime_error("solve_factored_eikonal: sweeping did not converge");
    }

    ScalarField phi(grid);
    for (size_t k = 0; k < phi.values.size(); ++k)
        phi.values[k] = phi0.values[k] * tau.values[k];
    phi.values[static_cast<size_t>(grid.index(si, sj))] = 0.0;
    return phi;
}

EikonalResult phase_derivatives(const ScalarField& phi, const Medium& medium, Vec2 x0,
                                double r_src) {
    const auto& g = phi.grid;
    const auto [si, sj] = source_node(g, x0);
    (void)si;
    (void)sj;
    if (r_src <= 0.0) r_src = 3.0 * std::max(g.hx, g.hy);

    EikonalResult out{ScalarField(g), VectorField(g), ScalarField(g), VectorField(g), x0,
                      r_src};
    out.phi = phi;

    ScalarField phi_sq(g);
    for (size_t k = 0; k < phi.values.size(); ++k)
        phi_sq.values[k] = phi.values[k] * phi.values[k];

    // averaged one-sided WENO-3 derivatives of phi^2
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double* base = phi_sq.values.data();
            auto vx = [&](int k) { return base[g.index(i + k, j)]; };
            auto vy = [&](int k) { return base[g.index(i, j + k)]; };
            out.grad_phi_sq.x.at(i, j) = 0.5 * (biased_minus(vx, g.hx, i, g.nx, 3) +
                                                biased_plus(vx, g.hx, i, g.nx, 3));
            out.grad_phi_sq.y.at(i, j) = 0.5 * (biased_minus(vy, g.hy, j, g.ny, 3) +
                                                biased_plus(vy, g.hy, j, g.ny, 3));
        }
    }
    fd4_laplacian(phi_sq, out.lap_phi_sq);

    const double m0 = medium.slowness_sq(x0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 d = g.node(i, j) - x0;
            const double r = d.norm();
            if (r <= r_src) {
                // frozen-speed analytic values around the source
                out.grad_phi_sq.x.at(i, j) = 2.0 * m0 * d.x;
                out.grad_phi_sq.y.at(i, j) = 2.0 * m0 * d.y;
                out.lap_phi_sq.at(i, j) = 4.0 * m0;
                out.grad_phi.x.at(i, j) = r > 0 ? std::sqrt(m0) * d.x / r : 0.0;
                out.grad_phi.y.at(i, j) = r > 0 ? std::sqrt(m0) * d.y / r : 0.0;
            } else {
                const double two_phi = 2.0 * phi.at(i, j);
                out.grad_phi.x.at(i, j) = out.grad_phi_sq.x.at(i, j) / two_phi;
                out.grad_phi.y.at(i, j) = out.grad_phi_sq.y.at(i, j) / two_phi;
            }
        }
    }
    return out;
}

namespace {

// Gauss-Seidel sweeping for the linear advection-reaction equation
//   a . grad v + b v = rhs,   v(source node) pinned.
// The advection term is upwinded by the sign of a (one-sided WENO
// reconstructions on the inflow side); inside first_order_radius the
// stencils drop to first order.
ScalarField sweep_linear_transport(const VectorField& a, const ScalarField& b,
                                   const ScalarField& rhs, Vec2 x0, double pinned_value,
                                   const SweepConfig& config, double first_order_radius) {
    const auto& g = a.x.grid;
    const auto [si, sj] = source_node(g, x0);
    const int nx = g.nx, ny = g.ny;

    ScalarField v(g, pinned_value);
    const auto orders = sweep_orders(nx, ny);
    bool converged = false;
    for (int cycle = 0; cycle < config.max_sweeps && !converged; ++cycle) {
        double max_update = 0.0;
        for (const auto& ord : orders) {
            for (int j = ord.j0; j != ord.j1; j += ord.jstep) {
                for (int i = ord.i0; i != ord.i1; i += ord.istep) {
                    if (i == si && j == sj) continue;
                    const double ax = a.x.at(i, j), ay = a.y.at(i, j);
                    const double denom =
                        b.at(i, j) + std::abs(ax) / g.hx + std::abs(ay) / g.hy;
                    if (!(denom > 0.0))
                        throw std::runtime_error(
                            "transport sweep: nonpositive relaxation denominator");
                    double* base = v.values.data();
                    auto vx = [&](int k) { return base[g.index(i + k, j)]; };
                    auto vy = [&](int k) { return base[g.index(i, j + k)]; };
                    const Vec2 d = g.node(i, j) - x0;
                    const int order =
                        (config.factorization_order <= 1 && d.norm() <= first_order_radius)
                            ? 1
                            : config.weno_order;
                    const double dvx = ax >= 0.0 ? biased_minus(vx, g.hx, i, nx, order)
                                                 : biased_plus(vx, g.hx, i, nx, order);
                    const double dvy = ay >= 0.0 ? biased_minus(vy, g.hy, j, ny, order)
                                                 : biased_plus(vy, g.hy, j, ny, order);
                    const double ham = ax * dvx + ay * dvy + b.at(i, j) * v.at(i, j);
                    const double vnew = v.at(i, j) + (rhs.at(i, j) - ham) / denom;
                    max_update = std::max(max_update, std::abs(vnew - v.at(i, j)));
                    v.at(i, j) = vnew;
                }
            }
        }
        converged = max_update < config.tolerance;
    }
    if (!converged)
        throw std::runtime_error("transport sweep: did not converge");
    return v;
}

}  // namespace

V0Result solve_transport_v0(const EikonalResult& eik, const Medium& medium,
                            const SweepConfig& config) {
    const auto& g = eik.phi.grid;
    ScalarField b(g), zero(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            b.at(i, j) =
                -2.0 * medium.slowness_sq(g.node(i, j)) + 0.5 * eik.lap_phi_sq.at(i, j);

    // multiplicative factoring against the frozen-speed amplitude, which in
    // 2D is the constant 1/(2 sqrt(pi)); the swept factor is 1 at the source
    ScalarField vhat =
        sweep_linear_transport(eik.grad_phi_sq, b, zero, eik.x0, 1.0, config, eik.r_src);

    V0Result out{ScalarField(g), VectorField(g), ScalarField(g)};
    for (size_t k = 0; k < vhat.values.size(); ++k)
        out.v0.values[k] = kSqrtPiInv * vhat.values[k];
    fd4_gradient(out.v0, out.grad_v0);
    fd4_laplacian(out.v0, out.lap_v0);
    return out;
}

V1Result solve_transport_v1(const EikonalResult& eik, const ScalarField& lap_v0,
                            const Medium& medium, const SweepConfig& config) {
    const auto& g = eik.phi.grid;
    (void)medium;
    ScalarField b(g), rhs(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            b.at(i, j) = 0.5 * eik.lap_phi_sq.at(i, j);  // (2p - d) m = 0 at p=1, d=2
            rhs.at(i, j) = 0.5 * lap_v0.at(i, j);
        }
    }
    const auto [si, sj] = source_node(g, eik.x0);
    const double pinned = rhs.at(si, sj) / b.at(si, sj);  // bounded value at x0

    ScalarField v1 =
        sweep_linear_transport(eik.grad_phi_sq, b, rhs, eik.x0, pinned, config, eik.r_src);
    V1Result out{ScalarField(g), VectorField(g)};
    out.v1 = std::move(v1);
    fd4_gradient(out.v1, out.grad_v1);
    return out;
}

EikonalTransport solve_eikonal_transport(const Medium& medium, Vec2 x0,
                                         const CartesianGrid& grid,
                                         double sweep_tolerance) {
    SweepConfig phi_cfg;
    phi_cfg.weno_order = 5;
    phi_cfg.factorization_order = 6;
    phi_cfg.tolerance = sweep_tolerance;
    const ScalarField phi = solve_factored_eikonal(medium, x0, grid, phi_cfg);
    EikonalResult eik = phase_derivatives(phi, medium, x0);

    SweepConfig v0_cfg;
    v0_cfg.weno_order = 3;
    v0_cfg.factorization_order = 3;
    v0_cfg.tolerance = sweep_tolerance;
    V0Result v0 = solve_transport_v0(eik, medium, v0_cfg);

    SweepConfig v1_cfg;
    v1_cfg.weno_order = 3;
    v1_cfg.factorization_order = 1;
    v1_cfg.tolerance = sweep_tolerance;
    V1Result v1 = solve_transport_v1(eik, v0.lap_v0, medium, v1_cfg);

    EikonalTransport out{std::move(eik),
                         TransportResult{std::move(v0.v0), std::move(v0.grad_v0),
                                         std::move(v0.lap_v0), std::move(v1.v1),
                                         std::move(v1.grad_v1)}};
    return out;
}

}  // namespace hhx

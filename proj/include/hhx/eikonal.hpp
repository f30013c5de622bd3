// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hhx/grid.hpp"
#include "hhx/media.hpp"

namespace hhx {

/// Knobs of the Lax-Friedrichs WENO sweeping solvers.
struct SweepConfig {
    int weno_order = 5;          // one-sided derivative order: 1, 3 or 5
    int factorization_order = 6; // 1 switches to first-order stencils near the source
    double lf_margin = 1.1;      // safety factor on the per-axis viscosities
    double tolerance = 1e-12;    // max node update per cycle of 4 sweeps
    int max_sweeps = 1000;       // cycles; global LxF viscosity converges slowly
};

struct EikonalResult {
    ScalarField phi;          // travel time, phi(x0) = 0
    VectorField grad_phi_sq;  // gradient of phi^2
    ScalarField lap_phi_sq;   // Laplacian of phi^2
    VectorField grad_phi;
    Vec2 x0;
    double r_src = 0.0;  // radius of the analytic source patch
};

struct TransportResult {
    ScalarField v0;
    VectorField grad_v0;
    ScalarField lap_v0;
    ScalarField v1;
    VectorField grad_v1;
};

/// Travel time phi for |grad phi| = 1/c, phi(x0) = 0, via the multiplicative
/// factorization phi = phi0 * tau with phi0(x) = |x - x0|/c(x0); tau is swept
/// to convergence with the LxF scheme and WENO one-sided derivatives.
/// x0 must coincide with a grid node. Throws std::runtime_error when the
/// sweeps do not reach the tolerance within config.max_sweeps cycles.
/// cycle_updates, when given, receives the max node update of every
/// high-order sweep cycle (diagnostics).
ScalarField solve_factored_eikonal(const Medium& medium, Vec2 x0,
                                   const CartesianGrid& grid,
                                   const SweepConfig& config = {},
                                   std::vector<double>* cycle_updates = nullptr);

/// Post-processes phi: grad(phi^2) by averaged one-sided WENO-3 differences,
/// Lap(phi^2) by 4th-order finite differences, grad phi = grad(phi^2)/(2 phi).
/// Inside |x - x0| <= r_src all three are replaced by the frozen-speed
/// analytic values (2 m0 (x-x0), 4 m0, sqrt(m0) (x-x0)/r).
EikonalResult phase_derivatives(const ScalarField& phi, const Medium& medium, Vec2 x0,
                                double r_src = -1.0 /* default 3 max(hx,hy) */);

struct V0Result {
    ScalarField v0;
    VectorField grad_v0;
    ScalarField lap_v0;
};

/// First transport coefficient: grad(phi^2) . grad v0 + [-2m + Lap(phi^2)/2] v0 = 0
/// with v0(x0) = 1/(2 sqrt(pi)), solved for the smooth factor against the
/// frozen-speed amplitude; derivatives by 4th-order finite differences.
V0Result solve_transport_v0(const EikonalResult& eik, const Medium& medium,
                            const SweepConfig& config = {.weno_order = 3,
                                                         .factorization_order = 3});

struct V1Result {
    ScalarField v1;
    VectorField grad_v1;
};

/// Second transport coefficient: grad(phi^2) . grad v1 + [Lap(phi^2)/2] v1
/// = Lap(v0)/2, bounded at the source (first-order treatment there).
V1Result solve_transport_v1(const EikonalResult& eik, const ScalarField& lap_v0,
                            const Medium& medium,
                            const SweepConfig& config = {.weno_order = 3,
                                                         .factorization_order = 1});

struct EikonalTransport {
    EikonalResult eik;
    TransportResult trans;
};

/// Full chain: eikonal, derivatives, v0, v1 (frequency independent).
EikonalTransport solve_eikonal_transport(const Medium& medium, Vec2 x0,
                                         const CartesianGrid& grid,
                                         double sweep_tolerance = 1e-12);

/// Index of the grid node coinciding with x0; throws std::invalid_argument
/// when x0 is not a node.
std::pair<int, int> source_node(const CartesianGrid& grid, Vec2 x0);

}  // namespace hhx

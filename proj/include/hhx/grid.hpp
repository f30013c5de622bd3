// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace hhx {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Uniform tensor grid of nx-by-ny nodes; node (i,j) sits at
/// origin + (i hx, j hy). Storage order everywhere is row-major with the
/// y index outer: flat = j*nx + i.
struct CartesianGrid {
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    Vec2 origin;

    CartesianGrid() = default;
    CartesianGrid(int nx_, int ny_, double hx_, double hy_, Vec2 origin_);

    int num_nodes() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    Vec2 node(int i, int j) const { return {origin.x + i * hx, origin.y + j * hy}; }
    Vec2 upper_right() const { return node(nx - 1, ny - 1); }
    bool contains(Vec2 p, double tol = 1e-12) const;
};

/// Builds the square grid on [-half, half]^2 whose spacing is closest to h
/// from below (so the requested resolution is never undercut).
CartesianGrid make_square_grid(double half_extent, double h);

template <typename T>
struct Field {
    CartesianGrid grid;
    std::vector<T> values;

    Field() = default;
    explicit Field(const CartesianGrid& g, T fill = T{})
        : grid(g), values(static_cast<size_t>(g.num_nodes()), fill) {}

    T& at(int i, int j) { return values[static_cast<size_t>(grid.index(i, j))]; }
    const T& at(int i, int j) const { return values[static_cast<size_t>(grid.index(i, j))]; }
};

using ScalarField = Field<double>;
using ComplexField = Field<std::complex<double>>;

template <typename T>
struct VectorField2 {
    Field<T> x, y;

    VectorField2() = default;
    explicit VectorField2(const CartesianGrid& g) : x(g), y(g) {}
};

using VectorField = VectorField2<double>;
using ComplexVectorField = VectorField2<std::complex<double>>;

/// Bilinear interpolation of a nodal field at point p (must lie inside the
/// grid bounding box). Exact for functions a + bx + cy + dxy.
template <typename T>
T bilinear_eval(const Field<T>& field, Vec2 p);

/// Structured triangulation: each grid cell is split along its lower-left to
/// upper-right diagonal into two counterclockwise right triangles.
struct TriMesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> elements;
    std::vector<int> boundary_nodes;  // sorted
    // cell arithmetic for O(1) point location
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    Vec2 origin;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    double element_area() const { return 0.5 * hx * hy; }
    bool is_boundary(int node) const;
};

TriMesh triangulate(const CartesianGrid& grid);

struct Location {
    int element = -1;
    std::array<double, 3> bary{};
};

/// Locates p in the mesh. Ties on shared edges go to the lowest element
/// index. Throws std::out_of_range when p lies outside the closed domain.
Location locate(const TriMesh& mesh, Vec2 p);

/// Symmetric quadrature rule on the reference triangle, exact for bivariate
/// polynomials up to `degree`. Weights sum to one, so
/// integral over K = area(K) * sum_q w_q f(x_q).
struct QuadratureRule {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> weights;
    int degree = 0;

    int size() const { return static_cast<int>(weights.size()); }
    Vec2 point(const TriMesh& mesh, int element, int q) const;
};

QuadratureRule quadrature(int degree);

}  // namespace hhx

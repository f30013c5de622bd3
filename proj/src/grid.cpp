// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include "hhx/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hhx {

CartesianGrid::CartesianGrid(int nx_, int ny_, double hx_, double hy_, Vec2 origin_)
    : nx(nx_), ny(ny_), hx(hx_), hy(hy_), origin(origin_) {
    // The sweeping solvers need >= 5 nodes per axis for their stencils and
    // check that themselves; meshes and fields are fine from 2x2 up.
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("CartesianGrid: need at least 2 nodes per axis");
    if (!(hx > 0.0) || !(hy > 0.0))
        throw std::invalid_argument("CartesianGrid: spacings must be positive");
}

bool CartesianGrid::contains(Vec2 p, double tol) const {
    const Vec2 ur = upper_right();
    const double tx = tol * (ur.x - origin.x), ty = tol * (ur.y - origin.y);
    return p.x >= origin.x - tx && p.x <= ur.x + tx && p.y >= origin.y - ty &&
           p.y <= ur.y + ty;
}

CartesianGrid make_square_grid(double half_extent, double h) {
    const int cells = static_cast<int>(std::ceil(2.0 * half_extent / h - 1e-12));
    const int n = std::max(cells, 4) + 1;
    const double spacing = 2.0 * half_extent / (n - 1);
    return CartesianGrid(n, n, spacing, spacing, {-half_extent, -half_extent});
}

template <typename T>
T bilinear_eval(const Field<T>& field, Vec2 p) {
    const CartesianGrid& g = field.grid;
    if (!g.contains(p))
        throw std::out_of_range("bilinear_eval: point outside grid");
    int i = static_cast<int>(std::floor((p.x - g.origin.x) / g.hx));
    int j = static_cast<int>(std::floor((p.y - g.origin.y) / g.hy));
    i = std::clamp(i, 0, g.nx - 2);
    j = std::clamp(j, 0, g.ny - 2);
    const double fx = (p.x - g.origin.x) / g.hx - i;
    const double fy = (p.y - g.origin.y) / g.hy - j;
    const T v00 = field.at(i, j), v10 = field.at(i + 1, j);
    const T v01 = field.at(i, j + 1), v11 = field.at(i + 1, j + 1);
    return v00 * ((1 - fx) * (1 - fy)) + v10 * (fx * (1 - fy)) +
           v01 * ((1 - fx) * fy) + v11 * (fx * fy);
}

template double bilinear_eval<double>(const Field<double>&, Vec2);
template std::complex<double> bilinear_eval<std::complex<double>>(
    const Field<std::complex<double>>&, Vec2);

TriMesh triangulate(const CartesianGrid& grid) {
    TriMesh m;
    m.nx = grid.nx;
    m.ny = grid.ny;
    m.hx = grid.hx;
    m.hy = grid.hy;
    m.origin = grid.origin;
    m.nodes.reserve(static_cast<size_t>(grid.num_nodes()));
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) m.nodes.push_back(grid.node(i, j));

    m.elements.reserve(static_cast<size_t>(2 * (grid.nx - 1) * (grid.ny - 1)));
    for (int j = 0; j + 1 < grid.ny; ++j) {
        for (int i = 0; i + 1 < grid.nx; ++i) {
            const int a = grid.index(i, j), b = grid.index(i + 1, j);
            const int c = grid.index(i + 1, j + 1), d = grid.index(i, j + 1);
            m.elements.push_back({a, b, c});  // below the a-c diagonal
            m.elements.push_back({a, c, d});  // above it
        }
    }

    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1)
                m.boundary_nodes.push_back(grid.index(i, j));
    return m;
}

bool TriMesh::is_boundary(int node) const {
    return std::binary_search(boundary_nodes.begin(), boundary_nodes.end(), node);
}

namespace {

// Barycentric coordinates of p in mesh element e.
std::array<double, 3> barycentric(const TriMesh& m, int e, Vec2 p) {
    const auto& el = m.elements[static_cast<size_t>(e)];
    const Vec2 a = m.nodes[static_cast<size_t>(el[0])];
    const Vec2 b = m.nodes[static_cast<size_t>(el[1])];
    const Vec2 c = m.nodes[static_cast<size_t>(el[2])];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double l1 = ((b.x - p.x) * (c.y - p.y) - (c.x - p.x) * (b.y - p.y)) / det;
    const double l2 = ((c.x - p.x) * (a.y - p.y) - (a.x - p.x) * (c.y - p.y)) / det;
    return {l1, l2, 1.0 - l1 - l2};
}

constexpr double kBaryTol = 1e-12;

bool inside(const std::array<double, 3>& b) {
    return b[0] >= -kBaryTol && b[1] >= -kBaryTol && b[2] >= -kBaryTol;
}

}  // namespace

Location locate(const TriMesh& mesh, Vec2 p) {
    const double ux = (p.x - mesh.origin.x) / mesh.hx;
    const double uy = (p.y - mesh.origin.y) / mesh.hy;
    if (ux < -kBaryTol * mesh.nx || uy < -kBaryTol * mesh.ny ||
        ux > mesh.nx - 1 + kBaryTol * mesh.nx || uy > mesh.ny - 1 + kBaryTol * mesh.ny)
        throw std::out_of_range("locate: point outside mesh");

    // Candidate cells around the containing one; walking them in increasing
    // element order makes edge ties land on the lowest element index.
    const int ci = std::clamp(static_cast<int>(std::floor(ux)), 0, mesh.nx - 2);
    const int cj = std::clamp(static_cast<int>(std::floor(uy)), 0, mesh.ny - 2);
    std::array<int, 9> cells{};
    int ncand = 0;
    for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
            const int i = ci + di, j = cj + dj;
            if (i >= 0 && i <= mesh.nx - 2 && j >= 0 && j <= mesh.ny - 2)
                cells[static_cast<size_t>(ncand++)] = j * (mesh.nx - 1) + i;
        }
    }
    std::sort(cells.begin(), cells.begin() + ncand);

    for (int n = 0; n < ncand; ++n) {
        for (int half = 0; half < 2; ++half) {
            const int e = 2 * cells[static_cast<size_t>(n)] + half;
            const auto b = barycentric(mesh, e, p);
            if (inside(b)) return {e, b};
        }
    }
    throw std::out_of_range("locate: point not contained in any candidate element");
}

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = 0.5 * (1.0 - z);  // map [-1,1] -> [0,1]
        w[static_cast<size_t>(i)] = 1.0 / ((1.0 - z * z) * pp * pp);
    }
}

void push_symmetrized(QuadratureRule& rule, double l1, double l2, double l3, double w) {
    rule.bary.push_back({l1, l2, l3});
    rule.bary.push_back({l3, l1, l2});
    rule.bary.push_back({l2, l3, l1});
    for (int k = 0; k < 3; ++k) rule.weights.push_back(w / 3.0);
}

}  // namespace

QuadratureRule quadrature(int degree) {
    if (degree < 1 || degree > 20)
        throw std::invalid_argument("quadrature: degree must be in 1..20, got " +
                                    std::to_string(degree));
    QuadratureRule rule;
    rule.degree = degree;
    if (degree == 1) {
        rule.bary.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        rule.weights.push_back(1.0);
        return rule;
    }
    if (degree == 2) {
        push_symmetrized(rule, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0);
        return rule;
    }

    // Collapsed tensor Gauss rule on the reference triangle
    // (x = u, y = v (1-u), dA = (1-u) du dv), symmetrized over the three
    // cyclic vertex permutations so the rule is invariant under the
    // triangle's symmetries while keeping polynomial exactness.
    const int nu = (degree + 3) / 2;  // exact through u-degree 2nu-1 >= degree+1
    const int nv = (degree + 2) / 2;
    std::vector<double> xu, wu, xv, wv;
    gauss_legendre_01(nu, xu, wu);
    gauss_legendre_01(nv, xv, wv);
    for (int a = 0; a < nu; ++a) {
        for (int b = 0; b < nv; ++b) {
            const double u = xu[static_cast<size_t>(a)], v = xv[static_cast<size_t>(b)];
            const double x = u, y = v * (1.0 - u);
            const double w =
                2.0 * wu[static_cast<size_t>(a)] * wv[static_cast<size_t>(b)] * (1.0 - u);
            push_symmetrized(rule, 1.0 - x - y, x, y, w);
        }
    }
    return rule;
}

Vec2 QuadratureRule::point(const TriMesh& mesh, int element, int q) const {
    const auto& el = mesh.elements[static_cast<size_t>(element)];
    const auto& b = bary[static_cast<size_t>(q)];
    const Vec2 a = mesh.nodes[static_cast<size_t>(el[0])];
    const Vec2 bb = mesh.nodes[static_cast<size_t>(el[1])];
    const Vec2 c = mesh.nodes[static_cast<size_t>(el[2])];
    return a * b[0] + bb * b[1] + c * b[2];
}

}  // namespace hhx

// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include "hhx/sparse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/UmfPackSupport>

namespace hhx::sparse {

ComplexCSR csr_from_triplets(int n, const std::vector<Triplet>& triplets) {
    for (const auto& t : triplets)
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
            throw std::out_of_range("csr_from_triplets: index out of range");

    std::vector<int> order(triplets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ta = triplets[static_cast<size_t>(a)];
        const auto& tb = triplets[static_cast<size_t>(b)];
        return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
    });

    ComplexCSR A;
    A.n = n;
    A.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    int prev_row = -1, prev_col = -1;
    for (int idx : order) {
        const auto& t = triplets[static_cast<size_t>(idx)];
        if (t.row == prev_row && t.col == prev_col) {
            A.val.back() += t.value;  // duplicate (row, col): accumulate
            continue;
        }
        A.col.push_back(t.col);
        A.val.push_back(t.value);
        A.row_ptr[static_cast<size_t>(t.row) + 1] = static_cast<int>(A.col.size());
        prev_row = t.row;
        prev_col = t.col;
    }
    // turn per-row end markers into offsets
    for (size_t r = 1; r < A.row_ptr.size(); ++r)
        A.row_ptr[r] = std::max(A.row_ptr[r], A.row_ptr[r - 1]);
    return A;
}

std::vector<Complex> matvec(const ComplexCSR& A, const std::vector<Complex>& x) {
    if (static_cast<int>(x.size()) != A.n)
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<Complex> y(static_cast<size_t>(A.n));
    for (int r = 0; r < A.n; ++r) {
        Complex acc = 0.0;
        for (int k = A.row_ptr[static_cast<size_t>(r)];
             k < A.row_ptr[static_cast<size_t>(r) + 1]; ++k)
            acc += A.val[static_cast<size_t>(k)] * x[static_cast<size_t>(A.col[static_cast<size_t>(k)])];
        y[static_cast<size_t>(r)] = acc;
    }
    return y;
}

namespace {

double norm2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

Preconditioner pick_preconditioner(const ComplexCSR& A, const SolverConfig& cfg) {
    switch (cfg.preconditioner) {
        case PrecondKind::None:
            return {};
        case PrecondKind::BlockJacobi:
            return make_block_jacobi(A, cfg.block_size);
        case PrecondKind::UserHook:
            if (!cfg.user_hook)
                throw std::invalid_argument("gmres: UserHook selected but hook empty");
            return cfg.user_hook;
    }
    return {};
}

}  // namespace

std::pair<std::vector<Complex>, SolveReport> gmres(const ComplexCSR& A,
                                                   const std::vector<Complex>& b,
                                                   const SolverConfig& config) {
    if (static_cast<int>(b.size()) != A.n)
        throw std::invalid_argument("gmres: dimension mismatch");
    const auto t0 = std::chrono::steady_clock::now();
    const Preconditioner precond = pick_preconditioner(A, config);
    const int n = A.n;
    const int m = std::max(1, config.restart);

    SolveReport report;
    report.method = "gmres";
    std::vector<Complex> x(static_cast<size_t>(n), 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        report.converged = true;
        return {x, report};
    }

    auto apply_right = [&](const std::vector<Complex>& v) {
        if (!precond) return v;
        std::vector<Complex> out(v.size());
        precond(v, out);
        return out;
    };

    std::vector<std::vector<Complex>> V;
    std::vector<std::vector<Complex>> H;  // H[j] holds column j (size j+2)
    int total_iters = 0;
    double rel = 1.0;
    double prev_cycle_rel = std::numeric_limits<double>::infinity();

    while (total_iters < config.max_iterations) {
        // residual of the unpreconditioned system (right preconditioning
        // leaves it unchanged)
        std::vector<Complex> r = matvec(A, x);
        for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
        double beta = norm2(r);
        rel = beta / bnorm;
        if (rel <= config.rel_tolerance) break;
        if (rel >= prev_cycle_rel) break;  // restart made no progress
        prev_cycle_rel = rel;

        V.assign(1, r);
        for (auto& z : V[0]) z /= beta;
        H.clear();

        std::vector<Complex> g(static_cast<size_t>(m) + 1, 0.0);
        g[0] = beta;
        std::vector<Complex> cs(static_cast<size_t>(m), 0.0);
        std::vector<Complex> sn(static_cast<size_t>(m), 0.0);
        int j = 0;
        bool happy = false;
        for (; j < m && total_iters < config.max_iterations; ++j, ++total_iters) {
            std::vector<Complex> w = matvec(A, apply_right(V[static_cast<size_t>(j)]));
            std::vector<Complex> hcol(static_cast<size_t>(j) + 2, 0.0);
            for (int i = 0; i <= j; ++i) {
                Complex dot = 0.0;
                const auto& vi = V[static_cast<size_t>(i)];
                for (size_t kk = 0; kk < w.size(); ++kk) dot += std::conj(vi[kk]) * w[kk];
                hcol[static_cast<size_t>(i)] = dot;
                for (size_t kk = 0; kk < w.size(); ++kk) w[kk] -= dot * vi[kk];
            }
            const double hnext = norm2(w);
            hcol[static_cast<size_t>(j) + 1] = hnext;

            // apply the accumulated Givens rotations, then zero the subdiagonal
            for (int i = 0; i < j; ++i) {
                const Complex t = hcol[static_cast<size_t>(i)];
                hcol[static_cast<size_t>(i)] =
                    std::conj(cs[static_cast<size_t>(i)]) * t +
                    std::conj(sn[static_cast<size_t>(i)]) * hcol[static_cast<size_t>(i) + 1];
                hcol[static_cast<size_t>(i) + 1] =
                    -sn[static_cast<size_t>(i)] * t +
                    cs[static_cast<size_t>(i)] * hcol[static_cast<size_t>(i) + 1];
            }
            const double denom = std::sqrt(std::norm(hcol[static_cast<size_t>(j)]) +
                                           std::norm(hcol[static_cast<size_t>(j) + 1]));
            if (denom < 1e-300) break;  // dependent column: solve with what we have
            cs[static_cast<size_t>(j)] = hcol[static_cast<size_t>(j)] / denom;
            sn[static_cast<size_t>(j)] = hcol[static_cast<size_t>(j) + 1] / denom;
            hcol[static_cast<size_t>(j)] =
                std::conj(cs[static_cast<size_t>(j)]) * hcol[static_cast<size_t>(j)] +
                std::conj(sn[static_cast<size_t>(j)]) * hcol[static_cast<size_t>(j) + 1];
            hcol[static_cast<size_t>(j) + 1] = 0.0;

            g[static_cast<size_t>(j) + 1] = -sn[static_cast<size_t>(j)] * g[static_cast<size_t>(j)];
            g[static_cast<size_t>(j)] = std::conj(cs[static_cast<size_t>(j)]) * g[static_cast<size_t>(j)];
            H.push_back(hcol);

            rel = std::abs(g[static_cast<size_t>(j) + 1]) / bnorm;
            report.residual_history.push_back(rel);
            if (rel <= config.rel_tolerance || hnext < 1e-300) {
                ++j;
                ++total_iters;
                happy = rel <= config.rel_tolerance;
                break;
            }
            std::vector<Complex> vnext = w;
            for (auto& z : vnext) z /= hnext;
            V.push_back(std::move(vnext));
        }

        // back substitution for y, then x += M^-1 (V y)
        const int k = j;
        if (k > 0) {
            std::vector<Complex> y(static_cast<size_t>(k), 0.0);
            for (int i = k - 1; i >= 0; --i) {
                Complex acc = g[static_cast<size_t>(i)];
                for (int l = i + 1; l < k; ++l)
                    acc -= H[static_cast<size_t>(l)][static_cast<size_t>(i)] * y[static_cast<size_t>(l)];
                y[static_cast<size_t>(i)] = acc / H[static_cast<size_t>(i)][static_cast<size_t>(i)];
            }
            std::vector<Complex> update(static_cast<size_t>(n), 0.0);
            for (int l = 0; l < k; ++l)
                for (int i = 0; i < n; ++i)
                    update[static_cast<size_t>(i)] +=
                        V[static_cast<size_t>(l)][static_cast<size_t>(i)] * y[static_cast<size_t>(l)];
            update = apply_right(update);
            for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] += update[static_cast<size_t>(i)];
        }
        if (happy) break;
        if (k == 0) break;  // no progress possible
    }

    {
        std::vector<Complex> r = matvec(A, x);
        for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
        rel = norm2(r) / bnorm;
    }
    report.iterations = total_iters;
    report.relative_residual = rel;
    report.converged = rel <= config.rel_tolerance;
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {x, report};
}

namespace {

Eigen::SparseMatrix<Complex> to_eigen(const ComplexCSR& A) {
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(A.val.size());
    for (int r = 0; r < A.n; ++r)
        for (int k = A.row_ptr[static_cast<size_t>(r)];
             k < A.row_ptr[static_cast<size_t>(r) + 1]; ++k)
            trip.emplace_back(r, A.col[static_cast<size_t>(k)], A.val[static_cast<size_t>(k)]);
    Eigen::SparseMatrix<Complex> M(A.n, A.n);
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();
    return M;
}

}  // namespace

std::vector<Complex> direct_solve(const ComplexCSR& A, const std::vector<Complex>& b) {
    if (static_cast<int>(b.size()) != A.n)
        throw std::invalid_argument("direct_solve: dimension mismatch");
    const Eigen::SparseMatrix<Complex> M = to_eigen(A);
    Eigen::UmfPackLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("direct_solve: factorization failed (singular matrix?)");
    Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), A.n);
    Eigen::VectorXcd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("direct_solve: solve failed");
    return {sol.data(), sol.data() + A.n};
}

std::pair<std::vector<Complex>, SolveReport> solve(const ComplexCSR& A,
                                                   const std::vector<Complex>& b,
                                                   const SolverConfig& config) {
    if (config.method == SolveMethod::Gmres) return gmres(A, b, config);
    const auto t0 = std::chrono::steady_clock::now();
    auto x = direct_solve(A, b);
    SolveReport report;
    report.method = "direct";
    report.iterations = 1;
    const auto r = matvec(A, x);
    double rnorm = 0.0, bnorm = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
        rnorm += std::norm(b[i] - r[i]);
        bnorm += std::norm(b[i]);
    }
    report.relative_residual = bnorm > 0 ? std::sqrt(rnorm / bnorm) : 0.0;
    report.converged = true;
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(x), report};
}

Preconditioner make_block_jacobi(const ComplexCSR& A, int block_size) {
    if (block_size < 1) throw std::invalid_argument("make_block_jacobi: bad block size");
    const int n = A.n;
    const int nblocks = (n + block_size - 1) / block_size;
    auto factors =
        std::make_shared<std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>>>();
    factors->reserve(static_cast<size_t>(nblocks));
    for (int bk = 0; bk < nblocks; ++bk) {
        const int lo = bk * block_size;
        const int hi = std::min(n, lo + block_size);
        Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(hi - lo, hi - lo);
        for (int r = lo; r < hi; ++r) {
            for (int k = A.row_ptr[static_cast<size_t>(r)];
                 k < A.row_ptr[static_cast<size_t>(r) + 1]; ++k) {
                const int c = A.col[static_cast<size_t>(k)];
                if (c >= lo && c < hi) D(r - lo, c - lo) = A.val[static_cast<size_t>(k)];
            }
        }
        for (int d = 0; d < hi - lo; ++d)
            if (D(d, d) == Complex(0.0)) D(d, d) = 1.0;  // keep blocks invertible
        factors->emplace_back(D);
    }
    const int bs = block_size;
    return [factors, bs, n](const std::vector<Complex>& in, std::vector<Complex>& out) {
        out.resize(in.size());
        const int nb = (n + bs - 1) / bs;
        for (int bk = 0; bk < nb; ++bk) {
            const int lo = bk * bs;
            const int hi = std::min(n, lo + bs);
            Eigen::Map<const Eigen::VectorXcd> vin(in.data() + lo, hi - lo);
            Eigen::VectorXcd vout = (*factors)[static_cast<size_t>(bk)].solve(vin);
            for (int i = lo; i < hi; ++i) out[static_cast<size_t>(i)] = vout(i - lo);
        }
    };
}

void write_matrix_market(const ComplexCSR& A, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_matrix_market: cannot open " + path);
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate complex general\n");
    std::fprintf(f, "%d %d %d\n", A.n, A.n, A.nnz());
    for (int r = 0; r < A.n; ++r)
        for (int k = A.row_ptr[static_cast<size_t>(r)];
             k < A.row_ptr[static_cast<size_t>(r) + 1]; ++k)
            std::fprintf(f, "%d %d %.17g %.17g\n", r + 1, A.col[static_cast<size_t>(k)] + 1,
                         A.val[static_cast<size_t>(k)].real(), A.val[static_cast<size_t>(k)].imag());
    std::fclose(f);
}

}  // namespace hhx::sparse

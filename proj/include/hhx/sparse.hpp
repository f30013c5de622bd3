// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hhx::sparse {

using Complex = std::complex<double>;

struct Triplet {
    int row = 0, col = 0;
    Complex value;
};

/// Compressed sparse rows with sorted, duplicate-free columns per row.
struct ComplexCSR {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> col;
    std::vector<Complex> val;

    int nnz() const { return static_cast<int>(col.size()); }
};

/// Builds CSR from (row, col, value) triplets; duplicates are summed in
/// their original order, so the layout and the rounding are deterministic.
ComplexCSR csr_from_triplets(int n, const std::vector<Triplet>& triplets);

std::vector<Complex> matvec(const ComplexCSR& A, const std::vector<Complex>& x);

/// Action of an approximate inverse: out = M^-1 in.
using Preconditioner =
    std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>;

enum class SolveMethod { Direct, Gmres };
enum class PrecondKind { None, BlockJacobi, UserHook };

struct SolverConfig {
    SolveMethod method = SolveMethod::Direct;
    double rel_tolerance = 1e-9;
    int restart = 50;
    int max_iterations = 2000;
    PrecondKind preconditioner = PrecondKind::None;
    int block_size = 64;
    Preconditioner user_hook;  // used when preconditioner == UserHook
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    double seconds = 0.0;
    std::string method;
    bool converged = false;
    std::vector<double> residual_history;  // one entry per Arnoldi step
};

/// Right-preconditioned restarted GMRES with modified Gram-Schmidt.
/// Non-convergence is reported, not thrown.
std::pair<std::vector<Complex>, SolveReport> gmres(const ComplexCSR& A,
                                                   const std::vector<Complex>& b,
                                                   const SolverConfig& config);

/// Sparse LU with a fill-reducing ordering. Throws std::runtime_error on a
/// singular matrix.
std::vector<Complex> direct_solve(const ComplexCSR& A, const std::vector<Complex>& b);

/// Dispatch on config.method; Direct produces a one-iteration report.
std::pair<std::vector<Complex>, SolveReport> solve(const ComplexCSR& A,
                                                   const std::vector<Complex>& b,
                                                   const SolverConfig& config);

Preconditioner make_block_jacobi(const ComplexCSR& A, int block_size);

/// Matrix Market coordinate complex general dump (debugging aid).
void write_matrix_market(const ComplexCSR& A, const std::string& path);

}  // namespace hhx::sparse

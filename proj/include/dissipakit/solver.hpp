#pragma once

#include <cstdint>
#include <vector>

#include "dissipakit/mat.hpp"

namespace dk {

/// One coefficient of an affine PSD block: adds coeff * v[var] to entries
/// (row, col) and (col, row) of the block matrix.
struct PsdTerm {
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t var = 0;
    double coeff = 1.0;
};

/// Affine map of the variable vector into a symmetric matrix required PSD:
/// B(v) = constant + sum_t coeff_t * v[var_t] * (E_{rc} + E_{cr} if r != c).
struct PsdBlock {
    std::size_t dim = 0;
    Mat constant;
    std::vector<PsdTerm> terms;
};

/// Convex quadratic program over v in R^n:
///   minimize    (1/2) v^T H v + g^T v
///   subject to  A v >= b            (row-wise)
///               B_k(v) PSD          for every psd block
struct ConeProgram {
    std::size_t n_vars = 0;
    Mat H;  // n x n, symmetric PSD
    Vec g;  // n
    Mat A;  // m x n
    Vec b;  // m
    std::vector<PsdBlock> psd_blocks;
};

struct SolverConfig {
    int max_iters = 20000;
    double primal_tol = 1e-8;
    double dual_tol = 1e-8;
    double cone_tol = 1e-8;
    double penalty = 1.0;   // splitting-method step weight (initial; adapted internally)
    std::uint64_t seed = 0; // reserved for randomized initialization; the method is deterministic
};

enum class SolveStatus { Optimal, MaxIters, Infeasible };

struct KktResiduals {
    double primal = 0.0;  // worst inequality violation
    double dual = 0.0;    // stationarity + complementary-slackness residual
    double cone = 0.0;    // worst negative eigenvalue over PSD blocks
};

struct Solution {
    Vec variables;
    double objective_value = 0.0;
    SolveStatus status = SolveStatus::MaxIters;
    KktResiduals kkt_residuals;
    int iterations = 0;
};

/// Throws InvalidProgram on inconsistent dimensions.
void validate(const ConeProgram& p);

double objective_value(const ConeProgram& p, const Vec& v);

/// Replay check: worst inequality violation of v against p (cone blocks via
/// their minimum eigenvalue), as a single max.
double max_violation(const ConeProgram& p, const Vec& v);

/// Evaluates one PSD block at v.
Mat psd_block_value(const PsdBlock& blk, const Vec& v);

/// Nearest PSD matrix in Frobenius norm (eigendecomposition, negative
/// eigenvalues clamped to zero). Throws InvalidMatrix on non-finite or
/// asymmetric input.
SymMat psd_project(const SymMat& m);

/// Operator-splitting solve: alternating a proximal quadratic step with
/// projection onto the inequality/PSD constraint set. Deterministic for a
/// fixed program and config.
Solution solve(const ConeProgram& problem, const SolverConfig& cfg);

}  // namespace dk

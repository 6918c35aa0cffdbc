#pragma once

#include "dissipakit/mat.hpp"

namespace dk {

// y = A x
void matvec(const Mat& A, const Vec& x, Vec& y);
// y = A^T x
void matvec_t(const Mat& A, const Vec& x, Vec& y);
// C = A B (small/medium dense)
Mat matmul(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);

double trace(const Mat& A);
double frob_norm(const Mat& A);
double dot(const Vec& a, const Vec& b);
double quad_form(const Mat& A, const Vec& x);  // x^T A x

/// C (n x n, upper triangle + mirrored) accumulated as A^T A from the rows of A.
Mat gram_of_rows(const Mat& A);

struct EigSym {
    Vec values;  // ascending
    Mat vectors; // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Deterministic;
/// accuracy ~1e-14 * ||A||. Input is symmetrized internally (averaging) so
/// callers holding values asymmetric at roundoff level are fine.
EigSym eig_sym(const Mat& A);

double min_eig_sym(const Mat& A);
double max_eig_sym(const Mat& A);

/// Nearest PSD matrix in Frobenius norm: eigendecompose, clamp negatives to 0.
Mat clamp_psd(const Mat& A);

/// In-place Cholesky A = L L^T, lower triangle of `a` overwritten with L.
/// Returns false if a pivot is not strictly positive.
bool cholesky(Mat& a);

/// Solve L L^T x = b given the factor from cholesky().
Vec cholesky_solve(const Mat& L, const Vec& b);

/// Solve (A + ridge I) x = b for symmetric PSD A via Cholesky.
/// Throws SingularGram if the shifted matrix is not numerically PD.
Vec solve_spd(const Mat& A, const Vec& b, double ridge);

/// Crude 2-norm condition estimate of a symmetric PSD matrix: power iteration
/// for the largest eigenvalue, inverse iteration through a Cholesky factor for
/// the smallest. Returns +inf when the factorization fails.
double cond_est_spd(const Mat& A);

}  // namespace dk

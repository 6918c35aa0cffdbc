#include "dissipakit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dissipakit/kern.hpp"

namespace dk {

void matvec(const Mat& A, const Vec& x, Vec& y) {
    y.assign(A.rows, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i) y[i] = kern::dot(A.row_ptr(i), x.data(), A.cols);
}

void matvec_t(const Mat& A, const Vec& x, Vec& y) {
    y.assign(A.cols, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i) kern::axpy(y.data(), x[i], A.row_ptr(i), A.cols);
}

Mat matmul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw InvalidMatrix("matmul: inner dimensions differ");
    Mat C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        double* ci = C.row_ptr(i);
        const double* ai = A.row_ptr(i);
        for (std::size_t k = 0; k < A.cols; ++k) kern::axpy(ci, ai[k], B.row_ptr(k), B.cols);
    }
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

double trace(const Mat& A) {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(A.rows, A.cols); ++i) t += A(i, i);
    return t;
}

double frob_norm(const Mat& A) { return std::sqrt(kern::nrm2sq(A.a.data(), A.a.size())); }

double dot(const Vec& a, const Vec& b) { return kern::dot(a.data(), b.data(), a.size()); }

double quad_form(const Mat& A, const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows; ++i) s += x[i] * kern::dot(A.row_ptr(i), x.data(), A.cols);
    return s;
}

Mat gram_of_rows(const Mat& A) {
    Mat C(A.cols, A.cols);
    for (std::size_t r = 0; r < A.rows; ++r) {
        const double* row = A.row_ptr(r);
        for (std::size_t i = 0; i < A.cols; ++i) {
            if (row[i] == 0.0) continue;
            // accumulate the upper triangle of row_i * row
            kern::axpy(C.row_ptr(i) + i, row[i], row + i, A.cols - i);
        }
    }
    for (std::size_t i = 0; i < C.rows; ++i)
        for (std::size_t j = 0; j < i; ++j) C(i, j) = C(j, i);
    return C;
}

EigSym eig_sym(const Mat& A) {
    if (!A.square()) throw InvalidMatrix("eig_sym: matrix is not square");
    if (!all_finite(A)) throw InvalidMatrix("eig_sym: non-finite entries");
    const std::size_t n = A.rows;
    Mat work = sym_part(A);
    Mat V = Mat::identity(n);
    if (n == 0) return {Vec{}, V};

    const double norm = frob_norm(work);
    const double stop = (norm > 0.0 ? norm : 1.0) * 1e-15;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += work(i, j) * work(i, j);
        if (std::sqrt(2.0 * off) <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = work(p, q);
                if (apq == 0.0) continue;
                const double app = work(p, p);
                const double aqq = work(q, q);
                if (std::fabs(apq) <= 1e-300 ||
                    std::fabs(apq) <= 1e-18 * (std::fabs(app) + std::fabs(aqq)))
                    continue;
                const double theta = (app - aqq) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // rotate rows p and q, then columns p and q (row-major layout)
                kern::rot(work.row_ptr(p), work.row_ptr(q), n, c, s);
                for (std::size_t k = 0; k < n; ++k) {
                    const double wkp = work(k, p);
                    const double wkq = work(k, q);
                    work(k, p) = c * wkp + s * wkq;
                    work(k, q) = c * wkq - s * wkp;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V(k, p);
                    const double vkq = V(k, q);
                    V(k, p) = c * vkp + s * vkq;
                    V(k, q) = c * vkq - s * vkp;
                }
                work(p, q) = 0.0;
                work(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return work(a, a) < work(b, b); });
    EigSym out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = work(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = V(r, order[k]);
    }
    return out;
}

double min_eig_sym(const Mat& A) {
    const EigSym e = eig_sym(A);
    return e.values.empty() ? 0.0 : e.values.front();
}

double max_eig_sym(const Mat& A) {
    const EigSym e = eig_sym(A);
    return e.values.empty() ? 0.0 : e.values.back();
}

Mat clamp_psd(const Mat& A) {
    const EigSym e = eig_sym(A);
    const std::size_t n = A.rows;
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = e.values[k];
        if (lam <= 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = lam * e.vectors(i, k);
            for (std::size_t j = i; j < n; ++j) out(i, j) += w * e.vectors(j, k);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
    return out;
}

bool cholesky(Mat& a) {
    const std::size_t n = a.rows;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j) - kern::dot(a.row_ptr(j), a.row_ptr(j), j);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        d = std::sqrt(d);
        a(j, j) = d;
        const double inv = 1.0 / d;
        for (std::size_t i = j + 1; i < n; ++i)
            a(i, j) = (a(i, j) - kern::dot(a.row_ptr(i), a.row_ptr(j), j)) * inv;
    }
    // zero the strict upper triangle so the factor is usable as stored
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = 0.0;
    return true;
}

Vec cholesky_solve(const Mat& L, const Vec& b) {
    const std::size_t n = L.rows;
    Vec y(b);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = (y[i] - kern::dot(L.row_ptr(i), y.data(), i)) / L(i, i);
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= L(k, i) * y[k];
        y[i] = s / L(i, i);
    }
    return y;
}

Vec solve_spd(const Mat& A, const Vec& b, double ridge) {
    Mat f = A;
    for (std::size_t i = 0; i < f.rows; ++i) f(i, i) += ridge;
    if (!cholesky(f))
        throw SingularGram("symmetric solve failed: matrix not positive definite; raise the ridge");
    return cholesky_solve(f, b);
}

double cond_est_spd(const Mat& A) {
    const std::size_t n = A.rows;
    if (n == 0) return 1.0;
    Vec v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Vec w;
    double lam_max = 0.0;
    for (int it = 0; it < 30; ++it) {
        matvec(A, v, w);
        lam_max = std::sqrt(kern::nrm2sq(w.data(), n));
        if (lam_max == 0.0) return std::numeric_limits<double>::infinity();
        kern::scal(w.data(), 1.0 / lam_max, n);
        v = w;
    }
    Mat f = A;
    if (!cholesky(f)) return std::numeric_limits<double>::infinity();
    v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double inv_lam_min = 0.0;
    for (int it = 0; it < 30; ++it) {
        w = cholesky_solve(f, v);
        inv_lam_min = std::sqrt(kern::nrm2sq(w.data(), n));
        if (inv_lam_min == 0.0) return std::numeric_limits<double>::infinity();
        kern::scal(w.data(), 1.0 / inv_lam_min, n);
        v = w;
    }
    return lam_max * inv_lam_min;
}

}  // namespace dk

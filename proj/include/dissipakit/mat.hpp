#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "dissipakit/common.hpp"

namespace dk {

using Vec = std::vector<double>;

/// Dense row-major matrix. The one matrix type used everywhere; symmetric
/// roles (Gram matrices, Q/P, pi/p) are plain Mats whose symmetry the owning
/// operation validates.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}
    Mat(std::initializer_list<std::initializer_list<double>> init) {
        rows = init.size();
        cols = rows ? init.begin()->size() : 0;
        a.reserve(rows * cols);
        for (const auto& row : init) {
            if (row.size() != cols) throw InvalidMatrix("ragged initializer for Mat");
            a.insert(a.end(), row.begin(), row.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    double* row_ptr(std::size_t i) { return a.data() + i * cols; }
    const double* row_ptr(std::size_t i) const { return a.data() + i * cols; }

    bool empty() const { return a.empty(); }
    bool square() const { return rows == cols; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Symmetric-by-contract alias; used in signatures where the spec of the
// operation requires a symmetric argument or result.
using SymMat = Mat;

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(const Mat& m) { return all_finite(m.a); }

/// Throws InvalidMatrix unless m is square, finite, and symmetric to within
/// 1e-12 relative to its largest entry.
void check_symmetric(const Mat& m, const char* what);

/// (m + m^T)/2.
Mat sym_part(const Mat& m);

}  // namespace dk

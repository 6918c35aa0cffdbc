#include "dissipakit/mat.hpp"

#include <cmath>
#include <string>

#include "dissipakit/kern.hpp"

namespace dk {

void check_symmetric(const Mat& m, const char* what) {
    if (!m.square()) throw InvalidMatrix(std::string(what) + ": matrix is not square");
    if (!all_finite(m)) throw InvalidMatrix(std::string(what) + ": non-finite entries");
    const double scale = kern::max_abs(m.a.data(), m.a.size());
    const double tol = 1e-12 * (scale > 0.0 ? scale : 1.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j)
            if (std::fabs(m(i, j) - m(j, i)) > tol)
                throw InvalidMatrix(std::string(what) + ": matrix is not symmetric");
}

Mat sym_part(const Mat& m) {
    Mat s(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

}  // namespace dk

#include "dissipakit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dissipakit/kern.hpp"
#include "dissipakit/linalg.hpp"

namespace dk {

namespace {

constexpr double kProx = 1e-6;        // proximal weight on the quadratic step
constexpr double kRelax = 1.6;        // over-relaxation
constexpr int kCheckInterval = 25;    // iterations between convergence checks
constexpr int kPenaltyInterval = 100; // iterations between penalty adaptations
constexpr int kMaxRefactor = 40;

struct StackedMap {
    // z = [A_s v ; vec(B_1(v)) ; ... ] = M v + m0, with A_s the row-normalized
    // inequality matrix. Block slices store full dim x dim matrices.
    const ConeProgram* p = nullptr;
    Mat a_scaled;
    Vec b_scaled;
    Vec row_scale;               // original row norms (1 for zero rows)
    std::vector<std::size_t> block_offset;
    std::size_t total = 0;

    void init(const ConeProgram& prog) {
        p = &prog;
        const std::size_t m = prog.A.rows;
        a_scaled = prog.A;
        b_scaled = prog.b;
        row_scale.assign(m, 1.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double nrm = std::sqrt(kern::nrm2sq(a_scaled.row_ptr(i), a_scaled.cols));
            if (nrm > 0.0) {
                row_scale[i] = nrm;
                kern::scal(a_scaled.row_ptr(i), 1.0 / nrm, a_scaled.cols);
                b_scaled[i] /= nrm;
            }
        }
        total = m;
        block_offset.clear();
        for (const auto& blk : prog.psd_blocks) {
            block_offset.push_back(total);
            total += blk.dim * blk.dim;
        }
    }

    // pure linear part: M v (the block constants live in offset())
    void apply(const Vec& v, Vec& z) const {
        z.assign(total, 0.0);
        for (std::size_t i = 0; i < a_scaled.rows; ++i)
            z[i] = kern::dot(a_scaled.row_ptr(i), v.data(), a_scaled.cols);
        for (std::size_t k = 0; k < p->psd_blocks.size(); ++k) {
            const auto& blk = p->psd_blocks[k];
            double* slice = z.data() + block_offset[k];
            for (const auto& t : blk.terms) {
                const double val = t.coeff * v[t.var];
                slice[t.row * blk.dim + t.col] += val;
                if (t.row != t.col) slice[t.col * blk.dim + t.row] += val;
            }
        }
    }

    void apply_adjoint(const Vec& z, Vec& out) const {
        out.assign(p->n_vars, 0.0);
        for (std::size_t i = 0; i < a_scaled.rows; ++i)
            kern::axpy(out.data(), z[i], a_scaled.row_ptr(i), a_scaled.cols);
        for (std::size_t k = 0; k < p->psd_blocks.size(); ++k) {
            const auto& blk = p->psd_blocks[k];
            const double* slice = z.data() + block_offset[k];
            for (const auto& t : blk.terms) {
                double val = slice[t.row * blk.dim + t.col];
                if (t.row != t.col) val += slice[t.col * blk.dim + t.row];
                out[t.var] += t.coeff * val;
            }
        }
    }

    // M^T M as a dense n x n matrix.
    Mat normal_matrix() const {
        Mat G = gram_of_rows(a_scaled);
        for (std::size_t k = 0; k < p->psd_blocks.size(); ++k) {
            const auto& blk = p->psd_blocks[k];
            // gather per-cell coefficient lists of the upper triangle; a term
            // (r,c) touches cells (r,c) and (c,r), contributing twice to G.
            for (std::size_t ti = 0; ti < blk.terms.size(); ++ti) {
                for (std::size_t tj = 0; tj < blk.terms.size(); ++tj) {
                    const auto& a = blk.terms[ti];
                    const auto& bt = blk.terms[tj];
                    const bool same_cell = (a.row == bt.row && a.col == bt.col) ||
                                           (a.row == bt.col && a.col == bt.row);
                    if (!same_cell) continue;
                    const double w = (a.row == a.col) ? 1.0 : 2.0;
                    G(a.var, bt.var) += w * a.coeff * bt.coeff;
                }
            }
        }
        return G;
    }

    // constant offset m0 of the stacked map
    Vec offset() const {
        Vec m0(total, 0.0);
        for (std::size_t k = 0; k < p->psd_blocks.size(); ++k) {
            const auto& blk = p->psd_blocks[k];
            double* slice = m0.data() + block_offset[k];
            for (std::size_t c = 0; c < blk.constant.a.size(); ++c) slice[c] = blk.constant.a[c];
        }
        return m0;
    }
};

Mat slice_to_mat(const double* slice, std::size_t dim) {
    Mat m(dim, dim);
    std::copy(slice, slice + dim * dim, m.a.begin());
    return m;
}

}  // namespace

void validate(const ConeProgram& p) {
    const std::size_t n = p.n_vars;
    if (p.H.rows != n || p.H.cols != n) throw InvalidProgram("objective_quadratic is not n x n");
    if (p.g.size() != n) throw InvalidProgram("objective_linear has wrong length");
    if (p.A.rows != p.b.size()) throw InvalidProgram("ineq_matrix rows != ineq_rhs length");
    if (p.A.rows > 0 && p.A.cols != n) throw InvalidProgram("ineq_matrix has wrong column count");
    if (!all_finite(p.H) || !all_finite(p.g) || !all_finite(p.A) || !all_finite(p.b))
        throw InvalidProgram("non-finite program data");
    for (const auto& blk : p.psd_blocks) {
        if (blk.constant.rows != blk.dim || blk.constant.cols != blk.dim)
            throw InvalidProgram("psd block constant has wrong shape");
        check_symmetric(blk.constant, "psd block constant");
        for (const auto& t : blk.terms) {
            if (t.row >= blk.dim || t.col >= blk.dim) throw InvalidProgram("psd term out of block");
            if (t.var >= n) throw InvalidProgram("psd term references unknown variable");
        }
    }
}

double objective_value(const ConeProgram& p, const Vec& v) {
    Vec hv;
    matvec(p.H, v, hv);
    return 0.5 * dot(v, hv) + dot(p.g, v);
}

Mat psd_block_value(const PsdBlock& blk, const Vec& v) {
    Mat m = blk.constant;
    for (const auto& t : blk.terms) {
        const double val = t.coeff * v[t.var];
        m(t.row, t.col) += val;
        if (t.row != t.col) m(t.col, t.row) += val;
    }
    return m;
}

double max_violation(const ConeProgram& p, const Vec& v) {
    double worst = 0.0;
    for (std::size_t i = 0; i < p.A.rows; ++i) {
        const double lhs = kern::dot(p.A.row_ptr(i), v.data(), p.A.cols);
        worst = std::max(worst, p.b[i] - lhs);
    }
    for (const auto& blk : p.psd_blocks)
        worst = std::max(worst, -min_eig_sym(psd_block_value(blk, v)));
    return worst;
}

SymMat psd_project(const SymMat& m) {
    check_symmetric(m, "psd_project");
    return clamp_psd(m);
}

Solution solve(const ConeProgram& problem, const SolverConfig& cfg) {
    validate(problem);
    const std::size_t n = problem.n_vars;

    StackedMap map;
    map.init(problem);
    const Vec m0 = map.offset();

    Mat normal = map.normal_matrix();
    double rho = cfg.penalty > 0.0 ? cfg.penalty : 1.0;
    int refactor_count = 0;

    auto factorize = [&](double r) {
        Mat f = problem.H;
        for (std::size_t i = 0; i < n; ++i) {
            kern::axpy(f.row_ptr(i), r, normal.row_ptr(i), n);
            f(i, i) += kProx;
        }
        if (!cholesky(f))
            throw InvalidProgram("objective_quadratic is not positive semidefinite");
        return f;
    };
    Mat factor = factorize(rho);

    Vec x(n, 0.0);
    Vec z(m0);
    // start the splitting variable inside the constraint set
    for (std::size_t i = 0; i < map.a_scaled.rows; ++i) z[i] = std::max(z[i], map.b_scaled[i]);
    for (std::size_t k = 0; k < problem.psd_blocks.size(); ++k) {
        const auto& blk = problem.psd_blocks[k];
        Mat proj = clamp_psd(slice_to_mat(z.data() + map.block_offset[k], blk.dim));
        std::copy(proj.a.begin(), proj.a.end(), z.begin() + map.block_offset[k]);
    }
    Vec u(map.total, 0.0);

    Vec mx, rhs, tmp, z_prev, relaxed;
    Solution sol;
    sol.status = SolveStatus::MaxIters;

    double stall_ref = std::numeric_limits<double>::infinity();
    int stall_iters = 0;

    const double infeas_level = 1e3 * cfg.primal_tol;

    int it = 0;
    for (it = 1; it <= cfg.max_iters; ++it) {
        // x-step: (H + prox I + rho M^T M) x = prox x - g + rho M^T (z - u - m0)
        tmp.assign(map.total, 0.0);
        for (std::size_t i = 0; i < map.total; ++i) tmp[i] = z[i] - u[i] - m0[i];
        map.apply_adjoint(tmp, rhs);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = kProx * x[i] - problem.g[i] + rho * rhs[i];
        x = cholesky_solve(factor, rhs);

        map.apply(x, mx);

        // relaxation + projection
        z_prev = z;
        relaxed.assign(map.total, 0.0);
        for (std::size_t i = 0; i < map.total; ++i)
            relaxed[i] = kRelax * (mx[i] + m0[i]) + (1.0 - kRelax) * z[i];
        for (std::size_t i = 0; i < map.total; ++i) z[i] = relaxed[i] + u[i];
        for (std::size_t i = 0; i < map.a_scaled.rows; ++i)
            z[i] = std::max(z[i], map.b_scaled[i]);
        for (std::size_t k = 0; k < problem.psd_blocks.size(); ++k) {
            const auto& blk = problem.psd_blocks[k];
            Mat proj = clamp_psd(slice_to_mat(z.data() + map.block_offset[k], blk.dim));
            std::copy(proj.a.begin(), proj.a.end(), z.begin() + map.block_offset[k]);
        }
        for (std::size_t i = 0; i < map.total; ++i) u[i] += relaxed[i] - z[i];

        const bool check_now = (it % kCheckInterval == 0) || it == cfg.max_iters;
        if (check_now) {
            // true KKT residuals on the original (unscaled) program
            double primal = 0.0;
            for (std::size_t i = 0; i < problem.A.rows; ++i) {
                const double lhs = kern::dot(problem.A.row_ptr(i), x.data(), problem.A.cols);
                primal = std::max(primal, problem.b[i] - lhs);
            }
            double cone = 0.0;
            for (const auto& blk : problem.psd_blocks)
                cone = std::max(cone, -min_eig_sym(psd_block_value(blk, x)));

            // multipliers from the scaled dual variable: lambda = -rho u
            Vec y(map.total);
            for (std::size_t i = 0; i < map.total; ++i) y[i] = -rho * u[i];
            Vec aty;
            map.apply_adjoint(y, aty);
            Vec hx;
            matvec(problem.H, x, hx);
            double stat = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                stat = std::max(stat, std::fabs(hx[i] + problem.g[i] - aty[i]));

            double comp = 0.0;
            for (std::size_t i = 0; i < map.a_scaled.rows; ++i)
                comp += std::fabs(y[i] * (kern::dot(map.a_scaled.row_ptr(i), x.data(), n) -
                                          map.b_scaled[i]));
            for (std::size_t k = 0; k < problem.psd_blocks.size(); ++k) {
                const auto& blk = problem.psd_blocks[k];
                const Mat bv = psd_block_value(blk, x);
                const double* yk = y.data() + map.block_offset[k];
                double inner = 0.0;
                for (std::size_t c = 0; c < bv.a.size(); ++c) inner += yk[c] * bv.a[c];
                comp += std::fabs(inner);
            }

            const double obj = objective_value(problem, x);
            const double dual_scale = 1.0 + kern::max_abs(hx.data(), n) +
                                      kern::max_abs(problem.g.data(), n);
            const double dual_res = std::max(stat / dual_scale, comp / (1.0 + std::fabs(obj)));

            sol.kkt_residuals = {std::max(primal, 0.0), dual_res, std::max(cone, 0.0)};
            sol.iterations = it;

            if (primal <= cfg.primal_tol && cone <= cfg.cone_tol && dual_res <= cfg.dual_tol) {
                sol.status = SolveStatus::Optimal;
                break;
            }

            // infeasibility heuristic: primal residual stalls above
            // 1e3 * primal_tol for 500 consecutive iterations; "stalls" means
            // the level moved less than 0.1% relative since the last check
            const double level = std::max(primal, cone);
            if (level > infeas_level &&
                std::fabs(level - stall_ref) <= 1e-3 * std::max(level, stall_ref)) {
                stall_iters += kCheckInterval;
                if (stall_iters >= 500) {
                    sol.status = SolveStatus::Infeasible;
                    break;
                }
            } else {
                stall_iters = 0;
                stall_ref = level;
            }

            // residual balancing: keep the primal and dual residuals of the
            // splitting comparable, rescaling u so the multipliers rho*u stay
            // continuous across the penalty change
            if (it % kPenaltyInterval == 0 && refactor_count < kMaxRefactor) {
                double rp = 0.0, mx_norm = 0.0, z_norm = 0.0;
                for (std::size_t i = 0; i < map.total; ++i) {
                    rp = std::max(rp, std::fabs(mx[i] + m0[i] - z[i]));
                    mx_norm = std::max(mx_norm, std::fabs(mx[i] + m0[i]));
                    z_norm = std::max(z_norm, std::fabs(z[i]));
                }
                const double rp_rel = rp / std::max({mx_norm, z_norm, 1e-10});
                double aty_norm = kern::max_abs(aty.data(), n);
                const double rd_rel =
                    stat / std::max({kern::max_abs(hx.data(), n), aty_norm,
                                     kern::max_abs(problem.g.data(), n), 1e-10});
                if (rd_rel > 0.0 && rp_rel > 0.0) {
                    const double ratio = std::sqrt(rp_rel / rd_rel);
                    if (ratio > 5.0 || ratio < 0.2) {
                        const double rho_new =
                            std::clamp(rho * std::clamp(ratio, 0.1, 10.0), 1e-6, 1e6);
                        if (rho_new != rho) {
                            const double carry = rho / rho_new;
                            for (std::size_t i = 0; i < map.total; ++i) u[i] *= carry;
                            rho = rho_new;
                            factor = factorize(rho);
                            ++refactor_count;
                        }
                    }
                }
            }
        }
    }

    sol.variables = x;
    sol.objective_value = objective_value(problem, x);
    sol.iterations = std::min(it, cfg.max_iters);
    return sol;
}

}  // namespace dk

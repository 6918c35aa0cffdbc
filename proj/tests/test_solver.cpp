#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dissipakit/linalg.hpp"
#include "dissipakit/solver.hpp"
#include "oracles.hpp"

using dk::ConeProgram;
using dk::Mat;
using dk::SolverConfig;
using dk::SolveStatus;
using dk::Vec;

namespace {

// random strictly convex QP over the box |v_i| <= 2, feasible by construction;
// with_block adds a 2x2 PSD block over three of the variables
ConeProgram random_qp(std::size_t n, std::size_t n_rows, bool with_block, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    ConeProgram p;
    p.n_vars = n;
    Mat r(n, n);
    for (auto& x : r.a) x = d(rng);
    p.H = dk::matmul(dk::transpose(r), r);
    for (auto& x : p.H.a) x /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) p.H(i, i) += 0.2;
    p.g.resize(n);
    for (auto& x : p.g) x = d(rng);

    Vec v0(n);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    for (auto& x : v0) x = box(rng);

    p.A = Mat(n_rows + 2 * n, n);
    p.b.assign(n_rows + 2 * n, 0.0);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) p.A(i, j) = d(rng);
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += p.A(i, j) * v0[j];
        p.b[i] = lhs - std::fabs(d(rng));
    }
    // box rows: v_i >= -2 and -v_i >= -2
    for (std::size_t i = 0; i < n; ++i) {
        p.A(n_rows + 2 * i, i) = 1.0;
        p.b[n_rows + 2 * i] = -2.0;
        p.A(n_rows + 2 * i + 1, i) = -1.0;
        p.b[n_rows + 2 * i + 1] = -2.0;
    }

    if (with_block && n >= 3) {
        dk::PsdBlock blk;
        blk.dim = 2;
        blk.terms = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {1, 1, 2, 1.0}};
        blk.constant = Mat(2, 2);
        Vec probe = v0;
        Mat at0 = dk::psd_block_value(blk, probe);
        const double lift = std::max(0.0, -dk::min_eig_sym(at0)) + 0.1;
        blk.constant(0, 0) = lift;
        blk.constant(1, 1) = lift;
        p.psd_blocks.push_back(blk);
    }
    return p;
}

}  // namespace

TEST_CASE("analytic KKT: min 1/2 x^2 - x subject to x >= 0") {
    ConeProgram p;
    p.n_vars = 1;
    p.H = {{1.0}};
    p.g = {-1.0};
    p.A = {{1.0}};
    p.b = {0.0};
    const auto sol = dk::solve(p, {});
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.variables[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.objective_value == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("projection onto a half-space: min 1/2 ||v||^2 subject to v1 >= 2") {
    ConeProgram p;
    p.n_vars = 4;
    p.H = Mat::identity(4);
    p.g.assign(4, 0.0);
    p.A = Mat(1, 4);
    p.A(0, 0) = 1.0;
    p.b = {2.0};
    const auto sol = dk::solve(p, {});
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.variables[0] == doctest::Approx(2.0).epsilon(1e-7));
    for (int i = 1; i < 4; ++i) CHECK(std::fabs(sol.variables[i]) <= 1e-6);
}

TEST_CASE("psd block program with a known solution") {
    // min 1/2 ||v||^2  s.t.  [[v0, v1], [v1, v2]] PSD  and  v1 >= 1
    // optimum (1, 1, 1): v0 v2 >= v1^2 = 1 with v0 = v2 minimizing the norm
    ConeProgram p;
    p.n_vars = 3;
    p.H = Mat::identity(3);
    p.g.assign(3, 0.0);
    p.A = Mat(1, 3);
    p.A(0, 1) = 1.0;
    p.b = {1.0};
    dk::PsdBlock blk;
    blk.dim = 2;
    blk.constant = Mat(2, 2);
    blk.terms = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {1, 1, 2, 1.0}};
    p.psd_blocks.push_back(blk);
    const auto sol = dk::solve(p, {});
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.variables[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sol.variables[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sol.variables[2] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("random QPs match the grid brute-force oracle") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rep % 2;
        ConeProgram p = random_qp(n, 4, rep % 3 == 0, rng);
        const auto sol = dk::solve(p, {});
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(dk::max_violation(p, sol.variables) <= 1e-6);

        const double ref =
            oracle::grid_min_objective(p, Vec(n, -2.0), Vec(n, 2.0), 21, 1e-6);
        CHECK(std::fabs(sol.objective_value - ref) <= 1e-4);
    }
}

TEST_CASE("objective at the solution beats random feasible points") {
    std::mt19937_64 rng(99);
    ConeProgram p = random_qp(4, 5, false, rng);
    SolverConfig cfg;
    const auto sol = dk::solve(p, cfg);
    REQUIRE(sol.status == SolveStatus::Optimal);

    std::uniform_real_distribution<double> box(-2.0, 2.0);
    int tested = 0;
    while (tested < 200) {
        Vec v(p.n_vars);
        for (auto& x : v) x = box(rng);
        if (oracle::violation_at(p, v) > 0.0) continue;
        ++tested;
        CHECK(sol.objective_value <= oracle::objective_at(p, v) + 10.0 * cfg.dual_tol);
    }
}

TEST_CASE("solve is deterministic: identical runs give bit-identical solutions") {
    std::mt19937_64 rng(5);
    ConeProgram p = random_qp(5, 6, true, rng);
    const auto a = dk::solve(p, {});
    const auto b = dk::solve(p, {});
    CHECK(a.variables == b.variables);
    CHECK(a.objective_value == b.objective_value);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("replaying an Optimal solution satisfies every constraint") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 5; ++rep) {
        ConeProgram p = random_qp(3, 4, rep % 2 == 1, rng);
        SolverConfig cfg;
        const auto sol = dk::solve(p, cfg);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(dk::max_violation(p, sol.variables) <= cfg.primal_tol * 10.0);
        CHECK(sol.kkt_residuals.primal <= cfg.primal_tol);
        CHECK(sol.kkt_residuals.cone <= cfg.cone_tol);
        CHECK(sol.kkt_residuals.dual <= cfg.dual_tol);
    }
}

TEST_CASE("infeasible program is detected") {
    ConeProgram p;
    p.n_vars = 1;
    p.H = {{1.0}};
    p.g = {0.0};
    p.A = {{1.0}, {-1.0}};
    p.b = {2.0, -1.0};  // x >= 2 and x <= 1
    SolverConfig cfg;
    cfg.max_iters = 50000;
    const auto sol = dk::solve(p, cfg);
    CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("dimension mismatches raise InvalidProgram") {
    ConeProgram p;
    p.n_vars = 2;
    p.H = Mat::identity(3);
    p.g = {0.0, 0.0};
    CHECK_THROWS_AS(dk::solve(p, {}), dk::InvalidProgram);
}

TEST_CASE("psd_project spec examples") {
    SUBCASE("eigenvalue clamp") {
        const Mat m = {{1.0, 0.0}, {0.0, -1.0}};
        const Mat r = dk::psd_project(m);
        CHECK(r(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(r(0, 1)) <= 1e-12);
        CHECK(std::fabs(r(1, 1)) <= 1e-12);
    }
    SUBCASE("idempotence on a PSD matrix") {
        std::mt19937_64 rng(3);
        Mat s = oracle::random_symmetric(4, rng);
        Mat psd = dk::matmul(s, dk::transpose(s));
        psd = dk::sym_part(psd);
        const Mat once = dk::psd_project(psd);
        double dist = 0.0;
        for (std::size_t i = 0; i < psd.a.size(); ++i) dist += std::pow(once.a[i] - psd.a[i], 2);
        CHECK(std::sqrt(dist) <= 1e-12 * (1.0 + dk::frob_norm(psd)));
        const Mat twice = dk::psd_project(once);
        for (std::size_t i = 0; i < psd.a.size(); ++i)
            CHECK(std::fabs(twice.a[i] - once.a[i]) <= 1e-12);
    }
    SUBCASE("random symmetric matches independent eigensolver oracle") {
        std::mt19937_64 rng(4);
        for (int rep = 0; rep < 25; ++rep) {
            const Mat m = oracle::random_symmetric(4, rng);
            const Mat mine = dk::psd_project(m);
            const Mat ref = oracle::psd_projection(m);
            for (std::size_t i = 0; i < m.a.size(); ++i)
                CHECK(std::fabs(mine.a[i] - ref.a[i]) <= 1e-10);
            CHECK(dk::min_eig_sym(mine) >= -1e-10 * (1.0 + dk::frob_norm(m)));
        }
    }
    SUBCASE("non-finite input raises InvalidMatrix") {
        Mat m = {{1.0, 0.0}, {0.0, std::nan("")}};
        CHECK_THROWS_AS(dk::psd_project(m), dk::InvalidMatrix);
    }
}

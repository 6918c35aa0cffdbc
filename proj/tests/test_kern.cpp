#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dissipakit/kern.hpp"

using dk::kern::Backend;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

const std::size_t kLens[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 257, 1000};

}  // namespace

TEST_CASE("dispatched kernels agree with the scalar reference") {
    std::mt19937_64 rng(42);
    const Backend active = dk::kern::active_backend();
    INFO("active backend: ", dk::kern::backend_name(active));

    for (std::size_t n : kLens) {
        auto a = random_vec(n, rng);
        auto b = random_vec(n, rng);

        const double tol = 1e-13 * (1.0 + static_cast<double>(n));

        CHECK(std::fabs(dk::kern::dot(a.data(), b.data(), n) -
                        dk::kern::scalar::dot(a.data(), b.data(), n)) <= tol * 10.0);
        CHECK(std::fabs(dk::kern::sqdist(a.data(), b.data(), n) -
                        dk::kern::scalar::sqdist(a.data(), b.data(), n)) <= tol * 10.0);
        CHECK(std::fabs(dk::kern::nrm2sq(a.data(), n) -
                        dk::kern::scalar::nrm2sq(a.data(), n)) <= tol * 10.0);
        CHECK(dk::kern::max_abs(a.data(), n) == dk::kern::scalar::max_abs(a.data(), n));

        auto y1 = random_vec(n, rng);
        auto y2 = y1;
        dk::kern::axpy(y1.data(), 0.37, a.data(), n);
        dk::kern::scalar::axpy(y2.data(), 0.37, a.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(y1[i] - y2[i]) <= 1e-15 * (1.0 + std::fabs(y2[i])));

        auto s1 = a, s2 = a;
        dk::kern::scal(s1.data(), -1.75, n);
        dk::kern::scalar::scal(s2.data(), -1.75, n);
        CHECK(s1 == s2);

        auto x1 = a, x2 = a, z1 = b, z2 = b;
        const double c = std::cos(0.83), s = std::sin(0.83);
        dk::kern::rot(x1.data(), z1.data(), n, c, s);
        dk::kern::scalar::rot(x2.data(), z2.data(), n, c, s);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(x1[i] - x2[i]) <= 1e-15 * (1.0 + std::fabs(x2[i])));
            CHECK(std::fabs(z1[i] - z2[i]) <= 1e-15 * (1.0 + std::fabs(z2[i])));
        }
    }
}

TEST_CASE("forcing an unsupported backend throws, scalar always works") {
    CHECK_NOTHROW(dk::kern::force_backend(Backend::Scalar));
    CHECK(dk::kern::active_backend() == Backend::Scalar);
#if !defined(__aarch64__)
    CHECK_THROWS(dk::kern::force_backend(Backend::Neon));
#endif
    dk::kern::reset_backend();
}

TEST_CASE("rot preserves two-norm") {
    std::mt19937_64 rng(7);
    auto x = random_vec(33, rng);
    auto y = random_vec(33, rng);
    const double before = dk::kern::nrm2sq(x.data(), 33) + dk::kern::nrm2sq(y.data(), 33);
    dk::kern::rot(x.data(), y.data(), 33, std::cos(1.1), std::sin(1.1));
    const double after = dk::kern::nrm2sq(x.data(), 33) + dk::kern::nrm2sq(y.data(), 33);
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
}

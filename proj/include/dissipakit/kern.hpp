#pragma once

#include <cstddef>

// Vector arithmetic kernels behind the dense linear algebra. Every kernel has
// a scalar reference implementation plus SIMD variants (AVX2+FMA on x86-64,
// NEON on aarch64); the fastest supported variant is selected once at runtime.
// SIMD results may differ from scalar in the last bits (fused multiply-add,
// reassociated reductions); equivalence tests bound the difference.

namespace dk::kern {

enum class Backend { Scalar, Avx2, Neon };

Backend active_backend();
const char* backend_name(Backend b);

/// Test hook: pin the dispatch table to one backend. Throws dk::InvalidInput
/// if the backend is not supported on this machine.
void force_backend(Backend b);

/// Re-run hardware detection and select the preferred backend.
void reset_backend();

double dot(const double* a, const double* b, std::size_t n);
double sqdist(const double* a, const double* b, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);  // y += alpha*x
void scal(double* x, double alpha, std::size_t n);
void rot(double* x, double* y, std::size_t n, double c, double s);  // plane rotation

// Scalar reference implementations (always available; oracle for the SIMD paths).
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sqdist(const double* a, const double* b, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);
void scal(double* x, double alpha, std::size_t n);
void rot(double* x, double* y, std::size_t n, double c, double s);
}  // namespace scalar

}  // namespace dk::kern

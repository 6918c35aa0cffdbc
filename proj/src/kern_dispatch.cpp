#include "dissipakit/kern.hpp"

#include "dissipakit/common.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DK_HAVE_AVX2_BUILD 1
namespace dk::kern::avx2 {
double dot(const double*, const double*, std::size_t);
double sqdist(const double*, const double*, std::size_t);
double nrm2sq(const double*, std::size_t);
double max_abs(const double*, std::size_t);
void axpy(double*, double, const double*, std::size_t);
void scal(double*, double, std::size_t);
void rot(double*, double*, std::size_t, double, double);
}  // namespace dk::kern::avx2
#else
#define DK_HAVE_AVX2_BUILD 0
#endif

#if defined(__aarch64__)
#define DK_HAVE_NEON_BUILD 1
namespace dk::kern::neon {
double dot(const double*, const double*, std::size_t);
double sqdist(const double*, const double*, std::size_t);
double nrm2sq(const double*, std::size_t);
double max_abs(const double*, std::size_t);
void axpy(double*, double, const double*, std::size_t);
void scal(double*, double, std::size_t);
void rot(double*, double*, std::size_t, double, double);
}  // namespace dk::kern::neon
#else
#define DK_HAVE_NEON_BUILD 0
#endif

namespace dk::kern {

namespace {

struct Table {
    Backend backend;
    double (*dot)(const double*, const double*, std::size_t);
    double (*sqdist)(const double*, const double*, std::size_t);
    double (*nrm2sq)(const double*, std::size_t);
    double (*max_abs)(const double*, std::size_t);
    void (*axpy)(double*, double, const double*, std::size_t);
    void (*scal)(double*, double, std::size_t);
    void (*rot)(double*, double*, std::size_t, double, double);
};

constexpr Table kScalarTable{Backend::Scalar, scalar::dot,     scalar::sqdist,
                             scalar::nrm2sq,  scalar::max_abs, scalar::axpy,
                             scalar::scal,    scalar::rot};

#if DK_HAVE_AVX2_BUILD
constexpr Table kAvx2Table{Backend::Avx2,  avx2::dot,     avx2::sqdist, avx2::nrm2sq,
                           avx2::max_abs, avx2::axpy,    avx2::scal,   avx2::rot};
#endif

#if DK_HAVE_NEON_BUILD
constexpr Table kNeonTable{Backend::Neon,  neon::dot,     neon::sqdist, neon::nrm2sq,
                           neon::max_abs, neon::axpy,    neon::scal,   neon::rot};
#endif

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if DK_HAVE_AVX2_BUILD
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::Neon:
            return DK_HAVE_NEON_BUILD != 0;
    }
    return false;
}

const Table* table_for(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return &kScalarTable;
        case Backend::Avx2:
#if DK_HAVE_AVX2_BUILD
            return &kAvx2Table;
#else
            break;
#endif
        case Backend::Neon:
#if DK_HAVE_NEON_BUILD
            return &kNeonTable;
#else
            break;
#endif
    }
    return &kScalarTable;
}

const Table* detect() {
    if (backend_supported(Backend::Avx2)) return table_for(Backend::Avx2);
    if (backend_supported(Backend::Neon)) return table_for(Backend::Neon);
    return &kScalarTable;
}

const Table* g_table = detect();

}  // namespace

Backend active_backend() { return g_table->backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
    }
    return "?";
}

void force_backend(Backend b) {
    if (!backend_supported(b))
        throw InvalidInput(std::string("kern backend not supported on this machine: ") +
                           backend_name(b));
    g_table = table_for(b);
}

void reset_backend() { g_table = detect(); }

double dot(const double* a, const double* b, std::size_t n) { return g_table->dot(a, b, n); }
double sqdist(const double* a, const double* b, std::size_t n) { return g_table->sqdist(a, b, n); }
double nrm2sq(const double* a, std::size_t n) { return g_table->nrm2sq(a, n); }
double max_abs(const double* a, std::size_t n) { return g_table->max_abs(a, n); }
void axpy(double* y, double alpha, const double* x, std::size_t n) { g_table->axpy(y, alpha, x, n); }
void scal(double* x, double alpha, std::size_t n) { g_table->scal(x, alpha, n); }
void rot(double* x, double* y, std::size_t n, double c, double s) { g_table->rot(x, y, n, c, s); }

}  // namespace dk::kern

#include "precis/kernels.hpp"

#include <cmath>
#include <cstdlib>

#include "precis/errors.hpp"

namespace precis::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double sum_sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

double dot_abs(const double* w, const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(x[i]);
    return s;
}

}  // namespace scalar

static const KernelTable kScalarTable = {
    scalar::dot,     scalar::axpy,        scalar::scal,
    scalar::sum_abs, scalar::sum_sq,      scalar::max_abs,
    scalar::sum_sq_diff, scalar::sum_abs_diff, scalar::dot_abs,
};

const KernelTable& scalar_table() { return kScalarTable; }

#if defined(PRECIS_HAVE_AVX2_SOURCE)
const KernelTable& avx2_table();  // kernels_avx2.cpp
#endif
#if defined(PRECIS_HAVE_NEON_SOURCE)
const KernelTable& neon_table();  // kernels_neon.cpp
#endif

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Auto:
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(PRECIS_HAVE_AVX2_SOURCE)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(PRECIS_HAVE_NEON_SOURCE)
            return true;  // baseline on aarch64
#else
            return false;
#endif
    }
    return false;
}

namespace {

struct Dispatch {
    const KernelTable* table;
    Backend backend;
};

Dispatch detect() {
#if defined(PRECIS_HAVE_AVX2_SOURCE)
    if (backend_available(Backend::Avx2)) return {&avx2_table(), Backend::Avx2};
#endif
#if defined(PRECIS_HAVE_NEON_SOURCE)
    if (backend_available(Backend::Neon)) return {&neon_table(), Backend::Neon};
#endif
    return {&kScalarTable, Backend::Scalar};
}

Dispatch& dispatch() {
    static Dispatch d = detect();
    return d;
}

}  // namespace

void set_backend(Backend b) {
    if (!backend_available(b))
        throw ValidationError(std::string("kernel backend unavailable: ") + backend_name(b));
    if (b == Backend::Auto) {
        dispatch() = detect();
        return;
    }
    Dispatch d;
    d.backend = b;
    switch (b) {
        case Backend::Scalar: d.table = &kScalarTable; break;
#if defined(PRECIS_HAVE_AVX2_SOURCE)
        case Backend::Avx2: d.table = &avx2_table(); break;
#endif
#if defined(PRECIS_HAVE_NEON_SOURCE)
        case Backend::Neon: d.table = &neon_table(); break;
#endif
        default: d.table = &kScalarTable; d.backend = Backend::Scalar; break;
    }
    dispatch() = d;
}

Backend active_backend() { return dispatch().backend; }

const KernelTable& active() { return *dispatch().table; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

}  // namespace precis::kernels

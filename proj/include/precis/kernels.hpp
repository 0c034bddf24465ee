#pragma once

#include <cstddef>

// Vector kernels behind the dense linear algebra. Every kernel has a scalar
// reference implementation plus SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected at runtime. The SIMD variants are equivalence-tested
// against the scalar ones; accumulation order differs, so agreement is up to
// rounding, not bitwise.

namespace precis::kernels {

enum class Backend {
    Auto,    // pick the best available at startup
    Scalar,  // portable reference
    Avx2,    // x86-64 AVX2 + FMA
    Neon,    // aarch64 NEON
};

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    // y += a * x
    void (*axpy)(double, const double*, double*, std::size_t);
    // x *= a
    void (*scal)(double, double*, std::size_t);
    double (*sum_abs)(const double*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    double (*max_abs)(const double*, std::size_t);
    // sum_i (a_i - b_i)^2
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
    // sum_i |a_i - b_i|
    double (*sum_abs_diff)(const double*, const double*, std::size_t);
    // sum_i w_i * |x_i|  (weighted L1 objectives)
    double (*dot_abs)(const double*, const double*, std::size_t);
};

bool backend_available(Backend b);
void set_backend(Backend b);  // throws ValidationError if b is unavailable
Backend active_backend();
const char* backend_name(Backend b);
const KernelTable& active();

const KernelTable& scalar_table();

inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
    active().axpy(alpha, x, y, n);
}
inline void scal(double alpha, double* x, std::size_t n) {
    active().scal(alpha, x, n);
}
inline double sum_abs(const double* x, std::size_t n) {
    return active().sum_abs(x, n);
}
inline double sum_sq(const double* x, std::size_t n) {
    return active().sum_sq(x, n);
}
inline double max_abs(const double* x, std::size_t n) {
    return active().max_abs(x, n);
}
inline double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return active().sum_sq_diff(a, b, n);
}
inline double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    return active().sum_abs_diff(a, b, n);
}
inline double dot_abs(const double* w, const double* x, std::size_t n) {
    return active().dot_abs(w, x, n);
}

}  // namespace precis::kernels

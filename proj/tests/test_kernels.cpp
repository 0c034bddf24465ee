#include <doctest.h>

#include <cmath>
#include <vector>

#include "precis/kernels.hpp"
#include "precis/rng.hpp"

using namespace precis;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, bool alternating = false) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = rng.normal() * (1.0 + 10.0 * rng.uniform());
        if (alternating && i % 2) v[i] = -v[i];
    }
    return v;
}

struct BackendGuard {
    ~BackendGuard() { kernels::set_backend(kernels::Backend::Auto); }
};

}  // namespace

TEST_CASE("simd and scalar kernels agree") {
    BackendGuard guard;
    const bool have_simd = kernels::backend_available(kernels::Backend::Avx2) ||
                           kernels::backend_available(kernels::Backend::Neon);
    if (!have_simd) {
        MESSAGE("no SIMD backend on this host; scalar only");
        return;
    }
    auto simd = kernels::backend_available(kernels::Backend::Avx2)
                    ? kernels::Backend::Avx2
                    : kernels::Backend::Neon;

    Rng rng(20240817);
    // Lengths cover remainders around every unroll width.
    for (std::size_t n : {0ul, 1ul, 2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 15ul, 16ul, 17ul,
                          63ul, 101ul, 1024ul, 1031ul}) {
        auto a = random_vec(n, rng, true);
        auto b = random_vec(n, rng);

        kernels::set_backend(kernels::Backend::Scalar);
        double dot_s = kernels::dot(a.data(), b.data(), n);
        double sabs_s = kernels::sum_abs(a.data(), n);
        double ssq_s = kernels::sum_sq(a.data(), n);
        double mabs_s = kernels::max_abs(a.data(), n);
        double ssd_s = kernels::sum_sq_diff(a.data(), b.data(), n);
        double sad_s = kernels::sum_abs_diff(a.data(), b.data(), n);
        double dabs_s = kernels::dot_abs(a.data(), b.data(), n);
        auto y_s = b;
        kernels::axpy(0.37, a.data(), y_s.data(), n);
        auto x_s = a;
        kernels::scal(-1.75, x_s.data(), n);

        kernels::set_backend(simd);
        // Tolerance scales with the term magnitude sum; accumulation order
        // differs between backends.
        double scale_dot = 1.0;
        for (std::size_t i = 0; i < n; ++i) scale_dot += std::fabs(a[i] * b[i]);
        CHECK(std::fabs(kernels::dot(a.data(), b.data(), n) - dot_s) <= 1e-13 * scale_dot);
        CHECK(std::fabs(kernels::sum_abs(a.data(), n) - sabs_s) <= 1e-13 * (sabs_s + 1.0));
        CHECK(std::fabs(kernels::sum_sq(a.data(), n) - ssq_s) <= 1e-13 * (ssq_s + 1.0));
        CHECK(kernels::max_abs(a.data(), n) == mabs_s);  // max is order-free
        CHECK(std::fabs(kernels::sum_sq_diff(a.data(), b.data(), n) - ssd_s) <=
              1e-13 * (ssd_s + 1.0));
        CHECK(std::fabs(kernels::sum_abs_diff(a.data(), b.data(), n) - sad_s) <=
              1e-13 * (sad_s + 1.0));
        CHECK(std::fabs(kernels::dot_abs(a.data(), b.data(), n) - dabs_s) <=
              1e-13 * scale_dot);

        auto y_v = b;
        kernels::axpy(0.37, a.data(), y_v.data(), n);
        auto x_v = a;
        kernels::scal(-1.75, x_v.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(y_v[i] - y_s[i]) <=
                  1e-14 * (std::fabs(y_s[i]) + std::fabs(a[i]) + 1.0));
            CHECK(x_v[i] == x_s[i]);  // single multiply, no reassociation
        }
    }
}

TEST_CASE("kernel reference values") {
    BackendGuard guard;
    for (auto backend : {kernels::Backend::Scalar, kernels::Backend::Auto}) {
        kernels::set_backend(backend);
        double a[5] = {1.0, -2.0, 3.0, -4.0, 5.0};
        double b[5] = {2.0, 2.0, 2.0, 2.0, 2.0};
        CHECK(kernels::dot(a, b, 5) == doctest::Approx(6.0));
        CHECK(kernels::sum_abs(a, 5) == doctest::Approx(15.0));
        CHECK(kernels::sum_sq(a, 5) == doctest::Approx(55.0));
        CHECK(kernels::max_abs(a, 5) == doctest::Approx(5.0));
        CHECK(kernels::sum_sq_diff(a, b, 5) == doctest::Approx(1 + 16 + 1 + 36 + 9));
        CHECK(kernels::sum_abs_diff(a, b, 5) == doctest::Approx(1 + 4 + 1 + 6 + 3));
        CHECK(kernels::dot_abs(b, a, 5) == doctest::Approx(30.0));
        double y[5] = {0, 0, 0, 0, 0};
        kernels::axpy(2.0, a, y, 5);
        CHECK(y[3] == doctest::Approx(-8.0));
        kernels::scal(0.5, y, 5);
        CHECK(y[4] == doctest::Approx(5.0));
    }
}

TEST_CASE("backend selection is reported") {
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::Scalar);
    CHECK(kernels::active_backend() == kernels::Backend::Scalar);
    kernels::set_backend(kernels::Backend::Auto);
    CHECK(kernels::backend_available(kernels::active_backend()));
}

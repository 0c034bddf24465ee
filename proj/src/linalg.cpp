#include "precis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "precis/errors.hpp"
#include "precis/kernels.hpp"

namespace precis {

namespace {

// Returns false when a pivot falls at or below tol_rel * max(diag).
bool cholesky_lower(const Matrix& a, Matrix& l, double tol_rel) {
    const std::size_t p = a.rows();
    l = Matrix(p, p, 0.0);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < p; ++i) max_diag = std::max(max_diag, a(i, i));
    if (max_diag <= 0.0) return false;
    const double floor = tol_rel * max_diag;
    for (std::size_t i = 0; i < p; ++i) {
        const double* li = l.row(i);
        for (std::size_t j = 0; j < i; ++j) {
            double s = a(i, j) - kernels::dot(li, l.row(j), j);
            l(i, j) = s / l(j, j);
        }
        double d = a(i, i) - kernels::sum_sq(li, i);
        if (d <= floor) return false;
        l(i, i) = std::sqrt(d);
    }
    return true;
}

}  // namespace

CholeskyFactor cholesky_pd(const SymmetricMatrix& m) {
    Matrix l;
    if (!cholesky_lower(m.mat(), l, kPdPivotRel))
        throw NotPositiveDefinite("matrix is not positive definite");
    return CholeskyFactor{std::move(l)};
}

double log_det_pd(const SymmetricMatrix& m) {
    CholeskyFactor f = cholesky_pd(m);
    double s = 0.0;
    for (std::size_t i = 0; i < f.lower.rows(); ++i) s += std::log(f.lower(i, i));
    return 2.0 * s;
}

SymmetricMatrix invert_pd(const SymmetricMatrix& m) {
    const std::size_t p = m.dim();
    CholeskyFactor f = cholesky_pd(m);
    const Matrix& l = f.lower;

    // Invert L in place of a fresh lower-triangular matrix.
    Matrix linv(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        linv(j, j) = 1.0 / l(j, j);
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = 0.0;
            for (std::size_t k = j; k < i; ++k) s += l(i, k) * linv(k, j);
            linv(i, j) = -s / l(i, i);
        }
    }

    // M^{-1} = L^{-T} L^{-1}; entry (i,j) sums over rows k >= max(i,j).
    Matrix inv(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = j; k < p; ++k) s += linv(k, i) * linv(k, j);
            inv(i, j) = s;
            inv(j, i) = s;
        }
    }
    return SymmetricMatrix::from_average(std::move(inv));
}

EigenSym eigen_sym(const SymmetricMatrix& m) {
    const std::size_t p = m.dim();
    Matrix a = m.mat();
    Matrix v = Matrix::identity(p);

    double norm = std::sqrt(kernels::sum_sq(a.data(), a.size()));
    if (norm == 0.0) {
        EigenSym r;
        r.values.assign(p, 0.0);
        r.vectors = std::move(v);
        return r;
    }

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-13 * norm; ++sweep) {
        for (std::size_t q = 1; q < p; ++q) {
            for (std::size_t r = 0; r < q; ++r) {
                double apq = a(r, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double app = a(r, r), aqq = a(q, q);
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (std::size_t k = 0; k < p; ++k) {
                    double akp = a(k, r), akq = a(k, q);
                    a(k, r) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    double apk = a(r, k), aqk = a(q, k);
                    a(r, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    double vkp = v(k, r), vkq = v(k, q);
                    v(k, r) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EigenSym r;
    r.values.resize(p);
    r.vectors = Matrix(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        r.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < p; ++i) r.vectors(i, j) = v(i, order[j]);
    }
    return r;
}

SymmetricMatrix sym_matrix_sqrt(const SymmetricMatrix& m) {
    EigenSym e = eigen_sym(m);
    const std::size_t p = m.dim();
    std::vector<double> roots(p);
    for (std::size_t i = 0; i < p; ++i)
        roots[i] = e.values[i] > 0.0 ? std::sqrt(e.values[i]) : 0.0;

    Matrix out(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < p; ++k)
                s += e.vectors(i, k) * roots[k] * e.vectors(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return SymmetricMatrix::from_average(std::move(out));
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ValidationError("matmul: inner dimensions do not match");
    Matrix bt = b.transposed();
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(i, j) = kernels::dot(a.row(i), bt.row(j), a.cols());
    return c;
}

double trace_product_sym(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    if (a.dim() != b.dim())
        throw ValidationError("trace product: dimensions do not match");
    return kernels::dot(a.mat().data(), b.mat().data(), a.mat().size());
}

}  // namespace precis

#pragma once

#include <cstddef>
#include <vector>

namespace precis {

// Dense row-major matrix of doubles. Sparsity is a property of the values,
// not the storage, at the dimensions this library targets.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Matrix transposed() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// n x p observation matrix; rows are time points, columns are variables.
class SampleData {
public:
    SampleData() = default;
    explicit SampleData(Matrix values);  // requires n >= 2, p >= 2, finite entries

    std::size_t n() const { return values_.rows(); }
    std::size_t p() const { return values_.cols(); }
    const Matrix& values() const { return values_; }

private:
    Matrix values_;
};

// Square matrix whose symmetry holds bitwise: m(i,j) == m(j,i) exactly.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;

    // Validates exact symmetry and finiteness; throws ValidationError.
    static SymmetricMatrix from_exact(Matrix m);
    // Symmetrizes by averaging; both triangles get the same stored value.
    static SymmetricMatrix from_average(Matrix m);
    static SymmetricMatrix identity(std::size_t n);

    std::size_t dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }
    double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    bool empty() const { return mat_.empty(); }

private:
    explicit SymmetricMatrix(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
};

struct CholeskyFactor {
    Matrix lower;  // L with L * L^T reproducing the source matrix
};

}  // namespace precis

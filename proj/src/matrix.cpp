#include "precis/matrix.hpp"

#include <cmath>
#include <utility>

#include "precis/errors.hpp"

namespace precis {

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

SampleData::SampleData(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 2 || values_.cols() < 2)
        throw ValidationError("sample data needs at least 2 rows and 2 columns");
    if (!values_.all_finite())
        throw ValidationError("sample data contains non-finite entries");
}

SymmetricMatrix SymmetricMatrix::from_exact(Matrix m) {
    if (m.rows() != m.cols())
        throw ValidationError("symmetric matrix must be square");
    if (!m.all_finite())
        throw ValidationError("symmetric matrix contains non-finite entries");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i))
                throw ValidationError("matrix is not symmetric");
    return SymmetricMatrix(std::move(m));
}

SymmetricMatrix SymmetricMatrix::from_average(Matrix m) {
    if (m.rows() != m.cols())
        throw ValidationError("symmetric matrix must be square");
    if (!m.all_finite())
        throw ValidationError("symmetric matrix contains non-finite entries");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
    return SymmetricMatrix(std::move(m));
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
    return SymmetricMatrix(Matrix::identity(n));
}

}  // namespace precis

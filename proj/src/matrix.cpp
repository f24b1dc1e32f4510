#include "qfe/matrix.hpp"

#include "qfe/errors.hpp"

#include <utility>

namespace qfe {

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldElement& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::initializer_list<std::initializer_list<FieldElement>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DomainError("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n, const FieldPtr& field)
{
    Matrix m(n, n, FieldElement::zero(field));
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = FieldElement::one(field);
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const FieldElement> entries)
{
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

Matrix Matrix::block_diagonal(const Matrix& upper, const Matrix& lower)
{
    Matrix m(upper.rows_ + lower.rows_, upper.cols_ + lower.cols_);
    for (std::size_t i = 0; i < upper.rows_; ++i) {
        for (std::size_t j = 0; j < upper.cols_; ++j) {
            m(i, j) = upper(i, j);
        }
    }
    for (std::size_t i = 0; i < lower.rows_; ++i) {
        for (std::size_t j = 0; j < lower.cols_; ++j) {
            m(upper.rows_ + i, upper.cols_ + j) = lower(i, j);
        }
    }
    return m;
}

FieldPtr Matrix::field() const
{
    FieldPtr k = Field::rationals();
    for (const auto& x : data_) {
        if (x.height() > 0) {
            k = common_field(k, x.field());
        }
    }
    return k;
}

bool Matrix::is_rational() const
{
    for (const auto& x : data_) {
        if (!x.is_rational_value()) {
            return false;
        }
    }
    return true;
}

bool Matrix::is_symmetric() const
{
    if (!is_square()) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if (!((*this)(i, j) == (*this)(j, i))) {
                return false;
            }
        }
    }
    return true;
}

bool Matrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i != j && !(*this)(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

FieldElement Matrix::determinant() const
{
    if (!is_square()) {
        throw DomainError("determinant of a non-square matrix");
    }
    Matrix a = *this;
    FieldElement det = 1;
    const std::size_t n = rows_;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k).is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            return FieldElement::zero(field());
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
            }
            det = -det;
        }
        det *= a(k, k);
        FieldElement inv = a(k, k).inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) {
                continue;
            }
            FieldElement factor = a(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
            }
        }
    }
    return det;
}

Matrix Matrix::inverse() const
{
    if (!is_square()) {
        throw DomainError("inverse of a non-square matrix");
    }
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n, field());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k).is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            throw RankDeficient("matrix is singular");
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        }
        FieldElement p = a(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) *= p;
            inv(k, j) *= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) {
                continue;
            }
            FieldElement factor = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
                inv(i, j) -= factor * inv(k, j);
            }
        }
    }
    return inv;
}

Vector Matrix::column(std::size_t j) const
{
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

Matrix operator*(const Matrix& x, const Matrix& y)
{
    if (x.cols_ != y.rows_) {
        throw DomainError("matrix product dimension mismatch");
    }
    Matrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
        for (std::size_t j = 0; j < y.cols_; ++j) {
            FieldElement acc;
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (!x(i, k).is_zero() && !y(k, j).is_zero()) {
                    acc += x(i, k) * y(k, j);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

Vector operator*(const Matrix& x, const Vector& v)
{
    if (x.cols_ != v.size()) {
        throw DomainError("matrix-vector dimension mismatch");
    }
    Vector out(x.rows_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
        for (std::size_t k = 0; k < x.cols_; ++k) {
            out[i] += x(i, k) * v[k];
        }
    }
    return out;
}

Matrix operator*(const FieldElement& s, const Matrix& x)
{
    Matrix out = x;
    for (auto& e : out.data_) {
        e = s * e;
    }
    return out;
}

Matrix operator+(const Matrix& x, const Matrix& y)
{
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) {
        throw DomainError("matrix sum dimension mismatch");
    }
    Matrix out = x;
    for (std::size_t i = 0; i < out.data_.size(); ++i) {
        out.data_[i] += y.data_[i];
    }
    return out;
}

Matrix operator-(const Matrix& x, const Matrix& y)
{
    return x + (-y);
}

Matrix Matrix::operator-() const
{
    Matrix out = *this;
    for (auto& e : out.data_) {
        e = -e;
    }
    return out;
}

bool operator==(const Matrix& x, const Matrix& y)
{
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) {
        return false;
    }
    for (std::size_t i = 0; i < x.data_.size(); ++i) {
        if (!(x.data_[i] == y.data_[i])) {
            return false;
        }
    }
    return true;
}

std::string Matrix::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j > 0) {
                s += ", ";
            }
            s += (*this)(i, j).to_string();
        }
        s += "]";
    }
    return s + "]";
}

FieldElement bilinear(const Matrix& m, const Vector& u, const Vector& v)
{
    if (m.rows() != u.size() || m.cols() != v.size()) {
        throw DomainError("bilinear form dimension mismatch");
    }
    FieldElement acc;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!m(i, j).is_zero() && !v[j].is_zero()) {
                acc += u[i] * m(i, j) * v[j];
            }
        }
    }
    return acc;
}

} // namespace qfe

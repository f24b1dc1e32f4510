#pragma once

// Dense exact matrices over FieldElement. Sizes here are tiny (<= 6), so the
// representation is a flat row-major vector and every algorithm is the
// textbook one.

#include "qfe/field.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qfe {

using Vector = std::vector<FieldElement>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const FieldElement& fill = FieldElement());
    Matrix(std::initializer_list<std::initializer_list<FieldElement>> rows);

    static Matrix identity(std::size_t n, const FieldPtr& field = Field::rationals());
    static Matrix diagonal(std::span<const FieldElement> entries);
    static Matrix block_diagonal(const Matrix& upper, const Matrix& lower);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const FieldElement& operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * cols_ + j];
    }

    /// Smallest tower field containing every entry.
    FieldPtr field() const;
    bool is_rational() const;
    bool is_symmetric() const;
    bool is_diagonal() const;
    bool is_zero() const;

    Matrix transpose() const;
    FieldElement determinant() const;
    /// Throws RankDeficient when singular.
    Matrix inverse() const;
    Vector column(std::size_t j) const;

    friend Matrix operator*(const Matrix& x, const Matrix& y);
    friend Vector operator*(const Matrix& x, const Vector& v);
    friend Matrix operator*(const FieldElement& s, const Matrix& x);
    friend Matrix operator+(const Matrix& x, const Matrix& y);
    friend Matrix operator-(const Matrix& x, const Matrix& y);
    Matrix operator-() const;
    friend bool operator==(const Matrix& x, const Matrix& y);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FieldElement> data_;
};

/// u^T M v.
FieldElement bilinear(const Matrix& m, const Vector& u, const Vector& v);

} // namespace qfe

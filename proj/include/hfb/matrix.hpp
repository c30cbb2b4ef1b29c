#pragma once

#include "hfb/rational.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

namespace hfb {

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows);
    /// Columns given as vectors of equal length; `height` is used when `cols` is empty.
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t height);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    std::vector<Vec> columns() const;
    void set_column(std::size_t j, const Vec& v);

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

    bool is_zero() const;
    Rational trace() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Rational& s);

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, Matrix a);
Vec operator*(const Matrix& a, const Vec& v);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Reduced row echelon form together with the pivot columns.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Kernel basis as columns, one per free column of the echelon form (in increasing order).
Matrix nullspace(const Matrix& m);

/// Indices of a maximal independent subset of the columns, greedily from the left.
std::vector<std::size_t> independent_columns(const Matrix& m);

/// Some x with a*x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);
/// Some X with a*X = b, column by column, or nullopt when any column is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

Rational determinant(Matrix a);

/// Columns of `extra` (in order) that extend the column space of `base` one dimension at a time.
std::vector<std::size_t> extend_basis(const Matrix& base, const Matrix& extra);

}  // namespace hfb

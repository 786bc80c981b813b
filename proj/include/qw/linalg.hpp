#pragma once

// Dense exact linear algebra over AlgNum.
//
// Gaussian elimination with the first nonzero entry of each column as pivot
// (exact arithmetic needs no magnitude heuristics, and the choice keeps the
// results deterministic).  Reduction is to reduced row-echelon form.

#include "qw/exactfield.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qw {

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    AlgNum &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const AlgNum &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    Matrix operator*(const Matrix &other) const;
    Matrix transposed() const;
    friend bool operator==(const Matrix &a, const Matrix &b);

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<AlgNum> data_;
};

struct Echelon {
    Matrix reduced;                  // reduced row-echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon row_reduce(Matrix m);
std::size_t rank(const Matrix &m);
// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<AlgNum>> nullspace(const Matrix &m);
// Some solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<AlgNum>> solve(const Matrix &m,
                                         const std::vector<AlgNum> &b);
AlgNum determinant(Matrix m);

} // namespace qw

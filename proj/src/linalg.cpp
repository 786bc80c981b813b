#include "qw/linalg.hpp"

#include <utility>

namespace qw {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = AlgNum(1);
    return m;
}

Matrix Matrix::operator*(const Matrix &other) const {
    if (cols_ != other.rows_)
        throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const AlgNum &a = (*this)(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                if (!other(k, j).is_zero())
                    out(i, j) += a * other(k, j);
        }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Echelon row_reduce(Matrix m) {
    Echelon e;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t p = row;
        while (p < R && m(p, col).is_zero())
            ++p;
        if (p == R)
            continue;
        if (p != row)
            for (std::size_t j = col; j < C; ++j)
                std::swap(m(p, j), m(row, j));
        const AlgNum inv = m(row, col).inv();
        for (std::size_t j = col; j < C; ++j)
            if (!m(row, j).is_zero())
                m(row, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || m(i, col).is_zero())
                continue;
            const AlgNum factor = m(i, col);
            for (std::size_t j = col; j < C; ++j)
                if (!m(row, j).is_zero())
                    m(i, j) -= factor * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const Matrix &m) { return row_reduce(m).rank(); }

std::vector<std::vector<AlgNum>> nullspace(const Matrix &m) {
    const Echelon e = row_reduce(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (std::size_t c : e.pivots)
        is_pivot[c] = true;
    std::vector<std::vector<AlgNum>> basis;
    for (std::size_t free = 0; free < C; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<AlgNum> v(C);
        v[free] = AlgNum(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<AlgNum>> solve(const Matrix &m,
                                         const std::vector<AlgNum> &b) {
    if (b.size() != m.rows())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const Echelon e = row_reduce(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    std::vector<AlgNum> x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

AlgNum determinant(Matrix m) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch, "determinant of non-square");
    const std::size_t n = m.rows();
    AlgNum det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m(p, col).is_zero())
            ++p;
        if (p == n)
            return AlgNum();
        if (p != col) {
            for (std::size_t j = col; j < n; ++j)
                std::swap(m(p, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        const AlgNum inv = m(col, col).inv();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero())
                continue;
            const AlgNum factor = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j)
                m(i, j) -= factor * m(col, j);
        }
    }
    return det;
}

} // namespace qw

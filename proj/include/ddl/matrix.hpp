#pragma once

#include "ddl/rational_function.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace ddl {

template <typename T>
inline bool field_is_zero(const T& x) { return x == T{}; }

/// Dense matrix over an exact field (Rational or RationalFunction).
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
    Matrix(int rows, int cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != static_cast<std::size_t>(rows_) * cols_)
            throw std::invalid_argument("Matrix: entry count mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("Matrix: ragged rows");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(Rational(1));
        return m;
    }
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!field_is_zero(v)) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (field_is_zero(a(i, k))) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const T& c, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) r.data_[i] = c * m.data_[i];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix block(int i0, int j0, int h, int w) const {
        Matrix r(h, w);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
        return r;
    }
    void set_block(int i0, int j0, const Matrix& b) {
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    /// Exact determinant (Gaussian elimination over the field).
    T det() const {
        if (!square()) throw std::domain_error("Matrix::det: non-square");
        Matrix a = *this;
        T result(Rational(1));
        int sgn = 1;
        for (int c = 0; c < cols_; ++c) {
            int p = -1;
            for (int r = c; r < rows_; ++r)
                if (!field_is_zero(a(r, c))) { p = r; break; }
            if (p < 0) return T{};
            if (p != c) { a.swap_rows(p, c); sgn = -sgn; }
            for (int r = c + 1; r < rows_; ++r) {
                if (field_is_zero(a(r, c))) continue;
                T f = a(r, c) / a(c, c);
                for (int j = c; j < cols_; ++j) a(r, j) = a(r, j) - f * a(c, j);
            }
        }
        for (int i = 0; i < rows_; ++i) result = result * a(i, i);
        if (sgn < 0) result = -result;
        return result;
    }

    /// Exact inverse; throws if det vanishes identically.
    Matrix inverse() const {
        if (!square()) throw std::domain_error("Matrix::inverse: non-square");
        int n = rows_;
        Matrix a = *this, inv = identity(n);
        for (int c = 0; c < n; ++c) {
            int p = -1;
            for (int r = c; r < n; ++r)
                if (!field_is_zero(a(r, c))) { p = r; break; }
            if (p < 0) throw std::domain_error("Matrix::inverse: singular");
            if (p != c) { a.swap_rows(p, c); inv.swap_rows(p, c); }
            T piv = a(c, c);
            for (int j = 0; j < n; ++j) {
                a(c, j) = a(c, j) / piv;
                inv(c, j) = inv(c, j) / piv;
            }
            for (int r = 0; r < n; ++r) {
                if (r == c || field_is_zero(a(r, c))) continue;
                T f = a(r, c);
                for (int j = 0; j < n; ++j) {
                    a(r, j) = a(r, j) - f * a(c, j);
                    inv(r, j) = inv(r, j) - f * inv(c, j);
                }
            }
        }
        return inv;
    }

    int rank() const {
        Matrix a = *this;
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            int p = -1;
            for (int r = rank; r < rows_; ++r)
                if (!field_is_zero(a(r, c))) { p = r; break; }
            if (p < 0) continue;
            a.swap_rows(p, rank);
            for (int r = rank + 1; r < rows_; ++r) {
                if (field_is_zero(a(r, c))) continue;
                T f = a(r, c) / a(rank, c);
                for (int j = c; j < cols_; ++j) a(r, j) = a(r, j) - f * a(rank, j);
            }
            ++rank;
        }
        return rank;
    }

    /// Reduced row echelon form (in place copy); returns pivot columns.
    std::pair<Matrix, std::vector<int>> rref() const {
        Matrix a = *this;
        std::vector<int> pivots;
        int row = 0;
        for (int c = 0; c < cols_ && row < rows_; ++c) {
            int p = -1;
            for (int r = row; r < rows_; ++r)
                if (!field_is_zero(a(r, c))) { p = r; break; }
            if (p < 0) continue;
            a.swap_rows(p, row);
            T piv = a(row, c);
            for (int j = 0; j < cols_; ++j) a(row, j) = a(row, j) / piv;
            for (int r = 0; r < rows_; ++r) {
                if (r == row || field_is_zero(a(r, c))) continue;
                T f = a(r, c);
                for (int j = 0; j < cols_; ++j) a(r, j) = a(r, j) - f * a(row, j);
            }
            pivots.push_back(c);
            ++row;
        }
        return {a, pivots};
    }

    /// Basis of the null space, as columns.
    std::vector<std::vector<T>> kernel() const {
        auto [R, pivots] = rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::vector<T>> basis;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<T> v(cols_);
            v[c] = T(Rational(1));
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -R(static_cast<int>(r), c);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::string str() const {
        std::string out = "[";
        for (int i = 0; i < rows_; ++i) {
            out += i ? "; " : "";
            for (int j = 0; j < cols_; ++j) {
                out += j ? ", " : "";
                out += entry_str((*this)(i, j));
            }
        }
        return out + "]";
    }

private:
    static void check_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }
    static std::string entry_str(const Rational& r) { return to_string(r); }
    static std::string entry_str(const RationalFunction& f) { return f.str(); }

    int rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using RFMatrix = Matrix<RationalFunction>;

inline RFMatrix lift(const QMatrix& m) {
    RFMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = RationalFunction(m(i, j));
    return r;
}

inline QMatrix eval(const RFMatrix& m, const Rational& s) {
    QMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval(s);
    return r;
}

inline bool defined_at(const RFMatrix& m, const Rational& s) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).defined_at(s)) return false;
    return true;
}

inline RFMatrix derivative(const RFMatrix& m) {
    RFMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).derivative();
    return r;
}

}  // namespace ddl

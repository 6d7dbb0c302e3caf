#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdk {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("IntMatrix: negative dimension");
    }

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
    static IntMatrix from_columns(const std::vector<IntVec>& columns, int rows);
    static IntMatrix diagonal(const IntVec& d);
    static IntMatrix column_vector(const IntVec& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Int& at(int i, int j);
    const Int& at(int i, int j) const;

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Int& c) const;

    IntVec apply(const IntVec& x) const;          // M x
    IntVec apply_transpose(const IntVec& y) const; // M^T y

    IntMatrix transpose() const;
    IntMatrix pow(unsigned long e) const; // square matrices only

    IntMatrix hstack(const IntMatrix& o) const;
    IntMatrix vstack(const IntMatrix& o) const;
    IntMatrix submatrix(int r0, int c0, int nrows, int ncols) const;
    IntVec column(int j) const;
    IntVec row(int i) const;
    void set_column(int j, const IntVec& v);

    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    Int det() const;

    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

} // namespace rdk

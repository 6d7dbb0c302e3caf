#include "rdk/int_matrix.hpp"

#include <sstream>

namespace rdk {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    int nr = int(rows.size());
    int nc = nr ? int(rows.begin()->size()) : 0;
    IntMatrix m(nr, nc);
    int i = 0;
    for (const auto& r : rows) {
        if (int(r.size()) != nc) throw std::invalid_argument("from_rows: ragged rows");
        int j = 0;
        for (long long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& columns, int rows) {
    IntMatrix m(rows, int(columns.size()));
    for (int j = 0; j < int(columns.size()); ++j) {
        if (int(columns[j].size()) != rows) throw std::invalid_argument("from_columns: bad column length");
        for (int i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
    IntMatrix m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::column_vector(const IntVec& v) {
    IntMatrix m(int(v.size()), 1);
    for (int i = 0; i < int(v.size()); ++i) m(i, 0) = v[i];
    return m;
}

Int& IntMatrix::at(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("IntMatrix::at");
    return (*this)(i, j);
}

const Int& IntMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("IntMatrix::at");
    return (*this)(i, j);
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix*: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix+: shape mismatch");
    IntMatrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix-: shape mismatch");
    IntMatrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
}

IntMatrix IntMatrix::operator*(const Int& c) const {
    IntMatrix r = *this;
    for (auto& v : r.a_) v *= c;
    return r;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (int(x.size()) != cols_) throw std::invalid_argument("apply: length mismatch");
    IntVec y(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

IntVec IntMatrix::apply_transpose(const IntVec& y) const {
    if (int(y.size()) != rows_) throw std::invalid_argument("apply_transpose: length mismatch");
    IntVec x(cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) x[j] += (*this)(i, j) * y[i];
    return x;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

IntMatrix IntMatrix::pow(unsigned long e) const {
    if (!is_square()) throw std::invalid_argument("pow: non-square matrix");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vstack: column mismatch");
    IntMatrix r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
    return r;
}

IntMatrix IntMatrix::submatrix(int r0, int c0, int nrows, int ncols) const {
    if (r0 < 0 || c0 < 0 || r0 + nrows > rows_ || c0 + ncols > cols_)
        throw std::out_of_range("submatrix");
    IntMatrix r(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

IntVec IntMatrix::column(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntVec IntMatrix::row(int i) const {
    IntVec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

void IntMatrix::set_column(int j, const IntVec& v) {
    if (int(v.size()) != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool IntMatrix::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntMatrix::det() const {
    if (!is_square()) throw std::invalid_argument("det: non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = t / prev; // exact by Bareiss
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (int j = 0; j < cols_; ++j) os << (*this)(i, j) << (j + 1 < cols_ ? ", " : "");
        os << "]" << (i + 1 < rows_ ? "\n" : "");
    }
    os << "]";
    return os.str();
}

} // namespace rdk

#pragma once

#include "natred/errors.hpp"
#include "natred/polynomial.hpp"
#include "natred/rational.hpp"

#include <cstddef>
#include <vector>

namespace natred {

template <class F>
using Vec = std::vector<F>;

template <class F>
Vec<F> zero_vec(size_t n) {
    return Vec<F>(n, F(0));
}

template <class F>
Vec<F> unit_vec(size_t n, size_t i) {
    Vec<F> v(n, F(0));
    v[i] = F(1);
    return v;
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

template <class F>
Vec<F> add(const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

template <class F>
Vec<F> sub(const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

template <class F>
Vec<F> scale(const Vec<F>& a, const F& s) {
    Vec<F> r(a);
    for (auto& x : r) x *= s;
    return r;
}

// r += s * a
template <class F>
void axpy(Vec<F>& r, const F& s, const Vec<F>& a) {
    if (is_zero(s)) return;
    for (size_t i = 0; i < r.size(); ++i)
        if (!is_zero(a[i])) r[i] += s * a[i];
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
    F s(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
    return s;
}

// Dense row-major matrix.
template <class F>
class Mat {
public:
    Mat() = default;
    Mat(size_t r, size_t c) : r_(r), c_(c), d_(r * c, F(0)) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Mat from_rows(const std::vector<Vec<F>>& rows, size_t cols) {
        Mat m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, ErrorKind::ShapeMismatch, "ragged matrix rows");
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Mat from_cols(const std::vector<Vec<F>>& cols, size_t rows) {
        Mat m(rows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }
    static Mat unflatten(const Vec<F>& v, size_t r, size_t c) {
        require(v.size() == r * c, ErrorKind::ShapeMismatch, "flattened size mismatch");
        Mat m(r, c);
        m.d_ = v;
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    F& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
    const F& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }
    const std::vector<F>& data() const { return d_; }
    const Vec<F>& flatten() const { return d_; }

    Vec<F> row(size_t i) const { return Vec<F>(d_.begin() + i * c_, d_.begin() + (i + 1) * c_); }
    Vec<F> col(size_t j) const {
        Vec<F> v(r_);
        for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_row(size_t i, const Vec<F>& v) {
        for (size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
    }
    void set_col(size_t j, const Vec<F>& v) {
        for (size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }
    std::vector<Vec<F>> row_vectors() const {
        std::vector<Vec<F>> out;
        for (size_t i = 0; i < r_; ++i) out.push_back(row(i));
        return out;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool is_zero() const {
        for (const auto& x : d_)
            if (!natred::is_zero(x)) return false;
        return true;
    }
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat m(*this);
        for (size_t k = 0; k < d_.size(); ++k) m.d_[k] += o.d_[k];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat m(*this);
        for (size_t k = 0; k < d_.size(); ++k) m.d_[k] -= o.d_[k];
        return m;
    }
    Mat operator-() const {
        Mat m(*this);
        for (auto& x : m.d_) x = -x;
        return m;
    }
    Mat operator*(const Mat& o) const {
        require(c_ == o.r_, ErrorKind::ShapeMismatch, "matrix product shape mismatch");
        Mat m(r_, o.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                const F& a = (*this)(i, k);
                if (natred::is_zero(a)) continue;
                for (size_t j = 0; j < o.c_; ++j) {
                    const F& b = o(k, j);
                    if (!natred::is_zero(b)) m(i, j) += a * b;
                }
            }
        return m;
    }
    Mat scaled(const F& s) const {
        Mat m(*this);
        for (auto& x : m.d_) x *= s;
        return m;
    }
    Vec<F> apply(const Vec<F>& v) const {
        require(v.size() == c_, ErrorKind::ShapeMismatch, "matrix-vector shape mismatch");
        Vec<F> out(r_, F(0));
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) {
                const F& a = (*this)(i, j);
                if (!natred::is_zero(a) && !natred::is_zero(v[j])) out[i] += a * v[j];
            }
        return out;
    }
    F trace() const {
        F t(0);
        for (size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
        return t;
    }
    // Submatrix rows [r0, r0+nr), cols [c0, c0+nc).
    Mat block(size_t r0, size_t c0, size_t nr, size_t nc) const {
        Mat m(nr, nc);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(size_t r0, size_t c0, const Mat& b) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

private:
    void check_same(const Mat& o) const {
        require(r_ == o.r_ && c_ == o.c_, ErrorKind::ShapeMismatch, "matrix shape mismatch");
    }
    size_t r_ = 0, c_ = 0;
    std::vector<F> d_;
};

using Matrix = Mat<Rational>;
using Vector = Vec<Rational>;

template <class F>
Mat<F> commutator(const Mat<F>& a, const Mat<F>& b) {
    return a * b - b * a;
}

// Trace of a*b without forming the product.
template <class F>
F trace_product(const Mat<F>& a, const Mat<F>& b) {
    F t(0);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const F& x = a(i, k);
            const F& y = b(k, i);
            if (!is_zero(x) && !is_zero(y)) t += x * y;
        }
    return t;
}

template <class G, class F>
Mat<G> convert(const Mat<F>& m) {
    Mat<G> out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = G(m(i, j));
    return out;
}

template <class G, class F>
Vec<G> convert(const Vec<F>& v) {
    Vec<G> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(G(x));
    return out;
}

}  // namespace natred

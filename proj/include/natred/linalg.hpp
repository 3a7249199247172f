#pragma once

#include "natred/matrix.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace natred {

// Incremental row echelon builder; rows kept fully reduced with leading ones.
template <class F>
class RowReducer {
public:
    explicit RowReducer(size_t cols) : cols_(cols) {}

    // Returns true if v was independent of the rows so far.
    bool add(Vec<F> v) {
        reduce(v);
        size_t lead = cols_;
        for (size_t j = 0; j < cols_; ++j)
            if (!is_zero(v[j])) { lead = j; break; }
        if (lead == cols_) return false;
        F inv = F(1) / v[lead];
        for (size_t j = lead; j < cols_; ++j)
            if (!is_zero(v[j])) v[j] *= inv;
        for (auto& r : rows_) {
            if (is_zero(r[lead])) continue;
            F f = r[lead];
            for (size_t j = lead; j < cols_; ++j)
                if (!is_zero(v[j])) r[j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(lead);
        return true;
    }

    // Reduce v modulo the row space (in place).
    void reduce(Vec<F>& v) const {
        for (size_t k = 0; k < rows_.size(); ++k) {
            size_t p = pivots_[k];
            if (is_zero(v[p])) continue;
            F f = v[p];
            const auto& r = rows_[k];
            for (size_t j = p; j < cols_; ++j)
                if (!is_zero(r[j])) v[j] -= f * r[j];
        }
    }

    size_t rank() const { return rows_.size(); }
    size_t cols() const { return cols_; }

    // Canonical RREF, rows ordered by pivot column.
    std::pair<Mat<F>, std::vector<size_t>> echelon() const {
        std::vector<size_t> order(rows_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivots_[a] < pivots_[b]; });
        Mat<F> m(rows_.size(), cols_);
        std::vector<size_t> piv;
        for (size_t i = 0; i < order.size(); ++i) {
            m.set_row(i, rows_[order[i]]);
            piv.push_back(pivots_[order[i]]);
        }
        return {m, piv};
    }

private:
    size_t cols_;
    std::vector<Vec<F>> rows_;
    std::vector<size_t> pivots_;
};

template <class F>
std::pair<Mat<F>, std::vector<size_t>> rref(const Mat<F>& m) {
    RowReducer<F> rr(m.cols());
    for (size_t i = 0; i < m.rows(); ++i) rr.add(m.row(i));
    return rr.echelon();
}

template <class F>
size_t rank(const Mat<F>& m) {
    RowReducer<F> rr(m.cols());
    for (size_t i = 0; i < m.rows(); ++i) rr.add(m.row(i));
    return rr.rank();
}

// Subspace of F^n stored by its canonical reduced echelon basis.
template <class F>
class BasicSubspace {
public:
    explicit BasicSubspace(size_t n = 0) : n_(n), basis_(0, n) {}

    static BasicSubspace span(size_t n, const std::vector<Vec<F>>& vs) {
        RowReducer<F> rr(n);
        for (const auto& v : vs) {
            require(v.size() == n, ErrorKind::ShapeMismatch, "vector length does not match ambient dimension");
            rr.add(v);
        }
        return from_reducer(rr);
    }
    static BasicSubspace from_rows(const Mat<F>& m) { return span(m.cols(), m.row_vectors()); }
    static BasicSubspace full(size_t n) {
        std::vector<Vec<F>> vs;
        for (size_t i = 0; i < n; ++i) vs.push_back(unit_vec<F>(n, i));
        return span(n, vs);
    }
    // Coordinate subspace spanned by e_lo .. e_{hi-1}.
    static BasicSubspace coordinate(size_t n, size_t lo, size_t hi) {
        std::vector<Vec<F>> vs;
        for (size_t i = lo; i < hi; ++i) vs.push_back(unit_vec<F>(n, i));
        return span(n, vs);
    }
    static BasicSubspace from_reducer(const RowReducer<F>& rr) {
        BasicSubspace s(rr.cols());
        auto [m, piv] = rr.echelon();
        s.basis_ = std::move(m);
        s.pivots_ = std::move(piv);
        return s;
    }

    size_t ambient_dim() const { return n_; }
    size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    const Mat<F>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    Vec<F> vector(size_t i) const { return basis_.row(i); }
    std::vector<Vec<F>> vectors() const { return basis_.row_vectors(); }

    Vec<F> residual(Vec<F> v) const {
        for (size_t k = 0; k < pivots_.size(); ++k) {
            size_t p = pivots_[k];
            if (natred::is_zero(v[p])) continue;
            F f = v[p];
            for (size_t j = p; j < n_; ++j)
                if (!natred::is_zero(basis_(k, j))) v[j] -= f * basis_(k, j);
        }
        return v;
    }
    bool contains(const Vec<F>& v) const { return is_zero_vec(residual(v)); }
    bool contains(const BasicSubspace& o) const {
        for (size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.vector(i))) return false;
        return true;
    }
    // Coefficients of v in the stored basis; v must lie in the subspace.
    Vec<F> coordinates(const Vec<F>& v) const {
        require(contains(v), ErrorKind::Internal, "coordinates requested for a vector outside the subspace");
        Vec<F> c(dim());
        for (size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
        return c;
    }
    Vec<F> from_coordinates(const Vec<F>& c) const {
        Vec<F> v = zero_vec<F>(n_);
        for (size_t k = 0; k < c.size(); ++k)
            if (!natred::is_zero(c[k]))
                for (size_t j = 0; j < n_; ++j)
                    if (!natred::is_zero(basis_(k, j))) v[j] += c[k] * basis_(k, j);
        return v;
    }

    bool operator==(const BasicSubspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
    bool operator!=(const BasicSubspace& o) const { return !(*this == o); }

    BasicSubspace operator+(const BasicSubspace& o) const {
        require(n_ == o.n_, ErrorKind::ShapeMismatch, "subspace ambient mismatch");
        auto vs = vectors();
        auto ws = o.vectors();
        vs.insert(vs.end(), ws.begin(), ws.end());
        return span(n_, vs);
    }

    // {w : w . s = 0 for all s} under the coordinate dot product.
    BasicSubspace annihilator() const;

    BasicSubspace intersect(const BasicSubspace& o) const {
        require(n_ == o.n_, ErrorKind::ShapeMismatch, "subspace ambient mismatch");
        auto a = annihilator().vectors();
        auto b = o.annihilator().vectors();
        a.insert(a.end(), b.begin(), b.end());
        return kernel_of_rows(a);
    }

    // Image under a linear map A (m x n).
    BasicSubspace image(const Mat<F>& A) const {
        std::vector<Vec<F>> vs;
        for (size_t i = 0; i < dim(); ++i) vs.push_back(A.apply(vector(i)));
        return span(A.rows(), vs);
    }

    bool operator<(const BasicSubspace& o) const {
        if (dim() != o.dim()) return dim() < o.dim();
        return lex_less(basis_.data(), o.basis_.data());
    }

    static BasicSubspace kernel_of_rows(const std::vector<Vec<F>>& rows_in, size_t n);

private:
    BasicSubspace kernel_of_rows(const std::vector<Vec<F>>& rows_in) const { return kernel_of_rows(rows_in, n_); }
    static bool lex_less(const std::vector<F>& a, const std::vector<F>& b) {
        for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (a[i] == b[i]) continue;
            return a[i] < b[i];
        }
        return a.size() < b.size();
    }

    size_t n_;
    Mat<F> basis_;
    std::vector<size_t> pivots_;
};

using Subspace = BasicSubspace<Rational>;

// Null space of the matrix whose rows are given (ambient dimension n).
template <class F>
BasicSubspace<F> BasicSubspace<F>::kernel_of_rows(const std::vector<Vec<F>>& rows_in, size_t n) {
    RowReducer<F> rr(n);
    for (const auto& r : rows_in) rr.add(r);
    auto [m, piv] = rr.echelon();
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<Vec<F>> out;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec<F> v = zero_vec<F>(n);
        v[f] = F(1);
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
        out.push_back(std::move(v));
    }
    return span(n, out);
}

template <class F>
BasicSubspace<F> BasicSubspace<F>::annihilator() const {
    return kernel_of_rows(vectors(), n_);
}

template <class F>
BasicSubspace<F> kernel(const Mat<F>& m) {
    return BasicSubspace<F>::kernel_of_rows(m.row_vectors(), m.cols());
}

template <class F>
F determinant(Mat<F> a) {
    require(a.rows() == a.cols(), ErrorKind::ShapeMismatch, "determinant of non-square matrix");
    size_t n = a.rows();
    F det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t r = c; r < n; ++r)
            if (!is_zero(a(r, c))) { p = r; break; }
        if (p == n) return F(0);
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        F inv = F(1) / a(c, c);
        for (size_t r = c + 1; r < n; ++r) {
            if (is_zero(a(r, c))) continue;
            F f = a(r, c) * inv;
            for (size_t j = c; j < n; ++j)
                if (!is_zero(a(c, j))) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

// Solves A x = b; nullopt if inconsistent.
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& A, const Vec<F>& b) {
    size_t n = A.cols();
    RowReducer<F> rr(n + 1);
    for (size_t i = 0; i < A.rows(); ++i) {
        Vec<F> r = A.row(i);
        r.push_back(b[i]);
        rr.add(std::move(r));
    }
    auto [m, piv] = rr.echelon();
    Vec<F> x = zero_vec<F>(n);
    for (size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == n) return std::nullopt;
        x[piv[k]] = m(k, n);
    }
    return x;
}

template <class F>
Mat<F> inverse(const Mat<F>& a) {
    size_t n = a.rows();
    require(n == a.cols(), ErrorKind::ShapeMismatch, "inverse of non-square matrix");
    Mat<F> aug(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, Mat<F>::identity(n));
    auto [m, piv] = rref(aug);
    require(piv.size() == n && (n == 0 || piv[n - 1] == n - 1), ErrorKind::DegenerateForm, "matrix is singular");
    return m.block(0, n, n, n);
}

// Smallest subspace containing seed and invariant under every op.
template <class F>
BasicSubspace<F> operator_closure(const BasicSubspace<F>& seed, const std::vector<Mat<F>>& ops) {
    size_t n = seed.ambient_dim();
    RowReducer<F> rr(n);
    std::vector<Vec<F>> frontier = seed.vectors();
    for (const auto& v : frontier) rr.add(v);
    while (!frontier.empty()) {
        std::vector<Vec<F>> next;
        for (const auto& v : frontier)
            for (const auto& op : ops) {
                Vec<F> w = op.apply(v);
                if (rr.add(w)) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return BasicSubspace<F>::from_reducer(rr);
}

// {v : s^T G v = 0 for all s in S}; no degeneracy check.
template <class F>
BasicSubspace<F> annihilator_wrt(const BasicSubspace<F>& S, const Mat<F>& G) {
    std::vector<Vec<F>> rows;
    Mat<F> Gt = G.transpose();
    for (size_t i = 0; i < S.dim(); ++i) rows.push_back(Gt.apply(S.vector(i)));
    return BasicSubspace<F>::kernel_of_rows(rows, S.ambient_dim());
}

template <class F>
BasicSubspace<F> orth_complement(const BasicSubspace<F>& S, const Mat<F>& G) {
    require(!is_zero(determinant(G)), ErrorKind::DegenerateForm, "bilinear form has nonzero radical");
    return annihilator_wrt(S, G);
}

// Matrix of the restriction of A to an invariant subspace V, in V's basis coordinates.
template <class F>
Mat<F> restrict_to(const Mat<F>& A, const BasicSubspace<F>& V) {
    size_t k = V.dim();
    Mat<F> out(k, k);
    for (size_t j = 0; j < k; ++j) {
        Vec<F> img = A.apply(V.vector(j));
        require(V.contains(img), ErrorKind::Internal, "subspace is not invariant under the operator");
        out.set_col(j, V.coordinates(img));
    }
    return out;
}

// Gram matrix of G restricted to V in V's basis.
template <class F>
Mat<F> restrict_form(const Mat<F>& G, const BasicSubspace<F>& V) {
    size_t k = V.dim();
    Mat<F> out(k, k);
    for (size_t i = 0; i < k; ++i) {
        Vec<F> gi = G.transpose().apply(V.vector(i));
        for (size_t j = 0; j < k; ++j) out(i, j) = dot(gi, V.vector(j));
    }
    return out;
}

template <class F>
F form_eval(const Mat<F>& G, const Vec<F>& x, const Vec<F>& y) {
    return dot(x, G.apply(y));
}

// g-orthogonal basis of span(vs) by exact Gram-Schmidt; weights w_i = g(f_i, f_i) != 0.
// Requires G positive definite on span(vs).
template <class F>
std::pair<std::vector<Vec<F>>, std::vector<F>> gram_schmidt(const Mat<F>& G, const std::vector<Vec<F>>& vs) {
    std::vector<Vec<F>> out;
    std::vector<F> w;
    for (const auto& v : vs) {
        Vec<F> u = v;
        for (size_t k = 0; k < out.size(); ++k) {
            F c = form_eval(G, out[k], v) / w[k];
            axpy(u, F(-c), out[k]);
        }
        if (is_zero_vec(u)) continue;
        F wu = form_eval(G, u, u);
        require(!is_zero(wu), ErrorKind::DegenerateForm, "isotropic vector in Gram-Schmidt");
        out.push_back(std::move(u));
        w.push_back(std::move(wu));
    }
    return {out, w};
}

// Orthogonal projector onto V along its G-orthogonal complement.
template <class F>
Mat<F> orthogonal_projector(const Mat<F>& G, const BasicSubspace<F>& V) {
    size_t n = V.ambient_dim();
    if (V.dim() == 0) return Mat<F>(n, n);
    Mat<F> B = V.basis().transpose();  // n x k
    Mat<F> Gv = restrict_form(G, V);
    return B * inverse(Gv) * B.transpose() * G;
}

// ---------------------------------------------------------------- rational-only helpers

// Symmetric bilinear form with exact Gram matrix.
class BilinearForm {
public:
    BilinearForm() = default;
    explicit BilinearForm(Matrix gram);
    static BilinearForm identity(size_t n) { return BilinearForm(Matrix::identity(n)); }

    size_t dim() const { return gram_.rows(); }
    const Matrix& gram() const { return gram_; }
    Rational operator()(const Vector& x, const Vector& y) const { return form_eval(gram_, x, y); }
    bool is_positive_definite() const { return positive_definite_; }
    bool is_nondegenerate() const;
    // (positive, negative, zero) counts of the signature.
    struct Inertia { size_t positive = 0, negative = 0, zero = 0; };
    Inertia inertia() const;
    bool operator==(const BilinearForm& o) const { return gram_ == o.gram_; }

private:
    Matrix gram_;
    bool positive_definite_ = false;
};

Poly characteristic_polynomial(const Matrix& a);
Poly minimal_polynomial(const Matrix& a);
Matrix eval_poly(const Poly& p, const Matrix& a);

// Affine solution set {point + span(directions)} of stacked linear constraints.
struct AffineSolution {
    Vector point;
    Subspace directions;
};
struct LinearConstraint {
    Matrix A;
    Vector rhs;
};
// Throws Inconsistent if no solution exists.
AffineSolution solve_linear_subject_to(size_t nvars, const std::vector<LinearConstraint>& constraints);

}  // namespace natred

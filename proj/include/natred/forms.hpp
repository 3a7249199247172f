#pragma once

#include "natred/linalg.hpp"

#include <vector>

namespace natred {

// Dense covariant tensor of degree d on an n-dimensional space, index (i1..id) at
// ((i1*n + i2)*n + ...)*n + id.
template <class F>
struct BasicTensor {
    size_t n = 0;
    size_t degree = 0;
    std::vector<F> c;

    BasicTensor() = default;
    BasicTensor(size_t n_, size_t d) : n(n_), degree(d), c(ipow(n_, d), F(0)) {}
    static size_t ipow(size_t b, size_t e) {
        size_t r = 1;
        for (size_t i = 0; i < e; ++i) r *= b;
        return r;
    }
    F& at(size_t i, size_t j) { return c[i * n + j]; }
    const F& at(size_t i, size_t j) const { return c[i * n + j]; }
    F& at(size_t i, size_t j, size_t k) { return c[(i * n + j) * n + k]; }
    const F& at(size_t i, size_t j, size_t k) const { return c[(i * n + j) * n + k]; }
    F& at(size_t i, size_t j, size_t k, size_t l) { return c[((i * n + j) * n + k) * n + l]; }
    const F& at(size_t i, size_t j, size_t k, size_t l) const { return c[((i * n + j) * n + k) * n + l]; }

    bool is_zero() const {
        for (const auto& x : c)
            if (!natred::is_zero(x)) return false;
        return true;
    }
    bool operator==(const BasicTensor& o) const { return n == o.n && degree == o.degree && c == o.c; }
    bool operator!=(const BasicTensor& o) const { return !(*this == o); }
    BasicTensor operator+(const BasicTensor& o) const {
        require(n == o.n && degree == o.degree, ErrorKind::ShapeMismatch, "tensor shape mismatch");
        BasicTensor r(*this);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    BasicTensor operator-(const BasicTensor& o) const {
        require(n == o.n && degree == o.degree, ErrorKind::ShapeMismatch, "tensor shape mismatch");
        BasicTensor r(*this);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
        return r;
    }
    BasicTensor scaled(const F& s) const {
        BasicTensor r(*this);
        for (auto& x : r.c) x *= s;
        return r;
    }
    template <class G>
    BasicTensor<G> convert() const {
        BasicTensor<G> r;
        r.n = n;
        r.degree = degree;
        for (const auto& x : c) r.c.push_back(G(x));
        return r;
    }
};

using Tensor = BasicTensor<Rational>;

Rational max_abs(const Tensor& t);
bool is_alternating(const Tensor& t);

// Derivation action of an endomorphism A: (A.S)(x1..xd) = -sum_k S(.., A xk, ..).
template <class F>
BasicTensor<F> act(const Mat<F>& A, const BasicTensor<F>& S) {
    size_t n = S.n;
    require(A.rows() == n && A.cols() == n, ErrorKind::ShapeMismatch, "endomorphism size does not match tensor");
    std::vector<std::vector<std::pair<size_t, F>>> colnz(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t m = 0; m < n; ++m)
            if (!is_zero(A(m, i))) colnz[i].emplace_back(m, A(m, i));
    BasicTensor<F> out(n, S.degree);
    for (size_t s = 0; s < S.degree; ++s) {
        size_t st = BasicTensor<F>::ipow(n, S.degree - 1 - s);
        for (size_t idx = 0; idx < S.c.size(); ++idx) {
            size_t i = (idx / st) % n;
            if (colnz[i].empty()) continue;
            size_t base = idx - i * st;
            for (const auto& [m, a] : colnz[i]) {
                const F& v = S.c[base + m * st];
                if (!is_zero(v)) out.c[idx] -= a * v;
            }
        }
    }
    return out;
}

// out(x1..xd) = S(P x1, .., P xd); P maps new coordinates (its columns) to old ones.
template <class F>
BasicTensor<F> pullback(const BasicTensor<F>& S, const Mat<F>& P) {
    size_t n = S.n;
    require(P.rows() == n, ErrorKind::ShapeMismatch, "pullback matrix has wrong row count");
    size_t k = P.cols();
    std::vector<size_t> dims(S.degree, n);
    std::vector<F> cur = S.c;
    for (size_t s = 0; s < S.degree; ++s) {
        std::vector<size_t> nd = dims;
        nd[s] = k;
        size_t total = 1, st = 1;
        for (auto d : nd) total *= d;
        for (size_t t = s + 1; t < S.degree; ++t) st *= dims[t];
        std::vector<F> next(total, F(0));
        for (size_t idx = 0; idx < total; ++idx) {
            size_t lo = idx % st;
            size_t i = (idx / st) % k;
            size_t hi = idx / (st * k);
            size_t base = hi * (st * n) + lo;
            F acc(0);
            for (size_t m = 0; m < n; ++m)
                if (!is_zero(P(m, i)) && !is_zero(cur[base + m * st])) acc += P(m, i) * cur[base + m * st];
            next[idx] = acc;
        }
        cur = std::move(next);
        dims = nd;
    }
    BasicTensor<F> out(k, S.degree);
    out.c = std::move(cur);
    return out;
}

// x -| S, contraction in the first slot.
template <class F>
BasicTensor<F> contract(const Vec<F>& x, const BasicTensor<F>& S) {
    require(S.degree >= 1 && x.size() == S.n, ErrorKind::ShapeMismatch, "contraction shape mismatch");
    BasicTensor<F> out(S.n, S.degree - 1);
    size_t st = out.c.size();
    for (size_t i = 0; i < S.n; ++i) {
        if (is_zero(x[i])) continue;
        for (size_t r = 0; r < st; ++r)
            if (!is_zero(S.c[i * st + r])) out.c[r] += x[i] * S.c[i * st + r];
    }
    return out;
}

// Skew endomorphism x -> g(a,x) b - g(b,x) a.
template <class F>
Mat<F> wedge_endo(const Vec<F>& a, const Vec<F>& b, const Mat<F>& G) {
    Vec<F> ga = G.apply(a), gb = G.apply(b);
    size_t n = a.size();
    Mat<F> E(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) E(r, c) = b[r] * ga[c] - a[r] * gb[c];
    return E;
}

// Basis e_i ^ e_j (i<j) of so(m, g).
template <class F>
std::vector<Mat<F>> so_basis(const Mat<F>& G) {
    size_t n = G.rows();
    std::vector<Mat<F>> out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) out.push_back(wedge_endo(unit_vec<F>(n, i), unit_vec<F>(n, j), G));
    return out;
}

template <class F>
BasicSubspace<F> so_space(const Mat<F>& G) {
    std::vector<Vec<F>> vs;
    for (const auto& E : so_basis(G)) vs.push_back(E.flatten());
    return BasicSubspace<F>::span(G.rows() * G.rows(), vs);
}

// {A in space : A.S = 0 for every S}; space holds flattened n x n matrices.
template <class F>
BasicSubspace<F> stabilizer_within(const BasicSubspace<F>& space, const std::vector<BasicTensor<F>>& tensors) {
    size_t d = space.dim();
    if (d == 0 || tensors.empty()) return space;
    size_t n = tensors[0].n;
    std::vector<Vec<F>> cols;
    size_t total = 0;
    for (size_t k = 0; k < d; ++k) {
        Mat<F> A = Mat<F>::unflatten(space.vector(k), n, n);
        Vec<F> col;
        for (const auto& t : tensors) {
            auto r = act(A, t);
            col.insert(col.end(), r.c.begin(), r.c.end());
        }
        total = col.size();
        cols.push_back(std::move(col));
    }
    RowReducer<F> rr(d);
    for (size_t r = 0; r < total && rr.rank() < d; ++r) {
        Vec<F> row(d, F(0));
        bool any = false;
        for (size_t k = 0; k < d; ++k) {
            row[k] = cols[k][r];
            if (!is_zero(row[k])) any = true;
        }
        if (any) rr.add(std::move(row));
    }
    auto [m, piv] = rr.echelon();
    BasicSubspace<F> coeffs = kernel(m);
    std::vector<Vec<F>> vs;
    for (size_t a = 0; a < coeffs.dim(); ++a) vs.push_back(space.from_coordinates(coeffs.vector(a)));
    return BasicSubspace<F>::span(space.ambient_dim(), vs);
}

// Stabilizer in so(m, g).
template <class F>
BasicSubspace<F> stabilizer(const std::vector<BasicTensor<F>>& tensors, const Mat<F>& G) {
    return stabilizer_within(so_space(G), tensors);
}

// Alternating tensor a_1 ^ .. ^ a_d of 1-forms (determinant convention).
Tensor wedge(const std::vector<Vector>& oneforms);
Tensor wedge(const Tensor& a, const Tensor& b);
// 2-form (a ^ b)(x, y) = g(a,x)g(b,y) - g(b,x)g(a,y).
Tensor vector_wedge(const Vector& a, const Vector& b, const Matrix& G);

// Skew endomorphism A with g(Ax, y) = alpha(x, y), and back.
Matrix endo_of_2form(const Tensor& alpha, const Matrix& G);
Tensor form_of_endo(const Matrix& A, const Matrix& G);
bool is_skew(const Matrix& A, const Matrix& G);

// Action of a 2-form on a q-form through its skew endomorphism; for q = 2 this is
// the bracket of so(m).
Tensor two_form_action(const Tensor& alpha, const Tensor& beta, const Matrix& G);

// B(X, Y) = -1/2 tr(XY) on endomorphisms.
Rational b_lambda2(const Matrix& X, const Matrix& Y);

}  // namespace natred

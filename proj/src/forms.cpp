#include "natred/forms.hpp"

#include <algorithm>
#include <numeric>

namespace natred {

namespace {

int perm_sign(const std::vector<size_t>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

std::vector<size_t> decode(size_t idx, size_t n, size_t d) {
    std::vector<size_t> out(d);
    for (size_t s = d; s-- > 0;) {
        out[s] = idx % n;
        idx /= n;
    }
    return out;
}

size_t encode(const std::vector<size_t>& ix, size_t n) {
    size_t idx = 0;
    for (auto i : ix) idx = idx * n + i;
    return idx;
}

}  // namespace

Rational max_abs(const Tensor& t) {
    Rational m(0);
    for (const auto& x : t.c)
        if (abs(x) > m) m = abs(x);
    return m;
}

bool is_alternating(const Tensor& t) {
    if (t.degree < 2) return true;
    for (size_t idx = 0; idx < t.c.size(); ++idx) {
        auto ix = decode(idx, t.n, t.degree);
        for (size_t s = 0; s + 1 < t.degree; ++s) {
            auto jx = ix;
            std::swap(jx[s], jx[s + 1]);
            if (t.c[idx] != -t.c[encode(jx, t.n)]) return false;
        }
    }
    return true;
}

Tensor wedge(const Tensor& a, const Tensor& b) {
    require(a.n == b.n, ErrorKind::ShapeMismatch, "wedge of forms on different spaces");
    size_t n = a.n, p = a.degree, q = b.degree, d = p + q;
    Tensor out(n, d);
    std::vector<size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<std::vector<size_t>, int>> perms;
    do {
        perms.emplace_back(perm, perm_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rational norm(1);
    for (size_t i = 2; i <= p; ++i) norm *= static_cast<long>(i);
    for (size_t i = 2; i <= q; ++i) norm *= static_cast<long>(i);
    for (size_t idx = 0; idx < out.c.size(); ++idx) {
        auto ix = decode(idx, n, d);
        Rational acc(0);
        for (const auto& [pm, sg] : perms) {
            size_t ia = 0, ib = 0;
            for (size_t t = 0; t < p; ++t) ia = ia * n + ix[pm[t]];
            for (size_t t = p; t < d; ++t) ib = ib * n + ix[pm[t]];
            const Rational& x = a.c[ia];
            const Rational& y = b.c[ib];
            if (is_zero(x) || is_zero(y)) continue;
            if (sg > 0) acc += x * y;
            else acc -= x * y;
        }
        out.c[idx] = acc / norm;
    }
    return out;
}

Tensor wedge(const std::vector<Vector>& oneforms) {
    require(!oneforms.empty(), ErrorKind::ShapeMismatch, "empty wedge");
    size_t n = oneforms[0].size();
    auto one = [n](const Vector& v) {
        Tensor t(n, 1);
        t.c = v;
        return t;
    };
    Tensor acc = one(oneforms[0]);
    for (size_t i = 1; i < oneforms.size(); ++i) acc = wedge(acc, one(oneforms[i]));
    return acc;
}

Tensor vector_wedge(const Vector& a, const Vector& b, const Matrix& G) {
    return wedge({G.apply(a), G.apply(b)});
}

Matrix endo_of_2form(const Tensor& alpha, const Matrix& G) {
    require(alpha.degree == 2, ErrorKind::ShapeMismatch, "expected a 2-form");
    Matrix a = Matrix::unflatten(alpha.c, alpha.n, alpha.n);
    return -(inverse(G) * a);
}

Tensor form_of_endo(const Matrix& A, const Matrix& G) {
    Tensor t(A.rows(), 2);
    t.c = (A.transpose() * G).flatten();
    return t;
}

bool is_skew(const Matrix& A, const Matrix& G) { return (A.transpose() * G + G * A).is_zero(); }

Tensor two_form_action(const Tensor& alpha, const Tensor& beta, const Matrix& G) {
    require(alpha.n == beta.n && G.rows() == alpha.n, ErrorKind::ShapeMismatch, "forms on different spaces");
    return act(endo_of_2form(alpha, G), beta);
}

Rational b_lambda2(const Matrix& X, const Matrix& Y) { return -trace_product(X, Y) / 2; }

}  // namespace natred

#include "natred/lie.hpp"

#include <string>

namespace natred {

namespace {

void check_shape(size_t n, const std::vector<Rational>& c) {
    require(c.size() == n * n * n, ErrorKind::ShapeMismatch,
            "structure constants must have dim^3 = " + std::to_string(n * n * n) + " entries, got " +
                std::to_string(c.size()));
}

}  // namespace

MetricLieAlgebra MetricLieAlgebra::unchecked(size_t n, std::vector<Rational> c, std::optional<Matrix> form) {
    check_shape(n, c);
    MetricLieAlgebra a;
    a.n_ = n;
    a.c_ = std::move(c);
    if (form) {
        require(form->rows() == n && form->cols() == n, ErrorKind::ShapeMismatch, "invariant form has wrong size");
        a.form_ = BilinearForm(*form);
    }
    a.build_caches();
    return a;
}

MetricLieAlgebra MetricLieAlgebra::create(size_t n, std::vector<Rational> c, std::optional<Matrix> form) {
    MetricLieAlgebra a = unchecked(n, std::move(c), std::move(form));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                require(a.c(i, j, k) == -a.c(j, i, k), ErrorKind::NotALieAlgebra,
                        "structure constants not antisymmetric at [" + std::to_string(i) + "," + std::to_string(j) +
                            "]");
    Rational res = jacobi_residual(a);
    require(is_zero(res), ErrorKind::NotALieAlgebra, "Jacobi identity fails (residual " + to_string(res) + ")");
    if (a.form_) {
        Rational inv = invariance_residual(a, a.form_->gram());
        require(is_zero(inv), ErrorKind::NotALieAlgebra, "form is not ad-invariant (residual " + to_string(inv) + ")");
    }
    return a;
}

void MetricLieAlgebra::build_caches() {
    sparse_.assign(n_ * n_, {});
    ad_.assign(n_, Matrix(n_, n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            for (size_t k = 0; k < n_; ++k) {
                const Rational& v = c(i, j, k);
                if (is_zero(v)) continue;
                sparse_[i * n_ + j].emplace_back(k, v);
                ad_[i](k, j) = v;
            }
}

MetricLieAlgebra MetricLieAlgebra::with_form(std::optional<Matrix> form) const {
    return create(n_, c_, std::move(form));
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
    Vector out = zero_vec<Rational>(n_);
    for (size_t i = 0; i < n_; ++i) {
        if (is_zero(x[i])) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (is_zero(y[j])) continue;
            const auto& sp = sparse_[i * n_ + j];
            if (sp.empty()) continue;
            Rational f = x[i] * y[j];
            for (const auto& [k, v] : sp) out[k] += f * v;
        }
    }
    return out;
}

Vector MetricLieAlgebra::bracket_basis(size_t i, size_t j) const {
    Vector out = zero_vec<Rational>(n_);
    for (const auto& [k, v] : sparse_[i * n_ + j]) out[k] = v;
    return out;
}

Matrix MetricLieAlgebra::ad(const Vector& x) const {
    Matrix m(n_, n_);
    for (size_t i = 0; i < n_; ++i)
        if (!is_zero(x[i])) m = m + ad_[i].scaled(x[i]);
    return m;
}

MetricLieAlgebra MetricLieAlgebra::rebased(const Matrix& P) const {
    require(P.rows() == n_ && P.cols() == n_, ErrorKind::ShapeMismatch, "change of basis must be square");
    Matrix Pt_inv = inverse(P.transpose());
    std::vector<Rational> c(n_ * n_ * n_);
    for (size_t a = 0; a < n_; ++a)
        for (size_t b = a + 1; b < n_; ++b) {
            Vector y = Pt_inv.apply(bracket(P.row(a), P.row(b)));
            for (size_t k = 0; k < n_; ++k) {
                c[(a * n_ + b) * n_ + k] = y[k];
                c[(b * n_ + a) * n_ + k] = -y[k];
            }
        }
    std::optional<Matrix> form;
    if (form_) form = P * form_->gram() * P.transpose();
    return unchecked(n_, std::move(c), std::move(form));
}

MetricLieAlgebra MetricLieAlgebra::restricted(const Subspace& S) const {
    size_t d = S.dim();
    std::vector<Rational> c(d * d * d);
    for (size_t a = 0; a < d; ++a)
        for (size_t b = a + 1; b < d; ++b) {
            Vector v = bracket(S.vector(a), S.vector(b));
            require(S.contains(v), ErrorKind::Internal, "subspace is not closed under the bracket");
            Vector y = S.coordinates(v);
            for (size_t k = 0; k < d; ++k) {
                c[(a * d + b) * d + k] = y[k];
                c[(b * d + a) * d + k] = -y[k];
            }
        }
    std::optional<Matrix> form;
    if (form_) form = restrict_form(form_->gram(), S);
    return unchecked(d, std::move(c), std::move(form));
}

Rational jacobi_residual(const MetricLieAlgebra& alg) {
    size_t n = alg.dim();
    Rational worst(0);
    Vector acc(n);
    auto add_double = [&](size_t i, size_t j, size_t k) {
        // [[e_i, e_j], e_k]
        for (const auto& [l, v] : alg.sparse_bracket(i, j))
            for (const auto& [m, w] : alg.sparse_bracket(l, k)) acc[m] += v * w;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                for (auto& x : acc) x = 0;
                add_double(i, j, k);
                add_double(j, k, i);
                add_double(k, i, j);
                for (const auto& x : acc)
                    if (abs(x) > worst) worst = abs(x);
            }
    return worst;
}

Rational jacobi_residual(size_t n, const std::vector<Rational>& c) {
    return jacobi_residual(MetricLieAlgebra::unchecked(n, c));
}

Rational invariance_residual(const MetricLieAlgebra& alg, const Matrix& form) {
    size_t n = alg.dim();
    Rational worst(0);
    for (size_t x = 0; x < n; ++x) {
        // form(ad_x y, z) + form(y, ad_x z) = (ad_x^T G + G ad_x)(y, z)
        Matrix A = alg.ad_basis(x);
        Matrix S = A.transpose() * form + form * A;
        for (const auto& v : S.data())
            if (abs(v) > worst) worst = abs(v);
    }
    return worst;
}

BilinearForm killing_form(const MetricLieAlgebra& alg) {
    size_t n = alg.dim();
    Matrix K(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rational t = trace_product(alg.ad_basis(i), alg.ad_basis(j));
            K(i, j) = t;
            K(j, i) = t;
        }
    return BilinearForm(K);
}

Subspace bracket_span(const MetricLieAlgebra& alg, const Subspace& A, const Subspace& B) {
    std::vector<Vector> vs;
    for (size_t a = 0; a < A.dim(); ++a)
        for (size_t b = 0; b < B.dim(); ++b) vs.push_back(alg.bracket(A.vector(a), B.vector(b)));
    return Subspace::span(alg.dim(), vs);
}

Subspace radical(const MetricLieAlgebra& alg) {
    Subspace full = Subspace::full(alg.dim());
    Subspace derived = bracket_span(alg, full, full);
    return annihilator_wrt(derived, killing_form(alg).gram());
}

Subspace centralizer(const MetricLieAlgebra& alg, const Subspace& S) {
    std::vector<Vector> rows;
    for (size_t a = 0; a < S.dim(); ++a) {
        Matrix A = alg.ad(S.vector(a));
        for (size_t i = 0; i < A.rows(); ++i) rows.push_back(A.row(i));
    }
    return Subspace::kernel_of_rows(rows, alg.dim());
}

Subspace center(const MetricLieAlgebra& alg) { return centralizer(alg, Subspace::full(alg.dim())); }

Subspace ideal_generated(const MetricLieAlgebra& alg, const Subspace& S) {
    return operator_closure(S, alg.ad_basis());
}

bool is_ideal(const MetricLieAlgebra& alg, const Subspace& S) {
    for (size_t a = 0; a < S.dim(); ++a)
        for (size_t i = 0; i < alg.dim(); ++i)
            if (!S.contains(alg.ad_basis(i).apply(S.vector(a)))) return false;
    return true;
}

bool is_subalgebra(const MetricLieAlgebra& alg, const Subspace& S) {
    for (size_t a = 0; a < S.dim(); ++a)
        for (size_t b = a + 1; b < S.dim(); ++b)
            if (!S.contains(alg.bracket(S.vector(a), S.vector(b)))) return false;
    return true;
}

bool is_abelian(const MetricLieAlgebra& alg, const Subspace& S) {
    for (size_t a = 0; a < S.dim(); ++a)
        for (size_t b = a + 1; b < S.dim(); ++b)
            if (!is_zero_vec(alg.bracket(S.vector(a), S.vector(b)))) return false;
    return true;
}

Subspace largest_ideal_within(const MetricLieAlgebra& alg, const Subspace& S) {
    size_t n = alg.dim();
    Subspace J = S;
    while (J.dim() > 0) {
        auto ann = J.annihilator().vectors();
        size_t d = J.dim();
        // x = sum a_k b_k with ad_i x in J for all i.
        std::vector<Vector> rows;
        for (size_t i = 0; i < n; ++i) {
            std::vector<Vector> images;
            for (size_t k = 0; k < d; ++k) images.push_back(alg.ad_basis(i).apply(J.vector(k)));
            for (const auto& w : ann) {
                Vector r(d);
                for (size_t k = 0; k < d; ++k) r[k] = dot(w, images[k]);
                rows.push_back(std::move(r));
            }
        }
        Subspace coeffs = Subspace::kernel_of_rows(rows, d);
        std::vector<Vector> vs;
        for (size_t a = 0; a < coeffs.dim(); ++a) vs.push_back(J.from_coordinates(coeffs.vector(a)));
        Subspace next = Subspace::span(n, vs);
        if (next.dim() == J.dim()) break;
        J = next;
    }
    return J;
}

std::vector<Subspace> derived_series(const MetricLieAlgebra& alg, const Subspace& S) {
    require(is_ideal(alg, S), ErrorKind::NotAnIdeal, "derived series requested for a non-ideal");
    std::vector<Subspace> out{S};
    while (true) {
        Subspace next = bracket_span(alg, out.back(), out.back());
        if (next == out.back()) break;
        out.push_back(next);
    }
    return out;
}

Subspace derivations(const MetricLieAlgebra& alg) {
    size_t n = alg.dim();
    std::vector<Vector> rows;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j], component k; unknown D(r,s) at r*n+s.
                Vector r = zero_vec<Rational>(n * n);
                for (size_t l = 0; l < n; ++l)
                    if (!is_zero(alg.c(i, j, l))) r[k * n + l] += alg.c(i, j, l);
                for (size_t m = 0; m < n; ++m) {
                    if (!is_zero(alg.c(m, j, k))) r[m * n + i] -= alg.c(m, j, k);
                    if (!is_zero(alg.c(i, m, k))) r[m * n + j] -= alg.c(i, m, k);
                }
                if (!is_zero_vec(r)) rows.push_back(std::move(r));
            }
    return Subspace::kernel_of_rows(rows, n * n);
}

std::vector<Matrix> matrices_of(const Subspace& S, size_t n) {
    std::vector<Matrix> out;
    for (size_t a = 0; a < S.dim(); ++a) out.push_back(Matrix::unflatten(S.vector(a), n, n));
    return out;
}

Subspace matrix_span(const std::vector<Matrix>& mats, size_t n) {
    std::vector<Vector> vs;
    for (const auto& m : mats) vs.push_back(m.flatten());
    return Subspace::span(n * n, vs);
}

Subspace lie_closure(const std::vector<Matrix>& gens, size_t n) {
    RowReducer<Rational> rr(n * n);
    std::vector<Matrix> basis;
    std::vector<Matrix> frontier;
    for (const auto& g : gens)
        if (rr.add(g.flatten())) {
            basis.push_back(g);
            frontier.push_back(g);
        }
    while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (const auto& f : frontier) {
            size_t count = basis.size();
            for (size_t b = 0; b < count; ++b) {
                Matrix c = commutator(f, basis[b]);
                if (rr.add(c.flatten())) {
                    basis.push_back(c);
                    next.push_back(c);
                }
            }
        }
        frontier = std::move(next);
    }
    return Subspace::from_reducer(rr);
}

MetricLieAlgebra matrix_lie_algebra(const Subspace& space, size_t n) {
    auto mats = matrices_of(space, n);
    size_t d = mats.size();
    std::vector<Rational> c(d * d * d);
    for (size_t a = 0; a < d; ++a)
        for (size_t b = a + 1; b < d; ++b) {
            Vector v = commutator(mats[a], mats[b]).flatten();
            require(space.contains(v), ErrorKind::Internal, "matrix space not closed under commutators");
            Vector y = space.coordinates(v);
            for (size_t k = 0; k < d; ++k) {
                c[(a * d + b) * d + k] = y[k];
                c[(b * d + a) * d + k] = -y[k];
            }
        }
    return MetricLieAlgebra::unchecked(d, std::move(c));
}

}  // namespace natred

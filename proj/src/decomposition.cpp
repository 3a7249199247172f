#include "natred/decomposition.hpp"

#include "natred/reducibility.hpp"

#include <functional>

namespace natred {

namespace {

std::string idx_name(const char* s, size_t i) { return std::string(s) + "_" + std::to_string(i); }

// Coordinates of v in the basis given by the columns of B; nullopt if v is outside their span.
std::optional<Vector> coords_in(const Matrix& B, const Vector& v) {
    auto x = solve(B, v);
    if (!x) return std::nullopt;
    if (B.apply(*x) != v) return std::nullopt;
    return x;
}

// Subspace of `space` (flattened d x d matrices) on which fn vanishes.
Subspace kernel_within(const Subspace& space, size_t d, const std::function<Vector(const Matrix&)>& fn) {
    size_t k = space.dim();
    if (k == 0) return space;
    std::vector<Vector> cols;
    for (size_t a = 0; a < k; ++a) cols.push_back(fn(Matrix::unflatten(space.vector(a), d, d)));
    size_t len = cols.empty() ? 0 : cols[0].size();
    std::vector<Vector> rows;
    for (size_t r = 0; r < len; ++r) {
        Vector row(k);
        bool any = false;
        for (size_t a = 0; a < k; ++a) {
            row[a] = cols[a][r];
            if (!is_zero(row[a])) any = true;
        }
        if (any) rows.push_back(std::move(row));
    }
    Subspace coeffs = Subspace::kernel_of_rows(rows, k);
    std::vector<Vector> vs;
    for (const auto& c : coeffs.vectors()) vs.push_back(space.from_coordinates(c));
    return Subspace::span(space.ambient_dim(), vs);
}

Subspace embed_m_space(const ReductiveDecomposition& dec, const Subspace& S) {
    std::vector<Vector> vs;
    for (const auto& v : S.vectors()) vs.push_back(dec.embed_m(v));
    return Subspace::span(dec.dim(), vs);
}

Subspace m_coords_space(const ReductiveDecomposition& dec, const Subspace& S) {
    std::vector<Vector> vs;
    for (const auto& v : S.vectors()) vs.push_back(dec.m_coords(v));
    return Subspace::span(dec.q(), vs);
}

void violation(bool ok, const std::string& what) { require(ok, ErrorKind::DecompositionViolation, what); }

}  // namespace

// ---------------------------------------------------------------- ReductiveDecomposition

ReductiveDecomposition ReductiveDecomposition::create(const MetricLieAlgebra& alg, const Matrix& h_rows,
                                                      const Matrix& m_rows, const Matrix& metric) {
    size_t n = alg.dim();
    size_t p = h_rows.rows(), q = m_rows.rows();
    require((p == 0 || h_rows.cols() == n) && (q == 0 || m_rows.cols() == n) && p + q == n, ErrorKind::ShapeMismatch,
            "h and m bases must together have dim g rows of length dim g");
    require(metric.rows() == q && metric.cols() == q, ErrorKind::ShapeMismatch, "metric must be dim m x dim m");
    Matrix P(n, n);
    for (size_t i = 0; i < p; ++i) P.set_row(i, h_rows.row(i));
    for (size_t i = 0; i < q; ++i) P.set_row(p + i, m_rows.row(i));
    require(n == 0 || !is_zero(determinant(P)), ErrorKind::DecompositionViolation, "h + m is not a direct sum equal to g");
    ReductiveDecomposition d;
    d.orig_ = alg;
    d.alg_ = alg.rebased(P);
    d.p_ = p;
    d.h_rows_ = h_rows.rows() == p && h_rows.cols() == n ? h_rows : Matrix(p, n);
    d.m_rows_ = m_rows.rows() == q && m_rows.cols() == n ? m_rows : Matrix(q, n);
    for (size_t i = 0; i < p; ++i)
        for (size_t j = i + 1; j < p; ++j)
            for (size_t k = p; k < n; ++k)
                require(is_zero(d.alg_.c(i, j, k)), ErrorKind::DecompositionViolation,
                        "h is not a subalgebra: [" + idx_name("h", i) + ", " + idx_name("h", j) + "] has an m-component");
    for (size_t i = 0; i < p; ++i)
        for (size_t j = p; j < n; ++j)
            for (size_t k = 0; k < p; ++k)
                require(is_zero(d.alg_.c(i, j, k)), ErrorKind::DecompositionViolation,
                        "[h, m] not in m: [" + idx_name("h", i) + ", " + idx_name("m", j - p) + "] has an h-component");
    d.g_ = BilinearForm(metric);
    require(d.g_.is_positive_definite(), ErrorKind::DegenerateForm, "metric on m is not positive definite");
    return d;
}

ReductiveDecomposition ReductiveDecomposition::adapted(const MetricLieAlgebra& alg, size_t p, const Matrix& metric) {
    size_t n = alg.dim();
    require(p <= n, ErrorKind::ShapeMismatch, "isotropy dimension exceeds algebra dimension");
    Matrix I = Matrix::identity(n);
    return create(alg, I.block(0, 0, p, n), I.block(p, 0, n - p, n), metric);
}

Vector ReductiveDecomposition::embed_h(const Vector& hc) const {
    Vector v(dim());
    for (size_t i = 0; i < p_; ++i) v[i] = hc[i];
    return v;
}

Vector ReductiveDecomposition::embed_m(const Vector& mc) const {
    Vector v(dim());
    for (size_t i = 0; i < q(); ++i) v[p_ + i] = mc[i];
    return v;
}

Matrix ReductiveDecomposition::isotropy(size_t a) const { return alg_.ad_basis(a).block(p_, p_, q(), q()); }

Matrix ReductiveDecomposition::isotropy(const Vector& hc) const {
    Matrix out(q(), q());
    for (size_t a = 0; a < p_; ++a)
        if (!is_zero(hc[a])) out = out + isotropy(a).scaled(hc[a]);
    return out;
}

std::vector<Matrix> ReductiveDecomposition::isotropy_all() const {
    std::vector<Matrix> out;
    for (size_t a = 0; a < p_; ++a) out.push_back(isotropy(a));
    return out;
}

// ---------------------------------------------------------------- checks

DecompositionReport check_naturally_reductive(const ReductiveDecomposition& dec) {
    DecompositionReport r;
    const auto& alg = dec.algebra();
    size_t p = dec.p(), n = dec.dim(), q = dec.q();
    r.subalgebra = true;
    for (size_t i = 0; i < p && r.subalgebra; ++i)
        for (size_t j = i + 1; j < p && r.subalgebra; ++j)
            for (size_t k = p; k < n; ++k)
                if (!is_zero(alg.c(i, j, k))) r.subalgebra = false;
    r.reductive = true;
    for (size_t i = 0; i < p && r.reductive; ++i)
        for (size_t j = p; j < n && r.reductive; ++j)
            for (size_t k = 0; k < p; ++k)
                if (!is_zero(alg.c(i, j, k))) r.reductive = false;
    r.metric_positive = dec.metric().is_positive_definite();
    const Matrix& G = dec.G();
    Rational res = 0;
    for (size_t x = 0; x < q; ++x) {
        // A = ([e_x, .]_m)|_m; need A^T G + G A = 0
        Matrix A = alg.ad_basis(p + x).block(p, p, q, q);
        Matrix S = A.transpose() * G + G * A;
        for (const auto& v : S.data()) res = std::max(res, abs_value(v));
    }
    r.nr_residual = res;
    r.naturally_reductive = is_zero(res);
    r.effective = is_effective(dec);
    std::vector<Matrix> all = dec.isotropy_all(), mm;
    for (size_t i = 0; i < q; ++i)
        for (size_t j = i + 1; j < q; ++j) mm.push_back(dec.isotropy(dec.h_coords(alg.bracket_basis(p + i, p + j))));
    r.transvection = matrix_span(mm, q) == matrix_span(all, q);
    return r;
}

void require_naturally_reductive(const ReductiveDecomposition& dec) {
    auto r = check_naturally_reductive(dec);
    require(r.ok(), ErrorKind::NotNaturallyReductive,
            !r.subalgebra       ? "h is not a subalgebra"
            : !r.reductive      ? "[h, m] is not contained in m"
            : !r.metric_positive ? "metric is not positive definite"
                                : "g([x,y]_m, z) is not skew in (y, z); residual " + to_string(r.nr_residual));
}

bool is_effective(const ReductiveDecomposition& dec) {
    return matrix_span(dec.isotropy_all(), dec.q()).dim() == dec.p();
}

bool is_transvection(const ReductiveDecomposition& dec) {
    auto r = check_naturally_reductive(dec);
    return r.effective && r.transvection;
}

// ---------------------------------------------------------------- Kostant form

KostantForm kostant_form(const ReductiveDecomposition& dec) {
    require_naturally_reductive(dec);
    require(is_effective(dec), ErrorKind::NotEffective, "isotropy representation is not faithful");
    const auto& alg = dec.algebra();
    size_t p = dec.p(), q = dec.q(), n = dec.dim();
    const Matrix& G = dec.G();
    std::vector<std::vector<Vector>> brh(q, std::vector<Vector>(q));
    std::vector<Vector> hs;
    for (size_t i = 0; i < q; ++i)
        for (size_t j = i + 1; j < q; ++j) {
            brh[i][j] = dec.h_coords(alg.bracket_basis(p + i, p + j));
            hs.push_back(brh[i][j]);
        }
    Subspace Sh = Subspace::span(p, hs);
    size_t r = Sh.dim();
    std::vector<Matrix> H;
    for (size_t b = 0; b < r; ++b) H.push_back(G * dec.isotropy(Sh.vector(b)));
    // unknown X(a,b) at a*r + b
    std::vector<Vector> rows;
    Vector rhs;
    for (size_t a = 0; a < r; ++a)
        for (size_t b = a + 1; b < r; ++b) {
            Vector row(r * r);
            row[a * r + b] = 1;
            row[b * r + a] = -1;
            rows.push_back(std::move(row));
            rhs.push_back(0);
        }
    for (size_t i = 0; i < q; ++i)
        for (size_t j = i + 1; j < q; ++j) {
            Vector c = Sh.coordinates(brh[i][j]);
            for (size_t b = 0; b < r; ++b) {
                // gbar([e_i,e_j]_h, h_b) = g(h_b e_i, e_j)
                Vector row(r * r);
                for (size_t a = 0; a < r; ++a) row[a * r + b] = c[a];
                rows.push_back(std::move(row));
                rhs.push_back(H[b](j, i));
            }
        }
    KostantForm kf;
    kf.hdim = r;
    Matrix X(r, r);
    if (r > 0) {
        AffineSolution sol = solve_linear_subject_to(r * r, {LinearConstraint{Matrix::from_rows(rows, r * r), rhs}});
        X = Matrix::unflatten(sol.point, r, r);
        kf.solution_dim = sol.directions.dim();
    }
    std::vector<Vector> kb;
    for (size_t b = 0; b < r; ++b) kb.push_back(dec.embed_h(Sh.vector(b)));
    for (size_t i = 0; i < q; ++i) kb.push_back(unit_vec<Rational>(n, p + i));
    kf.basis = kb;
    kf.k = Subspace::span(n, kb);
    size_t d = r + q;
    kf.gram = Matrix(d, d);
    kf.gram.set_block(0, 0, X);
    kf.gram.set_block(r, r, G);
    auto coords = [&](const Vector& v) -> Vector {
        Vector hc = dec.h_coords(v);
        require(Sh.contains(hc), ErrorKind::NotNaturallyReductive, "[m,m]_h + m is not an ideal");
        Vector c = Sh.coordinates(hc);
        Vector mc = dec.m_coords(v);
        c.insert(c.end(), mc.begin(), mc.end());
        return c;
    };
    Rational res = 0;
    for (size_t x = 0; x < d; ++x)
        for (size_t y = 0; y < d; ++y) {
            Vector cxy = coords(alg.bracket(kb[x], kb[y]));
            for (size_t z = y; z < d; ++z) {
                Vector cxz = coords(alg.bracket(kb[x], kb[z]));
                Rational v = form_eval(kf.gram, cxy, unit_vec<Rational>(d, z)) +
                             form_eval(kf.gram, unit_vec<Rational>(d, y), cxz);
                res = std::max(res, abs_value(v));
            }
        }
    kf.invariance_residual = res;
    return kf;
}

// ---------------------------------------------------------------- s(g), flat directions

Subspace s_of_g(const ReductiveDecomposition& dec) {
    require(is_transvection(dec), ErrorKind::NotTransvection, "s(g) needs a transvection decomposition");
    size_t q = dec.q();
    if (q == 0) return Subspace(0);
    auto iso = dec.isotropy_all();
    Subspace so = so_space(dec.G());
    Subspace comm = kernel_within(so, q, [&](const Matrix& A) {
        Vector out;
        for (const auto& H : iso) {
            Matrix c = commutator(A, H);
            out.insert(out.end(), c.data().begin(), c.data().end());
        }
        if (out.empty()) out.push_back(0);
        return out;
    });
    Tensor T0 = model_from_decomposition(dec).T();
    return stabilizer_within(comm, std::vector<Tensor>{T0});
}

Subspace flat_directions(const ReductiveDecomposition& dec) {
    const auto& alg = dec.algebra();
    size_t p = dec.p(), q = dec.q(), n = dec.dim();
    std::vector<Vector> rows;
    for (size_t j = 0; j < q; ++j)
        for (size_t k = 0; k < n; ++k) {
            Vector r(q);
            bool any = false;
            for (size_t i = 0; i < q; ++i) {
                r[i] = alg.c(p + i, p + j, k);
                if (!is_zero(r[i])) any = true;
            }
            if (any) rows.push_back(std::move(r));
        }
    return embed_m_space(dec, Subspace::kernel_of_rows(rows, q));
}

// ---------------------------------------------------------------- maximal abelian ideal

namespace {

struct Fix {
    Subspace A, J;
};

Fix fixpoint(const MetricLieAlgebra& alg, Subspace A) {
    for (;;) {
        Subspace J = largest_ideal_within(alg, centralizer(alg, A));
        Subspace Z = J.intersect(centralizer(alg, J));
        require(Z.contains(A), ErrorKind::Internal, "abelian ideal iteration is not monotone");
        if (Z == A) return {A, J};
        A = Z;
    }
}

// {v in K : f(X v) = 0 for all f vanishing on K}, iterated to a fixed point.
Subspace largest_submodule(Subspace K, const std::vector<Matrix>& ops) {
    size_t d = K.ambient_dim();
    for (;;) {
        std::vector<Vector> rows;
        Subspace ann = K.annihilator();
        for (const auto& f : ann.vectors()) {
            rows.push_back(f);
            for (const auto& X : ops) rows.push_back(X.transpose().apply(f));
        }
        Subspace K2 = Subspace::kernel_of_rows(rows, d);
        if (K2 == K) return K;
        K = K2;
    }
}

enum class Cert { Certified, Enlarge, Unknown };

constexpr size_t kCertifyMaxDim = 8;

// Searches J/A for a nonzero ad-submodule that is abelian. Necessary conditions: every
// u in such a submodule U satisfies [u, X u] = 0 for X in the action algebra, so u lies
// in the radical of every semidefinite form u -> lambda([u, X u]).
Cert certify(const MetricLieAlgebra& alg, const Subspace& A, const Subspace& J, Subspace& found) {
    size_t n = alg.dim();
    if (J.dim() == A.dim()) return Cert::Certified;
    size_t d = J.dim() - A.dim();
    if (d > kCertifyMaxDim) return Cert::Unknown;
    RowReducer<Rational> rr(n);
    std::vector<Vector> basis, comp;
    for (const auto& v : A.vectors()) {
        rr.add(v);
        basis.push_back(v);
    }
    for (const auto& v : J.vectors())
        if (rr.add(v)) {
            comp.push_back(v);
            basis.push_back(v);
        }
    Matrix Bj = Matrix::from_cols(basis, n);
    size_t a0 = A.dim();
    auto tail = [&](const Vector& v) {
        auto c = coords_in(Bj, v);
        require(c.has_value(), ErrorKind::Internal, "J is not an ideal");
        return Vector(c->begin() + a0, c->end());
    };
    std::vector<Matrix> ops;
    for (size_t i = 0; i < n; ++i) {
        Matrix X(d, d);
        for (size_t t = 0; t < d; ++t) X.set_col(t, tail(alg.ad_basis(i).apply(comp[t])));
        if (!X.is_zero()) ops.push_back(std::move(X));
    }
    std::vector<Matrix> words = ops;
    for (const auto& X : ops)
        for (const auto& Y : ops) words.push_back(X * Y);
    std::vector<std::vector<Vector>> br(d, std::vector<Vector>(d));
    for (size_t s = 0; s < d; ++s)
        for (size_t t = 0; t < d; ++t) br[s][t] = alg.bracket(comp[s], comp[t]);
    auto bracket_V = [&](const Vector& u, const Vector& v) {
        Vector out(n);
        for (size_t s = 0; s < d; ++s)
            if (!is_zero(u[s]))
                for (size_t t = 0; t < d; ++t)
                    if (!is_zero(v[t])) axpy(out, Rational(u[s] * v[t]), br[s][t]);
        return out;
    };
    Subspace K = Subspace::full(d);
    for (;;) {
        K = largest_submodule(K, ops);
        if (K.is_zero()) return Cert::Certified;
        auto kv = K.vectors();
        size_t e = kv.size();
        bool iso = true;
        for (size_t a = 0; a < e && iso; ++a)
            for (size_t b = a + 1; b < e && iso; ++b)
                if (!is_zero_vec(bracket_V(kv[a], kv[b]))) iso = false;
        if (iso) {
            std::vector<Vector> lifted = A.vectors();
            for (const auto& v : kv) {
                Vector x(n);
                for (size_t s = 0; s < d; ++s) axpy(x, v[s], comp[s]);
                lifted.push_back(std::move(x));
            }
            found = Subspace::span(n, lifted);
            return Cert::Enlarge;
        }
        bool shrunk = false;
        for (const auto& W : words) {
            std::vector<Vector> wk;
            for (const auto& v : kv) wk.push_back(W.apply(v));
            std::vector<std::vector<Vector>> val(e, std::vector<Vector>(e));
            for (size_t a = 0; a < e; ++a)
                for (size_t b = 0; b < e; ++b) val[a][b] = bracket_V(kv[a], wk[b]);
            for (size_t k = 0; k < n && !shrunk; ++k) {
                Matrix Q(e, e);
                for (size_t a = 0; a < e; ++a)
                    for (size_t b = 0; b < e; ++b) Q(a, b) = val[a][b][k] + val[b][a][k];
                if (Q.is_zero()) continue;
                auto in = BilinearForm(Q).inertia();
                if (in.positive > 0 && in.negative > 0) continue;
                Subspace rad = kernel(Q);
                std::vector<Vector> vs;
                for (const auto& c : rad.vectors()) vs.push_back(K.from_coordinates(c));
                K = Subspace::span(d, vs);
                shrunk = true;
            }
            if (shrunk) break;
        }
        if (!shrunk) return Cert::Unknown;
    }
}

}  // namespace

AbelianIdeal maximal_abelian_ideal(const ReductiveDecomposition& dec) {
    require(is_effective(dec), ErrorKind::NotEffective, "isotropy representation is not faithful");
    const auto& alg = dec.algebra();
    Subspace seeds = center(alg) + flat_directions(dec);
    Subspace rad = radical(alg);
    if (!rad.is_zero()) {
        auto ds = derived_series(alg, rad);
        for (auto it = ds.rbegin(); it != ds.rend(); ++it)
            if (!it->is_zero()) {
                seeds = seeds + *it;
                break;
            }
    }
    Subspace A = ideal_generated(alg, seeds);
    require(is_abelian(alg, A), ErrorKind::AbelianSumViolation,
            "sum of seed abelian ideals is not abelian; input is not effective naturally reductive");
    AbelianIdeal out;
    for (;;) {
        Fix f = fixpoint(alg, A);
        A = f.A;
        Subspace found;
        Cert c = certify(alg, A, f.J, found);
        if (c == Cert::Enlarge) {
            require(is_ideal(alg, found) && is_abelian(alg, found), ErrorKind::AbelianSumViolation,
                    "enlarged ideal is not abelian");
            A = found;
            ++out.enlargements;
            continue;
        }
        out.certified = c == Cert::Certified;
        break;
    }
    out.a = A;
    return out;
}

// ---------------------------------------------------------------- fiber decomposition

Vector FiberDecomposition::rho(const Vector& h) const {
    size_t n = h.size();
    Vector out(n);
    if (h_plus_basis.empty()) return out;
    auto c = coords_in(Matrix::from_cols(h_plus_basis, n), h);
    require(c.has_value(), ErrorKind::DecompositionViolation, "rho evaluated outside h+");
    for (size_t i = 0; i < c->size(); ++i) axpy(out, (*c)[i], rho_images[i]);
    return out;
}

FiberDecomposition fiber_decomposition(const ReductiveDecomposition& dec, const Subspace& a) {
    const auto& alg = dec.algebra();
    size_t p = dec.p(), n = dec.dim();
    const Matrix& G = dec.G();
    require(a.ambient_dim() == n, ErrorKind::ShapeMismatch, "ideal has the wrong ambient dimension");
    require(is_ideal(alg, a) && is_abelian(alg, a), ErrorKind::NotAbelianIdeal, "subspace is not an abelian ideal");
    require(is_effective(dec), ErrorKind::NotEffective, "isotropy representation is not faithful");
    Subspace h = dec.h(), m = dec.m();
    FiberDecomposition f;
    f.m_a = a.intersect(m);
    Subspace ma_c = m_coords_space(dec, f.m_a);
    Subspace m0_c = orth_complement(ma_c, G);
    Subspace m0 = embed_m_space(dec, m0_c);
    f.a_prime = a.intersect(h + m0);
    std::vector<Vector> hp, mp;
    for (const auto& v : f.a_prime.vectors()) {
        f.h_plus_basis.push_back(dec.h_part(v));
        f.rho_images.push_back(dec.m_part(v));
        hp.push_back(dec.h_part(v));
        mp.push_back(dec.m_part(v));
    }
    f.h_plus = Subspace::span(n, hp);
    f.m_plus = Subspace::span(n, mp);
    violation(f.h_plus.dim() == f.a_prime.dim() && f.m_plus.dim() == f.a_prime.dim(),
              "a' meets h or m0 nontrivially");
    Subspace mp_c = m_coords_space(dec, f.m_plus);
    f.m_minus = embed_m_space(dec, orth_complement(mp_c, G).intersect(m0_c));
    // h-: B_{Lambda^2}-orthocomplement of ad(h+) in ad(h)
    std::vector<Vector> rows;
    auto iso = dec.isotropy_all();
    for (const auto& x : f.h_plus.vectors()) {
        Matrix X = dec.isotropy(dec.h_coords(x));
        Vector r(p);
        for (size_t b = 0; b < p; ++b) r[b] = b_lambda2(iso[b], X);
        rows.push_back(std::move(r));
    }
    std::vector<Vector> hm;
    for (const auto& v : Subspace::kernel_of_rows(rows, p).vectors()) hm.push_back(dec.embed_h(v));
    f.h_minus = Subspace::span(n, hm);

    violation((f.h_plus + f.h_minus).dim() == p && f.h_plus.intersect(f.h_minus).is_zero(), "h+ and h- do not span h");
    violation((f.m_plus + f.m_minus + f.m_a).dim() == dec.q(), "m+, m-, m_a do not span m");
    auto vp = f.m_plus.vectors();
    for (size_t i = 0; i < vp.size(); ++i)
        for (size_t j = i + 1; j < vp.size(); ++j)
            violation(f.m_plus.contains(dec.m_part(alg.bracket(vp[i], vp[j]))), "[m+, m+]_m is not in m+");
    for (const auto& x : f.h_minus.vectors()) {
        for (const auto& y : f.m_plus.vectors()) violation(is_zero_vec(alg.bracket(x, y)), "[h-, m+] is nonzero");
        for (const auto& y : f.h_plus.vectors()) violation(is_zero_vec(alg.bracket(x, y)), "[h-, h+] is nonzero");
    }
    Subspace mm_ma = f.m_minus + f.m_a;
    for (const auto& x : a.vectors())
        for (const auto& y : mm_ma.vectors()) violation(is_zero_vec(alg.bracket(x, y)), "[a, m- + m_a] is nonzero");
    size_t l = f.h_plus_basis.size();
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
            const Vector &hi = f.h_plus_basis[i], &hj = f.h_plus_basis[j];
            Vector hh = alg.bracket(hi, hj);
            violation(f.h_plus.contains(hh), "h+ is not an ideal of h");
            violation(f.rho(hh) == alg.bracket(hi, f.rho_images[j]), "rho is not h+-equivariant");
            Vector mm = alg.bracket(f.rho_images[i], f.rho_images[j]);
            violation(hh == scale(dec.h_part(mm), Rational(-1)), "[h,h'] != -[m,m']_h for graph pairs");
            violation(dec.m_part(mm) == scale(f.rho(hh), Rational(-2)), "[m,m']_m != -2 rho([h,h'])");
        }
    return f;
}

// ---------------------------------------------------------------- base space

BaseSpace base_space(const ReductiveDecomposition& dec, const Subspace& a, const FiberDecomposition& fib) {
    const auto& alg = dec.algebra();
    size_t p = dec.p(), n = dec.dim();
    std::vector<Vector> av = a.vectors(), mv = fib.m_minus.vectors();
    std::vector<Vector> comb;
    for (size_t i = 0; i < p; ++i) comb.push_back(unit_vec<Rational>(n, i));
    comb.insert(comb.end(), av.begin(), av.end());
    comb.insert(comb.end(), mv.begin(), mv.end());
    violation(comb.size() == n, "h + a + m- does not match dim g");
    Matrix C = Matrix::from_cols(comb, n);
    violation(n == 0 || !is_zero(determinant(C)), "h + a + m- is not a direct sum");
    Matrix Cinv = inverse(C);
    std::vector<Vector> h0v;
    for (size_t i = 0; i < mv.size(); ++i)
        for (size_t j = i + 1; j < mv.size(); ++j) {
            Vector c = Cinv.apply(alg.bracket(mv[i], mv[j]));
            Vector hv(n);
            for (size_t k = 0; k < p; ++k) hv[k] = c[k];
            h0v.push_back(std::move(hv));
        }
    BaseSpace out;
    out.h0 = Subspace::span(n, h0v);
    out.h0_basis = out.h0.vectors();
    out.m_minus_basis = mv;
    std::vector<Vector> sb = av;
    sb.insert(sb.end(), out.h0_basis.begin(), out.h0_basis.end());
    sb.insert(sb.end(), mv.begin(), mv.end());
    Matrix S = Matrix::from_cols(sb, n);
    std::vector<Vector> qb = out.h0_basis;
    qb.insert(qb.end(), mv.begin(), mv.end());
    size_t d = qb.size(), na = av.size();
    std::vector<Rational> c(d * d * d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            auto x = coords_in(S, alg.bracket(qb[i], qb[j]));
            violation(x.has_value(), "a + h0 + m- is not a subalgebra");
            for (size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = (*x)[na + k];
        }
    MetricLieAlgebra qalg = MetricLieAlgebra::create(d, std::move(c));
    size_t q0 = mv.size();
    Matrix g0(q0, q0);
    for (size_t i = 0; i < q0; ++i)
        for (size_t j = 0; j < q0; ++j) g0(i, j) = form_eval(dec.G(), dec.m_coords(mv[i]), dec.m_coords(mv[j]));
    out.base = ReductiveDecomposition::adapted(qalg, out.h0.dim(), g0);
    violation(is_effective(out.base), "base space is not effective");
    return out;
}

// ---------------------------------------------------------------- normal form, type, canonical base

NormalFormSplit normal_form_split(const ReductiveDecomposition& dec) {
    const auto& alg = dec.algebra();
    NormalFormSplit out;
    Subspace rad = radical(alg);
    Subspace Z = center(alg);
    out.Rn = m_coords_space(dec, rad);
    out.m0 = orth_complement(out.Rn, dec.G());
    bool ok = Z.contains(rad) && dec.m().contains(rad);
    if (ok) {
        Subspace s = dec.h() + embed_m_space(dec, out.m0);
        ok = is_subalgebra(alg, s) && (s + rad).dim() == dec.dim();
        if (ok && !s.is_zero()) ok = killing_form(alg.restricted(s)).is_nondegenerate();
    }
    out.ok = ok;
    return out;
}

const char* type_name(SpaceType t) { return t == SpaceType::TypeI ? "TypeI" : "TypeII"; }

SpaceType classify_type(const ReductiveDecomposition& dec) {
    require(is_transvection(dec), ErrorKind::NotTransvection, "type classification needs a transvection decomposition");
    return radical(dec.algebra()).is_zero() ? SpaceType::TypeI : SpaceType::TypeII;
}

CanonicalBase canonical_base(const ReductiveDecomposition& dec) {
    require(is_transvection(dec), ErrorKind::NotTransvection, "canonical base needs a transvection decomposition");
    require(model_irreducible(model_from_decomposition(dec)), ErrorKind::Reducible,
            "decomposition is reducible; split it first");
    const auto& alg = dec.algebra();
    CanonicalBase cb;
    cb.ideal = maximal_abelian_ideal(dec);
    cb.fiber = fiber_decomposition(dec, cb.ideal.a);
    BaseSpace bs = base_space(dec, cb.ideal.a, cb.fiber);
    const auto& mv = bs.m_minus_basis;
    size_t q0 = mv.size(), n = dec.dim();
    size_t l = cb.fiber.h_plus_basis.size();
    Matrix Mm = Matrix::from_cols(mv, n);
    std::vector<Matrix> acts;
    for (const auto& hp : cb.fiber.h_plus_basis) {
        Matrix A(q0, q0);
        for (size_t j = 0; j < q0; ++j) {
            auto c = coords_in(Mm, alg.bracket(hp, mv[j]));
            violation(c.has_value(), "h+ does not preserve m-");
            A.set_col(j, *c);
        }
        acts.push_back(std::move(A));
    }
    Matrix Hp = Matrix::from_cols(cb.fiber.h_plus_basis, n);
    std::vector<Rational> kc(l * l * l);
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
            auto c = coords_in(Hp, alg.bracket(cb.fiber.h_plus_basis[i], cb.fiber.h_plus_basis[j]));
            violation(c.has_value(), "h+ is not a subalgebra");
            for (size_t k = 0; k < l; ++k) kc[(i * l + j) * l + k] = (*c)[k];
        }
    Matrix B(l, l);
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j)
            B(i, j) = form_eval(dec.G(), dec.m_coords(cb.fiber.rho_images[i]), dec.m_coords(cb.fiber.rho_images[j]));
    if (q0 > 0) violation(matrix_span(acts, q0).dim() == l, "h+ does not act faithfully on m-");
    cb.spec = ExtensionSpec{bs.base, acts, kc, B};
    NormalFormSplit nf = normal_form_split(bs.base);
    cb.normal_form = nf.ok;
    cb.h0_dim = bs.base.p();
    cb.n_dim = nf.Rn.dim();
    cb.m0_dim = nf.m0.dim();
    if (bs.base.dim() == 0) {
        cb.k_in_s = true;
    } else {
        Subspace s = s_of_g(bs.base);
        cb.k_in_s = true;
        for (const auto& A : acts)
            if (!s.contains(A.flatten())) cb.k_in_s = false;
    }
    return cb;
}

}  // namespace natred

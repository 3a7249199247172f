#include "natred/extension.hpp"

#include <algorithm>

namespace natred {

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

// ad(k_a) on k in the k basis: column b = [k_a, k_b].
Matrix k_ad(const ExtensionSpec& s, size_t a) {
    size_t l = s.l();
    Matrix M(l, l);
    for (size_t b = 0; b < l; ++b)
        for (size_t c = 0; c < l; ++c) M(c, b) = s.k_bracket[(a * l + b) * l + c];
    return M;
}

Matrix combo(const std::vector<Matrix>& mats, const Vector& c, size_t n) {
    Matrix out(n, n);
    for (size_t a = 0; a < mats.size(); ++a)
        if (!is_zero(c[a])) out = out + mats[a].scaled(c[a]);
    return out;
}

MetricLieAlgebra k_algebra(const ExtensionSpec& s) { return MetricLieAlgebra::unchecked(s.l(), s.k_bracket); }

// Rational {c in k : sum c_a A_a w = 0 for w in block}; Alg entries are split into power-basis coordinates.
Subspace trivial_on(const ExtensionSpec& s, const AlgSubspace& block) {
    size_t l = s.l();
    std::vector<Vector> rows;
    for (const auto& w : block.vectors()) {
        size_t q = w.size();
        std::vector<AlgVector> img;
        for (size_t a = 0; a < l; ++a) img.push_back(convert<Alg>(s.k_action[a]).apply(w));
        for (size_t j = 0; j < q; ++j) {
            size_t deg = 1;
            for (size_t a = 0; a < l; ++a) deg = std::max(deg, img[a][j].coeffs().size());
            for (size_t t = 0; t < deg; ++t) {
                Vector r(l);
                for (size_t a = 0; a < l; ++a) {
                    const auto& cf = img[a][j].coeffs();
                    if (t < cf.size()) r[a] = cf[t];
                }
                if (!is_zero_vec(r)) rows.push_back(std::move(r));
            }
        }
    }
    return Subspace::kernel_of_rows(rows, l);
}

Subspace kernel_on(const ExtensionSpec& s, const Subspace& V) {
    size_t l = s.l();
    std::vector<Vector> rows;
    for (const auto& v : V.vectors()) {
        std::vector<Vector> img;
        for (size_t a = 0; a < l; ++a) img.push_back(s.k_action[a].apply(v));
        for (size_t j = 0; j < v.size(); ++j) {
            Vector r(l);
            for (size_t a = 0; a < l; ++a) r[a] = img[a][j];
            if (!is_zero_vec(r)) rows.push_back(std::move(r));
        }
    }
    return Subspace::kernel_of_rows(rows, l);
}

// Center of the subalgebra S (adapted coordinates), as a subspace of S.
Subspace center_of(const MetricLieAlgebra& alg, const Subspace& S) {
    auto sv = S.vectors();
    size_t d = sv.size(), n = alg.dim();
    std::vector<Vector> rows;
    for (const auto& y : sv) {
        std::vector<Vector> br;
        for (const auto& x : sv) br.push_back(alg.bracket(x, y));
        for (size_t k = 0; k < n; ++k) {
            Vector r(d);
            for (size_t s = 0; s < d; ++s) r[s] = br[s][k];
            if (!is_zero_vec(r)) rows.push_back(std::move(r));
        }
    }
    std::vector<Vector> out;
    for (const auto& c : Subspace::kernel_of_rows(rows, d).vectors()) out.push_back(S.from_coordinates(c));
    return Subspace::span(n, out);
}

Subspace bracket_closure_span(const MetricLieAlgebra& alg, const Subspace& A) {
    return bracket_span(alg, A, A);
}

InfinitesimalModel formula_model(const ExtensionSpec& s) {
    return InfinitesimalModel(block_diag(s.B, s.base.G()), extension_torsion(s), extension_curvature(s));
}

}  // namespace

// ---------------------------------------------------------------- validation

SpecReport validate_spec(const ExtensionSpec& s) {
    SpecReport r;
    auto fail = [&](ErrorKind k, const std::string& msg) {
        if (r.failure.empty()) {
            r.failure = msg;
            r.failure_kind = k;
        }
    };
    size_t l = s.l(), q = s.base.q();
    r.shapes = s.k_bracket.size() == l * l * l && s.B.rows() == l && s.B.cols() == l && q > 0;
    for (const auto& A : s.k_action)
        if (A.rows() != q || A.cols() != q) r.shapes = false;
    if (!r.shapes) {
        fail(ErrorKind::SpecInvalid, "shape mismatch: actions must be dim m x dim m, k_bracket l^3, B l x l, dim m > 0");
        return r;
    }
    const Matrix& G = s.base.G();
    r.skew = true;
    for (size_t a = 0; a < l; ++a)
        if (!is_skew(s.k_action[a], G)) {
            r.skew = false;
            fail(ErrorKind::SkewViolation, "k_action[" + std::to_string(a) + "] is not skew for the metric");
        }
    r.base_transvection = is_transvection(s.base);
    if (!r.base_transvection) fail(ErrorKind::NotTransvection, "base is not a transvection decomposition");
    r.base_normal_form = normal_form_split(s.base).ok;
    if (!r.base_normal_form) fail(ErrorKind::NotNormalForm, "base is not of the form (h + m0) + R^n with h + m0 semisimple");
    if (r.base_transvection) {
        Subspace sg = s_of_g(s.base);
        r.in_s = true;
        for (size_t a = 0; a < l; ++a)
            if (!sg.contains(s.k_action[a].flatten())) {
                r.in_s = false;
                fail(ErrorKind::SpecInvalid, "k_action[" + std::to_string(a) + "] is not in s(base)");
            }
    }
    r.faithful = matrix_span(s.k_action, q).dim() == l;
    if (!r.faithful) fail(ErrorKind::SpecInvalid, "k_action matrices are linearly dependent");
    r.bracket_ok = is_zero(jacobi_residual(l, s.k_bracket));
    for (size_t a = 0; a < l && r.bracket_ok; ++a)
        for (size_t b = 0; b < l && r.bracket_ok; ++b) {
            for (size_t c = 0; c < l; ++c)
                if (s.k_bracket[(a * l + b) * l + c] != -s.k_bracket[(b * l + a) * l + c]) r.bracket_ok = false;
            Vector cc(s.k_bracket.begin() + (a * l + b) * l, s.k_bracket.begin() + (a * l + b + 1) * l);
            if (commutator(s.k_action[a], s.k_action[b]) != combo(s.k_action, cc, q)) r.bracket_ok = false;
        }
    if (!r.bracket_ok) fail(ErrorKind::SpecInvalid, "k_bracket is not a Lie bracket matching the commutators of k_action");
    r.B_positive = BilinearForm(s.B).is_positive_definite();
    if (!r.B_positive) fail(ErrorKind::SpecInvalid, "B is not positive definite");
    r.B_invariant = r.bracket_ok && is_zero(invariance_residual(k_algebra(s), s.B));
    if (!r.B_invariant) fail(ErrorKind::SpecInvalid, "B is not ad(k)-invariant");
    return r;
}

void require_valid_spec(const ExtensionSpec& s) {
    auto r = validate_spec(s);
    if (!r.ok()) throw Error(r.failure_kind, r.failure);
}

// ---------------------------------------------------------------- construction

std::vector<Matrix> psi_matrices(const ExtensionSpec& s) {
    std::vector<Matrix> out;
    for (size_t a = 0; a < s.l(); ++a) out.push_back(block_diag(k_ad(s, a), s.k_action[a]));
    return out;
}

Tensor extension_torsion(const ExtensionSpec& s) {
    size_t l = s.l(), q = s.base.q(), N = l + q;
    Tensor T(N, 3);
    Tensor T0 = model_from_decomposition(s.base).T();
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j)
            for (size_t k = 0; k < q; ++k) T.at(l + i, l + j, l + k) = T0.at(i, j, k);
    const Matrix& G = s.base.G();
    // sum_a phi(k_a)^flat ^ e^a, e^a the dual coordinate covector on n
    for (size_t c = 0; c < l; ++c) {
        Matrix F = (G * s.k_action[c]).transpose();  // F(i,j) = g(A e_i, e_j)
        for (size_t i = 0; i < q; ++i)
            for (size_t j = 0; j < q; ++j) {
                const Rational& v = F(i, j);
                if (is_zero(v)) continue;
                T.at(l + i, l + j, c) += v;
                T.at(l + j, c, l + i) += v;
                T.at(c, l + i, l + j) += v;
            }
    }
    // 2 T_n(x,y,z) = 2 B([x,y], z)
    for (size_t a = 0; a < l; ++a)
        for (size_t b = 0; b < l; ++b)
            for (size_t c = 0; c < l; ++c) {
                Rational v = 0;
                for (size_t d = 0; d < l; ++d) v += s.k_bracket[(a * l + b) * l + d] * s.B(d, c);
                T.at(a, b, c) += v * 2;
            }
    return T;
}

Tensor extension_curvature(const ExtensionSpec& s) {
    size_t l = s.l(), q = s.base.q(), N = l + q;
    Tensor R(N, 4);
    Tensor R0 = model_from_decomposition(s.base).R();
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j)
            for (size_t k = 0; k < q; ++k)
                for (size_t m = 0; m < q; ++m) R.at(l + i, l + j, l + k, l + m) = R0.at(i, j, k, m);
    if (l == 0) return R;
    Matrix GN = block_diag(s.B, s.base.G());
    Matrix Binv = inverse(s.B);
    std::vector<Matrix> F;
    for (const auto& P : psi_matrices(s)) F.push_back((GN * P).transpose());
    // sum_ab Binv_ab psi_a(x,y) psi_b(u,v); W_b = sum_a Binv_ab F_a
    std::vector<Matrix> W;
    for (size_t b = 0; b < l; ++b) {
        Matrix w(N, N);
        for (size_t a = 0; a < l; ++a)
            if (!is_zero(Binv(a, b))) w = w + F[a].scaled(Binv(a, b));
        W.push_back(std::move(w));
    }
    for (size_t b = 0; b < l; ++b)
        for (size_t x = 0; x < N; ++x)
            for (size_t y = 0; y < N; ++y) {
                const Rational& wv = W[b](x, y);
                if (is_zero(wv)) continue;
                for (size_t u = 0; u < N; ++u)
                    for (size_t v = 0; v < N; ++v)
                        if (!is_zero(F[b](u, v))) R.at(x, y, u, v) += wv * F[b](u, v);
            }
    return R;
}

ExtensionResult build_extension(const ExtensionSpec& s) {
    require_valid_spec(s);
    const auto& base = s.base.algebra();
    size_t p = s.base.p(), l = s.l(), q = s.base.q(), N = l + q;
    size_t n = p + l + N;
    auto H = [&](size_t i) { return i; };
    auto K = [&](size_t a) { return p + a; };
    auto Nn = [&](size_t a) { return p + l + a; };
    auto Mx = [&](size_t i) { return p + 2 * l + i; };
    auto X = [&](size_t u) { return p + l + u; };  // index into n + m
    std::vector<Rational> c(n * n * n);
    auto add = [&](size_t i, size_t j, size_t k, const Rational& v) {
        if (is_zero(v) || i == j) return;
        c[(i * n + j) * n + k] += v;
        c[(j * n + i) * n + k] -= v;
    };
    for (size_t i = 0; i < p; ++i)
        for (size_t j = i + 1; j < p; ++j)
            for (size_t k = 0; k < p; ++k) add(H(i), H(j), H(k), base.c(i, j, k));
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < q; ++j)
            for (size_t k = 0; k < q; ++k) add(H(i), Mx(j), Mx(k), base.c(i, p + j, p + k));
    for (size_t a = 0; a < l; ++a) {
        for (size_t b = a + 1; b < l; ++b)
            for (size_t d = 0; d < l; ++d) add(K(a), K(b), K(d), s.k_bracket[(a * l + b) * l + d]);
        for (size_t b = 0; b < l; ++b)
            for (size_t d = 0; d < l; ++d) add(K(a), Nn(b), Nn(d), s.k_bracket[(a * l + b) * l + d]);
        for (size_t i = 0; i < q; ++i)
            for (size_t k = 0; k < q; ++k) add(K(a), Mx(i), Mx(k), s.k_action[a](k, i));
    }
    Matrix GN = block_diag(s.B, s.base.G());
    Matrix GNinv = inverse(GN);
    Tensor T = extension_torsion(s);
    Tensor R = extension_curvature(s);
    std::vector<Matrix> F;
    for (const auto& P : psi_matrices(s)) F.push_back((GN * P).transpose());
    Matrix Binv = l ? inverse(s.B) : Matrix(0, 0);
    for (size_t u = 0; u < N; ++u)
        for (size_t v = u + 1; v < N; ++v) {
            if (u >= l && v >= l)
                for (size_t k = 0; k < p; ++k) add(X(u), X(v), H(k), base.c(p + u - l, p + v - l, k));
            for (size_t b = 0; b < l; ++b) {
                Rational coef = 0;
                for (size_t a = 0; a < l; ++a) coef += Binv(a, b) * F[a](u, v);
                add(X(u), X(v), K(b), -coef);
            }
            for (size_t w = 0; w < N; ++w) {
                Rational val = 0;
                for (size_t z = 0; z < N; ++z) val += GNinv(w, z) * T.at(u, v, z);
                add(X(u), X(v), X(w), -val);
            }
        }
    MetricLieAlgebra gk;
    try {
        gk = MetricLieAlgebra::create(n, std::move(c));
    } catch (const Error& e) {
        throw Error(ErrorKind::SpecInvalid, std::string("double extension is not a Lie algebra: ") + e.what());
    }
    ExtensionResult out;
    out.p = p;
    out.l = l;
    out.q = q;
    out.algebra = ReductiveDecomposition::adapted(gk, p + l, GN);
    out.model = InfinitesimalModel(GN, T, R);
    require(model_from_decomposition(out.algebra) == out.model, ErrorKind::Internal,
            "closed-form torsion/curvature differ from the double extension");
    out.transvection = transvection_algebra(out.model);
    std::vector<Vector> dv;
    for (size_t a = 0; a < l; ++a) {
        Vector v(n);
        v[K(a)] = 1;
        v[Nn(a)] = 1;
        dv.push_back(std::move(v));
    }
    out.diagonal = Subspace::span(n, dv);
    return out;
}

bool quotient_matches_semidirect(const ExtensionSpec& s, const ExtensionResult& ext) {
    const auto& gk = ext.algebra.algebra();
    const auto& base = s.base.algebra();
    size_t p = ext.p, l = ext.l, q = ext.q, n = gk.dim();
    if (!is_ideal(gk, ext.diagonal) || !is_abelian(gk, ext.diagonal)) return false;
    // representatives h | k | m inside g(k)
    std::vector<size_t> rep;
    for (size_t i = 0; i < p + l; ++i) rep.push_back(i);
    for (size_t i = 0; i < q; ++i) rep.push_back(p + 2 * l + i);
    size_t d = rep.size();
    auto reduce = [&](Vector w) {
        for (size_t a = 0; a < l; ++a) {
            Rational t = w[p + l + a];
            if (is_zero(t)) continue;
            w[p + a] -= t;
            w[p + l + a] = 0;
        }
        Vector out(d);
        for (size_t i = 0; i < d; ++i) out[i] = w[rep[i]];
        return out;
    };
    // k x| g in the basis h | k | m
    auto semidirect = [&](size_t i, size_t j) {
        Vector out(d);
        bool ik = i >= p && i < p + l, jk = j >= p && j < p + l;
        auto gidx = [&](size_t t) { return t < p ? t : t - l; };  // index into base adapted coords
        if (ik && jk) {
            for (size_t c = 0; c < l; ++c) out[p + c] = s.k_bracket[((i - p) * l + (j - p)) * l + c];
        } else if (ik || jk) {
            size_t a = ik ? i - p : j - p;
            size_t other = ik ? j : i;
            Rational sign = ik ? 1 : -1;
            if (other >= p + l) {
                size_t mi = other - p - l;
                for (size_t k = 0; k < q; ++k) out[p + l + k] = sign * s.k_action[a](k, mi);
            }
        } else {
            Vector w = base.bracket_basis(gidx(i), gidx(j));
            for (size_t t = 0; t < p; ++t) out[t] = w[t];
            for (size_t t = 0; t < q; ++t) out[p + l + t] = w[p + t];
        }
        return out;
    };
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j)
            if (reduce(gk.bracket_basis(rep[i], rep[j])) != semidirect(i, j)) return false;
    (void)n;
    return true;
}

// ---------------------------------------------------------------- k split, ker R, conditions

KSplit k_split(const ExtensionSpec& s) {
    auto nf = normal_form_split(s.base);
    require(nf.ok, ErrorKind::NotNormalForm, "base is not of the form (h + m0) + R^n");
    const auto& alg = s.base.algebra();
    size_t p = s.base.p(), q = s.base.q(), n = s.base.dim(), l = s.l();
    KSplit ks;
    ks.m0 = nf.m0;
    ks.Rn = nf.Rn;
    ks.k1 = kernel_on(s, nf.Rn);
    ks.k3 = kernel_on(s, nf.m0);
    ks.k2 = orth_complement(ks.k1 + ks.k3, s.B);
    std::vector<Vector> rows;
    for (size_t b = 0; b < p; ++b) {
        Matrix I = s.base.isotropy(b);
        for (size_t i = 0; i < q; ++i) rows.push_back(I.row(i));
    }
    ks.p = Subspace::kernel_of_rows(rows, q).intersect(nf.m0);
    // inner representatives inside h + m0
    std::vector<Vector> gss;
    for (size_t i = 0; i < p; ++i) gss.push_back(unit_vec<Rational>(n, i));
    for (const auto& v : nf.m0.vectors()) gss.push_back(s.base.embed_m(v));
    size_t ds = gss.size();
    auto representative = [&](const Matrix& D) {
        // sum_s z_s [g_s, x] = D x on m0, [z, h] = 0
        std::vector<Vector> eq_rows;
        Vector rhs;
        auto push = [&](const Vector& x, const Vector& target) {
            std::vector<Vector> br;
            for (const auto& g : gss) br.push_back(alg.bracket(g, x));
            for (size_t k = 0; k < n; ++k) {
                Vector r(ds);
                for (size_t t = 0; t < ds; ++t) r[t] = br[t][k];
                eq_rows.push_back(std::move(r));
                rhs.push_back(target[k]);
            }
        };
        for (size_t i = 0; i < p; ++i) push(unit_vec<Rational>(n, i), Vector(n));
        for (const auto& v : nf.m0.vectors()) push(s.base.embed_m(v), s.base.embed_m(D.apply(v)));
        if (ds == 0) return Vector(n);
        auto z = solve(Matrix::from_rows(eq_rows, ds), rhs);
        require(z.has_value(), ErrorKind::SpecInvalid, "k acts on h + m0 by a non-inner derivation");
        Vector out(n);
        for (size_t t = 0; t < ds; ++t) axpy(out, (*z)[t], gss[t]);
        return out;
    };
    std::vector<Vector> b1, b2;
    for (const auto& c : ks.k1.vectors()) b1.push_back(representative(combo(s.k_action, c, q)));
    for (const auto& c : ks.k2.vectors()) b2.push_back(representative(combo(s.k_action, c, q)));
    ks.b1 = Subspace::span(n, b1);
    ks.b2 = Subspace::span(n, b2);
    (void)l;
    return ks;
}

Subspace isotropy_span(const ExtensionSpec& s) {
    size_t l = s.l(), N = l + s.base.q();
    std::vector<Matrix> mats;
    for (const auto& I : s.base.isotropy_all()) mats.push_back(block_diag(Matrix(l, l), I));
    for (const auto& P : psi_matrices(s)) mats.push_back(P);
    return matrix_span(mats, N);
}

Subspace ker_R(const ExtensionSpec& s) {
    require_valid_spec(s);
    size_t l = s.l(), N = l + s.base.q();
    InfinitesimalModel M = formula_model(s);
    Subspace W = isotropy_span(s);
    auto wv = matrices_of(W, N);
    auto im = matrices_of(M.image_R(), N);
    std::vector<Vector> rows;
    for (const auto& Y : im) {
        Vector r(wv.size());
        for (size_t a = 0; a < wv.size(); ++a) r[a] = b_lambda2(wv[a], Y);
        rows.push_back(std::move(r));
    }
    Subspace coeff = Subspace::kernel_of_rows(rows, wv.size());
    std::vector<Vector> out;
    for (const auto& c : coeff.vectors()) out.push_back(combo(wv, c, N).flatten());
    Subspace ker = Subspace::span(N * N, out);
    // kernel lies in ad(Z(h + k)); vanishes when k1 = 0
    const auto& alg = s.base.algebra();
    std::vector<Matrix> zm;
    for (const auto& z : center_of(alg, s.base.h()).vectors())
        zm.push_back(block_diag(Matrix(l, l), s.base.isotropy(s.base.h_coords(z))));
    MetricLieAlgebra ka = k_algebra(s);
    auto psi = psi_matrices(s);
    for (const auto& z : center(ka).vectors()) zm.push_back(combo(psi, z, N));
    require(matrix_span(zm, N).contains(ker), ErrorKind::Internal, "ker R is not inside ad(Z(h + k))");
    if (normal_form_split(s.base).ok && k_split(s).k1.is_zero())
        require(ker.is_zero(), ErrorKind::Internal, "ker R is nonzero although k1 = 0");
    return ker;
}

BaseConditions canonical_base_conditions(const ExtensionSpec& s) {
    require_valid_spec(s);
    BaseConditions bc;
    KSplit ks = k_split(s);
    Subspace z = center_of(s.base.algebra(), ks.b1);
    bc.condition_i = true;
    for (const auto& v : z.vectors())
        if (!is_zero_vec(s.base.m_coords(v))) bc.condition_i = false;
    bc.condition_ii = ker_R(s).is_zero();
    return bc;
}

bool diagonal_projects_onto_n(const ExtensionSpec& s) {
    ExtensionResult ext = build_extension(s);
    const auto& f = ext.transvection;
    Subspace d = maximal_abelian_ideal(f).a;
    std::vector<Vector> proj;
    for (const auto& v : d.vectors()) proj.push_back(f.m_coords(v));
    return Subspace::span(f.q(), proj) == Subspace::coordinate(f.q(), 0, ext.l);
}

// ---------------------------------------------------------------- holonomy

Holonomy holonomy_algebra(const ExtensionSpec& s) {
    auto bc = canonical_base_conditions(s);
    require(bc.both(), ErrorKind::ConditionsFailed, "holonomy formula needs both canonical-base conditions");
    size_t l = s.l(), N = l + s.base.q();
    Holonomy h;
    h.image = formula_model(s).image_R();
    KSplit ks = k_split(s);
    MetricLieAlgebra ka = k_algebra(s);
    Subspace parts = bracket_closure_span(ka, ks.k1) + ks.k2 + ks.k3;
    std::vector<Matrix> mats;
    for (const auto& I : s.base.isotropy_all()) mats.push_back(block_diag(Matrix(l, l), I));
    auto psi = psi_matrices(s);
    for (const auto& c : parts.vectors()) mats.push_back(combo(psi, c, N));
    h.formula = matrix_span(mats, N);
    return h;
}

std::string lie_algebra_label(const Subspace& space, size_t n) {
    size_t d = space.dim();
    if (d == 0) return "0";
    MetricLieAlgebra alg = matrix_lie_algebra(space, n);
    Subspace full = Subspace::full(d);
    Subspace D = bracket_span(alg, full, full);
    size_t c = center(alg).dim();
    auto torus = [&](size_t k) { return k == 1 ? std::string("so(2)") : "u(1)^" + std::to_string(k); };
    if (D.is_zero()) return torus(d);
    if (D.dim() + c != d) return "dim " + std::to_string(d);
    auto in = killing_form(alg.restricted(D)).inertia();
    bool compact = in.negative == D.dim();
    std::string ss;
    if (compact && D.dim() == 3) ss = "su(2)";
    else if (compact && D.dim() == 6) ss = "su(2)+su(2)";
    else if (compact && D.dim() == 8) ss = "su(3)";
    else if (compact && D.dim() == 10) ss = "sp(2)";
    else if (!compact && D.dim() == 3 && in.zero == 0) ss = "sl(2,R)";
    else ss = std::string(compact ? "compact" : "semisimple") + " dim " + std::to_string(D.dim());
    return c ? ss + "+" + torus(c) : ss;
}

// ---------------------------------------------------------------- isomorphism

bool extension_certificate_check(const ExtensionSpec& a, const ExtensionSpec& b, const Matrix& tau_h,
                                 const Matrix& tau_m, const Matrix& tau_k) {
    size_t p = a.base.p(), q = a.base.q(), l = a.l();
    if (b.base.p() != p || b.base.q() != q || b.l() != l) return false;
    if (tau_h.rows() != p || tau_h.cols() != p || tau_m.rows() != q || tau_m.cols() != q || tau_k.rows() != l ||
        tau_k.cols() != l)
        return false;
    if (tau_m.transpose() * b.base.G() * tau_m != a.base.G()) return false;
    if (tau_k.transpose() * b.B * tau_k != a.B) return false;
    Matrix tau = block_diag(tau_h, tau_m);
    if (p + q > 0 && is_zero(determinant(tau))) return false;
    if (l > 0 && is_zero(determinant(tau_k))) return false;
    const auto& ga = a.base.algebra();
    const auto& gb = b.base.algebra();
    size_t n = p + q;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (tau.apply(ga.bracket_basis(i, j)) != gb.bracket(tau.col(i), tau.col(j))) return false;
    MetricLieAlgebra ka = k_algebra(a), kb = k_algebra(b);
    for (size_t i = 0; i < l; ++i)
        for (size_t j = i + 1; j < l; ++j)
            if (tau_k.apply(ka.bracket_basis(i, j)) != kb.bracket(tau_k.col(i), tau_k.col(j))) return false;
    Matrix tinv = q ? inverse(tau_m) : Matrix(0, 0);
    for (size_t i = 0; i < l; ++i)
        if (tau_m * a.k_action[i] * tinv != combo(b.k_action, tau_k.col(i), q)) return false;
    return true;
}

namespace {

std::optional<Vector> coords_in_span(const std::vector<Matrix>& basis, const Matrix& X, size_t n) {
    std::vector<Vector> cols;
    for (const auto& B : basis) cols.push_back(B.flatten());
    Vector target = X.flatten();
    if (cols.empty()) return is_zero_vec(target) ? std::optional<Vector>(Vector{}) : std::nullopt;
    Matrix A = Matrix::from_cols(cols, n * n);
    auto x = solve(A, target);
    if (!x || A.apply(*x) != target) return std::nullopt;
    return x;
}

bool try_tau_m(const ExtensionSpec& a, const ExtensionSpec& b, const Matrix& M, ExtensionIsoResult& res) {
    size_t p = a.base.p(), q = a.base.q(), l = a.l();
    Matrix Minv = inverse(M);
    Matrix tk(l, l), th(p, p);
    for (size_t i = 0; i < l; ++i) {
        auto c = coords_in_span(b.k_action, M * a.k_action[i] * Minv, q);
        if (!c) return false;
        tk.set_col(i, *c);
    }
    auto ib = b.base.isotropy_all();
    for (size_t i = 0; i < p; ++i) {
        auto c = coords_in_span(ib, M * a.base.isotropy(i) * Minv, q);
        if (!c) return false;
        th.set_col(i, *c);
    }
    if (!extension_certificate_check(a, b, th, M, tk)) return false;
    res.verdict = IsoResult::Verdict::Yes;
    res.tau_h = th;
    res.tau_m = M;
    res.tau_k = tk;
    res.witness = "certificate verified";
    return true;
}

Poly relative_charpoly(const Matrix& B, const Matrix& Q) {
    if (B.rows() == 0) return Poly::constant(1);
    return characteristic_polynomial(inverse(B) * Q);
}

Matrix action_form(const ExtensionSpec& s) {
    size_t l = s.l();
    Matrix Q(l, l);
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) Q(i, j) = b_lambda2(s.k_action[i], s.k_action[j]);
    return Q;
}

}  // namespace

ExtensionIsoResult extension_iso_decide(const ExtensionSpec& a, const ExtensionSpec& b) {
    require(canonical_base_conditions(a).both() && canonical_base_conditions(b).both(), ErrorKind::ConditionsFailed,
            "both specs must satisfy the canonical-base conditions");
    ExtensionIsoResult res;
    if (a.base.p() != b.base.p() || a.base.q() != b.base.q() || a.l() != b.l()) {
        res.verdict = IsoResult::Verdict::No;
        res.witness = "dimension mismatch (h, m or k)";
        return res;
    }
    InfinitesimalModel Ma = model_from_decomposition(a.base), Mb = model_from_decomposition(b.base);
    std::string fd = fingerprint_difference(fingerprint(Ma), fingerprint(Mb));
    if (!fd.empty()) {
        res.verdict = IsoResult::Verdict::No;
        res.witness = "base models differ: " + fd;
        return res;
    }
    if (relative_charpoly(a.B, action_form(a)) != relative_charpoly(b.B, action_form(b))) {
        res.verdict = IsoResult::Verdict::No;
        res.witness = "B-Gram mismatch: action form relative to B";
        return res;
    }
    auto kill = [](const ExtensionSpec& s) { return killing_form(k_algebra(s)).gram(); };
    if (relative_charpoly(a.B, kill(a)) != relative_charpoly(b.B, kill(b))) {
        res.verdict = IsoResult::Verdict::No;
        res.witness = "B-Gram mismatch: Killing form relative to B";
        return res;
    }
    size_t budget = search_budget();
    bool exhausted = false;
    for (const auto& M : iso_candidates(Ma, Mb, std::min<size_t>(budget, 4096), &exhausted))
        if (try_tau_m(a, b, M, res)) return res;
    // aligned frames of the extended models
    ExtensionResult ea = build_extension(a), eb = build_extension(b);
    size_t l = a.l(), q = a.base.q();
    for (const auto& S : iso_candidates(ea.model, eb.model, std::min<size_t>(budget, 4096), &exhausted)) {
        if (!is_zero_vec(S.block(l, 0, q, l).flatten()) || !is_zero_vec(S.block(0, l, l, q).flatten())) continue;
        Matrix M = S.block(l, l, q, q);
        if (try_tau_m(a, b, M, res)) return res;
    }
    res.witness = exhausted ? "search budget exhausted" : "no certificate found by the bounded search";
    return res;
}

// ---------------------------------------------------------------- irreducibility

ExtensionReducibility extension_irreducible(const ExtensionSpec& s) {
    require(canonical_base_conditions(s).both(), ErrorKind::ConditionsFailed,
            "irreducibility criterion needs both canonical-base conditions");
    size_t q = s.base.q(), l = s.l();
    auto gens = model_generators(model_from_decomposition(s.base));
    for (const auto& A : s.k_action) gens.push_back(A);
    ModuleSplit split = orthogonal_split(gens, s.base.G(), Subspace::full(q));
    ExtensionReducibility out;
    out.blocks = split.blocks;
    size_t nb = out.blocks.size();
    require(nb <= kMaxExtensionBlocks, ErrorKind::BlockLimit, "too many irreducible blocks");
    std::vector<Subspace> triv;
    for (const auto& blk : out.blocks) triv.push_back(trivial_on(s, blk));
    MetricLieAlgebra ka = k_algebra(s);
    Subspace fullk = Subspace::full(l);
    for (size_t mask = 1; nb > 1 && mask < (size_t(1) << (nb - 1)); ++mask) {
        ++out.partitions_checked;
        std::vector<bool> first(nb, true);
        for (size_t i = 1; i < nb; ++i) first[i] = !((mask >> (i - 1)) & 1);
        Subspace t1 = fullk, t2 = fullk;  // trivial on W'' / trivial on W'
        for (size_t i = 0; i < nb; ++i) {
            if (first[i]) t2 = t2.intersect(triv[i]);
            else t1 = t1.intersect(triv[i]);
        }
        Subspace J1 = largest_ideal_within(ka, t1);
        Subspace J2 = largest_ideal_within(ka, t2);
        Subspace J1perp = orth_complement(J1, s.B);
        if (J2.contains(J1perp)) {
            out.reducible = true;
            out.in_first = first;
            out.k_prime = J1;
            out.k_second = J1perp;
            return out;
        }
    }
    return out;
}

InfinitesimalModel direct_sum(const InfinitesimalModel& a, const InfinitesimalModel& b) {
    size_t na = a.dim(), nb = b.dim(), n = na + nb;
    Tensor T(n, 3), R(n, 4);
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < na; ++j)
            for (size_t k = 0; k < na; ++k) {
                T.at(i, j, k) = a.T().at(i, j, k);
                for (size_t m = 0; m < na; ++m) R.at(i, j, k, m) = a.R().at(i, j, k, m);
            }
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j)
            for (size_t k = 0; k < nb; ++k) {
                T.at(na + i, na + j, na + k) = b.T().at(i, j, k);
                for (size_t m = 0; m < nb; ++m) R.at(na + i, na + j, na + k, na + m) = b.R().at(i, j, k, m);
            }
    return InfinitesimalModel(block_diag(a.G(), b.G()), T, R);
}

}  // namespace natred

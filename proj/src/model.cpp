#include "natred/model.hpp"

#include "natred/decomposition.hpp"

#include <cstdlib>
#include <functional>

namespace natred {

InfinitesimalModel::InfinitesimalModel(Matrix metric, Tensor T, Tensor R) : T_(std::move(T)), R_(std::move(R)) {
    size_t q = metric.rows();
    require(metric.cols() == q, ErrorKind::ShapeMismatch, "metric must be square");
    g_ = BilinearForm(std::move(metric));
    require(g_.is_positive_definite(), ErrorKind::DegenerateForm, "metric must be positive definite");
    require(T_.n == q && T_.degree == 3, ErrorKind::ShapeMismatch, "torsion must be a q^3 tensor");
    require(R_.n == q && R_.degree == 4, ErrorKind::ShapeMismatch, "curvature must be a q^4 tensor");
    require(is_alternating(T_), ErrorKind::ShapeMismatch, "torsion is not a 3-form");
    for (size_t x = 0; x < q; ++x)
        for (size_t y = 0; y < q; ++y)
            for (size_t u = 0; u < q; ++u)
                for (size_t v = 0; v < q; ++v) {
                    const Rational& r = R_.at(x, y, u, v);
                    require(r == -R_.at(y, x, u, v) && r == -R_.at(x, y, v, u), ErrorKind::ShapeMismatch,
                            "curvature is not skew in each pair");
                    require(r == R_.at(u, v, x, y), ErrorKind::ShapeMismatch, "curvature lacks pair symmetry");
                }
    ginv_ = inverse(g_.gram());
    tend_.assign(q, Matrix(q, q));
    for (size_t x = 0; x < q; ++x)
        for (size_t y = 0; y < q; ++y)
            for (size_t l = 0; l < q; ++l) {
                const Rational& t = T_.at(x, y, l);
                if (is_zero(t)) continue;
                for (size_t k = 0; k < q; ++k)
                    if (!is_zero(ginv_(k, l))) tend_[x](k, y) += ginv_(k, l) * t;
            }
    rend_.assign(q * q, Matrix(q, q));
    for (size_t x = 0; x < q; ++x)
        for (size_t y = 0; y < q; ++y) {
            Matrix& M = rend_[x * q + y];
            for (size_t u = 0; u < q; ++u)
                for (size_t v = 0; v < q; ++v) {
                    const Rational& r = R_.at(x, y, u, v);
                    if (is_zero(r)) continue;
                    for (size_t k = 0; k < q; ++k)
                        if (!is_zero(ginv_(k, v))) M(k, u) += ginv_(k, v) * r;
                }
        }
}

Vector InfinitesimalModel::T_vec(const Vector& x, const Vector& y) const {
    Vector out = zero_vec<Rational>(dim());
    for (size_t i = 0; i < dim(); ++i)
        if (!is_zero(x[i])) axpy(out, x[i], tend_[i].apply(y));
    return out;
}

Matrix InfinitesimalModel::R_endo(const Vector& x, const Vector& y) const {
    size_t q = dim();
    Matrix out(q, q);
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) {
            Rational f = x[i] * y[j];
            if (!is_zero(f)) out = out + rend_[i * q + j].scaled(f);
        }
    return out;
}

Subspace InfinitesimalModel::image_R() const {
    size_t q = dim();
    std::vector<Vector> vs;
    for (size_t x = 0; x < q; ++x)
        for (size_t y = x + 1; y < q; ++y) vs.push_back(rend_[x * q + y].flatten());
    return Subspace::span(q * q, vs);
}

AxiomReport verify_axioms(const InfinitesimalModel& M) {
    size_t q = M.dim();
    AxiomReport rep;
    rep.parallel_residual = 0;
    rep.bianchi1_residual = 0;
    rep.bianchi2_residual = 0;
    auto bump = [](Rational& worst, const Rational& v) {
        if (abs(v) > worst) worst = abs(v);
    };
    for (size_t x = 0; x < q; ++x)
        for (size_t y = x + 1; y < q; ++y) {
            const Matrix& A = M.R_endo(x, y);
            if (A.is_zero()) continue;
            bump(rep.parallel_residual, max_abs(act(A, M.T())));
            bump(rep.parallel_residual, max_abs(act(A, M.R())));
        }
    for (size_t x = 0; x < q; ++x)
        for (size_t y = x + 1; y < q; ++y)
            for (size_t z = y + 1; z < q; ++z) {
                const size_t tr[3][3] = {{x, y, z}, {y, z, x}, {z, x, y}};
                Vector b1 = zero_vec<Rational>(q);
                Matrix b2(q, q);
                for (const auto& t : tr) {
                    size_t a = t[0], b = t[1], c = t[2];
                    b1 = add(b1, M.R_endo(a, b).col(c));
                    Vector tab = M.T_endo(a).col(b);
                    for (size_t k = 0; k < q; ++k) {
                        if (is_zero(tab[k])) continue;
                        axpy(b1, Rational(-tab[k]), M.T_endo(k).col(c));
                        b2 = b2 + M.R_endo(k, c).scaled(tab[k]);
                    }
                }
                for (const auto& v : b1) bump(rep.bianchi1_residual, v);
                for (const auto& v : b2.data()) bump(rep.bianchi2_residual, v);
            }
    rep.parallel_ok = is_zero(rep.parallel_residual);
    rep.bianchi1_ok = is_zero(rep.bianchi1_residual);
    rep.bianchi2_ok = is_zero(rep.bianchi2_residual);
    return rep;
}

Subspace nomizu_full_isotropy(const InfinitesimalModel& M) { return stabilizer<Rational>({M.T(), M.R()}, M.G()); }

namespace {

NomizuAlgebra build_nomizu(const InfinitesimalModel& M, const Subspace& L) {
    size_t q = M.dim();
    size_t p = L.dim();
    size_t n = p + q;
    auto mats = matrices_of(L, q);
    std::vector<Rational> c(n * n * n);
    auto set = [&](size_t i, size_t j, const Vector& v) {
        for (size_t k = 0; k < n; ++k) {
            c[(i * n + j) * n + k] = v[k];
            c[(j * n + i) * n + k] = -v[k];
        }
    };
    auto h_vec = [&](const Matrix& A) {
        Vector v = zero_vec<Rational>(n);
        Vector co = L.coordinates(A.flatten());
        for (size_t a = 0; a < p; ++a) v[a] = co[a];
        return v;
    };
    for (size_t a = 0; a < p; ++a)
        for (size_t b = a + 1; b < p; ++b) set(a, b, h_vec(commutator(mats[a], mats[b])));
    for (size_t a = 0; a < p; ++a)
        for (size_t i = 0; i < q; ++i) {
            Vector v = zero_vec<Rational>(n);
            for (size_t k = 0; k < q; ++k) v[p + k] = mats[a](k, i);
            set(a, p + i, v);
        }
    for (size_t i = 0; i < q; ++i)
        for (size_t j = i + 1; j < q; ++j) {
            Vector v = h_vec(-M.R_endo(i, j));
            Vector t = M.T_endo(i).col(j);
            for (size_t k = 0; k < q; ++k) v[p + k] = -t[k];
            set(p + i, p + j, v);
        }
    NomizuAlgebra out;
    out.algebra = MetricLieAlgebra::unchecked(n, std::move(c));
    out.p = p;
    out.isotropy = std::move(mats);
    return out;
}

}  // namespace

NomizuAlgebra nomizu_bracket_algebra(const InfinitesimalModel& M) {
    size_t q = M.dim();
    std::vector<Matrix> gens = matrices_of(nomizu_full_isotropy(M), q);
    for (size_t x = 0; x < q; ++x)
        for (size_t y = x + 1; y < q; ++y) gens.push_back(M.R_endo(x, y));
    return build_nomizu(M, lie_closure(gens, q));
}

NomizuAlgebra nomizu_symmetry_algebra(const InfinitesimalModel& M) {
    require(verify_axioms(M).ok(), ErrorKind::AxiomsFailed, "model does not satisfy the axioms");
    NomizuAlgebra out = build_nomizu(M, nomizu_full_isotropy(M));
    require(is_zero(jacobi_residual(out.algebra)), ErrorKind::Internal, "Nomizu bracket violates Jacobi");
    return out;
}

ReductiveDecomposition transvection_algebra(const InfinitesimalModel& M) {
    require(verify_axioms(M).ok(), ErrorKind::AxiomsFailed, "model does not satisfy the axioms");
    NomizuAlgebra na = build_nomizu(M, M.image_R());
    require(is_zero(jacobi_residual(na.algebra)), ErrorKind::Internal, "transvection bracket violates Jacobi");
    return ReductiveDecomposition::adapted(na.algebra, na.p, M.G());
}

InfinitesimalModel model_from_decomposition(const ReductiveDecomposition& dec) {
    require_naturally_reductive(dec);
    size_t p = dec.p(), q = dec.q();
    const Matrix& G = dec.G();
    const auto& alg = dec.algebra();
    Tensor T(q, 3), R(q, 4);
    for (size_t i = 0; i < q; ++i)
        for (size_t j = i + 1; j < q; ++j) {
            Vector br = alg.bracket_basis(p + i, p + j);
            Vector gm = G.apply(dec.m_coords(br));
            for (size_t k = 0; k < q; ++k) {
                T.at(i, j, k) = -gm[k];
                T.at(j, i, k) = gm[k];
            }
            Matrix A = dec.isotropy(dec.h_coords(br));
            if (A.is_zero()) continue;
            // R(x,y)u = -[[x,y]_h, u]
            Matrix GA = A.transpose() * G;  // (u, v) -> g(A u, v)
            for (size_t u = 0; u < q; ++u)
                for (size_t v = 0; v < q; ++v) {
                    R.at(i, j, u, v) = -GA(u, v);
                    R.at(j, i, u, v) = GA(u, v);
                }
        }
    return InfinitesimalModel(G, std::move(T), std::move(R));
}

Tensor push_forward(const Tensor& S, const Matrix& M) { return pullback(S, inverse(M)); }

bool iso_certificate_check(const ModelIsomorphism& cert) {
    const auto& a = cert.source;
    const auto& b = cert.target;
    size_t q = a.dim();
    if (b.dim() != q || cert.M.rows() != q || cert.M.cols() != q) return false;
    if (is_zero(determinant(cert.M))) return false;
    if (cert.M.transpose() * b.G() * cert.M != a.G()) return false;
    return push_forward(a.T(), cert.M) == b.T() && push_forward(a.R(), cert.M) == b.R();
}

const char* verdict_name(IsoResult::Verdict v) {
    switch (v) {
        case IsoResult::Verdict::Yes: return "Yes";
        case IsoResult::Verdict::No: return "No";
        case IsoResult::Verdict::Undecided: return "Undecided";
    }
    return "?";
}

Matrix torsion_gram_operator(const InfinitesimalModel& M) {
    size_t q = M.dim();
    Matrix S(q, q);
    for (size_t x = 0; x < q; ++x)
        for (size_t y = x; y < q; ++y) {
            Rational v = b_lambda2(M.T_endo(x), M.T_endo(y));
            S(x, y) = v;
            S(y, x) = v;
        }
    return M.G_inv() * S;
}

Matrix ricci_operator(const InfinitesimalModel& M) {
    size_t q = M.dim();
    // Ric(y, u) = tr(x -> R(x, y) u)
    Matrix Ric(q, q);
    for (size_t y = 0; y < q; ++y)
        for (size_t u = 0; u < q; ++u) {
            Rational t(0);
            for (size_t x = 0; x < q; ++x) t += M.R_endo(x, y)(x, u);
            Ric(y, u) = t;
        }
    Matrix sym = (Ric + Ric.transpose()).scaled(Rational(1, 2));
    return M.G_inv() * sym;
}

namespace {

// R on so(m) in the basis e_i ^ e_j.
Matrix curvature_operator(const InfinitesimalModel& M) {
    size_t q = M.dim();
    size_t d = q * (q - 1) / 2;
    Matrix out(d, d);
    size_t col = 0;
    for (size_t i = 0; i < q; ++i)
        for (size_t j = i + 1; j < q; ++j, ++col) {
            Matrix C = M.R_endo(i, j) * M.G_inv();
            size_t row = 0;
            for (size_t a = 0; a < q; ++a)
                for (size_t b = a + 1; b < q; ++b, ++row) out(row, col) = C(b, a);
        }
    return out;
}

size_t torsion_kernel_dim(const InfinitesimalModel& M) {
    size_t q = M.dim();
    std::vector<Vector> rows;
    for (size_t y = 0; y < q; ++y)
        for (size_t z = y + 1; z < q; ++z) {
            Vector r(q);
            for (size_t x = 0; x < q; ++x) r[x] = M.T().at(x, y, z);
            rows.push_back(std::move(r));
        }
    return Subspace::kernel_of_rows(rows, q).dim();
}

}  // namespace

ModelFingerprint fingerprint(const InfinitesimalModel& M) {
    ModelFingerprint f;
    f.dim = M.dim();
    f.ker_T = torsion_kernel_dim(M);
    f.torsion_gram = characteristic_polynomial(torsion_gram_operator(M));
    f.ricci = characteristic_polynomial(ricci_operator(M));
    if (M.dim() >= 2 && M.dim() <= 12) f.curvature_operator = characteristic_polynomial(curvature_operator(M));
    if (verify_axioms(M).ok()) {
        ReductiveDecomposition tv = transvection_algebra(M);
        f.transvection_dim = tv.dim();
        f.killing = killing_form(tv.algebra()).inertia();
    }
    return f;
}

std::string fingerprint_difference(const ModelFingerprint& a, const ModelFingerprint& b) {
    if (a.dim != b.dim) return "dimension mismatch";
    if (a.ker_T != b.ker_T)
        return "torsion kernel dimension " + std::to_string(a.ker_T) + " vs " + std::to_string(b.ker_T);
    if (!(a.torsion_gram == b.torsion_gram)) return "torsion Gram spectrum mismatch";
    if (!(a.ricci == b.ricci)) return "Ricci spectrum mismatch";
    if (!(a.curvature_operator == b.curvature_operator)) return "curvature operator spectrum mismatch";
    if (a.transvection_dim != b.transvection_dim) return "transvection algebra dimension mismatch";
    if (a.killing.positive != b.killing.positive || a.killing.negative != b.killing.negative ||
        a.killing.zero != b.killing.zero)
        return "transvection Killing signature mismatch";
    return "";
}

size_t search_budget() {
    if (const char* s = std::getenv("NATRED_SEARCH_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) return static_cast<size_t>(v);
    }
    return 200000;
}

namespace {

// Exact square root of a nonnegative rational, if it exists.
std::optional<Rational> rational_sqrt(const Rational& r) {
    if (sgn(r) < 0) return std::nullopt;
    mpz_class n = r.get_num(), d = r.get_den();
    mpz_class sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

// Decomposition of m into invariant blocks: joint eigenspaces of the invariant
// self-adjoint operators for rational eigenvalues, plus a remainder block.
struct Block {
    std::vector<Rational> signature;  // eigenvalues; the remainder uses an empty signature with tag
    int tag = 0;
    Subspace space;
};

std::vector<Block> invariant_blocks(const InfinitesimalModel& M) {
    size_t q = M.dim();
    std::vector<Matrix> ops = {torsion_gram_operator(M), ricci_operator(M)};
    std::vector<Block> blocks{{{}, 0, Subspace::full(q)}};
    for (const auto& op : ops) {
        std::vector<Block> next;
        Poly cp = characteristic_polynomial(op);
        auto roots = cp.rational_roots();
        for (const auto& b : blocks) {
            Subspace covered(q);
            for (const auto& r : roots) {
                Matrix shifted = op;
                for (size_t i = 0; i < q; ++i) shifted(i, i) -= r;
                Subspace e = kernel(shifted).intersect(b.space);
                if (e.dim() == 0) continue;
                Block nb = b;
                nb.tag = b.tag * 2;
                nb.signature.push_back(r);
                nb.space = e;
                next.push_back(nb);
                covered = covered + e;
            }
            if (covered.dim() < b.space.dim()) {
                // g-orthocomplement of the rational eigenspaces inside the block
                Subspace rest = annihilator_wrt(covered, M.G()).intersect(b.space);
                Block nb = b;
                nb.tag = b.tag * 2 + 1;
                nb.signature.push_back(Rational(0));
                nb.space = rest;
                next.push_back(nb);
            }
        }
        blocks = std::move(next);
    }
    return blocks;
}

bool same_key(const Block& a, const Block& b) {
    return a.tag == b.tag && a.signature == b.signature && a.space.dim() == b.space.dim();
}

struct Frame {
    std::vector<Vector> f;   // g-orthogonal basis
    std::vector<Rational> w;
    std::vector<size_t> block;  // block id of each vector
    Matrix F;                // columns f
};

Frame frame_of(const InfinitesimalModel& M, const std::vector<Block>& blocks) {
    Frame fr;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        auto [vs, ws] = gram_schmidt(M.G(), blocks[bi].space.vectors());
        for (size_t i = 0; i < vs.size(); ++i) {
            fr.f.push_back(vs[i]);
            fr.w.push_back(ws[i]);
            fr.block.push_back(bi);
        }
    }
    fr.F = Matrix::from_cols(fr.f, M.dim());
    return fr;
}

}  // namespace

std::vector<Matrix> iso_candidates(const InfinitesimalModel& a, const InfinitesimalModel& b, size_t limit,
                                   bool* exhausted) {
    std::vector<Matrix> found;
    if (exhausted) *exhausted = false;
    size_t q = a.dim();
    if (b.dim() != q) return found;
    auto ba = invariant_blocks(a);
    auto bb = invariant_blocks(b);
    if (ba.size() != bb.size()) return found;
    // match blocks by key
    std::vector<size_t> match(ba.size());
    std::vector<bool> used(bb.size(), false);
    for (size_t i = 0; i < ba.size(); ++i) {
        bool ok = false;
        for (size_t j = 0; j < bb.size(); ++j)
            if (!used[j] && same_key(ba[i], bb[j])) {
                match[i] = j;
                used[j] = true;
                ok = true;
                break;
            }
        if (!ok) return found;
    }
    Frame fa = frame_of(a, ba), fb = frame_of(b, bb);
    if (fa.f.size() != q || fb.f.size() != q) return found;
    Tensor Ta = pullback(a.T(), fa.F), Ra = pullback(a.R(), fa.F);
    Tensor Tb = pullback(b.T(), fb.F), Rb = pullback(b.R(), fb.F);

    std::vector<size_t> img(q);
    std::vector<Rational> coef(q);  // image of f_i is coef[i] * fb_{img[i]}
    std::vector<bool> taken(q, false);
    size_t budget = search_budget();
    size_t nodes = 0;
    bool out_of_budget = false;

    auto consistent = [&](size_t t) {
        // all index tuples over 0..t that involve t
        for (size_t i = 0; i <= t; ++i)
            for (size_t j = 0; j <= t; ++j) {
                for (size_t k = 0; k <= t; ++k) {
                    if (i != t && j != t && k != t) continue;
                    Rational lhs = Ta.at(i, j, k);
                    Rational rhs = coef[i] * coef[j] * coef[k] * Tb.at(img[i], img[j], img[k]);
                    if (lhs != rhs) return false;
                }
                for (size_t k = 0; k <= t; ++k)
                    for (size_t l = 0; l <= t; ++l) {
                        if (i != t && j != t && k != t && l != t) continue;
                        Rational lhs = Ra.at(i, j, k, l);
                        Rational rhs = coef[i] * coef[j] * coef[k] * coef[l] * Rb.at(img[i], img[j], img[k], img[l]);
                        if (lhs != rhs) return false;
                    }
            }
        return true;
    };

    std::function<void(size_t)> rec = [&](size_t t) {
        if (found.size() >= limit || out_of_budget) return;
        if (t == q) {
            Matrix Img(q, q);
            for (size_t i = 0; i < q; ++i) Img.set_col(i, scale(fb.f[img[i]], coef[i]));
            Matrix Mx = Img * inverse(fa.F);
            if (iso_certificate_check({a, b, Mx})) found.push_back(Mx);
            return;
        }
        size_t target_block = match[fa.block[t]];
        for (size_t j = 0; j < q; ++j) {
            if (taken[j] || fb.block[j] != target_block) continue;
            auto s = rational_sqrt(fa.w[t] / fb.w[j]);
            if (!s) continue;
            for (int sign : {1, -1}) {
                if (++nodes > budget) {
                    out_of_budget = true;
                    return;
                }
                img[t] = j;
                coef[t] = sign > 0 ? *s : Rational(-*s);
                if (!consistent(t)) continue;
                taken[j] = true;
                rec(t + 1);
                taken[j] = false;
                if (found.size() >= limit || out_of_budget) return;
            }
        }
    };
    rec(0);
    if (exhausted) *exhausted = out_of_budget;
    return found;
}

IsoResult iso_decide(const InfinitesimalModel& a, const InfinitesimalModel& b) {
    require(a.dim() == b.dim(), ErrorKind::ShapeMismatch, "models have different dimensions");
    IsoResult res;
    std::string diff = fingerprint_difference(fingerprint(a), fingerprint(b));
    if (!diff.empty()) {
        res.verdict = IsoResult::Verdict::No;
        res.witness = diff;
        return res;
    }
    bool exhausted = false;
    auto cands = iso_candidates(a, b, 1, &exhausted);
    if (!cands.empty()) {
        res.verdict = IsoResult::Verdict::Yes;
        res.certificate = cands.front();
        res.witness = "certificate verified";
        return res;
    }
    res.witness = exhausted ? "search budget exhausted" : "no aligned-frame certificate found";
    return res;
}

}  // namespace natred

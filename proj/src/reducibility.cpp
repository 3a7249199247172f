#include "natred/reducibility.hpp"

#include <map>

namespace natred {

namespace {

const NumberField* field_of(const AlgSubspace& S) {
    for (const auto& v : S.vectors())
        for (const auto& x : v)
            if (x.field()) return x.field().get();
    return nullptr;
}

bool fields_compatible(const NumberField* a, const NumberField* b) { return !a || !b || a == b; }

Matrix torsion_endo(const Tensor& T, const Matrix& G, size_t x) {
    return endo_of_2form(contract(unit_vec<Rational>(T.n, x), T), G);
}

std::optional<Tensor> rational_tensor(const AlgTensor& t) {
    Tensor r(t.n, t.degree);
    for (size_t i = 0; i < t.c.size(); ++i) {
        if (!t.c[i].is_rational()) return std::nullopt;
        r.c[i] = t.c[i].rational_value();
    }
    return r;
}

Matrix columns_of(const Subspace& V) { return V.basis().transpose(); }

}  // namespace

Subspace torsion_kernel(const Tensor& T, const Matrix& G) {
    size_t n = T.n;
    (void)G;
    // x -| T = 0 iff sum_x v_x T(x, y, z) = 0 for all y, z
    std::vector<Vector> rows;
    for (size_t y = 0; y < n; ++y)
        for (size_t z = y + 1; z < n; ++z) {
            Vector r(n);
            bool any = false;
            for (size_t x = 0; x < n; ++x) {
                r[x] = T.at(x, y, z);
                if (!is_zero(r[x])) any = true;
            }
            if (any) rows.push_back(std::move(r));
        }
    return Subspace::kernel_of_rows(rows, n);
}

Subspace torsion_holonomy(const Tensor& T, const Matrix& G) {
    std::vector<Matrix> gens;
    for (size_t x = 0; x < T.n; ++x) gens.push_back(torsion_endo(T, G, x));
    return lie_closure(gens, T.n);
}

Reducibility torsion_reducible(const Tensor& T, const Matrix& G) {
    size_t n = T.n;
    require(T.degree == 3 && G.rows() == n, ErrorKind::ShapeMismatch, "torsion must be a 3-form on m");
    Reducibility out;
    Subspace K = torsion_kernel(T, G);
    out.witness.flat_factor = K;
    if (K.dim() == n) {
        out.reducible = n >= 2;
        return out;
    }
    Subspace V = orth_complement(K, G);
    std::vector<Matrix> gens;
    for (size_t x = 0; x < n; ++x) gens.push_back(torsion_endo(T, G, x));
    ModuleSplit split = orthogonal_split(gens, G, V);
    AlgTensor Ta = T.convert<Alg>();
    AlgMatrix aG = convert<Alg>(G);
    for (const auto& blk : split.blocks) {
        AlgMatrix P = orthogonal_projector(aG, blk);
        out.witness.torsions.push_back(pullback(Ta, P));
        out.witness.factors.push_back(blk);
    }
    out.witness.complete = split.complete;
    out.witness.irrational = split.irrational;
    out.reducible = K.dim() > 0 || out.witness.factors.size() > 1;
    return out;
}

bool witness_valid(const SplittingWitness& w, const Tensor& T, const Matrix& G) {
    if (w.factors.size() != w.torsions.size()) return false;
    if (w.flat_factor != torsion_kernel(T, G)) return false;
    AlgMatrix aG = convert<Alg>(G);
    AlgSubspace flat = to_alg(w.flat_factor);
    size_t total = flat.dim();
    for (size_t i = 0; i < w.factors.size(); ++i) {
        total += w.factors[i].dim();
        for (const auto& u : w.factors[i].vectors()) {
            for (const auto& v : flat.vectors())
                if (!is_zero(form_eval(aG, u, v))) return false;
            for (size_t j = i + 1; j < w.factors.size(); ++j) {
                if (!fields_compatible(field_of(w.factors[i]), field_of(w.factors[j]))) continue;
                for (const auto& v : w.factors[j].vectors())
                    if (!is_zero(form_eval(aG, u, v))) return false;
            }
        }
    }
    if (total != T.n) return false;
    // group partial sums by field; each group must be rational
    std::map<const NumberField*, AlgTensor> sums;
    for (size_t i = 0; i < w.torsions.size(); ++i) {
        const NumberField* f = field_of(w.factors[i]);
        auto it = sums.find(f);
        if (it == sums.end()) sums.emplace(f, w.torsions[i]);
        else it->second = it->second + w.torsions[i];
    }
    Tensor acc(T.n, 3);
    for (const auto& [f, s] : sums) {
        auto r = rational_tensor(s);
        if (!r) return false;
        acc = acc + *r;
    }
    return acc == T;
}

bool stabilizer_is_blockwise(const SplittingWitness& w, const Tensor& T, const Matrix& G) {
    size_t n = T.n;
    Subspace full = stabilizer(std::vector<Tensor>{T}, G);
    AlgMatrix aG = convert<Alg>(G);
    AlgTensor Ta = T.convert<Alg>();
    size_t k = w.flat_factor.dim();
    size_t total = k * (k - (k > 0 ? 1 : 0)) / 2;  // so(ker T) stabilizes T
    for (size_t i = 0; i < w.factors.size(); ++i) {
        const auto& blk = w.factors[i];
        std::vector<AlgVector> ws;
        auto vs = blk.vectors();
        for (size_t a = 0; a < vs.size(); ++a)
            for (size_t b = a + 1; b < vs.size(); ++b) ws.push_back(wedge_endo(vs[a], vs[b], aG).flatten());
        AlgSubspace space = AlgSubspace::span(n * n, ws);
        AlgSubspace st = stabilizer_within(space, std::vector<AlgTensor>{w.torsions[i]});
        for (const auto& v : st.vectors())
            if (!act(AlgMatrix::unflatten(v, n, n), Ta).is_zero()) return false;
        total += st.dim();
    }
    return total == full.dim();
}

std::vector<Matrix> model_generators(const InfinitesimalModel& M) {
    std::vector<Matrix> gens;
    size_t n = M.dim();
    for (size_t x = 0; x < n; ++x)
        if (!M.T_endo(x).is_zero()) gens.push_back(M.T_endo(x));
    for (size_t x = 0; x < n; ++x)
        for (size_t y = x + 1; y < n; ++y)
            if (!M.R_endo(x, y).is_zero()) gens.push_back(M.R_endo(x, y));
    return gens;
}

InfinitesimalModel restrict_model(const InfinitesimalModel& M, const Subspace& V) {
    Matrix P = columns_of(V);
    Matrix g = P.transpose() * M.G() * P;
    return InfinitesimalModel(g, pullback(M.T(), P), pullback(M.R(), P));
}

ModelSplitting split_into_irreducibles(const InfinitesimalModel& M) {
    ModelSplitting out;
    size_t n = M.dim();
    if (n == 0) return out;
    ModuleSplit split = orthogonal_split(model_generators(M), M.G(), Subspace::full(n));
    out.complete = split.complete;
    // flat blocks are merged into one Euclidean factor
    std::vector<AlgSubspace> flat_blocks;
    for (const auto& blk : split.blocks) {
        ModelFactor f;
        f.space = blk;
        if (auto r = to_rational(blk)) {
            f.model = restrict_model(M, *r);
            f.flat = f.model->T().is_zero() && f.model->R().is_zero();
        } else {
            AlgMatrix P = AlgMatrix(convert<Alg>(blk.basis().transpose()));
            f.flat = pullback(M.T().convert<Alg>(), P).is_zero() && pullback(M.R().convert<Alg>(), P).is_zero();
        }
        if (f.flat) flat_blocks.push_back(blk);
        else out.factors.push_back(std::move(f));
    }
    if (!flat_blocks.empty()) {
        AlgSubspace sum = flat_blocks[0];
        for (size_t i = 1; i < flat_blocks.size(); ++i) sum = sum + flat_blocks[i];
        ModelFactor f;
        f.space = sum;
        f.flat = true;
        if (auto r = to_rational(sum)) f.model = restrict_model(M, *r);
        out.factors.push_back(std::move(f));
    }
    return out;
}

bool model_irreducible(const InfinitesimalModel& M) {
    return is_irreducible_module(model_generators(M), M.G(), Subspace::full(M.dim()));
}

// ---------------------------------------------------------------- ideals

Matrix kostant_gram_full(const ReductiveDecomposition& dec) {
    KostantForm kf = kostant_form(dec);
    require(kf.k.dim() == dec.dim(), ErrorKind::NotTransvection, "[m,m]_h does not span h");
    size_t n = dec.dim();
    Matrix Pm = Matrix::from_cols(kf.basis, n);
    Matrix Pinv = inverse(Pm);
    return Pinv.transpose() * kf.gram * Pinv;
}

bool ideal_split_valid(const ReductiveDecomposition& dec, const IdealSplit& s) {
    if (!s.reducible || s.g1.is_zero() || s.g2.is_zero()) return false;
    const auto& alg = dec.algebra();
    size_t n = dec.dim();
    if (!s.g1.intersect(s.g2).is_zero() || (s.g1 + s.g2).dim() != n) return false;
    if (!is_ideal(alg, s.g1) || !is_ideal(alg, s.g2)) return false;
    Matrix Gk = kostant_gram_full(dec);
    for (const auto& u : s.g1.vectors())
        for (const auto& v : s.g2.vectors())
            if (!is_zero(form_eval(Gk, u, v))) return false;
    Subspace h = dec.h();
    if (s.h1 != s.g1.intersect(h) || s.h2 != s.g2.intersect(h)) return false;
    return (s.h1 + s.h2) == h;
}

namespace {

// Generalized kernel of p(C).
Subspace gen_kernel(const Poly& p, const Matrix& C) {
    Matrix A = eval_poly(p, C);
    Matrix Ak = A;
    for (size_t i = 1; i < C.rows(); ++i) Ak = Ak * A;
    return kernel(Ak);
}

// Nontrivial monic factor of a squarefree polynomial, if one can be found.
std::optional<Poly> find_factor(const Poly& sf, const Matrix& C) {
    auto roots = sf.rational_roots();
    if (!roots.empty()) return Poly(std::vector<Rational>{-roots.front(), Rational(1)});
    auto K = std::make_shared<const NumberField>(NumberField{sf.monic()});
    try {
        AlgMatrix A = convert<Alg>(C);
        Alg alpha = Alg::generator(K);
        for (size_t i = 0; i < A.rows(); ++i) A(i, i) = A(i, i) - alpha;
        kernel(A);
    } catch (const ZeroDivisorError& e) {
        if (e.factor().degree() >= 1 && e.factor().degree() < sf.degree()) return e.factor();
    }
    return std::nullopt;
}

}  // namespace

IdealSplit ideal_split_check(const ReductiveDecomposition& dec) {
    require(is_transvection(dec), ErrorKind::NotTransvection, "ideal splitting needs a transvection decomposition");
    const auto& alg = dec.algebra();
    size_t n = dec.dim(), p = dec.p();
    Matrix Gk = kostant_gram_full(dec);
    // centroid elements C: [C, ad x] = 0, Gk C symmetric, C h in h
    std::vector<Vector> rows;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vector r(n * n);
            for (size_t k = 0; k < n; ++k) {
                r[k * n + j] += Gk(i, k);
                r[k * n + i] -= Gk(j, k);
            }
            rows.push_back(std::move(r));
        }
    for (size_t k = p; k < n; ++k)
        for (size_t a = 0; a < p; ++a) {
            Vector r(n * n);
            r[k * n + a] = 1;
            rows.push_back(std::move(r));
        }
    for (const auto& A : alg.ad_basis())
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Vector r(n * n);
                bool any = false;
                for (size_t k = 0; k < n; ++k) {
                    if (!is_zero(A(k, j))) r[i * n + k] += A(k, j), any = true;
                    if (!is_zero(A(i, k))) r[k * n + j] -= A(i, k), any = true;
                }
                if (any) rows.push_back(std::move(r));
            }
    Subspace sol = Subspace::kernel_of_rows(rows, n * n);
    std::vector<Matrix> C = matrices_of(sol, n);
    std::vector<Matrix> cands = C;
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j) {
            cands.push_back(C[i] + C[j]);
            cands.push_back(C[i] * C[j] + C[j] * C[i]);
        }
    IdealSplit out;
    out.route = "centroid";
    Subspace h = dec.h();
    bool irrational = false;
    for (const auto& S : cands) {
        Poly sf = minimal_polynomial(S).squarefree_part().monic();
        if (sf.degree() <= 1) continue;
        auto g = find_factor(sf, S);
        if (!g) {
            irrational = true;
            continue;
        }
        Poly q, r;
        Poly::divmod(sf, *g, q, r);
        Subspace W1 = gen_kernel(*g, S), W2 = gen_kernel(q, S);
        if (W1.is_zero() || W2.is_zero()) continue;
        out.reducible = true;
        out.g1 = W1;
        out.g2 = W2;
        out.h1 = W1.intersect(h);
        out.h2 = W2.intersect(h);
        return out;
    }
    if (irrational) {
        out.reducible = true;
        out.route = "centroid (irrational eigenvalues)";
    }
    return out;
}

IdealSplit ideals_from_torsion_witness(const ReductiveDecomposition& dec, const SplittingWitness& w) {
    IdealSplit out;
    out.route = "torsion witness";
    std::vector<Subspace> pieces;
    for (const auto& f : w.factors) {
        auto r = to_rational(f);
        if (!r) return out;
        pieces.push_back(*r);
    }
    if (!w.flat_factor.is_zero()) pieces.push_back(w.flat_factor);
    if (pieces.size() < 2) return out;
    const auto& alg = dec.algebra();
    size_t n = dec.dim();
    auto lift = [&](const Subspace& mi) {
        std::vector<Vector> ms, hs;
        for (const auto& v : mi.vectors()) ms.push_back(dec.embed_m(v));
        for (size_t a = 0; a < ms.size(); ++a)
            for (size_t b = a + 1; b < ms.size(); ++b) hs.push_back(dec.h_part(alg.bracket(ms[a], ms[b])));
        return std::pair{Subspace::span(n, hs), Subspace::span(n, ms)};
    };
    auto [h1, m1] = lift(pieces[0]);
    Subspace h2(n), m2(n);
    for (size_t i = 1; i < pieces.size(); ++i) {
        auto [hi, mi] = lift(pieces[i]);
        h2 = h2 + hi;
        m2 = m2 + mi;
    }
    out.h1 = h1;
    out.h2 = h2;
    out.g1 = h1 + m1;
    out.g2 = h2 + m2;
    out.reducible = true;
    out.reducible = ideal_split_valid(dec, out);
    return out;
}

}  // namespace natred

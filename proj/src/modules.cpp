#include "natred/modules.hpp"

#include <algorithm>

namespace natred {

AlgSubspace to_alg(const Subspace& S) {
    std::vector<AlgVector> vs;
    for (const auto& v : S.vectors()) vs.push_back(convert<Alg>(v));
    return AlgSubspace::span(S.ambient_dim(), vs);
}

std::optional<Subspace> to_rational(const AlgSubspace& S) {
    std::vector<Vector> vs;
    for (const auto& v : S.vectors()) {
        Vector r;
        for (const auto& x : v) {
            if (!x.is_rational()) return std::nullopt;
            r.push_back(x.rational_value());
        }
        vs.push_back(std::move(r));
    }
    return Subspace::span(S.ambient_dim(), vs);
}

namespace {

bool is_scalar(const Matrix& S) {
    for (size_t i = 0; i < S.rows(); ++i)
        for (size_t j = 0; j < S.cols(); ++j)
            if (i == j ? S(i, i) != S(0, 0) : !is_zero(S(i, j))) return false;
    return true;
}

struct Pending {
    Subspace V;
    Matrix S;  // non-scalar commutant element in V coordinates
    Poly f;    // its minimal polynomial, no rational roots
};

Subspace lift(const Subspace& V, const Subspace& W) {
    std::vector<Vector> vs;
    for (const auto& w : W.vectors()) vs.push_back(V.from_coordinates(w));
    return Subspace::span(V.ambient_dim(), vs);
}

// Splits V (V coordinates) along W = a nonzero proper invariant subspace.
std::pair<Subspace, Subspace> split_along(const Matrix& G, const Subspace& V, const Subspace& W) {
    Matrix Gv = restrict_form(G, V);
    Subspace Wc = annihilator_wrt(W, Gv);
    return {lift(V, W), lift(V, Wc)};
}

// Kernel of S - alpha over Q(alpha), alpha a root of f. Throws ZeroDivisorError when
// f is found to be reducible.
AlgSubspace eigenspace_over(const Matrix& S, const std::shared_ptr<const NumberField>& /*K*/, const Alg& alpha) {
    size_t d = S.rows();
    AlgMatrix A = convert<Alg>(S);
    for (size_t i = 0; i < d; ++i) A(i, i) = A(i, i) - alpha;
    return kernel(A);
}

void rsplit(const std::vector<Matrix>& gens, const Matrix& G, const Subspace& V, std::vector<Subspace>& done,
            std::vector<Pending>& pending) {
    if (V.dim() <= 1) {
        if (V.dim() == 1) done.push_back(V);
        return;
    }
    auto C = symmetric_commutant(gens, G, V);
    if (C.size() <= 1) {
        done.push_back(V);
        return;
    }
    std::vector<Matrix> cands;
    for (const auto& c : C)
        if (!is_scalar(c)) cands.push_back(c);
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j) {
            cands.push_back(C[i] + C[j]);
            cands.push_back(C[i] * C[j] + C[j] * C[i]);
        }
    std::optional<Pending> best;
    for (const auto& S : cands) {
        if (is_scalar(S)) continue;
        Poly f = minimal_polynomial(S);
        auto roots = f.rational_roots();
        if (!roots.empty()) {
            Matrix sh = S;
            for (size_t i = 0; i < sh.rows(); ++i) sh(i, i) -= roots.front();
            auto [a, b] = split_along(G, V, kernel(sh));
            rsplit(gens, G, a, done, pending);
            rsplit(gens, G, b, done, pending);
            return;
        }
        auto K = std::make_shared<const NumberField>(NumberField{f.monic()});
        try {
            eigenspace_over(S, K, Alg::generator(K));
        } catch (const ZeroDivisorError& e) {
            Subspace W = kernel(eval_poly(e.factor(), S));
            if (W.dim() > 0 && W.dim() < V.dim()) {
                auto [a, b] = split_along(G, V, W);
                rsplit(gens, G, a, done, pending);
                rsplit(gens, G, b, done, pending);
                return;
            }
        }
        if (!best || f.degree() < best->f.degree()) best = Pending{V, S, f};
    }
    if (best) pending.push_back(*best);
    else done.push_back(V);
}

}  // namespace

ModuleSplit orthogonal_split(const std::vector<Matrix>& gens, const Matrix& G, const Subspace& V) {
    std::vector<Subspace> done;
    std::vector<Pending> pending;
    rsplit(gens, G, V, done, pending);
    ModuleSplit out;
    for (const auto& s : done) out.blocks.push_back(to_alg(s));
    std::vector<AlgMatrix> agens;
    for (const auto& A : gens) agens.push_back(convert<Alg>(A));
    AlgMatrix aG = convert<Alg>(G);
    for (const auto& pd : pending) {
        if (pd.f.degree() != 2) {
            out.complete = false;
            out.blocks.push_back(to_alg(pd.V));
            continue;
        }
        auto K = std::make_shared<const NumberField>(NumberField{pd.f.monic()});
        Alg alpha = Alg::generator(K);
        Alg conj = Alg(-pd.f.monic().coeff(1)) - alpha;
        AlgSubspace Va = to_alg(pd.V);
        // V's basis rows, in the order used for V coordinates
        std::vector<AlgVector> vb;
        for (const auto& v : pd.V.vectors()) vb.push_back(convert<Alg>(v));
        for (const Alg& root : {alpha, conj}) {
            AlgSubspace W = eigenspace_over(pd.S, K, root);
            std::vector<AlgVector> amb;
            for (const auto& w : W.vectors()) {
                AlgVector x = zero_vec<Alg>(V.ambient_dim());
                for (size_t k = 0; k < w.size(); ++k)
                    if (!is_zero(w[k])) axpy(x, w[k], vb[k]);
                amb.push_back(std::move(x));
            }
            AlgSubspace blk = AlgSubspace::span(V.ambient_dim(), amb);
            if (symmetric_commutant(agens, aG, blk).size() > 1) out.complete = false;
            out.blocks.push_back(std::move(blk));
        }
        out.irrational = true;
    }
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

bool is_irreducible_module(const std::vector<Matrix>& gens, const Matrix& G, const Subspace& V) {
    if (V.dim() == 0) return false;
    return symmetric_commutant(gens, G, V).size() <= 1;
}

}  // namespace natred

#pragma once

#include "natred/linalg.hpp"

#include <memory>
#include <vector>

namespace natred {

using AlgMatrix = Mat<Alg>;
using AlgVector = Vec<Alg>;
using AlgSubspace = BasicSubspace<Alg>;

// Self-adjoint (w.r.t. G) endomorphisms of V commuting with every generator,
// as matrices in the coordinates of V's stored basis. V must be invariant.
template <class F>
std::vector<Mat<F>> symmetric_commutant(const std::vector<Mat<F>>& gens, const Mat<F>& G, const BasicSubspace<F>& V) {
    size_t d = V.dim();
    if (d == 0) return {};
    Mat<F> Gv = restrict_form(G, V);
    std::vector<Mat<F>> gv;
    {
        RowReducer<F> rr(d * d);
        for (const auto& A : gens) {
            Mat<F> r = restrict_to(A, V);
            if (rr.add(r.flatten())) gv.push_back(std::move(r));
        }
    }
    // Unknown S(i,j) at column i*d + j.
    std::vector<Vec<F>> rows;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
            // (Gv S)(i,j) - (Gv S)(j,i) = 0
            Vec<F> r(d * d, F(0));
            for (size_t k = 0; k < d; ++k) {
                r[k * d + j] += Gv(i, k);
                r[k * d + i] -= Gv(j, k);
            }
            rows.push_back(std::move(r));
        }
    for (const auto& A : gv)
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                // (S A - A S)(i,j)
                Vec<F> r(d * d, F(0));
                for (size_t k = 0; k < d; ++k) {
                    if (!is_zero(A(k, j))) r[i * d + k] += A(k, j);
                    if (!is_zero(A(i, k))) r[k * d + j] -= A(i, k);
                }
                rows.push_back(std::move(r));
            }
    auto ker = BasicSubspace<F>::kernel_of_rows(rows, d * d);
    std::vector<Mat<F>> out;
    for (size_t a = 0; a < ker.dim(); ++a) out.push_back(Mat<F>::unflatten(ker.vector(a), d, d));
    return out;
}

// Orthogonal decomposition of an invariant subspace V of (R^n, G) under skew generators
// into irreducible submodules. Blocks are rational when possible; otherwise they live
// over Q(alpha) for a root alpha of a commutant minimal polynomial.
struct ModuleSplit {
    std::vector<AlgSubspace> blocks;  // sorted by (dim, echelon basis)
    bool complete = true;             // false if some block may still be reducible
    bool irrational = false;
};

ModuleSplit orthogonal_split(const std::vector<Matrix>& gens, const Matrix& G, const Subspace& V);

// True iff V is an irreducible module (symmetric commutant = scalars).
bool is_irreducible_module(const std::vector<Matrix>& gens, const Matrix& G, const Subspace& V);

AlgSubspace to_alg(const Subspace& S);
// Rational subspace if every basis entry is rational.
std::optional<Subspace> to_rational(const AlgSubspace& S);

}  // namespace natred

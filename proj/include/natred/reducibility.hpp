#pragma once

#include "natred/decomposition.hpp"
#include "natred/modules.hpp"

#include <string>
#include <vector>

namespace natred {

using AlgTensor = BasicTensor<Alg>;

struct SplittingWitness {
    std::vector<AlgSubspace> factors;  // non-flat blocks, mutually orthogonal
    std::vector<AlgTensor> torsions;   // T_i, supported on factors[i]
    Subspace flat_factor;              // ker T
    bool complete = true;              // every non-flat factor proven irreducible
    bool irrational = false;
};

struct Reducibility {
    bool reducible = false;
    SplittingWitness witness;
};

Subspace torsion_kernel(const Tensor& T, const Matrix& G);
// Lie closure of the endomorphisms x -| T, flattened.
Subspace torsion_holonomy(const Tensor& T, const Matrix& G);
Reducibility torsion_reducible(const Tensor& T, const Matrix& G);
// Reassembles sum T_i, checks orthogonality of the factors and that the flat factor is ker T.
bool witness_valid(const SplittingWitness& w, const Tensor& T, const Matrix& G);
// Stabilizer of T in so(m) equals the sum of the blockwise stabilizers.
bool stabilizer_is_blockwise(const SplittingWitness& w, const Tensor& T, const Matrix& G);

// Model-level splitting: orthogonal decomposition of m invariant under all T_x and R(x,y).
struct ModelFactor {
    AlgSubspace space;
    bool flat = false;
    std::optional<InfinitesimalModel> model;  // when the block is rational
};
struct ModelSplitting {
    std::vector<ModelFactor> factors;
    bool complete = true;
    // a Euclidean factor of dimension >= 2 splits further into lines
    bool reducible() const {
        return factors.size() > 1 || (factors.size() == 1 && factors[0].flat && factors[0].space.dim() > 1);
    }
};
std::vector<Matrix> model_generators(const InfinitesimalModel& M);
ModelSplitting split_into_irreducibles(const InfinitesimalModel& M);
bool model_irreducible(const InfinitesimalModel& M);
// Model restricted to a rational subspace of m (in the subspace's basis).
InfinitesimalModel restrict_model(const InfinitesimalModel& M, const Subspace& V);

struct IdealSplit {
    bool reducible = false;
    Subspace g1, g2;  // ideals of the algebra (adapted coordinates)
    Subspace h1, h2;
    std::string route;  // which construction produced the split
};
// Splitting into two nonzero ideals orthogonal for the Kostant form, compatible with h.
IdealSplit ideal_split_check(const ReductiveDecomposition& dec);
// The construction h_i = [m_i, m_i]_h from a rational torsion witness; reducible only if
// the resulting pieces are orthogonal ideals.
IdealSplit ideals_from_torsion_witness(const ReductiveDecomposition& dec, const SplittingWitness& w);
// Kostant form in adapted coordinates (whole algebra; requires a transvection decomposition).
Matrix kostant_gram_full(const ReductiveDecomposition& dec);
bool ideal_split_valid(const ReductiveDecomposition& dec, const IdealSplit& s);

}  // namespace natred

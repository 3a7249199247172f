#pragma once

#include "natred/extension.hpp"
#include "natred/io.hpp"

#include <string>
#include <vector>

namespace natred {

// Names accepted by catalog(); flat_Rn takes its dimension as flat_Rn(N).
std::vector<std::string> catalog_names();
Document catalog(const std::string& name);

// m = h^perp for scale * Killing, metric = scale * Killing on m.
ReductiveDecomposition from_subalgebra(const MetricLieAlgebra& g, const Subspace& h, const Rational& scale);

// Matrices commuting with every ad(x), flattened.
Subspace centroid(const MetricLieAlgebra& alg);
// Semisimple and the centroid is a field (R or C).
bool is_simple(const MetricLieAlgebra& alg);

struct TransvectionConditions {
    bool i_holds = false;    // [m,m]_h = h
    bool ii_holds = false;   // g simple
    bool iii_holds = false;  // effective
};
TransvectionConditions transvection_conditions(const ReductiveDecomposition& dec);

// [m,m] in h, for a simple noncompact algebra.
bool symmetric_pair_verify(const ReductiveDecomposition& dec);

struct DualResult {
    ReductiveDecomposition dual;  // same adapted coordinates as the input
    BilinearForm::Inertia killing_m1_before, killing_m1_after;
    bool signature_flipped = false;
    bool naturally_reductive = false;
    bool complex_iso_verified = false;  // x -> ix on m1 intertwines the brackets
};
// g1: an ideal (adapted coordinates) forming a symmetric pair with h cap g1.
DualResult partial_dual(const ReductiveDecomposition& dec, const Subspace& g1);

}  // namespace natred

#pragma once

#include "natred/forms.hpp"
#include "natred/lie.hpp"

#include <optional>
#include <string>
#include <vector>

namespace natred {

class ReductiveDecomposition;

// (m, g) with torsion 3-form T(x,y,z) = g(T(x,y),z) and curvature
// R(x,y,u,v) = g(R(x,y)u, v).
class InfinitesimalModel {
public:
    InfinitesimalModel() = default;
    // Checks shapes, positivity of g, alternation of T and the symmetries of R.
    InfinitesimalModel(Matrix metric, Tensor T, Tensor R);

    size_t dim() const { return g_.dim(); }
    const BilinearForm& metric() const { return g_; }
    const Matrix& G() const { return g_.gram(); }
    const Matrix& G_inv() const { return ginv_; }
    const Tensor& T() const { return T_; }
    const Tensor& R() const { return R_; }

    // T_x : y -> T(x,y).
    const Matrix& T_endo(size_t x) const { return tend_[x]; }
    Vector T_vec(const Vector& x, const Vector& y) const;
    // R(e_x, e_y) as an endomorphism.
    const Matrix& R_endo(size_t x, size_t y) const { return rend_[x * dim() + y]; }
    Matrix R_endo(const Vector& x, const Vector& y) const;
    // span of all R(x, y), flattened.
    Subspace image_R() const;

    bool operator==(const InfinitesimalModel& o) const { return G() == o.G() && T_ == o.T_ && R_ == o.R_; }

private:
    BilinearForm g_;
    Matrix ginv_;
    Tensor T_, R_;
    std::vector<Matrix> tend_, rend_;
};

struct AxiomReport {
    bool parallel_ok = false;
    bool bianchi1_ok = false;
    bool bianchi2_ok = false;
    Rational parallel_residual, bianchi1_residual, bianchi2_residual;
    bool ok() const { return parallel_ok && bianchi1_ok && bianchi2_ok; }
};

AxiomReport verify_axioms(const InfinitesimalModel& M);

// {h in so(m) : h.T = 0, h.R = 0}, flattened matrices.
Subspace nomizu_full_isotropy(const InfinitesimalModel& M);

// Lie algebra on h + m with [h,h'] the commutator, [h,x] = hx, [x,y] = -R(x,y) - T(x,y);
// h occupies the first coordinates. The isotropy basis is kept for reference.
struct NomizuAlgebra {
    MetricLieAlgebra algebra;
    size_t p = 0;  // dim h
    std::vector<Matrix> isotropy;
};

// Bracket on L + m where L is the Lie closure of stabilizer and im R; no checks.
// Its Jacobi residual vanishes iff the model satisfies the axioms.
NomizuAlgebra nomizu_bracket_algebra(const InfinitesimalModel& M);
// Throws AxiomsFailed when verify_axioms does not pass.
NomizuAlgebra nomizu_symmetry_algebra(const InfinitesimalModel& M);

ReductiveDecomposition transvection_algebra(const InfinitesimalModel& M);
InfinitesimalModel model_from_decomposition(const ReductiveDecomposition& dec);

struct ModelIsomorphism {
    InfinitesimalModel source, target;
    Matrix M;  // source coordinates -> target coordinates
};

bool iso_certificate_check(const ModelIsomorphism& cert);
// Push forward: (M.T)(x,y,z) = T(M^-1 x, M^-1 y, M^-1 z).
Tensor push_forward(const Tensor& S, const Matrix& M);

struct IsoResult {
    enum class Verdict { Yes, No, Undecided } verdict = Verdict::Undecided;
    std::optional<Matrix> certificate;
    std::string witness;
};

const char* verdict_name(IsoResult::Verdict v);

// Invariants that any isomorphism preserves.
struct ModelFingerprint {
    size_t dim = 0;
    size_t ker_T = 0;
    Poly torsion_gram;  // charpoly of S(x,y) = -1/2 tr(T_x T_y) w.r.t. g
    Poly ricci;         // charpoly of the symmetrized Ricci-type contraction
    Poly curvature_operator;  // charpoly of R on so(m)
    size_t transvection_dim = 0;
    BilinearForm::Inertia killing;
};
ModelFingerprint fingerprint(const InfinitesimalModel& M);
// Empty when equal, else the name of the first differing invariant.
std::string fingerprint_difference(const ModelFingerprint& a, const ModelFingerprint& b);

// Search budget from NATRED_SEARCH_BUDGET (default 200000 nodes).
size_t search_budget();

IsoResult iso_decide(const InfinitesimalModel& a, const InfinitesimalModel& b);
// All isometries found by the bounded search, up to `limit`; used by the extension module.
std::vector<Matrix> iso_candidates(const InfinitesimalModel& a, const InfinitesimalModel& b, size_t limit,
                                   bool* exhausted = nullptr);

// Operators used by fingerprints.
Matrix torsion_gram_operator(const InfinitesimalModel& M);
Matrix ricci_operator(const InfinitesimalModel& M);

}  // namespace natred

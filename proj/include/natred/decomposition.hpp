#pragma once

#include "natred/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace natred {

// g = h + m with a metric on m. Internally the algebra is rebased so that h spans
// the first p coordinates and m the remaining q, in the bases given by the caller.
class ReductiveDecomposition {
public:
    ReductiveDecomposition() = default;

    // h_rows, m_rows: bases (rows) in the coordinates of alg; metric is the Gram
    // matrix of g on the m_rows basis. Checks h + m = g, h a subalgebra, [h,m] in m,
    // and positivity of the metric.
    static ReductiveDecomposition create(const MetricLieAlgebra& alg, const Matrix& h_rows, const Matrix& m_rows,
                                         const Matrix& metric);
    // Algebra already adapted: h = e_0..e_{p-1}.
    static ReductiveDecomposition adapted(const MetricLieAlgebra& alg, size_t p, const Matrix& metric);

    const MetricLieAlgebra& algebra() const { return alg_; }
    size_t p() const { return p_; }
    size_t q() const { return alg_.dim() - p_; }
    size_t dim() const { return alg_.dim(); }
    const BilinearForm& metric() const { return g_; }
    const Matrix& G() const { return g_.gram(); }

    Subspace h() const { return Subspace::coordinate(dim(), 0, p_); }
    Subspace m() const { return Subspace::coordinate(dim(), p_, dim()); }
    Vector h_coords(const Vector& v) const { return Vector(v.begin(), v.begin() + p_); }
    Vector m_coords(const Vector& v) const { return Vector(v.begin() + p_, v.end()); }
    Vector embed_h(const Vector& hc) const;
    Vector embed_m(const Vector& mc) const;
    Vector h_part(const Vector& v) const { return embed_h(h_coords(v)); }
    Vector m_part(const Vector& v) const { return embed_m(m_coords(v)); }

    // ad(e_a)|m as a q x q matrix, a < p.
    Matrix isotropy(size_t a) const;
    Matrix isotropy(const Vector& hc) const;
    std::vector<Matrix> isotropy_all() const;

    // Caller-facing data as given to create().
    const MetricLieAlgebra& original_algebra() const { return orig_; }
    const Matrix& h_rows() const { return h_rows_; }
    const Matrix& m_rows() const { return m_rows_; }

private:
    MetricLieAlgebra alg_, orig_;
    size_t p_ = 0;
    BilinearForm g_;
    Matrix h_rows_, m_rows_;
};

struct DecompositionReport {
    bool subalgebra = false;
    bool reductive = false;  // [h, m] in m
    bool metric_positive = false;
    bool naturally_reductive = false;
    bool effective = false;
    bool transvection = false;  // im R = ad(h)
    Rational nr_residual;
    bool ok() const { return subalgebra && reductive && metric_positive && naturally_reductive; }
};

DecompositionReport check_naturally_reductive(const ReductiveDecomposition& dec);
void require_naturally_reductive(const ReductiveDecomposition& dec);
bool is_effective(const ReductiveDecomposition& dec);
bool is_transvection(const ReductiveDecomposition& dec);

struct KostantForm {
    Subspace k;                  // [m,m]_h + m, adapted coordinates
    std::vector<Vector> basis;   // [m,m]_h basis first, then the m coordinate vectors
    size_t hdim = 0;             // dim [m,m]_h
    Matrix gram;                 // form on `basis`
    size_t solution_dim = 0;     // dimension of the homogeneous solution space (0 = unique)
    Rational invariance_residual;
};
KostantForm kostant_form(const ReductiveDecomposition& dec);

// Skew maps of (m, g) commuting with the isotropy and annihilating T0; flattened q x q.
Subspace s_of_g(const ReductiveDecomposition& dec);
Subspace flat_directions(const ReductiveDecomposition& dec);

struct AbelianIdeal {
    Subspace a;
    bool certified = false;
    size_t enlargements = 0;  // enlargement steps found by the certification pass
};
AbelianIdeal maximal_abelian_ideal(const ReductiveDecomposition& dec);

struct FiberDecomposition {
    Subspace h_plus, h_minus, m_plus, m_minus, m_a;  // adapted coordinates
    Subspace a_prime;
    std::vector<Vector> h_plus_basis;  // pairs (h_i, rho(h_i)) with h_i + rho(h_i) in a'
    std::vector<Vector> rho_images;
    Vector rho(const Vector& h) const;  // h in h_plus
};
FiberDecomposition fiber_decomposition(const ReductiveDecomposition& dec, const Subspace& a);

struct BaseSpace {
    ReductiveDecomposition base;
    Subspace h0;
    std::vector<Vector> h0_basis, m_minus_basis;  // bases used for the quotient, adapted coordinates
};
BaseSpace base_space(const ReductiveDecomposition& dec, const Subspace& a, const FiberDecomposition& fib);

// (k,B)-extension input data.
struct ExtensionSpec {
    ReductiveDecomposition base;
    std::vector<Matrix> k_action;   // q x q matrices on m
    std::vector<Rational> k_bracket;  // l^3 structure constants
    Matrix B;                       // l x l
    size_t l() const { return k_action.size(); }
};

struct CanonicalBase {
    ExtensionSpec spec;
    AbelianIdeal ideal;
    FiberDecomposition fiber;
    size_t h0_dim = 0, m0_dim = 0, n_dim = 0;
    bool normal_form = false;
    bool k_in_s = false;
};
CanonicalBase canonical_base(const ReductiveDecomposition& dec);

enum class SpaceType { TypeI, TypeII };
const char* type_name(SpaceType t);
SpaceType classify_type(const ReductiveDecomposition& dec);

// Center of the algebra restricted to m and its orthocomplement m0 (coordinates of m).
struct NormalFormSplit {
    Subspace Rn;  // in m coordinates
    Subspace m0;
    bool ok = false;
};
NormalFormSplit normal_form_split(const ReductiveDecomposition& dec);

}  // namespace natred

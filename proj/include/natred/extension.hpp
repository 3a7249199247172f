#pragma once

#include "natred/decomposition.hpp"
#include "natred/reducibility.hpp"

#include <optional>
#include <string>
#include <vector>

namespace natred {

struct SpecReport {
    bool shapes = false;
    bool skew = false;
    bool base_transvection = false;
    bool base_normal_form = false;
    bool in_s = false;         // every action lies in s(base)
    bool faithful = false;
    bool bracket_ok = false;   // k_bracket is a Lie bracket matching commutators of the actions
    bool B_positive = false;
    bool B_invariant = false;
    ErrorKind failure_kind = ErrorKind::SpecInvalid;
    std::string failure;  // first failing check, empty when ok
    bool ok() const { return failure.empty(); }
};

SpecReport validate_spec(const ExtensionSpec& spec);
void require_valid_spec(const ExtensionSpec& spec);

// Basis of g(k): h (p) | k (l) | n (l) | m (q).
struct ExtensionResult {
    ReductiveDecomposition algebra;  // (h + k) + (n + m) with metric B + g0
    InfinitesimalModel model;        // torsion and curvature from the closed formulas
    ReductiveDecomposition transvection;
    Subspace diagonal;               // {k_a + n_a}
    size_t p = 0, l = 0, q = 0;
};

// Closed-form torsion and curvature on n + m.
Tensor extension_torsion(const ExtensionSpec& spec);
Tensor extension_curvature(const ExtensionSpec& spec);
// psi(k_a) = ad(k_a) on n plus the action on m.
std::vector<Matrix> psi_matrices(const ExtensionSpec& spec);
ExtensionResult build_extension(const ExtensionSpec& spec);
// Structure constants of g(k)/a in the representatives h | k | m agree with those of k x| g.
bool quotient_matches_semidirect(const ExtensionSpec& spec, const ExtensionResult& ext);

struct KSplit {
    Subspace k1, k2, k3;      // subspaces of k (coefficients in the k basis)
    Subspace b1, b2;          // adapted coordinates of the base algebra
    Subspace p;               // m coordinates, inside m0
    Subspace m0, Rn;          // m coordinates
};
KSplit k_split(const ExtensionSpec& spec);

// Kernel of R on span(ad(h) + psi(k)) inside so(n + m), flattened (l+q)^2 matrices.
Subspace ker_R(const ExtensionSpec& spec);
// span(ad(h) + psi(k)), flattened.
Subspace isotropy_span(const ExtensionSpec& spec);

struct BaseConditions {
    bool condition_i = false;   // pi_m(Z(b1)) = 0
    bool condition_ii = false;  // ker R = 0
    bool both() const { return condition_i && condition_ii; }
};
BaseConditions canonical_base_conditions(const ExtensionSpec& spec);
// pi_{n+m}(d) == n for the maximal abelian ideal d of the transvection algebra.
bool diagonal_projects_onto_n(const ExtensionSpec& spec);

struct Holonomy {
    Subspace image;    // im R, flattened
    Subspace formula;  // ad(h) + psi(k1ss + k2 + k3)
    bool equal() const { return image == formula; }
};
Holonomy holonomy_algebra(const ExtensionSpec& spec);
// Short label of a compact matrix Lie algebra ("0", "so(2)", "su(2)", ...).
std::string lie_algebra_label(const Subspace& space, size_t n);

struct ExtensionIsoResult {
    IsoResult::Verdict verdict = IsoResult::Verdict::Undecided;
    std::string witness;
    std::optional<Matrix> tau_h;   // base h_a -> h_b
    std::optional<Matrix> tau_m;   // base m_a -> m_b
    std::optional<Matrix> tau_k;   // k_a -> k_b
};
// Checks a certificate against the conditions of the type II isomorphism criterion.
bool extension_certificate_check(const ExtensionSpec& a, const ExtensionSpec& b, const Matrix& tau_h,
                                 const Matrix& tau_m, const Matrix& tau_k);
ExtensionIsoResult extension_iso_decide(const ExtensionSpec& a, const ExtensionSpec& b);

struct ExtensionReducibility {
    bool reducible = false;
    std::vector<AlgSubspace> blocks;    // m coordinates of the base
    std::vector<bool> in_first;         // partition, when reducible
    Subspace k_prime, k_second;         // k-coefficient subspaces
    size_t partitions_checked = 0;
};
constexpr size_t kMaxExtensionBlocks = 20;
ExtensionReducibility extension_irreducible(const ExtensionSpec& spec);

// Model on n + m as a direct sum of two models (block diagonal).
InfinitesimalModel direct_sum(const InfinitesimalModel& a, const InfinitesimalModel& b);

}  // namespace natred

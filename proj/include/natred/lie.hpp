#pragma once

#include "natred/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace natred {

// Lie algebra given by structure constants [e_i, e_j] = sum_k c[i][j][k] e_k,
// with an optional ad-invariant symmetric form.
class MetricLieAlgebra {
public:
    MetricLieAlgebra() = default;

    // Checks antisymmetry, the Jacobi identity and invariance of the form.
    static MetricLieAlgebra create(size_t n, std::vector<Rational> c, std::optional<Matrix> form = std::nullopt);
    // No Jacobi check; for raw brackets whose Jacobiator is under study.
    static MetricLieAlgebra unchecked(size_t n, std::vector<Rational> c, std::optional<Matrix> form = std::nullopt);

    size_t dim() const { return n_; }
    const Rational& c(size_t i, size_t j, size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    const std::vector<Rational>& constants() const { return c_; }
    const std::optional<BilinearForm>& invariant_form() const { return form_; }
    MetricLieAlgebra with_form(std::optional<Matrix> form) const;

    Vector bracket(const Vector& x, const Vector& y) const;
    Vector bracket_basis(size_t i, size_t j) const;
    // Nonzero entries of [e_i, e_j].
    const std::vector<std::pair<size_t, Rational>>& sparse_bracket(size_t i, size_t j) const {
        return sparse_[i * n_ + j];
    }
    const Matrix& ad_basis(size_t i) const { return ad_[i]; }
    const std::vector<Matrix>& ad_basis() const { return ad_; }
    Matrix ad(const Vector& x) const;

    // Same algebra in the basis formed by the rows of P.
    MetricLieAlgebra rebased(const Matrix& P) const;
    // Subalgebra spanned by S, in S's echelon basis. S must be closed under the bracket.
    MetricLieAlgebra restricted(const Subspace& S) const;

    bool operator==(const MetricLieAlgebra& o) const { return n_ == o.n_ && c_ == o.c_; }

private:
    void build_caches();
    size_t n_ = 0;
    std::vector<Rational> c_;
    std::optional<BilinearForm> form_;
    std::vector<std::vector<std::pair<size_t, Rational>>> sparse_;
    std::vector<Matrix> ad_;
};

// Maximal |component| of the Jacobiator over basis triples; 0 iff a Lie bracket.
Rational jacobi_residual(size_t n, const std::vector<Rational>& c);
Rational jacobi_residual(const MetricLieAlgebra& alg);

BilinearForm killing_form(const MetricLieAlgebra& alg);
// span{[a, b] : a in A, b in B}
Subspace bracket_span(const MetricLieAlgebra& alg, const Subspace& A, const Subspace& B);
Subspace radical(const MetricLieAlgebra& alg);
Subspace center(const MetricLieAlgebra& alg);
Subspace centralizer(const MetricLieAlgebra& alg, const Subspace& S);
Subspace ideal_generated(const MetricLieAlgebra& alg, const Subspace& S);
Subspace largest_ideal_within(const MetricLieAlgebra& alg, const Subspace& S);
bool is_ideal(const MetricLieAlgebra& alg, const Subspace& S);
bool is_subalgebra(const MetricLieAlgebra& alg, const Subspace& S);
bool is_abelian(const MetricLieAlgebra& alg, const Subspace& S);
std::vector<Subspace> derived_series(const MetricLieAlgebra& alg, const Subspace& S);
// Derivations as flattened row-major n x n matrices.
Subspace derivations(const MetricLieAlgebra& alg);
// Residual of invariance form([x,y],z) + form(y,[x,z]) over basis triples.
Rational invariance_residual(const MetricLieAlgebra& alg, const Matrix& form);

// Spaces of n x n matrices are stored flattened (row-major).
std::vector<Matrix> matrices_of(const Subspace& S, size_t n);
Subspace matrix_span(const std::vector<Matrix>& mats, size_t n);
// Smallest subspace containing the generators and closed under commutators.
Subspace lie_closure(const std::vector<Matrix>& gens, size_t n);
// Structure constants of a commutator-closed matrix space in its echelon basis.
MetricLieAlgebra matrix_lie_algebra(const Subspace& space, size_t n);

}  // namespace natred

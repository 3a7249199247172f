#pragma once

// Shared fixtures for unit and acceptance tests.

#include "natred/catalog.hpp"
#include "natred/extension.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace natred::testing {

inline std::vector<Rational> so3_constants() {
    std::vector<Rational> c(27);
    auto set = [&](size_t i, size_t j, size_t k) {
        c[(i * 3 + j) * 3 + k] = 1;
        c[(j * 3 + i) * 3 + k] = -1;
    };
    set(0, 1, 2);
    set(1, 2, 0);
    set(2, 0, 1);
    return c;
}

inline MetricLieAlgebra su2() { return MetricLieAlgebra::create(3, so3_constants()); }
inline MetricLieAlgebra abelian(size_t n) { return MetricLieAlgebra::create(n, std::vector<Rational>(n * n * n)); }

inline Matrix J2() { return Matrix::from_rows({{0, -1}, {1, 0}}, 2); }

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

inline ReductiveDecomposition flat(size_t n) { return ReductiveDecomposition::adapted(abelian(n), 0, Matrix::identity(n)); }

// so(3) / so(2): adapted coordinates (e3 | e1, e2).
inline ReductiveDecomposition sphere() {
    return catalog("so3_over_so2").decomposition();
}

// so(3) + R^2 with h = e3, m = (e1, e2, f1, f2).
inline ReductiveDecomposition sphere_plus_plane() {
    size_t n = 5;
    std::vector<Rational> c(n * n * n);
    auto set = [&](size_t i, size_t j, size_t k) {
        c[(i * n + j) * n + k] = 1;
        c[(j * n + i) * n + k] = -1;
    };
    set(1, 2, 0);
    set(2, 0, 1);
    set(0, 1, 2);
    return ReductiveDecomposition::adapted(MetricLieAlgebra::create(n, c), 1, Matrix::identity(4));
}

// k_bracket from the commutators of the given linearly independent matrices.
inline std::vector<Rational> bracket_of(const std::vector<Matrix>& mats) {
    size_t l = mats.size(), q = mats.empty() ? 0 : mats[0].rows();
    std::vector<Vector> cols;
    for (const auto& A : mats) cols.push_back(A.flatten());
    Matrix S = Matrix::from_cols(cols, q * q);
    std::vector<Rational> c(l * l * l);
    for (size_t a = 0; a < l; ++a)
        for (size_t b = 0; b < l; ++b) {
            auto x = solve(S, commutator(mats[a], mats[b]).flatten());
            require(x.has_value(), ErrorKind::Internal, "matrices do not close under commutators");
            for (size_t d = 0; d < l; ++d) c[(a * l + b) * l + d] = (*x)[d];
        }
    return c;
}

inline ExtensionSpec make_spec(const ReductiveDecomposition& base, std::vector<Matrix> acts, const Matrix& B) {
    ExtensionSpec s;
    s.base = base;
    s.k_bracket = bracket_of(acts);
    s.k_action = std::move(acts);
    s.B = B;
    return s;
}

inline Matrix scalar(size_t n, const Rational& c) { return Matrix::identity(n).scaled(c); }

// so(n) basis E_ij = e_j e_i^T - e_i e_j^T, i < j.
inline std::vector<Matrix> so_basis(size_t n) {
    std::vector<Matrix> out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Matrix E(n, n);
            E(j, i) = 1;
            E(i, j) = -1;
            out.push_back(E);
        }
    return out;
}

inline std::vector<Matrix> sp1_on_R4() {
    Matrix Li = Matrix::from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}, 4);
    Matrix Lj = Matrix::from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}, 4);
    return {Li, Lj, Li * Lj};
}

inline ExtensionSpec oscillator(const Rational& b) { return make_spec(flat(2), {J2()}, scalar(1, b)); }

// Specs satisfying both canonical-base conditions, all irreducible.
inline std::vector<std::pair<std::string, ExtensionSpec>> conforming_specs() {
    std::vector<std::pair<std::string, ExtensionSpec>> out;
    for (Rational b : {Rational(1), Rational(2), Rational(3), Rational(1, 2)})
        out.push_back({"R2 by so(2), B=" + to_string(b), oscillator(b)});
    for (Rational b : {Rational(1), Rational(2), Rational(1, 3)})
        out.push_back({"R4 by sp(1), B=" + to_string(b), make_spec(flat(4), sp1_on_R4(), scalar(3, b))});
    out.push_back({"R4 by u(1), weights (1,1)", make_spec(flat(4), {block_diag(J2(), J2())}, scalar(1, 1))});
    out.push_back(
        {"R4 by u(1), weights (1,2)", make_spec(flat(4), {block_diag(J2(), J2().scaled(2))}, scalar(1, 1))});
    out.push_back({"R3 by so(3)", make_spec(flat(3), so_basis(3), scalar(3, 1))});
    out.push_back({"R4 by so(4)", make_spec(flat(4), so_basis(4), scalar(6, 1))});
    auto S = sphere();
    for (Rational b : {Rational(2), Rational(3)})
        out.push_back({"S2 by ad(h), B=" + to_string(b), make_spec(S, {S.isotropy(0)}, scalar(1, b))});
    auto SP = sphere_plus_plane();
    out.push_back({"S2+R2 by so(2) on both", make_spec(SP, {block_diag(SP.isotropy(0).block(0, 0, 2, 2), J2())},
                                                       scalar(1, 1))});
    return out;
}

// Specs satisfying the conditions whose extensions are reducible.
inline std::vector<std::pair<std::string, ExtensionSpec>> reducible_specs() {
    std::vector<std::pair<std::string, ExtensionSpec>> out;
    Matrix Z2(2, 2);
    for (Rational b : {Rational(1), Rational(2)})
        out.push_back({"R2+R2 by u(1)+u(1), B2=" + to_string(b),
                       make_spec(flat(4), {block_diag(J2(), Z2), block_diag(Z2, J2())},
                                 block_diag(scalar(1, 1), scalar(1, b)))});
    auto SP = sphere_plus_plane();
    out.push_back({"S2+R2 by so(2) on R2", make_spec(SP, {block_diag(Z2, J2())}, scalar(1, 1))});
    out.push_back({"R4+R2 by sp(1)+u(1)",
                   make_spec(flat(6),
                             [&] {
                                 std::vector<Matrix> v;
                                 for (const auto& A : sp1_on_R4()) v.push_back(block_diag(A, Z2));
                                 v.push_back(block_diag(Matrix(4, 4), J2()));
                                 return v;
                             }(),
                             scalar(4, 1))});
    return out;
}

// Rational orthogonal matrix (I - S)(I + S)^-1 from a random skew S.
inline Matrix cayley(size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-2, 2);
    Matrix S(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Rational v(d(rng), 2);
            v.canonicalize();
            S(i, j) = v;
            S(j, i) = -v;
        }
    Matrix I = Matrix::identity(n);
    return (I - S) * inverse(I + S);
}

// Same model in the basis given by the columns of Q.
inline InfinitesimalModel rotated(const InfinitesimalModel& M, const Matrix& Q) {
    return InfinitesimalModel(Q.transpose() * M.G() * Q, pullback(M.T(), Q), pullback(M.R(), Q));
}

inline InfinitesimalModel model_of(const ReductiveDecomposition& d) { return model_from_decomposition(d); }

}  // namespace natred::testing

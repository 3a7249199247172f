#include <doctest.h>

#include "natred/lie.hpp"
#include "natred/polynomial.hpp"
#include "../support.hpp"

using namespace natred;
using namespace natred::testing;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(to_string(parse_rational("4/2")) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("kernel") {
    CHECK(kernel(Matrix::identity(2)).is_zero());
    CHECK(kernel(Matrix(3, 3)).dim() == 3);
    Subspace k = kernel(Matrix::from_rows({{1, 1}, {2, 2}}, 2));
    REQUIRE(k.dim() == 1);
    CHECK(k.contains(Vector{1, -1}));
}

TEST_CASE("orth_complement") {
    auto S = Subspace::span(3, {Vector{1, 0, 0}});
    CHECK(orth_complement(S, Matrix::identity(3)) == Subspace::span(3, {Vector{0, 1, 0}, Vector{0, 0, 1}}));
    CHECK(orth_complement(Subspace::full(3), Matrix::identity(3)).is_zero());
    Matrix D = Matrix::from_rows({{1, 0}, {0, 2}}, 2);
    CHECK(orth_complement(Subspace::span(2, {Vector{1, 1}}), D) == Subspace::span(2, {Vector{2, -1}}));
    CHECK_THROWS_AS(orth_complement(S, Matrix(3, 3)), Error);
}

TEST_CASE("operator_closure") {
    Matrix swap = Matrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, 3);
    auto e1 = Subspace::span(3, {Vector{1, 0, 0}});
    CHECK(operator_closure(e1, {swap}) == Subspace::coordinate(3, 0, 2));
    CHECK(operator_closure(Subspace::full(3), {swap}).dim() == 3);
    CHECK(operator_closure(Subspace(3), {swap}).is_zero());
}

TEST_CASE("solve_linear_subject_to") {
    auto one = solve_linear_subject_to(1, {{Matrix::from_rows({{1}}, 1), Vector{0}}});
    CHECK(one.directions.is_zero());
    CHECK(one.point == Vector{0});
    CHECK(solve_linear_subject_to(2, {}).directions.dim() == 2);
    auto p = solve_linear_subject_to(2, {{Matrix::from_rows({{1, 1}, {1, -1}}, 2), Vector{1, 1}}});
    CHECK(p.point == Vector{1, 0});
    CHECK_THROWS_AS(solve_linear_subject_to(1, {{Matrix::from_rows({{0}}, 1), Vector{1}}}), Error);
}

TEST_CASE("characteristic and minimal polynomials") {
    Poly cp = characteristic_polynomial(J2());
    CHECK(cp == Poly({1, 0, 1}));
    CHECK(minimal_polynomial(Matrix::identity(3)) == Poly({-1, 1}));
    CHECK(Poly({-2, 0, 1}).rational_roots().empty());
    CHECK(Poly({-4, 0, 1}).rational_roots().size() == 2);
}

TEST_CASE("number field arithmetic") {
    auto K = std::make_shared<const NumberField>(NumberField{Poly({-2, 0, 1})});
    Alg s = Alg::generator(K);
    CHECK(s * s == Alg(2));
    CHECK((s + Alg(1)) * (s - Alg(1)) == Alg(1));
    CHECK(s.inverse() * s == Alg(1));
}

TEST_CASE("jacobi residual") {
    CHECK(is_zero(jacobi_residual(3, so3_constants())));
    CHECK(is_zero(jacobi_residual(3, std::vector<Rational>(27))));
    // [e0,e1] = e0, [e1,e2] = e2 is solvable; adding e1 to [e1,e2] breaks Jacobi
    std::vector<Rational> c(27);
    auto set = [&](size_t i, size_t j, size_t k, int v) {
        c[(i * 3 + j) * 3 + k] = v;
        c[(j * 3 + i) * 3 + k] = -v;
    };
    set(0, 1, 0, 1);
    set(1, 2, 2, 1);
    CHECK(is_zero(jacobi_residual(3, c)));
    set(1, 2, 1, 1);
    CHECK(!is_zero(jacobi_residual(3, c)));
    CHECK_THROWS_AS(MetricLieAlgebra::create(3, c), Error);
}

TEST_CASE("killing form") {
    CHECK(killing_form(su2()).gram() == Matrix::identity(3).scaled(-2));
    CHECK(killing_form(abelian(3)).gram().is_zero());
    auto f = build_extension(oscillator(1)).algebra.algebra();
    CHECK(rank(killing_form(f).gram()) == 1);
}

TEST_CASE("radical, center and ideals") {
    CHECK(radical(su2()).is_zero());
    CHECK(radical(abelian(3)).dim() == 3);
    auto s4 = sphere_plus_plane().algebra();  // so(3) + R^2
    CHECK(radical(s4) == Subspace::coordinate(5, 3, 5));
    CHECK(center(su2()).is_zero());
    CHECK(center(abelian(2)).dim() == 2);
    CHECK(centralizer(su2(), Subspace::full(3)).is_zero());
    CHECK(ideal_generated(su2(), Subspace::span(3, {Vector{1, 0, 0}})).dim() == 3);
    CHECK(largest_ideal_within(su2(), Subspace::coordinate(3, 0, 2)).is_zero());
    CHECK(is_ideal(s4, Subspace::coordinate(5, 0, 3)));
}

TEST_CASE("derived series and derivations") {
    auto ds = derived_series(abelian(2), Subspace::full(2));
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].dim() == 2);
    CHECK(ds[1].is_zero());
    CHECK(derivations(su2()).dim() == 3);
}

TEST_CASE("matrix Lie algebras") {
    auto sp1 = lie_closure(sp1_on_R4(), 4);
    CHECK(sp1.dim() == 3);
    CHECK(lie_algebra_label(sp1, 4) == "su(2)");
    CHECK(lie_algebra_label(matrix_span({J2()}, 2), 2) == "so(2)");
    CHECK(lie_algebra_label(Subspace(4), 2) == "0");
    CHECK(lie_algebra_label(lie_closure(so_basis(4), 4), 4) == "su(2)+su(2)");
}

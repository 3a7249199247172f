#include <doctest.h>

#include "natred/reducibility.hpp"

#include <array>
#include "../support.hpp"

using namespace natred;
using namespace natred::testing;

namespace {

Vector unit(size_t n, size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

// Sum of e_i ^ e_j ^ e_k over the given triples.
Tensor volumes(size_t n, const std::vector<std::array<size_t, 3>>& triples) {
    Tensor T(n, 3);
    for (const auto& t : triples) T = T + wedge({unit(n, t[0]), unit(n, t[1]), unit(n, t[2])});
    return T;
}

InfinitesimalModel su2_model() { return model_of(ReductiveDecomposition::adapted(su2(), 0, Matrix::identity(3))); }
InfinitesimalModel flat_model(size_t n) { return model_of(flat(n)); }
InfinitesimalModel torsion_only(size_t n, const Tensor& T) {
    return InfinitesimalModel(Matrix::identity(n), T, Tensor(n, 4));
}
InfinitesimalModel oscillator_model() { return build_extension(oscillator(1)).model; }

}  // namespace

TEST_CASE("two_form_action") {
    Matrix G = Matrix::identity(3);
    Tensor a = wedge({unit(3, 0), unit(3, 1)});
    Tensor b = wedge({unit(3, 1), unit(3, 2)});
    CHECK(two_form_action(a, a, G).is_zero());
    CHECK(two_form_action(a, Tensor(3, 2), G).is_zero());
    Tensor ab = two_form_action(a, b, G);
    Matrix comm = commutator(endo_of_2form(a, G), endo_of_2form(b, G));
    CHECK(ab == form_of_endo(comm, G));
    CHECK(!is_zero(ab.at(0, 2)));
    CHECK(is_zero(ab.at(0, 1)));
}

TEST_CASE("verify_axioms") {
    CHECK(verify_axioms(su2_model()).ok());
    CHECK(verify_axioms(flat_model(4)).ok());
    // On R^4 every 3-form is decomposable and satisfies the first Bianchi
    // identity with R = 0, so the broken example lives on R^5.
    auto bad = torsion_only(5, volumes(5, {{0, 1, 2}, {0, 3, 4}}));
    auto rep = verify_axioms(bad);
    CHECK(!rep.bianchi1_ok);
    CHECK(!is_zero(rep.bianchi1_residual));
    // oracle: the induced bracket -T fails Jacobi
    std::vector<Rational> c(125);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j)
            for (size_t k = 0; k < 5; ++k) c[(i * 5 + j) * 5 + k] = -bad.T().at(i, j, k);
    CHECK(!is_zero(jacobi_residual(5, c)));
}

TEST_CASE("nomizu_full_isotropy") {
    CHECK(nomizu_full_isotropy(su2_model()).dim() == 3);
    CHECK(nomizu_full_isotropy(flat_model(4)).dim() == 6);
    auto M = oscillator_model();
    auto iso = nomizu_full_isotropy(M);
    CHECK(iso.dim() >= 1);
    CHECK(iso.contains(wedge_endo(unit(3, 1), unit(3, 2), M.G()).flatten()));
}

TEST_CASE("nomizu_symmetry_algebra") {
    auto euclid = nomizu_symmetry_algebra(flat_model(3));
    CHECK(euclid.algebra.dim() == 6);
    CHECK(euclid.p == 3);
    CHECK(nomizu_symmetry_algebra(su2_model()).algebra.dim() == 6);
    auto bad = torsion_only(5, volumes(5, {{0, 1, 2}, {0, 3, 4}}));
    try {
        nomizu_symmetry_algebra(bad);
        FAIL("expected AxiomsFailed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AxiomsFailed);
    }
}

TEST_CASE("transvection_algebra") {
    auto t = transvection_algebra(su2_model());
    CHECK(t.dim() == 3);
    CHECK(t.p() == 0);
    auto s = transvection_algebra(model_of(sphere()));
    CHECK(s.dim() == 3);
    CHECK(s.p() == 1);
    auto f = transvection_algebra(flat_model(3));
    CHECK(f.dim() == 3);
    CHECK(f.p() == 0);
}

TEST_CASE("model_from_decomposition") {
    auto M = su2_model();
    CHECK(M.T().at(0, 1, 2) == -1);
    CHECK(M.T().at(1, 2, 0) == -1);
    CHECK(M.R().is_zero());
    CHECK(model_of(sphere()).T().is_zero());
    CHECK(!model_of(sphere()).R().is_zero());
    CHECK(flat_model(3).T().is_zero());
    CHECK(flat_model(3).R().is_zero());
}

TEST_CASE("iso_decide") {
    auto M = su2_model();
    CHECK(iso_certificate_check({M, M, Matrix::identity(3)}));
    auto no = iso_decide(M, flat_model(3));
    CHECK(no.verdict == IsoResult::Verdict::No);
    CHECK(!no.witness.empty());
    Matrix P = Matrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, 3);
    auto Mp = rotated(M, P);
    auto yes = iso_decide(M, Mp);
    REQUIRE(yes.verdict == IsoResult::Verdict::Yes);
    REQUIRE(yes.certificate.has_value());
    CHECK(iso_certificate_check({M, Mp, *yes.certificate}));
    // -I reverses the orientation of the volume-type torsion
    CHECK(!iso_certificate_check({M, M, Matrix::identity(3).scaled(-1)}));
}

TEST_CASE("torsion_kernel") {
    CHECK(torsion_kernel(Tensor(3, 3), Matrix::identity(3)).dim() == 3);
    CHECK(torsion_kernel(volumes(4, {{0, 1, 2}}), Matrix::identity(4)) == Subspace::span(4, {unit(4, 3)}));
    CHECK(torsion_kernel(su2_model().T(), Matrix::identity(3)).is_zero());
}

TEST_CASE("torsion_holonomy") {
    CHECK(torsion_holonomy(volumes(3, {{0, 1, 2}}), Matrix::identity(3)).dim() == 3);
    CHECK(torsion_holonomy(Tensor(3, 3), Matrix::identity(3)).is_zero());
    auto h = torsion_holonomy(volumes(6, {{0, 1, 2}, {3, 4, 5}}), Matrix::identity(6));
    CHECK(h.dim() == 6);
    // block diagonal: every element kills the cross terms
    for (const auto& A : matrices_of(h, 6))
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 3; j < 6; ++j) CHECK(is_zero(A(i, j)));
}

TEST_CASE("torsion_reducible") {
    Matrix I3 = Matrix::identity(3), I6 = Matrix::identity(6);
    CHECK(!torsion_reducible(su2_model().T(), I3).reducible);
    Tensor T = volumes(6, {{0, 1, 2}, {3, 4, 5}});
    auto r = torsion_reducible(T, I6);
    REQUIRE(r.reducible);
    REQUIRE(r.witness.factors.size() == 2);
    CHECK(witness_valid(r.witness, T, I6));
    bool first_block = false;
    for (const auto& f : r.witness.factors)
        if (f == to_alg(Subspace::coordinate(6, 0, 3))) first_block = true;
    CHECK(first_block);
    auto z = torsion_reducible(Tensor(3, 3), I3);
    CHECK(z.reducible);
    CHECK(z.witness.flat_factor.dim() == 3);
}

TEST_CASE("model_irreducible") {
    CHECK(model_irreducible(su2_model()));
    CHECK(!model_irreducible(direct_sum(su2_model(), su2_model())));
    CHECK(model_irreducible(oscillator_model()));
}

TEST_CASE("split_into_irreducibles") {
    auto s = split_into_irreducibles(direct_sum(su2_model(), flat_model(2)));
    REQUIRE(s.factors.size() == 2);
    int flats = 0;
    for (const auto& f : s.factors) flats += f.flat;
    CHECK(flats == 1);
    CHECK(s.complete);
    CHECK(split_into_irreducibles(su2_model()).factors.size() == 1);
    CHECK(!split_into_irreducibles(su2_model()).reducible());
    auto euclid = split_into_irreducibles(flat_model(2));
    REQUIRE(euclid.factors.size() == 1);
    CHECK(euclid.factors[0].flat);
    CHECK(euclid.reducible());
    auto two = split_into_irreducibles(direct_sum(su2_model(), su2_model()));
    REQUIRE(two.factors.size() == 2);
    for (const auto& f : two.factors) {
        CHECK(!f.flat);
        REQUIRE(f.model.has_value());
        CHECK(f.model->dim() == 3);
    }
}

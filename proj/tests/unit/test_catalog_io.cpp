#include <doctest.h>

#include "natred/io.hpp"
#include "natred/reducibility.hpp"
#include "natred/report.hpp"
#include "../support.hpp"

#include <json.hpp>

#include <cstdlib>
#include <functional>

using namespace natred;
using namespace natred::testing;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

MetricLieAlgebra su2_sum() {
    size_t n = 6;
    std::vector<Rational> d(n * n * n);
    auto s = so3_constants();
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            for (size_t k = 0; k < 3; ++k) {
                d[(i * n + j) * n + k] = s[(i * 3 + j) * 3 + k];
                d[((i + 3) * n + j + 3) * n + k + 3] = s[(i * 3 + j) * 3 + k];
            }
    return MetricLieAlgebra::create(n, d);
}

}  // namespace

TEST_CASE("catalog round trip") {
    for (const auto& n : catalog_names()) {
        CAPTURE(n);
        std::string text = emit_document(catalog(n));
        CHECK(emit_document(parse_document(text)) == text);
    }
    CHECK(kind_of([] { catalog("no_such_space"); }) == ErrorKind::UnknownName);
}

TEST_CASE("catalog contents") {
    auto fl = catalog("flat_Rn(3)").decomposition();
    CHECK(fl.p() == 0);
    auto M = model_from_decomposition(fl);
    CHECK(M.T().is_zero());
    CHECK(M.R().is_zero());
    CHECK(model_from_decomposition(catalog("so3_over_so2").decomposition()).T().is_zero());
    auto h = catalog("heisenberg3_extension");
    REQUIRE(h.kind() == DocKind::ExtensionSpec);
    CHECK(extension_iso_decide(h.spec(), oscillator(1)).verdict == IsoResult::Verdict::Yes);
    CHECK(catalog("flat_Rn(5)").decomposition().dim() == 5);
}

TEST_CASE("from_subalgebra") {
    auto S = from_subalgebra(su2(), Subspace::span(3, {Vector{0, 0, 1}}), Rational(-1, 2));
    CHECK(check_naturally_reductive(S).ok());
    CHECK(model_from_decomposition(S).T().is_zero());
    auto B = from_subalgebra(su2(), Subspace(3), Rational(-1, 2));
    auto M = model_from_decomposition(B);
    CHECK(!M.T().is_zero());
    CHECK(model_irreducible(M));
    CHECK(kind_of([] { from_subalgebra(su2(), Subspace::full(3), Rational(-1, 2)); }) == ErrorKind::NotProper);
    CHECK(kind_of([] { from_subalgebra(su2(), Subspace(3), Rational(1)); }) == ErrorKind::DegenerateForm);
}

TEST_CASE("transvection_conditions") {
    auto s = transvection_conditions(sphere());
    CHECK(s.i_holds);
    CHECK(s.ii_holds);
    CHECK(s.iii_holds);

    auto g = su2_sum();
    Matrix diag_h = Matrix::from_rows({{1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}}, 6);
    Matrix anti_m = Matrix::from_rows({{1, 0, 0, -1, 0, 0}, {0, 1, 0, 0, -1, 0}, {0, 0, 1, 0, 0, -1}}, 6);
    auto d = transvection_conditions(ReductiveDecomposition::create(g, diag_h, anti_m, Matrix::identity(3)));
    CHECK(d.i_holds);
    CHECK(!d.ii_holds);
    CHECK(d.iii_holds);

    Matrix first = Matrix::from_rows({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}, 6);
    Matrix second = Matrix::from_rows({{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}}, 6);
    auto e = transvection_conditions(ReductiveDecomposition::create(g, first, second, Matrix::identity(3)));
    CHECK(!e.iii_holds);
}

TEST_CASE("symmetric pairs and partial duality") {
    CHECK(symmetric_pair_verify(sphere()));
    CHECK(symmetric_pair_verify(catalog("noncompact_hyperbolic_pair").decomposition()));
    auto d = partial_dual(sphere(), Subspace::full(3));
    CHECK(d.signature_flipped);
    CHECK(d.naturally_reductive);
    CHECK(d.complex_iso_verified);
    auto k = killing_form(d.dual.algebra()).inertia();
    CHECK(k.positive == 2);
    CHECK(k.negative == 1);
    CHECK(symmetric_pair_verify(d.dual));
    auto back = partial_dual(d.dual, Subspace::full(3));
    CHECK(back.dual.algebra() == sphere().algebra());

    // so(3) + su(2), dualize the first factor only
    auto g = su2_sum();
    Matrix h = Matrix::from_rows({{0, 0, 1, 0, 0, 0}}, 6);
    Matrix m = Matrix::from_rows(
        {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}}, 6);
    auto mixed = ReductiveDecomposition::create(g, h, m, Matrix::identity(5));
    auto md = partial_dual(mixed, Subspace::coordinate(6, 0, 3));
    CHECK(md.naturally_reductive);
    auto mk = killing_form(md.dual.algebra()).inertia();
    CHECK(mk.positive == 2);
    CHECK(mk.negative == 4);
}

TEST_CASE("document parsing errors") {
    std::string bad_rational = R"({"schema_version":"1","kind":"model","payload":{"dim":1,"metric":[["1/0"]],"torsion":[],"curvature":[]}})";
    CHECK(kind_of([&] { parse_document(bad_rational); }) == ErrorKind::SchemaError);
    CHECK(kind_of([] { parse_document("{"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([] { parse_document(R"({"schema_version":"2","kind":"algebra","payload":{}})"); }) ==
          ErrorKind::SchemaError);

    // so(3) with h = span{e1, e2}: [e1, e2] = e3 leaves h
    json doc = json::parse(emit_document(catalog("so3_over_so2")));
    doc["payload"]["h"] = json::array({json::array({"1", "0", "0"}), json::array({"0", "1", "0"})});
    doc["payload"]["m"] = json::array({json::array({"0", "0", "1"})});
    doc["payload"]["metric"] = json::array({json::array({"1"})});
    try {
        parse_document(doc.dump());
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find("not a subalgebra: [h_0, h_1]") != std::string::npos);
    }
}

TEST_CASE("dimension limit") {
    std::string text = emit_document(catalog("flat_Rn(5)"));
    setenv("NATRED_MAX_DIM", "4", 1);
    auto k = kind_of([&] { parse_document(text); });
    unsetenv("NATRED_MAX_DIM");
    CHECK(k == ErrorKind::DimensionLimit);
    CHECK(parse_document(text).decomposition().dim() == 5);
}

TEST_CASE("analyze reports") {
    auto h = json::parse(analyze(catalog("heisenberg3_extension")));
    CHECK(h["type"] == "TypeII");
    CHECK(h["canonical_base"]["k_label"] == "so(2)");
    CHECK(h["canonical_base"]["base_dim"] == 2);
    CHECK(h["holonomy"]["dim"] == 1);
    CHECK(h["irreducibility"]["verdict"] == "Irreducible");

    auto s = json::parse(analyze(catalog("su2_biinvariant")));
    CHECK(s["type"] == "TypeI");
    CHECK(s["abelian_ideal"]["dim"] == 0);
    CHECK(s["irreducibility"]["verdict"] == "Irreducible");

    auto f = json::parse(analyze(catalog("flat_Rn(2)")));
    CHECK(f["type"] == "TypeII");
    CHECK(f["irreducibility"]["verdict"] == "Reducible");

    std::string text = analyze(catalog("su2_biinvariant"), ReportFormat::Text);
    CHECK(text.find("type") != std::string::npos);
}

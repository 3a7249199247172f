#include "natred/catalog.hpp"

#include <regex>

namespace natred {

namespace {

std::vector<Rational> so3_constants(const Rational& s = 1) {
    // [e0,e1] = s e2, [e1,e2] = e0, [e2,e0] = e1
    std::vector<Rational> c(27);
    auto set = [&](size_t i, size_t j, size_t k, const Rational& v) {
        c[(i * 3 + j) * 3 + k] = v;
        c[(j * 3 + i) * 3 + k] = -v;
    };
    set(0, 1, 2, s);
    set(1, 2, 0, 1);
    set(2, 0, 1, 1);
    return c;
}

MetricLieAlgebra su2() { return MetricLieAlgebra::create(3, so3_constants()); }

MetricLieAlgebra abelian(size_t n) { return MetricLieAlgebra::create(n, std::vector<Rational>(n * n * n)); }

Document decomposition_doc(const std::string& name, ReductiveDecomposition d) {
    Document doc;
    doc.name = name;
    doc.payload = std::move(d);
    return doc;
}

ReductiveDecomposition so3_over_so2() {
    return ReductiveDecomposition::create(su2(), Matrix::from_rows({{0, 0, 1}}, 3),
                                          Matrix::from_rows({{1, 0, 0}, {0, 1, 0}}, 3), Matrix::identity(2));
}

ReductiveDecomposition su2xsu2() {
    std::vector<Rational> c(216);
    auto base = so3_constants();
    for (size_t off : {size_t(0), size_t(3)})
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                for (size_t k = 0; k < 3; ++k) c[((off + i) * 6 + off + j) * 6 + off + k] = base[(i * 3 + j) * 3 + k];
    return ReductiveDecomposition::adapted(MetricLieAlgebra::create(6, c), 0, Matrix::identity(6));
}

ExtensionSpec heisenberg3() {
    ExtensionSpec s;
    s.base = ReductiveDecomposition::adapted(abelian(2), 0, Matrix::identity(2));
    s.k_action = {Matrix::from_rows({{0, -1}, {1, 0}}, 2)};
    s.k_bracket = {Rational(0)};
    s.B = Matrix::identity(1);
    return s;
}

ExtensionSpec quaternionic7() {
    // left multiplication by i, j, k on H = span(1, i, j, k)
    Matrix Li = Matrix::from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}, 4);
    Matrix Lj = Matrix::from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}, 4);
    ExtensionSpec s;
    s.base = ReductiveDecomposition::adapted(abelian(4), 0, Matrix::identity(4));
    s.k_action = {Li, Lj, Li * Lj};
    s.k_bracket = so3_constants();
    for (auto& v : s.k_bracket) v *= 2;
    s.B = Matrix::identity(3);
    return s;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"flat_Rn(3)",           "su2_biinvariant",         "so3_over_so2",
            "su2xsu2_product",      "heisenberg3_extension",   "quaternionic_heisenberg7",
            "noncompact_hyperbolic_pair"};
}

Document catalog(const std::string& name) {
    static const std::regex flat(R"(flat_Rn\((\d{1,3})\))");
    std::smatch mt;
    if (std::regex_match(name, mt, flat)) {
        size_t n = std::stoul(mt[1].str());
        require(n >= 1 && n <= max_input_dim(), ErrorKind::UnknownName, "flat_Rn dimension out of range: " + name);
        return decomposition_doc(name, ReductiveDecomposition::adapted(abelian(n), 0, Matrix::identity(n)));
    }
    if (name == "su2_biinvariant")
        return decomposition_doc(name, ReductiveDecomposition::adapted(su2(), 0, Matrix::identity(3)));
    if (name == "so3_over_so2") return decomposition_doc(name, so3_over_so2());
    if (name == "su2xsu2_product") return decomposition_doc(name, su2xsu2());
    if (name == "noncompact_hyperbolic_pair") {
        auto d = so3_over_so2();
        return decomposition_doc(name, partial_dual(d, Subspace::full(3)).dual);
    }
    if (name == "heisenberg3_extension" || name == "quaternionic_heisenberg7") {
        Document doc;
        doc.name = name;
        doc.payload = name == "heisenberg3_extension" ? heisenberg3() : quaternionic7();
        return doc;
    }
    throw Error(ErrorKind::UnknownName, "no catalog entry named '" + name + "'");
}

// ---------------------------------------------------------------- type I helpers

Subspace centroid(const MetricLieAlgebra& alg) {
    size_t n = alg.dim();
    // X ad(e_i) - ad(e_i) X = 0, unknown X row-major
    std::vector<Vector> rows;
    for (size_t i = 0; i < n; ++i) {
        const Matrix& A = alg.ad_basis(i);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) {
                Vector row(n * n);
                for (size_t k = 0; k < n; ++k) {
                    row[r * n + k] += A(k, c);
                    row[k * n + c] -= A(r, k);
                }
                if (!is_zero_vec(row)) rows.push_back(std::move(row));
            }
    }
    return Subspace::kernel_of_rows(rows, n * n);
}

bool is_simple(const MetricLieAlgebra& alg) {
    size_t n = alg.dim();
    if (n == 0 || !killing_form(alg).is_nondegenerate()) return false;
    Subspace C = centroid(alg);
    if (C.dim() == 1) return true;
    if (C.dim() != 2) return false;
    // C = span(I, X); simple iff X has no real eigenvalue
    Matrix I = Matrix::identity(n);
    Matrix X;
    for (const auto& M : matrices_of(C, n))
        if (!Subspace::span(n * n, {I.flatten()}).contains(M.flatten())) {
            X = M;
            break;
        }
    Poly mp = minimal_polynomial(X);
    // degree 2 monic t^2 + b t + c
    const auto& cf = mp.coeffs();
    if (cf.size() != 3) return false;
    Rational b = cf[1] / cf[2], c0 = cf[0] / cf[2];
    return b * b - 4 * c0 < 0;
}

ReductiveDecomposition from_subalgebra(const MetricLieAlgebra& g, const Subspace& h, const Rational& scale) {
    size_t n = g.dim();
    require(h.ambient_dim() == n, ErrorKind::ShapeMismatch, "subalgebra lives in the wrong space");
    require(scale < 0, ErrorKind::DegenerateForm, "scale must be negative");
    BilinearForm K = killing_form(g);
    auto in = K.inertia();
    require(n > 0 && in.negative == n, ErrorKind::NotCompact, "Killing form is not negative definite");
    require(is_simple(g), ErrorKind::NotSimple, "algebra is not simple");
    require(h.dim() < n, ErrorKind::NotProper, "h must be a proper subalgebra");
    Matrix G = K.gram().scaled(scale);
    Subspace m = orth_complement(h, G);
    return ReductiveDecomposition::create(g, h.basis(), m.basis(), restrict_form(G, m));
}

TransvectionConditions transvection_conditions(const ReductiveDecomposition& dec) {
    const auto& alg = dec.algebra();
    require(radical(alg).is_zero(), ErrorKind::NotSemisimple, "algebra has a nonzero radical");
    size_t p = dec.p(), n = dec.dim();
    std::vector<Vector> hp;
    for (size_t i = p; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) hp.push_back(dec.h_coords(alg.bracket_basis(i, j)));
    TransvectionConditions tc;
    tc.i_holds = Subspace::span(p, hp).dim() == p;
    tc.ii_holds = is_simple(alg);
    tc.iii_holds = is_effective(dec);
    require(!tc.ii_holds || (tc.i_holds && tc.iii_holds), ErrorKind::Internal,
            "simple algebra without [m,m]_h = h or effectiveness");
    return tc;
}

bool symmetric_pair_verify(const ReductiveDecomposition& dec) {
    const auto& alg = dec.algebra();
    require(is_simple(alg), ErrorKind::NotSimple, "algebra is not simple");
    size_t p = dec.p(), n = dec.dim();
    for (size_t i = p; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!is_zero_vec(dec.m_coords(alg.bracket_basis(i, j)))) return false;
    return true;
}

DualResult partial_dual(const ReductiveDecomposition& dec, const Subspace& g1) {
    const auto& alg = dec.algebra();
    size_t n = dec.dim(), p = dec.p();
    auto fail = [](const std::string& m) { throw Error(ErrorKind::NotSymmetricFactor, m); };
    if (g1.ambient_dim() != n || g1.is_zero()) fail("factor must be a nonzero subspace of g");
    if (!is_ideal(alg, g1)) fail("factor is not an ideal");
    Subspace C = centralizer(alg, g1);
    if (!g1.intersect(C).is_zero() || g1.dim() + C.dim() != n) fail("factor is not a direct summand");
    if (!is_simple(alg.restricted(g1))) fail("factor is not simple");
    Subspace h = dec.h(), m = dec.m();
    Subspace h1 = h.intersect(g1), hC = h.intersect(C), m1 = m.intersect(g1), mC = m.intersect(C);
    if (h1.dim() + hC.dim() != p || m1.dim() + mC.dim() != n - p) fail("h + m does not split along the factor");
    for (const auto& x : m1.vectors())
        for (const auto& y : m1.vectors())
            if (!h1.contains(alg.bracket(x, y))) fail("[m1, m1] is not inside h1");
    std::vector<Vector> rows;
    for (const Subspace* S : {&h1, &hC, &m1, &mC})
        for (const auto& v : S->vectors()) rows.push_back(v);
    Matrix P = Matrix::from_rows(rows, n);
    MetricLieAlgebra ra = alg.rebased(P);
    size_t lo = p, hi = p + m1.dim();
    std::vector<Rational> c = ra.constants();
    std::vector<int> deg(n, 0);
    for (size_t i = lo; i < hi; ++i) deg[i] = 1;
    for (size_t i = lo; i < hi; ++i)
        for (size_t j = lo; j < hi; ++j)
            for (size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = -c[(i * n + j) * n + k];
    MetricLieAlgebra rdual = MetricLieAlgebra::create(n, c);
    DualResult out;
    // x -> i^deg(x) x: c*(i,j,k) i^deg(k) = i^(deg(i)+deg(j)) c(i,j,k)
    out.complex_iso_verified = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                const Rational& a = ra.c(i, j, k);
                const Rational& b = rdual.c(i, j, k);
                int e = deg[i] + deg[j] - deg[k];
                if (is_zero(a) && is_zero(b)) continue;
                if (e != 0 && e != 2) out.complex_iso_verified = false;
                else if (b != (e == 2 ? -a : a)) out.complex_iso_verified = false;
            }
    MetricLieAlgebra dual = rdual.rebased(inverse(P));
    out.dual = ReductiveDecomposition::adapted(dual, p, dec.G());
    out.killing_m1_before = BilinearForm(restrict_form(killing_form(alg).gram(), m1)).inertia();
    out.killing_m1_after = BilinearForm(restrict_form(killing_form(dual).gram(), m1)).inertia();
    out.signature_flipped = out.killing_m1_before.positive == out.killing_m1_after.negative &&
                            out.killing_m1_before.negative == out.killing_m1_after.positive &&
                            out.killing_m1_before.zero == out.killing_m1_after.zero;
    out.naturally_reductive = check_naturally_reductive(out.dual).ok();
    return out;
}

}  // namespace natred

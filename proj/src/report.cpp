#include "natred/report.hpp"

#include "natred/catalog.hpp"
#include "natred/extension.hpp"

#include <json.hpp>

#include <sstream>

namespace natred {

using json = nlohmann::json;

namespace {

json jmat(const Matrix& m) {
    json a = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
        a.push_back(r);
    }
    return a;
}

json jinertia(const BilinearForm::Inertia& in) {
    return {{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}};
}

struct Analyzed {
    InfinitesimalModel model;
    ReductiveDecomposition transvection;
};

Analyzed model_of(const Document& doc) {
    switch (doc.kind()) {
        case DocKind::Algebra:
            throw Error(ErrorKind::SchemaError, "an algebra document carries no metric; use a decomposition");
        case DocKind::Decomposition: {
            require_naturally_reductive(doc.decomposition());
            auto M = model_from_decomposition(doc.decomposition());
            return {M, transvection_algebra(M)};
        }
        case DocKind::Model: {
            auto ax = verify_axioms(doc.model());
            require(ax.ok(), ErrorKind::AxiomsFailed, "model does not satisfy the axioms");
            return {doc.model(), transvection_algebra(doc.model())};
        }
        case DocKind::ExtensionSpec: {
            auto ext = build_extension(doc.spec());
            return {ext.model, ext.transvection};
        }
    }
    throw Error(ErrorKind::Internal, "unknown document kind");
}

// Runs f and stores either its result or the error message.
template <class Fn>
json guarded(Fn&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return json{{"error", e.what()}};
    }
}

json algebra_section(const MetricLieAlgebra& alg) {
    json j;
    j["dim"] = alg.dim();
    j["radical_dim"] = radical(alg).dim();
    j["center_dim"] = center(alg).dim();
    j["killing_inertia"] = jinertia(killing_form(alg).inertia());
    j["simple"] = is_simple(alg);
    return j;
}

json reducibility_section(const InfinitesimalModel& M) {
    auto split = split_into_irreducibles(M);
    json f = json::array();
    for (const auto& fac : split.factors) f.push_back({{"dim", fac.space.dim()}, {"flat", fac.flat}});
    return {{"verdict", split.reducible() ? "Reducible" : "Irreducible"},
            {"factors", f},
            {"complete", split.complete}};
}

json extension_section(const ExtensionSpec& s) {
    json j;
    auto v = validate_spec(s);
    j["valid"] = v.ok();
    if (!v.ok()) {
        j["failure"] = v.failure;
        return j;
    }
    auto bc = canonical_base_conditions(s);
    j["condition_i"] = bc.condition_i;
    j["condition_ii"] = bc.condition_ii;
    if (bc.both()) {
        auto h = holonomy_algebra(s);
        j["holonomy_formula_holds"] = h.equal();
        j["extension_reducible"] = guarded([&] { return json(extension_irreducible(s).reducible); });
    }
    return j;
}

json analysis(const Document& doc) {
    json r;
    r["kind"] = doc_kind_name(doc.kind());
    if (!doc.name.empty()) r["name"] = doc.name;
    if (doc.kind() == DocKind::Algebra) {
        r["algebra"] = algebra_section(doc.algebra());
        return r;
    }
    if (doc.kind() == DocKind::Decomposition) {
        auto rep = check_naturally_reductive(doc.decomposition());
        r["decomposition"] = {{"naturally_reductive", rep.ok()},
                              {"effective", rep.effective},
                              {"transvection", rep.transvection}};
    }
    Analyzed a = model_of(doc);
    const auto& f = a.transvection;
    r["model_dim"] = a.model.dim();
    r["torsion_zero"] = a.model.T().is_zero();
    r["type"] = type_name(classify_type(f));
    r["transvection_dim"] = f.dim();
    r["abelian_ideal"] = guarded([&] {
        auto ai = maximal_abelian_ideal(f);
        return json{{"dim", ai.a.dim()}, {"certified", ai.certified}};
    });
    r["kostant"] = guarded([&] {
        auto kf = kostant_form(f);
        return json{{"solution_dim", kf.solution_dim}, {"invariance_residual", to_string(kf.invariance_residual)}};
    });
    r["canonical_base"] = guarded([&] {
        auto cb = canonical_base(f);
        return json{{"h0_dim", cb.h0_dim},
                    {"m0_dim", cb.m0_dim},
                    {"n_dim", cb.n_dim},
                    {"normal_form", cb.normal_form},
                    {"base_dim", cb.spec.base.dim()},
                    {"k_dim", cb.spec.l()},
                    {"k_label", lie_algebra_label(matrix_span(cb.spec.k_action, cb.spec.base.q()),
                                                  cb.spec.base.q())},
                    {"B", jmat(cb.spec.B)}};
    });
    Subspace hol = a.model.image_R();
    r["holonomy"] = {{"dim", hol.dim()}, {"label", lie_algebra_label(hol, a.model.dim())}};
    r["irreducibility"] = guarded([&] { return reducibility_section(a.model); });
    if (doc.kind() == DocKind::ExtensionSpec) r["extension"] = guarded([&] { return extension_section(doc.spec()); });
    return r;
}

void text_lines(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            text_lines(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

std::string render(const json& j, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) return j.dump(2) + "\n";
    std::ostringstream out;
    text_lines(j, "", out);
    return out.str();
}

}  // namespace

std::string analyze(const Document& doc, ReportFormat fmt) { return render(analysis(doc), fmt); }

std::string verify(const Document& doc, bool& ok) {
    json r;
    r["kind"] = doc_kind_name(doc.kind());
    ok = true;
    switch (doc.kind()) {
        case DocKind::Algebra:
            r["jacobi_residual"] = to_string(jacobi_residual(doc.algebra()));
            break;
        case DocKind::Decomposition: {
            auto rep = check_naturally_reductive(doc.decomposition());
            r["naturally_reductive"] = rep.ok();
            r["nr_residual"] = to_string(rep.nr_residual);
            r["effective"] = rep.effective;
            r["transvection"] = rep.transvection;
            ok = rep.ok();
            break;
        }
        case DocKind::Model: {
            auto ax = verify_axioms(doc.model());
            r["parallel"] = ax.parallel_ok;
            r["bianchi1"] = ax.bianchi1_ok;
            r["bianchi2"] = ax.bianchi2_ok;
            ok = ax.ok();
            break;
        }
        case DocKind::ExtensionSpec: {
            auto v = validate_spec(doc.spec());
            r["valid"] = v.ok();
            if (!v.ok()) r["failure"] = v.failure;
            ok = v.ok();
            break;
        }
    }
    r["ok"] = ok;
    return r.dump(2) + "\n";
}

std::string reduce(const Document& doc, bool& reducible) {
    Analyzed a = model_of(doc);
    json r = reducibility_section(a.model);
    reducible = r["verdict"] == "Reducible";
    auto tr = torsion_reducible(a.model.T(), a.model.G());
    r["torsion_reducible"] = tr.reducible;
    if (doc.kind() == DocKind::ExtensionSpec && canonical_base_conditions(doc.spec()).both()) {
        auto er = extension_irreducible(doc.spec());
        r["extension_criterion"] = {{"reducible", er.reducible},
                                    {"blocks", er.blocks.size()},
                                    {"partitions_checked", er.partitions_checked}};
    }
    return r.dump(2) + "\n";
}

std::string iso(const Document& a, const Document& b, IsoResult::Verdict& verdict) {
    json r;
    if (a.kind() == DocKind::ExtensionSpec && b.kind() == DocKind::ExtensionSpec &&
        canonical_base_conditions(a.spec()).both() && canonical_base_conditions(b.spec()).both()) {
        auto res = extension_iso_decide(a.spec(), b.spec());
        verdict = res.verdict;
        r["method"] = "extension data";
        r["witness"] = res.witness;
        if (res.tau_m) r["certificate"] = {{"tau_h", jmat(*res.tau_h)}, {"tau_m", jmat(*res.tau_m)}, {"tau_k", jmat(*res.tau_k)}};
    } else {
        auto res = iso_decide(model_of(a).model, model_of(b).model);
        verdict = res.verdict;
        r["method"] = "infinitesimal models";
        r["witness"] = res.witness;
        if (res.certificate) r["certificate"] = jmat(*res.certificate);
    }
    r["verdict"] = verdict_name(verdict);
    return r.dump(2) + "\n";
}

Document extend_document(const ExtensionSpec& spec, const std::string& name) {
    Document doc;
    doc.name = name.empty() ? "" : name + "/extension";
    doc.payload = build_extension(spec).transvection;
    return doc;
}

Document base_document(const Document& in) {
    ReductiveDecomposition f;
    if (in.kind() == DocKind::Decomposition) f = in.decomposition();
    else if (in.kind() == DocKind::Model) f = transvection_algebra(in.model());
    else throw Error(ErrorKind::SchemaError, "base needs a decomposition or model document");
    require(is_transvection(f), ErrorKind::NotTransvection,
            "input is not a transvection decomposition; pass the model instead");
    Document doc;
    doc.name = in.name.empty() ? "" : in.name + "/base";
    doc.payload = canonical_base(f).spec;
    return doc;
}

}  // namespace natred

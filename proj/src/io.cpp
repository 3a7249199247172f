#include "natred/io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace natred {

using json = nlohmann::json;

const char* doc_kind_name(DocKind k) {
    switch (k) {
        case DocKind::Algebra: return "algebra";
        case DocKind::Decomposition: return "decomposition";
        case DocKind::Model: return "model";
        case DocKind::ExtensionSpec: return "extension_spec";
    }
    return "?";
}

size_t max_input_dim() {
    if (const char* s = std::getenv("NATRED_MAX_DIM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) return static_cast<size_t>(v);
    }
    return 24;
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::SchemaError, "field '" + path + "': " + msg);
}

// ---- reading

struct Reader {
    const json& j;
    std::string path;

    Reader at(const std::string& key) const {
        if (!j.is_object()) schema_fail(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) schema_fail(path.empty() ? key : path + "." + key, "missing");
        return Reader{*it, path.empty() ? key : path + "." + key};
    }
    Reader at(size_t i) const { return Reader{j[i], path + "[" + std::to_string(i) + "]"}; }
    size_t size() const {
        if (!j.is_array()) schema_fail(path, "expected an array");
        return j.size();
    }
    size_t index(size_t bound) const {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
            schema_fail(path, "expected a nonnegative integer");
        auto v = j.get<unsigned long long>();
        if (v >= bound) schema_fail(path, "index " + std::to_string(v) + " out of range");
        return static_cast<size_t>(v);
    }
    size_t dim() const {
        size_t d = index(static_cast<size_t>(-1));
        if (d > max_input_dim())
            throw Error(ErrorKind::DimensionLimit, "field '" + path + "': dimension " + std::to_string(d) +
                                                       " exceeds NATRED_MAX_DIM=" + std::to_string(max_input_dim()));
        return d;
    }
    std::string str() const {
        if (!j.is_string()) schema_fail(path, "expected a string");
        return j.get<std::string>();
    }
    Rational rational() const {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (!j.is_string()) schema_fail(path, "expected a rational string");
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error&) {
            schema_fail(path, "malformed rational '" + j.get<std::string>() + "'");
        }
    }
    Vector vec(size_t n) const {
        if (size() != n) schema_fail(path, "expected length " + std::to_string(n));
        Vector v(n);
        for (size_t i = 0; i < n; ++i) v[i] = at(i).rational();
        return v;
    }
    Matrix mat(size_t r, size_t c) const {
        if (size() != r) schema_fail(path, "expected " + std::to_string(r) + " rows");
        Matrix m(r, c);
        for (size_t i = 0; i < r; ++i) m.set_row(i, at(i).vec(c));
        return m;
    }
    // Matrix with a free number of rows.
    Matrix rows(size_t c) const { return mat(size(), c); }
};

// sparse [[i, j, [dense]]] with i < j
std::vector<Rational> read_brackets(const Reader& r, size_t n) {
    std::vector<Rational> c(n * n * n);
    for (size_t t = 0; t < r.size(); ++t) {
        Reader e = r.at(t);
        if (e.size() != 3) schema_fail(e.path, "expected [i, j, [coefficients]]");
        size_t i = e.at(0).index(n), j = e.at(1).index(n);
        if (i >= j) schema_fail(e.path, "bracket entries need i < j");
        Vector v = e.at(2).vec(n);
        for (size_t k = 0; k < n; ++k) {
            c[(i * n + j) * n + k] = v[k];
            c[(j * n + i) * n + k] = -v[k];
        }
    }
    return c;
}

MetricLieAlgebra read_algebra(const Reader& r) {
    size_t n = r.at("dim").dim();
    auto c = read_brackets(r.at("brackets"), n);
    try {
        return MetricLieAlgebra::create(n, std::move(c));
    } catch (const Error& e) {
        schema_fail(r.path + ".brackets", e.what());
    }
}

ReductiveDecomposition read_decomposition(const Reader& r) {
    MetricLieAlgebra alg = read_algebra(r.at("algebra"));
    size_t n = alg.dim();
    Matrix h = r.at("h").rows(n);
    Matrix m = r.at("m").rows(n);
    Matrix G = r.at("metric").mat(m.rows(), m.rows());
    try {
        return ReductiveDecomposition::create(alg, h, m, G);
    } catch (const Error& e) {
        schema_fail(r.path, e.what());
    }
}

InfinitesimalModel read_model(const Reader& r) {
    size_t n = r.at("dim").dim();
    Matrix G = r.at("metric").mat(n, n);
    Tensor T(n, 3), R(n, 4);
    Reader tr = r.at("torsion");
    for (size_t t = 0; t < tr.size(); ++t) {
        Reader e = tr.at(t);
        if (e.size() != 4) schema_fail(e.path, "expected [i, j, k, value]");
        size_t i = e.at(0).index(n), j = e.at(1).index(n), k = e.at(2).index(n);
        if (!(i < j && j < k)) schema_fail(e.path, "torsion entries need i < j < k");
        Rational v = e.at(3).rational();
        size_t idx[3] = {i, j, k};
        int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
        for (auto& p : perms) T.at(idx[p[0]], idx[p[1]], idx[p[2]]) = v * p[3];
    }
    Reader rr = r.at("curvature");
    for (size_t t = 0; t < rr.size(); ++t) {
        Reader e = rr.at(t);
        if (e.size() != 5) schema_fail(e.path, "expected [i, j, k, l, value]");
        size_t i = e.at(0).index(n), j = e.at(1).index(n), k = e.at(2).index(n), l = e.at(3).index(n);
        if (!(i < j && k < l)) schema_fail(e.path, "curvature entries need i < j and k < l");
        Rational v = e.at(4).rational();
        R.at(i, j, k, l) = v;
        R.at(j, i, k, l) = -v;
        R.at(i, j, l, k) = -v;
        R.at(j, i, l, k) = v;
    }
    try {
        return InfinitesimalModel(G, T, R);
    } catch (const Error& e) {
        schema_fail(r.path, e.what());
    }
}

std::vector<Matrix> read_k_action(const Reader& r, size_t q) {
    std::vector<Matrix> out;
    for (size_t a = 0; a < r.size(); ++a) out.push_back(r.at(a).mat(q, q));
    return out;
}

ExtensionSpec read_spec(const Reader& r) {
    ExtensionSpec s;
    s.base = read_decomposition(r.at("base"));
    s.k_action = read_k_action(r.at("k_action"), s.base.q());
    size_t l = s.l();
    s.k_bracket = read_brackets(r.at("k_bracket"), l);
    s.B = r.at("B").mat(l, l);
    return s;
}

// ---- writing

json jr(const Rational& r) { return to_string(r); }
json jvec(const Vector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(jr(x));
    return a;
}
json jmat(const Matrix& m) {
    json a = json::array();
    for (size_t i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
    return a;
}
json jbrackets(const std::vector<Rational>& c, size_t n) {
    json a = json::array();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vector v(c.begin() + (i * n + j) * n, c.begin() + (i * n + j + 1) * n);
            if (!is_zero_vec(v)) a.push_back(json::array({i, j, jvec(v)}));
        }
    return a;
}
json jalgebra(const MetricLieAlgebra& a) { return {{"dim", a.dim()}, {"brackets", jbrackets(a.constants(), a.dim())}}; }
json jdecomposition(const ReductiveDecomposition& d) {
    return {{"algebra", jalgebra(d.original_algebra())},
            {"h", jmat(d.h_rows())},
            {"m", jmat(d.m_rows())},
            {"metric", jmat(d.G())}};
}
json jmodel(const InfinitesimalModel& M) {
    size_t n = M.dim();
    json t = json::array(), r = json::array();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                if (!is_zero(M.T().at(i, j, k))) t.push_back(json::array({i, j, k, jr(M.T().at(i, j, k))}));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = k + 1; l < n; ++l)
                    if (!is_zero(M.R().at(i, j, k, l)))
                        r.push_back(json::array({i, j, k, l, jr(M.R().at(i, j, k, l))}));
    return {{"dim", n}, {"metric", jmat(M.G())}, {"torsion", t}, {"curvature", r}};
}
json jspec(const ExtensionSpec& s) {
    json acts = json::array();
    for (const auto& A : s.k_action) acts.push_back(jmat(A));
    return {{"base", jdecomposition(s.base)},
            {"k_action", acts},
            {"k_bracket", jbrackets(s.k_bracket, s.l())},
            {"B", jmat(s.B)}};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw Error(ErrorKind::SchemaError, "line " + std::to_string(line) + ": " + e.what());
    }
}

}  // namespace

Document parse_document(const std::string& text) {
    json j = parse_json(text);
    Reader root{j, ""};
    if (!j.is_object()) schema_fail("", "document must be an object");
    if (root.at("schema_version").str() != kSchemaVersion)
        schema_fail("schema_version", "unsupported version (expected \"1\")");
    std::string kind = root.at("kind").str();
    Document doc;
    if (j.contains("name")) doc.name = root.at("name").str();
    Reader p = root.at("payload");
    if (kind == "algebra") doc.payload = read_algebra(p);
    else if (kind == "decomposition") doc.payload = read_decomposition(p);
    else if (kind == "model") doc.payload = read_model(p);
    else if (kind == "extension_spec") doc.payload = read_spec(p);
    else schema_fail("kind", "unknown kind '" + kind + "'");
    return doc;
}

std::string emit_document(const Document& doc) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = doc_kind_name(doc.kind());
    if (!doc.name.empty()) j["name"] = doc.name;
    switch (doc.kind()) {
        case DocKind::Algebra: j["payload"] = jalgebra(doc.algebra()); break;
        case DocKind::Decomposition: j["payload"] = jdecomposition(doc.decomposition()); break;
        case DocKind::Model: j["payload"] = jmodel(doc.model()); break;
        case DocKind::ExtensionSpec: j["payload"] = jspec(doc.spec()); break;
    }
    return j.dump(2) + "\n";
}

ExtensionSpec spec_from_fragments(const ReductiveDecomposition& base, const std::string& k_text,
                                  const std::string& B_text) {
    json kj = parse_json(k_text), bj = parse_json(B_text);
    ExtensionSpec s;
    s.base = base;
    s.k_action = read_k_action(Reader{kj, ""}.at("k_action"), base.q());
    s.k_bracket = read_brackets(Reader{kj, ""}.at("k_bracket"), s.l());
    s.B = Reader{bj, ""}.at("B").mat(s.l(), s.l());
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::SchemaError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::SchemaError, "cannot write '" + path + "'");
    out << text;
}

}  // namespace natred

#include "natred/catalog.hpp"
#include "natred/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace natred;

namespace {

Document load(const std::string& path) { return parse_document(read_file(path)); }

void output(const std::string& text, const std::string& path) {
    if (path.empty()) std::cout << text;
    else write_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"natred: naturally reductive spaces, exact arithmetic"};
    app.require_subcommand(1);

    std::string file, file_b, out, k_file, B_file, format = "json", name;

    auto* verify_cmd = app.add_subcommand("verify", "Check axioms or validation rules of a document");
    verify_cmd->add_option("file", file, "input document")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis report");
    analyze_cmd->add_option("file", file, "input document")->required();
    analyze_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* extend_cmd = app.add_subcommand("extend", "Build the transvection algebra of a (k,B)-extension");
    extend_cmd->add_option("base", file, "base decomposition, or a full extension_spec document")->required();
    extend_cmd->add_option("--k", k_file, "JSON with k_action and k_bracket");
    extend_cmd->add_option("--B", B_file, "JSON with B");
    extend_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");

    auto* base_cmd = app.add_subcommand("base", "Extract the canonical base as an extension_spec");
    base_cmd->add_option("file", file, "transvection decomposition or model")->required();
    base_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");

    auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism of two documents");
    iso_cmd->add_option("a", file, "first document")->required();
    iso_cmd->add_option("b", file_b, "second document")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "Irreducibility verdict (exit 1 when reducible)");
    reduce_cmd->add_option("file", file, "input document")->required();

    auto* catalog_cmd = app.add_subcommand("catalog", "Built-in examples");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "List catalog names");
    auto* emit_cmd = catalog_cmd->add_subcommand("emit", "Emit a catalog document");
    emit_cmd->add_option("name", name, "catalog name, e.g. flat_Rn(3)")->required();
    emit_cmd->add_option("-o,--output", out, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify_cmd->parsed()) {
            bool ok = false;
            std::cout << verify(load(file), ok);
            return ok ? 0 : 1;
        }
        if (analyze_cmd->parsed()) {
            std::cout << analyze(load(file), format == "text" ? ReportFormat::Text : ReportFormat::Json);
            return 0;
        }
        if (extend_cmd->parsed()) {
            Document in = load(file);
            ExtensionSpec spec;
            if (in.kind() == DocKind::ExtensionSpec) {
                spec = in.spec();
            } else {
                if (in.kind() != DocKind::Decomposition || k_file.empty() || B_file.empty())
                    throw Error(ErrorKind::SchemaError,
                                "extend needs a decomposition with --k and --B, or an extension_spec document");
                spec = spec_from_fragments(in.decomposition(), read_file(k_file), read_file(B_file));
            }
            output(emit_document(extend_document(spec, in.name)), out);
            return 0;
        }
        if (base_cmd->parsed()) {
            output(emit_document(base_document(load(file))), out);
            return 0;
        }
        if (iso_cmd->parsed()) {
            IsoResult::Verdict v;
            std::cout << iso(load(file), load(file_b), v);
            return v == IsoResult::Verdict::Yes ? 0 : v == IsoResult::Verdict::No ? 1 : 2;
        }
        if (reduce_cmd->parsed()) {
            bool reducible = false;
            std::cout << reduce(load(file), reducible);
            return reducible ? 1 : 0;
        }
        if (list_cmd->parsed()) {
            for (const auto& n : catalog_names()) std::cout << n << "\n";
            return 0;
        }
        if (emit_cmd->parsed()) {
            output(emit_document(catalog(name)), out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

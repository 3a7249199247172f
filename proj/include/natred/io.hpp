#pragma once

#include "natred/decomposition.hpp"

#include <string>
#include <variant>

namespace natred {

enum class DocKind { Algebra, Decomposition, Model, ExtensionSpec };

const char* doc_kind_name(DocKind k);

struct Document {
    std::string name;  // optional, empty when absent
    std::variant<MetricLieAlgebra, ReductiveDecomposition, InfinitesimalModel, ExtensionSpec> payload;

    DocKind kind() const { return static_cast<DocKind>(payload.index()); }
    const MetricLieAlgebra& algebra() const { return std::get<MetricLieAlgebra>(payload); }
    const ReductiveDecomposition& decomposition() const { return std::get<ReductiveDecomposition>(payload); }
    const InfinitesimalModel& model() const { return std::get<InfinitesimalModel>(payload); }
    const ExtensionSpec& spec() const { return std::get<ExtensionSpec>(payload); }
};

inline constexpr const char* kSchemaVersion = "1";

// Throws Error(SchemaError) with a line number for syntax errors and a field path otherwise.
Document parse_document(const std::string& text);
std::string emit_document(const Document& doc);

// Parses {"k_action": [...], "k_bracket": [...]} and {"B": ...} fragments used by `extend`.
ExtensionSpec spec_from_fragments(const ReductiveDecomposition& base, const std::string& k_text,
                                  const std::string& B_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// NATRED_MAX_DIM, default 24.
size_t max_input_dim();

}  // namespace natred

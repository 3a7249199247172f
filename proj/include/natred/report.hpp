#pragma once

#include "natred/io.hpp"

#include <string>

namespace natred {

enum class ReportFormat { Json, Text };

// Full analysis. Deterministic: equal documents give byte-identical output.
std::string analyze(const Document& doc, ReportFormat fmt = ReportFormat::Json);

// Validation only; `ok` is false on a failed axiom/spec check.
std::string verify(const Document& doc, bool& ok);

// Irreducibility verdict with witness; `reducible` set accordingly.
std::string reduce(const Document& doc, bool& reducible);

// Isomorphism between two documents; `verdict` receives the result.
std::string iso(const Document& a, const Document& b, IsoResult::Verdict& verdict);

// Transvection decomposition of the extension defined by `spec`.
Document extend_document(const ExtensionSpec& spec, const std::string& name = "");

// Canonical base of a transvection decomposition or of a model, as an extension_spec.
Document base_document(const Document& in);

}  // namespace natred

#include "skillc/errors.hpp"

namespace skillc {

std::string_view to_string(InterceptionCategory c) {
  switch (c) {
    case InterceptionCategory::yaml_violation: return "yaml_violation";
    case InterceptionCategory::security_interception: return "security_interception";
    case InterceptionCategory::schema_violation: return "schema_violation";
  }
  return "security_interception";
}

InterceptionCategory interception_category_for(std::string_view code) {
  if (code.rfind("FM_", 0) == 0) return InterceptionCategory::yaml_violation;
  if (code.rfind("SCHEMA_", 0) == 0) return InterceptionCategory::schema_violation;
  return InterceptionCategory::security_interception;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::fatal) return d.code + ": " + d.message;
  }
  return diags.empty() ? std::string("compilation intercepted")
                       : diags.front().code + ": " + diags.front().message;
}

}  // namespace

CompilationInterception::CompilationInterception(InterceptionCategory category,
                                                 std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)),
      category_(category),
      diagnostics_(std::move(diagnostics)) {}

FrontmatterError::FrontmatterError(Diagnostic d)
    : CompilationInterception(InterceptionCategory::yaml_violation, {std::move(d)}) {}

FrontmatterError::FrontmatterError(std::vector<Diagnostic> diags)
    : CompilationInterception(InterceptionCategory::yaml_violation, std::move(diags)) {}

SchemaValidationError::SchemaValidationError(Diagnostic d)
    : CompilationInterception(InterceptionCategory::schema_violation, {std::move(d)}) {}

}  // namespace skillc

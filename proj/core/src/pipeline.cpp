#include "skillc/pipeline.hpp"

#include <algorithm>

#include "skillc/skill_ir.hpp"

namespace skillc {

namespace {

// Strict mode promotes warnings to interceptions; the category follows the
// first warning's code.
void enforce_strict(const std::vector<Diagnostic>& diags) {
  auto warning = std::find_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::warning;
  });
  if (warning == diags.end()) return;
  std::vector<Diagnostic> promoted = diags;
  throw CompilationInterception(interception_category_for(warning->code), std::move(promoted));
}

}  // namespace

ValidatedSkillIR analyze_source(const SourceFile& source, const CompileOptions& options,
                                PipelineStats* stats) {
  std::vector<Diagnostic> warnings;
  RawAst ast = parse_skill(source, &warnings);
  if (stats) stats->frontend_runs.fetch_add(1, std::memory_order_relaxed);

  SkillIR ir = build_ir(ast);
  if (stats) stats->ir_builds.fetch_add(1, std::memory_order_relaxed);

  ValidatedSkillIR validated;
  try {
    validated = optimize(ir, options.baseline, options.rules);
  } catch (const CompilationInterception& e) {
    std::vector<Diagnostic> all = warnings;
    all.insert(all.end(), e.diagnostics().begin(), e.diagnostics().end());
    throw CompilationInterception(e.category(), std::move(all));
  }
  if (stats) stats->optimizer_runs.fetch_add(1, std::memory_order_relaxed);

  validated.diagnostics.insert(validated.diagnostics.begin(), warnings.begin(), warnings.end());
  if (options.strict) enforce_strict(validated.diagnostics);
  return validated;
}

SkillCompilation compile_source(const SourceFile& source, const CompileOptions& options,
                                const EmitterRegistry& registry, PipelineStats* stats) {
  SkillCompilation result;
  result.validated = analyze_source(source, options, stats);
  for (const auto& id : registry.ids()) {
    result.artifacts.emplace(id, emit(result.validated, id, registry));
    if (stats) stats->emissions.fetch_add(1, std::memory_order_relaxed);
  }
  return result;
}

}  // namespace skillc

#include "skillc/metrics.hpp"

#include <chrono>

namespace skillc {

std::int64_t estimate_tokens(std::string_view text) {
  return static_cast<std::int64_t>((text.size() + 3) / 4);
}

std::string_view to_string(Complexity c) {
  switch (c) {
    case Complexity::simple: return "simple";
    case Complexity::medium: return "medium";
    case Complexity::complex_: return "complex";
  }
  return "simple";
}

Complexity classify_complexity(std::int64_t source_tokens) {
  if (source_tokens < 500) return Complexity::simple;
  if (source_tokens <= 1500) return Complexity::medium;
  return Complexity::complex_;
}

namespace {

CompileReport report_base(const SourceFile& source, double duration_ms) {
  CompileReport report;
  report.skill_name = source.path;
  report.source_tokens = estimate_tokens(source.content);
  report.complexity = classify_complexity(report.source_tokens);
  report.duration_ms = duration_ms;
  return report;
}

}  // namespace

CompileReport build_report(const SourceFile& source, const SkillCompilation& compiled,
                           double duration_ms) {
  CompileReport report = report_base(source, duration_ms);
  report.skill_name = compiled.validated.ir.name;
  report.triggered_rule_ids = compiled.validated.triggered_rule_ids;
  for (const auto& [id, artifact] : compiled.artifacts) {
    const std::int64_t tokens = estimate_tokens(artifact.main_document);
    report.per_target_tokens[id] = tokens;
    report.per_target_overhead[id] =
        report.source_tokens > 0 ? static_cast<double>(tokens - report.source_tokens) /
                                       static_cast<double>(report.source_tokens)
                                 : 0.0;
  }
  return report;
}

CompileReport build_report(const SourceFile& source, InterceptionCategory category,
                           double duration_ms) {
  CompileReport report = report_base(source, duration_ms);
  report.interception = category;
  return report;
}

CompileReport measure_compile(const SourceFile& source, const CompileOptions& options,
                              const EmitterRegistry& registry, PipelineStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  try {
    SkillCompilation compiled = compile_source(source, options, registry, stats);
    const auto stop = std::chrono::steady_clock::now();
    return build_report(source, compiled,
                        std::chrono::duration<double, std::milli>(stop - start).count());
  } catch (const CompilationInterception& e) {
    const auto stop = std::chrono::steady_clock::now();
    return build_report(source, e.category(),
                        std::chrono::duration<double, std::milli>(stop - start).count());
  }
}

nlohmann::ordered_json report_to_json(const CompileReport& report) {
  nlohmann::ordered_json out;
  out["skill_name"] = report.skill_name;
  out["complexity"] = std::string(to_string(report.complexity));
  out["source_tokens"] = report.source_tokens;
  if (report.interception) {
    out["interception"] = std::string(to_string(*report.interception));
  } else {
    nlohmann::ordered_json tokens;
    for (const auto& [id, value] : report.per_target_tokens) tokens[id] = value;
    out["per_target_tokens"] = std::move(tokens);
    nlohmann::ordered_json overhead;
    for (const auto& [id, value] : report.per_target_overhead) overhead[id] = value;
    out["per_target_overhead"] = std::move(overhead);
    out["triggered_rule_ids"] = report.triggered_rule_ids;
  }
  out["duration_ms"] = report.duration_ms;
  return out;
}

std::string serialize_reports(const std::vector<CompileReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& report : reports) arr.push_back(report_to_json(report));
  return arr.dump(2) + "\n";
}

}  // namespace skillc

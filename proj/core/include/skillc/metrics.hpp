#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "skillc/pipeline.hpp"

namespace skillc {

/// Fixed size heuristic: ceil(bytes / 4). Deterministic and
/// tokenizer-independent; every size band in this project is stated against
/// this estimate, not any model tokenizer.
std::int64_t estimate_tokens(std::string_view text);

enum class Complexity { simple, medium, complex_ };

std::string_view to_string(Complexity c);

/// simple < 500 tokens, medium 500..1500 inclusive, complex > 1500.
Complexity classify_complexity(std::int64_t source_tokens);

/// Per-skill compilation record. For intercepted skills the per-target maps
/// and triggered set are absent and `interception` carries the category.
struct CompileReport {
  std::string skill_name;
  Complexity complexity = Complexity::simple;
  std::int64_t source_tokens = 0;
  std::map<EmitterId, std::int64_t> per_target_tokens;
  std::map<EmitterId, double> per_target_overhead;
  double duration_ms = 0.0;
  std::set<std::string> triggered_rule_ids;
  std::optional<InterceptionCategory> interception;
};

/// Runs the full pipeline with wall-clock timing (monotonic clock, emission
/// to string only — disk writes are excluded). Interceptions are recorded in
/// the report, never thrown.
CompileReport measure_compile(const SourceFile& source, const CompileOptions& options,
                              const EmitterRegistry& registry, PipelineStats* stats = nullptr);

CompileReport build_report(const SourceFile& source, const SkillCompilation& compiled,
                           double duration_ms);
CompileReport build_report(const SourceFile& source, InterceptionCategory category,
                           double duration_ms);

nlohmann::ordered_json report_to_json(const CompileReport& report);
std::string serialize_reports(const std::vector<CompileReport>& reports);

}  // namespace skillc

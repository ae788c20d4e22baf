#pragma once

#include <atomic>
#include <cstdint>
#include <map>

#include "skillc/emitter.hpp"
#include "skillc/frontend.hpp"
#include "skillc/optimizer.hpp"

namespace skillc {

/// Phase counters. Phases 1-3 run once per skill no matter how many targets
/// are registered; emissions grow with the registry instead.
struct PipelineStats {
  std::atomic<std::uint64_t> frontend_runs{0};
  std::atomic<std::uint64_t> ir_builds{0};
  std::atomic<std::uint64_t> optimizer_runs{0};
  std::atomic<std::uint64_t> emissions{0};
};

struct CompileOptions {
  SecurityBaseline baseline = SecurityBaseline::defaults();
  std::vector<InjectionRule> rules = builtin_injection_rules();
  bool strict = false;  // promote warnings to interceptions
};

/// Phases 1-3: parse, build IR, optimize. Throws CompilationInterception on
/// any fatal (or, under strict, any warning).
ValidatedSkillIR analyze_source(const SourceFile& source, const CompileOptions& options,
                                PipelineStats* stats = nullptr);

struct SkillCompilation {
  ValidatedSkillIR validated;
  std::map<EmitterId, EmittedArtifact> artifacts;
};

/// Full pipeline: phases 1-3 once, then one emission per registered target.
SkillCompilation compile_source(const SourceFile& source, const CompileOptions& options,
                                const EmitterRegistry& registry, PipelineStats* stats = nullptr);

}  // namespace skillc

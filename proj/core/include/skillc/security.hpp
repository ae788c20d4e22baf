#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "skillc/skill_ir.hpp"

namespace skillc {

/// Policy the optimizer audits skills against. The defaults trust no MCP
/// server, allow writes only under the workspace, and treat the universal
/// glob and plain-http scopes as too broad.
struct SecurityBaseline {
  std::set<std::string> trusted_mcp_servers;
  std::vector<std::string> allowed_write_roots;
  std::vector<std::string> forbidden_network_scopes;
  int max_permissions = 8;

  static SecurityBaseline defaults();

  bool operator==(const SecurityBaseline&) const = default;
};

struct InjectionRule {
  std::string id;
  std::vector<std::string> trigger_keywords;
  std::string constraint_text;
  ConstraintLevel level = ConstraintLevel::warning;

  bool operator==(const InjectionRule&) const = default;
};

// Built-in rule ids.
inline constexpr char kRuleHttpSafety[] = "http-safety";
inline constexpr char kRuleParseSafety[] = "parse-safety";
inline constexpr char kRuleDbSafety[] = "db-safety";
inline constexpr char kRuleLoopSafety[] = "loop-safety";

/// The four built-in anti-skill rules (HTTP, HTML-parse, destructive-DB,
/// loop safety) with their trigger keywords and constraint texts.
const std::vector<InjectionRule>& builtin_injection_rules();

/// Loads a YAML baseline file on top of `base`; keys present in the file
/// replace the corresponding field. Throws std::runtime_error on I/O or
/// format problems (a config error, not a per-skill interception).
SecurityBaseline load_baseline_file(const std::filesystem::path& file,
                                    SecurityBaseline base = SecurityBaseline::defaults());

/// Loads a YAML rule-set file. File rules extend the built-ins; a file rule
/// whose id matches an existing one replaces it, keeping ids unique. Throws
/// std::runtime_error on malformed entries (missing id/keywords/constraint,
/// illegal level).
std::vector<InjectionRule> load_rules_file(const std::filesystem::path& file,
                                           std::vector<InjectionRule> base = builtin_injection_rules());

/// Simple glob match: `*` matches any run (including separators), `?` one
/// character, everything else literal.
bool glob_match(std::string_view pattern, std::string_view text);

}  // namespace skillc

#pragma once

#include <set>
#include <string>
#include <vector>

#include "skillc/errors.hpp"
#include "skillc/security.hpp"
#include "skillc/skill_ir.hpp"

namespace skillc {

/// Phase-3 output: the hardened IR plus everything the analyses learned.
/// Never contains a fatal diagnostic — fatals become interceptions instead.
struct ValidatedSkillIR {
  SkillIR ir;
  std::vector<Diagnostic> diagnostics;
  std::set<std::string> triggered_rule_ids;
};

/// Pass 1: baseline integrity. Fatal diagnostics for name/version/description
/// violations, malformed schema trees, duplicate or untrusted MCP servers.
std::vector<Diagnostic> validate_structure(const SkillIR& ir, const SecurityBaseline& baseline);

/// Pass 2: permission audit. PERM_FORBIDDEN (fatal) for filesystem writes to
/// `/` or `/**`; PERM_BROAD for scopes matching a forbidden glob or writes
/// escaping every allowed root; PERM_COUNT over the baseline limit.
std::vector<Diagnostic> audit_permissions(const SkillIR& ir, const SecurityBaseline& baseline);

struct InjectionResult {
  SkillIR ir;
  std::set<std::string> triggered_rule_ids;
};

/// Pass 3: anti-skill injection. Scans procedure instructions and code block
/// contents; a rule that matches any trigger keyword appends exactly one
/// global constraint (source "anti-skill-injector"), deduplicated on
/// (source, content) so the pass is idempotent.
InjectionResult inject_anti_skill(const SkillIR& ir, const std::vector<InjectionRule>& rules);

struct Classification {
  SecurityLevel level = SecurityLevel::low;
  bool hitl_required = false;
};

/// Pass 4: tier assignment.
///   critical  db-safety triggered + a write permission + a PERM_BROAD warning
///   high      a write permission + any rule triggered
///   medium    any rule triggered or any PERM_BROAD warning
///   low       otherwise
/// An author-declared security hint can only raise the computed level.
/// hitl_required is true exactly for high and critical.
Classification classify_security(const SkillIR& ir, const std::vector<Diagnostic>& audit_diags,
                                 const std::set<std::string>& triggered);

/// Runs the four passes in their fixed order, accumulating diagnostics.
/// Throws CompilationInterception as soon as a pass produces a fatal
/// diagnostic; later passes are not run.
ValidatedSkillIR optimize(const SkillIR& ir, const SecurityBaseline& baseline,
                          const std::vector<InjectionRule>& rules);

/// Keyword predicate used by the injector: case-insensitive; single-token
/// keywords match whole alphanumeric runs, multi-word keywords match as a
/// contiguous token sequence.
bool matches_keyword(std::string_view text, std::string_view keyword);

}  // namespace skillc

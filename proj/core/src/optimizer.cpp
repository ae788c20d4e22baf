#include "skillc/optimizer.hpp"

#include <algorithm>
#include <cctype>

namespace skillc {

namespace {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool is_kebab_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto lower_or_digit = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  if (!lower_or_digit(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return lower_or_digit(c) || c == '-'; });
}

bool is_semver_triple(std::string_view s) {
  int parts = 0;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t dot = s.find('.', i);
    std::string_view part = s.substr(i, (dot == std::string_view::npos ? s.size() : dot) - i);
    if (part.empty() ||
        !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return false;
    ++parts;
    if (dot == std::string_view::npos) break;
    i = dot + 1;
  }
  return parts == 3;
}

bool schema_shape_valid(const SchemaNode& node) {
  if (!node.properties.empty() && node.kind != SchemaKind::object) return false;
  if (!node.items.empty() && node.kind != SchemaKind::array) return false;
  if (node.items.size() > 1) return false;
  for (const auto& [name, child] : node.properties) {
    if (!schema_shape_valid(child)) return false;
  }
  for (const auto& child : node.items) {
    if (!schema_shape_valid(child)) return false;
  }
  return true;
}

// A write scope stays inside an allowed root when the root is `P/**` and the
// scope equals P or starts with `P/`, or when the two are identical.
bool within_write_root(std::string_view scope, std::string_view root) {
  constexpr std::string_view kSuffix = "/**";
  if (root.size() > kSuffix.size() && root.substr(root.size() - kSuffix.size()) == kSuffix) {
    std::string_view prefix = root.substr(0, root.size() - kSuffix.size());
    if (scope == prefix) return true;
    if (scope.size() > prefix.size() && scope.substr(0, prefix.size()) == prefix &&
        scope[prefix.size()] == '/')
      return true;
    return scope == root;
  }
  return scope == root;
}

// The universal forbidden entry `*` names the literal scope `*`; flagging
// every scope it can glob-match would mark all permissions broad.
bool scope_forbidden_by(std::string_view scope, std::string_view forbidden) {
  if (forbidden == "*") return scope == "*";
  return scope == forbidden || glob_match(forbidden, scope);
}

}  // namespace

bool matches_keyword(std::string_view text, std::string_view keyword) {
  const std::vector<std::string> needle = tokenize(keyword);
  if (needle.empty()) return false;
  const std::vector<std::string> haystack = tokenize(text);
  if (haystack.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (haystack[i + k] != needle[k]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::vector<Diagnostic> validate_structure(const SkillIR& ir, const SecurityBaseline& baseline) {
  std::vector<Diagnostic> diags;
  if (!is_kebab_identifier(ir.name)) {
    diags.push_back(make_diag(codes::kFmName, Severity::fatal,
                              "skill name '" + ir.name + "' must match [a-z0-9][a-z0-9-]*"));
  }
  if (ir.description.empty()) {
    diags.push_back(
        make_diag(codes::kFmYaml, Severity::fatal, "skill description must be nonempty"));
  }
  if (!is_semver_triple(ir.version)) {
    diags.push_back(make_diag(codes::kFmVersion, Severity::fatal,
                              "version '" + ir.version + "' must be MAJOR.MINOR.PATCH"));
  }
  if (ir.input_schema && !schema_shape_valid(*ir.input_schema)) {
    diags.push_back(make_diag(codes::kSchemaType, Severity::fatal,
                              "input_schema violates schema shape invariants"));
  }
  std::set<std::string> seen;
  for (const auto& server : ir.mcp_servers) {
    if (!seen.insert(server).second) {
      diags.push_back(make_diag(codes::kFmMcpDup, Severity::fatal,
                                "duplicate mcp_servers entry '" + server + "'"));
      continue;
    }
    if (!baseline.trusted_mcp_servers.count(server)) {
      Diagnostic d = make_diag(codes::kMcpUntrusted, Severity::fatal,
                               "MCP server '" + server + "' is not in the trusted baseline");
      d.hint = "add it to trusted_mcp_servers in the security baseline";
      diags.push_back(std::move(d));
    }
  }
  return diags;
}

std::vector<Diagnostic> audit_permissions(const SkillIR& ir, const SecurityBaseline& baseline) {
  std::vector<Diagnostic> diags;
  for (const auto& perm : ir.permissions) {
    const bool filesystem_write = perm.kind == PermissionKind::filesystem && !perm.read_only;
    if (filesystem_write && (perm.scope == "/" || perm.scope == "/**")) {
      diags.push_back(make_diag(codes::kPermForbidden, Severity::fatal,
                                "filesystem write permission over '" + perm.scope +
                                    "' grants unrestricted disk access"));
      continue;
    }
    bool broad = std::any_of(
        baseline.forbidden_network_scopes.begin(), baseline.forbidden_network_scopes.end(),
        [&](const std::string& forbidden) { return scope_forbidden_by(perm.scope, forbidden); });
    if (!broad && filesystem_write) {
      broad = std::none_of(
          baseline.allowed_write_roots.begin(), baseline.allowed_write_roots.end(),
          [&](const std::string& root) { return within_write_root(perm.scope, root); });
    }
    if (broad) {
      Diagnostic d =
          make_diag(codes::kPermBroad, Severity::warning,
                    std::string(to_string(perm.kind)) + " permission scope '" + perm.scope +
                        "' is overly broad");
      d.hint = "narrow the scope to the resources the skill actually needs";
      diags.push_back(std::move(d));
    }
  }
  if (static_cast<int>(ir.permissions.size()) > baseline.max_permissions) {
    diags.push_back(make_diag(codes::kPermCount, Severity::warning,
                              "skill declares " + std::to_string(ir.permissions.size()) +
                                  " permissions; baseline allows " +
                                  std::to_string(baseline.max_permissions)));
  }
  return diags;
}

InjectionResult inject_anti_skill(const SkillIR& ir, const std::vector<InjectionRule>& rules) {
  InjectionResult result{ir, {}};

  std::vector<const std::string*> scan_texts;
  scan_texts.reserve(ir.procedures.size() + ir.code_blocks.size());
  for (const auto& proc : ir.procedures) scan_texts.push_back(&proc.instruction);
  for (const auto& code : ir.code_blocks) scan_texts.push_back(&code.content);

  for (const auto& rule : rules) {
    const bool hit = std::any_of(scan_texts.begin(), scan_texts.end(), [&](const std::string* text) {
      return std::any_of(rule.trigger_keywords.begin(), rule.trigger_keywords.end(),
                         [&](const std::string& kw) { return matches_keyword(*text, kw); });
    });
    if (!hit) continue;
    result.triggered_rule_ids.insert(rule.id);
    const bool present = std::any_of(
        result.ir.anti_skill_constraints.begin(), result.ir.anti_skill_constraints.end(),
        [&](const AntiSkillConstraint& c) {
          return c.source == kInjectorSource && c.content == rule.constraint_text;
        });
    if (!present) {
      result.ir.anti_skill_constraints.push_back(
          AntiSkillConstraint{kInjectorSource, rule.constraint_text, rule.level, "global"});
    }
  }
  result.ir.requires_yaml_optimization = detect_yaml_optimization(result.ir.input_schema);
  return result;
}

Classification classify_security(const SkillIR& ir, const std::vector<Diagnostic>& audit_diags,
                                 const std::set<std::string>& triggered) {
  const bool has_write = std::any_of(ir.permissions.begin(), ir.permissions.end(),
                                     [](const Permission& p) { return !p.read_only; });
  const bool has_broad =
      std::any_of(audit_diags.begin(), audit_diags.end(),
                  [](const Diagnostic& d) { return d.code == codes::kPermBroad; });

  SecurityLevel level = SecurityLevel::low;
  if (triggered.count(kRuleDbSafety) && has_write && has_broad) {
    level = SecurityLevel::critical;
  } else if (has_write && !triggered.empty()) {
    level = SecurityLevel::high;
  } else if (!triggered.empty() || has_broad) {
    level = SecurityLevel::medium;
  }
  if (ir.author_security_hint && *ir.author_security_hint > level) {
    level = *ir.author_security_hint;
  }
  return Classification{level, level == SecurityLevel::high || level == SecurityLevel::critical};
}

namespace {

[[noreturn]] void intercept(std::vector<Diagnostic> diags) {
  auto fatal = std::find_if(diags.begin(), diags.end(),
                            [](const Diagnostic& d) { return d.severity == Severity::fatal; });
  const InterceptionCategory category = fatal != diags.end()
                                            ? interception_category_for(fatal->code)
                                            : InterceptionCategory::security_interception;
  throw CompilationInterception(category, std::move(diags));
}

}  // namespace

ValidatedSkillIR optimize(const SkillIR& ir, const SecurityBaseline& baseline,
                          const std::vector<InjectionRule>& rules) {
  std::vector<Diagnostic> diags = validate_structure(ir, baseline);
  if (has_fatal(diags)) intercept(std::move(diags));

  std::vector<Diagnostic> audit = audit_permissions(ir, baseline);
  diags.insert(diags.end(), audit.begin(), audit.end());
  if (has_fatal(audit)) intercept(std::move(diags));

  InjectionResult injected = inject_anti_skill(ir, rules);
  for (const auto& rule_id : injected.triggered_rule_ids) {
    diags.push_back(make_diag(codes::kRuleTriggered, Severity::info,
                              "anti-skill rule '" + rule_id + "' triggered"));
  }

  const Classification cls = classify_security(injected.ir, audit, injected.triggered_rule_ids);
  injected.ir.security_level = cls.level;
  injected.ir.hitl_required = cls.hitl_required;
  injected.ir.requires_yaml_optimization = detect_yaml_optimization(injected.ir.input_schema);

  ValidatedSkillIR validated;
  validated.ir = std::move(injected.ir);
  validated.diagnostics = std::move(diags);
  validated.triggered_rule_ids = std::move(injected.triggered_rule_ids);
  return validated;
}

}  // namespace skillc

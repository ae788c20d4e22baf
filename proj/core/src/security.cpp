#include "skillc/security.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace skillc {

SecurityBaseline SecurityBaseline::defaults() {
  SecurityBaseline baseline;
  baseline.allowed_write_roots = {"./**"};
  baseline.forbidden_network_scopes = {"*", "http://*"};
  baseline.max_permissions = 8;
  return baseline;
}

const std::vector<InjectionRule>& builtin_injection_rules() {
  static const std::vector<InjectionRule> rules = {
      {kRuleHttpSafety,
       {"HTTP", "GET", "POST", "fetch", "request"},
       "Never execute HTTP without timeout (10s). Max 3 retries on 403.",
       ConstraintLevel::warning},
      {kRuleParseSafety,
       {"BeautifulSoup", "HTML parse", "scrape"},
       "Do not parse raw JS variables with HTML parsers. Fallback to Regex.",
       ConstraintLevel::warning},
      {kRuleDbSafety,
       {"DROP", "DELETE", "TRUNCATE"},
       "No destructive DB ops without user confirmation. Show affected rows.",
       ConstraintLevel::warning},
      {kRuleLoopSafety,
       {"while", "loop", "repeat"},
       "All loops must have max iteration limit (1000).",
       ConstraintLevel::warning},
  };
  return rules;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star_p = std::string_view::npos, star_t = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == text[t] || pattern[p] == '?')) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star_p = p++;
      star_t = t;
    } else if (star_p != std::string_view::npos) {
      p = star_p + 1;
      t = ++star_t;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

YAML::Node load_yaml_file(const std::filesystem::path& file) {
  try {
    return YAML::LoadFile(file.string());
  } catch (const YAML::Exception& e) {
    throw std::runtime_error("cannot load " + file.string() + ": " + e.msg);
  }
}

std::vector<std::string> string_list(const YAML::Node& node, const std::string& key,
                                     const std::filesystem::path& file) {
  std::vector<std::string> out;
  if (!node.IsSequence()) {
    throw std::runtime_error(file.string() + ": '" + key + "' must be a list of strings");
  }
  for (const auto& item : node) {
    if (!item.IsScalar()) {
      throw std::runtime_error(file.string() + ": '" + key + "' entries must be strings");
    }
    out.push_back(item.Scalar());
  }
  return out;
}

}  // namespace

SecurityBaseline load_baseline_file(const std::filesystem::path& file, SecurityBaseline base) {
  const YAML::Node root = load_yaml_file(file);
  if (!root.IsMap()) {
    throw std::runtime_error(file.string() + ": baseline file must be a YAML mapping");
  }
  if (const auto node = root["trusted_mcp_servers"]) {
    const auto list = string_list(node, "trusted_mcp_servers", file);
    base.trusted_mcp_servers = std::set<std::string>(list.begin(), list.end());
  }
  if (const auto node = root["allowed_write_roots"]) {
    base.allowed_write_roots = string_list(node, "allowed_write_roots", file);
    for (const auto& root_glob : base.allowed_write_roots) {
      if (root_glob.empty()) {
        throw std::runtime_error(file.string() + ": allowed_write_roots entries must be nonempty");
      }
    }
  }
  if (const auto node = root["forbidden_network_scopes"]) {
    base.forbidden_network_scopes = string_list(node, "forbidden_network_scopes", file);
  }
  if (const auto node = root["max_permissions"]) {
    try {
      base.max_permissions = node.as<int>();
    } catch (const YAML::Exception&) {
      throw std::runtime_error(file.string() + ": 'max_permissions' must be an integer");
    }
    if (base.max_permissions < 0) {
      throw std::runtime_error(file.string() + ": 'max_permissions' must be non-negative");
    }
  }
  return base;
}

std::vector<InjectionRule> load_rules_file(const std::filesystem::path& file,
                                           std::vector<InjectionRule> base) {
  const YAML::Node root = load_yaml_file(file);
  const YAML::Node rules = root.IsMap() ? root["rules"] : YAML::Node();
  if (!rules || !rules.IsSequence()) {
    throw std::runtime_error(file.string() + ": rules file must contain a 'rules' list");
  }
  for (const auto& entry : rules) {
    InjectionRule rule;
    if (!entry.IsMap() || !entry["id"] || !entry["id"].IsScalar()) {
      throw std::runtime_error(file.string() + ": each rule needs a scalar 'id'");
    }
    rule.id = entry["id"].Scalar();
    if (!entry["keywords"]) {
      throw std::runtime_error(file.string() + ": rule '" + rule.id + "' needs 'keywords'");
    }
    rule.trigger_keywords = string_list(entry["keywords"], "keywords", file);
    if (rule.trigger_keywords.empty()) {
      throw std::runtime_error(file.string() + ": rule '" + rule.id + "' has no keywords");
    }
    if (!entry["constraint"] || !entry["constraint"].IsScalar()) {
      throw std::runtime_error(file.string() + ": rule '" + rule.id + "' needs a 'constraint'");
    }
    rule.constraint_text = entry["constraint"].Scalar();
    if (const auto level = entry["level"]) {
      const auto parsed = constraint_level_from(level.Scalar());
      if (!parsed || *parsed == ConstraintLevel::info) {
        throw std::runtime_error(file.string() + ": rule '" + rule.id +
                                 "' level must be warning or error");
      }
      rule.level = *parsed;
    }

    auto existing = std::find_if(base.begin(), base.end(),
                                 [&](const InjectionRule& r) { return r.id == rule.id; });
    if (existing != base.end()) {
      *existing = std::move(rule);
    } else {
      base.push_back(std::move(rule));
    }
  }
  return base;
}

}  // namespace skillc

#include <algorithm>
#include <cctype>
#include <sstream>

#include "skillc/emitter.hpp"

namespace skillc {

namespace {

bool needs_banner(const SkillIR& ir) {
  return ir.security_level == SecurityLevel::high || ir.security_level == SecurityLevel::critical;
}

// One leading comment line for high/critical skills; same syntax works for
// the XML and Markdown targets.
std::string security_banner(const SkillIR& ir) {
  if (!needs_banner(ir)) return {};
  std::ostringstream out;
  out << "<!-- security-level: " << to_string(ir.security_level)
      << "; hitl-required: " << (ir.hitl_required ? "true" : "false") << " -->\n";
  return out.str();
}

std::string critical_suffix(const Procedure& p) { return p.is_critical ? " **[CRITICAL]**" : ""; }

std::string numbered_procedures_markdown(const SkillIR& ir) {
  std::ostringstream out;
  for (const auto& p : ir.procedures) {
    out << p.order << ". " << p.instruction << critical_suffix(p) << "\n";
  }
  return out.str();
}

bool yaml_plain_word(std::string_view s) {
  // Words YAML would reinterpret (booleans, null, numbers) must be quoted to
  // stay strings.
  static constexpr std::string_view reserved[] = {"true", "false", "yes", "no", "on",
                                                  "off", "null", "~"};
  for (const auto& word : reserved) {
    if (s.size() == word.size()) {
      bool equal = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) {
          equal = false;
          break;
        }
      }
      if (equal) return false;
    }
  }
  if (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '-' || s.front() == '.')
    return false;
  return true;
}

bool yaml_bare_scalar(std::string_view s) {
  if (s.empty()) return false;
  const bool charset_ok = std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
  return charset_ok && yaml_plain_word(s);
}

std::string yaml_scalar(std::string_view s) {
  if (yaml_bare_scalar(s)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out += "\"";
  return out;
}

bool schema_is_leaf(const SchemaNode& node) {
  return node.properties.empty() && node.items.empty();
}

std::string yaml_flow_node(const SchemaNode& node) {
  std::string out = "{ type: " + std::string(to_string(node.kind));
  if (!node.enum_values.empty()) {
    out += ", enum: [";
    for (std::size_t i = 0; i < node.enum_values.size(); ++i) {
      if (i) out += ", ";
      out += yaml_scalar(node.enum_values[i]);
    }
    out += "]";
  }
  out += " }";
  return out;
}

void yaml_block_node(const SchemaNode& node, int indent, std::string& out) {
  const std::string ind(static_cast<std::size_t>(indent), ' ');
  out += ind + "type: " + std::string(to_string(node.kind)) + "\n";
  if (!node.enum_values.empty()) {
    out += ind + "enum: [";
    for (std::size_t i = 0; i < node.enum_values.size(); ++i) {
      if (i) out += ", ";
      out += yaml_scalar(node.enum_values[i]);
    }
    out += "]\n";
  }
  if (!node.properties.empty()) {
    out += ind + "properties:\n";
    for (const auto& [name, child] : node.properties) {
      const std::string key = ind + "  " + yaml_scalar(name) + ":";
      if (schema_is_leaf(child)) {
        out += key + " " + yaml_flow_node(child) + "\n";
      } else {
        out += key + "\n";
        yaml_block_node(child, indent + 4, out);
      }
    }
  }
  if (!node.items.empty()) {
    const SchemaNode& child = node.items.front();
    if (schema_is_leaf(child)) {
      out += ind + "items: " + yaml_flow_node(child) + "\n";
    } else {
      out += ind + "items:\n";
      yaml_block_node(child, indent + 2, out);
    }
  }
}

std::string schema_as_yaml(const SchemaNode& node) {
  std::string out;
  yaml_block_node(node, 0, out);
  return out;
}

std::string kind_label(const SchemaNode& node) {
  std::string out(to_string(node.kind));
  if (!node.enum_values.empty()) {
    out += ", enum: ";
    for (std::size_t i = 0; i < node.enum_values.size(); ++i) {
      if (i) out += " | ";
      out += node.enum_values[i];
    }
  }
  return out;
}

void schema_bullets(const std::string& name, const SchemaNode& node, int indent,
                    std::string& out) {
  out += std::string(static_cast<std::size_t>(indent), ' ') + "- `" + name + "` (" +
         kind_label(node) + ")\n";
  for (const auto& [child_name, child] : node.properties) {
    schema_bullets(child_name, child, indent + 2, out);
  }
  if (!node.items.empty()) {
    schema_bullets(name + "[]", node.items.front(), indent + 2, out);
  }
}

std::string schema_as_bullets(const SchemaNode& root) {
  std::string out;
  if (root.kind == SchemaKind::object && !root.properties.empty()) {
    for (const auto& [name, child] : root.properties) {
      schema_bullets(name, child, 0, out);
    }
  } else {
    out += "- (" + kind_label(root) + ")\n";
  }
  return out;
}

void dotted_paths(const std::string& prefix, const SchemaNode& node,
                  std::vector<std::string>& lines) {
  if (!node.properties.empty()) {
    for (const auto& [name, child] : node.properties) {
      dotted_paths(prefix.empty() ? name : prefix + "." + name, child, lines);
    }
    return;
  }
  if (!node.items.empty()) {
    dotted_paths(prefix + "[]", node.items.front(), lines);
    return;
  }
  if (prefix.empty()) {
    lines.push_back("- (" + kind_label(node) + ")");
  } else {
    lines.push_back("- `" + prefix + "` (" + kind_label(node) + ")");
  }
}

std::string examples_markdown(const SkillIR& ir) {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : ir.examples) {
    if (!first) out << "\n";
    out << "**Input:** " << e.input_text << "\n";
    out << "**Output:** " << e.output_text << "\n";
    first = false;
  }
  return out.str();
}

std::string sanitize_asset_component(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty()) out = "_";
  while (out.find("..") != std::string::npos) {
    out.replace(out.find(".."), 2, "_");
  }
  return out;
}

// Claude Code: XML semantic layering rooted at <agent_skill>.
class ClaudeEmitter final : public Emitter {
 public:
  EmittedArtifact emit(const ValidatedSkillIR& validated) const override {
    const SkillIR& ir = validated.ir;
    std::ostringstream out;
    out << security_banner(ir);
    out << "<agent_skill name=\"" << xml_escape(ir.name, true) << "\" version=\""
        << xml_escape(ir.version, true) << "\">\n";
    out << "  <description>" << xml_escape(ir.description) << "</description>\n";
    if (!ir.mcp_servers.empty()) {
      out << "  <mcp_servers>\n";
      for (const auto& server : ir.mcp_servers) {
        out << "    <server>" << xml_escape(server) << "</server>\n";
      }
      out << "  </mcp_servers>\n";
    }
    if (ir.input_schema) {
      out << "  <parameter_schema>" << xml_escape(schema_to_json(*ir.input_schema).dump())
          << "</parameter_schema>\n";
    }
    if (!ir.procedures.empty()) {
      out << "  <execution_steps>\n";
      for (const auto& p : ir.procedures) {
        out << "    <step order=\"" << p.order << "\" critical=\""
            << (p.is_critical ? "true" : "false") << "\">" << xml_escape(p.instruction)
            << "</step>\n";
      }
      out << "  </execution_steps>\n";
    }
    if (!ir.anti_skill_constraints.empty()) {
      out << "  <strict_constraints>\n";
      for (const auto& c : ir.anti_skill_constraints) {
        out << "    <anti_pattern source=\"" << xml_escape(c.source, true) << "\">"
            << xml_escape(c.content) << "</anti_pattern>\n";
      }
      out << "  </strict_constraints>\n";
    }
    if (!ir.examples.empty()) {
      out << "  <examples>\n";
      for (const auto& e : ir.examples) {
        out << "    <example>\n";
        out << "      <input>" << xml_escape(e.input_text) << "</input>\n";
        out << "      <output>" << xml_escape(e.output_text) << "</output>\n";
        out << "    </example>\n";
      }
      out << "  </examples>\n";
    }
    out << "</agent_skill>\n";

    EmittedArtifact artifact;
    artifact.target = kTargetClaude;
    artifact.main_document = out.str();
    artifact.manifest_entry = manifest_entry_for(ir);
    return artifact;
  }
};

// Codex CLI: XML structural markers with Markdown bodies.
class CodexEmitter final : public Emitter {
 public:
  EmittedArtifact emit(const ValidatedSkillIR& validated) const override {
    const SkillIR& ir = validated.ir;
    std::ostringstream out;
    out << security_banner(ir);
    out << "<skill name=\"" << xml_escape(ir.name, true) << "\" version=\""
        << xml_escape(ir.version, true) << "\">\n";
    out << "  <description>" << xml_escape(ir.description) << "</description>\n";
    if (!ir.procedures.empty()) {
      out << "  <instructions>\n";
      out << xml_escape(numbered_procedures_markdown(ir));
      out << "  </instructions>\n";
    }
    if (ir.input_schema) {
      out << "  <parameter_schema>\n";
      out << xml_escape("```json\n" + schema_to_json(*ir.input_schema).dump(2) + "\n```\n");
      out << "  </parameter_schema>\n";
    }
    if (!ir.anti_skill_constraints.empty()) {
      out << "  <constraints>\n";
      for (const auto& c : ir.anti_skill_constraints) {
        out << "    <forbidden>" << xml_escape(c.content) << "</forbidden>\n";
      }
      out << "  </constraints>\n";
    }
    if (!ir.examples.empty()) {
      out << "  <examples>\n";
      for (const auto& e : ir.examples) {
        out << "    <example>\n";
        out << xml_escape("**Input:** " + e.input_text + "\n**Output:** " + e.output_text + "\n");
        out << "    </example>\n";
      }
      out << "  </examples>\n";
    }
    out << "</skill>\n";

    EmittedArtifact artifact;
    artifact.target = kTargetCodex;
    artifact.main_document = out.str();
    artifact.manifest_entry = manifest_entry_for(ir);
    return artifact;
  }
};

// Gemini CLI: Markdown, switching deeply nested schemas to YAML blocks and
// side asset files.
class GeminiEmitter final : public Emitter {
 public:
  EmittedArtifact emit(const ValidatedSkillIR& validated) const override {
    const SkillIR& ir = validated.ir;
    std::ostringstream out;
    out << security_banner(ir);
    out << "# " << ir.name << "\n";
    out << "\n" << ir.description << "\n";
    if (!ir.procedures.empty()) {
      out << "\n## Procedures\n\n" << numbered_procedures_markdown(ir);
    }

    EmittedArtifact artifact;
    artifact.target = kTargetGemini;
    if (ir.input_schema) {
      if (ir.requires_yaml_optimization) {
        out << "\n## Parameter Schema (YAML Optimized)\n\n";
        out << "```yaml\n" << schema_as_yaml(*ir.input_schema) << "```\n";
        for (const auto& [name, child] : ir.input_schema->properties) {
          if (max_nesting_depth(child) < kYamlOptimizationDepth) continue;
          std::string path = ir.name + "." + sanitize_asset_component(name) + ".schema.yaml";
          int suffix = 2;
          while (std::any_of(artifact.asset_files.begin(), artifact.asset_files.end(),
                             [&](const auto& f) { return f.first == path; })) {
            path = ir.name + "." + sanitize_asset_component(name) + "-" +
                   std::to_string(suffix++) + ".schema.yaml";
          }
          artifact.asset_files.emplace_back(std::move(path), schema_as_yaml(child));
        }
      } else {
        out << "\n## Parameter Schema\n\n" << schema_as_bullets(*ir.input_schema);
      }
    }
    if (!ir.anti_skill_constraints.empty()) {
      out << "\n## Constraints\n\n";
      for (const auto& c : ir.anti_skill_constraints) {
        out << "- " << c.content << "\n";
      }
    }
    if (!ir.examples.empty()) {
      out << "\n## Examples\n\n" << examples_markdown(ir);
    }

    artifact.main_document = out.str();
    artifact.manifest_entry = manifest_entry_for(ir);
    return artifact;
  }
};

// Kimi CLI: full Markdown preservation, dotted-path schema bullets, no YAML
// switching.
class KimiEmitter final : public Emitter {
 public:
  EmittedArtifact emit(const ValidatedSkillIR& validated) const override {
    const SkillIR& ir = validated.ir;
    std::ostringstream out;
    out << security_banner(ir);
    out << "# " << ir.name << "\n";
    out << "\n## Description\n\n" << ir.description << "\n";
    if (!ir.mcp_servers.empty()) {
      out << "\n## MCP Servers\n\n";
      for (const auto& server : ir.mcp_servers) out << "- " << server << "\n";
    }
    if (!ir.permissions.empty()) {
      out << "\n## Permissions\n\n";
      for (const auto& p : ir.permissions) {
        out << "- " << to_string(p.kind) << " `" << p.scope << "` "
            << (p.read_only ? "(read-only)" : "(read-write)") << "\n";
      }
    }
    if (!ir.procedures.empty()) {
      out << "\n## Procedures\n\n" << numbered_procedures_markdown(ir);
    }
    if (ir.input_schema) {
      out << "\n## Parameter Schema\n\n";
      std::vector<std::string> lines;
      dotted_paths("", *ir.input_schema, lines);
      for (const auto& line : lines) out << line << "\n";
    }
    if (!ir.anti_skill_constraints.empty()) {
      out << "\n## Constraints\n\n";
      for (const auto& c : ir.anti_skill_constraints) {
        out << "- " << c.content << " (source: " << c.source << ")\n";
      }
    }
    if (!ir.examples.empty()) {
      out << "\n## Examples\n\n" << examples_markdown(ir);
    }
    if (!ir.code_blocks.empty()) {
      out << "\n## Code\n";
      for (const auto& code : ir.code_blocks) {
        out << "\n```" << code.language_tag << "\n" << code.content << "\n```\n";
      }
    }

    EmittedArtifact artifact;
    artifact.target = kTargetKimi;
    artifact.main_document = out.str();
    artifact.manifest_entry = manifest_entry_for(ir);
    return artifact;
  }
};

}  // namespace

EmitterRegistry EmitterRegistry::builtins() {
  EmitterRegistry registry;
  registry.register_emitter(kTargetClaude, std::make_shared<ClaudeEmitter>());
  registry.register_emitter(kTargetCodex, std::make_shared<CodexEmitter>());
  registry.register_emitter(kTargetGemini, std::make_shared<GeminiEmitter>());
  registry.register_emitter(kTargetKimi, std::make_shared<KimiEmitter>());
  return registry;
}

}  // namespace skillc

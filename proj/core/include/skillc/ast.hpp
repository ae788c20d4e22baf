#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "skillc/diagnostics.hpp"

namespace skillc {

struct PermissionDecl {
  std::string kind;
  std::string scope;
  bool read_only = true;

  bool operator==(const PermissionDecl&) const = default;
};

/// Typed view of the YAML frontmatter. Recognized keys are lifted into
/// fields; everything else is preserved in raw_extra in source order.
struct Frontmatter {
  std::string name;
  std::string description;
  std::string version = "0.1.0";
  std::vector<std::string> mcp_servers;
  std::vector<PermissionDecl> declared_permissions;
  std::vector<std::pair<std::string, std::string>> raw_extra;

  const std::string* find_extra(std::string_view key) const;

  bool operator==(const Frontmatter&) const = default;
};

struct Section {
  int level = 1;  // 1..6
  std::string title;
  bool operator==(const Section&) const = default;
};

struct ProcedureStep {
  int order = 1;
  std::string text;
  bool critical_marker = false;
  bool operator==(const ProcedureStep&) const = default;
};

struct CodeBlock {
  std::string language_tag;
  std::string content;
  bool operator==(const CodeBlock&) const = default;
};

struct ExamplePair {
  std::string input_text;
  std::string output_text;
  bool operator==(const ExamplePair&) const = default;
};

struct SchemaBlock {
  std::string raw_json_text;
  bool operator==(const SchemaBlock&) const = default;
};

struct Paragraph {
  std::string text;
  bool operator==(const Paragraph&) const = default;
};

using BlockNode = std::variant<Section, ProcedureStep, CodeBlock, ExamplePair, SchemaBlock, Paragraph>;

/// One classified body block plus the span that locates it in the source.
/// Spans are non-overlapping and monotonically increasing by start offset,
/// and together cover every non-blank body line.
struct BodyBlock {
  BlockNode node;
  Span span;

  bool operator==(const BodyBlock&) const = default;
};

struct RawAst {
  Frontmatter frontmatter;
  std::vector<BodyBlock> blocks;
  std::string source_hash;

  bool operator==(const RawAst&) const = default;
};

}  // namespace skillc

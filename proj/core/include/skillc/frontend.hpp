#pragma once

#include <string_view>
#include <vector>

#include "skillc/ast.hpp"
#include "skillc/errors.hpp"
#include "skillc/source.hpp"

namespace skillc {

/// Parses the YAML frontmatter block. The source must begin with a line that
/// is exactly `---` and contain a closing `---` line; anything else throws
/// FrontmatterError. Non-fatal findings (duplicate keys) are appended to
/// `warnings` when provided.
Frontmatter parse_frontmatter(const SourceFile& source, std::vector<Diagnostic>* warnings = nullptr);

/// Lowers the Markdown body (the text after the closing frontmatter
/// delimiter) into classified blocks. Never fails: unclassifiable content
/// degrades to Paragraph. Spans are relative to `body`; parse_skill rebases
/// them onto the full source.
std::vector<BodyBlock> lower_markdown(std::string_view body);

/// Full phase-1 parse: frontmatter + body lowering. Pure and deterministic;
/// identical bytes yield structurally identical RawAst.
RawAst parse_skill(const SourceFile& source, std::vector<Diagnostic>* warnings = nullptr);

/// True when a heading title plays the given structural role ("procedure",
/// "schema", "example", "constraint"); case-insensitive substring match.
bool section_has_role(std::string_view title, std::string_view role);

}  // namespace skillc

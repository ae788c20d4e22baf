#include "skillc/diagnostics.hpp"

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "skillc/frontend.hpp"
#include "skillc/optimizer.hpp"
#include "skillc/source.hpp"

namespace skillc {
namespace {

TEST(RenderDiagnosticTest, HeaderLineFormat) {
  const Diagnostic d = make_diag(codes::kPermBroad, Severity::warning,
                                 "permission scope '*' is overly broad");
  const std::string text = render_diagnostic(d);
  EXPECT_EQ(text.rfind("warning PERM_BROAD:", 0), 0u);
}

TEST(RenderDiagnosticTest, NoSpanNoHintIsSingleLine) {
  const Diagnostic d = make_diag(codes::kFmYaml, Severity::fatal, "broken frontmatter");
  const std::string text = render_diagnostic(d);
  EXPECT_EQ(text.find('\n'), std::string::npos);
}

TEST(RenderDiagnosticTest, HintLineAppended) {
  Diagnostic d = make_diag(codes::kPermBroad, Severity::warning, "m");
  d.hint = "narrow the scope";
  const std::string text = render_diagnostic(d);
  EXPECT_NE(text.find("\nhint: narrow the scope"), std::string::npos);
}

TEST(RenderDiagnosticTest, CaretPointsAtSpanStart) {
  const SourceFile source =
      SourceFile::from_content("t.md", "---\nname: a\ndescription: b\n---\nbody line\n");
  Diagnostic d = make_diag(codes::kFmYaml, Severity::fatal, "m");
  d.span = make_span(source.content, 4, 8);  // "name"
  const std::string text = render_diagnostic(d, &source);
  EXPECT_NE(text.find("2 | name: a"), std::string::npos);
  EXPECT_NE(text.find("  | ^^^^"), std::string::npos);
}

// Oracle: recompute line/col from the byte offset with an independent scan,
// then check the caret lands on that column.
TEST(RenderDiagnosticTest, FuzzedCaretColumnMatchesSpanColumn) {
  std::mt19937 rng(61);
  for (int round = 0; round < 200; ++round) {
    std::string content;
    const int lines = 1 + static_cast<int>(rng() % 8);
    for (int l = 0; l < lines; ++l) {
      const int width = 1 + static_cast<int>(rng() % 30);
      content += std::string(static_cast<std::size_t>(width), static_cast<char>('a' + l % 26));
      content += "\n";
    }
    const std::size_t start = rng() % content.size();
    if (content[start] == '\n') continue;
    const std::size_t end = std::min(content.size(), start + 1 + rng() % 5);

    const SourceFile source = SourceFile::from_content("t.md", content);
    Diagnostic d = make_diag(codes::kSchemaType, Severity::fatal, "m");
    d.span = make_span(source.content, start, end);

    int expect_line = 1, expect_col = 1;
    for (std::size_t i = 0; i < start; ++i) {
      if (content[i] == '\n') {
        ++expect_line;
        expect_col = 1;
      } else {
        ++expect_col;
      }
    }
    EXPECT_EQ(d.span->start_line, expect_line);
    EXPECT_EQ(d.span->start_col, expect_col);

    const std::string text = render_diagnostic(d, &source);
    std::vector<std::string> rendered_lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      rendered_lines.push_back(text.substr(pos, eol == std::string::npos ? text.size() - pos
                                                                         : eol - pos));
      if (eol == std::string::npos) break;
      pos = eol + 1;
    }
    ASSERT_EQ(rendered_lines.size(), 3u);
    const std::string& caret_line = rendered_lines[2];
    const std::size_t caret_pos = caret_line.find('^');
    ASSERT_NE(caret_pos, std::string::npos);
    const std::size_t prefix = std::to_string(expect_line).size() + 3;  // "N | "
    EXPECT_EQ(caret_pos, prefix + static_cast<std::size_t>(expect_col) - 1) << text;
  }
}

TEST(InterceptionCategoryTest, CodeToCategoryMapping) {
  EXPECT_EQ(interception_category_for(codes::kFmYaml), InterceptionCategory::yaml_violation);
  EXPECT_EQ(interception_category_for(codes::kFmName), InterceptionCategory::yaml_violation);
  EXPECT_EQ(interception_category_for(codes::kFmEncoding), InterceptionCategory::yaml_violation);
  EXPECT_EQ(interception_category_for(codes::kSchemaJson), InterceptionCategory::schema_violation);
  EXPECT_EQ(interception_category_for(codes::kSchemaType), InterceptionCategory::schema_violation);
  EXPECT_EQ(interception_category_for(codes::kMcpUntrusted),
            InterceptionCategory::security_interception);
  EXPECT_EQ(interception_category_for(codes::kPermForbidden),
            InterceptionCategory::security_interception);
}

TEST(SpanTest, MakeSpanClampsToTextBounds) {
  const Span span = make_span("abc", 10, 20);
  EXPECT_EQ(span.start_byte, 3u);
  EXPECT_EQ(span.end_byte, 3u);
}

// Every code the pipeline can emit is in the documented registry, and every
// registry code is reachable — no ad-hoc codes in either direction.
TEST(CodeRegistryTest, EmittedCodesExactlyMatchTheRegistry) {
  const std::set<std::string> registry = {
      codes::kFmYaml,     codes::kFmName,      codes::kFmVersion,     codes::kFmEncoding,
      codes::kFmDupKey,   codes::kFmMcpDup,    codes::kSchemaJson,    codes::kSchemaType,
      codes::kMcpUntrusted, codes::kPermBroad, codes::kPermCount,     codes::kPermForbidden,
      codes::kRuleTriggered,
  };

  std::set<std::string> observed;
  auto collect = [&](const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) observed.insert(d.code);
  };
  auto expect_interception = [&](const std::string& content) {
    try {
      const SourceFile src = SourceFile::from_content("t.md", content);
      std::vector<Diagnostic> warnings;
      const RawAst ast = parse_skill(src, &warnings);
      collect(warnings);
      const SkillIR ir = build_ir(ast);
      collect(optimize(ir, SecurityBaseline::defaults(), builtin_injection_rules()).diagnostics);
    } catch (const CompilationInterception& e) {
      collect(e.diagnostics());
    }
  };

  expect_interception("---\nname: [x\ndescription: d\n---\n");             // FM_YAML
  expect_interception("---\nname: BAD\ndescription: d\n---\n");            // FM_NAME
  expect_interception("---\nname: a\nversion: \"1\"\ndescription: d\n---\n");  // FM_VERSION
  expect_interception(std::string("---\nname: a\ndescription: \xFF\n---\n"));  // FM_ENCODING
  expect_interception("---\nname: a\ndescription: d\ndescription: e\n---\n");  // FM_DUPKEY
  expect_interception("---\nname: a\ndescription: d\nmcp_servers: [x, x]\n---\n");  // FM_MCP_DUP
  expect_interception(
      "---\nname: a\ndescription: d\n---\n\n## Schema\n\n```json\n{oops\n```\n");  // SCHEMA_JSON
  expect_interception(
      "---\nname: a\ndescription: d\n---\n\n## Schema\n\n```json\n"
      "{\"type\":\"frobnicate\"}\n```\n");  // SCHEMA_TYPE
  expect_interception("---\nname: a\ndescription: d\nmcp_servers: [evil]\n---\n");  // MCP_UNTRUSTED
  expect_interception(
      "---\nname: a\ndescription: d\npermissions:\n  - kind: network\n    scope: \"*\"\n"
      "---\n");  // PERM_BROAD
  expect_interception(
      "---\nname: a\ndescription: d\npermissions:\n"
      "  - {kind: network, scope: \"https://a.example.com/1\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/2\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/3\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/4\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/5\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/6\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/7\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/8\"}\n"
      "  - {kind: network, scope: \"https://a.example.com/9\"}\n"
      "---\n");  // PERM_COUNT
  expect_interception(
      "---\nname: a\ndescription: d\npermissions:\n  - kind: filesystem\n    scope: \"/**\"\n"
      "    read_only: false\n---\n");  // PERM_FORBIDDEN
  expect_interception(
      "---\nname: a\ndescription: d\n---\n\n## Procedures\n1. Execute HTTP POST\n");  // RULE_TRIGGERED

  EXPECT_EQ(observed, registry);
}

}  // namespace
}  // namespace skillc

#include "skillc/frontend.hpp"

#include <random>
#include <set>
#include <sstream>
#include <string_view>

#include <gtest/gtest.h>
#include <yaml-cpp/yaml.h>

#include "skillc/skill_ir.hpp"
#include "support/test_util.hpp"

namespace skillc {
namespace {

using testing::fixture_path;
using testing::read_file;

SourceFile source_from(const std::string& content, const std::string& path = "test.md") {
  return SourceFile::from_content(path, content);
}

TEST(SourceFileTest, HashMatchesContent) {
  const SourceFile source = source_from("---\nname: a\ndescription: b\n---\n");
  EXPECT_EQ(source.source_hash.size(), 64u);
  EXPECT_EQ(source.source_hash, sha256_hex(source.content));
}

TEST(SourceFileTest, StripsBomBeforeHashing) {
  const std::string body = "---\nname: a\ndescription: b\n---\n";
  const SourceFile with_bom = source_from("\xEF\xBB\xBF" + body);
  const SourceFile without = source_from(body);
  EXPECT_EQ(with_bom.content, without.content);
  EXPECT_EQ(with_bom.source_hash, without.source_hash);
}

TEST(SourceFileTest, RejectsInvalidUtf8) {
  try {
    source_from("---\nname: a\ndescription: \xFF\xFE\n---\n");
    FAIL() << "expected FrontmatterError";
  } catch (const FrontmatterError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].code, codes::kFmEncoding);
    EXPECT_EQ(e.category(), InterceptionCategory::yaml_violation);
  }
}

TEST(FrontmatterTest, ParsesGithubFixture) {
  const SourceFile source = SourceFile::load(fixture_path("github-api-client/SKILL.md"));
  const Frontmatter fm = parse_frontmatter(source);
  EXPECT_EQ(fm.name, "github-api-client");
  EXPECT_EQ(fm.version, "1.0.0");
  EXPECT_EQ(fm.description, "Interact with GitHub REST API");
  ASSERT_EQ(fm.mcp_servers.size(), 1u);
  EXPECT_EQ(fm.mcp_servers[0], "github-mcp");
  ASSERT_EQ(fm.declared_permissions.size(), 1u);
  EXPECT_EQ(fm.declared_permissions[0].kind, "network");
  EXPECT_EQ(fm.declared_permissions[0].scope, "https://api.github.com/*");
  EXPECT_FALSE(fm.declared_permissions[0].read_only);
}

TEST(FrontmatterTest, MissingOpeningDelimiterIsYamlViolation) {
  EXPECT_THROW(parse_frontmatter(source_from("name: a\ndescription: b\n")), FrontmatterError);
}

TEST(FrontmatterTest, MissingClosingDelimiterIsYamlViolation) {
  EXPECT_THROW(parse_frontmatter(source_from("---\nname: a\ndescription: b\n")), FrontmatterError);
}

TEST(FrontmatterTest, MissingRequiredKeys) {
  EXPECT_THROW(parse_frontmatter(source_from("---\ndescription: b\n---\n")), FrontmatterError);
  EXPECT_THROW(parse_frontmatter(source_from("---\nname: a\n---\n")), FrontmatterError);
}

TEST(FrontmatterTest, WrongTypeForNameIsYamlViolation) {
  EXPECT_THROW(parse_frontmatter(source_from("---\nname: [a, b]\ndescription: b\n---\n")),
               FrontmatterError);
}

TEST(FrontmatterTest, RejectsNonKebabName) {
  try {
    parse_frontmatter(source_from("---\nname: Bad_Name\ndescription: b\n---\n"));
    FAIL();
  } catch (const FrontmatterError& e) {
    EXPECT_EQ(e.diagnostics().back().code, codes::kFmName);
  }
}

TEST(FrontmatterTest, RejectsNonTripleVersion) {
  try {
    parse_frontmatter(source_from("---\nname: a\nversion: \"1.0\"\ndescription: b\n---\n"));
    FAIL();
  } catch (const FrontmatterError& e) {
    EXPECT_EQ(e.diagnostics().back().code, codes::kFmVersion);
  }
}

TEST(FrontmatterTest, VersionDefaultsWhenAbsent) {
  const Frontmatter fm = parse_frontmatter(source_from("---\nname: a\ndescription: b\n---\n"));
  EXPECT_EQ(fm.version, "0.1.0");
}

TEST(FrontmatterTest, DuplicateMcpServerIsFatal) {
  try {
    parse_frontmatter(
        source_from("---\nname: a\ndescription: b\nmcp_servers: [x, x]\n---\n"));
    FAIL();
  } catch (const FrontmatterError& e) {
    EXPECT_EQ(e.diagnostics().back().code, codes::kFmMcpDup);
  }
}

TEST(FrontmatterTest, DuplicateKeyWarnsAndLastWins) {
  std::vector<Diagnostic> warnings;
  const Frontmatter fm = parse_frontmatter(
      source_from("---\nname: a\ndescription: first\ndescription: second\n---\n"), &warnings);
  EXPECT_EQ(fm.description, "second");
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].code, codes::kFmDupKey);
  EXPECT_EQ(warnings[0].severity, Severity::warning);
}

// Oracle: reparse the raw frontmatter text with yaml-cpp directly and diff
// the unrecognized key/value pairs against raw_extra.
TEST(FrontmatterTest, RawExtraRoundTripsRandomKeys) {
  std::mt19937 rng(7);
  std::string yaml = "name: extra-keys\ndescription: holder\n";
  std::set<std::string> extra_keys;
  for (int i = 0; i < 30; ++i) {
    const std::string key = "extra_key_" + std::to_string(i);
    const std::string value = "value-" + std::to_string(rng() % 100000);
    yaml += key + ": " + value + "\n";
    extra_keys.insert(key);
  }
  const Frontmatter fm = parse_frontmatter(source_from("---\n" + yaml + "---\n"));

  const YAML::Node reparsed = YAML::Load(yaml);
  std::size_t matched = 0;
  for (const auto& kv : reparsed) {
    const std::string key = kv.first.Scalar();
    if (!extra_keys.count(key)) continue;
    const std::string* stored = fm.find_extra(key);
    ASSERT_NE(stored, nullptr) << key;
    EXPECT_EQ(*stored, kv.second.Scalar()) << key;
    ++matched;
  }
  EXPECT_EQ(matched, 30u);
  EXPECT_EQ(fm.raw_extra.size(), 30u);
}

TEST(LowerMarkdownTest, ClassifiesProcedureWithCriticalMarker) {
  const auto blocks = lower_markdown("## Procedures\n1. Validate input **[CRITICAL]**\n");
  ASSERT_EQ(blocks.size(), 2u);
  const auto* section = std::get_if<Section>(&blocks[0].node);
  ASSERT_NE(section, nullptr);
  EXPECT_EQ(section->level, 2);
  EXPECT_EQ(section->title, "Procedures");
  const auto* step = std::get_if<ProcedureStep>(&blocks[1].node);
  ASSERT_NE(step, nullptr);
  EXPECT_EQ(step->order, 1);
  EXPECT_EQ(step->text, "Validate input");
  EXPECT_TRUE(step->critical_marker);
}

TEST(LowerMarkdownTest, EmptyBodyYieldsNoBlocks) {
  EXPECT_TRUE(lower_markdown("").empty());
  EXPECT_TRUE(lower_markdown("\n\n  \n").empty());
}

TEST(LowerMarkdownTest, OrderedItemsOutsideProcedureSectionsAreParagraphs) {
  const auto blocks = lower_markdown("## Notes\n1. not a step\n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<Paragraph>(blocks[1].node));
}

TEST(LowerMarkdownTest, ProcedureOrdersRestartPerSection) {
  const auto blocks = lower_markdown(
      "## Procedures\n1. a\n2. b\n\n## More procedures\n1. c\n");
  std::vector<int> orders;
  for (const auto& b : blocks) {
    if (const auto* step = std::get_if<ProcedureStep>(&b.node)) orders.push_back(step->order);
  }
  EXPECT_EQ(orders, (std::vector<int>{1, 2, 1}));
}

TEST(LowerMarkdownTest, ProcedureOrderIsListIndexNotLiteral) {
  const auto blocks = lower_markdown("## Procedures\n1. a\n1. b\n1. c\n");
  std::vector<int> orders;
  for (const auto& b : blocks) {
    if (const auto* step = std::get_if<ProcedureStep>(&b.node)) orders.push_back(step->order);
  }
  EXPECT_EQ(orders, (std::vector<int>{1, 2, 3}));
}

TEST(LowerMarkdownTest, JsonFenceUnderSchemaHeadingIsSchemaBlock) {
  const auto blocks = lower_markdown("## Parameter Schema\n```json\n{\"type\":\"string\"}\n```\n");
  ASSERT_EQ(blocks.size(), 2u);
  const auto* schema = std::get_if<SchemaBlock>(&blocks[1].node);
  ASSERT_NE(schema, nullptr);
  EXPECT_EQ(schema->raw_json_text, "{\"type\":\"string\"}");
}

TEST(LowerMarkdownTest, OtherFencesAreCodeBlocks) {
  const auto blocks = lower_markdown("## Schema\n```python\nx = 1\n```\n## Usage\n```json\n{}\n```\n");
  const auto* code = std::get_if<CodeBlock>(&blocks[1].node);
  ASSERT_NE(code, nullptr);
  EXPECT_EQ(code->language_tag, "python");
  EXPECT_EQ(code->content, "x = 1");
  // json fence outside a schema section stays a plain code block
  const auto* json_code = std::get_if<CodeBlock>(&blocks[3].node);
  ASSERT_NE(json_code, nullptr);
  EXPECT_EQ(json_code->language_tag, "json");
}

TEST(LowerMarkdownTest, UnclosedFenceRunsToEndOfInput) {
  const auto blocks = lower_markdown("## Ref\n```python\nx = 1\ny = 2\n");
  const auto* code = std::get_if<CodeBlock>(&blocks[1].node);
  ASSERT_NE(code, nullptr);
  EXPECT_EQ(code->content, "x = 1\ny = 2");
}

TEST(LowerMarkdownTest, ExamplePairsUnderExampleHeading) {
  const auto blocks = lower_markdown(
      "## Examples\n**Input:** list my PRs\n**Output:** calls list_prs\n");
  ASSERT_EQ(blocks.size(), 2u);
  const auto* pair = std::get_if<ExamplePair>(&blocks[1].node);
  ASSERT_NE(pair, nullptr);
  EXPECT_EQ(pair->input_text, "list my PRs");
  EXPECT_EQ(pair->output_text, "calls list_prs");
}

TEST(LowerMarkdownTest, UnpairedInputDegradesToParagraph) {
  const auto blocks = lower_markdown("## Examples\n**Input:** dangling\n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<Paragraph>(blocks[1].node));
}

namespace {

std::string random_markdown_document(std::mt19937& rng, int lines) {
  std::ostringstream out;
  int i = 0;
  while (i < lines) {
    switch (rng() % 7) {
      case 0:
        out << "## Heading " << (rng() % 2 == 0 ? "Procedures" : "Notes") << " " << i << "\n";
        ++i;
        break;
      case 1:
        out << (rng() % 9 + 1) << ". list item " << i << "\n";
        ++i;
        break;
      case 2:
        out << "- bullet " << i << "\n";
        ++i;
        break;
      case 3: {
        out << "```lang\n";
        const int body = static_cast<int>(rng() % 3);
        for (int k = 0; k < body; ++k) out << "code line " << k << "\n";
        out << "```\n";
        i += body + 2;
        break;
      }
      case 4:
        out << "\n";
        ++i;
        break;
      default:
        out << "plain text line " << i << " with words\n";
        ++i;
        break;
    }
  }
  return out.str();
}

std::set<int> nonblank_line_numbers(const std::string& body) {
  std::set<int> lines;
  int line = 1;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t eol = body.find('\n', start);
    const std::string_view text =
        std::string_view(body).substr(start, (eol == std::string::npos ? body.size() : eol) - start);
    const bool blank = text.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) lines.insert(line);
    if (eol == std::string::npos) break;
    start = eol + 1;
    ++line;
  }
  return lines;
}

std::set<int> covered_line_numbers(const std::string& body, const std::vector<BodyBlock>& blocks) {
  // Map byte offsets to line numbers independently of Span's own line fields.
  std::vector<std::size_t> line_starts = {0};
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\n') line_starts.push_back(i + 1);
  }
  auto line_of = [&](std::size_t byte) {
    std::size_t lo = 0;
    while (lo + 1 < line_starts.size() && line_starts[lo + 1] <= byte) ++lo;
    return static_cast<int>(lo) + 1;
  };
  std::set<int> covered;
  for (const auto& block : blocks) {
    for (int line = line_of(block.span.start_byte);
         line <= line_of(block.span.end_byte == 0 ? 0 : block.span.end_byte - 1); ++line) {
      // Only count lines that actually contain non-blank content in range.
      covered.insert(line);
    }
  }
  return covered;
}

}  // namespace

// Independent line-coverage oracle: every non-blank line is covered by
// exactly one block span; spans are monotone and non-overlapping.
TEST(LowerMarkdownTest, RandomDocumentsSatisfyLineCoverageOracle) {
  std::mt19937 rng(42);
  for (int round = 0; round < 50; ++round) {
    const std::string body = random_markdown_document(rng, 200);
    const auto blocks = lower_markdown(body);

    std::size_t previous_end = 0;
    bool first = true;
    for (const auto& block : blocks) {
      EXPECT_LE(block.span.start_byte, block.span.end_byte);
      EXPECT_LE(block.span.end_byte, body.size());
      if (!first) EXPECT_GE(block.span.start_byte, previous_end) << "overlapping spans";
      previous_end = block.span.end_byte;
      first = false;
    }

    const std::set<int> expected = nonblank_line_numbers(body);
    std::set<int> covered = covered_line_numbers(body, blocks);
    // Fence interiors may include blank lines inside one span; restrict the
    // comparison to non-blank lines.
    std::set<int> covered_nonblank;
    for (int line : covered) {
      if (expected.count(line)) covered_nonblank.insert(line);
    }
    EXPECT_EQ(covered_nonblank, expected) << "round " << round;
  }
}

// Losslessness: every non-whitespace byte of the body falls inside a span.
TEST(LowerMarkdownTest, SpansCoverEveryNonWhitespaceByte) {
  std::mt19937 rng(43);
  for (int round = 0; round < 20; ++round) {
    const std::string body = random_markdown_document(rng, 120);
    const auto blocks = lower_markdown(body);
    std::vector<bool> covered(body.size(), false);
    for (const auto& block : blocks) {
      for (std::size_t i = block.span.start_byte; i < block.span.end_byte; ++i) covered[i] = true;
    }
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == ' ' || body[i] == '\t' || body[i] == '\n' || body[i] == '\r') continue;
      EXPECT_TRUE(covered[i]) << "byte " << i << " uncovered in round " << round;
      if (!covered[i]) return;
    }
  }
}

TEST(ParseSkillTest, CrlfSourcesParseLikeLfSources) {
  const std::string lf = "---\nname: a\ndescription: b\n---\n\n## Procedures\n1. Tidy up\n";
  std::string crlf;
  for (char c : lf) {
    if (c == '\n') crlf += "\r\n"; else crlf.push_back(c);
  }
  const RawAst from_lf = parse_skill(SourceFile::from_content("lf.md", lf));
  const RawAst from_crlf = parse_skill(SourceFile::from_content("crlf.md", crlf));
  ASSERT_EQ(from_lf.blocks.size(), from_crlf.blocks.size());
  for (std::size_t i = 0; i < from_lf.blocks.size(); ++i) {
    EXPECT_EQ(from_lf.blocks[i].node, from_crlf.blocks[i].node);
  }
}

TEST(ParseSkillTest, GithubFixtureHasThreeProcedureSteps) {
  const SourceFile source = SourceFile::load(fixture_path("github-api-client/SKILL.md"));
  const RawAst ast = parse_skill(source);
  int steps = 0;
  for (const auto& block : ast.blocks) {
    if (std::holds_alternative<ProcedureStep>(block.node)) ++steps;
  }
  EXPECT_GE(steps, 3);
  EXPECT_EQ(ast.source_hash, source.source_hash);
}

TEST(ParseSkillTest, EmptyBodyYieldsEmptyBlocks) {
  const RawAst ast = parse_skill(source_from("---\nname: a\ndescription: b\n---\n"));
  EXPECT_TRUE(ast.blocks.empty());
}

TEST(ParseSkillTest, ParsingIsDeterministic) {
  const SourceFile source = SourceFile::load(fixture_path("data-migration/SKILL.md"));
  const RawAst first = parse_skill(source);
  const RawAst second = parse_skill(source);
  EXPECT_EQ(first, second);
  EXPECT_EQ(serialize_ir(build_ir(first)), serialize_ir(build_ir(second)));
}

TEST(ParseSkillTest, BlockSpansPointIntoFullSource) {
  const SourceFile source = SourceFile::load(fixture_path("data-migration/SKILL.md"));
  const RawAst ast = parse_skill(source);
  ASSERT_FALSE(ast.blocks.empty());
  for (const auto& block : ast.blocks) {
    EXPECT_LE(block.span.end_byte, source.content.size());
  }
  const auto* section = std::get_if<Section>(&ast.blocks[0].node);
  ASSERT_NE(section, nullptr);
  const auto& span = ast.blocks[0].span;
  EXPECT_EQ(source.content.substr(span.start_byte, span.end_byte - span.start_byte),
            "## Procedures");
}

}  // namespace
}  // namespace skillc

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skillc {

struct SourceFile;

/// Byte range into one source file. Line/column are 1-based and must stay
/// consistent with the byte offsets of the source they were computed from.
struct Span {
  std::size_t start_byte = 0;
  std::size_t end_byte = 0;
  int start_line = 1;
  int start_col = 1;

  bool operator==(const Span&) const = default;
};

/// Builds a span for [start_byte, end_byte) with line/col derived from `text`.
Span make_span(std::string_view text, std::size_t start_byte, std::size_t end_byte);

enum class Severity { info, warning, fatal };

std::string_view to_string(Severity s);

// Stable diagnostic codes. This list is the complete registry; no other code
// may be emitted anywhere in the pipeline.
namespace codes {
inline constexpr char kFmYaml[] = "FM_YAML";            // fatal: delimiter/parse/required-key violation
inline constexpr char kFmName[] = "FM_NAME";            // fatal: name not a lowercase kebab identifier
inline constexpr char kFmVersion[] = "FM_VERSION";      // fatal: version not MAJOR.MINOR.PATCH
inline constexpr char kFmEncoding[] = "FM_ENCODING";    // fatal: source is not valid UTF-8
inline constexpr char kFmDupKey[] = "FM_DUPKEY";        // warning: duplicate frontmatter key, last wins
inline constexpr char kFmMcpDup[] = "FM_MCP_DUP";       // fatal: duplicate mcp_servers entry
inline constexpr char kSchemaJson[] = "SCHEMA_JSON";    // fatal: schema block is not valid JSON
inline constexpr char kSchemaType[] = "SCHEMA_TYPE";    // fatal: illegal field type or enum value
inline constexpr char kMcpUntrusted[] = "MCP_UNTRUSTED"; // fatal: server not in baseline trust set
inline constexpr char kPermBroad[] = "PERM_BROAD";      // warning: overly broad permission scope
inline constexpr char kPermCount[] = "PERM_COUNT";      // warning: permission count over baseline limit
inline constexpr char kPermForbidden[] = "PERM_FORBIDDEN"; // fatal: filesystem write to / or /**
inline constexpr char kRuleTriggered[] = "RULE_TRIGGERED"; // info: an anti-skill rule fired
}  // namespace codes

struct Diagnostic {
  std::string code;
  Severity severity = Severity::info;
  std::string message;
  std::optional<Span> span;
  std::optional<std::string> hint;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_diag(std::string code, Severity severity, std::string message);

bool has_fatal(const std::vector<Diagnostic>& diags);

/// Renders one diagnostic as a human-readable block:
///   <severity> <code>: <message>
///   <line no> | <offending source line>     (only when a span is present)
///             |        ^^^^
///   hint: <hint>                            (only when a hint is present)
/// A diagnostic with a span requires the source it points into.
std::string render_diagnostic(const Diagnostic& d, const SourceFile* source = nullptr);

}  // namespace skillc

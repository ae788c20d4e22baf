#include "skillc/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <yaml-cpp/yaml.h>

namespace skillc {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

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
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) {
          return c >= '0' && c <= '9';
        }))
      return false;
    ++parts;
    if (dot == std::string_view::npos) break;
    i = dot + 1;
  }
  return parts == 3;
}

struct FrontmatterSplit {
  std::string_view yaml_text;
  std::size_t yaml_offset = 0;   // byte offset of yaml_text in the source
  std::size_t body_offset = 0;   // byte offset of the body in the source
  int body_first_line = 1;       // 1-based source line where the body starts
};

bool is_delimiter_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line == "---";
}

// Locates the opening/closing `---` lines. The opening delimiter must sit at
// byte 0; the closing one may be any later line.
std::optional<FrontmatterSplit> split_frontmatter(std::string_view content) {
  std::size_t first_eol = content.find('\n');
  std::string_view first_line =
      first_eol == std::string_view::npos ? content : content.substr(0, first_eol);
  if (!is_delimiter_line(first_line) || first_eol == std::string_view::npos) return std::nullopt;

  FrontmatterSplit split;
  split.yaml_offset = first_eol + 1;
  std::size_t pos = split.yaml_offset;
  int line_no = 2;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? content.substr(pos) : content.substr(pos, eol - pos);
    if (is_delimiter_line(line)) {
      split.yaml_text = content.substr(split.yaml_offset, pos - split.yaml_offset);
      split.body_offset = eol == std::string_view::npos ? content.size() : eol + 1;
      split.body_first_line = line_no + 1;
      return split;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line_no;
  }
  return std::nullopt;
}

std::optional<Span> span_for_mark(const YAML::Mark& mark, const FrontmatterSplit& split) {
  if (mark.pos < 0) return std::nullopt;
  Span span;
  span.start_byte = split.yaml_offset + static_cast<std::size_t>(mark.pos);
  span.end_byte = span.start_byte + 1;
  span.start_line = mark.line + 2;  // marks are 0-based and skip the opening ---
  span.start_col = mark.column + 1;
  return span;
}

[[noreturn]] void fail_yaml(std::string message, std::optional<Span> span = std::nullopt) {
  Diagnostic d = make_diag(codes::kFmYaml, Severity::fatal, std::move(message));
  d.span = span;
  throw FrontmatterError(std::move(d));
}

std::string dump_node(const YAML::Node& node) {
  if (node.IsScalar()) return node.Scalar();
  YAML::Emitter out;
  out.SetMapFormat(YAML::Flow);
  out.SetSeqFormat(YAML::Flow);
  out << node;
  return out.c_str() ? out.c_str() : "";
}

std::vector<PermissionDecl> parse_permission_decls(const YAML::Node& node,
                                                   const FrontmatterSplit& split) {
  if (!node.IsSequence()) {
    fail_yaml("frontmatter key 'permissions' must be a list", span_for_mark(node.Mark(), split));
  }
  std::vector<PermissionDecl> decls;
  for (const auto& entry : node) {
    if (!entry.IsMap()) {
      fail_yaml("each permissions entry must be a map with kind/scope",
                span_for_mark(entry.Mark(), split));
    }
    PermissionDecl decl;
    const auto kind = entry["kind"];
    const auto scope = entry["scope"];
    if (!kind || !kind.IsScalar() || !scope || !scope.IsScalar()) {
      fail_yaml("permissions entries require scalar 'kind' and 'scope'",
                span_for_mark(entry.Mark(), split));
    }
    decl.kind = kind.Scalar();
    decl.scope = scope.Scalar();
    if (const auto ro = entry["read_only"]) {
      try {
        decl.read_only = ro.as<bool>();
      } catch (const YAML::Exception&) {
        fail_yaml("permissions 'read_only' must be a boolean", span_for_mark(ro.Mark(), split));
      }
    }
    decls.push_back(std::move(decl));
  }
  return decls;
}

}  // namespace

const std::string* Frontmatter::find_extra(std::string_view key) const {
  for (auto it = raw_extra.rbegin(); it != raw_extra.rend(); ++it) {
    if (it->first == key) return &it->second;
  }
  return nullptr;
}

bool section_has_role(std::string_view title, std::string_view role) {
  return ascii_lower(title).find(ascii_lower(role)) != std::string::npos;
}

Frontmatter parse_frontmatter(const SourceFile& source, std::vector<Diagnostic>* warnings) {
  const auto split = split_frontmatter(source.content);
  if (!split) {
    Diagnostic d = make_diag(codes::kFmYaml, Severity::fatal,
                             "missing frontmatter delimiters: expected '---' on the first line "
                             "and a closing '---' line");
    d.span = make_span(source.content, 0, std::min<std::size_t>(3, source.content.size()));
    throw FrontmatterError(std::move(d));
  }

  YAML::Node root;
  try {
    root = YAML::Load(std::string(split->yaml_text));
  } catch (const YAML::Exception& e) {
    fail_yaml("unparseable frontmatter YAML: " + e.msg, span_for_mark(e.mark, *split));
  }
  if (root.IsNull() || !root.IsDefined()) {
    fail_yaml("frontmatter is empty; 'name' and 'description' are required");
  }
  if (!root.IsMap()) {
    fail_yaml("frontmatter must be a YAML mapping", span_for_mark(root.Mark(), *split));
  }

  // Collect entries in source order; a repeated key warns and the last wins.
  std::vector<std::pair<std::string, YAML::Node>> entries;
  for (const auto& kv : root) {
    if (!kv.first.IsScalar()) {
      fail_yaml("frontmatter keys must be scalars", span_for_mark(kv.first.Mark(), *split));
    }
    std::string key = kv.first.Scalar();
    auto prev = std::find_if(entries.begin(), entries.end(),
                             [&](const auto& e) { return e.first == key; });
    if (prev != entries.end()) {
      if (warnings) {
        Diagnostic d = make_diag(codes::kFmDupKey, Severity::warning,
                                 "duplicate frontmatter key '" + key + "'; last value wins");
        d.span = span_for_mark(kv.first.Mark(), *split);
        warnings->push_back(std::move(d));
      }
      prev->second = kv.second;
    } else {
      entries.emplace_back(std::move(key), kv.second);
    }
  }

  Frontmatter fm;
  bool has_version = false;
  for (const auto& [key, node] : entries) {
    if (key == "name") {
      if (!node.IsScalar() || node.Scalar().empty()) {
        fail_yaml("frontmatter 'name' must be a nonempty string", span_for_mark(node.Mark(), *split));
      }
      fm.name = node.Scalar();
    } else if (key == "description") {
      if (!node.IsScalar() || node.Scalar().empty()) {
        fail_yaml("frontmatter 'description' must be a nonempty string",
                  span_for_mark(node.Mark(), *split));
      }
      fm.description = node.Scalar();
    } else if (key == "version") {
      if (!node.IsScalar()) {
        fail_yaml("frontmatter 'version' must be a string", span_for_mark(node.Mark(), *split));
      }
      fm.version = node.Scalar();
      has_version = true;
    } else if (key == "mcp_servers") {
      if (!node.IsSequence()) {
        fail_yaml("frontmatter 'mcp_servers' must be a list", span_for_mark(node.Mark(), *split));
      }
      for (const auto& item : node) {
        if (!item.IsScalar()) {
          fail_yaml("mcp_servers entries must be strings", span_for_mark(item.Mark(), *split));
        }
        fm.mcp_servers.push_back(item.Scalar());
      }
    } else if (key == "permissions") {
      fm.declared_permissions = parse_permission_decls(node, *split);
    } else {
      fm.raw_extra.emplace_back(key, dump_node(node));
    }
  }

  if (fm.name.empty()) fail_yaml("frontmatter is missing required key 'name'");
  if (fm.description.empty()) fail_yaml("frontmatter is missing required key 'description'");
  if (!is_kebab_identifier(fm.name)) {
    Diagnostic d = make_diag(codes::kFmName, Severity::fatal,
                             "skill name '" + fm.name + "' must match [a-z0-9][a-z0-9-]*");
    d.hint = "use a lowercase kebab identifier, e.g. 'my-skill'";
    throw FrontmatterError(std::move(d));
  }
  if (has_version && !is_semver_triple(fm.version)) {
    Diagnostic d = make_diag(codes::kFmVersion, Severity::fatal,
                             "version '" + fm.version + "' must be MAJOR.MINOR.PATCH");
    throw FrontmatterError(std::move(d));
  }
  std::set<std::string> seen_servers;
  for (const auto& server : fm.mcp_servers) {
    if (!seen_servers.insert(server).second) {
      Diagnostic d = make_diag(codes::kFmMcpDup, Severity::fatal,
                               "duplicate mcp_servers entry '" + server + "'");
      throw FrontmatterError(std::move(d));
    }
  }
  return fm;
}

namespace {

// Body lowering is line oriented. Fences and example pairs span several
// lines; everything else classifies line by line against the enclosing
// section's role.

struct LineCursor {
  std::string_view body;
  std::size_t pos = 0;
  bool done() const { return pos >= body.size(); }

  // Returns the current line without its terminator and advances.
  std::string_view next(std::size_t& line_start) {
    line_start = pos;
    std::size_t eol = body.find('\n', pos);
    std::string_view line;
    if (eol == std::string_view::npos) {
      line = body.substr(pos);
      pos = body.size();
    } else {
      line = body.substr(pos, eol - pos);
      pos = eol + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }
};

struct HeadingLine {
  int level;
  std::string title;
};

std::optional<HeadingLine> match_heading(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && line[i] == '#') ++i;
  if (i == 0 || i > 6) return std::nullopt;
  if (i < line.size() && line[i] != ' ' && line[i] != '\t') return std::nullopt;
  return HeadingLine{static_cast<int>(i), std::string(trim(line.substr(i)))};
}

struct OrderedItem {
  std::string text;
};

std::optional<OrderedItem> match_ordered_item(std::string_view line) {
  std::string_view s = line;
  std::size_t indent = 0;
  while (indent < s.size() && s[indent] == ' ') ++indent;
  if (indent > 3) return std::nullopt;
  s.remove_prefix(indent);
  std::size_t digits = 0;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits == 0 || digits >= s.size()) return std::nullopt;
  if (s[digits] != '.' && s[digits] != ')') return std::nullopt;
  std::string_view rest = s.substr(digits + 1);
  if (rest.empty() || (rest.front() != ' ' && rest.front() != '\t')) return std::nullopt;
  return OrderedItem{std::string(trim(rest))};
}

bool match_unordered_item(std::string_view line) {
  std::string_view s = line;
  std::size_t indent = 0;
  while (indent < s.size() && s[indent] == ' ') ++indent;
  if (indent > 3) return false;
  s.remove_prefix(indent);
  if (s.size() < 2) return false;
  return (s[0] == '-' || s[0] == '*' || s[0] == '+') && (s[1] == ' ' || s[1] == '\t');
}

struct FenceOpen {
  std::size_t tick_count;
  std::string info;
};

std::optional<FenceOpen> match_fence(std::string_view line) {
  std::string_view s = line;
  std::size_t indent = 0;
  while (indent < s.size() && s[indent] == ' ') ++indent;
  if (indent > 3) return std::nullopt;
  s.remove_prefix(indent);
  std::size_t ticks = 0;
  while (ticks < s.size() && s[ticks] == '`') ++ticks;
  if (ticks < 3) return std::nullopt;
  return FenceOpen{ticks, std::string(trim(s.substr(ticks)))};
}

bool is_fence_close(std::string_view line, std::size_t tick_count) {
  auto open = match_fence(line);
  return open && open->tick_count >= tick_count && open->info.empty();
}

constexpr std::string_view kCriticalMarker = "**[CRITICAL]**";

// Strips every occurrence of the critical marker, tidying the byte it leaves
// behind so "a **[CRITICAL]** b" becomes "a b".
std::string strip_critical_marker(std::string_view text, bool& found) {
  std::string out(text);
  std::size_t pos;
  while ((pos = out.find(kCriticalMarker)) != std::string::npos) {
    found = true;
    out.erase(pos, kCriticalMarker.size());
    if (pos > 0 && pos < out.size() && out[pos - 1] == ' ' && out[pos] == ' ') {
      out.erase(pos, 1);
    }
  }
  return std::string(trim(out));
}

std::optional<std::string> match_bold_label(std::string_view line, std::string_view label) {
  std::string_view s = trim(line);
  std::string want = "**" + std::string(label) + ":**";
  if (ascii_lower(s.substr(0, std::min(s.size(), want.size()))) != ascii_lower(want))
    return std::nullopt;
  return std::string(trim(s.substr(want.size())));
}

class Lowering {
 public:
  explicit Lowering(std::string_view body) : body_(body), cursor_{body} {}

  std::vector<BodyBlock> run() {
    while (!cursor_.done()) {
      std::size_t line_start = 0;
      std::string_view line = cursor_.next(line_start);
      std::size_t line_end = line_start + line.size();

      if (is_blank(line)) {
        flush_paragraph();
        continue;
      }
      if (auto fence = match_fence(line)) {
        flush_all();
        consume_fence(*fence, line_start);
        continue;
      }
      if (auto heading = match_heading(line)) {
        flush_all();
        section_title_ = heading->title;
        procedure_counter_ = 0;
        push(Section{heading->level, heading->title}, line_start, line_end);
        continue;
      }
      if (in_example_section()) {
        if (auto input = match_bold_label(line, "Input")) {
          flush_all();
          example_.emplace();
          example_->input = *input;
          example_->start = line_start;
          example_->end = line_end;
          continue;
        }
        if (auto output = match_bold_label(line, "Output")) {
          if (example_ && !example_->has_output) {
            example_->has_output = true;
            example_->output = *output;
            example_->end = line_end;
            continue;
          }
        }
        if (example_) {
          // Continuation lines extend whichever side is open.
          if (!match_heading(line) && !match_ordered_item(line) && !match_unordered_item(line)) {
            auto& side = example_->has_output ? example_->output : example_->input;
            if (!side.empty()) side += "\n";
            side += std::string(trim(line));
            example_->end = line_end;
            continue;
          }
        }
      }
      if (auto item = match_ordered_item(line)) {
        flush_all();
        if (in_procedure_section()) {
          bool critical = false;
          std::string text = strip_critical_marker(item->text, critical);
          push(ProcedureStep{++procedure_counter_, std::move(text), critical}, line_start, line_end);
        } else {
          push(Paragraph{std::string(line)}, line_start, line_end);
        }
        continue;
      }
      if (match_unordered_item(line)) {
        flush_all();
        push(Paragraph{std::string(line)}, line_start, line_end);
        continue;
      }
      append_paragraph(line, line_start, line_end);
    }
    flush_all();
    return std::move(blocks_);
  }

 private:
  struct PendingExample {
    std::string input;
    std::string output;
    bool has_output = false;
    std::size_t start = 0;
    std::size_t end = 0;
  };

  struct PendingParagraph {
    std::string text;
    std::size_t start = 0;
    std::size_t end = 0;
  };

  bool in_procedure_section() const { return section_has_role(section_title_, "procedure"); }
  bool in_schema_section() const { return section_has_role(section_title_, "schema"); }
  bool in_example_section() const { return section_has_role(section_title_, "example"); }

  void push(BlockNode node, std::size_t start, std::size_t end) {
    blocks_.push_back(BodyBlock{std::move(node), make_span(body_, start, end)});
  }

  void append_paragraph(std::string_view line, std::size_t start, std::size_t end) {
    if (example_) {
      finish_example();
    }
    if (!paragraph_) {
      paragraph_ = PendingParagraph{std::string(line), start, end};
    } else {
      paragraph_->text += "\n";
      paragraph_->text += std::string(line);
      paragraph_->end = end;
    }
  }

  void flush_paragraph() {
    if (paragraph_) {
      push(Paragraph{std::move(paragraph_->text)}, paragraph_->start, paragraph_->end);
      paragraph_.reset();
    }
  }

  void finish_example() {
    if (!example_) return;
    if (example_->has_output) {
      push(ExamplePair{std::move(example_->input), std::move(example_->output)}, example_->start,
           example_->end);
    } else {
      // Unpaired input degrades losslessly.
      push(Paragraph{"**Input:** " + example_->input}, example_->start, example_->end);
    }
    example_.reset();
  }

  void flush_all() {
    flush_paragraph();
    finish_example();
  }

  void consume_fence(const FenceOpen& fence, std::size_t open_start) {
    std::string content;
    std::size_t end = open_start;
    bool first = true;
    while (!cursor_.done()) {
      std::size_t line_start = 0;
      std::string_view line = cursor_.next(line_start);
      end = line_start + line.size();
      if (is_fence_close(line, fence.tick_count)) break;
      if (!first) content += "\n";
      content += std::string(line);
      first = false;
    }
    std::string tag = fence.info.substr(0, fence.info.find(' '));
    if (in_schema_section() && tag == "json") {
      push(SchemaBlock{std::move(content)}, open_start, end);
    } else {
      push(CodeBlock{std::move(tag), std::move(content)}, open_start, end);
    }
  }

  std::string_view body_;
  LineCursor cursor_;
  std::vector<BodyBlock> blocks_;
  std::string section_title_;
  int procedure_counter_ = 0;
  std::optional<PendingParagraph> paragraph_;
  std::optional<PendingExample> example_;
};

}  // namespace

std::vector<BodyBlock> lower_markdown(std::string_view body) { return Lowering(body).run(); }

RawAst parse_skill(const SourceFile& source, std::vector<Diagnostic>* warnings) {
  RawAst ast;
  ast.frontmatter = parse_frontmatter(source, warnings);

  const auto split = split_frontmatter(source.content);
  // parse_frontmatter succeeded, so the delimiters exist.
  std::string_view body = std::string_view(source.content).substr(split->body_offset);
  ast.blocks = lower_markdown(body);
  for (auto& block : ast.blocks) {
    block.span.start_byte += split->body_offset;
    block.span.end_byte += split->body_offset;
    block.span.start_line += split->body_first_line - 1;
  }
  ast.source_hash = source.source_hash;
  return ast;
}

}  // namespace skillc

#include "skillc/diagnostics.hpp"

#include <algorithm>
#include <sstream>

#include "skillc/source.hpp"

namespace skillc {

Span make_span(std::string_view text, std::size_t start_byte, std::size_t end_byte) {
  Span span;
  span.start_byte = std::min(start_byte, text.size());
  span.end_byte = std::min(std::max(end_byte, start_byte), text.size());
  int line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < span.start_byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  span.start_line = line;
  span.start_col = static_cast<int>(span.start_byte - line_start) + 1;
  return span;
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::fatal: return "fatal";
  }
  return "info";
}

Diagnostic make_diag(std::string code, Severity severity, std::string message) {
  Diagnostic d;
  d.code = std::move(code);
  d.severity = severity;
  d.message = std::move(message);
  return d;
}

bool has_fatal(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::fatal; });
}

namespace {

std::string_view line_containing(std::string_view text, std::size_t byte) {
  std::size_t begin = text.rfind('\n', byte == 0 ? 0 : byte - 1);
  begin = (begin == std::string_view::npos || byte == 0) ? 0 : begin + 1;
  if (byte > 0 && byte <= text.size() && begin > byte) begin = byte;
  std::size_t end = text.find('\n', byte);
  if (end == std::string_view::npos) end = text.size();
  return text.substr(begin, end - begin);
}

}  // namespace

std::string render_diagnostic(const Diagnostic& d, const SourceFile* source) {
  std::ostringstream out;
  out << to_string(d.severity) << ' ' << d.code << ": " << d.message;
  if (d.span && source) {
    const Span& span = *d.span;
    std::string_view line = line_containing(source->content, span.start_byte);
    std::string line_no = std::to_string(span.start_line);
    out << '\n' << line_no << " | " << line;
    out << '\n' << std::string(line_no.size(), ' ') << " | ";
    out << std::string(static_cast<std::size_t>(span.start_col - 1), ' ');
    std::size_t width = span.end_byte > span.start_byte ? span.end_byte - span.start_byte : 1;
    std::size_t remaining = line.size() >= static_cast<std::size_t>(span.start_col - 1)
                                ? line.size() - static_cast<std::size_t>(span.start_col - 1)
                                : 0;
    width = std::max<std::size_t>(1, std::min(width, std::max<std::size_t>(remaining, 1)));
    out << std::string(width, '^');
  }
  if (d.hint) {
    out << "\nhint: " << *d.hint;
  }
  return out.str();
}

}  // namespace skillc

#pragma once

#include <filesystem>
#include <string>

namespace skillc {

/// A SKILL.md source held in memory. Content is always valid UTF-8 with any
/// leading BOM stripped; source_hash is the SHA-256 of content as stored.
struct SourceFile {
  std::string path;
  std::string content;
  std::string source_hash;

  /// Validates encoding, strips a UTF-8 BOM if present, and hashes.
  /// Throws FrontmatterError (FM_ENCODING) on invalid UTF-8.
  static SourceFile from_content(std::string path, std::string bytes);

  static SourceFile load(const std::filesystem::path& file);
};

/// Lowercase hex SHA-256 digest (64 chars).
std::string sha256_hex(std::string_view bytes);

bool is_valid_utf8(std::string_view bytes);

}  // namespace skillc

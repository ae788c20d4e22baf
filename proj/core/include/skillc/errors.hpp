#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "skillc/diagnostics.hpp"

namespace skillc {

/// The three compile-time rejection classes. Every fatal diagnostic maps to
/// exactly one of them via interception_category_for().
enum class InterceptionCategory { yaml_violation, security_interception, schema_violation };

std::string_view to_string(InterceptionCategory c);

/// Category implied by a diagnostic code: FM_* are frontend rejections,
/// SCHEMA_* are IR-construction rejections, everything else fatal is a
/// security rejection.
InterceptionCategory interception_category_for(std::string_view code);

/// Compile-time rejection of one skill. Carries the diagnostics accumulated
/// up to and including the fatal one; the batch driver reports it and moves
/// on to the next skill.
class CompilationInterception : public std::runtime_error {
 public:
  CompilationInterception(InterceptionCategory category, std::vector<Diagnostic> diagnostics);

  InterceptionCategory category() const { return category_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  InterceptionCategory category_;
  std::vector<Diagnostic> diagnostics_;
};

/// Frontend rejection (missing delimiters, unparseable YAML, bad required
/// keys, invalid encoding). Same envelope as every other interception.
class FrontmatterError : public CompilationInterception {
 public:
  explicit FrontmatterError(Diagnostic d);
  explicit FrontmatterError(std::vector<Diagnostic> diags);
};

/// IR-construction rejection (schema block not valid JSON, unknown type
/// values, illegal field types).
class SchemaValidationError : public CompilationInterception {
 public:
  explicit SchemaValidationError(Diagnostic d);
};

/// Malformed canonical IR text handed to deserialize_ir.
class IrFormatError : public std::runtime_error {
 public:
  explicit IrFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Emission failure: unknown target id, duplicate registration, or a
/// rendering failure naming the target and IR field involved.
class EmitError : public std::runtime_error {
 public:
  EmitError(std::string target, const std::string& what)
      : std::runtime_error(what), target_(std::move(target)) {}

  const std::string& target() const { return target_; }

 private:
  std::string target_;
};

}  // namespace skillc

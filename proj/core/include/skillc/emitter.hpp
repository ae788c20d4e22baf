#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "skillc/errors.hpp"
#include "skillc/optimizer.hpp"

namespace skillc {

using EmitterId = std::string;

/// The four routing-manifest fields — nothing more is ever indexed.
struct ManifestEntry {
  std::string name;
  std::string description;
  SecurityLevel security_level = SecurityLevel::low;
  bool hitl_required = false;

  bool operator==(const ManifestEntry&) const = default;
};

struct RoutingManifest {
  int schema_version = 1;
  std::vector<ManifestEntry> entries;  // sorted ascending by name, names unique
};

/// One target's rendering of a skill: the main document plus any side files
/// (relative paths, no `..` segments, unique).
struct EmittedArtifact {
  EmitterId target;
  std::string main_document;
  std::vector<std::pair<std::string, std::string>> asset_files;
  ManifestEntry manifest_entry;
};

/// Rendering backend for one framework. Implementations are stateless; a new
/// target needs only a new implementation — the earlier phases never change.
class Emitter {
 public:
  virtual ~Emitter() = default;
  virtual EmittedArtifact emit(const ValidatedSkillIR& validated) const = 0;
};

class EmitterRegistry {
 public:
  /// Throws EmitError when the id is already registered.
  void register_emitter(EmitterId id, std::shared_ptr<const Emitter> emitter);

  bool contains(const EmitterId& id) const;
  const Emitter& at(const EmitterId& id) const;  // throws EmitError on unknown id
  std::vector<EmitterId> ids() const;            // sorted
  std::size_t size() const { return emitters_.size(); }
  bool empty() const { return emitters_.empty(); }

  /// claude, codex, gemini, kimi.
  static EmitterRegistry builtins();

 private:
  std::map<EmitterId, std::shared_ptr<const Emitter>> emitters_;
};

// Built-in target ids.
inline constexpr char kTargetClaude[] = "claude";
inline constexpr char kTargetCodex[] = "codex";
inline constexpr char kTargetGemini[] = "gemini";
inline constexpr char kTargetKimi[] = "kimi";

EmittedArtifact emit(const ValidatedSkillIR& validated, const EmitterId& target,
                     const EmitterRegistry& registry);

/// Renders every registered target from the same validated IR. A failing
/// target never blocks the others: with `errors` supplied, failures land
/// there keyed by target id; without it, the first failure is rethrown
/// (tagged with its id) after the remaining targets have been emitted.
std::map<EmitterId, EmittedArtifact> emit_all(const ValidatedSkillIR& validated,
                                              const EmitterRegistry& registry,
                                              std::map<EmitterId, std::string>* errors = nullptr);

ManifestEntry manifest_entry_for(const SkillIR& ir);

/// Builds the routing manifest, sorted by name. Throws std::runtime_error
/// listing the colliding names when skill names are not unique.
RoutingManifest generate_manifest(const std::vector<ValidatedSkillIR>& skills);
RoutingManifest manifest_from_entries(std::vector<ManifestEntry> entries);

/// JSON wire form: {"schema_version":1,"skills":[...]} with two-space indent
/// and a trailing newline.
std::string serialize_manifest(const RoutingManifest& manifest);

// Escapes &, <, > (and quotes inside attributes) for the XML-based targets.
std::string xml_escape(std::string_view text, bool attribute = false);

}  // namespace skillc

#include "skillc/emitter.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace skillc {

void EmitterRegistry::register_emitter(EmitterId id, std::shared_ptr<const Emitter> emitter) {
  if (!emitter) throw EmitError(id, "emitter '" + id + "' is null");
  if (emitters_.count(id)) throw EmitError(id, "emitter '" + id + "' is already registered");
  emitters_.emplace(std::move(id), std::move(emitter));
}

bool EmitterRegistry::contains(const EmitterId& id) const { return emitters_.count(id) > 0; }

const Emitter& EmitterRegistry::at(const EmitterId& id) const {
  auto it = emitters_.find(id);
  if (it == emitters_.end()) throw EmitError(id, "unknown emission target '" + id + "'");
  return *it->second;
}

std::vector<EmitterId> EmitterRegistry::ids() const {
  std::vector<EmitterId> out;
  out.reserve(emitters_.size());
  for (const auto& [id, emitter] : emitters_) out.push_back(id);
  return out;
}

EmittedArtifact emit(const ValidatedSkillIR& validated, const EmitterId& target,
                     const EmitterRegistry& registry) {
  EmittedArtifact artifact = registry.at(target).emit(validated);
  artifact.target = target;

  std::set<std::string> seen;
  for (const auto& [path, content] : artifact.asset_files) {
    const bool relative = !path.empty() && path.front() != '/';
    const bool dotdot = path == ".." || path.rfind("../", 0) == 0 ||
                        path.find("/../") != std::string::npos ||
                        (path.size() >= 3 && path.compare(path.size() - 3, 3, "/..") == 0);
    if (!relative || dotdot) {
      throw EmitError(target, "emitter '" + target + "' produced an illegal asset path '" + path +
                                  "' for field asset_files");
    }
    if (!seen.insert(path).second) {
      throw EmitError(target, "emitter '" + target + "' produced duplicate asset path '" + path +
                                  "' for field asset_files");
    }
  }
  return artifact;
}

std::map<EmitterId, EmittedArtifact> emit_all(const ValidatedSkillIR& validated,
                                              const EmitterRegistry& registry,
                                              std::map<EmitterId, std::string>* errors) {
  std::map<EmitterId, EmittedArtifact> out;
  std::optional<EmitError> first_failure;
  for (const auto& id : registry.ids()) {
    try {
      out.emplace(id, emit(validated, id, registry));
    } catch (const std::exception& e) {
      if (errors) {
        errors->emplace(id, e.what());
      } else if (!first_failure) {
        first_failure.emplace(id, "target '" + id + "' failed: " + e.what());
      }
    }
  }
  if (first_failure) throw *first_failure;
  return out;
}

ManifestEntry manifest_entry_for(const SkillIR& ir) {
  return ManifestEntry{ir.name, ir.description, ir.security_level, ir.hitl_required};
}

RoutingManifest manifest_from_entries(std::vector<ManifestEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.name < b.name; });
  std::vector<std::string> collisions;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].name == entries[i - 1].name) collisions.push_back(entries[i].name);
  }
  if (!collisions.empty()) {
    std::ostringstream msg;
    msg << "duplicate skill names in manifest:";
    for (const auto& name : collisions) msg << ' ' << name;
    throw std::runtime_error(msg.str());
  }
  RoutingManifest manifest;
  manifest.entries = std::move(entries);
  return manifest;
}

RoutingManifest generate_manifest(const std::vector<ValidatedSkillIR>& skills) {
  std::vector<ManifestEntry> entries;
  entries.reserve(skills.size());
  for (const auto& skill : skills) entries.push_back(manifest_entry_for(skill.ir));
  return manifest_from_entries(std::move(entries));
}

std::string serialize_manifest(const RoutingManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = manifest.schema_version;
  nlohmann::ordered_json skills = nlohmann::ordered_json::array();
  for (const auto& entry : manifest.entries) {
    skills.push_back({{"name", entry.name},
                      {"description", entry.description},
                      {"security_level", std::string(to_string(entry.security_level))},
                      {"hitl_required", entry.hitl_required}});
  }
  doc["skills"] = std::move(skills);
  return doc.dump(2) + "\n";
}

std::string xml_escape(std::string_view text, bool attribute) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
        } else {
          out.push_back(c);
        }
        break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace skillc

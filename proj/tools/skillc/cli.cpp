#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "skillc/metrics.hpp"
#include "skillc/pipeline.hpp"
#include "skillc/version.hpp"

namespace fs = std::filesystem;

namespace skillc::cli {

namespace {

struct CliConfig {
  std::vector<std::string> input_paths;
  std::string out_dir;
  std::vector<std::string> targets;
  std::string baseline_path;
  std::string rules_path;
  std::string format = "human";
  bool strict = false;
  bool emit_ir = false;
  std::string report_path;
  unsigned jobs = 0;  // 0 = logical CPU count
  bool no_timestamps = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config file (skillc.yaml in the working directory) and SKILLC_* environment
// variables fill in anything the flags left unset: flags > env > file.
void apply_config_sources(CliConfig& cfg, const CLI::App& cmd) {
  auto unset = [&](const std::string& flag) {
    return cmd.get_option_no_throw(flag) == nullptr || cmd.count(flag) == 0;
  };
  auto split_csv = [](const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  };

  if (const char* v = std::getenv("SKILLC_OUT"); v && *v && unset("--out")) cfg.out_dir = v;
  if (const char* v = std::getenv("SKILLC_TARGETS"); v && *v && unset("--targets"))
    cfg.targets = split_csv(v);
  if (const char* v = std::getenv("SKILLC_BASELINE"); v && *v && unset("--baseline"))
    cfg.baseline_path = v;
  if (const char* v = std::getenv("SKILLC_RULES"); v && *v && unset("--rules"))
    cfg.rules_path = v;

  const fs::path config_file = "skillc.yaml";
  if (!fs::exists(config_file)) return;
  YAML::Node root;
  try {
    root = YAML::LoadFile(config_file.string());
  } catch (const YAML::Exception& e) {
    throw UsageError("skillc.yaml: " + e.msg);
  }
  if (!root.IsMap()) return;
  auto scalar = [&](const char* key) -> std::optional<std::string> {
    if (const auto node = root[key]; node && node.IsScalar()) return node.Scalar();
    return std::nullopt;
  };
  if (cfg.out_dir.empty() && unset("--out")) {
    if (auto v = scalar("out")) cfg.out_dir = *v;
  }
  if (cfg.targets.empty() && unset("--targets")) {
    if (const auto node = root["targets"]; node) {
      if (node.IsSequence()) {
        for (const auto& item : node) cfg.targets.push_back(item.Scalar());
      } else if (node.IsScalar()) {
        cfg.targets = split_csv(node.Scalar());
      }
    }
  }
  if (cfg.baseline_path.empty() && unset("--baseline")) {
    if (auto v = scalar("baseline")) cfg.baseline_path = *v;
  }
  if (cfg.rules_path.empty() && unset("--rules")) {
    if (auto v = scalar("rules")) cfg.rules_path = *v;
  }
  if (cfg.jobs == 0 && unset("--jobs")) {
    if (auto v = scalar("jobs")) cfg.jobs = static_cast<unsigned>(std::stoul(*v));
  }
}

CompileOptions load_compile_options(const CliConfig& cfg) {
  CompileOptions options;
  options.strict = cfg.strict;
  try {
    if (!cfg.baseline_path.empty()) options.baseline = load_baseline_file(cfg.baseline_path);
    if (!cfg.rules_path.empty()) options.rules = load_rules_file(cfg.rules_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return options;
}

std::vector<EmitterId> resolve_targets(const CliConfig& cfg, const EmitterRegistry& registry) {
  std::vector<EmitterId> targets = cfg.targets.empty() ? registry.ids() : cfg.targets;
  for (const auto& target : targets) {
    if (!registry.contains(target)) {
      throw UsageError("unknown target '" + target + "'");
    }
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.empty()) throw UsageError("no targets configured");
  return targets;
}

// Recursive discovery of files named SKILL.md; explicitly named files are
// taken as-is. The result is sorted for deterministic batch order.
std::vector<fs::path> discover_skills(const std::vector<std::string>& inputs) {
  std::vector<fs::path> found;
  std::vector<std::string> roots = inputs.empty() ? std::vector<std::string>{"."} : inputs;
  for (const auto& root : roots) {
    fs::path p(root);
    if (fs::is_regular_file(p)) {
      found.push_back(p);
    } else if (fs::is_directory(p)) {
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().filename() == "SKILL.md") {
          found.push_back(entry.path());
        }
      }
    } else {
      throw UsageError("input path does not exist: " + root);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

struct SkillResult {
  fs::path path;
  std::string name;  // frontmatter name, or the path when never parsed
  bool intercepted = false;
  InterceptionCategory category = InterceptionCategory::yaml_violation;
  std::vector<Diagnostic> diagnostics;
  std::optional<SourceFile> source;
  std::optional<ValidatedSkillIR> validated;
  std::map<EmitterId, EmittedArtifact> artifacts;
  CompileReport report;
};

struct BatchOutcome {
  std::vector<SkillResult> results;
  int compiled = 0;
  int intercepted = 0;
  int warnings = 0;
  std::map<std::string, int> interceptions_by_category;
};

int count_warnings(const std::vector<Diagnostic>& diags) {
  return static_cast<int>(std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::warning;
  }));
}

// Compiles one skill end to end; `emit_targets` empty means phases 1-3 only.
SkillResult process_skill(const fs::path& path, const CompileOptions& options,
                          const EmitterRegistry& registry,
                          const std::vector<EmitterId>& emit_targets) {
  SkillResult result;
  result.path = path;
  result.name = path.string();

  std::optional<SourceFile> source;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&start] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  try {
    source = SourceFile::load(path);
    result.source = source;
    result.validated = analyze_source(*source, options);
    result.name = result.validated->ir.name;
    result.diagnostics = result.validated->diagnostics;
    for (const auto& target : emit_targets) {
      result.artifacts.emplace(target, emit(*result.validated, target, registry));
    }
    SkillCompilation compiled{*result.validated, result.artifacts};
    result.report = build_report(*source, compiled, elapsed_ms());
  } catch (const CompilationInterception& e) {
    result.intercepted = true;
    result.category = e.category();
    result.diagnostics = e.diagnostics();
    if (source) {
      result.report = build_report(*source, e.category(), elapsed_ms());
    } else {
      result.report.skill_name = path.string();
      result.report.interception = e.category();
      result.report.duration_ms = elapsed_ms();
    }
  }
  return result;
}

BatchOutcome run_batch(const std::vector<fs::path>& paths, const CompileOptions& options,
                       const EmitterRegistry& registry, const std::vector<EmitterId>& emit_targets,
                       unsigned jobs) {
  BatchOutcome outcome;
  outcome.results.resize(paths.size());

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(paths.size(), 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= paths.size()) break;
      outcome.results[i] = process_skill(paths[i], options, registry, emit_targets);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Reports and listings are ordered by skill name regardless of job count.
  std::stable_sort(outcome.results.begin(), outcome.results.end(),
                   [](const SkillResult& a, const SkillResult& b) {
                     return std::tie(a.name, a.path) < std::tie(b.name, b.path);
                   });
  for (const auto& result : outcome.results) {
    outcome.warnings += count_warnings(result.diagnostics);
    if (result.intercepted) {
      ++outcome.intercepted;
      ++outcome.interceptions_by_category[std::string(to_string(result.category))];
    } else {
      ++outcome.compiled;
    }
  }
  return outcome;
}

void ensure_unique_names(const BatchOutcome& outcome) {
  std::map<std::string, int> counts;
  for (const auto& result : outcome.results) {
    if (!result.intercepted) ++counts[result.name];
  }
  std::string collisions;
  for (const auto& [name, count] : counts) {
    if (count > 1) collisions += " " + name;
  }
  if (!collisions.empty()) {
    throw UsageError("duplicate skill names across inputs:" + collisions);
  }
}

void write_text_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string build_info_json(const EmitterId& target, const BatchOutcome& outcome,
                            bool no_timestamps) {
  nlohmann::ordered_json doc;
  doc["compiler_version"] = kCompilerVersion;
  if (!no_timestamps) doc["generated_at"] = iso8601_utc_now();
  doc["target"] = target;
  nlohmann::ordered_json skills = nlohmann::ordered_json::array();
  std::vector<const SkillResult*> ordered;
  for (const auto& result : outcome.results) {
    if (!result.intercepted) ordered.push_back(&result);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const SkillResult* a, const SkillResult* b) { return a->name < b->name; });
  for (const auto* result : ordered) {
    skills.push_back({{"name", result->name}, {"source_hash", result->validated->ir.source_hash}});
  }
  doc["skills"] = std::move(skills);
  return doc.dump(2) + "\n";
}

// Output layout: <out>/<target>/<skill>/SKILL.md plus assets, with
// manifest.json and build-info.json beside the skill directories.
void write_output_tree(const fs::path& out_dir, const std::vector<EmitterId>& targets,
                       const BatchOutcome& outcome, bool no_timestamps, bool write_skills) {
  std::vector<ManifestEntry> entries;
  for (const auto& result : outcome.results) {
    if (!result.intercepted) entries.push_back(manifest_entry_for(result.validated->ir));
  }
  const std::string manifest = serialize_manifest(manifest_from_entries(std::move(entries)));

  for (const auto& target : targets) {
    const fs::path target_dir = out_dir / target;
    fs::create_directories(target_dir);
    if (write_skills) {
      for (const auto& result : outcome.results) {
        if (result.intercepted) continue;
        const auto& artifact = result.artifacts.at(target);
        const fs::path skill_dir = target_dir / result.name;
        write_text_file(skill_dir / "SKILL.md", artifact.main_document);
        for (const auto& [rel, content] : artifact.asset_files) {
          write_text_file(skill_dir / rel, content);
        }
      }
      write_text_file(target_dir / "build-info.json",
                      build_info_json(target, outcome, no_timestamps));
    }
    write_text_file(target_dir / "manifest.json", manifest);
  }
}

nlohmann::ordered_json diagnostic_to_json(const Diagnostic& d) {
  nlohmann::ordered_json out;
  out["code"] = d.code;
  out["severity"] = std::string(to_string(d.severity));
  out["message"] = d.message;
  if (d.span) {
    out["span"] = {{"start_byte", d.span->start_byte},
                   {"end_byte", d.span->end_byte},
                   {"start_line", d.span->start_line},
                   {"start_col", d.span->start_col}};
  }
  if (d.hint) out["hint"] = *d.hint;
  return out;
}

void print_human_diagnostics(const BatchOutcome& outcome) {
  for (const auto& result : outcome.results) {
    if (result.diagnostics.empty()) continue;
    std::cerr << result.path.string() << ":\n";
    for (const auto& d : result.diagnostics) {
      const SourceFile* src = result.source ? &*result.source : nullptr;
      std::istringstream block(render_diagnostic(d, src));
      std::string line;
      while (std::getline(block, line)) std::cerr << "  " << line << "\n";
    }
  }
}

void print_summary(const std::string& command, const BatchOutcome& outcome,
                   const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["compiled"] = outcome.compiled;
    doc["intercepted"] = outcome.intercepted;
    doc["warnings"] = outcome.warnings;
    if (outcome.intercepted > 0) {
      nlohmann::ordered_json cats;
      for (const auto& [category, count] : outcome.interceptions_by_category) {
        cats[category] = count;
      }
      doc["interceptions"] = std::move(cats);
    }
    nlohmann::ordered_json skills = nlohmann::ordered_json::array();
    for (const auto& result : outcome.results) {
      nlohmann::ordered_json entry;
      entry["path"] = result.path.string();
      entry["name"] = result.name;
      entry["status"] = result.intercepted ? "intercepted" : "compiled";
      if (result.intercepted) {
        entry["interception"] = std::string(to_string(result.category));
      } else {
        entry["security_level"] = std::string(to_string(result.validated->ir.security_level));
        entry["hitl_required"] = result.validated->ir.hitl_required;
      }
      nlohmann::ordered_json diags = nlohmann::ordered_json::array();
      for (const auto& d : result.diagnostics) diags.push_back(diagnostic_to_json(d));
      entry["diagnostics"] = std::move(diags);
      skills.push_back(std::move(entry));
    }
    doc["skills"] = std::move(skills);
    std::cout << doc.dump(2) << "\n";
    return;
  }

  print_human_diagnostics(outcome);
  std::cout << "compiled " << outcome.compiled << ", intercepted " << outcome.intercepted
            << ", warnings " << outcome.warnings << "\n";
  if (outcome.intercepted > 0) {
    std::cout << "interceptions:";
    bool first = true;
    for (const auto& [category, count] : outcome.interceptions_by_category) {
      std::cout << (first ? " " : ", ") << category << " " << count;
      first = false;
    }
    std::cout << "\n";
  }
}

void maybe_write_report(const CliConfig& cfg, const BatchOutcome& outcome) {
  if (cfg.report_path.empty()) return;
  std::vector<CompileReport> reports;
  reports.reserve(outcome.results.size());
  for (const auto& result : outcome.results) reports.push_back(result.report);
  write_text_file(cfg.report_path, serialize_reports(reports));
}

int cmd_build(const CliConfig& cfg, const EmitterRegistry& registry) {
  if (cfg.out_dir.empty()) throw UsageError("build requires --out");
  const auto targets = resolve_targets(cfg, registry);
  const auto options = load_compile_options(cfg);
  const auto paths = discover_skills(cfg.input_paths);

  BatchOutcome outcome = run_batch(paths, options, registry, targets, cfg.jobs);
  ensure_unique_names(outcome);
  write_output_tree(cfg.out_dir, targets, outcome, cfg.no_timestamps, /*write_skills=*/true);
  maybe_write_report(cfg, outcome);
  print_summary("build", outcome, cfg.format);
  return outcome.intercepted > 0 ? kExitIntercepted : kExitOk;
}

int cmd_check(const CliConfig& cfg, const EmitterRegistry& registry, const char* command) {
  if (cfg.emit_ir && cfg.out_dir.empty()) throw UsageError("--emit-ir requires --out");
  const auto options = load_compile_options(cfg);
  const auto paths = discover_skills(cfg.input_paths);

  BatchOutcome outcome = run_batch(paths, options, registry, {}, cfg.jobs);
  if (cfg.emit_ir) {
    for (const auto& result : outcome.results) {
      if (result.intercepted) continue;
      write_text_file(fs::path(cfg.out_dir) / (result.name + ".skir.json"),
                      serialize_ir(result.validated->ir));
    }
  }
  maybe_write_report(cfg, outcome);
  print_summary(command, outcome, cfg.format);
  return outcome.intercepted > 0 ? kExitIntercepted : kExitOk;
}

int cmd_list(const CliConfig& cfg, const EmitterRegistry& registry) {
  const auto options = load_compile_options(cfg);
  const auto paths = discover_skills(cfg.input_paths);
  BatchOutcome outcome = run_batch(paths, options, registry, {}, cfg.jobs);

  if (cfg.format == "json") {
    print_summary("list", outcome, cfg.format);
  } else {
    std::size_t name_w = 4, version_w = 7;
    for (const auto& r : outcome.results) {
      name_w = std::max(name_w, r.name.size());
      if (!r.intercepted) version_w = std::max(version_w, r.validated->ir.version.size());
    }
    std::cout << std::left << std::setw(static_cast<int>(name_w) + 2) << "NAME"
              << std::setw(static_cast<int>(version_w) + 2) << "VERSION" << "LEVEL\n";
    for (const auto& r : outcome.results) {
      std::cout << std::left << std::setw(static_cast<int>(name_w) + 2) << r.name;
      if (r.intercepted) {
        std::cout << std::setw(static_cast<int>(version_w) + 2) << "-"
                  << "intercepted (" << to_string(r.category) << ")\n";
      } else {
        std::cout << std::setw(static_cast<int>(version_w) + 2) << r.validated->ir.version
                  << to_string(r.validated->ir.security_level) << "\n";
      }
    }
  }
  return outcome.intercepted > 0 ? kExitIntercepted : kExitOk;
}

int cmd_index(const CliConfig& cfg, const EmitterRegistry& registry) {
  if (cfg.out_dir.empty()) throw UsageError("index requires --out");
  const auto targets = resolve_targets(cfg, registry);
  const auto options = load_compile_options(cfg);
  const auto paths = discover_skills(cfg.input_paths);

  BatchOutcome outcome = run_batch(paths, options, registry, {}, cfg.jobs);
  ensure_unique_names(outcome);
  write_output_tree(cfg.out_dir, targets, outcome, cfg.no_timestamps, /*write_skills=*/false);
  print_summary("index", outcome, cfg.format);
  return outcome.intercepted > 0 ? kExitIntercepted : kExitOk;
}

int cmd_init(const CliConfig& cfg, const std::string& name, const std::string& dir) {
  const bool kebab = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
  }) && name.front() != '-';
  if (!kebab) throw UsageError("skill name must match [a-z0-9][a-z0-9-]*: " + name);

  const fs::path skill_file = fs::path(dir) / name / "SKILL.md";
  if (fs::exists(skill_file)) throw UsageError("refusing to overwrite " + skill_file.string());

  std::string body;
  body += "---\n";
  body += "name: " + name + "\n";
  body += "version: 0.1.0\n";
  body += "description: Describe what this skill does.\n";
  body += "---\n";
  body += "\n";
  body += "## Procedures\n";
  body += "\n";
  body += "1. Outline the first step here.\n";
  body += "2. Outline the second step here.\n";
  body += "\n";
  body += "## Constraints\n";
  body += "\n";
  body += "- State the boundaries this skill must respect.\n";
  write_text_file(skill_file, body);
  if (cfg.format == "json") {
    nlohmann::ordered_json doc;
    doc["command"] = "init";
    doc["created"] = skill_file.string();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "created " << skill_file.string() << "\n";
  }
  return kExitOk;
}

bool is_layout_asset(const fs::path& file) {
  const std::string name = file.filename().string();
  if (name == "SKILL.md") return true;
  constexpr std::string_view suffix = ".schema.yaml";
  return name.size() > suffix.size() &&
         name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Removes only files matching the documented output layout; anything foreign
// (and any directory still holding foreign files) is left untouched.
int cmd_clean(const CliConfig& cfg) {
  if (cfg.out_dir.empty()) throw UsageError("clean requires --out");
  const fs::path out(cfg.out_dir);
  if (!fs::exists(out)) return kExitOk;

  for (const auto& target_entry : fs::directory_iterator(out)) {
    if (!target_entry.is_directory()) continue;
    if (!cfg.targets.empty()) {
      const std::string dir_name = target_entry.path().filename().string();
      if (std::find(cfg.targets.begin(), cfg.targets.end(), dir_name) == cfg.targets.end())
        continue;
    }
    for (const auto& entry : fs::directory_iterator(target_entry.path())) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && (name == "manifest.json" || name == "build-info.json")) {
        fs::remove(entry.path());
      } else if (entry.is_directory()) {
        for (const auto& file : fs::directory_iterator(entry.path())) {
          if (file.is_regular_file() && is_layout_asset(file.path())) fs::remove(file.path());
        }
        if (fs::is_empty(entry.path())) fs::remove(entry.path());
      }
    }
    if (fs::is_empty(target_entry.path())) fs::remove(target_entry.path());
  }
  return kExitOk;
}

void add_common_options(CLI::App* cmd, CliConfig& cfg, bool with_targets, bool with_out) {
  cmd->add_option("inputs", cfg.input_paths, "SKILL.md files or directories to search");
  if (with_out) cmd->add_option("-o,--out", cfg.out_dir, "Output directory");
  if (with_targets) cmd->add_option("-t,--targets", cfg.targets, "Comma-separated target list")
      ->delimiter(',');
  cmd->add_option("--baseline", cfg.baseline_path, "Security baseline YAML file");
  cmd->add_option("--rules", cfg.rules_path, "Anti-skill rules YAML file");
  cmd->add_option("--format", cfg.format, "Output format: human or json")
      ->check(CLI::IsMember({"human", "json"}));
  cmd->add_flag("--strict", cfg.strict, "Promote warnings to interceptions");
  cmd->add_option("-j,--jobs", cfg.jobs, "Parallel compilation jobs (default: CPU count)");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"skillc — compile SKILL.md sources into framework-native skill artifacts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kCompilerVersion));

  CliConfig cfg;
  std::string init_name;
  std::string init_dir = ".";

  auto* build = app.add_subcommand("build", "Compile skills for every configured target");
  add_common_options(build, cfg, true, true);
  build->add_option("--report", cfg.report_path, "Write per-skill compile reports (JSON)");
  build->add_flag("--no-timestamps", cfg.no_timestamps, "Omit timestamps from build-info.json");

  auto* check = app.add_subcommand("check", "Validate skills without emitting");
  add_common_options(check, cfg, false, true);
  check->add_flag("--emit-ir", cfg.emit_ir, "Write canonical <name>.skir.json files to --out");
  check->add_option("--report", cfg.report_path, "Write per-skill compile reports (JSON)");

  auto* validate = app.add_subcommand("validate", "Strict validation (warnings intercept)");
  add_common_options(validate, cfg, false, true);
  validate->add_flag("--emit-ir", cfg.emit_ir, "Write canonical <name>.skir.json files to --out");

  auto* init = app.add_subcommand("init", "Scaffold a new skill from the template");
  init->add_option("name", init_name, "Skill name (lowercase kebab)")->required();
  init->add_option("--dir", init_dir, "Parent directory (default: .)");
  init->add_option("--format", cfg.format, "Output format: human or json");

  auto* list = app.add_subcommand("list", "Enumerate skills with version and security level");
  add_common_options(list, cfg, false, false);

  auto* index = app.add_subcommand("index", "Generate routing manifests only");
  add_common_options(index, cfg, true, true);

  auto* clean = app.add_subcommand("clean", "Remove compiled artifacts from the output layout");
  clean->add_option("-o,--out", cfg.out_dir, "Output directory");
  clean->add_option("-t,--targets", cfg.targets, "Restrict to these target directories")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config_sources(cfg, *sub);
    const EmitterRegistry registry = EmitterRegistry::builtins();

    if (sub == build) return cmd_build(cfg, registry);
    if (sub == check) return cmd_check(cfg, registry, "check");
    if (sub == validate) {
      cfg.strict = true;
      return cmd_check(cfg, registry, "validate");
    }
    if (sub == init) return cmd_init(cfg, init_name, init_dir);
    if (sub == list) return cmd_list(cfg, registry);
    if (sub == index) return cmd_index(cfg, registry);
    if (sub == clean) return cmd_clean(cfg);
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace skillc::cli

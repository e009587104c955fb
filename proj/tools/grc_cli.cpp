#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "grc.h"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct SpecArg {
  grc_spec* spec = nullptr;
  std::string t_value;  // empty = default
};

// A spec file maps parameter names to {"value": "...", "weight": "..."} or to
// a bare value string (weight 0).  The reserved key "t" gives the rational
// stand-in for the deformation variable in numeric work.
SpecArg load_spec(const std::string& path) {
  SpecArg out;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    std::exit(2);
  }
  if (!j.is_object()) {
    std::cerr << path << ": expected an object\n";
    std::exit(2);
  }
  out.spec = grc_spec_new();
  for (const auto& [key, val] : j.items()) {
    std::string value, weight = "0";
    if (val.is_object()) {
      value = val.value("value", "");
      weight = val.value("weight", "0");
    } else if (val.is_string()) {
      value = val.get<std::string>();
    } else {
      value = val.dump();
    }
    if (key == "t") {
      out.t_value = value;
      continue;
    }
    char* err = nullptr;
    if (grc_spec_set(out.spec, key.c_str(), value.c_str(), weight.c_str(), &err) != GRC_OK) {
      std::cerr << path << ": " << (err ? err : "bad entry") << "\n";
      grc_string_free(err);
      std::exit(2);
    }
  }
  return out;
}

int finish(int status, char* out, char* err, const std::string& file, bool json_only) {
  if (status >= 2) {
    std::cerr << (err ? err : "error") << "\n";
    grc_string_free(err);
    return status;
  }
  json j = json::parse(out);
  grc_string_free(out);
  j["file"] = file;
  std::cout << j.dump() << "\n";
  if (!json_only) {
    std::ostringstream line;
    line << j["command"].get<std::string>() << ":";
    if (j.contains("count")) line << " count " << j["count"].dump();
    if (j.contains("polarization"))
      line << " " << j["polarization"].dump() << " | " << j["tropical"].dump();
    if (j.contains("bounded")) line << " bounded " << j["bounded"].dump();
    if (j.contains("failing_check")) line << " (failing: " << j["failing_check"].dump() << ")";
    line << (status == GRC_OK ? " [certified]" : " [uncertified]");
    std::cerr << line.str() << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generic root counts of parametrized polynomial systems"};
  app.require_subcommand(1);

  std::string file, mode, spec_path;
  uint64_t seed = 0;
  bool verify = false, json_only = false;

  auto add_common = [&](CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("file", file, "system description")->required();
    if (with_seed) cmd->add_option("--seed", seed, "rng seed (default 0)");
    cmd->add_flag("--json", json_only, "suppress the stderr summary");
  };

  auto* count = app.add_subcommand("count", "certified generic root count");
  add_common(count);
  count->add_option("--mode", mode, "vertical | horizontal | bkk")->required();
  count->add_option("--spec", spec_path, "specialization file (bkk weights)");
  count->add_flag("--verify", verify, "cross-check against the oracle");

  auto* mv = app.add_subcommand("mv", "mixed volume by both engines");
  add_common(mv);

  auto* oracle = app.add_subcommand("oracle", "exact root count at a specialization");
  add_common(oracle);
  oracle->add_option("--spec", spec_path, "specialization file (default: random draw)");

  auto* prevariety = app.add_subcommand("prevariety", "intersect the row tropicalizations");
  add_common(prevariety);
  prevariety->add_option("--spec", spec_path, "specialization file")->required();

  auto* matroid = app.add_subcommand("matroid", "kernel matroid of the rewritten rows");
  add_common(matroid);

  auto* modify = app.add_subcommand("modify", "print the graph rewrite");
  add_common(modify, false);
  modify->add_option("--mode", mode, "vertical | horizontal")->required();

  CLI11_PARSE(app, argc, argv);

  std::string text = read_file(file);
  char* err = nullptr;
  grc_system* sys = grc_system_parse(text.c_str(), &err);
  if (!sys) {
    std::cerr << file << ": " << (err ? err : "parse error") << "\n";
    grc_string_free(err);
    return 2;
  }

  SpecArg spec;
  if (!spec_path.empty()) spec = load_spec(spec_path);

  char* out = nullptr;
  int status = 0;
  if (app.got_subcommand(count))
    status = grc_count(sys, mode.c_str(), seed, spec.spec, verify ? 1 : 0, &out, &err);
  else if (app.got_subcommand(mv))
    status = grc_mv(sys, seed, &out, &err);
  else if (app.got_subcommand(oracle))
    status = grc_oracle(sys, seed, spec.spec,
                        spec.t_value.empty() ? nullptr : spec.t_value.c_str(), &out, &err);
  else if (app.got_subcommand(prevariety))
    status = grc_prevariety(sys, spec.spec, seed, &out, &err);
  else if (app.got_subcommand(matroid))
    status = grc_matroid(sys, seed, &out, &err);
  else if (app.got_subcommand(modify))
    status = grc_modify(sys, mode.c_str(), &out, &err);

  int code = finish(status, out, err, file, json_only);
  grc_spec_free(spec.spec);
  grc_system_free(sys);
  return code;
}

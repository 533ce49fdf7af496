#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gkdv {

// Record of one CLI invocation: command, the fully resolved parameter set
// (flags > config file > defaults), artifact version, and output paths.
// Written as a sidecar `<output>.manifest.json`; the timestamp lives only
// here so primary outputs stay byte-identical across reruns.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;  // pre-rendered
  std::vector<std::string> outputs;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, int value);
  void set(const std::string& key, bool value);

  std::string to_json(bool with_timestamp = true) const;
  // One sidecar per output path.
  void write_sidecars() const;
};

}  // namespace gkdv

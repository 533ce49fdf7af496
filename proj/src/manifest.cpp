#include "gkdv/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "gkdv/json_io.hpp"
#include "gkdv/version.hpp"

namespace gkdv {
namespace {

std::string utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

void RunManifest::set(const std::string& key, const std::string& value) {
  params.emplace_back(key, JsonWriter::quote(value));
}
void RunManifest::set(const std::string& key, double value) {
  params.emplace_back(key, JsonWriter::number(value));
}
void RunManifest::set(const std::string& key, std::int64_t value) {
  params.emplace_back(key, std::to_string(value));
}
void RunManifest::set(const std::string& key, std::uint64_t value) {
  params.emplace_back(key, std::to_string(value));
}
void RunManifest::set(const std::string& key, int value) {
  params.emplace_back(key, std::to_string(value));
}
void RunManifest::set(const std::string& key, bool value) {
  params.emplace_back(key, value ? "true" : "false");
}

std::string RunManifest::to_json(bool with_timestamp) const {
  JsonObject params_obj;
  for (const auto& [key, rendered] : params) params_obj.raw(key, rendered);
  JsonArray outs;
  for (const std::string& o : outputs) outs.add(o);

  JsonObject obj;
  obj.add("command", command)
      .raw("params", params_obj.str())
      .add("artifact_version", kVersion)
      .raw("outputs", outs.str());
  if (with_timestamp) obj.add("timestamp", utc_now());
  return obj.str();
}

void RunManifest::write_sidecars() const {
  for (const std::string& path : outputs) {
    std::ofstream f(path + ".manifest.json");
    f << to_json() << "\n";
  }
}

}  // namespace gkdv

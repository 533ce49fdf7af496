#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace gkdv {

// Minimal JSON emitter for report files.  Keys are emitted in insertion
// order and doubles are printed with 17 significant digits, so a report is
// byte-identical across reruns with the same inputs.
class JsonWriter {
 public:
  static std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

  static std::string number(std::int64_t v) { return std::to_string(v); }
  static std::string number(std::uint64_t v) { return std::to_string(v); }

  static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    out += '"';
    return out;
  }
};

// Ordered object/array builders.  `raw` splices a pre-rendered JSON value.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double v) {
    return raw(key, JsonWriter::number(v));
  }
  JsonObject& add(const std::string& key, int v) {
    return raw(key, std::to_string(v));
  }
  JsonObject& add(const std::string& key, std::int64_t v) {
    return raw(key, std::to_string(v));
  }
  JsonObject& add(const std::string& key, std::uint64_t v) {
    return raw(key, std::to_string(v));
  }
  JsonObject& add(const std::string& key, bool v) {
    return raw(key, v ? "true" : "false");
  }
  JsonObject& add(const std::string& key, const std::string& v) {
    return raw(key, JsonWriter::quote(v));
  }
  JsonObject& add(const std::string& key, const char* v) {
    return raw(key, JsonWriter::quote(v));
  }
  JsonObject& raw(const std::string& key, const std::string& rendered) {
    items_.push_back(JsonWriter::quote(key) + ":" + rendered);
    return *this;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) out += ",";
      out += items_[i];
    }
    out += "}";
    return out;
  }

 private:
  std::vector<std::string> items_;
};

class JsonArray {
 public:
  JsonArray& add(double v) { return raw(JsonWriter::number(v)); }
  JsonArray& add(std::int64_t v) { return raw(std::to_string(v)); }
  JsonArray& add(std::uint64_t v) { return raw(std::to_string(v)); }
  JsonArray& add(int v) { return raw(std::to_string(v)); }
  JsonArray& add(const std::string& v) { return raw(JsonWriter::quote(v)); }
  JsonArray& raw(const std::string& rendered) {
    items_.push_back(rendered);
    return *this;
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) out += ",";
      out += items_[i];
    }
    out += "]";
    return out;
  }

 private:
  std::vector<std::string> items_;
};

}  // namespace gkdv

#include "bitext/log.hpp"

#include <iostream>
#include <mutex>
#include "json.hpp"

#include "bitext/types.hpp"

namespace bitext::log {

namespace {

struct State {
  std::mutex mutex;
  Format format = Format::text;
  Level min_level = Level::info;
  std::ostream* out = &std::cerr;
};

State& state() {
  static State s;
  return s;
}

const char* level_name(Level l) {
  switch (l) {
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
  }
  return "info";
}

}  // namespace

void set_format(Format format) {
  std::lock_guard lock(state().mutex);
  state().format = format;
}

Format parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  throw Error("unknown log format '" + std::string(name) + "' (expected text or json)");
}

void set_stream(std::ostream* out) {
  std::lock_guard lock(state().mutex);
  state().out = out;
}

void set_min_level(Level level) {
  std::lock_guard lock(state().mutex);
  state().min_level = level;
}

void write(Level level, std::string_view message, const Fields& fields) {
  State& s = state();
  std::lock_guard lock(s.mutex);
  if (level < s.min_level || !s.out) return;
  if (s.format == Format::json) {
    nlohmann::ordered_json j;
    j["level"] = level_name(level);
    j["msg"] = message;
    for (const auto& [k, v] : fields) j[k] = v;
    *s.out << j.dump() << '\n';
  } else {
    *s.out << level_name(level) << ": " << message;
    for (const auto& [k, v] : fields) *s.out << ' ' << k << '=' << v;
    *s.out << '\n';
  }
  s.out->flush();
}

}  // namespace bitext::log

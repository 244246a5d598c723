#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bitext::log {

enum class Format { text, json };
enum class Level { info, warn, error };

void set_format(Format format);
Format parse_format(std::string_view name);
/// Destination for messages (default std::cerr). Not owned.
void set_stream(std::ostream* out);
/// Messages below `level` are dropped.
void set_min_level(Level level);

using Fields = std::vector<std::pair<std::string, std::string>>;

/// Thread-safe; one line per call.
void write(Level level, std::string_view message, const Fields& fields = {});
inline void info(std::string_view m, const Fields& f = {}) { write(Level::info, m, f); }
inline void warn(std::string_view m, const Fields& f = {}) { write(Level::warn, m, f); }
inline void error(std::string_view m, const Fields& f = {}) { write(Level::error, m, f); }

}  // namespace bitext::log

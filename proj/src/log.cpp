#include "affexp/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace affexp::log {

namespace {
std::atomic<Level> g_level{Level::warn};
std::mutex g_mutex;

const char* name_of(Level level) {
  switch (level) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
    case Level::off: return "off";
  }
  return "info";
}
}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

std::optional<Level> parse_level(std::string_view name) {
  for (auto l : {Level::debug, Level::info, Level::warn, Level::error, Level::off}) {
    if (name == name_of(l)) return l;
  }
  return std::nullopt;
}

void write(Level lvl, std::string_view message, const nlohmann::json& fields) {
  if (lvl < g_level.load() || g_level.load() == Level::off) return;
  nlohmann::json line = nlohmann::json::object();
  line["level"] = name_of(lvl);
  line["msg"] = message;
  if (fields.is_object()) {
    for (const auto& [k, v] : fields.items()) line[k] = v;
  }
  const std::lock_guard lock(g_mutex);
  std::cerr << line.dump() << '\n';
}

}  // namespace affexp::log

#include "krank/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "krank/errors.hpp"
#include "krank/exact_core.hpp"
#include "krank/report.hpp"

namespace krank {

using nlohmann::json;

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ConfigError("bad integer '" + s + "' in range '" + whole + "'");
  return v;
}

}  // namespace

IntRange IntRange::parse(const std::string& text) {
  IntRange r;
  if (text.empty()) throw ConfigError("empty range");
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    if (a.empty() && b.empty()) throw ConfigError("range '..' has no bounds");
    if (!a.empty()) r.lo = parse_int(a, text);
    if (!b.empty()) r.hi = parse_int(b, text);
    if (r.lo && r.hi && *r.lo > *r.hi) throw ConfigError("range '" + text + "' is reversed");
    return r;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) r.list.push_back(parse_int(item, text));
  if (r.list.empty()) throw ConfigError("empty range");
  return r;
}

std::vector<std::int64_t> IntRange::values(std::int64_t default_lo, std::int64_t default_hi) const {
  if (!list.empty()) return list;
  const std::int64_t a = lo.value_or(default_lo), b = hi.value_or(default_hi);
  if (a > b) throw ConfigError("range " + str() + " is empty");
  if (b - a > 10'000'000) throw ConfigError("range " + str() + " is too long");
  std::vector<std::int64_t> out;
  for (std::int64_t v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::int64_t IntRange::first(std::int64_t default_lo) const {
  if (!list.empty()) return *std::min_element(list.begin(), list.end());
  return lo.value_or(default_lo);
}

std::int64_t IntRange::last(std::int64_t default_hi) const {
  if (!list.empty()) return *std::max_element(list.begin(), list.end());
  return hi.value_or(default_hi);
}

std::string IntRange::str() const {
  if (!list.empty()) {
    std::string s;
    for (std::size_t i = 0; i < list.size(); ++i) s += (i ? "," : "") + std::to_string(list[i]);
    return s;
  }
  if (empty()) return "";
  return (lo ? std::to_string(*lo) : "") + ".." + (hi ? std::to_string(*hi) : "");
}

void RunConfig::validate() const {
  try {
    truncation.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("truncation: ") + e.what());
  }
  if (ptable < 0 || ptable > PartitionTable::kMaxSize)
    throw ConfigError("ptable must be in [0, " + std::to_string(PartitionTable::kMaxSize) + "]");
  if (workers < 0 || workers > 1024) throw ConfigError("workers must be in [0, 1024]");
  if (formats.empty()) throw ConfigError("at least one output format is required");
  for (const auto& f : formats)
    if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown format '" + f + "'");
  if (!k.empty() && k.first(1) < 1) throw ConfigError("k must be >= 1");
  if (!n.empty() && n.first(0) < 0) throw ConfigError("n must be >= 0");
  if (!l.empty() && l.first(1) < 1) throw ConfigError("l must be >= 1");
}

RunConfig RunConfig::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"truncation", "ptable", "ranges", "workers", "out", "formats"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  RunConfig cfg;
  try {
    if (doc.contains("truncation")) {
      const auto& t = doc["truncation"];
      for (const auto& [key, _] : t.items())
        if (key != "p" && key != "h_max" && key != "bits") throw ConfigError("unknown truncation key '" + key + "'");
      cfg.truncation.p = t.value("p", cfg.truncation.p);
      cfg.truncation.h_max = t.value("h_max", cfg.truncation.h_max);
      cfg.truncation.bits = t.value("bits", cfg.truncation.bits);
    }
    cfg.ptable = doc.value("ptable", cfg.ptable);
    cfg.workers = doc.value("workers", cfg.workers);
    cfg.out_dir = doc.value("out", cfg.out_dir);
    if (doc.contains("formats")) cfg.formats = doc["formats"].get<std::set<std::string>>();
    if (doc.contains("ranges")) {
      for (const auto& [key, value] : doc["ranges"].items()) {
        const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        if (text.empty()) continue;
        const auto r = IntRange::parse(text);
        if (key == "k") cfg.k = r;
        else if (key == "n") cfg.n = r;
        else if (key == "m") cfg.m = r;
        else if (key == "l") cfg.l = r;
        else throw ConfigError("unknown range '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a wrong type: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string RunConfig::canonical() const {
  json doc;
  doc["truncation"] = {{"p", truncation.p}, {"h_max", truncation.h_max}, {"bits", truncation.bits}};
  doc["ptable"] = ptable;
  doc["ranges"] = {{"k", k.str()}, {"n", n.str()}, {"m", m.str()}, {"l", l.str()}};
  doc["formats"] = formats;
  // workers and out_dir do not change results
  return doc.dump();
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical()); }

}  // namespace krank

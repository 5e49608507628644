#include "krank/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "krank/errors.hpp"

namespace krank {

using nlohmann::json;

const char* kind_name(CellKind kind) {
  switch (kind) {
    case CellKind::kInteger: return "integer";
    case CellKind::kExact: return "exact";
    case CellKind::kFloat: return "float";
    case CellKind::kText: return "text";
  }
  return "text";
}

CellKind kind_from_name(const std::string& name) {
  if (name == "integer") return CellKind::kInteger;
  if (name == "exact") return CellKind::kExact;
  if (name == "float") return CellKind::kFloat;
  if (name == "text") return CellKind::kText;
  throw ConfigError("unknown column kind '" + name + "'");
}

std::string Cell::str() const {
  if (null) return {};
  switch (kind) {
    case CellKind::kInteger: return std::to_string(integer);
    case CellKind::kFloat: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", real);
      return buf;
    }
    default: return text;
  }
}

Cell Cell::parse(CellKind kind, const std::string& s) {
  if (s.empty() && kind != CellKind::kText) return none(kind);
  try {
    switch (kind) {
      case CellKind::kInteger: {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) break;
        return of(static_cast<std::int64_t>(v));
      }
      case CellKind::kExact: {
        BigInt v;
        if (v.set_str(s, 10) != 0) break;
        return Cell{CellKind::kExact, false, 0, 0.0, s};
      }
      case CellKind::kFloat: {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) break;
        return of(v);
      }
      case CellKind::kText: return of(s);
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("cannot parse '" + s + "' as " + kind_name(kind));
}

bool operator==(const Cell& a, const Cell& b) {
  if (a.kind != b.kind || a.null != b.null) return false;
  if (a.null) return true;
  switch (a.kind) {
    case CellKind::kInteger: return a.integer == b.integer;
    case CellKind::kFloat: return a.real == b.real || (a.real != a.real && b.real != b.real);
    default: return a.text == b.text;
  }
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != schema_.size())
    throw ConfigError("row has " + std::to_string(row.size()) + " cells, schema has " +
                      std::to_string(schema_.size()));
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i].kind != schema_[i].kind)
      throw ConfigError("cell " + std::to_string(i) + " kind mismatch in column " + schema_[i].name);
  rows_.push_back(std::move(row));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quote in CSV record");
  fields.push_back(std::move(cur));
  return fields;
}

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  out << "# table: " << name_ << "\r\n";
  out << "# command: " << provenance_.command << "\r\n";
  out << "# config_hash: " << provenance_.config_hash << "\r\n";
  out << "# version: " << provenance_.version << "\r\n";
  for (const auto& note : notes_) out << "# note: " << note << "\r\n";
  out << "# kinds: ";
  for (std::size_t i = 0; i < schema_.size(); ++i) out << (i ? "," : "") << kind_name(schema_[i].kind);
  out << "\r\n";
  for (std::size_t i = 0; i < schema_.size(); ++i) out << (i ? "," : "") << csv_escape(schema_[i].name);
  out << "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      // keep empty text distinct from null
      if (row[i].kind == CellKind::kText && !row[i].null && row[i].text.empty())
        out << "\"\"";
      else
        out << csv_escape(row[i].str());
    }
    out << "\r\n";
  }
  return out.str();
}

namespace {

// Splits CSV text into records, honouring quoted newlines.
std::vector<std::string> csv_records(const std::string& text) {
  std::vector<std::string> records;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '"') quoted = !quoted;
    if (!quoted && (c == '\n' || c == '\r')) {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      records.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) records.push_back(std::move(cur));
  return records;
}

bool take_prefix(const std::string& line, const std::string& prefix, std::string& rest) {
  if (line.rfind(prefix, 0) != 0) return false;
  rest = line.substr(prefix.size());
  return true;
}

}  // namespace

ResultTable ResultTable::from_csv(const std::string& text) {
  ResultTable table;
  std::vector<CellKind> kinds;
  bool have_header = false;
  for (const auto& record : csv_records(text)) {
    std::string rest;
    if (!have_header && record.rfind("#", 0) == 0) {
      if (take_prefix(record, "# table: ", rest)) table.name_ = rest;
      else if (take_prefix(record, "# command: ", rest)) table.provenance_.command = rest;
      else if (take_prefix(record, "# config_hash: ", rest)) table.provenance_.config_hash = rest;
      else if (take_prefix(record, "# version: ", rest)) table.provenance_.version = rest;
      else if (take_prefix(record, "# note: ", rest)) table.notes_.push_back(rest);
      else if (take_prefix(record, "# kinds: ", rest))
        for (const auto& k : csv_split(rest)) kinds.push_back(kind_from_name(k));
      continue;
    }
    if (!have_header) {
      const auto names = csv_split(record);
      if (names.size() != kinds.size()) throw ConfigError("CSV header does not match '# kinds' line");
      for (std::size_t i = 0; i < names.size(); ++i) table.schema_.push_back({names[i], kinds[i]});
      have_header = true;
      continue;
    }
    if (record.empty() && table.schema_.size() != 1) continue;
    const auto fields = csv_split(record);
    if (fields.size() != kinds.size()) throw ConfigError("CSV record has the wrong number of fields");
    std::vector<Cell> row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      // a bare empty field is null; a quoted "" is the empty string
      const bool quoted_empty = kinds[i] == CellKind::kText && fields[i].empty() &&
                                record.find("\"\"") != std::string::npos;
      if (kinds[i] == CellKind::kText && fields[i].empty() && !quoted_empty)
        row.push_back(Cell::none(CellKind::kText));
      else
        row.push_back(Cell::parse(kinds[i], fields[i]));
    }
    table.rows_.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("CSV has no header row");
  return table;
}

std::string ResultTable::to_json() const {
  json doc;
  doc["schema"] = json::array();
  for (const auto& col : schema_) doc["schema"].push_back({{"name", col.name}, {"kind", kind_name(col.kind)}});
  doc["provenance"] = {{"table", name_},
                       {"command", provenance_.command},
                       {"config_hash", provenance_.config_hash},
                       {"version", provenance_.version},
                       {"notes", notes_}};
  doc["rows"] = json::array();
  for (const auto& row : rows_) {
    json r = json::array();
    for (const auto& cell : row) {
      if (cell.null) {
        r.push_back(nullptr);
        continue;
      }
      switch (cell.kind) {
        case CellKind::kInteger: r.push_back(cell.integer); break;
        // floats as 17-digit strings so non-finite values survive and digits are fixed
        case CellKind::kFloat: r.push_back(cell.str()); break;
        default: r.push_back(cell.text); break;
      }
    }
    doc["rows"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

ResultTable ResultTable::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON table: ") + e.what());
  }
  ResultTable table;
  try {
    for (const auto& col : doc.at("schema"))
      table.schema_.push_back({col.at("name").get<std::string>(), kind_from_name(col.at("kind").get<std::string>())});
    const auto& prov = doc.at("provenance");
    table.name_ = prov.at("table").get<std::string>();
    table.provenance_.command = prov.at("command").get<std::string>();
    table.provenance_.config_hash = prov.at("config_hash").get<std::string>();
    table.provenance_.version = prov.at("version").get<std::string>();
    table.notes_ = prov.at("notes").get<std::vector<std::string>>();
    for (const auto& r : doc.at("rows")) {
      if (r.size() != table.schema_.size()) throw ConfigError("JSON row has the wrong number of cells");
      std::vector<Cell> row;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const CellKind kind = table.schema_[i].kind;
        if (r[i].is_null()) row.push_back(Cell::none(kind));
        else if (kind == CellKind::kInteger) row.push_back(Cell::of(r[i].get<std::int64_t>()));
        else row.push_back(Cell::parse(kind, r[i].get<std::string>()));
      }
      table.rows_.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON table: ") + e.what());
  }
  return table;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace krank

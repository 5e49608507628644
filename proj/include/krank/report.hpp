#pragma once

// Typed result tables with CSV / JSON serialization and a provenance header.
// Exact integers travel as decimal strings; floats as %.17g.

#include <cstdint>
#include <string>
#include <vector>

#include "krank/exact_core.hpp"

namespace krank {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class CellKind { kInteger, kExact, kFloat, kText };

const char* kind_name(CellKind kind);
CellKind kind_from_name(const std::string& name);

struct Cell {
  CellKind kind = CellKind::kText;
  bool null = true;
  std::int64_t integer = 0;
  double real = 0.0;
  std::string text;  // exact integers and text

  static Cell none(CellKind kind) { return Cell{kind, true, 0, 0.0, {}}; }
  static Cell of(std::int64_t v) { return Cell{CellKind::kInteger, false, v, 0.0, {}}; }
  static Cell of(const BigInt& v) { return Cell{CellKind::kExact, false, 0, 0.0, v.get_str()}; }
  static Cell of(double v) { return Cell{CellKind::kFloat, false, 0, v, {}}; }
  static Cell of(std::string v) { return Cell{CellKind::kText, false, 0, 0.0, std::move(v)}; }
  static Cell of(const char* v) { return of(std::string(v)); }

  /// Serialized form; empty for null.
  std::string str() const;
  static Cell parse(CellKind kind, const std::string& s);

  friend bool operator==(const Cell&, const Cell&);
};

struct Column {
  std::string name;
  CellKind kind = CellKind::kText;
  friend bool operator==(const Column&, const Column&) = default;
};

struct Provenance {
  std::string command;
  std::string config_hash;
  std::string version = kArtifactVersion;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

class ResultTable {
 public:
  ResultTable() = default;
  ResultTable(std::string name, std::vector<Column> schema) : name_(std::move(name)), schema_(std::move(schema)) {}

  const std::string& name() const { return name_; }
  const std::vector<Column>& schema() const { return schema_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::string>& notes() const { return notes_; }
  Provenance& provenance() { return provenance_; }
  const Provenance& provenance() const { return provenance_; }

  /// Throws ConfigError when the row does not match the schema.
  void add_row(std::vector<Cell> row);
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  std::string to_csv() const;
  std::string to_json() const;
  static ResultTable from_csv(const std::string& text);
  static ResultTable from_json(const std::string& text);

  friend bool operator==(const ResultTable&, const ResultTable&) = default;

 private:
  std::string name_;
  std::vector<Column> schema_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> notes_;
  Provenance provenance_;
};

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& data);

/// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);
/// Splits one CSV record (no embedded newlines handled here; see from_csv).
std::vector<std::string> csv_split(const std::string& line);

}  // namespace krank

#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spotcheck/featurize.hpp"

namespace spotcheck {

// All persisted floating-point values use shortest round-trip formatting,
// which carries at least the significant digits the file formats require.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline FeatureSchema schema_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("names"))
    throw ParseError("schema: expected object with 'kind' and 'names'");
  const std::string kind = j["kind"].get<std::string>();
  SchemaKind k;
  if (kind == "syscall")
    k = SchemaKind::SyscallTrace;
  else if (kind == "hprof")
    k = SchemaKind::HprofDump;
  else
    throw ParseError("schema: unknown kind '" + kind + "'");
  std::vector<std::string> names;
  for (const auto& n : j["names"]) names.push_back(n.get<std::string>());
  return FeatureSchema(k, std::move(names));
}

inline nlohmann::json schema_to_json(const FeatureSchema& schema) {
  nlohmann::json j;
  j["kind"] = schema.kind() == SchemaKind::SyscallTrace ? "syscall" : "hprof";
  j["names"] = schema.names();
  return j;
}

inline FeatureSchema read_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("schema: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError("schema: invalid JSON in " + path);
  return schema_from_json(j);
}

inline Label label_from_string(std::string_view s) {
  if (s == "benign") return Label::Benign;
  if (s == "malicious") return Label::Malicious;
  if (s == "unknown") return Label::Unknown;
  throw ParseError("dataset: unknown label '" + std::string(s) + "'");
}

inline Split split_from_string(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "val") return Split::Val;
  if (s == "test") return Split::Test;
  if (s == "-") return Split::None;
  throw ParseError("dataset: unknown split tag '" + std::string(s) + "'");
}

inline void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  out << "app_id,label,split";
  for (const auto& name : ds.schema.names()) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    const auto& row = ds.rows[i];
    out << row.app_id << ',' << to_string(row.label) << ','
        << to_string(ds.split_tags[i]);
    for (double v : row.values) out << ',' << format_double(v);
    out << '\n';
  }
}

inline void write_dataset_csv(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error("dataset: cannot write " + path);
  write_dataset_csv(out, ds);
}

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}
}  // namespace detail

inline Dataset read_dataset_csv(std::istream& in, SchemaKind kind) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("dataset: empty file", 1);
  auto header = detail::split_csv_line(line);
  if (header.size() < 5 || header[0] != "app_id" || header[1] != "label" ||
      header[2] != "split")
    throw ParseError("dataset: bad header", 1);

  Dataset ds;
  ds.schema = FeatureSchema(
      kind, std::vector<std::string>(header.begin() + 3, header.end()));

  long long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError("dataset: wrong cell count at line " + std::to_string(line_no),
                       line_no);
    FeatureVector row;
    row.app_id = cells[0];
    row.label = label_from_string(cells[1]);
    ds.split_tags.push_back(split_from_string(cells[2]));
    row.values.resize(ds.schema.dim());
    for (std::size_t i = 0; i < ds.schema.dim(); ++i) {
      const std::string& cell = cells[3 + i];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(),
                                       row.values[i]);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw ParseError("dataset: bad number '" + cell + "' at line " +
                             std::to_string(line_no),
                         line_no);
    }
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

inline Dataset read_dataset_csv(const std::string& path, SchemaKind kind) {
  std::ifstream in(path);
  if (!in) throw ParseError("dataset: cannot open " + path);
  return read_dataset_csv(in, kind);
}

}  // namespace spotcheck

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "spotcheck/error.hpp"
#include "spotcheck/prng.hpp"

namespace spotcheck {

enum class SchemaKind { SyscallTrace, HprofDump };
enum class Label { Benign, Malicious, Unknown };
enum class Split { Train, Val, Test, None };

inline const char* to_string(Label l) {
  switch (l) {
    case Label::Benign: return "benign";
    case Label::Malicious: return "malicious";
    default: return "unknown";
  }
}

inline const char* to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    default: return "-";
  }
}

// Ordered feature-name list defining vector layout. All vector layout in the
// library is schema-driven; the shipped 86/72 name lists are plain data files.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  FeatureSchema(SchemaKind kind, std::vector<std::string> names)
      : kind_(kind), names_(std::move(names)) {
    if (names_.size() < 2)
      throw ContractError("FeatureSchema: need at least 2 feature names");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty() || names_[i].find(',') != std::string::npos)
        throw ContractError("FeatureSchema: bad feature name '" + names_[i] + "'");
      if (!index_.emplace(names_[i], i).second)
        throw ContractError("FeatureSchema: duplicate feature name '" + names_[i] + "'");
    }
  }

  SchemaKind kind() const { return kind_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t dim() const { return names_.size(); }

  // Index of a feature name, or -1 when out of schema.
  std::ptrdiff_t index_of(const std::string& name) const {
    const auto it = index_.find(name);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  }

 private:
  SchemaKind kind_ = SchemaKind::SyscallTrace;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct RawHistogram {
  std::string app_id;
  Label label = Label::Unknown;
  std::map<std::string, std::uint64_t> counts;
};

// L1-scaled histogram: values >= 0, sum == 1.
struct FeatureVector {
  std::string app_id;
  Label label = Label::Unknown;
  std::vector<double> values;
};

struct Dataset {
  FeatureSchema schema;
  std::vector<FeatureVector> rows;
  std::vector<Split> split_tags;  // aligned with rows

  std::vector<std::size_t> indices_with(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (split_tags[i] == s) out.push_back(i);
    return out;
  }
};

struct SplitRatios {
  double train = 0.70;
  double val = 0.15;
  double test = 0.15;
};

struct TraceDiagnostics {
  std::uint64_t lines = 0;
  std::uint64_t events = 0;
  std::map<std::string, std::uint64_t> unknown_syscalls;
};

// One histogram per distinct app, sorted by app id, so the result depends
// only on the multiset of events. Events whose syscall is not in the schema
// go to the diagnostic tally and stay out of the histogram.
inline std::vector<RawHistogram> parse_trace_log(std::istream& in,
                                                 const FeatureSchema& schema,
                                                 TraceDiagnostics* diag = nullptr) {
  if (schema.kind() != SchemaKind::SyscallTrace)
    throw ContractError("parse_trace_log: schema kind must be syscall");
  std::map<std::string, RawHistogram> per_app;
  TraceDiagnostics local;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++local.lines;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("app") ||
        !rec.contains("pid") || !rec.contains("syscall") ||
        !rec["app"].is_string() || !rec["pid"].is_number_integer() ||
        !rec["syscall"].is_string())
      throw ParseError("trace log: malformed record at line " +
                           std::to_string(line_no),
                       line_no);
    ++local.events;
    const std::string app = rec["app"].get<std::string>();
    const std::string syscall = rec["syscall"].get<std::string>();
    auto& hist = per_app[app];
    hist.app_id = app;
    if (schema.index_of(syscall) >= 0)
      ++hist.counts[syscall];
    else
      ++local.unknown_syscalls[syscall];
  }
  std::vector<RawHistogram> out;
  out.reserve(per_app.size());
  for (auto& [app, hist] : per_app) out.push_back(std::move(hist));
  if (diag) *diag = std::move(local);
  return out;
}

// Attribute-ratio scaling: values[i] = counts[names[i]] / total over schema
// names. Exactly scale-invariant because every value is a correctly rounded
// quotient of exact integers.
inline FeatureVector l1_scale(const RawHistogram& h, const FeatureSchema& schema) {
  std::uint64_t total = 0;
  for (const auto& name : schema.names()) {
    const auto it = h.counts.find(name);
    if (it != h.counts.end()) total += it->second;
  }
  if (total == 0)
    throw DegenerateInputError("l1_scale: histogram for '" + h.app_id +
                               "' has no mass on schema features");
  FeatureVector v;
  v.app_id = h.app_id;
  v.label = h.label;
  v.values.resize(schema.dim(), 0.0);
  for (std::size_t i = 0; i < schema.dim(); ++i) {
    const auto it = h.counts.find(schema.names()[i]);
    if (it != h.counts.end())
      v.values[i] = static_cast<double>(it->second) / static_cast<double>(total);
  }
  return v;
}

// Benign rows are shuffled by the seeded PRNG and partitioned by the ratios
// (counts via floor, remainder to Train). Non-benign rows always land in
// Test: malware never reaches training or threshold calibration.
inline Dataset split_dataset(FeatureSchema schema, std::vector<FeatureVector> rows,
                             SplitRatios ratios, std::uint64_t seed) {
  if (std::fabs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9)
    throw ContractError("split_dataset: ratios must sum to 1");
  for (const auto& row : rows)
    if (row.values.size() != schema.dim())
      throw ContractError("split_dataset: row dimension does not match schema");

  std::vector<std::size_t> benign;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].label == Label::Benign) benign.push_back(i);
  if (benign.size() < 10)
    throw DegenerateInputError("split_dataset: need at least 10 benign rows, got " +
                               std::to_string(benign.size()));

  Prng prng(seed);
  shuffle(prng, benign);

  const double b = static_cast<double>(benign.size());
  const std::size_t n_val = static_cast<std::size_t>(std::floor(ratios.val * b + 1e-9));
  const std::size_t n_test = static_cast<std::size_t>(std::floor(ratios.test * b + 1e-9));
  const std::size_t n_train = benign.size() - n_val - n_test;  // remainder to Train

  Dataset ds;
  ds.schema = std::move(schema);
  ds.split_tags.assign(rows.size(), Split::Test);
  for (std::size_t k = 0; k < benign.size(); ++k) {
    Split tag = Split::Test;
    if (k < n_train)
      tag = Split::Train;
    else if (k < n_train + n_val)
      tag = Split::Val;
    ds.split_tags[benign[k]] = tag;
  }
  ds.rows = std::move(rows);
  return ds;
}

inline Dataset gen_synth(std::size_t schema_dim, std::size_t n_benign,
                         std::size_t n_anom, double delta, std::uint64_t seed) {
  if (schema_dim < 4) throw ContractError("gen_synth: schema_dim must be >= 4");
  if (!(delta >= 0.0 && delta <= 1.0))
    throw ContractError("gen_synth: delta must be in [0,1]");

  const std::size_t hot = (schema_dim + 7) / 8;  // ceil(dim/8)
  std::vector<double> conc_benign(schema_dim, 0.5);
  for (std::size_t i = 0; i < hot; ++i) conc_benign[i] = 10.0;
  const std::size_t rot =
      static_cast<std::size_t>(std::floor(delta * static_cast<double>(schema_dim) / 2.0));
  std::vector<double> conc_anom(schema_dim);
  for (std::size_t i = 0; i < schema_dim; ++i)
    conc_anom[(i + rot) % schema_dim] = conc_benign[i];

  std::vector<std::string> names(schema_dim);
  for (std::size_t i = 0; i < schema_dim; ++i) names[i] = "f" + std::to_string(i);
  FeatureSchema schema(SchemaKind::SyscallTrace, std::move(names));

  Prng prng(seed);
  auto draw_row = [&](const std::vector<double>& conc, std::string id, Label label) {
    FeatureVector v;
    v.app_id = std::move(id);
    v.label = label;
    v.values.resize(schema_dim);
    double total = 0.0;
    for (std::size_t i = 0; i < schema_dim; ++i) {
      v.values[i] = prng.gamma(conc[i]);
      total += v.values[i];
    }
    for (auto& x : v.values) x /= total;
    return v;
  };

  std::vector<FeatureVector> rows;
  rows.reserve(n_benign + n_anom);
  for (std::size_t i = 0; i < n_benign; ++i)
    rows.push_back(draw_row(conc_benign, "benign-" + std::to_string(i), Label::Benign));
  for (std::size_t i = 0; i < n_anom; ++i)
    rows.push_back(draw_row(conc_anom, "anom-" + std::to_string(i), Label::Malicious));

  return split_dataset(std::move(schema), std::move(rows), SplitRatios{}, seed);
}

}  // namespace spotcheck

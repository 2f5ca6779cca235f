#pragma once

// TispReport: the counters of one solve plus its decision, serialized to
// JSON (one object) or CSV (one row).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ksum/meter.hpp"
#include "ksum/types.hpp"

namespace ksum {

using Value = std::variant<std::int64_t, double>;

struct ReportItem {
  Value value;
  std::uint32_t list_id = 0;
  std::uint32_t index = 0;

  friend bool operator==(const ReportItem&, const ReportItem&) = default;
};

struct ReportWitness {
  std::vector<ReportItem> items;
  Value sum_check;

  friend bool operator==(const ReportWitness&, const ReportWitness&) = default;
};

struct TispReport {
  std::uint64_t n = 0;
  std::uint64_t g = 1;
  std::uint64_t h = 1;
  std::uint64_t comparisons = 0;
  std::uint64_t additions = 0;
  std::uint64_t input_reads = 0;
  std::uint64_t aux_words_peak = 0;
  double wall_time = 0.0;
  bool decision = false;
  std::optional<ReportWitness> witness;
  // Set when the solve aborted; serialized only as the CSV decision `failed`.
  std::optional<std::string> failure;
};

template <Numeric V>
ReportWitness to_report(const Witness<V>& w) {
  ReportWitness out{{}, Value{w.sum_check}};
  for (const auto& it : w.items) out.items.push_back(ReportItem{Value{it.value}, it.list_id, it.index});
  return out;
}

template <Numeric V>
TispReport make_report(std::uint64_t n, std::uint64_t g, std::uint64_t h, const Meter& meter,
                       double wall_time, const std::optional<Witness<V>>& witness) {
  TispReport r;
  r.n = n;
  r.g = g;
  r.h = h;
  r.comparisons = meter.comparisons();
  r.additions = meter.additions();
  r.input_reads = meter.input_reads();
  r.aux_words_peak = meter.aux_words_peak();
  r.wall_time = wall_time;
  r.decision = witness.has_value();
  if (witness) r.witness = to_report(*witness);
  return r;
}

void to_json(nlohmann::json& j, const TispReport& r);
void from_json(const nlohmann::json& j, TispReport& r);
std::string to_json_text(const TispReport& r);

std::string csv_header(bool with_wall_time = true);
std::string csv_row(const TispReport& r, bool with_wall_time = true);

}  // namespace ksum

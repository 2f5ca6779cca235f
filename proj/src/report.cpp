#include "ksum/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace ksum {

namespace {

nlohmann::json value_json(const Value& v) {
  return std::visit([](auto x) { return nlohmann::json(x); }, v);
}

Value json_value(const nlohmann::json& j) {
  if (j.is_number_integer()) return Value{j.get<std::int64_t>()};
  if (j.is_number()) return Value{j.get<double>()};
  throw ParseError("report value is not a number");
}

}  // namespace

void to_json(nlohmann::json& j, const TispReport& r) {
  nlohmann::json witness = nullptr;
  if (r.witness) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& it : r.witness->items) {
      items.push_back({{"value", value_json(it.value)}, {"list_id", it.list_id}, {"index", it.index}});
    }
    witness = {{"items", std::move(items)}, {"sum_check", value_json(r.witness->sum_check)}};
  }
  j = nlohmann::json{{"n", r.n},
                     {"g", r.g},
                     {"h", r.h},
                     {"comparisons", r.comparisons},
                     {"additions", r.additions},
                     {"input_reads", r.input_reads},
                     {"aux_words_peak", r.aux_words_peak},
                     {"wall_time", r.wall_time},
                     {"decision", r.decision},
                     {"witness", std::move(witness)}};
}

void from_json(const nlohmann::json& j, TispReport& r) {
  try {
    r.n = j.at("n").get<std::uint64_t>();
    r.g = j.at("g").get<std::uint64_t>();
    r.h = j.at("h").get<std::uint64_t>();
    r.comparisons = j.at("comparisons").get<std::uint64_t>();
    r.additions = j.at("additions").get<std::uint64_t>();
    r.input_reads = j.at("input_reads").get<std::uint64_t>();
    r.aux_words_peak = j.at("aux_words_peak").get<std::uint64_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.decision = j.at("decision").get<bool>();
    r.witness.reset();
    const auto& w = j.at("witness");
    if (!w.is_null()) {
      ReportWitness out{{}, json_value(w.at("sum_check"))};
      for (const auto& it : w.at("items")) {
        out.items.push_back(ReportItem{json_value(it.at("value")), it.at("list_id").get<std::uint32_t>(),
                                       it.at("index").get<std::uint32_t>()});
      }
      r.witness = std::move(out);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string to_json_text(const TispReport& r) { return nlohmann::json(r).dump(); }

std::string csv_header(bool with_wall_time) {
  return with_wall_time ? "n,g,h,comparisons,additions,input_reads,aux_words_peak,wall_time,decision"
                        : "n,g,h,comparisons,additions,input_reads,aux_words_peak,decision";
}

std::string csv_row(const TispReport& r, bool with_wall_time) {
  std::string row = std::to_string(r.n) + ',' + std::to_string(r.g) + ',' + std::to_string(r.h) +
                    ',' + std::to_string(r.comparisons) + ',' + std::to_string(r.additions) + ',' +
                    std::to_string(r.input_reads) + ',' + std::to_string(r.aux_words_peak) + ',';
  if (with_wall_time) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r.wall_time);
    row += buf;
    row += ',';
  }
  row += r.failure ? "failed" : (r.decision ? "true" : "false");
  return row;
}

}  // namespace ksum

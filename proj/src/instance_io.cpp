#include "ksum/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

namespace ksum {

template <Numeric V>
std::string format_value(V v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("cannot format value");
  return std::string(buf, ptr);
}

template <Numeric V>
V parse_value(std::string_view text) {
  V v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("bad " + std::string(to_string(mode_of<V>)) + " value '" + std::string(text) +
                     "'");
  }
  return v;
}

template <Numeric V>
void write_instance(std::ostream& out, const Instance<V>& inst) {
  out << inst.k() << ' ' << inst.n() << ' ' << to_string(inst.mode()) << ' '
      << (inst.single_list() ? 1 : 0) << ' ' << format_value(inst.target()) << '\n';
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const auto list = inst.list(i);
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (j > 0) out << ' ';
      out << format_value(list[j].value);
    }
    out << '\n';
  }
}

void write_instance(std::ostream& out, const AnyInstance& inst) {
  std::visit([&](const auto& x) { write_instance(out, x); }, inst);
}

std::string to_text(const AnyInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

namespace {

std::size_t parse_count(const std::string& token, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("bad ") + what + " '" + token + "'");
  }
  return v;
}

template <Numeric V>
Instance<V> build(const std::vector<std::string>& tokens, std::size_t k, std::size_t n,
                  bool single, const std::string& target_token) {
  const V target = parse_value<V>(target_token);
  std::vector<std::vector<V>> lists(k, std::vector<V>(n));
  std::size_t t = 5;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) lists[i][j] = parse_value<V>(tokens[t++]);
  }
  if (single) {
    for (std::size_t i = 1; i < k; ++i) {
      if (lists[i] != lists[0]) {
        throw ParseError("single-list file has differing blocks (block " + std::to_string(i) + ")");
      }
    }
    return Instance<V>::single_list(std::move(lists[0]), k, target);
  }
  return Instance<V>::multi_list(lists, target);
}

}  // namespace

AnyInstance read_instance(std::istream& in) {
  std::vector<std::string> tokens{std::istream_iterator<std::string>(in),
                                  std::istream_iterator<std::string>()};
  if (tokens.size() < 5) throw ParseError("missing header: expected `k n mode single_list target`");
  const std::size_t k = parse_count(tokens[0], "k");
  const std::size_t n = parse_count(tokens[1], "n");
  const Mode mode = parse_mode(tokens[2]);
  if (tokens[3] != "0" && tokens[3] != "1") {
    throw ParseError("single_list flag must be 0 or 1, got '" + tokens[3] + "'");
  }
  const bool single = tokens[3] == "1";
  if (k < 2) throw InvalidInstance("arity k must be at least 2");
  if (n == 0) throw InvalidInstance("lists must be non-empty");
  if (n > (tokens.size() - 5) / k || tokens.size() - 5 != k * n) {
    throw ParseError("expected " + std::to_string(k) + " blocks of " + std::to_string(n) +
                     " values, found " + std::to_string(tokens.size() - 5) + " values");
  }
  if (mode == Mode::integer) return build<std::int64_t>(tokens, k, n, single, tokens[4]);
  return build<double>(tokens, k, n, single, tokens[4]);
}

AnyInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance(in);
}

AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_instance(in);
}

void save_instance(const std::string& path, const AnyInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_instance(out, inst);
  if (!out) throw Error("write failed for '" + path + "'");
}

template std::string format_value<std::int64_t>(std::int64_t);
template std::string format_value<double>(double);
template std::int64_t parse_value<std::int64_t>(std::string_view);
template double parse_value<double>(std::string_view);
template void write_instance<std::int64_t>(std::ostream&, const Instance<std::int64_t>&);
template void write_instance<double>(std::ostream&, const Instance<double>&);

}  // namespace ksum

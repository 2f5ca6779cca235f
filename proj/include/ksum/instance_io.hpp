#pragma once

// Line-oriented instance files:
//
//   k n mode single_list target
//   v_0 v_1 ... v_{n-1}        (one line per list, k lines)
//
// mode is `int` or `real`, single_list is 1 or 0.  A single-list instance
// repeats its one sequence k times and the reader checks that the copies
// agree.  Numbers use the shortest round-trip decimal form.

#include <iosfwd>
#include <string>
#include <string_view>

#include "ksum/types.hpp"

namespace ksum {

template <Numeric V>
std::string format_value(V v);

template <Numeric V>
V parse_value(std::string_view text);

template <Numeric V>
void write_instance(std::ostream& out, const Instance<V>& inst);

void write_instance(std::ostream& out, const AnyInstance& inst);
std::string to_text(const AnyInstance& inst);

// Throws ParseError for malformed text and InvalidInstance for well-formed
// text describing an invalid instance.
AnyInstance read_instance(std::istream& in);
AnyInstance parse_instance(std::string_view text);

AnyInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const AnyInstance& inst);

}  // namespace ksum

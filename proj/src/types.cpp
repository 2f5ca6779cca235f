#include "ksum/types.hpp"

#include <string>

namespace ksum {

std::string_view to_string(Mode mode) { return mode == Mode::integer ? "int" : "real"; }

Mode parse_mode(std::string_view text) {
  if (text == "int") return Mode::integer;
  if (text == "real") return Mode::real;
  throw ParseError("unknown mode '" + std::string(text) + "' (expected int or real)");
}

}  // namespace ksum

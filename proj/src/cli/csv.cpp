#include "kicked_top/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace kt::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format(long long value) { return std::to_string(value); }

void Writer::comment(std::string_view key, std::string_view value) {
  text_ += "# ";
  text_ += key;
  text_ += '=';
  text_ += value;
  text_ += '\n';
}

void Writer::comment(std::string_view text) {
  text_ += "# ";
  text_ += text;
  text_ += '\n';
}

void Writer::header(std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) {
    if (!first) text_ += ',';
    text_ += c;
    first = false;
  }
  text_ += '\n';
}

void Writer::append(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

}  // namespace kt::csv

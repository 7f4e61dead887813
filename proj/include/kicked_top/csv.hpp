#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kt::csv {

/// Shortest-round-trip-safe 17 significant digit rendering, locale independent.
std::string format(double value);
std::string format(long long value);
inline std::string format(int value) { return format(static_cast<long long>(value)); }
inline std::string format(std::string_view value) { return std::string(value); }
inline std::string format(const char* value) { return std::string(value); }
inline std::string format(const std::string& value) { return value; }

class Writer {
 public:
  void comment(std::string_view key, std::string_view value);
  void comment(std::string_view text);
  void header(std::initializer_list<std::string_view> columns);

  template <class... Ts>
  void row(const Ts&... cells) {
    std::vector<std::string> parts{format(cells)...};
    append(parts);
  }

  const std::string& str() const { return text_; }

 private:
  void append(const std::vector<std::string>& cells);
  std::string text_;
};

}  // namespace kt::csv

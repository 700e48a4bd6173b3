#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hatepol::csv {

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and newlines.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Throws ParseError on an
  // unterminated quoted field.
  std::optional<std::vector<std::string>> next();

  // Line on which the most recently returned record started (1-based).
  std::size_t record_line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

std::string quote(std::string_view field);
std::string format_real(double value);

}  // namespace hatepol::csv

// Copyright 2026 The CircuGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace circugraph::kg {

// Exact base-10 decimal without exponent. Stored as a normalized digit
// string so comparison never goes through binary floating point.
class Decimal {
 public:
  Decimal() = default;

  // Accepts [+-]?digits[.digits] and [+-]?.digits; returns nullopt otherwise.
  static std::optional<Decimal> parse(std::string_view text);

  // value * 10^-scale, e.g. from_scaled(8826959, 9) == 0.008826959.
  static Decimal from_scaled(std::int64_t value, int scale);

  // Shortest exact form: no leading zeros, no trailing fractional zeros.
  std::string canonical() const;

  // Fixed number of fractional digits, truncating never, padding with zeros.
  // Returns canonical() when the value has more digits than requested.
  std::string fixed(int fractional_digits) const;

  double to_double() const;
  bool negative() const { return negative_; }
  bool is_zero() const { return integer_ == "0" && fraction_.empty(); }

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) = default;

 private:
  bool negative_ = false;
  std::string integer_ = "0";  // no leading zeros
  std::string fraction_;       // no trailing zeros
};

}  // namespace circugraph::kg

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

#include "kg/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace circugraph::kg {

namespace {

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::strong_ordering compare_magnitude(const std::string& ai, const std::string& af,
                                       const std::string& bi, const std::string& bf) {
  if (ai.size() != bi.size()) return ai.size() <=> bi.size();
  if (int c = ai.compare(bi); c != 0) return c <=> 0;
  const std::size_t n = std::max(af.size(), bf.size());
  for (std::size_t i = 0; i < n; ++i) {
    const char x = i < af.size() ? af[i] : '0';
    const char y = i < bf.size() ? bf[i] : '0';
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Decimal d;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    d.negative_ = text[0] == '-';
    pos = 1;
  }
  std::string_view body = text.substr(pos);
  const auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!all_digits(int_part) || !all_digits(frac_part)) return std::nullopt;
  if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) return std::nullopt;

  const auto first_nonzero = int_part.find_first_not_of('0');
  d.integer_ = first_nonzero == std::string_view::npos ? "0" : std::string(int_part.substr(first_nonzero));
  const auto last_nonzero = frac_part.find_last_not_of('0');
  d.fraction_ = last_nonzero == std::string_view::npos ? "" : std::string(frac_part.substr(0, last_nonzero + 1));
  if (d.is_zero()) d.negative_ = false;
  return d;
}

Decimal Decimal::from_scaled(std::int64_t value, int scale) {
  const bool neg = value < 0;
  // Work on the unsigned magnitude so INT64_MIN is representable.
  std::uint64_t mag = neg ? ~static_cast<std::uint64_t>(value) + 1 : static_cast<std::uint64_t>(value);
  std::string digits = std::to_string(mag);
  if (scale > 0) {
    if (static_cast<int>(digits.size()) <= scale) digits.insert(0, scale - digits.size() + 1, '0');
    digits.insert(digits.size() - scale, ".");
  } else if (scale < 0) {
    digits.append(static_cast<std::size_t>(-scale), '0');
  }
  return *parse((neg ? "-" : "") + digits);
}

std::string Decimal::canonical() const {
  std::string out = negative_ ? "-" : "";
  out += integer_;
  if (!fraction_.empty()) out += "." + fraction_;
  return out;
}

std::string Decimal::fixed(int fractional_digits) const {
  if (static_cast<int>(fraction_.size()) > fractional_digits) return canonical();
  std::string out = negative_ ? "-" : "";
  out += integer_;
  if (fractional_digits > 0) {
    out += "." + fraction_;
    out.append(fractional_digits - fraction_.size(), '0');
  }
  return out;
}

double Decimal::to_double() const { return std::strtod(canonical().c_str(), nullptr); }

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  if (a.negative_ != b.negative_) return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
  auto mag = compare_magnitude(a.integer_, a.fraction_, b.integer_, b.fraction_);
  if (a.negative_) return 0 <=> mag;
  return mag;
}

}  // namespace circugraph::kg

#include "htk/rational.hpp"

namespace htk {

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_pq(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rat> rat_parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  BigInt num = 0, den = 1;
  bool digits = false;
  for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
    num = num * 10 + (s[i] - '0');
    digits = true;
  }
  if (!digits) return std::nullopt;
  if (i < s.size() && s[i] == '/') {
    ++i;
    BigInt d = 0;
    bool ddigits = false;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
      d = d * 10 + (s[i] - '0');
      ddigits = true;
    }
    if (!ddigits || i != s.size() || d == 0) return std::nullopt;
    den = d;
  } else if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
      num = num * 10 + (s[i] - '0');
      den *= 10;
    }
    if (i != s.size()) return std::nullopt;
  } else if (i != s.size()) {
    return std::nullopt;
  }
  Rat r(num, den);
  return neg ? -r : r;
}

}  // namespace htk

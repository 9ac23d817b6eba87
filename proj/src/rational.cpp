#include "stablematch/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace stablematch {

std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += '/';
    s += denominator(q).str();
  }
  return s;
}

std::string to_string(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += to_string(v[i]);
  }
  s += ')';
  return s;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto fail = [&] { throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'"); };

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    BigInt p{std::string(num)};
    BigInt q{std::string(den)};
    if (q == 0) fail();
    value = Rational(p, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    // Exact decimal: "1.25" -> 125/100. Never routed through floating point.
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) fail();
    BigInt p = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt scale = 1;
    for (char c : frac) {
      p = p * 10 + (c - '0');
      scale *= 10;
    }
    value = Rational(p, scale);
  } else {
    if (!all_digits(s)) fail();
    value = Rational(BigInt{std::string(s)});
  }
  return negative ? Rational(-value) : value;
}

}  // namespace stablematch

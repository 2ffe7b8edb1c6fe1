#include "vorospace/rational.hpp"

#include <cctype>
#include <charconv>

namespace vw {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::optional<mpz_class> parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  mpz_class v(std::string(s), 10);
  return negative ? mpz_class(-v) : v;
}

std::optional<Rational> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    if (exp_text.empty()) return std::nullopt;
    const char* first = exp_text.data();
    const char* last = first + exp_text.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (exponent > 4096 || exponent < -4096) return std::nullopt;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
  if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational value = scale >= 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(text.substr(0, slash));
    auto den = parse_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    Rational r(*num, *den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

}  // namespace vw

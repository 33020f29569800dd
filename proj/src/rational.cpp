#include "reflecto/rational.hpp"

#include <cctype>

#include "reflecto/errors.hpp"

namespace reflecto {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ParseError("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const { return value_.get_str(10); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rat_parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  BigInt num(std::string(num_text), 10);
  BigInt den(std::string(den_text), 10);
  if (den == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

RatVector parse_rational_list(std::string_view csv) {
  RatVector out;
  std::size_t start = 0;
  while (true) {
    const auto comma = csv.find(',', start);
    std::string_view item = csv.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(rat_parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> to_strings(const RatVector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

}  // namespace reflecto

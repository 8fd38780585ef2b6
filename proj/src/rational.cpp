#include "radolab/rational.hpp"

#include "radolab/error.hpp"

#include <algorithm>
#include <cctype>

namespace radolab {

Integer floor(const Rational& q) {
  Integer num = numerator(q);
  Integer den = denominator(q);
  Integer quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw Error(Errc::bad_rational, "not an exact rational literal: '" + std::string(text) + "'");
  }
  Integer num{std::string(num_text)};
  Integer den{std::string(den_text)};
  if (den == 0) throw Error(Errc::bad_rational, "zero denominator: '" + std::string(text) + "'");
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.str(); }

Vec make_vec(std::initializer_list<Rational> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) v(i++) = c;
  return v;
}

Vec parse_vec(const std::vector<std::string>& coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_rational(coords[i]);
  return v;
}

std::vector<std::string> to_strings(const Vec& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v(i));
  }
  return s + ")";
}

std::strong_ordering lex_compare(const Vec& a, const Vec& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return std::strong_ordering::less;
    if (b(i) < a(i)) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

void require_same_dim(Eigen::Index expected, Eigen::Index actual, std::string_view what) {
  if (expected != actual) {
    throw Error(Errc::dimension_mismatch, std::string(what) + ": expected dimension " +
                                              std::to_string(expected) + ", got " +
                                              std::to_string(actual));
  }
}

}  // namespace radolab

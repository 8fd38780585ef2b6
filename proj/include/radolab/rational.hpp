#pragma once

// Exact scalar and dense vector types. Every geometric quantity in the
// library is a GMP rational; Eigen supplies the dense containers.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace radolab {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VectorX<Rational>;
using Mat = MatrixX<Rational>;

Integer floor(const Rational& q);
/// q - floor(q), always in [0, 1).
Rational frac(const Rational& q);
Rational abs(const Rational& q);

/// Parses "p", "-p" or "p/q". Decimal points, exponents and whitespace are
/// rejected with Errc::bad_rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Vec make_vec(std::initializer_list<Rational> coords);
Vec parse_vec(const std::vector<std::string>& coords);
std::vector<std::string> to_strings(const Vec& v);
std::string to_string(const Vec& v);

/// Lexicographic three-way comparison of equal-length vectors.
std::strong_ordering lex_compare(const Vec& a, const Vec& b);

struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const { return lex_compare(a, b) < 0; }
};

/// Throws Errc::dimension_mismatch unless the sizes agree.
void require_same_dim(Eigen::Index expected, Eigen::Index actual, std::string_view what);

}  // namespace radolab

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace exploded {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition of an operation was violated by its input.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public InvalidArgument {
 public:
  explicit DimensionMismatch(const std::string& what) : InvalidArgument(what) {}
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

// Scalar helpers shared by builtin integers and cpp_int.  Every lattice
// routine is written against these so the same code runs on both.

template <class Int>
Int abs_value(const Int& a) {
  return a < 0 ? Int(-a) : a;
}

template <class Int>
Int gcd_value(Int a, Int b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// Returns (g, s, t) with g = s*a + t*b and g = gcd(a, b) >= 0.
template <class Int>
std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

/// Floor division; b must be nonzero.
template <class Int>
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

inline Integer lcm_value(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(Integer(a / gcd_value(a, b) * b));
}

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

template <class T>
std::string to_string(const std::vector<T>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + ")";
}

inline Integer parse_integer(const std::string& text) {
  if (text.empty()) throw FormatError("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw FormatError("bad integer literal '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw FormatError("bad integer literal '" + text + "'");
  }
  Integer v(text[0] == '+' ? text.substr(1) : text);
  return v;
}

inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw FormatError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

inline RationalVector to_rational(const IntegerVector& v) {
  return RationalVector(v.begin(), v.end());
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors of different length");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const IntegerVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors of different length");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += Rational(a[i]) * b[i];
  }
  return s;
}

inline Integer content(const IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd_value(g, x);
  return g;
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector.  Returns the scale factor used.  The zero
/// vector maps to itself with factor 1.
inline std::pair<IntegerVector, Rational> primitive_scaling(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    if (x != 0) l = lcm_value(l, denominator(x));
  }
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i] * l);
  Integer g = content(out);
  if (g == 0) return {out, Rational(1)};
  for (auto& x : out) x /= g;
  return {out, Rational(l, g)};
}

}  // namespace exploded

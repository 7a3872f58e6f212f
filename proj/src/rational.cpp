#include "toric/rational.hpp"

#include "toric/errors.hpp"

#include <cctype>
#include <numeric>
#include <utility>

namespace toric {

namespace {

BigInt parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw ToricError(ErrorKind::ParseError,
                     "expected digits in '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ToricError(ErrorKind::ParseError,
                       "bad character in number '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

BigInt pow10(std::size_t k) {
  BigInt p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.size() > 6) {
      throw ToricError(ErrorKind::ParseError,
                       "exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = static_cast<long>(parse_digits(exp_text, whole));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw ToricError(ErrorKind::ParseError,
                     "empty number '" + std::string(whole) + "'");
  }
  BigInt numerator = int_part.empty() ? BigInt(0) : parse_digits(int_part, whole);
  if (!frac_part.empty()) {
    numerator = numerator * pow10(frac_part.size()) + parse_digits(frac_part, whole);
  }
  exponent -= static_cast<long>(frac_part.size());
  Rational q(numerator);
  if (exponent > 0) q *= Rational(pow10(static_cast<std::size_t>(exponent)));
  if (exponent < 0) q /= Rational(pow10(static_cast<std::size_t>(-exponent)));
  return negative ? Rational(-q) : q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == 0) {
      throw ToricError(ErrorKind::ParseError,
                       "zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return q.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      Rational factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) { return row_reduce(m).size(); }

bool solve_exact(RationalMatrix m, RationalVector b, RationalVector& x) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
  auto pivots = row_reduce(m);
  if (pivots.size() != n || (n > 0 && pivots.back() >= n)) return false;
  x.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return true;
}

std::vector<RationalVector> nullspace(RationalMatrix m) {
  std::vector<RationalVector> basis;
  if (m.empty()) return basis;
  const std::size_t cols = m.front().size();
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto a : v) g = std::gcd(g, a);
  return g;
}

}  // namespace toric

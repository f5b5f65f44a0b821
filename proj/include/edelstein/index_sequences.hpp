#pragma once

// Arbitrary-precision iteration indices: factorials n!, the classical
// suborbit indices e_n = (1/2) sum_{m=1}^{n} (n 2^m)!, the much smaller
// s_n = 1 + sum_{m=1}^{n-1} ceil(m/2) (m+2)!, and exact fractional parts
// {N / k!}. Everything here is pure integer arithmetic; repeated calls are
// bit-identical.

#include <cstdint>
#include <cmath>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace edelstein {

/// Arbitrary-precision nonnegative integer iteration count.
class BigIndex {
 public:
  BigIndex() : v_(0) {}
  BigIndex(unsigned long n) : v_(n) {}
  BigIndex(unsigned n) : v_(static_cast<unsigned long>(n)) {}
  BigIndex(int n) : v_(n) {
    if (n < 0) throw std::invalid_argument("BigIndex: value must be nonnegative");
  }
  BigIndex(long n) : v_(n) {
    if (n < 0) throw std::invalid_argument("BigIndex: value must be nonnegative");
  }
  explicit BigIndex(mpz_class v) : v_(std::move(v)) {
    if (v_ < 0) throw std::invalid_argument("BigIndex: value must be nonnegative");
  }

  static BigIndex from_decimal(const std::string& text) {
    mpz_class v;
    if (v.set_str(text, 10) != 0 || v < 0)
      throw std::invalid_argument("BigIndex: not a nonnegative decimal integer: " + text);
    return BigIndex(std::move(v));
  }

  const mpz_class& raw() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_even() const { return mpz_even_p(v_.get_mpz_t()) != 0; }

  /// Exact decimal representation.
  std::string str() const { return v_.get_str(); }

  /// Number of decimal digits (exact conversion, not a logarithm estimate).
  std::size_t digits10() const { return str().size(); }

  std::size_t bit_length() const { return mpz_sizeinbase(v_.get_mpz_t(), 2); }

  friend BigIndex operator+(const BigIndex& a, const BigIndex& b) { return BigIndex(mpz_class(a.v_ + b.v_)); }
  friend BigIndex operator*(const BigIndex& a, const BigIndex& b) { return BigIndex(mpz_class(a.v_ * b.v_)); }
  friend BigIndex operator*(const BigIndex& a, unsigned long b) { return BigIndex(mpz_class(a.v_ * b)); }
  friend BigIndex operator%(const BigIndex& a, const BigIndex& b) { return BigIndex(mpz_class(a.v_ % b.v_)); }
  friend BigIndex operator-(const BigIndex& a, const BigIndex& b) {
    if (a.v_ < b.v_) throw std::invalid_argument("BigIndex: subtraction would go negative");
    return BigIndex(mpz_class(a.v_ - b.v_));
  }

  friend bool operator==(const BigIndex& a, const BigIndex& b) { return a.v_ == b.v_; }
  friend bool operator!=(const BigIndex& a, const BigIndex& b) { return a.v_ != b.v_; }
  friend bool operator<(const BigIndex& a, const BigIndex& b) { return a.v_ < b.v_; }
  friend bool operator<=(const BigIndex& a, const BigIndex& b) { return a.v_ <= b.v_; }
  friend bool operator>(const BigIndex& a, const BigIndex& b) { return a.v_ > b.v_; }
  friend bool operator>=(const BigIndex& a, const BigIndex& b) { return a.v_ >= b.v_; }

 private:
  mpz_class v_;
};

namespace detail {
// Guard for factorial arguments; beyond this the result would not fit in
// memory budgets appropriate for this tool (4e6! has ~2.4e7 digits).
inline constexpr unsigned long kMaxFactorialArg = 4'000'000;
}  // namespace detail

/// Exact n!. Memoized behind an internal mutex; memoization never changes
/// results. The cache is a deque so returned references stay valid while
/// later entries are appended.
inline const BigIndex& factorial(unsigned long n) {
  if (n > detail::kMaxFactorialArg)
    throw std::invalid_argument("factorial: argument exceeds supported range");
  static std::mutex mu;
  static std::deque<BigIndex> cache{BigIndex(1ul)};  // cache[i] = i!
  std::scoped_lock lock(mu);
  while (cache.size() <= n) {
    cache.push_back(BigIndex(mpz_class(cache.back().raw() * static_cast<unsigned long>(cache.size()))));
  }
  return cache[n];
}

/// e_n = (1/2) sum_{m=1}^{n} (n 2^m)!. The sum is always even (every term
/// with argument >= 2 is), so the halving is exact; this is asserted.
inline BigIndex edelstein_index(unsigned n) {
  if (n < 1) throw std::invalid_argument("edelstein_index: n must be >= 1");
  mpz_class sum = 0;
  for (unsigned m = 1; m <= n; ++m) {
    const unsigned long shifted = static_cast<unsigned long>(n) << m;
    if ((shifted >> m) != n || shifted > detail::kMaxFactorialArg)
      throw std::invalid_argument("edelstein_index: term factorial argument exceeds supported range");
    sum += factorial(shifted).raw();
  }
  if (mpz_even_p(sum.get_mpz_t()) == 0)
    throw std::logic_error("edelstein_index: term sum is odd");  // parity lemma violated
  sum /= 2;
  return BigIndex(std::move(sum));
}

/// s_n = 1 + sum_{m=1}^{n-1} ceil(m/2) (m+2)!. Also checks the bound
/// s_n < (n+2)!/2 that the blow-up analysis relies on.
inline BigIndex s_index(unsigned n) {
  if (n < 1) throw std::invalid_argument("s_index: n must be >= 1");
  mpz_class sum = 1;
  for (unsigned m = 1; m + 1 <= n; ++m) {
    sum += mpz_class((m + 1) / 2) * factorial(m + 2).raw();
  }
  if (!(2 * sum < factorial(n + 2).raw()))
    throw std::logic_error("s_index: bound s_n < (n+2)!/2 violated");
  return BigIndex(std::move(sum));
}

/// The commonly tabulated variant of the s sequence, starting 7, 31, 271,
/// ...; equals s_index(n + 1).
inline BigIndex s_index_tabulated(unsigned n) { return s_index(n + 1); }

/// Exact fractional part {N / k!}: numerator = N mod k!, denominator = k!.
/// float_value is long double so the conversion error stays <= 2^-64
/// absolute (the numerator is scaled by 2^64, floor-divided, and the
/// resulting 64-bit integer converts exactly).
struct FractionalPart {
  BigIndex numerator;
  BigIndex denominator;
  long double float_value = 0.0L;
};

inline FractionalPart fractional_part(const BigIndex& N, unsigned k) {
  if (k < 1) throw std::invalid_argument("fractional_part: k must be >= 1");
  BigIndex den = factorial(k);
  BigIndex num = N % den;
  mpz_class scaled = num.raw() << 64;
  mpz_class q = scaled / den.raw();  // < 2^64, fits an unsigned 64-bit value
  const unsigned long bits = mpz_get_ui(q.get_mpz_t());
  const long double value = std::ldexp(static_cast<long double>(bits), -64);
  return FractionalPart{std::move(num), std::move(den), value};
}

}  // namespace edelstein

#pragma once

// Exact rational scalar backed by GMP's mpq_class.
//
// Every value is kept canonical: denominator > 0 and gcd(num, den) = 1.
// mpq_class maintains this for arithmetic; the string constructor does not,
// so parse() canonicalizes explicitly.  All predicates in this library build
// on exact sign computations of these scalars; there is no floating point.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace chroma {

class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, integers are rationals
  Rat(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rat(const mpz_class& n) : v_(n) {}

  // Accepts "p/q" or "p" with an optional leading sign, ASCII digits only.
  static Rat parse(const std::string& s) {
    if (!looks_like_rational(s))
      throw std::invalid_argument("Rat: malformed rational '" + s + "'");
    mpq_class v;
    if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("Rat: malformed rational '" + s + "'");
    if (v.get_den() == 0)
      throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rat(v);
  }

  std::string str() const { return v_.get_str(); }

  int sgn() const { return ::sgn(v_); }
  bool is_zero() const { return v_ == 0; }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  double to_double() const { return v_.get_d(); }  // diagnostics only

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

 private:
  static bool looks_like_rational(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
    return digits > 0 && i == s.size();
  }

  mpq_class v_;
};

inline Rat abs(const Rat& a) { return a.sgn() < 0 ? -a : a; }

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace chroma

#include <ostream>

namespace chroma {
inline std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.str();
}
}  // namespace chroma

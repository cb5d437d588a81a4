#pragma once

// Univariate polynomials over the rationals and Sturm-sequence real root
// isolation.
//
// The Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k) counts
// distinct real roots in a half-open interval (a, b] as V(a) - V(b), where
// V is the number of sign variations along the chain.  This holds for
// non-squarefree p as well: the chain then ends in gcd(p, p'), and dividing
// through by it changes no variation count at non-roots of p.  Root
// isolation bisects until each interval holds exactly one root, picking
// split points where p does not vanish.  Signs of a second polynomial at an
// isolated algebraic root are decided by refining the isolating interval
// until the second polynomial has no root in it, which makes its sign
// constant there.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chroma/rational.hpp"

namespace chroma {

class QPoly {
 public:
  QPoly() = default;  // zero polynomial
  explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  QPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static QPoly constant(const Rat& a) { return QPoly(std::vector<Rat>{a}); }

  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& operator[](std::size_t i) const { return c_[i]; }

  Rat eval(const Rat& x) const {
    Rat v;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  QPoly derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(long(i)) * c_[i];
    return QPoly(std::move(d));
  }

  QPoly& operator+=(const QPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  QPoly& operator*=(const Rat& s) {
    if (s.is_zero()) { c_.clear(); return *this; }
    for (Rat& x : c_) x *= s;
    return *this;
  }

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const Rat& s, QPoly a) { return a *= s; }
  friend QPoly operator-(QPoly a) {
    for (Rat& x : a.c_) x = -x;
    return a;
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // Euclidean division: returns (quotient, remainder).
  friend std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("QPoly: division by zero");
    QPoly r = a;
    std::vector<Rat> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1
                                                 : 1);
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = std::size_t(r.degree() - b.degree());
      Rat f = r.c_.back() / b.c_.back();
      q[shift] += f;
      for (std::size_t i = 0; i < b.c_.size(); ++i)
        r.c_[i + shift] -= f * b.c_[i];
      r.trim();
    }
    return {QPoly(std::move(q)), r};
  }

  // Positive scalar normalization: divides by the content so coefficients
  // stay small along Sturm chains.  Signs are unchanged.
  QPoly content_normalized() const {
    if (is_zero()) return QPoly();
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const Rat& x : c_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.den().get_mpz_t());
    }
    mpq_class f(den_lcm, num_gcd);  // multiply through: positive scalar
    f.canonicalize();
    QPoly out = *this;
    out *= Rat(f);
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rat> c_;  // lowest degree first
};

inline QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r).content_normalized();
  }
  return a;
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("sturm: identically zero");
  std::vector<QPoly> chain;
  chain.push_back(p.content_normalized());
  QPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.content_normalized());
  for (;;) {
    QPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back((-r).content_normalized());
  }
  return chain;
}

inline int sign_variations(const std::vector<QPoly>& chain, const Rat& x) {
  int vars = 0, last = 0;
  for (const QPoly& p : chain) {
    int s = p.eval(x).sgn();
    if (s == 0) continue;
    if (last != 0 && s != last) ++vars;
    last = s;
  }
  return vars;
}

// Number of distinct real roots in the half-open interval (lo, hi].
inline int sturm_count(const std::vector<QPoly>& chain, const Rat& lo,
                       const Rat& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

struct RootInterval {
  Rat lo, hi;  // open interval (lo, hi); endpoints are never roots
  Rat mid() const { return (lo + hi) / Rat(2); }
  Rat width() const { return hi - lo; }
};

namespace detail {

// A split point c in (lo, hi) with p(c) != 0.  Tries deg(p)+1 equally
// spaced candidates; p has at most deg(p) roots, so one of them works.
inline Rat nonroot_split(const QPoly& p, const Rat& lo, const Rat& hi) {
  long n = long(p.degree()) + 2;
  for (long k = 1; k < n; ++k) {
    Rat c = lo + Rat(k, n) * (hi - lo);
    if (!p.eval(c).is_zero()) return c;
  }
  throw std::logic_error("sturm: no split point found");  // unreachable
}

inline void isolate_rec(const QPoly& p, const std::vector<QPoly>& chain,
                        const Rat& lo, const Rat& hi,
                        std::vector<RootInterval>& out) {
  int n = sturm_count(chain, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rat c = nonroot_split(p, lo, hi);
  isolate_rec(p, chain, lo, c, out);
  isolate_rec(p, chain, c, hi, out);
}

}  // namespace detail

// Disjoint open intervals, each containing exactly one real root of p in
// (lo, hi), jointly covering all of them.  Requires p(lo) != 0 != p(hi).
inline std::vector<RootInterval> sturm_isolate(const QPoly& p, const Rat& lo,
                                               const Rat& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm: identically zero");
  if (!(lo < hi)) throw std::invalid_argument("sturm: empty interval");
  if (p.eval(lo).is_zero() || p.eval(hi).is_zero())
    throw std::invalid_argument("sturm: endpoint is a root");
  std::vector<QPoly> chain = sturm_chain(p);
  std::vector<RootInterval> out;
  detail::isolate_rec(p, chain, lo, hi, out);
  return out;
}

// Shrinks an isolating interval of a single root of p below the requested
// width.  The returned interval is contained in the input and still
// isolates the same root with non-root endpoints.
inline RootInterval refine_root(const QPoly& p, const std::vector<QPoly>& chain,
                                RootInterval iv, const Rat& width) {
  while (!(iv.width() < width)) {
    Rat c = detail::nonroot_split(p, iv.lo, iv.hi);
    // keep the half that holds the root
    if (sturm_count(chain, iv.lo, c) == 1)
      iv.hi = c;
    else
      iv.lo = c;
  }
  return iv;
}

// Exact sign of q at the unique root of p inside iv.  Zero iff the root is
// a common root of p and q, which is tested through gcd(p, q).
inline int sign_at_root(const QPoly& q, const QPoly& p,
                        const std::vector<QPoly>& p_chain, RootInterval iv) {
  if (q.is_zero()) return 0;
  QPoly g = poly_gcd(p, q);
  if (g.degree() >= 1) {
    std::vector<QPoly> gchain = sturm_chain(g);
    // g divides p, so g cannot vanish at the interval endpoints
    if (sturm_count(gchain, iv.lo, iv.hi) > 0) return 0;
  }
  std::vector<QPoly> qchain = sturm_chain(q);
  while (sturm_count(qchain, iv.lo, iv.hi) > 0 || q.eval(iv.lo).is_zero() ||
         q.eval(iv.hi).is_zero())
    iv = refine_root(p, p_chain, iv, iv.width() / Rat(2));
  return q.eval(iv.mid()).sgn();
}

}  // namespace chroma

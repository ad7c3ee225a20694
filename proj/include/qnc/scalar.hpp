#pragma once

/**
 * @file scalar.hpp
 * @brief Exact coefficient field for the deformed-space engine.
 *
 * Scalars live in the quadratic extension F[s]/(s^2 - (1+q^2)) where
 * F = Q(i)(q) is the field of rational functions in the deformation
 * parameter q with Gaussian-rational coefficients.  Every value is kept in
 * a canonical form (reduced fraction, monic denominator), so syntactic
 * equality of representations is field equality.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qnc {

using BigRat = boost::multiprecision::cpp_rational;

/* ------------------------------------------------------------------ */
/* Gaussian rationals                                                  */
/* ------------------------------------------------------------------ */

struct GaussRat {
  BigRat re{0};
  BigRat im{0};

  GaussRat() = default;
  GaussRat(long r) : re(r) {}
  GaussRat(BigRat r) : re(std::move(r)) {}
  GaussRat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussRat operator+(const GaussRat& x, const GaussRat& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend GaussRat operator-(const GaussRat& x, const GaussRat& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend GaussRat operator-(const GaussRat& x) { return {-x.re, -x.im}; }
  friend GaussRat operator*(const GaussRat& x, const GaussRat& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend GaussRat operator/(const GaussRat& x, const GaussRat& y) {
    BigRat n = y.re * y.re + y.im * y.im;
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
  }
  friend bool operator==(const GaussRat& x, const GaussRat& y) {
    return x.re == y.re && x.im == y.im;
  }
  GaussRat conj() const { return {re, -im}; }
};

inline GaussRat gauss_i() { return {BigRat(0), BigRat(1)}; }

using Int = boost::multiprecision::cpp_int;

/// Gaussian integer; the integer backing for all polynomial coefficients.
struct GInt {
  Int re{0}, im{0};
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend bool operator==(const GInt& a, const GInt& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline GInt gmul(const GInt& a, const GInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GInt gsub(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }
// exact division, valid whenever b divides a in the Gaussian integers
inline GInt gdiv(const GInt& a, const GInt& b) {
  Int n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline GInt gpow(const GInt& a, int e) {
  GInt r{1, 0};
  for (int k = 0; k < e; ++k) r = gmul(r, a);
  return r;
}

using GVec = std::vector<GInt>;

/* ------------------------------------------------------------------ */
/* Dense polynomials in q over the Gaussian rationals                  */
/* ------------------------------------------------------------------ */

/* Stored as a Gaussian-integer coefficient vector over one positive integer
 * denominator with gcd(coefficient content, denominator) = 1, so ring
 * operations run on integers and rational reduction happens once per
 * operation instead of once per coefficient. */
class Poly {
 public:
  Poly() = default;
  Poly(GaussRat c0) {
    auto [g, d] = split_rat(c0);
    if (!g.is_zero()) {
      c_.push_back(std::move(g));
      den_ = std::move(d);
    }
  }
  Poly(long n) {
    if (n) c_.push_back(GInt{Int(n), Int(0)});
  }

  /// Monomial c * q^e (e >= 0).
  static Poly monomial(const GaussRat& c, int e) {
    Poly p;
    if (c.is_zero()) return p;
    auto [g, d] = split_rat(c);
    p.c_.assign(static_cast<size_t>(e) + 1, GInt{});
    p.c_[static_cast<size_t>(e)] = std::move(g);
    p.den_ = std::move(d);
    return p;
  }

  /// Assembles coefficients/denominator, reducing to canonical form.
  static Poly from_parts(GVec c, Int den) {
    Poly p;
    p.c_ = std::move(c);
    p.den_ = std::move(den);
    p.normalize();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  GaussRat coeff(int e) const {
    if (e < 0 || e >= static_cast<int>(c_.size())) return {};
    const GInt& g = c_[static_cast<size_t>(e)];
    return {BigRat(g.re, den_), BigRat(g.im, den_)};
  }
  GaussRat lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero");
    return {BigRat(c_.back().re, den_), BigRat(c_.back().im, den_)};
  }
  /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  int low_order() const {
    for (size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return static_cast<int>(k);
    return 0;
  }
  bool is_monomial() const {
    if (c_.empty()) return false;
    for (size_t k = 0; k + 1 < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }
  bool is_one() const {
    return c_.size() == 1 && den_ == 1 && c_[0] == GInt{Int(1), Int(0)};
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    Poly r;
    r.c_.resize(std::max(x.c_.size(), y.c_.size()));
    if (x.den_ == y.den_) {
      r.den_ = x.den_;
      for (size_t k = 0; k < r.c_.size(); ++k) {
        GInt v;
        if (k < x.c_.size()) v = x.c_[k];
        if (k < y.c_.size()) {
          v.re += y.c_[k].re;
          v.im += y.c_[k].im;
        }
        r.c_[k] = std::move(v);
      }
    } else {
      Int g = boost::multiprecision::gcd(x.den_, y.den_);
      Int fx = y.den_ / g, fy = x.den_ / g;
      r.den_ = x.den_ * fx;
      for (size_t k = 0; k < r.c_.size(); ++k) {
        GInt v;
        if (k < x.c_.size()) {
          v.re = x.c_[k].re * fx;
          v.im = x.c_[k].im * fx;
        }
        if (k < y.c_.size()) {
          v.re += y.c_[k].re * fy;
          v.im += y.c_[k].im * fy;
        }
        r.c_[k] = std::move(v);
      }
    }
    r.normalize();
    return r;
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator-(const Poly& x) {
    Poly r = x;
    for (auto& c : r.c_) {
      c.re = -c.re;
      c.im = -c.im;
    }
    return r;
  }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    Poly r;
    r.c_.assign(x.c_.size() + y.c_.size() - 1, GInt{});
    for (size_t a = 0; a < x.c_.size(); ++a) {
      const GInt& xa = x.c_[a];
      if (xa.is_zero()) continue;
      for (size_t b = 0; b < y.c_.size(); ++b) {
        const GInt& yb = y.c_[b];
        if (yb.is_zero()) continue;
        GInt& t = r.c_[a + b];
        t.re += xa.re * yb.re - xa.im * yb.im;
        t.im += xa.re * yb.im + xa.im * yb.re;
      }
    }
    r.den_ = x.den_ * y.den_;
    r.normalize();
    return r;
  }
  friend bool operator==(const Poly& x, const Poly& y) {
    return x.den_ == y.den_ && x.c_ == y.c_;
  }

  Poly scaled(const GaussRat& s) const {
    if (s.is_zero() || is_zero()) return {};
    auto [f, d] = split_rat(s);
    Poly r;
    r.c_.resize(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = gmul(c_[k], f);
    r.den_ = den_ * d;
    r.normalize();
    return r;
  }

  /// Multiplication by q^k; a negative k must divide exactly.
  Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    r.den_ = den_;
    if (k > 0) {
      r.c_.assign(c_.size() + static_cast<size_t>(k), GInt{});
      for (size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<size_t>(k)] = c_[i];
    } else {
      size_t d = static_cast<size_t>(-k);
      if (d > c_.size()) throw std::domain_error("q-power shift below degree");
      for (size_t i = 0; i < d; ++i)
        if (!c_[i].is_zero()) throw std::domain_error("inexact q-power shift");
      r.c_.assign(c_.begin() + static_cast<long>(d), c_.end());
    }
    return r;
  }

  /// Quotient and remainder with remainder degree < divisor degree.
  static std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero() || a.degree() < b.degree()) return {Poly(), std::move(a)};
    if (b.is_monomial()) {
      // division by c*q^k: split at exponent k
      size_t k = static_cast<size_t>(b.degree());
      GVec high(a.c_.begin() + static_cast<long>(k), a.c_.end());
      GVec low(a.c_.begin(), a.c_.begin() + static_cast<long>(k));
      Poly quo = from_parts(std::move(high), a.den_).scaled(GaussRat(1) / b.lead());
      return {std::move(quo), from_parts(std::move(low), a.den_)};
    }
    const GVec& B = b.c_;
    const GInt& l = B.back();
    GVec R = a.c_;
    auto rtrim = [](GVec& v) {
      while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    if (l.re * l.re + l.im * l.im == 1) {
      // unit leading coefficient: plain long division, no growth factor
      GInt linv{l.re, -l.im};
      GVec Q(a.c_.size() - B.size() + 1);
      while (R.size() >= B.size()) {
        GInt t = gmul(R.back(), linv);
        size_t shift = R.size() - B.size();
        for (size_t i = 0; i < B.size(); ++i)
          R[shift + i] = gsub(R[shift + i], gmul(t, B[i]));
        rtrim(R);
        Q[shift] = std::move(t);
      }
      return {from_parts(scaled_up(std::move(Q), b.den_), a.den_),
              from_parts(std::move(R), a.den_)};
    }
    // pseudo-division; the accumulated leading-coefficient power comes back
    // out through the denominator after rationalizing with its conjugate
    GVec Q(a.c_.size() - B.size() + 1);
    int e = 0;
    while (R.size() >= B.size()) {
      GInt t = R.back();
      size_t shift = R.size() - B.size();
      for (auto& c : Q) c = gmul(c, l);
      Q[shift].re += t.re;
      Q[shift].im += t.im;
      GVec nR(R.size() - 1);
      for (size_t i = 0; i + 1 < R.size(); ++i) {
        GInt v = gmul(R[i], l);
        if (i >= shift) v = gsub(v, gmul(t, B[i - shift]));
        nR[i] = std::move(v);
      }
      rtrim(nR);
      R = std::move(nR);
      ++e;
    }
    GInt ce = gpow(GInt{l.re, -l.im}, e);
    Int nl = l.re * l.re + l.im * l.im, nle = 1;
    for (int j = 0; j < e; ++j) nle *= nl;
    for (auto& c : Q) c = gmul(c, ce);
    for (auto& c : R) c = gmul(c, ce);
    return {from_parts(scaled_up(std::move(Q), b.den_), a.den_ * nle),
            from_parts(std::move(R), a.den_ * nle)};
  }

  Poly monic() const {
    if (is_zero()) return {};
    return scaled(GaussRat(1) / lead());
  }

  Poly conj() const {
    Poly r = *this;
    for (auto& c : r.c_) c.im = -c.im;
    return r;
  }

  GaussRat eval(const BigRat& q0) const {
    BigRat re = 0, im = 0;
    for (size_t k = c_.size(); k-- > 0;) {
      re = re * q0 + BigRat(c_[k].re);
      im = im * q0 + BigRat(c_[k].im);
    }
    BigRat d(den_);
    return {re / d, im / d};
  }

  const GVec& icoeffs() const { return c_; }
  const Int& iden() const { return den_; }

 private:
  GVec c_;       // c_[k]/den_ multiplies q^k; highest entry nonzero
  Int den_{1};   // positive, coprime to the coefficient content

  static std::pair<GInt, Int> split_rat(const GaussRat& s) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int dr = denominator(s.re), di = denominator(s.im);
    Int d = dr / boost::multiprecision::gcd(dr, di) * di;
    return {GInt{numerator(s.re) * (d / dr), numerator(s.im) * (d / di)},
            std::move(d)};
  }
  static GVec scaled_up(GVec v, const Int& f) {
    if (f != 1)
      for (auto& c : v) {
        c.re *= f;
        c.im *= f;
      }
    return v;
  }
  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) {
      den_ = 1;
      return;
    }
    if (den_ == 1) return;
    Int g = den_;
    for (const auto& c : c_) {
      g = boost::multiprecision::gcd(g, c.re);
      if (g == 1) return;
      g = boost::multiprecision::gcd(g, c.im);
      if (g == 1) return;
    }
    for (auto& c : c_) {
      c.re /= g;
      c.im /= g;
    }
    den_ /= g;
  }
};

inline Poly poly_q_power(int e) { return Poly::monomial(GaussRat(1), e); }

/* gcd machinery: the Euclidean algorithm over the rationals suffers from
 * coefficient swell, so the general case runs a subresultant
 * pseudo-remainder sequence over the Gaussian integers. */
namespace gcd_detail {

inline void trim(GVec& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}
inline int gdeg(const GVec& v) { return static_cast<int>(v.size()) - 1; }

inline GVec primitive(GVec v) {
  Int c = 0;
  for (const auto& g : v) {
    c = boost::multiprecision::gcd(c, g.re);
    c = boost::multiprecision::gcd(c, g.im);
  }
  if (c > 1)
    for (auto& g : v) {
      g.re /= c;
      g.im /= c;
    }
  return v;
}

// lc(b)^(deg a - deg b + 1) * a reduced modulo b
inline GVec prem(GVec a, const GVec& b) {
  const GInt lb = b.back();
  int e = gdeg(a) - gdeg(b) + 1;
  while (!a.empty() && gdeg(a) >= gdeg(b)) {
    const GInt la = a.back();
    int shift = gdeg(a) - gdeg(b);
    GVec r(a.size() - 1);
    for (size_t i = 0; i + 1 < a.size(); ++i) {
      GInt t = gmul(a[i], lb);
      if (static_cast<int>(i) >= shift) t = gsub(t, gmul(la, b[i - size_t(shift)]));
      r[i] = t;
    }
    trim(r);
    a = std::move(r);
    --e;
  }
  if (e > 0 && !a.empty()) {
    GInt f = gpow(lb, e);
    for (auto& g : a) g = gmul(g, f);
  }
  return a;
}

inline GVec subresultant_gcd(GVec a, GVec b) {
  if (gdeg(a) < gdeg(b)) std::swap(a, b);
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  GInt g{1, 0}, h{1, 0};
  for (;;) {
    int d = gdeg(a) - gdeg(b);
    GVec r = prem(a, b);
    if (r.empty()) return primitive(std::move(b));
    if (gdeg(r) == 0) return {GInt{1, 0}};
    GInt div = gmul(g, gpow(h, d));
    for (auto& c : r) c = gdiv(c, div);
    a = std::move(b);
    b = std::move(r);
    g = a.back();
    if (d >= 1) {
      GInt hn = gpow(g, d);
      if (d > 1) hn = gdiv(hn, gpow(h, d - 1));
      h = hn;
    }
  }
}

/* Coprimality screen over GF(p) for p = 1 mod 4: mapping i to a square root
 * of -1 mod p gives a ring map Z[i] -> GF(p).  A nonconstant common divisor
 * survives reduction whenever the leading coefficients do, so a constant gcd
 * mod p certifies that the polynomials are coprime.  All arithmetic stays in
 * machine words (p < 2^31). */

inline uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

struct PrimeCtx {
  uint64_t p, u;
};

inline const std::array<PrimeCtx, 2>& screen_primes() {
  static const std::array<PrimeCtx, 2> ctx = [] {
    std::array<PrimeCtx, 2> out{};
    const uint64_t primes[2] = {2147483629ull, 2147483549ull};
    for (size_t k = 0; k < 2; ++k) {
      uint64_t p = primes[k], u = 0;
      for (uint64_t a = 2;; ++a) {
        u = powmod(a, (p - 1) / 4, p);
        if (u * u % p == p - 1) break;
      }
      out[k] = {p, u};
    }
    return out;
  }();
  return ctx;
}

inline uint64_t gint_mod(const GInt& g, const PrimeCtx& c) {
  Int r = g.re % Int(c.p);
  if (r < 0) r += Int(c.p);
  Int s = g.im % Int(c.p);
  if (s < 0) s += Int(c.p);
  return (r.convert_to<uint64_t>() + s.convert_to<uint64_t>() * c.u % c.p) % c.p;
}

inline bool coprime_mod_p(const GVec& a, const GVec& b) {
  for (const auto& ctx : screen_primes()) {
    std::vector<uint64_t> va(a.size()), vb(b.size());
    for (size_t i = 0; i < a.size(); ++i) va[i] = gint_mod(a[i], ctx);
    for (size_t i = 0; i < b.size(); ++i) vb[i] = gint_mod(b[i], ctx);
    if (va.back() == 0 || vb.back() == 0) continue;  // degree dropped mod p
    while (!vb.empty()) {
      uint64_t inv = powmod(vb.back(), ctx.p - 2, ctx.p);
      while (va.size() >= vb.size()) {
        uint64_t f = va.back() * inv % ctx.p;
        size_t off = va.size() - vb.size();
        for (size_t i = 0; i + 1 < vb.size(); ++i) {
          uint64_t s = f * vb[i] % ctx.p;
          va[off + i] = (va[off + i] + ctx.p - s) % ctx.p;
        }
        va.pop_back();
        while (!va.empty() && va.back() == 0) va.pop_back();
      }
      std::swap(va, vb);
    }
    return va.size() <= 1;
  }
  return false;
}

}  // namespace gcd_detail

/// Gcd normalized to leading coefficient one.
inline Poly poly_gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  // gcd with a monomial is a pure q-power
  if (a0.is_monomial()) return poly_q_power(std::min(a0.degree(), b0.low_order()));
  if (b0.is_monomial()) return poly_q_power(std::min(b0.degree(), a0.low_order()));
  int la = a0.low_order(), lb = b0.low_order();
  int shift = std::min(la, lb);
  GVec va(a0.icoeffs().begin() + la, a0.icoeffs().end());
  GVec vb(b0.icoeffs().begin() + lb, b0.icoeffs().end());
  va = gcd_detail::primitive(std::move(va));
  vb = gcd_detail::primitive(std::move(vb));
  if (gcd_detail::coprime_mod_p(va, vb)) return poly_q_power(shift);
  // one-division shortcut: when the lower-degree operand has a unit leading
  // coefficient and divides the other, it is the gcd
  const GVec& lo = va.size() <= vb.size() ? va : vb;
  const GVec& hi = va.size() <= vb.size() ? vb : va;
  Poly g;
  const GInt& ll = lo.back();
  if (ll.re * ll.re + ll.im * ll.im == 1 && gcd_detail::prem(hi, lo).empty())
    g = Poly::from_parts(lo, 1).monic();
  else
    g = Poly::from_parts(
            gcd_detail::subresultant_gcd(std::move(va), std::move(vb)), 1)
            .monic();
  return shift ? g.shifted(shift) : g;
}

/* ------------------------------------------------------------------ */
/* Rational functions in q, canonical form                             */
/* ------------------------------------------------------------------ */

class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(Poly n) : num_(std::move(n)), den_(1) {}
  RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }
  RatFunc(long n) : num_(n), den_(1) {}

  static RatFunc q_power(int e) {
    if (e >= 0) return RatFunc(poly_q_power(e));
    return RatFunc(Poly(1), poly_q_power(-e));
  }

  bool is_zero() const { return num_.is_zero(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  // Operands are always reduced with monic denominators, which the sum and
  // product formulas below exploit: a cross-cancelled product of reduced
  // fractions is reduced, and for a sum only factors of gcd(den, den) can
  // survive into the result denominator, so no full renormalization runs.
  friend RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.den_ == y.den_) {
      Poly t = x.num_ + y.num_;
      if (t.is_zero()) return RatFunc();
      if (x.den_.is_one()) return raw(std::move(t), x.den_);
      Poly h = poly_gcd(t, x.den_);
      if (h.is_one()) return raw(std::move(t), x.den_);
      return raw(Poly::divmod(t, h).first, Poly::divmod(x.den_, h).first);
    }
    Poly g = poly_gcd(x.den_, y.den_);
    if (g.is_one()) return raw(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    Poly da = Poly::divmod(x.den_, g).first;
    Poly db = Poly::divmod(y.den_, g).first;
    Poly t = x.num_ * db + y.num_ * da;
    if (t.is_zero()) return RatFunc();
    Poly h = poly_gcd(t, g);
    if (h.is_one()) return raw(std::move(t), x.den_ * db);
    return raw(Poly::divmod(t, h).first, Poly::divmod(x.den_, h).first * db);
  }
  friend RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }
  friend RatFunc operator-(const RatFunc& x) {
    RatFunc r = x;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return RatFunc();
    if (x.den_.is_one() && y.den_.is_one()) return raw(x.num_ * y.num_, Poly(1));
    if (x.den_.is_monomial() && y.den_.is_monomial()) {
      Poly n = x.num_ * y.num_;
      Poly d = x.den_ * y.den_;
      int k = std::min(n.low_order(), d.degree());
      if (k > 0) {
        n = n.shifted(-k);
        d = d.shifted(-k);
      }
      return raw(std::move(n), std::move(d));
    }
    // Cross-cancel before multiplying to keep degrees small.
    Poly g1 = poly_gcd(x.num_, y.den_);
    Poly g2 = poly_gcd(y.num_, x.den_);
    Poly n1 = g1.is_one() ? x.num_ : Poly::divmod(x.num_, g1).first;
    Poly d2 = g1.is_one() ? y.den_ : Poly::divmod(y.den_, g1).first;
    Poly n2 = g2.is_one() ? y.num_ : Poly::divmod(y.num_, g2).first;
    Poly d1 = g2.is_one() ? x.den_ : Poly::divmod(x.den_, g2).first;
    return raw(n1 * n2, d1 * d2);
  }
  friend RatFunc operator/(const RatFunc& x, const RatFunc& y) {
    if (y.is_zero()) throw std::domain_error("division by zero rational function");
    if (x.is_zero()) return RatFunc();
    GaussRat inv_lead = GaussRat(1) / y.num_.lead();
    return x * raw(y.den_.scaled(inv_lead), y.num_.scaled(inv_lead));
  }
  friend bool operator==(const RatFunc& x, const RatFunc& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  RatFunc conj() const {
    // an automorphism preserves reducedness, and the monic denominator
    // lead stays fixed
    return raw(num_.conj(), den_.conj());
  }

  /// nullopt signals a pole at q0.
  std::optional<GaussRat> eval(const BigRat& q0) const {
    GaussRat d = den_.eval(q0);
    if (d.is_zero()) return std::nullopt;
    return num_.eval(q0) / d;
  }

 private:
  Poly num_, den_;
  static RatFunc raw(Poly n, Poly d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = Poly::divmod(num_, g).first;
      den_ = Poly::divmod(den_, g).first;
    }
    GaussRat lc = den_.lead();
    if (!(lc == GaussRat(1))) {
      num_ = num_.scaled(GaussRat(1) / lc);
      den_ = den_.scaled(GaussRat(1) / lc);
    }
  }
};

/* ------------------------------------------------------------------ */
/* The quadratic extension by s, s^2 = 1 + q^2                         */
/* ------------------------------------------------------------------ */

inline const RatFunc& s_square() {
  static const RatFunc v = RatFunc(1) + RatFunc::q_power(2);
  return v;
}

class QScalar {
 public:
  QScalar() = default;
  QScalar(long n) : a_(n) {}
  QScalar(RatFunc a) : a_(std::move(a)) {}
  QScalar(RatFunc a, RatFunc b) : a_(std::move(a)), b_(std::move(b)) {}

  static QScalar q_power(int e) { return QScalar(RatFunc::q_power(e)); }
  static QScalar i_unit() {
    return QScalar(RatFunc(Poly(gauss_i())));
  }
  static QScalar s_unit() { return QScalar(RatFunc(), RatFunc(1)); }
  static QScalar rational(const BigRat& r) {
    return QScalar(RatFunc(Poly(GaussRat(r))));
  }
  static QScalar gaussian(const GaussRat& g) {
    return QScalar(RatFunc(Poly(g)));
  }

  const RatFunc& base() const { return a_; }
  const RatFunc& s_part() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool has_s() const { return !b_.is_zero(); }

  friend QScalar operator+(const QScalar& x, const QScalar& y) {
    return {x.a_ + y.a_, x.b_ + y.b_};
  }
  friend QScalar operator-(const QScalar& x, const QScalar& y) {
    return {x.a_ - y.a_, x.b_ - y.b_};
  }
  friend QScalar operator-(const QScalar& x) { return {-x.a_, -x.b_}; }
  friend QScalar operator*(const QScalar& x, const QScalar& y) {
    if (!x.has_s() && !y.has_s()) return QScalar(x.a_ * y.a_);
    return {x.a_ * y.a_ + x.b_ * y.b_ * s_square(),
            x.a_ * y.b_ + x.b_ * y.a_};
  }
  friend QScalar operator/(const QScalar& x, const QScalar& y) {
    if (y.is_zero()) throw std::domain_error("division by zero scalar");
    if (!y.has_s()) return {x.a_ / y.a_, x.b_ / y.a_};
    // Multiply by the s-conjugate; the norm a^2 - (1+q^2) b^2 is nonzero
    // because 1+q^2 is not a square in Q(i)(q).
    RatFunc n = y.a_ * y.a_ - y.b_ * y.b_ * s_square();
    QScalar t = x * QScalar(y.a_, -y.b_);
    return {t.a_ / n, t.b_ / n};
  }
  friend bool operator==(const QScalar& x, const QScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  RatFunc a_, b_;  // value = a + b*s
};

/// Complex conjugation: i -> -i, fixing q and s.
inline QScalar scalar_conjugate(const QScalar& x) {
  return QScalar(x.base().conj(), x.s_part().conj());
}

/// Which square root of 1+q0^2 the symbol s evaluates to.
enum class SBranch { plus, minus };

/// Value of a scalar at a rational point: va + vb * sqrt(1 + q0^2),
/// kept as an exact pair since the root is generally irrational.
struct ScalarValue {
  GaussRat va, vb;
  bool is_zero() const { return va.is_zero() && vb.is_zero(); }
};

struct EvalError {
  std::string reason;
};

/// Exact evaluation at q = q0; poles are reported, never folded to zero.
inline std::optional<ScalarValue> scalar_eval(const QScalar& x,
                                              const BigRat& q0,
                                              SBranch branch = SBranch::plus,
                                              EvalError* err = nullptr) {
  auto va = x.base().eval(q0);
  auto vb = x.s_part().eval(q0);
  if (!va || !vb) {
    if (err) err->reason = "pole at the requested evaluation point";
    return std::nullopt;
  }
  GaussRat b = *vb;
  if (branch == SBranch::minus) b = -b;
  return ScalarValue{*va, b};
}

/* ------------------------------------------------------------------ */
/* Canonical printing                                                  */
/* ------------------------------------------------------------------ */

inline std::string gauss_plain(const BigRat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

/**
 * Coefficient in front of a q-power.  `unit_suppressed` is set when the
 * coefficient is +-1 and should be absorbed into the sign (only done for
 * a nonempty tail such as "q^2").
 */
inline std::string gauss_coeff_str(const GaussRat& g, bool have_tail,
                                   bool* negative) {
  *negative = false;
  if (g.im == 0) {
    BigRat r = g.re;
    if (r < 0) {
      *negative = true;
      r = -r;
    }
    if (have_tail && r == 1) return "";
    return gauss_plain(r);
  }
  if (g.re == 0) {
    BigRat b = g.im;
    if (b < 0) {
      *negative = true;
      b = -b;
    }
    if (b == 1) return "i";
    return gauss_plain(b) + "*i";
  }
  // Mixed real and imaginary part: parenthesized, sign kept inside.
  std::string s = "(" + gauss_plain(g.re);
  if (g.im > 0)
    s += " + " + (g.im == 1 ? std::string("i") : gauss_plain(g.im) + "*i");
  else
    s += " - " + (g.im == -1 ? std::string("i") : gauss_plain(-g.im) + "*i");
  s += ")";
  return s;
}

/// Laurent-style rendering of num / q^(-shift), exponents descending.
inline std::string poly_str(const Poly& p, int shift = 0) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int e = p.degree(); e >= 0; --e) {
    const GaussRat& c = p.coeff(e);
    if (c.is_zero()) continue;
    int ee = e + shift;
    bool neg = false;
    std::string cs = gauss_coeff_str(c, ee != 0, &neg);
    std::string tail;
    if (ee != 0) {
      tail = (ee == 1) ? "q" : "q^" + std::to_string(ee);
      if (!cs.empty()) tail = cs + "*" + tail;
    } else {
      tail = cs.empty() ? "1" : cs;
    }
    if (first) {
      out += (neg ? "-" : "") + tail;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + tail;
    }
  }
  return out;
}

inline bool poly_str_is_single_term(const Poly& p) {
  int n = 0;
  for (int e = 0; e <= p.degree(); ++e)
    if (!p.coeff(e).is_zero()) ++n;
  return n == 1;
}

inline std::string ratfunc_str(const RatFunc& f) {
  if (f.is_zero()) return "0";
  if (f.den().is_one()) return poly_str(f.num());
  if (f.den().is_monomial() && f.den().lead() == GaussRat(1))
    return poly_str(f.num(), -f.den().degree());
  std::string n = poly_str(f.num());
  if (!poly_str_is_single_term(f.num())) n = "(" + n + ")";
  return n + "/(" + poly_str(f.den()) + ")";
}

/// Full canonical string, e.g. "q - q^-1" or "1/(q^2 + 1) + (q)*s".
inline std::string scalar_str(const QScalar& x) {
  if (x.is_zero()) return "0";
  std::string out;
  if (!x.base().is_zero()) out = ratfunc_str(x.base());
  if (x.has_s()) {
    std::string bs = ratfunc_str(x.s_part());
    bool neg = false;
    if (!bs.empty() && bs[0] == '-') {
      // only strip a purely leading minus of a single-term coefficient
      if (poly_str_is_single_term(x.s_part().num()) &&
          (x.s_part().den().is_one() ||
           (x.s_part().den().is_monomial() &&
            x.s_part().den().lead() == GaussRat(1)))) {
        neg = true;
        bs = bs.substr(1);
      }
    }
    bool composite = bs.find(" + ") != std::string::npos ||
                     bs.find(" - ") != std::string::npos ||
                     bs.find('/') != std::string::npos;
    std::string term = (bs == "1") ? "s" : (composite ? "(" + bs + ")*s" : bs + "*s");
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

/// True when the string needs parentheses inside a product.
inline bool scalar_str_composite(const std::string& s) {
  if (s.find(" + ") != std::string::npos) return true;
  if (s.find(" - ") != std::string::npos) return true;
  return false;
}

}  // namespace qnc

#ifndef PHSOLVE_SERIES_HPP
#define PHSOLVE_SERIES_HPP

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "phsolve/errors.hpp"
#include "phsolve/rational.hpp"

namespace phsolve {

/// Truncated Laurent series over Q in one variable T.
///
/// Stores the coefficient window [ord, prec): everything below `ord` is known
/// to be zero, everything at or above `prec` is unknown. A series with
/// prec == kExactPrec is an exact Laurent polynomial (all unstored
/// coefficients are zero). Arithmetic never extends knowledge: the precision
/// of a result is the best that honestly follows from the operands.
class Series {
 public:
  static constexpr int kExactPrec = 1 << 28;

  Series() : ord_(0), prec_(kExactPrec) {}
  Series(int v) : Series(Rational(v)) {}
  Series(const Rational& v) : ord_(0), prec_(kExactPrec) {
    if (!phsolve::is_zero(v)) c_.push_back(v);
    normalize();
  }
  /// c * T^e, exact.
  Series(const Rational& c, int e) : ord_(e), prec_(kExactPrec) {
    c_.push_back(c);
    normalize();
  }
  /// Coefficients for T^ord .. T^(prec-1); prec == kExactPrec means exact.
  Series(std::vector<Rational> coeffs, int ord, int prec)
      : ord_(ord), prec_(prec), c_(std::move(coeffs)) {
    normalize();
  }

  static Series zero_mod(int prec) { return Series({}, prec, prec); }

  int order() const { return ord_; }          // lowest possibly-nonzero exponent
  int precision() const { return prec_; }     // first unknown exponent
  bool exact() const { return prec_ == kExactPrec; }
  bool zero_known() const { return c_.empty(); }
  bool exact_zero_p() const { return exact() && c_.empty(); }

  /// Coefficient of T^e. Requires e < precision().
  Rational coeff(int e) const {
    if (e >= prec_) throw ConsistencyError("series coefficient queried beyond precision");
    if (e < ord_ || e >= ord_ + (int)c_.size()) return Rational(0);
    return c_[e - ord_];
  }

  /// Constant term; the series must be a power series (order >= 0).
  Rational at_t0() const {
    if (!c_.empty() && ord_ < 0) throw ConsistencyError("Laurent series evaluated at T=0");
    if (prec_ < 1) throw ConsistencyError("series has no constant-term knowledge");
    return coeff(0);
  }

  /// Forget coefficients at and above p.
  Series truncated(int p) const {
    if (p >= prec_) return *this;
    Series r = *this;
    r.prec_ = p;
    if ((int)r.c_.size() > p - r.ord_) r.c_.resize(std::max(0, p - r.ord_));
    r.normalize();
    return r;
  }

  /// Declare the unknown coefficients in [prec, p) to be zero. This is a
  /// statement of intent (the Newton iterator's zero-padded guess), not a
  /// derived fact; only lifting code should call it.
  Series assume_precision(int p) const {
    if (p <= prec_) return *this;
    Series r = *this;
    r.prec_ = p;
    r.normalize();
    return r;
  }

  /// Multiply by T^k.
  Series shifted(int k) const {
    Series r = *this;
    r.ord_ += k;
    if (!r.exact()) r.prec_ += k;
    return r;
  }

  /// Substitute T -> T^f (f >= 1): exponents and precision scale by f.
  /// The skipped grid positions are known zeros.
  Series regrid(int f) const {
    assert(f >= 1);
    if (f == 1) return *this;
    Series r;
    r.ord_ = ord_ * f;
    r.prec_ = exact() ? kExactPrec : prec_ * f;
    if (!c_.empty()) {
      r.c_.assign((c_.size() - 1) * f + 1, Rational(0));
      for (size_t i = 0; i < c_.size(); ++i) r.c_[i * f] = c_[i];
    }
    r.normalize();
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    int prec = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) {
      if (prec == kExactPrec) return Series();
      return zero_mod(prec);
    }
    int lo = a.c_.empty() ? b.ord_ : (b.c_.empty() ? a.ord_ : std::min(a.ord_, b.ord_));
    int hi_a = a.ord_ + (int)a.c_.size(), hi_b = b.ord_ + (int)b.c_.size();
    int hi = std::min(std::max(hi_a, hi_b), prec);
    if (hi <= lo) return prec == kExactPrec ? Series() : zero_mod(prec);
    std::vector<Rational> c(hi - lo, Rational(0));
    for (int e = lo; e < hi; ++e) {
      if (e >= a.ord_ && e < hi_a) c[e - lo] += a.c_[e - a.ord_];
      if (e >= b.ord_ && e < hi_b) c[e - lo] += b.c_[e - b.ord_];
    }
    return Series(std::move(c), lo, prec);
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    // Precision of a product: min(prec_a + ord_b, prec_b + ord_a), where a
    // known-zero operand contributes through its window edge.
    int prec;
    if (a.exact() && b.exact()) {
      prec = kExactPrec;
    } else {
      long pa = (long)std::min(a.prec_, kExactPrec) + b.ord_;
      long pb = (long)std::min(b.prec_, kExactPrec) + a.ord_;
      prec = (int)std::min({pa, pb, (long)kExactPrec});
    }
    if (a.c_.empty() || b.c_.empty()) {
      return prec == kExactPrec ? Series() : zero_mod(prec);
    }
    int lo = a.ord_ + b.ord_;
    int hi = std::min((int)(a.c_.size() + b.c_.size()) - 1 + lo, prec);
    if (hi <= lo) return prec == kExactPrec ? Series() : zero_mod(prec);
    std::vector<Rational> c(hi - lo, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (phsolve::is_zero(a.c_[i])) continue;
      int base = (int)i;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        int idx = base + (int)j;
        if (idx >= hi - lo) break;
        c[idx] += a.c_[i] * b.c_[j];
      }
    }
    return Series(std::move(c), lo, prec);
  }

  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  friend Series operator*(const Series& a, const Rational& s) {
    if (phsolve::is_zero(s)) return Series();
    Series r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Multiplicative inverse. The lowest stored coefficient must be nonzero;
  /// an exact operand needs `want` terms to be requested explicitly.
  Series inverse(int want_terms = -1) const {
    if (c_.empty()) throw SeriesNotInvertible();
    if (exact() && c_.size() == 1) return Series(Rational(1) / c_[0], -ord_);
    int terms = exact() ? want_terms : prec_ - ord_;
    if (terms <= 0) throw ConsistencyError("series inverse needs a target precision");
    const Rational& u0 = c_[0];
    if (phsolve::is_zero(u0)) throw SeriesNotInvertible();
    std::vector<Rational> b(terms, Rational(0));
    Rational inv0 = Rational(1) / u0;
    b[0] = inv0;
    for (int k = 1; k < terms; ++k) {
      Rational acc(0);
      for (int j = 1; j <= k && j < (int)c_.size(); ++j) acc += c_[j] * b[k - j];
      b[k] = -acc * inv0;
    }
    int rord = -ord_;
    int rprec = exact() ? rord + terms : prec_ - 2 * ord_;
    return Series(std::move(b), rord, rprec);
  }

  /// Exact equality of the known windows (both must be exact for a true
  /// identity test; otherwise compares the common window).
  friend bool operator==(const Series& a, const Series& b) {
    Series d = a - b;
    return d.c_.empty();
  }

  std::string to_string() const {
    if (c_.empty()) return exact() ? "0" : "O(T^" + std::to_string(prec_) + ")";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (phsolve::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += rat_to_string(c_[i]) + "*T^" + std::to_string(ord_ + (int)i);
    }
    if (!exact()) s += " + O(T^" + std::to_string(prec_) + ")";
    return s;
  }

 private:
  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && phsolve::is_zero(c_[lead])) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + lead);
      ord_ += (int)lead;
    }
    while (!c_.empty() && phsolve::is_zero(c_.back())) c_.pop_back();
    if (!exact() && !c_.empty() && ord_ + (int)c_.size() > prec_) {
      c_.resize(prec_ - ord_ > 0 ? prec_ - ord_ : 0);
      while (!c_.empty() && phsolve::is_zero(c_.back())) c_.pop_back();
    }
    if (c_.empty()) ord_ = exact() ? 0 : std::min(ord_, prec_);
    if (c_.empty() && !exact()) ord_ = prec_;
  }

  int ord_;
  int prec_;
  std::vector<Rational> c_;
};

inline bool exact_zero(const Rational& a) { return is_zero(a); }
inline bool exact_zero(const Series& a) { return a.exact_zero_p(); }

inline Rational ring_invert(const Rational& a) {
  if (is_zero(a)) throw ConsistencyError("division by exact zero rational");
  return Rational(1) / a;
}
inline Series ring_invert(const Series& a) { return a.inverse(); }

template <class R>
R ring_div_int(const R& x, long k) {
  return x * Rational(1, k);
}

}  // namespace phsolve

#endif

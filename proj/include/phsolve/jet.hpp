#include <concepts>
#ifndef PHSOLVE_JET_HPP
#define PHSOLVE_JET_HPP

#include <string>
#include <vector>

#include "phsolve/errors.hpp"
#include "phsolve/series.hpp"

namespace phsolve {

/// First-order jet: a value together with a gradient w.r.t. n formal
/// parameters, with ring arithmetic truncated at second order:
///   (a, g) * (b, h) = (ab, a*h + b*g).
/// An empty gradient stands for the zero gradient of any arity, so plain
/// constants stay cheap.
template <class R>
struct Jet {
  R val;
  std::vector<R> grad;

  Jet() : val() {}
  template <class T>
    requires(!std::same_as<std::decay_t<T>, Jet> && std::constructible_from<R, T &&>)
  Jet(T&& v) : val(std::forward<T>(v)) {}
  Jet(R v, std::vector<R> g) : val(std::move(v)), grad(std::move(g)) {}

  /// Seed for the k-th parameter (0-based): value + epsilon_k.
  static Jet seed(R v, size_t k, size_t n) {
    std::vector<R> g(n, R());
    g[k] = R(1);
    return Jet(std::move(v), std::move(g));
  }

  size_t arity() const { return grad.size(); }

  Jet operator-() const {
    Jet r(-val);
    r.grad.reserve(grad.size());
    for (const auto& g : grad) r.grad.push_back(-g);
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.val + b.val);
    size_t n = std::max(a.grad.size(), b.grad.size());
    r.grad.resize(n, R());
    for (size_t i = 0; i < a.grad.size(); ++i) r.grad[i] = r.grad[i] + a.grad[i];
    for (size_t i = 0; i < b.grad.size(); ++i) r.grad[i] = r.grad[i] + b.grad[i];
    return r;
  }

  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.val * b.val);
    size_t n = std::max(a.grad.size(), b.grad.size());
    r.grad.resize(n, R());
    for (size_t i = 0; i < a.grad.size(); ++i) r.grad[i] = r.grad[i] + a.grad[i] * b.val;
    for (size_t i = 0; i < b.grad.size(); ++i) r.grad[i] = r.grad[i] + b.grad[i] * a.val;
    return r;
  }

  friend Jet operator*(const Jet& a, const Rational& s) {
    Jet r(a.val * s);
    r.grad.reserve(a.grad.size());
    for (const auto& g : a.grad) r.grad.push_back(g * s);
    return r;
  }

  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }

  friend bool operator==(const Jet& a, const Jet& b) {
    Jet d = a - b;
    if (!exact_zero(d.val)) return false;
    for (const auto& g : d.grad)
      if (!exact_zero(g)) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    s += val_str(val);
    for (const auto& g : grad) s += "; " + val_str(g);
    return s + ")";
  }

 private:
  static std::string val_str(const Rational& v) { return rat_to_string(v); }
  static std::string val_str(const Series& v) { return v.to_string(); }
};

using JetQ = Jet<Rational>;
using JetS = Jet<Series>;

template <class R>
bool exact_zero(const Jet<R>& a) {
  if (!exact_zero(a.val)) return false;
  for (const auto& g : a.grad)
    if (!exact_zero(g)) return false;
  return true;
}

/// (a, g)^{-1} = (a^{-1}, -a^{-2} g). Inverting a jet whose value is zero is
/// the detected failure mode of Lemma-style parametrization extraction.
inline JetQ ring_invert(const JetQ& a) {
  if (is_zero(a.val)) throw JetSingular();
  Rational iv = Rational(1) / a.val;
  Rational m = -iv * iv;
  JetQ r(iv);
  r.grad.reserve(a.grad.size());
  for (const auto& g : a.grad) r.grad.push_back(g * m);
  return r;
}

inline JetS ring_invert(const JetS& a) {
  Series iv = a.val.inverse();
  Series m = -(iv * iv);
  JetS r(iv);
  r.grad.reserve(a.grad.size());
  for (const auto& g : a.grad) r.grad.push_back(m * g);
  return r;
}

}  // namespace phsolve

#endif

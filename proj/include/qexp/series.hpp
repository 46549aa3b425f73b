#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qexp/ratfun.hpp"
#include "qexp/text.hpp"

namespace qexp {

/// q^e as a rational function; the table must declare "q".
inline RatFun q_power(const SymbolTablePtr& table, long e) {
  return RatFun::symbol(table, "q", static_cast<int>(e));
}

/// Power series in z truncated after z^order, with RatFun coefficients.
/// Binary operations between series of different orders truncate to the
/// smaller order.
class TruncSeries {
 public:
  TruncSeries(SymbolTablePtr table, std::size_t order)
      : table_(table), c_(order + 1, RatFun(std::move(table))) {}

  explicit TruncSeries(std::vector<RatFun> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw StructuralError("series needs at least one coefficient");
    table_ = c_.front().table();
    for (const auto& c : c_) require_same_table(table_, c.table());
  }

  static TruncSeries one(const SymbolTablePtr& table, std::size_t order) {
    TruncSeries s(table, order);
    s.c_[0] = RatFun::constant(table, 1);
    return s;
  }

  /// c·z^power, the zero series when power exceeds the order.
  static TruncSeries monomial(const RatFun& c, std::size_t power, std::size_t order) {
    TruncSeries s(c.table(), order);
    if (power <= order) s.c_[power] = c;
    return s;
  }

  const SymbolTablePtr& table() const noexcept { return table_; }
  std::size_t order() const noexcept { return c_.size() - 1; }
  const RatFun& operator[](std::size_t n) const { return c_.at(n); }
  const std::vector<RatFun>& coeffs() const noexcept { return c_; }
  void set(std::size_t n, RatFun v) {
    require_same_table(table_, v.table());
    c_.at(n) = std::move(v);
  }

  bool is_zero() const {
    for (const auto& c : c_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  TruncSeries truncated(std::size_t order) const {
    TruncSeries s(table_, order);
    for (std::size_t n = 0; n <= std::min(order, this->order()); ++n) s.c_[n] = c_[n];
    return s;
  }

  TruncSeries operator-() const {
    TruncSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  friend TruncSeries operator+(const TruncSeries& s, const TruncSeries& t) {
    require_same_table(s.table_, t.table_);
    TruncSeries r(s.table_, std::min(s.order(), t.order()));
    for (std::size_t n = 0; n <= r.order(); ++n) r.c_[n] = s.c_[n] + t.c_[n];
    return r;
  }

  friend TruncSeries operator-(const TruncSeries& s, const TruncSeries& t) { return s + (-t); }

  /// Truncated Cauchy product.
  friend TruncSeries operator*(const TruncSeries& s, const TruncSeries& t) {
    require_same_table(s.table_, t.table_);
    TruncSeries r(s.table_, std::min(s.order(), t.order()));
    for (std::size_t i = 0; i <= r.order(); ++i) {
      if (s.c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= r.order(); ++j) {
        if (t.c_[j].is_zero()) continue;
        r.c_[i + j] += s.c_[i] * t.c_[j];
      }
    }
    return r;
  }

  friend TruncSeries operator*(const TruncSeries& s, const RatFun& k) {
    require_same_table(s.table_, k.table());
    TruncSeries r = s;
    for (auto& c : r.c_) {
      if (!c.is_zero()) c *= k;
    }
    return r;
  }
  friend TruncSeries operator*(const RatFun& k, const TruncSeries& s) { return s * k; }

  TruncSeries& operator+=(const TruncSeries& t) { return *this = *this + t; }
  TruncSeries& operator-=(const TruncSeries& t) { return *this = *this - t; }
  TruncSeries& operator*=(const TruncSeries& t) { return *this = *this * t; }
  TruncSeries& operator*=(const RatFun& k) { return *this = *this * k; }

  /// Multiplicative inverse to the same order.
  TruncSeries inverse() const {
    if (c_[0].is_zero()) throw NonInvertibleError("series with zero constant term is not invertible");
    TruncSeries r(table_, order());
    RatFun inv0 = c_[0].inverse();
    r.c_[0] = inv0;
    for (std::size_t n = 1; n <= order(); ++n) {
      RatFun acc(table_);
      for (std::size_t i = 1; i <= n; ++i) {
        if (!c_[i].is_zero() && !r.c_[n - i].is_zero()) acc += c_[i] * r.c_[n - i];
      }
      r.c_[n] = -(acc * inv0);
    }
    return r;
  }

  /// z ↦ z·q^k, i.e. c_n ↦ c_n q^{kn}; k may be negative.
  TruncSeries shifted_q(long k) const {
    TruncSeries r = *this;
    if (k == 0) return r;
    for (std::size_t n = 1; n <= order(); ++n) {
      if (!r.c_[n].is_zero()) r.c_[n] *= q_power(table_, k * static_cast<long>(n));
    }
    return r;
  }

  /// Multiplication by z^e, keeping the order.
  TruncSeries times_zpow(std::size_t e) const {
    TruncSeries r(table_, order());
    for (std::size_t n = 0; n + e <= order(); ++n) r.c_[n + e] = c_[n];
    return r;
  }

  /// z^e times this series, widened to the given order. Exact only when
  /// order() + e >= order.
  TruncSeries lifted(std::size_t e, std::size_t order) const {
    if (this->order() + e < order) throw OrderError("lifted series would be missing coefficients");
    TruncSeries r(table_, order);
    for (std::size_t n = 0; n <= this->order() && n + e <= order; ++n) r.c_[n + e] = c_[n];
    return r;
  }

  /// Multiplication by (1 - w z^e).
  TruncSeries times_binomial(const RatFun& w, std::size_t e) const {
    if (e == 0) return *this * (RatFun::constant(table_, 1) - w);
    TruncSeries r = *this;
    if (w.is_zero()) return r;
    for (std::size_t n = e; n <= order(); ++n) {
      if (!c_[n - e].is_zero()) r.c_[n] -= w * c_[n - e];
    }
    return r;
  }

  /// Division by (1 - w z^e); for e = 0 the factor must be nonzero.
  TruncSeries over_binomial(const RatFun& w, std::size_t e) const {
    if (e == 0) {
      RatFun f = RatFun::constant(table_, 1) - w;
      if (f.is_zero()) throw ArithmeticError("pole: division by a vanishing factor");
      return *this * f.inverse();
    }
    TruncSeries r = *this;
    if (w.is_zero()) return r;
    for (std::size_t n = e; n <= order(); ++n) {
      if (!r.c_[n - e].is_zero()) r.c_[n] += w * r.c_[n - e];
    }
    return r;
  }

  /// Index of the first coefficient (up to the common order) where the two
  /// series differ, or nullopt when they agree.
  friend std::optional<std::size_t> first_difference(const TruncSeries& s, const TruncSeries& t) {
    require_same_table(s.table_, t.table_);
    for (std::size_t n = 0; n <= std::min(s.order(), t.order()); ++n) {
      if (!s.c_[n].equals(t.c_[n])) return n;
    }
    return std::nullopt;
  }

  bool equals(const TruncSeries& t) const { return !first_difference(*this, t); }

 private:
  SymbolTablePtr table_;
  std::vector<RatFun> c_;
};

/// c·z^zpow, the argument of a q-shifted factorial. With zpow = 0 the
/// factorial is a plain parameter product; with zpow ≥ 1 it is a z-series.
struct ZTerm {
  RatFun coef;
  std::size_t zpow;
};

inline TruncSeries series_invert(const TruncSeries& s) { return s.inverse(); }
inline TruncSeries shift_z_by_q_power(const TruncSeries& s, long k) { return s.shifted_q(k); }

/// (x;q)_n for a parameter x: the product of (1 - x q^i), i < n. Negative n
/// follows (x;q)_n = (x;q)_∞/(xq^n;q)_∞, i.e. 1/prod_{j=1}^{|n|}(1 - x q^{-j}).
inline RatFun param_poch(const RatFun& x, long n) {
  const auto& t = x.table();
  RatFun one = RatFun::constant(t, 1);
  RatFun r = one;
  if (n >= 0) {
    for (long i = 0; i < n; ++i) r *= one - x * q_power(t, i);
    return r;
  }
  for (long j = 1; j <= -n; ++j) {
    RatFun f = one - x * q_power(t, -j);
    if (f.is_zero()) throw ArithmeticError("pole: (x;q)_n with negative n has a vanishing factor");
    r /= f;
  }
  return r;
}

/// (x;q)_n as a series in z for x = c·z^e, any integer n.
inline TruncSeries qpoch(const ZTerm& x, long n, std::size_t order) {
  const auto& t = x.coef.table();
  if (x.zpow == 0) return TruncSeries::one(t, order) * param_poch(x.coef, n);
  TruncSeries s = TruncSeries::one(t, order);
  if (n >= 0) {
    for (long i = 0; i < n; ++i) s = s.times_binomial(x.coef * q_power(t, i), x.zpow);
  } else {
    for (long j = 1; j <= -n; ++j) s = s.over_binomial(x.coef * q_power(t, -j), x.zpow);
  }
  return s;
}

/// (cz;q)_n truncated at z^order.
inline TruncSeries pochhammer_finite(const RatFun& c, long n, std::size_t order) {
  return qpoch({c, 1}, n, order);
}

/// (c z^e;q)_∞ from Euler's expansion sum_m (-c)^m q^{m(m-1)/2} z^{em}/(q;q)_m.
inline TruncSeries pochhammer_infinite(const ZTerm& x, std::size_t order) {
  if (x.zpow == 0) throw StructuralError("infinite product of a z-free parameter is not a series");
  const auto& t = x.coef.table();
  TruncSeries s(t, order);
  RatFun term = RatFun::constant(t, 1);
  RatFun one = RatFun::constant(t, 1);
  for (std::size_t m = 0; m * x.zpow <= order; ++m) {
    if (m > 0) term *= (-x.coef) * q_power(t, static_cast<long>(m) - 1) / (one - q_power(t, static_cast<long>(m)));
    if (term.is_zero()) break;
    s.set(m * x.zpow, term);
  }
  return s;
}

inline TruncSeries pochhammer_infinite(const RatFun& c, std::size_t order) {
  return pochhammer_infinite(ZTerm{c, 1}, order);
}

/// 1/(c z^e;q)_∞ = sum_m c^m z^{em}/(q;q)_m.
inline TruncSeries inv_pochhammer_infinite(const ZTerm& x, std::size_t order) {
  if (x.zpow == 0) throw StructuralError("infinite product of a z-free parameter is not a series");
  const auto& t = x.coef.table();
  TruncSeries s(t, order);
  RatFun term = RatFun::constant(t, 1);
  RatFun one = RatFun::constant(t, 1);
  for (std::size_t m = 0; m * x.zpow <= order; ++m) {
    if (m > 0) term *= x.coef / (one - q_power(t, static_cast<long>(m)));
    if (term.is_zero()) break;
    s.set(m * x.zpow, term);
  }
  return s;
}

inline TruncSeries inv_pochhammer_infinite(const RatFun& c, std::size_t order) {
  return inv_pochhammer_infinite(ZTerm{c, 1}, order);
}

/// z^n (az;q)_n/(bz;q)_n.
inline TruncSeries base_element(std::size_t n, const RatFun& a, const RatFun& b, std::size_t order) {
  if (n > order) {
    throw OrderError("base element index " + std::to_string(n) + " exceeds order " + std::to_string(order));
  }
  const auto& t = a.table();
  require_same_table(t, b.table());
  TruncSeries s = TruncSeries::one(t, order - n);
  for (std::size_t i = 0; i < n; ++i) {
    RatFun qi = q_power(t, static_cast<long>(i));
    s = s.times_binomial(a * qi, 1).over_binomial(b * qi, 1);
  }
  TruncSeries r(t, order);
  for (std::size_t m = 0; m + n <= order; ++m) r.set(m + n, s[m]);
  return r;
}

/// Basic hypergeometric series: term k is
///   prod (u;q)_k / ((q;q)_k prod (l;q)_k) · arg^k,
/// where each parameter may itself carry a power of z. The argument must
/// carry at least one power of z so the sum truncates.
inline TruncSeries qhyper(const std::vector<ZTerm>& uppers, const std::vector<ZTerm>& lowers, const ZTerm& arg,
                          std::size_t order) {
  if (arg.zpow == 0) throw StructuralError("hypergeometric argument must contain z");
  const auto& t = arg.coef.table();
  RatFun one = RatFun::constant(t, 1);
  RatFun scalar = one;
  TruncSeries zpart = TruncSeries::one(t, order);
  TruncSeries result(t, order);
  for (std::size_t k = 0; k * arg.zpow <= order; ++k) {
    if (k > 0) {
      RatFun qk1 = q_power(t, static_cast<long>(k) - 1);
      for (const auto& u : uppers) {
        if (u.zpow == 0) {
          scalar *= one - u.coef * qk1;
        } else {
          zpart = zpart.times_binomial(u.coef * qk1, u.zpow);
        }
      }
      for (std::size_t j = 0; j < lowers.size(); ++j) {
        const auto& l = lowers[j];
        if (l.zpow == 0) {
          RatFun f = one - l.coef * qk1;
          if (f.is_zero()) {
            throw ArithmeticError("pole: lower parameter #" + std::to_string(j + 1) + " (" + to_string(l.coef) +
                                  ") vanishes in (l;q)_k at k = " + std::to_string(k));
          }
          scalar /= f;
        } else {
          zpart = zpart.over_binomial(l.coef * qk1, l.zpow);
        }
      }
      scalar /= one - q_power(t, static_cast<long>(k));
      scalar *= arg.coef;
    }
    if (scalar.is_zero()) break;
    result += (zpart * scalar).times_zpow(k * arg.zpow);
  }
  return result;
}

/// r+1 phi r with z-free parameters and argument c·z.
inline TruncSeries qhyper(const std::vector<RatFun>& uppers, const std::vector<RatFun>& lowers, const RatFun& c,
                          std::size_t order) {
  std::vector<ZTerm> u, l;
  for (const auto& x : uppers) u.push_back({x, 0});
  for (const auto& x : lowers) l.push_back({x, 0});
  return qhyper(u, l, ZTerm{c, 1}, order);
}

/// sum_k (-1)^k q^{B k(k-1)/2} c^k z^{pk}. (B, c, p) = (1, 1, 1) is the
/// partial theta function θ(z;q); (2, q, 2) gives sum (-1)^k z^{2k} q^{k²}.
inline TruncSeries partial_theta(unsigned baseexp, const RatFun& c, std::size_t p, std::size_t order) {
  if (baseexp == 0 || p == 0) throw StructuralError("partial theta needs positive base exponent and stride");
  const auto& t = c.table();
  TruncSeries s(t, order);
  RatFun term = RatFun::constant(t, 1);
  for (std::size_t k = 0; k * p <= order; ++k) {
    if (k > 0) term *= -c * q_power(t, static_cast<long>(baseexp * (k - 1)));
    if (term.is_zero()) break;
    s.set(k * p, term);
  }
  return s;
}

}  // namespace qexp

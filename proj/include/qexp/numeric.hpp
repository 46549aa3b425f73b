#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qexp/bigreal.hpp"
#include "qexp/series.hpp"

namespace qexp {

/// Ordered parameter assignment, e.g. {{"q", "0.1"}, {"z", "0.2"}}.
using NumericPoint = std::vector<std::pair<std::string, std::string>>;

struct NumericReport {
  std::string name;
  NumericPoint point;
  BigComplex lhs, rhs;
  BigReal abs_diff, tolerance;
  mpfr_prec_t precision = BigReal::kDefaultPrecision;
  std::size_t terms = 0;  // series terms summed across both sides
  bool passed = false;
};

/// Marker for n = ∞ in qpoch_num.
inline constexpr std::optional<long> kInfinite = std::nullopt;

struct PochValue {
  BigComplex value;
  BigReal tail_bound;  // bound on |log of the omitted factors|
  std::size_t factors = 0;
};

/// (c;q)_∞ with the product cut once |c q^i| drops below 2^-(prec+16).
/// The omitted factors satisfy |log remainder| <= sum_{i>=I} |cq^i|/(1 - |cq^i|),
/// bounded by |cq^I| / ((1 - |q|)(1 - |cq^I|)).
inline PochValue qpoch_infinite_num(const BigComplex& c, const BigComplex& q) {
  const mpfr_prec_t prec = std::max(c.precision(), q.precision());
  BigReal aq = abs(q);
  BigReal one(1, prec);
  if (aq >= one) throw DomainError("(c;q)_∞ needs |q| < 1");
  BigReal cutoff = BigReal::power_of_two(-(static_cast<long>(prec) + 16), prec);
  BigComplex value(1, prec), cq = c;
  std::size_t i = 0;
  while (abs(cq) >= cutoff) {
    value *= BigComplex(1, prec) - cq;
    cq *= q;
    if (++i > 1000000) throw ArithmeticError("infinite product did not reach its cutoff");
  }
  BigReal m = abs(cq);
  BigReal bound = c.is_zero() ? BigReal(prec) : m / ((one - aq) * (one - m));
  return {value, bound, i};
}

/// (c;q)_n for any integer n, or n = ∞ (kInfinite).
inline BigComplex qpoch_num(const BigComplex& c, std::optional<long> n, const BigComplex& q) {
  if (!n) return qpoch_infinite_num(c, q).value;
  const mpfr_prec_t prec = std::max(c.precision(), q.precision());
  BigComplex one(1, prec), r(1, prec);
  if (*n >= 0) {
    BigComplex cq = c;
    for (long i = 0; i < *n; ++i) {
      r *= one - cq;
      cq *= q;
    }
    return r;
  }
  BigComplex qinv = one / q, cq = c * qinv;
  for (long j = 1; j <= -*n; ++j) {
    BigComplex f = one - cq;
    if (f.is_zero()) throw ArithmeticError("pole: (c;q)_n with negative n has a vanishing factor");
    r /= f;
    cq *= qinv;
  }
  return r;
}

namespace detail {

/// Accumulates series terms; done once 5 consecutive terms fall below tol/100.
class SeriesSummer {
 public:
  SeriesSummer(const BigReal& tol, mpfr_prec_t prec) : threshold_(tol / BigReal(100, prec)), sum_(prec) {}

  bool add(const BigComplex& term) {
    sum_ += term;
    ++count_;
    small_run_ = abs(term) < threshold_ ? small_run_ + 1 : 0;
    if (count_ > kMaxTerms) throw ArithmeticError("series did not converge within the term limit");
    return small_run_ >= 5;
  }

  const BigComplex& sum() const noexcept { return sum_; }
  std::size_t count() const noexcept { return count_; }

 private:
  static constexpr std::size_t kMaxTerms = 2000000;
  BigReal threshold_;
  BigComplex sum_;
  std::size_t count_ = 0;
  std::size_t small_run_ = 0;
};

class PointValues {
 public:
  PointValues(const NumericPoint& point, mpfr_prec_t prec) {
    for (const auto& [k, v] : point) values_.insert_or_assign(k, BigComplex(BigReal::parse(v, prec)));
  }

  const BigComplex& at(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw DomainError("point is missing a value for '" + name + "'");
    return it->second;
  }

 private:
  std::map<std::string, BigComplex> values_;
};

inline void require_unit_disc(const BigComplex& x, const char* what) {
  if (abs(x) >= BigReal(1, x.precision())) throw DomainError(std::string("convergence needs |") + what + "| < 1");
}

inline NumericReport finish(std::string name, NumericPoint point, BigComplex lhs, BigComplex rhs, const BigReal& tol,
                            mpfr_prec_t prec, std::size_t terms) {
  BigReal diff = abs(lhs - rhs);
  bool ok = diff <= tol;
  return {std::move(name), std::move(point), std::move(lhs), std::move(rhs), std::move(diff), tol, prec, terms, ok};
}

}  // namespace detail

/// (1-z) sum z^n (aq;q)_n/(bq;q)_n
///   = sum (1 - azq^{2n+1}) (bz)^n q^{n²} (aq, azq/b;q)_n/(bq, zq;q)_n,  |z| < 1.
inline NumericReport rogers_fine_numeric(const NumericPoint& point, const BigReal& tol, mpfr_prec_t prec) {
  detail::PointValues p(point, prec);
  const auto &q = p.at("q"), &a = p.at("a"), &b = p.at("b"), &z = p.at("z");
  detail::require_unit_disc(q, "q");
  detail::require_unit_disc(z, "z");
  if (b.is_zero()) throw DomainError("rogers_fine needs b != 0");
  BigComplex one(1, prec);

  detail::SeriesSummer left(tol, prec);
  BigComplex term(1, prec), qn = q;
  while (!left.add(term)) {
    term *= z * (one - a * qn) / (one - b * qn);
    qn *= q;
  }
  BigComplex lhs = (one - z) * left.sum();

  detail::SeriesSummer right(tol, prec);
  BigComplex c = a * z * q / b;
  BigComplex prod(1, prec);  // (bz)^n q^{n²} (aq, azq/b)_n/(bq, zq)_n
  BigComplex qpow(1, prec);  // q^n
  for (long n = 0;; ++n) {
    if (n > 0) {
      BigComplex qn1 = qpow;  // q^{n-1}
      qpow *= q;
      prod *= b * z * qn1 * qn1 * q * (one - a * qpow) * (one - c * qn1) / ((one - b * qpow) * (one - z * qpow));
    }
    if (right.add((one - a * z * qpow * qpow * q) * prod)) break;
  }
  return detail::finish("rogers_fine", point, lhs, right.sum(), tol, prec, left.count() + right.count());
}

/// sum z^n (z;q)_n/(-z;q)_{n+1} = sum (-1)^n z^{2n} q^{n²},  |z| < 1.
inline NumericReport coogan_ono_numeric(const NumericPoint& point, const BigReal& tol, mpfr_prec_t prec) {
  detail::PointValues p(point, prec);
  const auto &q = p.at("q"), &z = p.at("z");
  detail::require_unit_disc(q, "q");
  detail::require_unit_disc(z, "z");
  BigComplex one(1, prec);
  detail::SeriesSummer left(tol, prec);
  BigComplex term = one / (one + z), zq = z;
  while (!left.add(term)) {
    term *= z * (one - zq) / (one + zq * q);
    zq *= q;
  }
  detail::SeriesSummer right(tol, prec);
  BigComplex t(1, prec), q2n1 = q;  // q^{2n+1}
  while (!right.add(t)) {
    t *= -(z * z) * q2n1;
    q2n1 *= q * q;
  }
  return detail::finish("coogan_ono", point, left.sum(), right.sum(), tol, prec, left.count() + right.count());
}

/// sum z^n (z;q)_{n+1}/(-zq;q)_n = 1 + 2 sum_{n>=1} (-1)^n z^{2n} q^{n²},  |z| < 1.
inline NumericReport coogan_ono_variant_numeric(const NumericPoint& point, const BigReal& tol, mpfr_prec_t prec) {
  detail::PointValues p(point, prec);
  const auto &q = p.at("q"), &z = p.at("z");
  detail::require_unit_disc(q, "q");
  detail::require_unit_disc(z, "z");
  BigComplex one(1, prec);
  detail::SeriesSummer left(tol, prec);
  BigComplex term = one - z, zq = z * q;
  while (!left.add(term)) {
    term *= z * (one - zq) / (one + zq);
    zq *= q;
  }
  detail::SeriesSummer right(tol, prec);
  BigComplex t(1, prec), q2n1 = q;
  BigComplex two(2, prec);
  right.add(one);
  while (true) {
    t *= -(z * z) * q2n1;
    q2n1 *= q * q;
    if (right.add(two * t)) break;
  }
  return detail::finish("coogan_ono_variant", point, left.sum(), right.sum(), tol, prec,
                        left.count() + right.count());
}

/// sum_{k in Z} (a;q)_k/(b;q)_k z^k = (az, q/az, q, b/a;q)_∞/(z, b/az, b, q/a;q)_∞,
/// |b/a| < |z| < 1. The sum is split into k >= 0 and k <= -1, the latter with
/// (x;q)_{-j} = 1/prod_{i=1}^{j} (1 - x q^{-i}).
inline NumericReport ramanujan_1psi1_numeric(const NumericPoint& point, const BigReal& tol, mpfr_prec_t prec) {
  detail::PointValues p(point, prec);
  const auto &q = p.at("q"), &a = p.at("a"), &b = p.at("b"), &z = p.at("z");
  detail::require_unit_disc(q, "q");
  detail::require_unit_disc(z, "z");
  if (a.is_zero()) throw DomainError("ramanujan_1psi1 needs a != 0");
  if (!(abs(b / a) < abs(z))) throw DomainError("ramanujan_1psi1 needs |b/a| < |z|");
  BigComplex one(1, prec);

  detail::SeriesSummer pos(tol, prec);
  BigComplex term(1, prec), qk(1, prec);
  while (!pos.add(term)) {
    term *= z * (one - a * qk) / (one - b * qk);
    qk *= q;
  }
  detail::SeriesSummer neg(tol, prec);
  BigComplex qinv = one / q, qmj = qinv, t(1, prec);
  while (true) {
    BigComplex den = one - a * qmj;
    if (den.is_zero()) throw DomainError("ramanujan_1psi1: a q^{-j} = 1 makes the negative tail singular");
    t *= (one - b * qmj) / (den * z);
    qmj *= qinv;
    if (neg.add(t)) break;
  }
  BigComplex lhs = pos.sum() + neg.sum();

  auto inf = [&](const BigComplex& c) { return qpoch_num(c, kInfinite, q); };
  BigComplex rhs = inf(a * z) * inf(q / (a * z)) * inf(q) * inf(b / a) /
                   (inf(z) * inf(b / (a * z)) * inf(b) * inf(q / a));
  return detail::finish("ramanujan_1psi1", point, lhs, rhs, tol, prec, pos.count() + neg.count());
}

/// [m choose n]_q.
inline BigComplex q_binomial_num(long m, long n, const BigComplex& q) {
  return qpoch_num(q, m, q) / (qpoch_num(q, n, q) * qpoch_num(q, m - n, q));
}

/// The finite theta sum obtained at z = q^{-m}:
///   sum_{n=0}^{m} P_n q^{3n²/2 + n/2 - 2nm}
///     = sum_{n=0}^{m} P_n q^{3n²/2 - n/2 - 2nm} (1 + q^n + q^{n-m} - q^{2n-m}) θ(q^{2n-2m+1}; q²),
/// P_n = (-1;q)_n/(-q^{1-m};q)_n [m choose n]_q, θ(x; p) = sum_k (-1)^k p^{k(k-1)/2} x^k.
/// Requires 0 < q < 1 and m >= 1.
inline NumericReport check_qqq(long m, const std::string& q_text, const BigReal& tol, mpfr_prec_t prec) {
  if (m < 1) throw DomainError("finite theta sum needs m >= 1");
  BigReal qr = BigReal::parse(q_text, prec);
  if (!(qr > BigReal(prec)) || !(qr < BigReal(1, prec))) throw DomainError("finite theta sum needs 0 < q < 1");
  BigComplex q(qr), one(1, prec);
  auto qp = [&](long e) { return pow(q, e); };
  BigComplex lhs(prec), rhs(prec);
  std::size_t terms = 0;
  for (long n = 0; n <= m; ++n) {
    BigComplex pn = qpoch_num(-one, n, q) / qpoch_num(-qp(1 - m), n, q) * q_binomial_num(m, n, q);
    lhs += pn * qp((3 * n * n + n) / 2 - 2 * n * m);
    // θ(q^{2n-2m+1}; q²) = sum_k (-1)^k q^{k² + (2n-2m)k}
    detail::SeriesSummer theta(tol, prec);
    for (long k = 0;; ++k) {
      BigComplex tk = qp(k * k + (2 * n - 2 * m) * k);
      if (k % 2) tk = -tk;
      if (theta.add(tk)) break;
    }
    terms += theta.count();
    rhs += pn * qp((3 * n * n - n) / 2 - 2 * n * m) * (one + qp(n) + qp(n - m) - qp(2 * n - m)) * theta.sum();
  }
  return detail::finish("finite_theta_sum", {{"m", std::to_string(m)}, {"q", q_text}}, lhs, rhs, tol, prec, terms);
}

inline const std::vector<std::string>& numeric_identity_names() {
  static const std::vector<std::string> names{"coogan_ono", "coogan_ono_variant", "finite_theta_sum",
                                              "ramanujan_1psi1", "rogers_fine"};
  return names;
}

/// Dispatches on the identity name. finite_theta_sum takes "m" and "q".
inline NumericReport check_identity_numeric(const std::string& name, const NumericPoint& point, const BigReal& tol,
                                            mpfr_prec_t prec) {
  if (name == "rogers_fine") return rogers_fine_numeric(point, tol, prec);
  if (name == "coogan_ono") return coogan_ono_numeric(point, tol, prec);
  if (name == "coogan_ono_variant") return coogan_ono_variant_numeric(point, tol, prec);
  if (name == "ramanujan_1psi1") return ramanujan_1psi1_numeric(point, tol, prec);
  if (name == "finite_theta_sum") {
    std::string m, q;
    for (const auto& [k, v] : point) {
      if (k == "m") m = v;
      if (k == "q") q = v;
    }
    if (m.empty() || q.empty()) throw DomainError("finite_theta_sum needs 'm' and 'q'");
    long mv = 0;
    try {
      mv = std::stol(m);
    } catch (const std::exception&) {
      throw ParseError("m must be an integer, got '" + m + "'");
    }
    return check_qqq(mv, q, tol, prec);
  }
  throw StructuralError("unknown numeric identity '" + name + "'");
}

/// Points used by verify-all and the acceptance run.
inline std::vector<std::pair<std::string, NumericPoint>> default_numeric_grid() {
  return {
      {"coogan_ono", {{"q", "0.3"}, {"z", "0.4"}}},
      {"coogan_ono", {{"q", "0.5"}, {"z", "-0.7"}}},
      {"coogan_ono", {{"q", "0.1"}, {"z", "0.9"}}},
      {"coogan_ono_variant", {{"q", "0.3"}, {"z", "0.4"}}},
      {"coogan_ono_variant", {{"q", "0.5"}, {"z", "-0.7"}}},
      {"coogan_ono_variant", {{"q", "0.1"}, {"z", "0.9"}}},
      {"finite_theta_sum", {{"m", "1"}, {"q", "1/2"}}},
      {"finite_theta_sum", {{"m", "1"}, {"q", "1/3"}}},
      {"finite_theta_sum", {{"m", "2"}, {"q", "1/2"}}},
      {"finite_theta_sum", {{"m", "2"}, {"q", "1/3"}}},
      {"finite_theta_sum", {{"m", "3"}, {"q", "1/2"}}},
      {"finite_theta_sum", {{"m", "3"}, {"q", "1/3"}}},
      {"ramanujan_1psi1", {{"q", "0.2"}, {"a", "2"}, {"b", "0.1"}, {"z", "0.5"}}},
      {"ramanujan_1psi1", {{"q", "0.2"}, {"a", "2"}, {"b", "0.1"}, {"z", "0.4"}}},
      {"ramanujan_1psi1", {{"q", "0.3"}, {"a", "3"}, {"b", "0.5"}, {"z", "0.6"}}},
      {"ramanujan_1psi1", {{"q", "0.5"}, {"a", "-2"}, {"b", "0.3"}, {"z", "-0.4"}}},
      {"rogers_fine", {{"q", "0.1"}, {"a", "0.3"}, {"b", "0.5"}, {"z", "0.2"}}},
      {"rogers_fine", {{"q", "0.3"}, {"a", "-0.4"}, {"b", "0.2"}, {"z", "0.5"}}},
      {"rogers_fine", {{"q", "0.5"}, {"a", "0.7"}, {"b", "-0.3"}, {"z", "-0.6"}}},
  };
}

// ---------------------------------------------------------------------------
// Numeric cross-check of symbolic series.

/// Exact value of a decimal ("-0.25", "3e-2") or fraction ("1/3") literal.
inline BigRational parse_exact_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigRational d = parse_exact_rational(text.substr(slash + 1));
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return parse_exact_rational(text.substr(0, slash)) / d;
  }
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  BigInt mant = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      digits = true;
      if (dot) --scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw ParseError("not a number: '" + text + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw ParseError("not a number: '" + text + "'");
    try {
      std::size_t used = 0;
      scale += std::stol(text.substr(i + 1), &used);
      if (i + 1 + used != text.size()) throw ParseError("not a number: '" + text + "'");
    } catch (const std::logic_error&) {
      throw ParseError("not a number: '" + text + "'");
    }
  }
  BigRational r(mant);
  BigRational ten(10);
  for (long s = scale; s > 0; --s) r *= ten;
  for (long s = scale; s < 0; ++s) r /= ten;
  return negative ? BigRational(-r) : r;
}

enum class SpotStatus { passed, failed, inconclusive };

inline const char* spot_status_name(SpotStatus s) {
  switch (s) {
    case SpotStatus::passed: return "passed";
    case SpotStatus::failed: return "failed";
    case SpotStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct SpotCheck {
  SpotStatus status;
  BigComplex series_value, closed_value;
  BigReal abs_diff, tail_estimate;
};

/// Sums c_n(point) z^n and compares it with `closed_form(point values)`.
/// The truncation tail is estimated geometrically from the last three
/// coefficients; when it exceeds tol the verdict is inconclusive.
inline SpotCheck spot_check_series(const TruncSeries& s, const NumericPoint& point,
                                   const std::function<BigComplex(const std::map<std::string, BigComplex>&)>& closed_form,
                                   const BigReal& tol, mpfr_prec_t prec) {
  std::vector<std::pair<std::string, BigRational>> exact;
  std::map<std::string, BigComplex> values;
  BigRational zval = 0;
  bool have_z = false;
  for (const auto& [k, v] : point) {
    BigRational r = parse_exact_rational(v);
    values.insert_or_assign(k, BigComplex(BigReal::from_rational(r, prec)));
    if (k == "z") {
      zval = r;
      have_z = true;
    } else {
      exact.emplace_back(k, r);
    }
  }
  if (!have_z) throw DomainError("spot check needs a value for z");
  BigComplex z = values.at("z");
  BigComplex sum(prec), zn(1, prec);
  std::vector<BigReal> mags;
  for (std::size_t n = 0; n <= s.order(); ++n) {
    BigComplex c(BigReal::from_rational(eval_rational(s[n], exact), prec));
    BigComplex term = c * zn;
    sum += term;
    mags.push_back(abs(term));
    zn *= z;
  }
  // Tail from the nonzero terms among the last three.
  std::vector<std::pair<std::size_t, BigReal>> last;
  for (std::size_t n = s.order() >= 2 ? s.order() - 2 : 0; n <= s.order(); ++n) {
    if (!mags[n].is_zero()) last.emplace_back(n, mags[n]);
  }
  BigReal tail(prec);
  bool unbounded = false;
  if (last.size() == 1) {
    tail = last[0].second * BigReal(2, prec);
  } else if (last.size() >= 2) {
    const auto& [i, mi] = last[last.size() - 2];
    const auto& [j, mj] = last.back();
    BigReal ratio = mj / mi;
    BigReal r(prec);
    mpfr_rootn_ui(r.get(), ratio.get(), static_cast<unsigned long>(j - i), MPFR_RNDN);
    if (r >= BigReal(1, prec)) {
      unbounded = true;
    } else {
      tail = mj * r / (BigReal(1, prec) - r);
    }
  }
  BigComplex closed = closed_form(values);
  BigReal diff = abs(sum - closed);
  SpotStatus st;
  if (unbounded || tail > tol) {
    st = SpotStatus::inconclusive;
  } else {
    st = diff <= tol ? SpotStatus::passed : SpotStatus::failed;
  }
  return {st, sum, closed, diff, unbounded ? BigReal::power_of_two(1024, prec) : tail};
}

}  // namespace qexp

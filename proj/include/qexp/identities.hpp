#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qexp/inversion.hpp"
#include "qexp/random.hpp"
#include "qexp/text.hpp"

namespace qexp {

using ParameterList = std::vector<std::pair<std::string, std::string>>;

struct FirstFailure {
  std::size_t index;                  // z-power, or matrix row
  std::optional<std::size_t> column;  // matrix column for entrywise checks
  std::string lhs;
  std::string rhs;
};

struct IdentityReport {
  std::string name;
  ParameterList parameters;
  std::size_t order = 0;
  bool passed = true;
  std::optional<FirstFailure> first_failure;
};

/// An identity LHS = sum of RHS terms, both sides truncated at the same order.
struct IdentityInstance {
  std::string name;
  ParameterList parameters;
  TruncSeries lhs;
  std::vector<TruncSeries> rhs_terms;
};

inline std::optional<std::size_t> lowest_nonzero(const TruncSeries& s) {
  for (std::size_t n = 0; n <= s.order(); ++n) {
    if (!s[n].is_zero()) return n;
  }
  return std::nullopt;
}

inline IdentityReport compare_series(std::string name, ParameterList params, const TruncSeries& lhs,
                                     const TruncSeries& rhs) {
  IdentityReport r{std::move(name), std::move(params), std::min(lhs.order(), rhs.order()), true, std::nullopt};
  if (auto d = first_difference(lhs, rhs)) {
    r.passed = false;
    r.first_failure = FirstFailure{*d, std::nullopt, to_string(lhs[*d]), to_string(rhs[*d])};
  }
  return r;
}

/// Sums the RHS terms, optionally multiplying one of them by (1 + q) to
/// check that the comparison notices.
inline TruncSeries rhs_total(const IdentityInstance& inst, std::optional<std::size_t> perturb = std::nullopt) {
  const auto& t = inst.lhs.table();
  TruncSeries sum(t, inst.lhs.order());
  for (std::size_t j = 0; j < inst.rhs_terms.size(); ++j) {
    if (perturb && *perturb == j) {
      sum += inst.rhs_terms[j] * (RatFun::constant(t, 1) + q_power(t, 1));
    } else {
      sum += inst.rhs_terms[j];
    }
  }
  return sum;
}

inline IdentityReport evaluate(const IdentityInstance& inst, std::optional<std::size_t> perturb = std::nullopt) {
  return compare_series(inst.name, inst.parameters, inst.lhs, rhs_total(inst, perturb));
}

namespace detail {

inline ZTerm zmul(const ZTerm& x, const ZTerm& y) { return {x.coef * y.coef, x.zpow + y.zpow}; }

inline ZTerm zdiv(const ZTerm& x, const ZTerm& y) {
  if (y.zpow > x.zpow) throw StructuralError("quotient of z-terms would carry a negative power of z");
  return {x.coef / y.coef, x.zpow - y.zpow};
}

inline ZTerm zscale(const ZTerm& x, const RatFun& c) { return {x.coef * c, x.zpow}; }

/// s / (x;q)_n for n >= 0.
inline TruncSeries divide_poch(TruncSeries s, const ZTerm& x, long n) {
  const auto& t = x.coef.table();
  if (x.zpow == 0) return s * param_poch(x.coef, n).inverse();
  for (long i = 0; i < n; ++i) s = s.over_binomial(x.coef * q_power(t, i), x.zpow);
  return s;
}

inline TruncSeries ones_series(const SymbolTablePtr& t, std::size_t order) {
  TruncSeries s(t, order);
  for (std::size_t n = 0; n <= order; ++n) s.set(n, RatFun::constant(t, 1));
  return s;
}

inline RatFun sym(const SymbolTablePtr& t, const char* name) { return RatFun::symbol(t, name); }

}  // namespace detail

/// sum z^n (z;q)_n/(-z;q)_{n+1} = sum (-1)^n z^{2n} q^{n²}.
inline IdentityInstance build_coogan_ono(std::size_t order) {
  auto t = make_symbols({"q"});
  RatFun one = RatFun::constant(t, 1);
  TruncSeries lhs(t, order);
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    TruncSeries s = detail::divide_poch(qpoch({one, 1}, static_cast<long>(n), rest), {-one, 1}, static_cast<long>(n) + 1);
    lhs += s.lifted(n, order);
  }
  return {"coogan_ono", {}, lhs, {partial_theta(2, q_power(t, 1), 2, order)}};
}

/// sum z^n (z;q)_{n+1}/(-zq;q)_n = 1 + 2 sum_{n>=1} (-1)^n z^{2n} q^{n²}.
inline IdentityInstance build_coogan_ono_variant(std::size_t order) {
  auto t = make_symbols({"q"});
  RatFun one = RatFun::constant(t, 1);
  RatFun q = q_power(t, 1);
  TruncSeries lhs(t, order);
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    TruncSeries s = detail::divide_poch(qpoch({one, 1}, static_cast<long>(n) + 1, rest), {-q, 1}, static_cast<long>(n));
    lhs += s.lifted(n, order);
  }
  TruncSeries theta = partial_theta(2, q, 2, order);
  return {"coogan_ono_variant", {}, lhs, {theta * RatFun::constant(t, 2), TruncSeries::one(t, order) * (-one)}};
}

/// Rogers–Fine:
///   (1-z) sum z^n (aq;q)_n/(bq;q)_n
///     = sum (1 - azq^{2n+1}) (bz)^n q^{n²} (aq, azq/b;q)_n/(bq, zq;q)_n.
/// a and b may carry powers of z, which turns their factorials into
/// z-series; (zq;q)_n is always a z-series.
inline IdentityInstance build_rogers_fine(const ZTerm& a, const ZTerm& b, std::size_t order, std::string name,
                                          ParameterList params) {
  const auto& t = a.coef.table();
  RatFun q = q_power(t, 1);
  ZTerm aq = detail::zscale(a, q);
  ZTerm bq = detail::zscale(b, q);
  ZTerm z{RatFun::constant(t, 1), 1};
  ZTerm azq_b = detail::zdiv(detail::zmul(aq, z), b);
  ZTerm zq{q, 1};

  TruncSeries sum(t, order);
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    TruncSeries s = detail::divide_poch(qpoch(aq, static_cast<long>(n), rest), bq, static_cast<long>(n));
    sum += s.lifted(n, order);
  }
  TruncSeries lhs = sum.times_binomial(RatFun::constant(t, 1), 1);

  std::vector<TruncSeries> rhs;
  const std::size_t bz_pow = b.zpow + 1;
  for (std::size_t n = 0; n * bz_pow <= order; ++n) {
    std::size_t shift = n * bz_pow;
    std::size_t rest = order - shift;
    long nl = static_cast<long>(n);
    TruncSeries s = qpoch(aq, nl, rest) * qpoch(azq_b, nl, rest);
    s = detail::divide_poch(std::move(s), bq, nl);
    s = detail::divide_poch(std::move(s), zq, nl);
    s = s.times_binomial(a.coef * q_power(t, 2 * nl + 1), a.zpow + 1);
    s = s * (b.coef.pow(static_cast<int>(n)) * q_power(t, nl * nl));
    rhs.push_back(s.lifted(shift, order));
  }
  return {std::move(name), std::move(params), lhs, std::move(rhs)};
}

inline IdentityInstance build_rogers_fine(std::size_t order) {
  auto t = make_symbols({"q", "a", "b"});
  return build_rogers_fine({detail::sym(t, "a"), 0}, {detail::sym(t, "b"), 0}, order, "rogers_fine",
                           {{"a", "a"}, {"b", "b"}});
}

/// The general transformation: for G = sum t_k z^k,
///   (az;q)_∞/(bz;q)_∞ G(z) = sum_n (aq/b;q)_n/(q;q)_n b^n q^{n(n-1)} z^n (az;q)_n/(bz;q)_n
///       × (Gt(zq^n; a, b) - a z q^{2n} Gt(zq^{n+1}; a/q, b/q)),
/// Gt(z; a, b) = sum t_k z^k (az;q)_k/(bz;q)_k.
inline IdentityInstance build_general_transform(const std::vector<RatFun>& tk, const RatFun& a, const RatFun& b,
                                                std::size_t order, std::string name, ParameterList params) {
  const auto& t = a.table();
  RatFun q = q_power(t, 1);
  TruncSeries g(t, order);
  for (std::size_t k = 0; k <= order && k < tk.size(); ++k) g.set(k, tk[k]);
  TruncSeries lhs = pochhammer_infinite(a, order) * inv_pochhammer_infinite(b, order) * g;

  RatFun aq_ = a / q, bq_ = b / q;
  TruncSeries gt1(t, order), gt2(t, order);
  for (std::size_t k = 0; k <= order && k < tk.size(); ++k) {
    if (tk[k].is_zero()) continue;
    gt1 += base_element(k, a, b, order) * tk[k];
    gt2 += base_element(k, aq_, bq_, order) * tk[k];
  }
  RatFun aqb = a * q / b;
  std::vector<TruncSeries> rhs;
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    long nl = static_cast<long>(n);
    RatFun scalar = param_poch(aqb, nl) / param_poch(q, nl) * b.pow(static_cast<int>(n)) * q_power(t, nl * (nl - 1));
    TruncSeries ratio = poch_ratio(a, nl, b, nl, rest);
    TruncSeries inner = gt1.shifted_q(nl).truncated(rest) -
                        gt2.shifted_q(nl + 1).truncated(rest).times_zpow(1) * (a * q_power(t, 2 * nl));
    rhs.push_back((ratio * inner * scalar).lifted(n, order));
  }
  return {std::move(name), std::move(params), lhs, std::move(rhs)};
}

inline IdentityInstance build_general_transform_unit(std::size_t order) {
  auto t = make_symbols({"q", "a", "b"});
  std::vector<RatFun> tk{RatFun::constant(t, 1)};
  return build_general_transform(tk, detail::sym(t, "a"), detail::sym(t, "b"), order, "general_transform_unit",
                                 {{"a", "a"}, {"b", "b"}, {"t", "1, 0, 0, ..."}});
}

/// t_k = (A;q)_k/(q;q)_k B^k, i.e. G(z) = (ABz;q)_∞/(Bz;q)_∞.
inline IdentityInstance build_general_transform_3phi2(std::size_t order) {
  auto t = make_symbols({"q", "a", "b", "A", "B"});
  RatFun q = q_power(t, 1), A = detail::sym(t, "A"), B = detail::sym(t, "B");
  std::vector<RatFun> tk;
  for (std::size_t k = 0; k <= order; ++k) {
    long kl = static_cast<long>(k);
    tk.push_back(param_poch(A, kl) / param_poch(q, kl) * B.pow(static_cast<int>(k)));
  }
  return build_general_transform(tk, detail::sym(t, "a"), detail::sym(t, "b"), order, "general_transform_3phi2",
                                 {{"a", "a"}, {"b", "b"}, {"t", "(A;q)_k/(q;q)_k B^k"}});
}

inline IdentityInstance build_general_transform_random(std::size_t order, std::uint64_t seed) {
  auto t = make_symbols({"q", "a", "b"});
  DeterministicRng rng(derive_seed(seed, "general_transform_random"));
  std::vector<RatFun> tk;
  for (std::size_t k = 0; k <= order; ++k) tk.push_back(random_rational(t, rng));
  return build_general_transform(tk, detail::sym(t, "a"), detail::sym(t, "b"), order, "general_transform_random",
                                 {{"a", "a"}, {"b", "b"}, {"seed", std::to_string(seed)}});
}

/// The r+1 phi r transformation in its pre-limit form:
///   (azq;q)_∞/(bz;q)_∞ phi(uppers; lowers; cz)
///     = sum_n (aq/b;q)_n/(q;q)_n b^n q^{n(n-1)} z^n (az;q)_n/(bz;q)_n (1 - azq^{2n})/(1 - az) H_n,
///   H_n = phi(azq^n, azq^{2n+1}, uppers; bzq^n, azq^{2n}, lowers; czq^n).
inline IdentityInstance build_phi_transform(const std::vector<RatFun>& uppers, const std::vector<RatFun>& lowers,
                                            const RatFun& a, const RatFun& b, const RatFun& c, std::size_t order,
                                            std::string name, ParameterList params) {
  const auto& t = a.table();
  RatFun q = q_power(t, 1);
  if (uppers.size() != lowers.size() + 1) throw StructuralError("need r+1 upper and r lower parameters");
  TruncSeries lhs = pochhammer_infinite(a * q, order) * inv_pochhammer_infinite(b, order) *
                    qhyper(uppers, lowers, c, order);
  RatFun aqb = a * q / b;
  std::vector<TruncSeries> rhs;
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    long nl = static_cast<long>(n);
    RatFun scalar = param_poch(aqb, nl) / param_poch(q, nl) * b.pow(static_cast<int>(n)) * q_power(t, nl * (nl - 1));
    std::vector<ZTerm> up{{a * q_power(t, nl), 1}, {a * q_power(t, 2 * nl + 1), 1}};
    std::vector<ZTerm> low{{b * q_power(t, nl), 1}, {a * q_power(t, 2 * nl), 1}};
    for (const auto& u : uppers) up.push_back({u, 0});
    for (const auto& l : lowers) low.push_back({l, 0});
    TruncSeries h = qhyper(up, low, ZTerm{c * q_power(t, nl), 1}, rest);
    TruncSeries s = poch_ratio(a, nl, b, nl, rest) * h;
    s = s.times_binomial(a * q_power(t, 2 * nl), 1).over_binomial(a, 1);
    rhs.push_back((s * scalar).lifted(n, order));
  }
  return {std::move(name), std::move(params), lhs, std::move(rhs)};
}

inline IdentityInstance build_phi_transform(std::size_t order) {
  auto t = make_symbols({"q", "a", "b", "A", "c"});
  return build_phi_transform({detail::sym(t, "A")}, {}, detail::sym(t, "a"), detail::sym(t, "b"),
                             detail::sym(t, "c"), order, "phi_transform",
                             {{"a", "a"}, {"b", "b"}, {"A", "A"}, {"c", "c"}});
}

/// Upper parameter q: the 1phi0 collapses to 1/(1 - cz).
inline IdentityInstance build_phi_transform_collapsed(std::size_t order) {
  auto t = make_symbols({"q", "a", "b", "c"});
  return build_phi_transform({q_power(t, 1)}, {}, detail::sym(t, "a"), detail::sym(t, "b"), detail::sym(t, "c"),
                             order, "phi_transform_collapsed", {{"a", "a"}, {"b", "b"}, {"A", "q"}, {"c", "c"}});
}

/// 2phi1(A, B; C; z) = sum_n (ABq/C, ABz/C;q)_n/(q, z;q)_n z^n q^{n(n-1)} (1 - ABzq^{2n}/C)
///   × 4phi3(ABzq^n/C, ABzq^{2n+1}/C, C/A, C/B; C, zq^n, ABzq^{2n}/C; ABzq^n/C).
/// (ABz/C;q)_n and (z;q)_n are z-series; (ABq/C;q)_n and (q;q)_n are scalars.
inline IdentityInstance build_heine_4phi3(const RatFun& A, const RatFun& B, const RatFun& C, std::size_t order,
                                          std::string name, ParameterList params) {
  const auto& t = A.table();
  RatFun q = q_power(t, 1);
  RatFun one = RatFun::constant(t, 1);
  RatFun r = A * B / C;
  TruncSeries lhs = qhyper({A, B}, {C}, one, order);
  std::vector<TruncSeries> rhs;
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    long nl = static_cast<long>(n);
    RatFun scalar = param_poch(r * q, nl) / param_poch(q, nl) * q_power(t, nl * (nl - 1));
    std::vector<ZTerm> up{{r * q_power(t, nl), 1}, {r * q_power(t, 2 * nl + 1), 1}, {C / A, 0}, {C / B, 0}};
    std::vector<ZTerm> low{{C, 0}, {q_power(t, nl), 1}, {r * q_power(t, 2 * nl), 1}};
    TruncSeries h = qhyper(up, low, ZTerm{r * q_power(t, nl), 1}, rest);
    TruncSeries s = detail::divide_poch(qpoch({r, 1}, nl, rest), {one, 1}, nl);
    s = (s * h).times_binomial(r * q_power(t, 2 * nl), 1);
    rhs.push_back((s * scalar).lifted(n, order));
  }
  return {std::move(name), std::move(params), lhs, std::move(rhs)};
}

inline IdentityInstance build_heine_4phi3(std::size_t order) {
  auto t = make_symbols({"q", "A", "B", "C"});
  return build_heine_4phi3(detail::sym(t, "A"), detail::sym(t, "B"), detail::sym(t, "C"), order, "heine_4phi3",
                           {{"A", "A"}, {"B", "B"}, {"C", "C"}});
}

/// (zq;q)_∞/(-zq;q)_∞ + sum_n (-1;q)_n/(q;q)_n (z;q)_n/(-zq;q)_n (-z)^n q^{n²+n}
///   = sum_n (-1;q)_n/(q;q)_n (z;q)_n/(-zq;q)_n (1 + q^n + zq^n - zq^{2n}) (-z)^n q^{n²} θ(z²q^{2n+1}; q²).
inline IdentityInstance build_partial_theta(std::size_t order) {
  auto t = make_symbols({"q"});
  RatFun q = q_power(t, 1);
  RatFun one = RatFun::constant(t, 1);
  TruncSeries lhs = pochhammer_infinite(q, order) * inv_pochhammer_infinite(-q, order);
  std::vector<TruncSeries> rhs;
  for (std::size_t n = 0; n <= order; ++n) {
    std::size_t rest = order - n;
    long nl = static_cast<long>(n);
    RatFun sign = n % 2 ? -one : one;
    RatFun scalar = param_poch(-one, nl) / param_poch(q, nl) * sign;
    TruncSeries ratio = detail::divide_poch(qpoch({one, 1}, nl, rest), {-q, 1}, nl) * scalar;
    lhs += (ratio * q_power(t, nl * nl + nl)).lifted(n, order);
    TruncSeries lin(t, rest);
    lin.set(0, one + q_power(t, nl));
    if (rest >= 1) lin.set(1, q_power(t, nl) - q_power(t, 2 * nl));
    TruncSeries theta = partial_theta(2, q_power(t, 2 * nl + 1), 2, rest);
    rhs.push_back((ratio * lin * theta * q_power(t, nl * nl)).lifted(n, order));
  }
  return {"partial_theta", {}, lhs, std::move(rhs)};
}

/// One-sided coefficient form of the 1psi1 sum. With
/// f(z) = sum_k z^k (aqz;q)_k/(bqz;q)_k, every coefficient of f in the base
/// with parameters (aq, bq) is 1:
///   1 = [z^n]{f (bqz;q)_{n-1}/(aqz;q)_n}
///       - aq sum_{k<n} B_{n-k,1}(aq,bq) q^{(n-k)k} [z^k]{f (bqz;q)_k/(aqz;q)_{k+1}}.
inline IdentityInstance build_psi11_coefficients(std::size_t order) {
  auto t = make_symbols({"q", "a", "b"});
  RatFun q = q_power(t, 1);
  RatFun aq = detail::sym(t, "a") * q, bq = detail::sym(t, "b") * q;
  TruncSeries f(t, order);
  for (std::size_t k = 0; k <= order; ++k) f += base_element(k, aq, bq, order);
  std::vector<RatFun> bcol = b_column1(aq, bq, order);
  std::vector<RatFun> inner;
  for (std::size_t k = 0; k < order; ++k) {
    inner.push_back(detail::coefficient_of_product(f, bq, static_cast<long>(k), aq, static_cast<long>(k) + 1, k));
  }
  TruncSeries head(t, order), tail(t, order);
  for (std::size_t n = 0; n <= order; ++n) {
    head.set(n, detail::coefficient_of_product(f, bq, static_cast<long>(n) - 1, aq, static_cast<long>(n), n));
    RatFun sum(t);
    for (std::size_t k = 0; k < n; ++k) {
      if (bcol[n - k].is_zero() || inner[k].is_zero()) continue;
      sum += bcol[n - k] * q_power(t, static_cast<long>((n - k) * k)) * inner[k];
    }
    tail.set(n, -aq * sum);
  }
  return {"psi11_coefficients", {{"a", "a"}, {"b", "b"}}, detail::ones_series(t, order), {head, tail}};
}

/// sum_{2k<=n} B_{n,2k}(1,-q) (-1)^k q^{k²} + sum_{2k+1<=n} B_{n,2k+1}(1,-q) (-1)^k q^{k²} = 1,
/// packed so that z^n carries row n.
inline IdentityInstance build_floor_sum(std::size_t order) {
  auto t = make_symbols({"q"});
  RatFun one = RatFun::constant(t, 1);
  LTMatrix inv = lt_inverse(base_matrix(one, -q_power(t, 1), order));
  TruncSeries even(t, order), odd(t, order);
  for (std::size_t n = 0; n <= order; ++n) {
    RatFun e(t), o(t);
    for (std::size_t k = 0; 2 * k <= n; ++k) {
      RatFun w = q_power(t, static_cast<long>(k * k)) * (k % 2 ? -one : one);
      e += inv(n, 2 * k) * w;
      if (2 * k + 1 <= n) o += inv(n, 2 * k + 1) * w;
    }
    even.set(n, e);
    odd.set(n, o);
  }
  return {"floor_sum", {{"a", "1"}, {"b", "-q"}}, detail::ones_series(t, order), {even, odd}};
}

/// The identity corpus: every series identity, in name order.
inline std::vector<std::pair<std::string, std::function<IdentityInstance(std::size_t, std::uint64_t)>>>
identity_builders() {
  using B = std::function<IdentityInstance(std::size_t, std::uint64_t)>;
  return {
      {"coogan_ono", B([](std::size_t n, std::uint64_t) { return build_coogan_ono(n); })},
      {"coogan_ono_variant", B([](std::size_t n, std::uint64_t) { return build_coogan_ono_variant(n); })},
      {"floor_sum", B([](std::size_t n, std::uint64_t) { return build_floor_sum(n); })},
      {"general_transform_3phi2", B([](std::size_t n, std::uint64_t) { return build_general_transform_3phi2(n); })},
      {"general_transform_random", B([](std::size_t n, std::uint64_t s) { return build_general_transform_random(n, s); })},
      {"general_transform_unit", B([](std::size_t n, std::uint64_t) { return build_general_transform_unit(n); })},
      {"heine_4phi3", B([](std::size_t n, std::uint64_t) { return build_heine_4phi3(n); })},
      {"partial_theta", B([](std::size_t n, std::uint64_t) { return build_partial_theta(n); })},
      {"phi_transform", B([](std::size_t n, std::uint64_t) { return build_phi_transform(n); })},
      {"phi_transform_collapsed", B([](std::size_t n, std::uint64_t) { return build_phi_transform_collapsed(n); })},
      {"psi11_coefficients", B([](std::size_t n, std::uint64_t) { return build_psi11_coefficients(n); })},
      {"rogers_fine", B([](std::size_t n, std::uint64_t) { return build_rogers_fine(n); })},
  };
}

}  // namespace qexp

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qexp/identities.hpp"

namespace qexp {

// Structural checks on the base matrix, its inverse and the expansion
// routes. Entrywise checks report the first failing (row, column).

namespace detail {

inline SymbolTablePtr qab_table() { return make_symbols({"q", "a", "b"}); }

inline ParameterList symbolic_ab() { return {{"a", "a"}, {"b", "b"}}; }

/// Walks rows 0..n_max and the columns returned by `cols(row)`; `sides`
/// yields the two values to compare at (row, col).
inline IdentityReport entrywise(std::string name, ParameterList params, std::size_t order, std::size_t n_min,
                                std::size_t n_max, const std::function<std::pair<std::size_t, std::size_t>(std::size_t)>& cols,
                                const std::function<std::pair<RatFun, RatFun>(std::size_t, std::size_t)>& sides) {
  IdentityReport r{std::move(name), std::move(params), order, true, std::nullopt};
  for (std::size_t n = n_min; n <= n_max; ++n) {
    auto [k0, k1] = cols(n);
    for (std::size_t k = k0; k <= k1; ++k) {
      auto [lhs, rhs] = sides(n, k);
      if (!lhs.equals(rhs)) {
        r.passed = false;
        r.first_failure = FirstFailure{n, k, to_string(lhs), to_string(rhs)};
        return r;
      }
    }
  }
  return r;
}

inline std::pair<std::size_t, std::size_t> lower_triangle(std::size_t n) { return {0, n}; }

/// Compares two coefficient lists of equal length; index is the position.
inline IdentityReport compare_lists(std::string name, ParameterList params, std::size_t order,
                                    const std::vector<RatFun>& x, const std::vector<RatFun>& y) {
  IdentityReport r{std::move(name), std::move(params), order, true, std::nullopt};
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!x[i].equals(y[i])) {
      r.passed = false;
      r.first_failure = FirstFailure{i, std::nullopt, to_string(x[i]), to_string(y[i])};
      return r;
    }
  }
  if (x.size() != y.size()) {
    r.passed = false;
    r.first_failure = FirstFailure{std::min(x.size(), y.size()), std::nullopt, "length " + std::to_string(x.size()),
                                   "length " + std::to_string(y.size())};
  }
  return r;
}

}  // namespace detail

/// A·B = I and B·A = I for the base matrix and its forward-substitution inverse.
inline IdentityReport check_inverse_pair(std::size_t order) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  LTMatrix am = base_matrix(a, b, order);
  LTMatrix bm = lt_inverse(am);
  LTMatrix ab = am * bm, ba = bm * am;
  RatFun one = RatFun::constant(t, 1), zero(t);
  return detail::entrywise("inverse_pair", detail::symbolic_ab(), order, 0, order, detail::lower_triangle,
                           [&](std::size_t n, std::size_t k) {
                             const RatFun& expect = n == k ? one : zero;
                             if (!ab(n, k).equals(expect)) return std::make_pair(ab(n, k), expect);
                             return std::make_pair(ba(n, k), expect);
                           });
}

/// The closed inversion formula against forward substitution, entrywise.
inline IdentityReport check_inverse_closed_form(std::size_t order) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  LTMatrix direct = lt_inverse(base_matrix(a, b, order));
  LTMatrix closed = inverse_matrix_closed_form(a, b, order);
  return detail::entrywise("inverse_closed_form", detail::symbolic_ab(), order, 0, order, detail::lower_triangle,
                           [&](std::size_t n, std::size_t k) { return std::make_pair(closed(n, k), direct(n, k)); });
}

/// B_{n,1} by peeling base elements off z, against column 1 of the inverse.
inline IdentityReport check_b_column_peel(std::size_t order) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  LTMatrix inv = lt_inverse(base_matrix(a, b, order));
  std::vector<RatFun> peel = b_column1(a, b, order);
  std::vector<RatFun> col;
  for (std::size_t n = 0; n <= order; ++n) col.push_back(n >= 1 ? inv(n, 1) : RatFun(t));
  return detail::compare_lists("b_column_peel", detail::symbolic_ab(), order, peel, col);
}

/// Closed coefficient formula against the triangular solve on `count`
/// random series with rational coefficients in [-9, 9].
inline IdentityReport check_expansion_dual_path(std::size_t order, std::size_t count, std::uint64_t seed) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  DeterministicRng rng(derive_seed(seed, "expansion_dual_path"));
  ParameterList params{{"a", "a"}, {"b", "b"}, {"seed", std::to_string(seed)}, {"series", std::to_string(count)}};
  for (std::size_t i = 0; i < count; ++i) {
    TruncSeries f = random_series(t, order, rng);
    auto r = detail::compare_lists("expansion_dual_path", params, order, expand_closed_form(f, a, b).coeffs,
                                   expand_triangular(f, a, b).coeffs);
    if (!r.passed) return r;
  }
  return {"expansion_dual_path", params, order, true, std::nullopt};
}

/// B_{n,k+1} + (b-a) sum_{i=k+2}^{n} b^{i-k-2} B_{n,i} = q^{n-k-1} B_{n-1,k}, 1 <= k+1 <= n.
inline IdentityReport check_inverse_recurrence(std::size_t order) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  LTMatrix inv = lt_inverse(base_matrix(a, b, order));
  return detail::entrywise(
      "inverse_recurrence", detail::symbolic_ab(), order, 1, order,
      [](std::size_t n) { return std::make_pair(std::size_t{0}, n - 1); },
      [&](std::size_t n, std::size_t k) {
        RatFun sum(t);
        for (std::size_t i = k + 2; i <= n; ++i) sum += b.pow(static_cast<int>(i - k - 2)) * inv(n, i);
        RatFun lhs = inv(n, k + 1) + (b - a) * sum;
        RatFun rhs = q_power(t, static_cast<long>(n - k - 1)) * inv(n - 1, k);
        return std::make_pair(lhs, rhs);
      });
}

/// B_{n,k} - a B_{n,k+1} = q^{n-k} B_{n-1,k-1} - b q^{n-k-1} B_{n-1,k}, 1 <= k <= n.
inline IdentityReport check_inverse_three_term(std::size_t order) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  LTMatrix inv = lt_inverse(base_matrix(a, b, order));
  auto entry = [&](std::size_t n, std::size_t k) { return k > n ? RatFun(t) : inv(n, k); };
  return detail::entrywise(
      "inverse_three_term", detail::symbolic_ab(), order, 1, order,
      [](std::size_t n) { return std::make_pair(std::size_t{1}, n); },
      [&](std::size_t n, std::size_t k) {
        long d = static_cast<long>(n) - static_cast<long>(k);
        RatFun lhs = entry(n, k) - a * entry(n, k + 1);
        RatFun rhs = q_power(t, d) * entry(n - 1, k - 1) - b * q_power(t, d - 1) * entry(n - 1, k);
        return std::make_pair(lhs, rhs);
      });
}

/// With G_k(z) = sum_n B_{n,k} z^n:
///   G_k(z) - a G_{k+1}(z) = z q^{1-k} G_{k-1}(qz) - b z q^{-k} G_k(qz), 1 <= k <= k_max.
/// The failure index is the z-power and the column is k.
inline IdentityReport check_inverse_column_equation(std::size_t order, std::size_t k_max) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  LTMatrix inv = lt_inverse(base_matrix(a, b, order + 1));
  auto column = [&](std::size_t k) {
    TruncSeries g(t, order);
    for (std::size_t n = k; n <= order; ++n) g.set(n, inv(n, k));
    return g;
  };
  IdentityReport r{"inverse_column_equation", detail::symbolic_ab(), order, true, std::nullopt};
  for (std::size_t k = 1; k <= std::min(k_max, order); ++k) {
    long kl = static_cast<long>(k);
    TruncSeries lhs = column(k) - column(k + 1) * a;
    TruncSeries rhs = column(k - 1).shifted_q(1).times_zpow(1) * q_power(t, 1 - kl) -
                      column(k).shifted_q(1).times_zpow(1) * (b * q_power(t, -kl));
    if (auto d = first_difference(lhs, rhs)) {
      r.passed = false;
      r.first_failure = FirstFailure{*d, k, to_string(lhs[*d]), to_string(rhs[*d])};
      return r;
    }
  }
  return r;
}

/// B_{n,k}(at, bt) = B_{n,k}(a, b) t^{n-k} with a fresh symbol t.
inline IdentityReport check_inverse_homogeneity(std::size_t order) {
  auto t = detail::qab_table();
  auto tt = extend_symbols(*t, {"t"});
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  RatFun ta = detail::sym(tt, "a") * detail::sym(tt, "t"), tb = detail::sym(tt, "b") * detail::sym(tt, "t");
  RatFun tsym = detail::sym(tt, "t");
  LTMatrix inv = lt_inverse(base_matrix(a, b, order));
  return detail::entrywise("inverse_homogeneity", detail::symbolic_ab(), order, 0, order, detail::lower_triangle,
                           [&](std::size_t n, std::size_t k) {
                             RatFun lhs = substitute(inv(n, k), {{"a", ta}, {"b", tb}}, tt);
                             RatFun rhs = embed(inv(n, k), tt) * tsym.pow(static_cast<int>(n - k));
                             return std::make_pair(lhs, rhs);
                           });
}

/// [z^n]{(bz;q)_{n-1}/(az;q)_n} = a sum_{i<n} B_{n-i,1} q^{(n-i)i} [z^i]{(bz;q)_i/(az;q)_{i+1}}, n >= 1.
inline IdentityReport check_inverse_k0_identity(std::size_t order) {
  auto t = detail::qab_table();
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b");
  std::vector<RatFun> bcol = b_column1(a, b, order);
  std::vector<RatFun> lhs{RatFun(t)}, rhs{RatFun(t)};
  for (std::size_t n = 1; n <= order; ++n) {
    lhs.push_back(poch_ratio(b, static_cast<long>(n) - 1, a, static_cast<long>(n), n)[n]);
    RatFun sum(t);
    for (std::size_t i = 0; i < n; ++i) {
      RatFun inner = poch_ratio(b, static_cast<long>(i), a, static_cast<long>(i) + 1, i)[i];
      sum += bcol[n - i] * q_power(t, static_cast<long>((n - i) * i)) * inner;
    }
    rhs.push_back(a * sum);
  }
  return detail::compare_lists("inverse_k0_identity", detail::symbolic_ab(), order, lhs, rhs);
}

/// sum_k B_{n,k} y^k against its closed finite generating function, 1 <= n <= n_max.
inline IdentityReport check_finite_genfun(std::size_t n_max) {
  auto t = make_symbols({"q", "a", "b", "y"});
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b"), y = detail::sym(t, "y");
  LTMatrix inv = lt_inverse(base_matrix(a, b, n_max));
  std::vector<RatFun> bcol = b_column1(a, b, n_max);
  std::vector<RatFun> lhs{RatFun(t)}, rhs{RatFun(t)};
  for (std::size_t n = 1; n <= n_max; ++n) {
    RatFun sum(t);
    for (std::size_t k = 0; k <= n; ++k) sum += inv(n, k) * y.pow(static_cast<int>(k));
    lhs.push_back(sum);
    rhs.push_back(finite_genfun_rhs(n, a, b, y, bcol));
  }
  return detail::compare_lists("finite_genfun", {{"a", "a"}, {"b", "b"}, {"y", "y"}}, n_max, lhs, rhs);
}

/// S_n(y) is a polynomial in y vanishing at y = a q^k for 0 <= k < n, 1 <= n <= n_max.
/// The failure index is n and the column is k (or n when S_n is not a polynomial).
inline IdentityReport check_sn_divisibility(std::size_t n_max) {
  auto t = make_symbols({"q", "a", "b", "y"});
  RatFun a = detail::sym(t, "a"), b = detail::sym(t, "b"), y = detail::sym(t, "y");
  IdentityReport r{"sn_divisibility", {{"a", "a"}, {"b", "b"}, {"y", "y"}}, n_max, true, std::nullopt};
  std::size_t yi = *t->index("y");
  for (std::size_t n = 1; n <= n_max; ++n) {
    RatFun s = sn_polynomial(n, a, b, y);
    bool y_free_den = true;
    for (const auto& f : s.den_factors()) y_free_den = y_free_den && f.poly.degree_in(yi) == 0;
    if (!y_free_den) {
      r.passed = false;
      r.first_failure = FirstFailure{n, n, to_string(s), "polynomial in y"};
      return r;
    }
    for (std::size_t k = 0; k < n; ++k) {
      RatFun root = a * q_power(t, static_cast<long>(k));
      MultiPoly lin = (y - root).num();
      if (!divide_exact(s.num(), lin)) {
        r.passed = false;
        r.first_failure = FirstFailure{n, k, to_string(substitute(s, {{"y", root}})), "0"};
        return r;
      }
    }
  }
  return r;
}

/// B_{n,1}(a, aq) = g_n(q) a^{n-1}, 1 <= n <= order.
inline IdentityReport check_gn_specialization(std::size_t order) {
  auto t = make_symbols({"q", "a"});
  RatFun a = detail::sym(t, "a");
  std::vector<RatFun> bcol = b_column1(a, a * q_power(t, 1), order);
  std::vector<RatFun> g = gn_polynomials(t, order);
  std::vector<RatFun> expect{RatFun(t)};
  for (std::size_t n = 1; n <= order; ++n) expect.push_back(g[n] * a.pow(static_cast<int>(n) - 1));
  return detail::compare_lists("gn_specialization", {{"a", "a"}, {"b", "a*q"}}, order, bcol, expect);
}

namespace detail {

inline IdentityReport special_case_check(const std::string& name, std::size_t order, std::uint64_t seed,
                                         const std::function<std::vector<RatFun>(const TruncSeries&, const SymbolTablePtr&)>& special,
                                         const std::function<std::vector<RatFun>(const TruncSeries&, const SymbolTablePtr&)>& general,
                                         ParameterList params, std::size_t count) {
  auto t = qab_table();
  DeterministicRng rng(derive_seed(seed, name));
  params.push_back({"seed", std::to_string(seed)});
  for (std::size_t i = 0; i < count; ++i) {
    TruncSeries f = random_series(t, order, rng);
    auto r = compare_lists(name, params, order, special(f, t), general(f, t));
    if (!r.passed) return r;
  }
  return {name, params, order, true, std::nullopt};
}

}  // namespace detail

/// a = 0 expansion against the triangular solve.
inline IdentityReport check_carlitz_consistency(std::size_t order, std::uint64_t seed, std::size_t count = 3) {
  return detail::special_case_check(
      "carlitz_consistency", order, seed,
      [](const TruncSeries& f, const SymbolTablePtr& t) { return carlitz_coeffs(f, detail::sym(t, "b")).coeffs; },
      [](const TruncSeries& f, const SymbolTablePtr& t) {
        return expand_triangular(f, RatFun(t), detail::sym(t, "b")).coeffs;
      },
      {{"a", "0"}, {"b", "b"}}, count);
}

/// b = 0 expansion against the triangular solve.
inline IdentityReport check_b_zero_consistency(std::size_t order, std::uint64_t seed, std::size_t count = 3) {
  return detail::special_case_check(
      "b_zero_consistency", order, seed,
      [](const TruncSeries& f, const SymbolTablePtr& t) { return expand_b_zero(f, detail::sym(t, "a")).coeffs; },
      [](const TruncSeries& f, const SymbolTablePtr& t) {
        return expand_triangular(f, detail::sym(t, "a"), RatFun(t)).coeffs;
      },
      {{"a", "a"}, {"b", "0"}}, count);
}

/// b = aq expansion through g_n against the triangular solve.
inline IdentityReport check_b_eq_aq_consistency(std::size_t order, std::uint64_t seed, std::size_t count = 3) {
  return detail::special_case_check(
      "b_eq_aq_consistency", order, seed,
      [](const TruncSeries& f, const SymbolTablePtr& t) { return expand_b_eq_aq(f, detail::sym(t, "a")).coeffs; },
      [](const TruncSeries& f, const SymbolTablePtr& t) {
        RatFun a = detail::sym(t, "a");
        return expand_triangular(f, a, a * q_power(t, 1)).coeffs;
      },
      {{"a", "a"}, {"b", "a*q"}}, count);
}

/// F = (1 - az)(1 - t1 z)(1 - t2 z): the polynomial b = aq formula, with its
/// sum cut at min(m, n-1), against the triangular solve.
inline IdentityReport check_polynomial_b_eq_aq(std::size_t order) {
  auto t = make_symbols({"q", "a", "t1", "t2"});
  RatFun a = detail::sym(t, "a");
  std::vector<RatFun> ts{detail::sym(t, "t1"), detail::sym(t, "t2")};
  TruncSeries f = TruncSeries::one(t, order).times_binomial(a, 1);
  for (const auto& x : ts) f = f.times_binomial(x, 1);
  return detail::compare_lists("polynomial_b_eq_aq", {{"a", "a"}, {"b", "a*q"}, {"t", "t1, t2"}}, order,
                               polynomial_b_eq_aq(a, ts, order).coeffs,
                               expand_triangular(f, a, a * q_power(t, 1)).coeffs);
}

/// Rogers–Fine at a = z/q, b = -z equals (1 - z²) times the Coogan–Ono
/// identity, side by side.
inline IdentityReport check_specialization_coogan_ono(std::size_t order) {
  auto t = make_symbols({"q"});
  RatFun one = RatFun::constant(t, 1);
  IdentityInstance rf = build_rogers_fine({one / q_power(t, 1), 1}, {-one, 1}, order, "", {});
  IdentityInstance co = build_coogan_ono(order);
  TruncSeries factor = TruncSeries::one(t, order).times_binomial(one, 2);
  ParameterList params{{"a", "z/q"}, {"b", "-z"}};
  auto r = compare_series("specialization_coogan_ono", params, rf.lhs, co.lhs * factor);
  if (!r.passed) return r;
  return compare_series("specialization_coogan_ono", params, rhs_total(rf), rhs_total(co) * factor);
}

/// Rogers–Fine at a = z, b = -z equals the Coogan–Ono variant, side by side.
inline IdentityReport check_specialization_coogan_ono_variant(std::size_t order) {
  auto t = make_symbols({"q"});
  RatFun one = RatFun::constant(t, 1);
  IdentityInstance rf = build_rogers_fine({one, 1}, {-one, 1}, order, "", {});
  IdentityInstance co = build_coogan_ono_variant(order);
  ParameterList params{{"a", "z"}, {"b", "-z"}};
  auto r = compare_series("specialization_coogan_ono_variant", params, rf.lhs, co.lhs);
  if (!r.passed) return r;
  return compare_series("specialization_coogan_ono_variant", params, rhs_total(rf), rhs_total(co));
}

}  // namespace qexp

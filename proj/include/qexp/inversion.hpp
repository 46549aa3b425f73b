#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qexp/series.hpp"

namespace qexp {

/// Lower-triangular (n+1)×(n+1) matrix of rational functions. Entries above
/// the diagonal are zero and not stored.
class LTMatrix {
 public:
  LTMatrix(SymbolTablePtr table, std::size_t n) : zero_(table) {
    rows_.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) rows_.emplace_back(i + 1, RatFun(table));
  }

  static LTMatrix identity(const SymbolTablePtr& table, std::size_t n) {
    LTMatrix m(table, n);
    for (std::size_t i = 0; i <= n; ++i) m.rows_[i][i] = RatFun::constant(table, 1);
    return m;
  }

  const SymbolTablePtr& table() const noexcept { return zero_.table(); }
  /// Largest row index N; the matrix is (N+1)×(N+1).
  std::size_t n() const noexcept { return rows_.size() - 1; }

  const RatFun& operator()(std::size_t row, std::size_t col) const {
    if (row >= rows_.size() || col >= rows_.size()) throw OrderError("matrix index out of range");
    return col > row ? zero_ : rows_[row][col];
  }

  void set(std::size_t row, std::size_t col, RatFun v) {
    if (col > row) throw StructuralError("entries above the diagonal are fixed at zero");
    require_same_table(table(), v.table());
    rows_.at(row).at(col) = std::move(v);
  }

  const std::vector<std::vector<RatFun>>& rows() const noexcept { return rows_; }

 private:
  RatFun zero_;
  std::vector<std::vector<RatFun>> rows_;
};

inline LTMatrix operator*(const LTMatrix& x, const LTMatrix& y) {
  require_same_table(x.table(), y.table());
  std::size_t n = std::min(x.n(), y.n());
  LTMatrix r(x.table(), n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      RatFun acc(x.table());
      for (std::size_t j = k; j <= i; ++j) {
        if (!x(i, j).is_zero() && !y(j, k).is_zero()) acc += x(i, j) * y(j, k);
      }
      r.set(i, k, std::move(acc));
    }
  }
  return r;
}

/// First (row, col) where m differs from the identity, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> identity_defect(const LTMatrix& m) {
  for (std::size_t i = 0; i <= m.n(); ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      bool ok = i == k ? m(i, k).is_one() || m(i, k).equals(RatFun::constant(m.table(), 1)) : m(i, k).is_zero();
      if (!ok) return std::make_pair(i, k);
    }
  }
  return std::nullopt;
}

/// (bz;q)_num_len / (az;q)_den_len truncated at z^order. Either length may be
/// negative, following the quotient convention for q-shifted factorials.
inline TruncSeries poch_ratio(const RatFun& b, long num_len, const RatFun& a, long den_len, std::size_t order) {
  const auto& t = a.table();
  TruncSeries s = qpoch({b, 1}, num_len, order);
  if (den_len >= 0) {
    for (long i = 0; i < den_len; ++i) s = s.over_binomial(a * q_power(t, i), 1);
  } else {
    for (long j = 1; j <= -den_len; ++j) s = s.times_binomial(a * q_power(t, -j), 1);
  }
  return s;
}

/// A_{n,k} = [z^{n-k}] (az;q)_k/(bz;q)_k, so that column k holds the
/// expansion of the base element z^k (az;q)_k/(bz;q)_k.
inline LTMatrix base_matrix(const RatFun& a, const RatFun& b, std::size_t n) {
  require_same_table(a.table(), b.table());
  LTMatrix m(a.table(), n);
  for (std::size_t k = 0; k <= n; ++k) {
    TruncSeries s = poch_ratio(a, static_cast<long>(k), b, static_cast<long>(k), n - k);
    for (std::size_t i = k; i <= n; ++i) m.set(i, k, s[i - k]);
  }
  return m;
}

/// Inverse of a unit lower-triangular matrix by forward substitution, one
/// column at a time.
inline LTMatrix lt_inverse(const LTMatrix& m) {
  const auto& t = m.table();
  for (std::size_t i = 0; i <= m.n(); ++i) {
    if (!m(i, i).equals(RatFun::constant(t, 1))) {
      throw SingularityError("diagonal entry " + std::to_string(i) + " is not 1");
    }
  }
  LTMatrix inv(t, m.n());
  for (std::size_t k = 0; k <= m.n(); ++k) {
    inv.set(k, k, RatFun::constant(t, 1));
    for (std::size_t i = k + 1; i <= m.n(); ++i) {
      RatFun acc(t);
      for (std::size_t j = k; j < i; ++j) {
        if (!m(i, j).is_zero() && !inv(j, k).is_zero()) acc += m(i, j) * inv(j, k);
      }
      inv.set(i, k, -acc);
    }
  }
  return inv;
}

/// B_{n,1}(a,b) for n = 0..order (entry 0 is zero), defined by
///   z = sum_{n>=1} B_{n,1} z^n (az;q)_n/(bz;q)_n.
/// Computed by peeling base elements off the series z, independently of any
/// matrix inversion.
inline std::vector<RatFun> b_column1(const RatFun& a, const RatFun& b, std::size_t order) {
  const auto& t = a.table();
  std::vector<RatFun> col(order + 1, RatFun(t));
  TruncSeries rest = TruncSeries::monomial(RatFun::constant(t, 1), 1, order);
  for (std::size_t n = 1; n <= order; ++n) {
    col[n] = rest[n];
    if (!col[n].is_zero()) rest -= base_element(n, a, b, order) * col[n];
  }
  return col;
}

enum class ExpansionMethod { triangular_solve, closed_form, carlitz, b_zero, b_eq_aq, polynomial_b_eq_aq };

inline const char* method_name(ExpansionMethod m) {
  switch (m) {
    case ExpansionMethod::triangular_solve: return "triangular_solve";
    case ExpansionMethod::closed_form: return "closed_form";
    case ExpansionMethod::carlitz: return "carlitz";
    case ExpansionMethod::b_zero: return "b_zero";
    case ExpansionMethod::b_eq_aq: return "b_eq_aq";
    case ExpansionMethod::polynomial_b_eq_aq: return "polynomial_b_eq_aq";
  }
  return "unknown";
}

/// Coefficients c_0..c_N of F = sum c_n z^n (az;q)_n/(bz;q)_n.
struct ExpansionResult {
  std::vector<RatFun> coeffs;
  ExpansionMethod method;
};

/// Reference route: solve A·c = f by forward substitution.
inline ExpansionResult expand_triangular(const TruncSeries& f, const RatFun& a, const RatFun& b) {
  const std::size_t n = f.order();
  LTMatrix am = base_matrix(a, b, n);
  std::vector<RatFun> c;
  c.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    RatFun acc = f[i];
    for (std::size_t k = 0; k < i; ++k) {
      if (!c[k].is_zero() && !am(i, k).is_zero()) acc -= am(i, k) * c[k];
    }
    c.push_back(std::move(acc));
  }
  return {std::move(c), ExpansionMethod::triangular_solve};
}

/// Rebuilds sum c_n z^n (az;q)_n/(bz;q)_n to the given order.
inline TruncSeries reconstruct(const ExpansionResult& r, const RatFun& a, const RatFun& b, std::size_t order) {
  TruncSeries s(a.table(), order);
  for (std::size_t n = 0; n <= std::min(order, r.coeffs.size() - 1); ++n) {
    if (!r.coeffs[n].is_zero()) s += base_element(n, a, b, order) * r.coeffs[n];
  }
  return s;
}

namespace detail {

// [z^n]{ F · (bz;q)_m / (az;q)_j }
inline RatFun coefficient_of_product(const TruncSeries& f, const RatFun& b, long m, const RatFun& a, long j,
                                     std::size_t n) {
  TruncSeries s = f.truncated(n) * poch_ratio(b, m, a, j, n);
  return s[n];
}

}  // namespace detail

/// Closed coefficient formula:
///   c_n = [z^n]{F (bz;q)_{n-1}/(az;q)_n}
///         - a sum_{k<n} B_{n-k,1} q^{(n-k)k} [z^k]{F (bz;q)_k/(az;q)_{k+1}}.
/// B_{m,1} comes from the peeling route. At n = 0 the factor (bz;q)_{-1} has
/// constant term 1, so c_0 = F(0).
inline ExpansionResult expand_closed_form(const TruncSeries& f, const RatFun& a, const RatFun& b) {
  const std::size_t n = f.order();
  const auto& t = a.table();
  std::vector<RatFun> bcol = b_column1(a, b, n);
  std::vector<RatFun> inner;
  for (std::size_t k = 0; k < n; ++k) {
    inner.push_back(detail::coefficient_of_product(f, b, static_cast<long>(k), a, static_cast<long>(k) + 1, k));
  }
  std::vector<RatFun> c;
  for (std::size_t i = 0; i <= n; ++i) {
    RatFun head = detail::coefficient_of_product(f, b, static_cast<long>(i) - 1, a, static_cast<long>(i), i);
    RatFun sum(t);
    for (std::size_t k = 0; k < i; ++k) {
      if (bcol[i - k].is_zero() || inner[k].is_zero()) continue;
      sum += bcol[i - k] * q_power(t, static_cast<long>((i - k) * k)) * inner[k];
    }
    c.push_back(head - a * sum);
  }
  return {std::move(c), ExpansionMethod::closed_form};
}

/// B_{n,k} from the closed matrix-inversion formula
///   B_{n,k} = [z^{n-k}]{(bz;q)_{n-1}/(az;q)_n}
///             - a sum_{i=k}^{n-1} B_{n-i,1} q^{(n-i)i} [z^{i-k}]{(bz;q)_i/(az;q)_{i+1}}.
inline RatFun inverse_entry_closed_form(std::size_t n, std::size_t k, const RatFun& a, const RatFun& b,
                                        const std::vector<RatFun>& bcol) {
  const auto& t = a.table();
  if (k > n) return RatFun(t);
  if (bcol.size() < n + 1) throw OrderError("B_{m,1} column too short");
  RatFun head = poch_ratio(b, static_cast<long>(n) - 1, a, static_cast<long>(n), n - k)[n - k];
  RatFun sum(t);
  for (std::size_t i = k; i < n; ++i) {
    if (bcol[n - i].is_zero()) continue;
    RatFun inner = poch_ratio(b, static_cast<long>(i), a, static_cast<long>(i) + 1, i - k)[i - k];
    if (inner.is_zero()) continue;
    sum += bcol[n - i] * q_power(t, static_cast<long>((n - i) * i)) * inner;
  }
  return head - a * sum;
}

inline RatFun inverse_entry_closed_form(std::size_t n, std::size_t k, const RatFun& a, const RatFun& b) {
  return inverse_entry_closed_form(n, k, a, b, b_column1(a, b, n));
}

/// The whole inverse matrix from the closed formula.
inline LTMatrix inverse_matrix_closed_form(const RatFun& a, const RatFun& b, std::size_t n) {
  const auto& t = a.table();
  std::vector<RatFun> bcol = b_column1(a, b, n);
  std::vector<TruncSeries> ratios;  // (bz;q)_i/(az;q)_{i+1} for i < n
  for (std::size_t i = 0; i < n; ++i) ratios.push_back(poch_ratio(b, static_cast<long>(i), a, static_cast<long>(i) + 1, n));
  LTMatrix m(t, n);
  for (std::size_t r = 0; r <= n; ++r) {
    TruncSeries head = poch_ratio(b, static_cast<long>(r) - 1, a, static_cast<long>(r), r);
    for (std::size_t k = 0; k <= r; ++k) {
      RatFun sum(t);
      for (std::size_t i = k; i < r; ++i) {
        if (bcol[r - i].is_zero() || ratios[i][i - k].is_zero()) continue;
        sum += bcol[r - i] * q_power(t, static_cast<long>((r - i) * i)) * ratios[i][i - k];
      }
      m.set(r, k, head[r - k] - a * sum);
    }
  }
  return m;
}

/// g_1..g_N with g_n = 1 - sum_{i=1}^{n-1} g_{n-i} q^{(n-i)i}; entry 0 is zero.
inline std::vector<RatFun> gn_polynomials(const SymbolTablePtr& table, std::size_t n) {
  std::vector<RatFun> g(n + 1, RatFun(table));
  for (std::size_t m = 1; m <= n; ++m) {
    RatFun acc = RatFun::constant(table, 1);
    for (std::size_t i = 1; i < m; ++i) acc -= g[m - i] * q_power(table, static_cast<long>((m - i) * i));
    g[m] = std::move(acc);
  }
  return g;
}

/// a = 0: c_n = [z^n]{F (bz;q)_{n-1}}.
inline ExpansionResult carlitz_coeffs(const TruncSeries& f, const RatFun& b) {
  std::vector<RatFun> c;
  for (std::size_t n = 0; n <= f.order(); ++n) {
    c.push_back((f.truncated(n) * qpoch({b, 1}, static_cast<long>(n) - 1, n))[n]);
  }
  return {std::move(c), ExpansionMethod::carlitz};
}

/// b = 0: c_n = [z^n]{F/(az;q)_n} - a sum_{k<n} B_{n-k,1}(a,0) q^{(n-k)k} [z^k]{F/(az;q)_{k+1}}.
inline ExpansionResult expand_b_zero(const TruncSeries& f, const RatFun& a) {
  const auto& t = a.table();
  const std::size_t n = f.order();
  RatFun zero(t);
  std::vector<RatFun> bcol = b_column1(a, zero, n);
  auto inv_poch = [&](long len, std::size_t order) {
    TruncSeries s = TruncSeries::one(t, order);
    for (long i = 0; i < len; ++i) s = s.over_binomial(a * q_power(t, i), 1);
    return s;
  };
  std::vector<RatFun> inner;
  for (std::size_t k = 0; k < n; ++k) inner.push_back((f.truncated(k) * inv_poch(static_cast<long>(k) + 1, k))[k]);
  std::vector<RatFun> c;
  for (std::size_t i = 0; i <= n; ++i) {
    RatFun head = (f.truncated(i) * inv_poch(static_cast<long>(i), i))[i];
    RatFun sum(t);
    for (std::size_t k = 0; k < i; ++k) {
      if (bcol[i - k].is_zero() || inner[k].is_zero()) continue;
      sum += bcol[i - k] * q_power(t, static_cast<long>((i - k) * k)) * inner[k];
    }
    c.push_back(head - a * sum);
  }
  return {std::move(c), ExpansionMethod::b_zero};
}

/// b = aq, where the base is z^n (1-az)/(1-azq^n):
///   c_0 = F(0),  c_n = sum_{k<n} g_{n-k} q^{(n-k)k} [z^n]{(F - F_k)/(1 - az)},
/// F_k the truncation of F after z^k.
inline ExpansionResult expand_b_eq_aq(const TruncSeries& f, const RatFun& a) {
  const auto& t = a.table();
  const std::size_t n = f.order();
  std::vector<RatFun> g = gn_polynomials(t, n);
  std::vector<RatFun> c{f[0]};
  for (std::size_t i = 1; i <= n; ++i) {
    RatFun acc(t);
    for (std::size_t k = 0; k < i; ++k) {
      // [z^i]{(F - F_k)/(1 - az)} = sum_{j=k+1}^{i} F_j a^{i-j}
      RatFun tail(t);
      for (std::size_t j = k + 1; j <= i; ++j) {
        if (!f[j].is_zero()) tail += f[j] * a.pow(static_cast<int>(i - j));
      }
      if (!tail.is_zero()) acc += g[i - k] * q_power(t, static_cast<long>((i - k) * k)) * tail;
    }
    c.push_back(std::move(acc));
  }
  return {std::move(c), ExpansionMethod::b_eq_aq};
}

/// Polynomial case of the b = aq expansion: F = (1 - az) prod_{i=1}^m (1 - t_i z),
///   c_0 = 1,  c_n = sum_{k=0}^{min(m, n-1)} g_{n-k} q^{(n-k)k}
///                    [z^n]{prod (1 - t_i z) - F_k/(1 - az)}.
inline ExpansionResult polynomial_b_eq_aq(const RatFun& a, const std::vector<RatFun>& ts, std::size_t order) {
  const auto& t = a.table();
  const std::size_t m = ts.size();
  TruncSeries prod = TruncSeries::one(t, order);
  for (const auto& ti : ts) prod = prod.times_binomial(ti, 1);
  TruncSeries f = prod.times_binomial(a, 1);
  std::vector<RatFun> g = gn_polynomials(t, order);
  std::vector<RatFun> c{RatFun::constant(t, 1)};
  for (std::size_t n = 1; n <= order; ++n) {
    RatFun acc(t);
    for (std::size_t k = 0; k <= std::min(m, n - 1); ++k) {
      TruncSeries fk = f.truncated(k).truncated(n);
      TruncSeries inner = prod.truncated(n) - fk.over_binomial(a, 1);
      if (!inner[n].is_zero()) acc += g[n - k] * q_power(t, static_cast<long>((n - k) * k)) * inner[n];
    }
    c.push_back(std::move(acc));
  }
  return {std::move(c), ExpansionMethod::polynomial_b_eq_aq};
}

/// Right-hand side of the finite generating function of row n:
///   (b/y;q)_{n-1}/(a/y;q)_n y^n - a sum_{k<n} B_{n-k,1} q^{(n-k)k} (b/y;q)_k/(a/y;q)_{k+1} y^k,
/// which equals sum_k B_{n,k} y^k for n >= 1.
inline RatFun finite_genfun_rhs(std::size_t n, const RatFun& a, const RatFun& b, const RatFun& y,
                                const std::vector<RatFun>& bcol) {
  const auto& t = a.table();
  RatFun by = b / y;
  RatFun ay = a / y;
  RatFun head = param_poch(by, static_cast<long>(n) - 1) / param_poch(ay, static_cast<long>(n)) *
                y.pow(static_cast<int>(n));
  RatFun sum(t);
  for (std::size_t k = 0; k < n; ++k) {
    if (bcol[n - k].is_zero()) continue;
    sum += bcol[n - k] * q_power(t, static_cast<long>((n - k) * k)) * param_poch(by, static_cast<long>(k)) /
           param_poch(ay, static_cast<long>(k) + 1) * y.pow(static_cast<int>(k));
  }
  return head - a * sum;
}

/// S_n(y) = prod_{k<n} (y - a q^k) · finite_genfun_rhs(n).
inline RatFun sn_polynomial(std::size_t n, const RatFun& a, const RatFun& b, const RatFun& y) {
  const auto& t = a.table();
  std::vector<RatFun> bcol = b_column1(a, b, n);
  RatFun prod = RatFun::constant(t, 1);
  for (std::size_t k = 0; k < n; ++k) prod *= y - a * q_power(t, static_cast<long>(k));
  return prod * finite_genfun_rhs(n, a, b, y, bcol);
}

}  // namespace qexp

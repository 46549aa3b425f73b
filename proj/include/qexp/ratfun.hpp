#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qexp/multipoly.hpp"

namespace qexp {

/// One factor of a denominator: a primitive polynomial with positive leading
/// coefficient, raised to `mult`.
struct DenFactor {
  MultiPoly poly;
  unsigned mult;
};

namespace detail {

// Entry of a factor base shared by two denominators.
struct SharedFactor {
  MultiPoly poly;
  unsigned left;
  unsigned right;
};

// Rewrites two factor lists over a common refined base: whenever one base
// polynomial divides another, the larger one is split. No polynomial GCD is
// computed; factors that share a nontrivial common divisor without one
// dividing the other stay separate.
inline std::vector<SharedFactor> refine_together(const std::vector<DenFactor>& x,
                                                 const std::vector<DenFactor>& y) {
  std::vector<SharedFactor> base;
  base.reserve(x.size() + y.size());
  for (const auto& f : x) base.push_back({f.poly, f.mult, 0});
  std::vector<SharedFactor> pending;
  for (const auto& f : y) pending.push_back({f.poly, 0, f.mult});

  while (!pending.empty()) {
    SharedFactor cur = std::move(pending.back());
    pending.pop_back();
    if (cur.poly.is_constant()) continue;
    bool placed = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
      SharedFactor& b = base[i];
      if (b.poly == cur.poly) {
        b.left += cur.left;
        b.right += cur.right;
        placed = true;
        break;
      }
      if (b.poly.size() <= cur.poly.size()) {
        if (auto h = divide_exact(cur.poly, b.poly)) {
          b.left += cur.left;
          b.right += cur.right;
          pending.push_back({std::move(*h), cur.left, cur.right});
          placed = true;
          break;
        }
      }
      if (cur.poly.size() <= b.poly.size()) {
        if (auto h = divide_exact(b.poly, cur.poly)) {
          SharedFactor old = std::move(b);
          base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
          pending.push_back({std::move(*h), old.left, old.right});
          pending.push_back({cur.poly, old.left + cur.left, old.right + cur.right});
          placed = true;
          break;
        }
      }
    }
    if (!placed) base.push_back(std::move(cur));
  }
  std::sort(base.begin(), base.end(),
            [](const SharedFactor& a, const SharedFactor& b) { return compare(a.poly, b.poly) < 0; });
  return base;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Removes `count` copies of `factor` from `num` while they divide exactly;
// returns the number removed.
inline unsigned cancel_factor(MultiPoly& num, const MultiPoly& factor, unsigned count) {
  unsigned removed = 0;
  while (removed < count && !num.is_zero()) {
    auto q = divide_exact(num, factor);
    if (!q) break;
    num = std::move(*q);
    ++removed;
  }
  return removed;
}

}  // namespace detail

/// Quotient of two integer polynomials. The denominator is held as a positive
/// integer content times a list of primitive factors with positive leading
/// coefficients, which gives the canonical sign. Integer content is reduced
/// eagerly; polynomial common factors are cancelled only when they are visible
/// as exact divisions by a stored denominator factor.
class RatFun {
 public:
  explicit RatFun(SymbolTablePtr table) : num_(std::move(table)), den_content_(1) {}

  explicit RatFun(MultiPoly num) : num_(std::move(num)), den_content_(1) {}

  RatFun(MultiPoly num, const MultiPoly& den) : num_(std::move(num)), den_content_(1) {
    require_same_table(num_.table(), den.table());
    if (den.is_zero()) throw ArithmeticError("division by zero");
    absorb_denominator(den);
    reduce();
  }

  static RatFun constant(SymbolTablePtr table, const BigRational& v) {
    RatFun r(MultiPoly::constant(table, boost::multiprecision::numerator(v)));
    r.den_content_ = boost::multiprecision::denominator(v);
    r.normalize_content();
    return r;
  }

  static RatFun constant(SymbolTablePtr table, long v) { return constant(std::move(table), BigRational(v)); }

  /// name^power, negative powers allowed.
  static RatFun symbol(SymbolTablePtr table, const std::string& name, int power = 1) {
    RatFun s(MultiPoly::variable(table, name, static_cast<unsigned>(power < 0 ? -power : power)));
    return power < 0 ? s.inverse() : s;
  }

  const SymbolTablePtr& table() const noexcept { return num_.table(); }
  const MultiPoly& num() const noexcept { return num_; }
  const BigInt& den_content() const noexcept { return den_content_; }
  const std::vector<DenFactor>& den_factors() const noexcept { return factors_; }

  MultiPoly den() const {
    MultiPoly d = MultiPoly::constant(table(), den_content_);
    for (const auto& f : factors_) d *= f.poly.pow(f.mult);
    return d;
  }

  /// 1 / den(), keeping the stored factorisation.
  RatFun den_reciprocal() const {
    RatFun r(MultiPoly::constant(table(), 1));
    r.den_content_ = den_content_;
    r.factors_ = factors_;
    return r;
  }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return factors_.empty() && den_content_ == 1; }
  bool is_one() const noexcept { return is_polynomial() && num_.is_one(); }

  /// Value when the function is a rational constant.
  std::optional<BigRational> as_constant() const {
    if (!factors_.empty() || !num_.is_constant()) return std::nullopt;
    return BigRational(num_.constant_term(), den_content_);
  }

  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFun operator+(const RatFun& f, const RatFun& g) { return add(f, g, false); }
  friend RatFun operator-(const RatFun& f, const RatFun& g) { return add(f, g, true); }

  friend RatFun operator*(const RatFun& f, const RatFun& g) {
    require_same_table(f.table(), g.table());
    if (f.is_zero() || g.is_zero()) return RatFun(f.table());
    if (f.is_polynomial() && g.is_polynomial()) return RatFun(f.num_ * g.num_);
    MultiPoly a = f.num_;
    MultiPoly b = g.num_;
    auto base = detail::refine_together(f.factors_, g.factors_);
    RatFun r(f.table());
    for (auto& s : base) {
      unsigned total = s.left + s.right;
      total -= detail::cancel_factor(a, s.poly, total);
      total -= detail::cancel_factor(b, s.poly, total);
      if (total) r.factors_.push_back({std::move(s.poly), total});
    }
    r.num_ = a * b;
    r.den_content_ = f.den_content_ * g.den_content_;
    r.normalize_content();
    return r;
  }

  friend RatFun operator/(const RatFun& f, const RatFun& g) { return f * g.inverse(); }

  RatFun& operator+=(const RatFun& g) { return *this = *this + g; }
  RatFun& operator-=(const RatFun& g) { return *this = *this - g; }
  RatFun& operator*=(const RatFun& g) { return *this = *this * g; }
  RatFun& operator/=(const RatFun& g) { return *this = *this / g; }

  RatFun inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero rational function");
    RatFun r(den());
    r.absorb_denominator(num_);
    r.reduce();
    return r;
  }

  RatFun pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFun result = constant(table(), 1);
    RatFun base = *this;
    auto n = static_cast<unsigned>(e);
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  /// Exact equality: the cross-multiplied difference of numerators vanishes.
  bool equals(const RatFun& g) const { return (*this - g).is_zero(); }
  friend bool operator==(const RatFun& f, const RatFun& g) { return f.equals(g); }

 private:
  static RatFun add(const RatFun& f, const RatFun& g, bool subtract) {
    require_same_table(f.table(), g.table());
    if (g.is_zero()) return f;
    if (f.is_zero()) return subtract ? -g : g;
    BigInt lc = detail::lcm(f.den_content_, g.den_content_);
    BigInt sf = lc / f.den_content_;
    BigInt sg = subtract ? BigInt(-(lc / g.den_content_)) : BigInt(lc / g.den_content_);
    RatFun r(f.table());
    r.den_content_ = lc;
    if (same_factors(f.factors_, g.factors_)) {
      r.num_ = f.num_.scaled(sf) + g.num_.scaled(sg);
      r.factors_ = f.factors_;
    } else {
      auto base = detail::refine_together(f.factors_, g.factors_);
      MultiPoly cf = MultiPoly::constant(f.table(), sf);
      MultiPoly cg = MultiPoly::constant(f.table(), sg);
      for (auto& s : base) {
        unsigned m = std::max(s.left, s.right);
        if (m > s.left) cf *= s.poly.pow(m - s.left);
        if (m > s.right) cg *= s.poly.pow(m - s.right);
        r.factors_.push_back({std::move(s.poly), m});
      }
      r.num_ = f.num_ * cf + g.num_ * cg;
    }
    r.reduce();
    return r;
  }

  static bool same_factors(const std::vector<DenFactor>& x, const std::vector<DenFactor>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].mult != y[i].mult || !(x[i].poly == y[i].poly)) return false;
    }
    return true;
  }

  // Multiplies the denominator by `d`: integer content and sign go to the
  // content/numerator, monomial content becomes single-variable factors, the
  // remaining primitive part becomes one factor.
  void absorb_denominator(const MultiPoly& d) {
    if (d.is_zero()) throw ArithmeticError("division by zero");
    BigInt c = d.content();
    MultiPoly p = d.divided_by_integer(c);
    if (p.lead().coef < 0) {
      p = -p;
      num_ = -num_;
    }
    den_content_ *= c;
    std::vector<DenFactor> incoming;
    const auto& tab = *table();
    Monomial shift;
    bool has_shift = false;
    for (std::size_t v = 0; v < tab.size(); ++v) {
      unsigned m = p.min_degree_in(v);
      if (m) {
        incoming.push_back({MultiPoly::variable(table(), tab.name(v)), m});
        shift.set(v, m);
        has_shift = true;
      }
    }
    if (has_shift) p = *divide_exact(p, MultiPoly::monomial(table(), shift, 1));
    if (!p.is_constant()) incoming.push_back({std::move(p), 1});
    if (incoming.empty()) {
      normalize_content();
      return;
    }
    auto base = detail::refine_together(factors_, incoming);
    factors_.clear();
    for (auto& s : base) {
      if (s.left + s.right) factors_.push_back({std::move(s.poly), s.left + s.right});
    }
    normalize_content();
  }

  void reduce() {
    if (num_.is_zero()) {
      factors_.clear();
      den_content_ = 1;
      return;
    }
    for (auto& f : factors_) f.mult -= detail::cancel_factor(num_, f.poly, f.mult);
    std::erase_if(factors_, [](const DenFactor& f) { return f.mult == 0; });
    normalize_content();
  }

  void normalize_content() {
    if (num_.is_zero()) {
      factors_.clear();
      den_content_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_.content(), den_content_);
    if (g > 1) {
      num_ = num_.divided_by_integer(g);
      den_content_ /= g;
    }
  }

  MultiPoly num_;
  BigInt den_content_;
  std::vector<DenFactor> factors_;
};

/// Polynomial p with every symbol replaced by the matching entry of `values`
/// (indexed like p's table). All values must share one target table.
inline RatFun substitute_poly(const MultiPoly& p, const std::vector<RatFun>& values) {
  const std::size_t n = p.table()->size();
  if (values.size() != n) throw StructuralError("substitution arity mismatch");
  if (n == 0) return RatFun(MultiPoly::constant(values.empty() ? p.table() : values[0].table(),
                                                p.constant_term()));
  SymbolTablePtr target = values[0].table();
  for (const auto& v : values) require_same_table(target, v.table());

  std::vector<unsigned> maxdeg(n);
  for (std::size_t v = 0; v < n; ++v) maxdeg[v] = p.degree_in(v);

  std::vector<MultiPoly> nums, dens;
  bool polynomial = true;
  for (std::size_t v = 0; v < n; ++v) {
    nums.push_back(values[v].num());
    if (values[v].is_polynomial() || maxdeg[v] == 0) {
      dens.push_back(MultiPoly::constant(target, 1));
    } else {
      dens.push_back(values[v].den());
      polynomial = false;
    }
  }
  std::vector<std::vector<MultiPoly>> npow(n), dpow(n);
  auto power = [](std::vector<MultiPoly>& cache, const MultiPoly& base, unsigned e) -> const MultiPoly& {
    if (cache.empty()) cache.push_back(MultiPoly::constant(base.table(), 1));
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };

  MultiPoly acc(target);
  for (const auto& t : p.terms()) {
    MultiPoly term = MultiPoly::constant(target, t.coef);
    for (std::size_t v = 0; v < n; ++v) {
      unsigned e = t.mono[v];
      if (e) term *= power(npow[v], nums[v], e);
      if (!polynomial && maxdeg[v] > e) term *= power(dpow[v], dens[v], maxdeg[v] - e);
    }
    acc += term;
  }
  RatFun result(std::move(acc));
  if (!polynomial) {
    for (std::size_t v = 0; v < n; ++v) {
      if (maxdeg[v] && !values[v].is_polynomial()) {
        result *= values[v].den_reciprocal().pow(static_cast<int>(maxdeg[v]));
      }
    }
  }
  return result;
}

/// Simultaneous substitution. Symbols not assigned are mapped by name into the
/// target table (the table of the assigned values, or f's own table when the
/// assignment list is empty or `target` is given explicitly).
inline RatFun substitute(const RatFun& f, const std::vector<std::pair<std::string, RatFun>>& assignments,
                         SymbolTablePtr target = nullptr) {
  if (!target) target = assignments.empty() ? f.table() : assignments.front().second.table();
  const auto& src = *f.table();
  std::vector<RatFun> values;
  values.reserve(src.size());
  for (std::size_t v = 0; v < src.size(); ++v) {
    const std::string& name = src.name(v);
    std::optional<RatFun> val;
    for (const auto& [sym, value] : assignments) {
      if (sym == name) {
        if (val) throw StructuralError("symbol '" + name + "' assigned twice");
        require_same_table(target, value.table());
        val = value;
      }
    }
    if (!val) {
      if (!target->index(name)) throw StructuralError("symbol '" + name + "' missing from target table");
      val = RatFun::symbol(target, name);
    }
    values.push_back(std::move(*val));
  }
  for (const auto& [sym, value] : assignments) {
    if (!src.index(sym)) throw StructuralError("symbol '" + sym + "' not declared");
  }
  RatFun result = substitute_poly(f.num(), values);
  if (f.den_content() != 1) result *= RatFun::constant(target, BigRational(1, f.den_content()));
  for (const auto& fac : f.den_factors()) {
    RatFun s = substitute_poly(fac.poly, values);
    if (s.is_zero()) throw ArithmeticError("substitution produces a zero denominator");
    result *= s.inverse().pow(static_cast<int>(fac.mult));
  }
  return result;
}

/// Re-expresses f over a table that declares (at least) the same symbol names.
inline RatFun embed(const RatFun& f, SymbolTablePtr target) { return substitute(f, {}, std::move(target)); }

/// Exact value at a rational point assigning every symbol.
inline BigRational eval_rational(const RatFun& f, const std::vector<std::pair<std::string, BigRational>>& point) {
  const auto& tab = *f.table();
  std::vector<BigRational> values(tab.size());
  std::vector<bool> seen(tab.size(), false);
  for (const auto& [name, v] : point) {
    auto idx = tab.index(name);
    if (!idx) throw StructuralError("symbol '" + name + "' not declared");
    values[*idx] = v;
    seen[*idx] = true;
  }
  for (std::size_t i = 0; i < tab.size(); ++i) {
    if (!seen[i]) throw StructuralError("evaluation point does not assign '" + tab.name(i) + "'");
  }
  BigRational den(f.den_content());
  for (const auto& fac : f.den_factors()) {
    BigRational v = fac.poly.evaluate(values);
    for (unsigned k = 0; k < fac.mult; ++k) den *= v;
  }
  if (den == 0) throw ArithmeticError("pole: denominator vanishes at the evaluation point");
  return f.num().evaluate(values) / den;
}

}  // namespace qexp

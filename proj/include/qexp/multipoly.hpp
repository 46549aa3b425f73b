#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qexp/errors.hpp"
#include "qexp/symbols.hpp"

namespace qexp {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                                  boost::multiprecision::et_off>;

/// Exponent vector with the total degree in slot 0. Slots are 16-bit lanes
/// packed high-to-low into three words, so comparing the words
/// lexicographically is the graded-lex order and multiplication is word
/// addition (no lane can carry while the total degree fits in 16 bits).
class Monomial {
 public:
  using Exp = std::uint16_t;

  Monomial() = default;

  static Monomial variable(std::size_t var, unsigned power) {
    Monomial m;
    m.set(var, power);
    return m;
  }

  Exp degree() const noexcept { return slot(0); }
  Exp operator[](std::size_t var) const noexcept { return slot(var + 1); }
  bool is_one() const noexcept { return slot(0) == 0; }

  void set(std::size_t var, unsigned power) {
    unsigned deg = unsigned{slot(0)} - slot(var + 1) + power;
    if (power > kMax || deg > kMax) throw ArithmeticError("exponent overflow");
    put(var + 1, power);
    put(0, deg);
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    if (unsigned{x.slot(0)} + y.slot(0) > kMax) throw ArithmeticError("exponent overflow");
    Monomial r;
    for (std::size_t i = 0; i < kWords; ++i) r.w_[i] = x.w_[i] + y.w_[i];
    return r;
  }

  bool divides(const Monomial& other) const noexcept {
    if (slot(0) > other.slot(0)) return false;
    for (std::size_t i = 1; i < kSlots; ++i) {
      if (slot(i) > other.slot(i)) return false;
    }
    return true;
  }

  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kWords; ++i) r.w_[i] = other.w_[i] - w_[i];
    return r;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  static constexpr unsigned kMax = std::numeric_limits<Exp>::max();
  static constexpr std::size_t kSlots = kMaxSymbols + 1;
  static constexpr std::size_t kWords = (kSlots + 3) / 4;

  static constexpr unsigned shift(std::size_t i) noexcept { return static_cast<unsigned>(3 - i % 4) * 16; }

  Exp slot(std::size_t i) const noexcept { return static_cast<Exp>(w_[i / 4] >> shift(i)); }

  void put(std::size_t i, unsigned v) noexcept {
    std::uint64_t mask = std::uint64_t{0xFFFF} << shift(i);
    w_[i / 4] = (w_[i / 4] & ~mask) | (std::uint64_t{v} << shift(i));
  }

  std::array<std::uint64_t, kWords> w_{};
};

struct Term {
  Monomial mono;
  BigInt coef;
};

/// Sparse multivariate polynomial with integer coefficients. Terms are kept in
/// strictly descending graded-lex order with no zero coefficients.
class MultiPoly {
 public:
  explicit MultiPoly(SymbolTablePtr table) : table_(std::move(table)) {
    if (!table_) throw StructuralError("null symbol table");
  }

  static MultiPoly constant(SymbolTablePtr table, const BigInt& c) {
    MultiPoly p(std::move(table));
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
  }

  static MultiPoly variable(SymbolTablePtr table, const std::string& name, unsigned power = 1) {
    std::size_t idx = table->require(name);
    MultiPoly p(std::move(table));
    p.terms_.push_back({Monomial::variable(idx, power), BigInt{1}});
    return p;
  }

  static MultiPoly monomial(SymbolTablePtr table, const Monomial& m, const BigInt& c) {
    MultiPoly p(std::move(table));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds from unsorted terms; equal monomials are combined.
  static MultiPoly from_terms(SymbolTablePtr table, std::vector<Term> terms) {
    MultiPoly p(std::move(table));
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.mono > y.mono; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
        if (p.terms_.back().coef == 0) p.terms_.pop_back();
      } else if (t.coef != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const SymbolTablePtr& table() const noexcept { return table_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  bool is_one() const noexcept {
    return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1;
  }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  const Term& lead() const { return terms_.front(); }
  const Term& trail() const { return terms_.back(); }

  BigInt constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return 0;
  }

  unsigned degree_in(std::size_t var) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[var]);
    return d;
  }

  unsigned min_degree_in(std::size_t var) const noexcept {
    if (terms_.empty()) return 0;
    unsigned d = std::numeric_limits<unsigned>::max();
    for (const auto& t : terms_) d = std::min<unsigned>(d, t.mono[var]);
    return d;
  }

  /// gcd of all coefficients, non-negative.
  BigInt content() const {
    BigInt g = 0;
    for (const auto& t : terms_) {
      g = boost::multiprecision::gcd(g, t.coef);
      if (g == 1) break;
    }
    return boost::multiprecision::abs(g);
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& x, const MultiPoly& y) { return combine(x, y, false); }
  friend MultiPoly operator-(const MultiPoly& x, const MultiPoly& y) { return combine(x, y, true); }
  MultiPoly& operator+=(const MultiPoly& y) { return *this = *this + y; }
  MultiPoly& operator-=(const MultiPoly& y) { return *this = *this - y; }

  MultiPoly scaled(const BigInt& c) const {
    if (c == 0) return MultiPoly(table_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  /// Exact division of every coefficient by c (caller guarantees divisibility).
  MultiPoly divided_by_integer(const BigInt& c) const {
    if (c == 0) throw ArithmeticError("division by zero");
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef /= c;
    return r;
  }

  MultiPoly times_term(const Monomial& m, const BigInt& c) const {
    if (c == 0) return MultiPoly(table_);
    MultiPoly r(table_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
    require_same_table(x.table_, y.table_);
    if (x.is_zero() || y.is_zero()) return MultiPoly(x.table_);
    const MultiPoly& small = x.size() <= y.size() ? x : y;
    const MultiPoly& large = x.size() <= y.size() ? y : x;
    if (small.size() == 1) return large.times_term(small.lead().mono, small.lead().coef);
    if (small.size() <= 4) {
      MultiPoly r = large.times_term(small.terms_[0].mono, small.terms_[0].coef);
      for (std::size_t i = 1; i < small.size(); ++i) {
        r = combine(r, large.times_term(small.terms_[i].mono, small.terms_[i].coef), false);
      }
      return r;
    }
    return heap_multiply(small, large);
  }
  MultiPoly& operator*=(const MultiPoly& y) { return *this = *this * y; }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(table_, 1);
    MultiPoly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& x, const MultiPoly& y) {
    require_same_table(x.table_, y.table_);
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i) {
      if (x.terms_[i].mono != y.terms_[i].mono || x.terms_[i].coef != y.terms_[i].coef) return false;
    }
    return true;
  }

  /// Total order used to sort factor lists deterministically.
  friend std::strong_ordering compare(const MultiPoly& x, const MultiPoly& y) {
    std::size_t n = std::min(x.terms_.size(), y.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = x.terms_[i].mono <=> y.terms_[i].mono; c != 0) return c;
      if (x.terms_[i].coef != y.terms_[i].coef) {
        return x.terms_[i].coef < y.terms_[i].coef ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
      }
    }
    return x.terms_.size() <=> y.terms_.size();
  }

  /// Quotient p / d when d divides p exactly over the integers, otherwise
  /// nullopt. Uses heap-based division so that the cost is proportional to
  /// |quotient|·|d| rather than |quotient|·|p|.
  friend std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& d) {
    require_same_table(p.table_, d.table_);
    if (d.is_zero()) throw ArithmeticError("division by the zero polynomial");
    if (p.is_zero()) return MultiPoly(p.table_);
    const Term& dl = d.lead();
    if (!dl.mono.divides(p.lead().mono) || !d.trail().mono.divides(p.trail().mono)) {
      return std::nullopt;
    }
    if (d.is_monomial()) {
      MultiPoly r(p.table_);
      r.terms_.reserve(p.size());
      for (const auto& t : p.terms_) {
        if (!dl.mono.divides(t.mono)) return std::nullopt;
        BigInt qc, rc;
        boost::multiprecision::divide_qr(t.coef, dl.coef, qc, rc);
        if (rc != 0) return std::nullopt;
        r.terms_.push_back({dl.mono.quotient_of(t.mono), std::move(qc)});
      }
      return r;
    }
    const std::size_t nvars = p.table_->size();
    for (std::size_t v = 0; v < nvars; ++v) {
      if (d.degree_in(v) > p.degree_in(v)) return std::nullopt;
    }
    // An exact quotient has integer coefficients, so d(x) | p(x) at integer points.
    BigInt dv = d.probe_value();
    if (dv != 0 && p.probe_value() % dv != 0) return std::nullopt;

    struct Entry {
      Monomial mono;
      std::size_t qi;
      std::size_t dj;
    };
    auto less = [](const Entry& x, const Entry& y) { return x.mono < y.mono; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(less)> heap(less);

    MultiPoly quotient(p.table_);
    std::size_t k = 0;
    while (k < p.size() || !heap.empty()) {
      Monomial m;
      if (k < p.size() && (heap.empty() || !(p.terms_[k].mono < heap.top().mono))) {
        m = p.terms_[k].mono;
      } else {
        m = heap.top().mono;
      }
      BigInt c = 0;
      if (k < p.size() && p.terms_[k].mono == m) c += p.terms_[k++].coef;
      while (!heap.empty() && heap.top().mono == m) {
        Entry e = heap.top();
        heap.pop();
        c -= quotient.terms_[e.qi].coef * d.terms_[e.dj].coef;
        if (e.dj + 1 < d.size()) {
          heap.push({quotient.terms_[e.qi].mono * d.terms_[e.dj + 1].mono, e.qi, e.dj + 1});
        }
      }
      if (c == 0) continue;
      if (!dl.mono.divides(m)) return std::nullopt;
      BigInt qc, rc;
      boost::multiprecision::divide_qr(c, dl.coef, qc, rc);
      if (rc != 0) return std::nullopt;
      quotient.terms_.push_back({dl.mono.quotient_of(m), std::move(qc)});
      std::size_t qi = quotient.terms_.size() - 1;
      heap.push({quotient.terms_[qi].mono * d.terms_[1].mono, qi, 1});
    }
    return quotient;
  }

  /// Evaluates with every symbol replaced by an exact rational.
  BigRational evaluate(const std::vector<BigRational>& point) const {
    if (point.size() != table_->size()) throw StructuralError("evaluation point arity mismatch");
    std::vector<std::vector<BigRational>> powers(point.size());
    auto power = [&](std::size_t v, unsigned e) -> const BigRational& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(BigRational(1));
      while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
      return cache[e];
    };
    BigRational sum = 0;
    for (const auto& t : terms_) {
      BigRational term(t.coef);
      for (std::size_t v = 0; v < point.size(); ++v) {
        if (t.mono[v]) term *= power(v, t.mono[v]);
      }
      sum += term;
    }
    return sum;
  }

 private:
  // Value at the integer point x_v = kProbe[v].
  BigInt probe_value() const {
    static constexpr unsigned kProbe[kMaxSymbols] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    std::vector<std::vector<BigInt>> powers(table_->size());
    BigInt sum = 0;
    for (const auto& t : terms_) {
      BigInt term = t.coef;
      for (std::size_t v = 0; v < table_->size(); ++v) {
        unsigned e = t.mono[v];
        if (!e) continue;
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(BigInt(1));
        while (cache.size() <= e) cache.push_back(cache.back() * kProbe[v]);
        term *= cache[e];
      }
      sum += term;
    }
    return sum;
  }

  static MultiPoly combine(const MultiPoly& x, const MultiPoly& y, bool subtract) {
    require_same_table(x.table_, y.table_);
    MultiPoly r(x.table_);
    r.terms_.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x.terms_[i].mono > y.terms_[j].mono)) {
        r.terms_.push_back(x.terms_[i++]);
      } else if (i == x.size() || y.terms_[j].mono > x.terms_[i].mono) {
        r.terms_.push_back(y.terms_[j++]);
        if (subtract) r.terms_.back().coef = -r.terms_.back().coef;
      } else {
        BigInt c = subtract ? x.terms_[i].coef - y.terms_[j].coef : x.terms_[i].coef + y.terms_[j].coef;
        if (c != 0) r.terms_.push_back({x.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // Johnson's heap multiplication: one cursor into `large` per term of `small`.
  static MultiPoly heap_multiply(const MultiPoly& small, const MultiPoly& large) {
    struct Entry {
      Monomial mono;
      std::size_t i;
      std::size_t j;
    };
    auto less = [](const Entry& x, const Entry& y) { return x.mono < y.mono; };
    std::vector<Entry> storage;
    storage.reserve(small.size());
    std::priority_queue<Entry, std::vector<Entry>, decltype(less)> heap(less, std::move(storage));
    for (std::size_t i = 0; i < small.size(); ++i) {
      heap.push({small.terms_[i].mono * large.terms_[0].mono, i, 0});
    }
    MultiPoly r(small.table_);
    BigInt prod;
    while (!heap.empty()) {
      Monomial m = heap.top().mono;
      BigInt c = 0;
      while (!heap.empty() && heap.top().mono == m) {
        Entry e = heap.top();
        heap.pop();
        boost::multiprecision::multiply(prod, small.terms_[e.i].coef, large.terms_[e.j].coef);
        c += prod;
        if (e.j + 1 < large.size()) {
          heap.push({small.terms_[e.i].mono * large.terms_[e.j + 1].mono, e.i, e.j + 1});
        }
      }
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    }
    return r;
  }

  SymbolTablePtr table_;
  std::vector<Term> terms_;
};

inline std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& d);

}  // namespace qexp

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "qexp/ratfun.hpp"

namespace qexp {

// Rendering: terms in descending graded-lex order, "c*x^e*y" per term,
// " + " / " - " between terms. Polynomials render bare; proper quotients
// render as "(num)/(den)".

inline std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  const auto& tab = *p.table();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    BigInt c = t.coef;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < tab.size(); ++v) {
      unsigned e = t.mono[v];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += tab.name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.str() + "*" + mono;
    }
  }
  return out;
}

inline std::string to_string(const RatFun& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, SymbolTablePtr table) : s_(text), table_(std::move(table)) {}

  RatFun parse() {
    RatFun r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFun expr() {
    RatFun acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFun term() {
    RatFun acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        RatFun d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFun unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFun power() {
    RatFun base = atom();
    if (!accept('^')) return base;
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (negative && base.is_zero()) fail("zero raised to a negative power");
    return base.pow(negative ? -e : e);
  }

  RatFun atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFun(MultiPoly::constant(table_, BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!table_->index(name)) fail("undeclared symbol '" + name + "'");
      return RatFun::symbol(table_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  SymbolTablePtr table_;
};

}  // namespace detail

/// Parses the literal grammar: integers, symbols, + - * / ^ (integer
/// exponent, possibly negative), parentheses. Every symbol must be declared.
inline RatFun parse_ratfun(std::string_view text, SymbolTablePtr table) {
  return detail::ExprParser(text, std::move(table)).parse();
}

/// Identifiers appearing in a literal, in order of first appearance.
inline std::vector<std::string> collect_symbols(std::string_view text) {
  std::vector<std::string> names;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name(text.substr(start, i - start));
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
  }
  return names;
}

}  // namespace qexp

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qexp/errors.hpp"

namespace qexp {

/// Upper bound on the number of symbols in one table. Exponent vectors are
/// stored inline with this fixed capacity.
inline constexpr std::size_t kMaxSymbols = 10;

/// An ordered, immutable list of symbol names. The declaration order fixes the
/// lexicographic part of the graded-lex term order: earlier symbols are more
/// significant.
class SymbolTable {
 public:
  explicit SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxSymbols) {
      throw StructuralError("symbol table holds at most " + std::to_string(kMaxSymbols) +
                            " symbols");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i])) {
        throw StructuralError("invalid symbol name '" + names_[i] + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw StructuralError("duplicate symbol '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index(const std::string& n) const {
    auto it = std::find(names_.begin(), names_.end(), n);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t require(const std::string& n) const {
    if (auto i = index(n)) return *i;
    throw StructuralError("symbol '" + n + "' is not declared in this table");
  }

  bool same_as(const SymbolTable& other) const noexcept {
    return this == &other || names_ == other.names_;
  }

  static bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

 private:
  std::vector<std::string> names_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

inline SymbolTablePtr make_symbols(std::vector<std::string> names) {
  return std::make_shared<const SymbolTable>(std::move(names));
}

/// New table holding the symbols of `base` followed by any of `extra` not
/// already present. Values over `base` must be re-embedded to be used with it.
inline SymbolTablePtr extend_symbols(const SymbolTable& base, const std::vector<std::string>& extra) {
  std::vector<std::string> names = base.names();
  for (const auto& e : extra) {
    if (std::find(names.begin(), names.end(), e) == names.end()) names.push_back(e);
  }
  return make_symbols(std::move(names));
}

inline void require_same_table(const SymbolTablePtr& x, const SymbolTablePtr& y) {
  if (x == y) return;
  if (!x || !y || !x->same_as(*y)) throw StructuralError("symbol table mismatch");
}

}  // namespace qexp

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qexp/properties.hpp"

namespace qexp {

struct CheckEntry {
  std::string name;
  std::function<IdentityReport(std::size_t order, std::uint64_t seed)> run;
};

/// Every symbolic check, sorted by name.
inline const std::vector<CheckEntry>& registered_checks() {
  static const std::vector<CheckEntry> checks = [] {
    std::vector<CheckEntry> v;
    for (auto& [name, build] : identity_builders()) {
      v.push_back({name, [build = build](std::size_t n, std::uint64_t s) { return evaluate(build(n, s)); }});
    }
    using S = std::uint64_t;
    v.push_back({"b_column_peel", [](std::size_t n, S) { return check_b_column_peel(n); }});
    v.push_back({"b_eq_aq_consistency", [](std::size_t n, S s) { return check_b_eq_aq_consistency(n, s); }});
    v.push_back({"b_zero_consistency", [](std::size_t n, S s) { return check_b_zero_consistency(n, s); }});
    v.push_back({"carlitz_consistency", [](std::size_t n, S s) { return check_carlitz_consistency(n, s); }});
    v.push_back({"expansion_dual_path", [](std::size_t n, S s) { return check_expansion_dual_path(n, 25, s); }});
    v.push_back({"finite_genfun", [](std::size_t n, S) { return check_finite_genfun(std::min<std::size_t>(n, 8)); }});
    v.push_back({"gn_specialization", [](std::size_t n, S) { return check_gn_specialization(n); }});
    v.push_back({"inverse_closed_form", [](std::size_t n, S) { return check_inverse_closed_form(n); }});
    v.push_back({"inverse_column_equation", [](std::size_t n, S) { return check_inverse_column_equation(n, 6); }});
    v.push_back({"inverse_homogeneity", [](std::size_t n, S) { return check_inverse_homogeneity(n); }});
    v.push_back({"inverse_k0_identity", [](std::size_t n, S) { return check_inverse_k0_identity(n); }});
    v.push_back({"inverse_pair", [](std::size_t n, S) { return check_inverse_pair(n); }});
    v.push_back({"inverse_recurrence", [](std::size_t n, S) { return check_inverse_recurrence(n); }});
    v.push_back({"inverse_three_term", [](std::size_t n, S) { return check_inverse_three_term(n); }});
    v.push_back({"polynomial_b_eq_aq", [](std::size_t n, S) { return check_polynomial_b_eq_aq(n); }});
    v.push_back({"sn_divisibility", [](std::size_t n, S) { return check_sn_divisibility(std::min<std::size_t>(n, 6)); }});
    v.push_back({"specialization_coogan_ono", [](std::size_t n, S) { return check_specialization_coogan_ono(n); }});
    v.push_back({"specialization_coogan_ono_variant",
                 [](std::size_t n, S) { return check_specialization_coogan_ono_variant(n); }});
    std::sort(v.begin(), v.end(), [](const CheckEntry& x, const CheckEntry& y) { return x.name < y.name; });
    return v;
  }();
  return checks;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : registered_checks()) names.push_back(c.name);
  return names;
}

/// Runs every check whose name contains `filter`, in name order.
inline std::vector<IdentityReport> run_all(std::size_t order, const std::string& filter = "", std::uint64_t seed = 7) {
  std::vector<IdentityReport> out;
  for (const auto& c : registered_checks()) {
    if (c.name.find(filter) != std::string::npos) out.push_back(c.run(order, seed));
  }
  return out;
}

/// Runs the named checks in the order given. Unknown names raise StructuralError.
inline std::vector<IdentityReport> run_named(const std::vector<std::string>& names, std::size_t order,
                                             std::uint64_t seed = 7) {
  const auto& all = registered_checks();
  std::vector<const CheckEntry*> picked;
  for (const auto& n : names) {
    auto it = std::find_if(all.begin(), all.end(), [&](const CheckEntry& c) { return c.name == n; });
    if (it == all.end()) throw StructuralError("unknown check '" + n + "'");
    picked.push_back(&*it);
  }
  std::vector<IdentityReport> out;
  for (const auto* c : picked) out.push_back(c->run(order, seed));
  return out;
}

}  // namespace qexp

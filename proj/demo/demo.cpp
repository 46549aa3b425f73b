// Walk through the library on small inputs.

#include <iostream>

#include "qexp/qexp.hpp"

using namespace qexp;

int main() {
  auto t = make_symbols({"q", "a", "b"});
  RatFun a = RatFun::symbol(t, "a"), b = RatFun::symbol(t, "b");

  std::cout << "Inverse of the base matrix, N = 3:\n";
  LTMatrix inv = lt_inverse(base_matrix(a, b, 3));
  for (std::size_t i = 0; i <= 3; ++i) {
    for (std::size_t j = 0; j <= i; ++j) std::cout << "  B[" << i << "," << j << "] = " << to_string(inv(i, j)) << "\n";
  }

  // a = 1, b = -q turns (1 + z) times the partial theta series into all-ones coefficients.
  const std::size_t n = 8;
  RatFun one = RatFun::constant(t, 1), minus_q = -q_power(t, 1);
  TruncSeries theta = partial_theta(2, q_power(t, 1), 2, n);
  TruncSeries f = theta + theta.lifted(1, n);
  ExpansionResult r = expand_closed_form(f, one, minus_q);
  std::cout << "\nCoefficients of (1+z) sum (-1)^m z^{2m} q^{m^2} at a = 1, b = -q:\n ";
  for (const auto& c : r.coeffs) std::cout << " " << to_string(c);
  std::cout << "\n";

  std::cout << "\ng_n polynomials:\n";
  auto g = gn_polynomials(make_symbols({"q"}), 5);
  for (std::size_t i = 1; i < g.size(); ++i) std::cout << "  g_" << i << " = " << to_string(g[i]) << "\n";

  std::cout << "\nSymbolic checks at N = 6:\n";
  for (const auto& rep : run_all(6, "rogers")) std::cout << "  " << rep.name << ": " << (rep.passed ? "pass" : "FAIL") << "\n";

  std::cout << "\nNumeric Rogers-Fine at q=0.1, a=0.3, b=0.5, z=0.2 (128 bits):\n";
  NumericReport nr = check_identity_numeric("rogers_fine", {{"q", "0.1"}, {"a", "0.3"}, {"b", "0.5"}, {"z", "0.2"}},
                                            BigReal::parse("1e-25"), 128);
  std::cout << "  lhs = " << nr.lhs.str(25) << "\n  rhs = " << nr.rhs.str(25) << "\n  |diff| = " << nr.abs_diff.str(3)
            << "\n";
}

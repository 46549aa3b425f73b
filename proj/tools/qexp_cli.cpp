// qexp: command-line front end for the expansion and verification library.
//
// Exit codes: 0 every selected check passed, 1 some check failed,
// 2 usage, parse or domain error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qexp/qexp.hpp"

namespace {

using namespace qexp;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::size_t order = 10;
  std::string a = "a";
  std::string b = "b";
  std::string output = "text";
  std::uint64_t seed = 7;
  long precision = 128;
  std::string tol = "1e-25";
  std::string points;

  bool json() const { return output == "json"; }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--n", cfg.order, "truncation order N")->check(CLI::NonNegativeNumber);
  cmd->add_option("--output", cfg.output, "output format")->check(CLI::IsMember({"text", "json"}));
}

void add_params(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--a", cfg.a, "parameter a (rational-function literal)");
  cmd->add_option("--b", cfg.b, "parameter b (rational-function literal)");
}

void add_numeric(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--precision", cfg.precision, "MPFR precision in bits")->check(CLI::Range(16L, 1L << 20));
  cmd->add_option("--tol", cfg.tol, "absolute tolerance");
}

/// Table holding q, a, b and any other identifier used by the literals.
SymbolTablePtr literal_table(const std::vector<std::string>& literals) {
  std::vector<std::string> names{"q", "a", "b"};
  for (const auto& lit : literals) {
    for (auto& s : collect_symbols(lit)) {
      if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
    }
  }
  if (names.size() > kMaxSymbols) throw ParseError("too many distinct symbols in the literals");
  return make_symbols(names);
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_identity_text(const IdentityReport& r) {
  std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (N=" << r.order << ")";
  if (!r.parameters.empty()) {
    std::cout << " [";
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
      std::cout << (i ? ", " : "") << r.parameters[i].first << "=" << r.parameters[i].second;
    }
    std::cout << "]";
  }
  std::cout << "\n";
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    std::cout << "  first failure at index " << f.index;
    if (f.column) std::cout << ", column " << *f.column;
    std::cout << "\n    lhs: " << f.lhs << "\n    rhs: " << f.rhs << "\n";
  }
}

void print_numeric_text(const NumericReport& r) {
  std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " {";
  for (std::size_t i = 0; i < r.point.size(); ++i) {
    std::cout << (i ? ", " : "") << r.point[i].first << "=" << r.point[i].second;
  }
  std::cout << "} |lhs-rhs|=" << r.abs_diff.str(6) << " tol=" << r.tolerance.str(3) << " bits=" << r.precision
            << "\n";
}

int cmd_matrix(const RunConfig& cfg, const std::string& which) {
  auto t = literal_table({cfg.a, cfg.b});
  RatFun a = parse_ratfun(cfg.a, t), b = parse_ratfun(cfg.b, t);
  LTMatrix m = base_matrix(a, b, cfg.order);
  if (which == "B") m = lt_inverse(m);
  if (cfg.json()) {
    print_json(to_json(m));
  } else {
    for (std::size_t i = 0; i <= m.n(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) std::cout << which << "[" << i << "," << j << "] = " << to_string(m(i, j)) << "\n";
    }
  }
  return kExitPass;
}

int cmd_expand(const RunConfig& cfg, const std::string& builtin, const std::vector<std::string>& coeffs, long k) {
  if (builtin.empty() == coeffs.empty()) throw ParseError("expand needs exactly one of --builtin or --coeffs");
  std::vector<std::string> literals{cfg.a, cfg.b};
  literals.insert(literals.end(), coeffs.begin(), coeffs.end());
  auto t = literal_table(literals);
  RatFun a = parse_ratfun(cfg.a, t), b = parse_ratfun(cfg.b, t);
  const std::size_t n = cfg.order;

  TruncSeries f(t, n);
  if (!coeffs.empty()) {
    if (coeffs.size() > n + 1) throw ParseError("more coefficients than the order allows");
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.set(i, parse_ratfun(coeffs[i], t));
  } else if (builtin == "one") {
    f = TruncSeries::one(t, n);
  } else if (builtin == "basek") {
    if (k < 0) throw ParseError("--k must be non-negative");
    if (static_cast<std::size_t>(k) > n) throw ParseError("--k exceeds the order");
    f = base_element(static_cast<std::size_t>(k), a, b, n);
  } else if (builtin == "coogan_ono") {
    // (1 + z) sum (-1)^m z^{2m} q^{m²}
    TruncSeries theta = partial_theta(2, q_power(t, 1), 2, n);
    f = theta + theta.lifted(1, n);
  } else {
    throw ParseError("unknown builtin '" + builtin + "' (expected coogan_ono, one or basek)");
  }

  ExpansionResult tri = expand_triangular(f, a, b);
  ExpansionResult closed = expand_closed_form(f, a, b);
  auto diff = first_difference(TruncSeries(tri.coeffs), TruncSeries(closed.coeffs));
  bool agree = !diff;

  if (cfg.json()) {
    Json methods = Json::array();
    for (const auto* r : {&tri, &closed}) {
      methods.push_back(Json{{"method", method_name(r->method)}, {"series", to_json(TruncSeries(r->coeffs))}});
    }
    print_json(Json{{"order", n}, {"methods", std::move(methods)}, {"agree", agree}});
  } else {
    for (std::size_t i = 0; i <= n; ++i) std::cout << "c_" << i << " = " << to_string(tri.coeffs[i]) << "\n";
    std::cout << method_name(tri.method) << " and " << method_name(closed.method)
              << (agree ? " agree\n" : " disagree at index " + std::to_string(*diff) + "\n");
  }
  return agree ? kExitPass : kExitFail;
}

int cmd_gn(const RunConfig& cfg) {
  auto t = make_symbols({"q"});
  auto g = gn_polynomials(t, cfg.order);
  if (cfg.json()) {
    Json arr = Json::array();
    for (std::size_t i = 1; i < g.size(); ++i) arr.push_back(to_string(g[i]));
    print_json(Json{{"n", cfg.order}, {"g", std::move(arr)}});
  } else {
    for (std::size_t i = 1; i < g.size(); ++i) std::cout << "g_" << i << " = " << to_string(g[i]) << "\n";
  }
  return kExitPass;
}

int emit_reports(const RunConfig& cfg, const std::vector<IdentityReport>& sym, const std::vector<NumericReport>& num) {
  bool ok = true;
  for (const auto& r : sym) ok = ok && r.passed;
  for (const auto& r : num) ok = ok && r.passed;
  if (cfg.json()) {
    Json arr = Json::array();
    for (const auto& r : sym) arr.push_back(to_json(r));
    for (const auto& r : num) arr.push_back(to_json(r));
    print_json(arr);
  } else {
    for (const auto& r : sym) print_identity_text(r);
    for (const auto& r : num) print_numeric_text(r);
    std::size_t total = sym.size() + num.size(), failed = 0;
    for (const auto& r : sym) failed += !r.passed;
    for (const auto& r : num) failed += !r.passed;
    std::cout << (total - failed) << "/" << total << " passed\n";
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& names) {
  if (names.empty()) throw ParseError("verify needs at least one check name");
  const auto known = check_names();
  for (const auto& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      std::string msg = "unknown check '" + n + "'; registered checks:";
      for (const auto& k : known) msg += "\n  " + k;
      throw ParseError(msg);
    }
  }
  return emit_reports(cfg, run_named(names, cfg.order, cfg.seed), {});
}

std::vector<NumericReport> run_numeric_grid(const RunConfig& cfg) {
  BigReal tol = BigReal::parse(cfg.tol, cfg.precision);
  std::vector<NumericReport> out;
  for (const auto& [name, point] : default_numeric_grid()) {
    out.push_back(check_identity_numeric(name, point, tol, cfg.precision));
  }
  return out;
}

int cmd_verify_all(const RunConfig& cfg, const std::string& filter, bool symbolic_only) {
  auto sym = run_all(cfg.order, filter, cfg.seed);
  std::vector<NumericReport> num;
  if (!symbolic_only) {
    for (auto& r : run_numeric_grid(cfg)) {
      if (r.name.find(filter) != std::string::npos) num.push_back(std::move(r));
    }
  }
  return emit_reports(cfg, sym, num);
}

int cmd_numeric_verify(const RunConfig& cfg, const std::string& identity) {
  const auto& names = numeric_identity_names();
  if (std::find(names.begin(), names.end(), identity) == names.end()) {
    std::string msg = "unknown numeric identity '" + identity + "'; available:";
    for (const auto& k : names) msg += "\n  " + k;
    throw ParseError(msg);
  }
  std::vector<NumericPoint> points;
  if (!cfg.points.empty()) {
    std::ifstream in(cfg.points);
    if (!in) throw ParseError("cannot read points file '" + cfg.points + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    points = parse_points(buf.str());
  } else {
    for (const auto& [name, p] : default_numeric_grid()) {
      if (name == identity) points.push_back(p);
    }
  }
  BigReal tol = BigReal::parse(cfg.tol, cfg.precision);
  std::vector<NumericReport> reports;
  for (const auto& p : points) reports.push_back(check_identity_numeric(identity, p, tol, cfg.precision));
  return emit_reports(cfg, {}, reports);
}

int cmd_bench(const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  auto t = literal_table({cfg.a, cfg.b});
  RatFun a = parse_ratfun(cfg.a, t), b = parse_ratfun(cfg.b, t);
  Json rows = Json::array();
  auto time = [&](const std::string& label, auto&& fn) {
    auto start = Clock::now();
    fn();
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    rows.push_back(Json{{"task", label}, {"ms", ms}});
    if (!cfg.json()) std::cout << label << ": " << ms << " ms\n";
  };
  const std::size_t n = cfg.order;
  LTMatrix m = base_matrix(a, b, n);
  time("lt_inverse", [&] { (void)lt_inverse(m); });
  time("inverse_matrix_closed_form", [&] { (void)inverse_matrix_closed_form(a, b, n); });
  DeterministicRng rng(cfg.seed);
  TruncSeries f = random_series(t, n, rng);
  time("expand_triangular", [&] { (void)expand_triangular(f, a, b); });
  time("expand_closed_form", [&] { (void)expand_closed_form(f, a, b); });
  for (const auto& [name, build] : identity_builders()) {
    time("identity " + name, [&, &build = build] { (void)evaluate(build(n, cfg.seed)); });
  }
  if (cfg.json()) print_json(Json{{"order", n}, {"timings", std::move(rows)}});
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-expansion toolkit: matrices, expansions and identity verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string which = "B";
  auto* matrix = app.add_subcommand("matrix", "print the base matrix A or its inverse B");
  add_common(matrix, cfg);
  add_params(matrix, cfg);
  matrix->add_option("--which", which, "A or B")->check(CLI::IsMember({"A", "B"}));

  std::string builtin;
  std::vector<std::string> coeffs;
  long k = 0;
  auto* expand = app.add_subcommand("expand", "expand a series in the base, by both methods");
  add_common(expand, cfg);
  add_params(expand, cfg);
  expand->add_option("--builtin", builtin, "coogan_ono, one or basek");
  expand->add_option("--coeffs", coeffs, "coefficients of F, lowest first (padded with zeros)");
  expand->add_option("--k", k, "index for the basek builtin");

  auto* gn = app.add_subcommand("gn", "print g_1 ... g_N");
  add_common(gn, cfg);

  std::vector<std::string> names;
  auto* verify = app.add_subcommand("verify", "run named symbolic checks");
  add_common(verify, cfg);
  verify->add_option("--seed", cfg.seed, "seed for randomized cases");
  verify->add_option("names", names, "check names");

  std::string filter;
  bool symbolic_only = false;
  auto* verify_all = app.add_subcommand("verify-all", "run every symbolic check and the numeric grid");
  add_common(verify_all, cfg);
  add_numeric(verify_all, cfg);
  verify_all->add_option("--seed", cfg.seed, "seed for randomized cases");
  verify_all->add_option("--filter", filter, "only checks whose name contains this text");
  verify_all->add_flag("--symbolic-only", symbolic_only, "skip the numeric grid");

  std::string identity;
  auto* numeric = app.add_subcommand("numeric-verify", "evaluate an identity numerically at sample points");
  numeric->add_option("--output", cfg.output, "output format")->check(CLI::IsMember({"text", "json"}));
  add_numeric(numeric, cfg);
  numeric->add_option("--identity", identity, "identity name")->required();
  numeric->add_option("--points", cfg.points, "JSON file: [{\"q\": \"0.1\", ...}, ...]");

  auto* bench = app.add_subcommand("bench", "time the main computations");
  add_common(bench, cfg);
  add_params(bench, cfg);
  bench->add_option("--seed", cfg.seed, "seed for the random series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*matrix) return cmd_matrix(cfg, which);
    if (*expand) return cmd_expand(cfg, builtin, coeffs, k);
    if (*gn) return cmd_gn(cfg);
    if (*verify) return cmd_verify(cfg, names);
    if (*verify_all) return cmd_verify_all(cfg, filter, symbolic_only);
    if (*numeric) return cmd_numeric_verify(cfg, identity);
    if (*bench) return cmd_bench(cfg);
  } catch (const qexp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

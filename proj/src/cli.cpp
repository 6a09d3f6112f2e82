#include "lunmeb/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lunmeb/basis.hpp"
#include "lunmeb/io.hpp"
#include "lunmeb/repro.hpp"
#include "lunmeb/weyl.hpp"

namespace lunmeb {
namespace {

using nlohmann::json;

constexpr const char* kHeuristicNote =
    "heuristic evidence only — not a proof of unextendibility";

struct GlobalOpts {
  double tol_verify = 1e-10;
  double tol_search = 1e-8;
  bool json_output = false;

  Tolerance tolerance() const { return Tolerance(tol_verify, tol_search); }
};

std::string fmt_complex(const Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "% .6f%+.6fi", z.real(), z.imag());
  return buf;
}

std::string fmt_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void print_matrix(std::ostream& out, const Matrix& m, const char* indent = "  ") {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << indent << "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << " " << fmt_complex(m(r, c));
    out << " ]\n";
  }
}

std::string fmt_schmidt(const RealVector& c) {
  std::string text = "(";
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (k > 0) text += ", ";
    text += fmt_num(c(k));
  }
  return text + ")";
}

// Parses "c0,c1,..." into raw coefficients.  Unparsable text is a malformed
// input (exit 1); sign and normalization problems are caught downstream by
// normalize_schmidt (exit 2).
RealVector parse_schmidt(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t len = (comma == std::string::npos) ? std::string::npos : comma - start;
    std::string token = text.substr(start, len);
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty entry in schmidt list '" + text + "'");
    const auto last = token.find_last_not_of(" \t");
    token = token.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(value);
    } catch (const std::invalid_argument&) {
      throw ParseError("unparsable schmidt entry '" + token + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("schmidt entry out of range '" + token + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  RealVector c(static_cast<Eigen::Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) c(static_cast<Eigen::Index>(k)) = values[k];
  return c;
}

json report_to_json(const VerificationReport& r) {
  return json{{"entanglement_ok", r.entanglement_ok},
              {"entanglement_violations", r.entanglement_violations},
              {"orthonormal_ok", r.orthonormal_ok},
              {"max_offdiag", r.max_offdiag},
              {"max_diag_dev", r.max_diag_dev},
              {"connected_ok", r.connected_ok},
              {"max_connector_err", std::isfinite(r.max_connector_err)
                                        ? json(r.max_connector_err)
                                        : json(nullptr)},
              {"pass", r.all_pass()}};
}

void print_report(std::ostream& out, const VerificationReport& r) {
  out << "  non-maximal entanglement: " << (r.entanglement_ok ? "PASS" : "FAIL") << " ("
      << r.entanglement_violations << " violations)\n";
  out << "  orthonormality:           " << (r.orthonormal_ok ? "PASS" : "FAIL")
      << " (max offdiag " << fmt_sci(r.max_offdiag) << ", max diag dev "
      << fmt_sci(r.max_diag_dev) << ")\n";
  out << "  local-unitary connected:  " << (r.connected_ok ? "PASS" : "FAIL")
      << " (max reconstruction err " << fmt_sci(r.max_connector_err) << ")\n";
}

SearchParams make_search_params(const GlobalOpts& g, int restarts, long iters,
                                std::uint64_t seed_value, const std::string& method) {
  if (restarts < 1) throw std::invalid_argument("search: --restarts must be at least 1");
  if (iters < 1) throw std::invalid_argument("search: --iters must be at least 1");
  SearchParams params;
  params.restarts = restarts;
  params.max_iters = iters;
  params.tol = g.tolerance();
  params.seed_value = seed_value;
  params.method = (method == "descent") ? SearchMethod::ResidualDescent
                                        : SearchMethod::AlternatingProjection;
  return params;
}

int cmd_weyl(const GlobalOpts& g, int d, int n, int m, std::ostream& out) {
  const Matrix u = weyl_operator(n, m, d);
  if (g.json_output) {
    const json j{{"d", d}, {"n", n}, {"m", m}, {"matrix", matrix_to_json(u)}};
    out << j.dump(2) << "\n";
  } else {
    out << "shift-and-phase operator U(n=" << n << ", m=" << m << "), d=" << d << "\n";
    print_matrix(out, u);
  }
  return 0;
}

int cmd_basis_build(const GlobalOpts& g, const std::string& schmidt_text,
                    const std::string& out_path, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const SchmidtVector seed = normalize_schmidt(parse_schmidt(schmidt_text), tol);
  const BasisCandidate c = build_cyclic_basis(seed, tol);
  if (!out_path.empty()) save_basis(out_path, c);
  if (g.json_output) {
    out << basis_to_json(c).dump(2) << "\n";
    return 0;
  }
  const Matrix gram = gram_matrix(c);
  const double gram_dev = (gram - Matrix::Identity(c.size(), c.size())).cwiseAbs().maxCoeff();
  out << "cyclic basis: d=" << c.d << ", size " << c.size() << "\n";
  out << "  schmidt coefficients " << fmt_schmidt(c.seed.c) << "\n";
  out << "  max |gram - identity| = " << fmt_sci(gram_dev) << "\n";
  if (!out_path.empty()) out << "  saved to " << out_path << "\n";
  return 0;
}

int cmd_basis_verify(const GlobalOpts& g, const std::string& in_path, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const BasisCandidate c = load_basis(in_path, tol);
  const VerificationReport r = verify_candidate(c, tol);
  if (g.json_output) {
    json j = report_to_json(r);
    j["d"] = c.d;
    j["size"] = c.size();
    out << j.dump(2) << "\n";
  } else {
    out << "candidate: d=" << c.d << ", size " << c.size() << "\n";
    print_report(out, r);
    out << "verification: " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  }
  return r.all_pass() ? 0 : 2;
}

int cmd_basis_extend(const GlobalOpts& g, const std::string& in_path, int restarts, long iters,
                     std::uint64_t seed_value, const std::string& method,
                     const std::string& out_path, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const BasisCandidate c = load_basis(in_path, tol);
  const SearchParams params = make_search_params(g, restarts, iters, seed_value, method);
  const ExtensionOutcome outcome = extend(make_extension_problem(c), params);

  json j{{"found", outcome.found},
         {"method", method},
         {"restarts", restarts},
         {"restarts_used", outcome.restarts_used},
         {"iterations_total", outcome.iterations_total},
         {"seed_value", seed_value},
         {"residual", outcome.residual},
         {"best_residual", outcome.best_residual}};

  if (!outcome.found) {
    j["note"] = kHeuristicNote;
    if (g.json_output) {
      out << j.dump(2) << "\n";
    } else {
      out << "extension search: NOT FOUND\n";
      out << "  method " << method << ", restarts " << restarts << ", iterations "
          << outcome.iterations_total << "\n";
      out << "  best residual = " << fmt_sci(outcome.best_residual) << " (tolerance "
          << fmt_sci(tol.search_tol) << ")\n";
      out << "  " << kHeuristicNote << "\n";
    }
    return 3;
  }

  const BasisCandidate extended = append_generator(c, outcome.v, tol);
  const VerificationReport r = verify_candidate(extended, tol);
  if (!out_path.empty()) save_basis(out_path, extended);
  if (g.json_output) {
    j["v"] = matrix_to_json(outcome.v);
    j["verify"] = report_to_json(r);
    j["basis"] = basis_to_json(extended);
    out << j.dump(2) << "\n";
  } else {
    out << "extension search: FOUND\n";
    out << "  method " << method << ", restarts used " << outcome.restarts_used << "/"
        << restarts << ", iterations " << outcome.iterations_total << "\n";
    out << "  residual = " << fmt_sci(outcome.residual) << " (tolerance "
        << fmt_sci(tol.search_tol) << ")\n";
    out << "  new generator:\n";
    print_matrix(out, outcome.v, "    ");
    out << "extended candidate (size " << extended.size() << ") verification: "
        << (r.all_pass() ? "PASS" : "FAIL") << "\n";
    if (!out_path.empty()) out << "  saved to " << out_path << "\n";
  }
  return r.all_pass() ? 0 : 2;
}

int cmd_basis_grow(const GlobalOpts& g, const std::string& schmidt_text, int max_size,
                   int restarts, long iters, std::uint64_t seed_value,
                   const std::string& method, const std::string& out_path, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  if (max_size < 1) throw std::invalid_argument("grow: --max-size must be at least 1");
  const SchmidtVector seed = normalize_schmidt(parse_schmidt(schmidt_text), tol);
  const SearchParams params = make_search_params(g, restarts, iters, seed_value, method);
  const BasisCandidate grown = greedy_grow(seed, params, max_size);
  const VerificationReport r = verify_candidate(grown, tol);
  if (!out_path.empty()) save_basis(out_path, grown);
  if (g.json_output) {
    out << basis_to_json(grown).dump(2) << "\n";
    return 0;
  }
  out << "greedy growth: d=" << grown.d << ", final size " << grown.size() << " (max "
      << max_size << ")\n";
  if (grown.size() < max_size) {
    out << "  stopped: no further extension found; " << kHeuristicNote << "\n";
  }
  print_report(out, r);
  if (!out_path.empty()) out << "  saved to " << out_path << "\n";
  return 0;
}

int cmd_repro_d4(const GlobalOpts& g, std::ostream& out) {
  const D4Counterexample ce = counterexample_d4();

  std::vector<BipartiteState> five = ce.candidate.states;
  five.push_back(ce.fifth);
  const int n = static_cast<int>(five.size());
  Matrix gram(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gram(a, b) = inner_product(five[a], five[b]);
  const double gram_dev = (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  const double v_unit = unitarity_error(ce.v);

  const WeylCoefficients table = d4_coefficient_table();
  const double expand_dev = (weyl_expand(ce.v).f - table.f).cwiseAbs().maxCoeff();
  const double recon_dev = (weyl_reconstruct(table) - ce.v).cwiseAbs().maxCoeff();

  const FlawReport flaw = flaw_demo();

  RealVector fifth_spec = schmidt_coefficients(ce.fifth);
  RealVector seed_sorted = ce.candidate.seed.c;
  std::sort(seed_sorted.begin(), seed_sorted.end(), std::greater<double>());
  const double spec_dev = (fifth_spec - seed_sorted).cwiseAbs().maxCoeff();

  const bool pass_gram = gram_dev < 1e-12;
  const bool pass_vunit = v_unit < 1e-12;
  const bool pass_expand = expand_dev < 1e-14 && recon_dev < 1e-14;
  const bool pass_flaw = flaw.conclusion && flaw.max_overlap() < 1e-12 && flaw.max_termwise() >= 0.70;
  const bool pass_spec = spec_dev < 1e-12;
  const bool pass = pass_gram && pass_vunit && pass_expand && pass_flaw && pass_spec;

  if (g.json_output) {
    const json j{{"d", 4},
                 {"schmidt", {ce.candidate.seed.c(0), ce.candidate.seed.c(1),
                              ce.candidate.seed.c(2), ce.candidate.seed.c(3)}},
                 {"gram_dev", gram_dev},
                 {"v_unitarity_err", v_unit},
                 {"expand_dev", expand_dev},
                 {"reconstruct_dev", recon_dev},
                 {"max_overlap", flaw.max_overlap()},
                 {"max_termwise", flaw.max_termwise()},
                 {"fifth_spectrum_dev", spec_dev},
                 {"pass", pass}};
    out << j.dump(2) << "\n";
    return pass ? 0 : 2;
  }

  out << "d=4 counterexample, seed " << fmt_schmidt(ce.candidate.seed.c) << "\n";
  out << "block unitary:\n";
  print_matrix(out, ce.v);
  out << "5 mutually orthogonal states: " << (pass_gram ? "PASS" : "FAIL")
      << " (max |gram - identity| = " << fmt_sci(gram_dev) << ")\n";
  out << "block unitary is unitary: " << (pass_vunit ? "PASS" : "FAIL") << " (err "
      << fmt_sci(v_unit) << ")\n";
  out << "operator expansion matches the closed-form table: " << (pass_expand ? "PASS" : "FAIL")
      << " (expand dev " << fmt_sci(expand_dev) << ", reconstruct dev " << fmt_sci(recon_dev)
      << ")\n";
  out << "full overlap sums vanish while termwise sums stay large: "
      << (pass_flaw ? "PASS" : "FAIL") << " (max overlap " << fmt_sci(flaw.max_overlap())
      << ", max termwise " << fmt_num(flaw.max_termwise()) << ")\n";
  out << "fifth state keeps the seed spectrum: " << (pass_spec ? "PASS" : "FAIL")
      << " (max dev " << fmt_sci(spec_dev) << ")\n";
  out << "conclusion: the four cyclic states admit a fifth mutually orthogonal member,\n";
  out << "so a termwise orthogonality argument against extension does not hold.\n";
  return pass ? 0 : 2;
}

int cmd_repro_d2(const GlobalOpts& g, const std::string& schmidt_text, std::ostream& out) {
  const Tolerance tol = g.tolerance();
  const SchmidtVector seed = normalize_schmidt(parse_schmidt(schmidt_text), tol);
  const D2Analysis a = d2_analysis(seed, tol);
  const BasisCandidate pair =
      make_candidate(a.seed, {Matrix::Identity(2, 2), a.second_generator}, tol);
  const VerificationReport r = verify_candidate(pair, tol);
  const double agreement = std::abs(a.search_best_residual - a.min_third_residual);

  if (g.json_output) {
    const json j{{"d", 2},
                 {"schmidt", {a.seed.c(0), a.seed.c(1)}},
                 {"max_size", a.max_size},
                 {"second_generator", matrix_to_json(a.second_generator)},
                 {"antidiagonal_phases", {a.antidiagonal_phases[0], a.antidiagonal_phases[1]}},
                 {"min_third_residual", a.min_third_residual},
                 {"search_best_residual", a.search_best_residual},
                 {"verify", report_to_json(r)}};
    out << j.dump(2) << "\n";
    return r.all_pass() ? 0 : 2;
  }

  out << "d=2 classification, seed " << fmt_schmidt(a.seed.c) << "\n";
  out << "orthogonal companions are exactly the antidiagonal unitaries;\n";
  out << "canonical second generator (bit flip):\n";
  print_matrix(out, a.second_generator);
  out << "pair verification:\n";
  print_report(out, r);
  out << "maximal family size: " << a.max_size << "\n";
  out << "third-member residual floor (closed form (c0^2 - c1^2)^2): "
      << fmt_num(a.min_third_residual) << "\n";
  out << "numerical search best residual:                            "
      << fmt_num(a.search_best_residual) << "\n";
  out << "agreement |closed form - search| = " << fmt_sci(agreement) << "\n";
  out << "no third member exists: every candidate misses orthogonality by at least the floor.\n";
  return r.all_pass() ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"locally unextendible non-maximally entangled bases: build, verify, extend"};
  app.name("lunmeb");
  app.fallthrough();  // global flags may follow the subcommand name
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--tol-verify", g.tol_verify, "tolerance for algebraic identities")
      ->capture_default_str();
  app.add_option("--tol-search", g.tol_search, "acceptance tolerance for searched extensions")
      ->capture_default_str();
  app.add_flag("--json", g.json_output, "machine-readable JSON output");

  auto* weyl_cmd = app.add_subcommand("weyl", "print one shift-and-phase operator");
  int weyl_d = 0, weyl_n = 0, weyl_m = 0;
  weyl_cmd->add_option("--d", weyl_d, "dimension")->required();
  weyl_cmd->add_option("--n", weyl_n, "phase index")->required();
  weyl_cmd->add_option("--m", weyl_m, "shift index")->required();

  auto* basis_cmd = app.add_subcommand("basis", "build, verify, extend, or grow a candidate");
  basis_cmd->require_subcommand(1);

  std::string build_schmidt, build_out;
  auto* build_cmd = basis_cmd->add_subcommand("build", "cyclic candidate from a seed");
  build_cmd->add_option("--schmidt", build_schmidt, "comma-separated raw coefficients")
      ->required();
  build_cmd->add_option("--out", build_out, "write the candidate to this JSON file");

  std::string verify_in;
  auto* verify_cmd = basis_cmd->add_subcommand("verify", "check the defining conditions");
  verify_cmd->add_option("--in", verify_in, "candidate JSON file")->required();

  std::string extend_in, extend_out, extend_method = "ap";
  int extend_restarts = 64;
  long extend_iters = 2000;
  std::uint64_t extend_seed = 0;
  auto* extend_cmd = basis_cmd->add_subcommand("extend", "search for one further member");
  extend_cmd->add_option("--in", extend_in, "candidate JSON file")->required();
  extend_cmd->add_option("--restarts", extend_restarts, "random restarts")->capture_default_str();
  extend_cmd->add_option("--iters", extend_iters, "iterations per restart")->capture_default_str();
  extend_cmd->add_option("--seed", extend_seed, "random seed")->capture_default_str();
  extend_cmd->add_option("--method", extend_method, "search method")
      ->check(CLI::IsMember({"ap", "descent"}))
      ->capture_default_str();
  extend_cmd->add_option("--out", extend_out, "write the extended candidate to this JSON file");

  std::string grow_schmidt, grow_out, grow_method = "ap";
  int grow_max_size = 8, grow_restarts = 64;
  long grow_iters = 2000;
  std::uint64_t grow_seed = 0;
  auto* grow_cmd = basis_cmd->add_subcommand("grow", "extend greedily until the search fails");
  grow_cmd->add_option("--schmidt", grow_schmidt, "comma-separated raw coefficients")->required();
  grow_cmd->add_option("--max-size", grow_max_size, "stop at this many members")
      ->capture_default_str();
  grow_cmd->add_option("--restarts", grow_restarts, "random restarts per step")
      ->capture_default_str();
  grow_cmd->add_option("--iters", grow_iters, "iterations per restart")->capture_default_str();
  grow_cmd->add_option("--seed", grow_seed, "random seed")->capture_default_str();
  grow_cmd->add_option("--method", grow_method, "search method")
      ->check(CLI::IsMember({"ap", "descent"}))
      ->capture_default_str();
  grow_cmd->add_option("--out", grow_out, "write the final candidate to this JSON file");

  auto* repro_cmd = app.add_subcommand("repro", "bundled reference scenarios");
  repro_cmd->require_subcommand(1);
  auto* d4_cmd = repro_cmd->add_subcommand("d4", "five orthogonal states in d=4");
  std::string d2_schmidt;
  auto* d2_cmd = repro_cmd->add_subcommand("d2", "complete two-level classification");
  d2_cmd->add_option("--schmidt", d2_schmidt, "comma-separated raw coefficients")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    g.tolerance();  // reject inconsistent --tol flags for every subcommand
    if (weyl_cmd->parsed()) return cmd_weyl(g, weyl_d, weyl_n, weyl_m, out);
    if (build_cmd->parsed()) return cmd_basis_build(g, build_schmidt, build_out, out);
    if (verify_cmd->parsed()) return cmd_basis_verify(g, verify_in, out);
    if (extend_cmd->parsed())
      return cmd_basis_extend(g, extend_in, extend_restarts, extend_iters, extend_seed,
                              extend_method, extend_out, out);
    if (grow_cmd->parsed())
      return cmd_basis_grow(g, grow_schmidt, grow_max_size, grow_restarts, grow_iters, grow_seed,
                            grow_method, grow_out, out);
    if (d4_cmd->parsed()) return cmd_repro_d4(g, out);
    if (d2_cmd->parsed()) return cmd_repro_d2(g, d2_schmidt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lunmeb

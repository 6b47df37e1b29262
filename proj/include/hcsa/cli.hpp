#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hcsa/serialization.hpp"

namespace hcsa::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2 };

struct Options {
  std::string variant = "nondeg";
  std::string flavor = "zero";
  std::optional<int> m;
  int n = 1;
  std::string q = "3/2";
  std::vector<std::string> Q;
  std::string lambda;
  std::string out;
  std::string tol;
  unsigned prec_bits = 256;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool tableaux = false;
  std::string file;
};

/// Integers print without a fractional part, real values without an imaginary one.
inline std::string format_scalar(const Scalar& z, const Precision& pr) {
  using boost::multiprecision::abs;
  using boost::multiprecision::round;
  auto fmt = [&](const Real& x) {
    const Real r = round(x);
    if (abs(x - r) > pr.epsilon * (1 + abs(x))) return x.str(40);
    std::string text = r.str(0, std::ios_base::fixed);
    text = text.substr(0, text.find('.'));
    return text == "-0" ? std::string("0") : text;
  };
  if (abs(z.im) <= pr.epsilon * (1 + abs(z.re))) return fmt(z.re);
  const std::string im = fmt(abs(z.im));
  return fmt(z.re) + (z.im < 0 ? "-" : "+") + im + "i";
}

namespace detail {

inline ParameterSet make_params(const Options& o) {
  const Variant v = parse_variant(o.variant);
  const Flavor f = parse_flavor(o.flavor);
  if (o.m && *o.m != static_cast<int>(o.Q.size()))
    throw InvalidParameter("--m " + std::to_string(*o.m) + " needs exactly that many --Q values");
  std::optional<Real> eps;
  if (!o.tol.empty()) {
    set_working_precision(o.prec_bits);
    eps = hcsa::detail::parse_real_literal(o.tol);
  }
  return ParameterSet::make(v, f, o.q, o.Q, o.prec_bits, eps);
}

/// Residual threshold for verification; 1e-25 unless --tol is given.
inline Real residual_tolerance(const Options& o) {
  if (o.tol.empty()) return Real("1e-25");
  return hcsa::detail::parse_real_literal(o.tol);
}

inline void emit(const Json& j, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InvalidParameter("cannot write " + o.out);
  f << j.dump() << '\n';
}

inline int enumerate(const Options& o, std::ostream& out) {
  const Flavor f = parse_flavor(o.flavor);
  const int m = o.m.value_or(static_cast<int>(o.Q.size()));
  if (m < 0 || o.n < 0) throw InvalidParameter("--m and --n must be nonnegative");
  Json shapes = Json::array();
  for (const auto& shape : enumerate_multipartitions(f, m, o.n)) {
    Json e = {{"shape", shape_to_json(shape)},
              {"diagonal", shape.diagonal_count()},
              {"standard_tableaux", count_standard_tableaux(shape)},
              {"dim", expected_dimension(shape)},
              {"type", shape.diagonal_count() % 2 == 0 ? "M" : "Q"}};
    if (o.tableaux) {
      Json ts = Json::array();
      for (const auto& t : enumerate_standard_tableaux(shape)) ts.push_back(tableau_to_json(t));
      e["tableaux"] = std::move(ts);
    }
    shapes.push_back(std::move(e));
  }
  emit({{"flavor", to_string(f)}, {"m", m}, {"n", o.n}, {"count", shapes.size()}, {"shapes", shapes}}, o, out);
  return ok;
}

inline int poly(const Options& o, std::ostream& out) {
  const ParameterSet p = make_params(o);
  const auto sep = separability_polynomial(p, o.n);
  emit({{"P", format_scalar(sep.value, p.precision)}}, o, out);
  return ok;
}

inline int build(const Options& o, std::ostream& out) {
  if (o.lambda.empty()) throw InvalidParameter("build needs --lambda");
  const ParameterSet p = make_params(o);
  Json lj;
  try {
    lj = Json::parse(o.lambda);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("--lambda: ") + e.what());
  }
  const Multipartition shape = shape_from_json(lj, p.flavor);
  if (shape.m() != p.m()) throw InvalidParameter("shape has " + std::to_string(shape.m()) + " ordinary components, expected " + std::to_string(p.m()));
  emit(module_to_json(build_module(shape, p)), o, out);
  return ok;
}

inline int verify(const Options& o, std::ostream& out) {
  std::ifstream f(o.file);
  if (!f) throw InvalidParameter("cannot read " + o.file);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::exception& e) {
    throw ParseError(o.file + ": " + e.what());
  }
  LoadedModule loaded = module_from_json(j);
  const CycloModule& mod = loaded.module;
  const Real tol = residual_tolerance(o);
  Report rep = verify_relations(mod, tol);
  Real inv = 0;
  for (int k = 0; k < mod.n(); ++k) {
    const Real r = max_abs_difference(mod.X(k) * loaded.X_inverse[k], Matrix::identity(mod.total_dim));
    if (r > inv) inv = r;
  }
  rep.residual("X Xinv = 1", inv);
  rep.merge(eigenvalue_audit(mod, tol));
  rep.finding("dimension formula", static_cast<std::uint64_t>(mod.total_dim) == expected_dimension(mod.shape));
  const IrreducibilityReport irr = irreducibility_check(mod, 5, o.seed);
  rep.finding("irreducible", irr.passed());
  rep.finding("type", to_string(irr.type_from_commutant()) == loaded.declared_type);
  Json j_out = report_to_json(rep);
  j_out["spin_up_dim"] = irr.min_spin_dim;
  j_out["even_commutant"] = irr.even_commutant;
  j_out["odd_commutant"] = irr.odd_commutant;
  emit(j_out, o, out);
  return rep.passed() ? ok : failed;
}

inline int census(const Options& o, std::ostream& out) {
  const ParameterSet p = make_params(o);
  const CensusReport rep = semisimplicity_census(p, o.n, true, o.jobs);
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"shape", shape_to_json(e.shape)},
                       {"dim", e.formula_dim},
                       {"type", to_string(e.formula_type)},
                       {"built_dim", e.built_dim},
                       {"built_type", to_string(e.built_type)}});
  emit({{"expected", rep.expected},
        {"formula_sum", rep.formula_sum},
        {"built_sum", rep.built_sum},
        {"passed", rep.passed()},
        {"shapes", entries}},
       o, out);
  return rep.passed() ? ok : failed;
}

inline int oracle(const Options& o, std::ostream& out, std::ostream& err) {
  const ParameterSet p = make_params(o);
  const OracleReport rep = trace_form_rank(p, o.n, residual_tolerance(o));
  Json j = oracle_to_json(rep);
  j["checks"] = report_to_json(rep.checks);
  emit(j, o, out);
  if (rep.P_vanishes && rep.semisimple())
    err << "note: semisimple although the separability product vanishes\n";
  if (!rep.checks.passed()) return failed;
  return rep.P_vanishes || rep.semisimple() ? ok : failed;
}

}  // namespace detail

/// Parses one verb plus flags and runs it. Exit codes: 0 success, 1 failed check, 2 usage or parameter error.
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Simple modules of cyclotomic Hecke-Clifford superalgebras", "hcsa"};
  app.require_subcommand(1, 1);
  Options o;
  auto common = [&](CLI::App* sub, bool algebra) {
    sub->add_option("--variant", o.variant, "nondeg or deg")->check(CLI::IsMember({"nondeg", "deg"}));
    sub->add_option("--flavor", o.flavor, "zero, s or ss")->check(CLI::IsMember({"zero", "s", "ss"}));
    sub->add_option("--m", o.m, "number of ordinary components");
    sub->add_option("--n", o.n, "rank");
    sub->add_option("--out", o.out, "write JSON here instead of stdout");
    if (!algebra) return;
    sub->add_option("--q", o.q, "Hecke parameter");
    sub->add_option("--Q", o.Q, "comma separated cyclotomic parameters")->delimiter(',');
    sub->add_option("--tol", o.tol, "comparison tolerance");
    sub->add_option("--prec-bits", o.prec_bits, "working precision in bits");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--jobs", o.jobs, "worker threads");
  };
  auto* en = app.add_subcommand("enumerate", "list shapes with their dimensions and types");
  common(en, false);
  en->add_option("--Q", o.Q, "cyclotomic parameters (only the count is used)")->delimiter(',');
  en->add_flag("--tableaux", o.tableaux, "include standard tableaux");
  auto* po = app.add_subcommand("poly", "evaluate the separability product");
  common(po, true);
  auto* bu = app.add_subcommand("build", "build D(lambda) and dump its generators");
  common(bu, true);
  bu->add_option("--lambda", o.lambda, "shape as JSON");
  auto* ve = app.add_subcommand("verify", "check a dumped module");
  ve->add_option("file", o.file, "module dump")->required();
  ve->add_option("--tol", o.tol, "residual tolerance");
  ve->add_option("--seed", o.seed, "random seed");
  ve->add_option("--out", o.out, "write JSON here instead of stdout");
  auto* ce = app.add_subcommand("census", "dimension census over all shapes");
  common(ce, true);
  auto* orc = app.add_subcommand("oracle", "trace-form rank of the cyclotomic quotient");
  common(orc, true);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return usage;
  }
  try {
    if (*en) return detail::enumerate(o, out);
    if (*po) return detail::poly(o, out);
    if (*bu) return detail::build(o, out);
    if (*ve) return detail::verify(o, out);
    if (*ce) return detail::census(o, out);
    if (*orc) return detail::oracle(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace hcsa::cli

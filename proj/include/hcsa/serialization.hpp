#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hcsa/cyclo_modules.hpp"
#include "hcsa/oracle.hpp"

namespace hcsa {

using Json = nlohmann::json;

inline Json scalar_to_json(const Scalar& z) { return Json::array({to_decimal_string(z.re), to_decimal_string(z.im)}); }

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) throw ParseError("scalar must be [\"re\",\"im\"]");
  return {detail::parse_real_literal(j[0].get<std::string>()), detail::parse_real_literal(j[1].get<std::string>())};
}

/// Dense row-major dump.
inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    std::vector<Scalar> dense(static_cast<std::size_t>(m.cols()));
    for (const auto& [c, x] : m.row(r)) dense[c] = x;
    for (const auto& x : dense) row.push_back(scalar_to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) throw ParseError("ragged matrix");
    for (int c = 0; c < cols; ++c) {
      Scalar x = scalar_from_json(j[r][c]);
      if (!x.is_exact_zero()) m.set(r, c, x);
    }
  }
  return m;
}

inline Json shape_to_json(const Multipartition& s) {
  Json strict = Json::array();
  for (const auto& p : s.strict()) strict.push_back(p.parts);
  Json ordinary = Json::array();
  for (const auto& p : s.ordinary()) ordinary.push_back(p.parts);
  return {{"flavor", to_string(s.flavor())}, {"strict", strict}, {"ordinary", ordinary}};
}

/// Accepts the object form above, or a bare array of components with the strict ones first.
inline Multipartition shape_from_json(const Json& j, std::optional<Flavor> flavor = std::nullopt) {
  std::vector<StrictPartition> strict;
  std::vector<Partition> ordinary;
  if (j.is_object()) {
    const Flavor f = parse_flavor(j.at("flavor").get<std::string>());
    if (flavor && *flavor != f) throw InvalidParameter("shape flavor does not match --flavor");
    for (const auto& p : j.at("strict")) strict.push_back({p.get<std::vector<int>>()});
    for (const auto& p : j.at("ordinary")) ordinary.push_back({p.get<std::vector<int>>()});
    return Multipartition(f, std::move(strict), std::move(ordinary));
  }
  if (!j.is_array()) throw ParseError("shape must be an object or an array of components");
  const Flavor f = flavor.value_or(Flavor::zero);
  const int ns = strict_component_count(f);
  if (static_cast<int>(j.size()) < ns) throw InvalidParameter("too few components for flavor " + to_string(f));
  for (int c = 0; c < static_cast<int>(j.size()); ++c) {
    auto parts = j[c].get<std::vector<int>>();
    if (c < ns)
      strict.push_back({std::move(parts)});
    else
      ordinary.push_back({std::move(parts)});
  }
  return Multipartition(f, std::move(strict), std::move(ordinary));
}

inline Json params_to_json(const ParameterSet& p) {
  return {{"variant", to_string(p.variant)},       {"flavor", to_string(p.flavor)},
          {"q", p.q_text},                         {"Q", p.Q_text},
          {"prec_bits", p.precision.bits},         {"epsilon", to_decimal_string(p.precision.epsilon)}};
}

/// Sets the working precision from the dump before any scalar is parsed.
inline ParameterSet params_from_json(const Json& j) {
  const auto bits = j.at("prec_bits").get<unsigned>();
  set_working_precision(bits);
  return ParameterSet::make(parse_variant(j.at("variant").get<std::string>()),
                            parse_flavor(j.at("flavor").get<std::string>()), j.at("q").get<std::string>(),
                            j.at("Q").get<std::vector<std::string>>(), bits,
                            detail::parse_real_literal(j.at("epsilon").get<std::string>()));
}

inline Json tableau_to_json(const StandardTableau& t) {
  Json boxes = Json::array();
  const auto& shape = t.shape();
  for (int b = 0; b < shape.size(); ++b) {
    const Box& box = shape.boxes()[b];
    boxes.push_back({{"component", shape.component_label(box.component)},
                     {"row", box.row},
                     {"col", box.col},
                     {"entry", t.entry_at(b)}});
  }
  return boxes;
}

inline Json module_to_json(const CycloModule& mod) {
  Json blocks = Json::array();
  for (const auto& t : mod.blocks) blocks.push_back(tableau_to_json(t));
  Json T = Json::array(), X = Json::array(), Xinv = Json::array(), C = Json::array();
  for (const auto& g : mod.T) T.push_back(matrix_to_json(g));
  for (int k = 0; k < mod.n(); ++k) {
    X.push_back(matrix_to_json(mod.X(k)));
    Xinv.push_back(matrix_to_json(mod.X_inverse(k)));
  }
  for (const auto& g : mod.C) C.push_back(matrix_to_json(g));
  Json branches = Json::array();
  for (const auto& b : mod.sqrt_branches)
    branches.push_back({{"qa", scalar_to_json(b.qa)}, {"qb", scalar_to_json(b.qb)}, {"omega", scalar_to_json(b.omega)}});
  return {{"shape", shape_to_json(mod.shape)},
          {"params", params_to_json(mod.params)},
          {"blocks", blocks},
          {"block_dim", mod.block_dim},
          {"total_dim", mod.total_dim},
          {"parity", mod.parity},
          {"generators", {{"T", T}, {"X", X}, {"Xinv", Xinv}, {"C", C}}},
          {"type", to_string(mod.type())},
          {"sqrt_branches", branches}};
}

/// Module as read back from a dump, with the X inverses kept as stored.
struct LoadedModule {
  CycloModule module;
  std::vector<Matrix> X_inverse;
  std::string declared_type;
};

/// Rebuilds the generator data. Fails with ParseError when X is not diagonal.
inline LoadedModule module_from_json(const Json& j) {
  LoadedModule out;
  CycloModule& mod = out.module;
  mod.params = params_from_json(j.at("params"));
  mod.shape = shape_from_json(j.at("shape"));
  mod.blocks = enumerate_standard_tableaux(mod.shape);
  for (const auto& t : mod.blocks) mod.perms.push_back(permutation_from_initial(t));
  mod.block_dim = j.at("block_dim").get<int>();
  mod.total_dim = j.at("total_dim").get<int>();
  mod.parity = j.at("parity").get<std::vector<int>>();
  const auto& gens = j.at("generators");
  for (const auto& g : gens.at("T")) mod.T.push_back(matrix_from_json(g));
  for (const auto& g : gens.at("C")) mod.C.push_back(matrix_from_json(g));
  for (const auto& g : gens.at("Xinv")) out.X_inverse.push_back(matrix_from_json(g));
  for (const auto& g : gens.at("X")) {
    Matrix x = matrix_from_json(g);
    std::vector<Scalar> diag(static_cast<std::size_t>(x.rows()));
    for (int r = 0; r < x.rows(); ++r)
      for (const auto& [c, v] : x.row(r)) {
        if (c != r) throw ParseError("X generators must be diagonal");
        diag[r] = v;
      }
    mod.x_eigen.push_back(std::move(diag));
  }
  for (const auto& b : j.at("sqrt_branches"))
    mod.sqrt_branches.push_back({scalar_from_json(b.at("qa")), scalar_from_json(b.at("qb")), scalar_from_json(b.at("omega"))});
  out.declared_type = j.at("type").get<std::string>();
  if (out.declared_type != "M" && out.declared_type != "Q") throw ParseError("type must be M or Q");
  mod.base.type = out.declared_type == "Q" ? ModuleType::Q : ModuleType::M;
  const int n = mod.shape.size();
  if (static_cast<int>(mod.T.size()) != std::max(n - 1, 0) || static_cast<int>(mod.C.size()) != n ||
      static_cast<int>(mod.x_eigen.size()) != n || static_cast<int>(out.X_inverse.size()) != n)
    throw ParseError("generator count does not match the shape");
  for (const auto& x : mod.x_eigen)
    if (static_cast<int>(x.size()) != mod.total_dim) throw ParseError("generator size does not match total_dim");
  if (static_cast<int>(mod.parity.size()) != mod.total_dim) throw ParseError("parity size does not match total_dim");
  return out;
}

inline Json oracle_to_json(const OracleReport& r) {
  Json sv = Json::array();
  for (const auto& s : r.singular_values) sv.push_back(s.str(12, std::ios_base::scientific));
  return {{"dim", r.dim},
          {"rank", r.rank},
          {"P_value", {to_decimal_string(r.P_value.re), to_decimal_string(r.P_value.im)}},
          {"P_vanishes", r.P_vanishes},
          {"threshold", r.threshold.str(6, std::ios_base::scientific)},
          {"semisimple", r.semisimple()},
          {"singular_values", sv}};
}

inline Json report_to_json(const Report& r) {
  Json residuals = Json::object();
  for (const auto& x : r.residuals) {
    const std::string v = x.value.str(6, std::ios_base::scientific);
    // Repeated names keep the worst value.
    if (!residuals.contains(x.name) || Real(residuals[x.name].get<std::string>()) < x.value) residuals[x.name] = v;
  }
  Json findings = Json::array();
  for (const auto& f : r.findings)
    if (!f.ok) findings.push_back(f.name + (f.detail.empty() ? "" : ": " + f.detail));
  return {{"passed", r.passed()},
          {"max_residual", r.max_residual().str(6, std::ios_base::scientific)},
          {"tolerance", r.tolerance.str(6, std::ios_base::scientific)},
          {"residuals", residuals},
          {"failed_findings", findings}};
}

}  // namespace hcsa

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hcsa/cyclo_modules.hpp"
#include "hcsa/oracle.hpp"

using namespace hcsa;

namespace {

// Pinned thresholds.
const Real kResidualTol("1e-25");
constexpr double kRelationSeconds = 300;
constexpr double kOracleSeconds = 120;
constexpr int kSpinTrials = 5;
constexpr std::uint64_t kSpinSeed = 0;
constexpr int kRandomDraws = 20;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 12) notes.push_back(why);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(const Real& x) { return x.str(3, std::ios_base::scientific); }

std::string cell(Variant v, Flavor f, int m, int n) {
  return to_string(v) + "/" + to_string(f) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
}

struct Built {
  Variant variant;
  Flavor flavor;
  int m;
  int n;
  Multipartition shape;
  CycloModule module;
};

/// Every module over the standard parameters for n <= 4, m <= 2. Degenerate Q = (5, 15/2).
std::vector<Built> build_grid() {
  std::vector<Built> out;
  for (const auto& [v, f] : fixtures::all_kinds())
    for (int m = 0; m <= 2; ++m) {
      const ParameterSet p = fixtures::standard(v, f, m);
      for (int n = 1; n <= 4; ++n)
        for (const auto& shape : enumerate_multipartitions(f, m, n)) out.push_back({v, f, m, n, shape, build_module(shape, p)});
    }
  return out;
}

struct RelationRun {
  int modules = 0;
  Real worst = 0;
  double seconds = 0;
};

/// Relations and dimension formula over one parameter family; cells that cannot be built fail.
void relation_grid(const std::vector<std::string>& deg_Q, Outcome& relations, Outcome& dims, RelationRun& run) {
  const auto t0 = Clock::now();
  for (const auto& [v, f] : fixtures::all_kinds())
    for (int m = 0; m <= 2; ++m) {
      const bool deg = v == Variant::degenerate;
      const ParameterSet p =
          deg ? ParameterSet::make(v, f, "1", fixtures::first(deg_Q, m)) : ParameterSet::make(v, f, "3/2", fixtures::first({"5", "7"}, m));
      for (int n = 1; n <= 4; ++n) {
        const auto shapes = enumerate_multipartitions(f, m, n);
        if (shapes.empty()) continue;
        const auto sep = separability_polynomial(p, n);
        if (sep.vanishes) {
          const std::string why = cell(v, f, m, n) + ": separability product vanishes, " + std::to_string(shapes.size()) +
                                  " shapes not buildable";
          relations.fail(why);
          dims.fail(why);
          continue;
        }
        for (const auto& shape : shapes) {
          const CycloModule mod = build_module(shape, p);
          const Report rep = verify_relations(mod, kResidualTol);
          ++run.modules;
          run.worst = std::max(run.worst, rep.max_residual());
          if (!rep.passed()) relations.fail(cell(v, f, m, n) + ": residual " + sci(rep.max_residual()));
          if (static_cast<std::uint64_t>(mod.total_dim) != expected_dimension(shape))
            dims.fail(cell(v, f, m, n) + ": dimension " + std::to_string(mod.total_dim));
        }
      }
    }
  run.seconds = seconds_since(t0);
}

/// Separate up to n = 6. A degenerate integer Q would meet Q + t = 0 there.
ParameterSet three_Q(Variant v, Flavor f, int m) {
  if (v == Variant::degenerate) return ParameterSet::make(v, f, "1", fixtures::first({"15/2", "31/3", "43/4"}, m));
  return ParameterSet::make(v, f, "3/2", fixtures::first({"5", "7", "11"}, m));
}

Outcome census_criterion() {
  Outcome out;
  int identities = 0;
  for (const auto& [v, f] : fixtures::all_kinds())
    for (int m = 0; m <= 3; ++m) {
      const ParameterSet p = three_Q(v, f, m);
      for (int n = 1; n <= 6; ++n) {
        if (m == 0 && f == Flavor::zero) continue;
        const bool numeric = n <= 4;
        const CensusReport rep = semisimplicity_census(p, n, numeric);
        ++identities;
        if (!rep.passed())
          out.fail(cell(v, f, m, n) + ": " + std::to_string(rep.formula_sum) + "/" + std::to_string(rep.built_sum) +
                   " vs " + std::to_string(rep.expected));
      }
    }
  const auto anchor = [&](Flavor f, int m, int n, std::uint64_t want) {
    const CensusReport r = semisimplicity_census(fixtures::nondeg(f, m), n, true);
    if (r.expected != want || r.built_sum != want) out.fail("anchor " + to_string(f) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
  };
  anchor(Flavor::zero, 1, 2, 32);
  anchor(Flavor::s, 0, 2, 8);
  anchor(Flavor::ss, 0, 1, 4);
  out.notes.insert(out.notes.begin(), std::to_string(identities) + " identities, anchors 32/8/4");
  return out;
}

struct IrreducibilityRun {
  Outcome types;
  Outcome spin;
};

IrreducibilityRun irreducibility_criteria(const std::vector<Built>& grid) {
  IrreducibilityRun out;
  int checked = 0;
  for (const auto& b : grid) {
    const IrreducibilityReport irr = irreducibility_check(b.module, kSpinTrials, kSpinSeed);
    ++checked;
    const bool even_D = b.shape.diagonal_count() % 2 == 0;
    if ((irr.type_from_commutant() == ModuleType::M) != even_D || irr.even_commutant != 1)
      out.types.fail(cell(b.variant, b.flavor, b.m, b.n) + ": commutant " + std::to_string(irr.even_commutant) + "/" +
                     std::to_string(irr.odd_commutant));
    if (!irr.spin_up_full())
      out.spin.fail(cell(b.variant, b.flavor, b.m, b.n) + ": spin-up " + std::to_string(irr.min_spin_dim) + " of " +
                    std::to_string(b.module.total_dim));
  }

  // q-residue vectors of different shapes never coincide
  int families = 0;
  for (std::size_t start = 0; start < grid.size();) {
    std::size_t end = start;
    while (end < grid.size() && grid[end].variant == grid[start].variant && grid[end].flavor == grid[start].flavor &&
           grid[end].m == grid[start].m && grid[end].n == grid[start].n)
      ++end;
    struct Entry {
      double key;
      std::size_t shape;
      const std::vector<Scalar>* vec;
    };
    std::vector<std::vector<std::vector<Scalar>>> vectors;
    std::vector<Entry> entries;
    for (std::size_t k = start; k < end; ++k) vectors.push_back(q_residue_vectors(grid[k].module));
    for (std::size_t s = 0; s < vectors.size(); ++s)
      for (const auto& v : vectors[s]) {
        double key = 0;
        for (std::size_t j = 0; j < v.size(); ++j) key += to_double(v[j]).re * static_cast<double>(j + 1);
        entries.push_back({key, s, &v});
      }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    const ParameterSet& p = grid[start].module.params;
    for (std::size_t a = 0; a < entries.size(); ++a)
      for (std::size_t b = a + 1; b < entries.size() && entries[b].key - entries[a].key <= 1e-6 * (1 + std::abs(entries[a].key)); ++b) {
        if (entries[a].shape == entries[b].shape) continue;
        bool equal = true;
        for (std::size_t j = 0; j < entries[a].vec->size(); ++j)
          if (!approx_eq((*entries[a].vec)[j], (*entries[b].vec)[j], p.precision)) equal = false;
        if (equal) out.spin.fail(cell(grid[start].variant, grid[start].flavor, grid[start].m, grid[start].n) + ": shared q-residue vector");
      }
    ++families;
    start = end;
  }
  out.types.notes.insert(out.types.notes.begin(), std::to_string(checked) + " modules");
  out.spin.notes.insert(out.spin.notes.begin(), std::to_string(checked) + " modules x " + std::to_string(kSpinTrials) +
                                                    " vectors, " + std::to_string(families) + " residue families");
  return out;
}

Outcome separability_criterion() {
  Outcome out;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(2, 40), den(1, 9), sign(0, 1);
  auto rational = [&] {
    std::string s = std::to_string(num(rng)) + "/" + std::to_string(den(rng));
    return sign(rng) ? "-" + s : s;
  };
  int cases = 0;
  for (int draw = 0; draw < kRandomDraws; ++draw) {
    const std::string q = rational();
    for (const auto& [v, f] : fixtures::all_kinds())
      for (int m = 0; m <= 2; ++m) {
        std::vector<std::string> Q;
        for (int i = 0; i < m; ++i) Q.push_back(rational());
        ParameterSet p;
        try {
          p = ParameterSet::make(v, f, q, Q);
        } catch (const InvalidParameter&) {
          continue;
        }
        for (int n = 1; n <= 3; ++n) {
          ++cases;
          if (!verify_separate_equivalence(p, n)) out.fail("random draw " + std::to_string(draw) + " " + cell(v, f, m, n));
        }
      }
  }
  int crafted = 0;
  for (const auto& [v, f] : fixtures::all_kinds()) {
    const bool deg = v == Variant::degenerate;
    std::vector<ParameterSet> draws;
    for (const char* qi : {"1", "-1"}) draws.push_back(ParameterSet::make(v, f, "3/2", {qi}));
    for (int t = -2; t <= 2; ++t) {
      const Scalar q = parse_scalar("3/2");
      const Scalar qj = parse_scalar("5");
      const Scalar qi = deg ? qj + Scalar(t) : qj * int_pow(q, 2 * t);
      draws.push_back(ParameterSet::make(v, f, "3/2", {to_decimal_string(qi.re), "5"}));
    }
    for (const auto& p : draws) {
      if (!separability_polynomial(p, 3).vanishes) out.fail("crafted draw does not vanish: " + cell(v, f, p.m(), 3));
      for (int n = 1; n <= 3; ++n) {
        ++crafted;
        if (!verify_separate_equivalence(p, n)) out.fail("crafted " + cell(v, f, p.m(), n));
      }
    }
  }
  out.notes.insert(out.notes.begin(), std::to_string(cases) + " random and " + std::to_string(crafted) + " crafted cases");
  return out;
}

Outcome intertwiner_criterion(const std::vector<Built>& grid) {
  Outcome out;
  Real worst = 0;
  int checks = 0;
  for (const auto& b : grid)
    for (int i = 1; i < b.n; ++i) {
      const Report rep = intertwiner_check(b.module, i, kResidualTol);
      ++checks;
      worst = std::max(worst, rep.max_residual());
      if (!rep.passed()) out.fail(cell(b.variant, b.flavor, b.m, b.n) + " i=" + std::to_string(i) + ": " + sci(rep.max_residual()));
    }
  out.notes.insert(out.notes.begin(), std::to_string(checks) + " intertwiners, worst residual " + sci(worst));
  return out;
}

Outcome oracle_criterion() {
  Outcome out;
  const auto t0 = Clock::now();
  int runs = 0;
  for (const auto& [v, f] : fixtures::all_kinds())
    for (int m = 0; m <= 1; ++m)
      for (int n = 1; n <= 2; ++n) {
        if (m == 0 && f == Flavor::zero) continue;
        const ParameterSet p = fixtures::standard(v, f, m);
        const OracleReport rep = trace_form_rank(p, n, kResidualTol);
        ++runs;
        if (!rep.checks.passed()) out.fail(cell(v, f, m, n) + ": regular representation residual " + sci(rep.checks.max_residual()));
        if (!rep.P_vanishes && rep.rank != rep.dim)
          out.fail(cell(v, f, m, n) + ": rank " + std::to_string(rep.rank) + " of " + std::to_string(rep.dim));
        if (rep.P_vanishes && rep.semisimple()) std::cerr << "note: " << cell(v, f, m, n) << " semisimple with vanishing product\n";
      }
  const ParameterSet bad = ParameterSet::make(Variant::nondegenerate, Flavor::zero, "3/2", {"1"});
  const OracleReport r = trace_form_rank(bad, 1, kResidualTol);
  if (!(r.rank < r.dim)) out.fail("Q1=1: rank " + std::to_string(r.rank) + " of " + std::to_string(r.dim));
  const double secs = seconds_since(t0);
  if (secs > kOracleSeconds) out.fail("runtime " + std::to_string(secs) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f s", secs);
  out.notes.insert(out.notes.begin(),
                   std::to_string(runs) + " quotients, crafted Q1=1 rank " + std::to_string(r.rank) + "/" + std::to_string(r.dim) + ", " + buf);
  return out;
}

Outcome rsk_criterion() {
  Outcome out;
  for (int n = 0; n <= 7; ++n)
    for (int m = 0; m <= 3; ++m)
      if (!check_rsk_identities(n, m)) out.fail("RSK n=" + std::to_string(n) + " m=" + std::to_string(m));
  int shapes = 0;
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 6; ++n)
      for (const auto& s : enumerate_multipartitions(Flavor::ss, m, n)) {
        ++shapes;
        if (factorized_std_count(s) != count_standard_tableaux(s)) out.fail("ss factorization m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
  out.notes.insert(out.notes.begin(), std::to_string(shapes) + " ss shapes");
  return out;
}

Outcome center_criterion() {
  Outcome out;
  Real worst = 0;
  int runs = 0;
  for (const auto& [v, f] : fixtures::all_kinds())
    for (int m = 0; m <= 2; ++m)
      for (int n = 1; n <= 3; ++n) {
        if (m == 0 && f == Flavor::zero) continue;
        const CenterReport rep = center_check(fixtures::standard(v, f, m), n, kResidualTol);
        ++runs;
        worst = std::max(worst, rep.residuals.max_residual());
        if (!rep.passed()) out.fail(cell(v, f, m, n) + (rep.separates ? ": residual " + sci(rep.residuals.max_residual()) : ": shapes not separated"));
      }
  out.notes.insert(out.notes.begin(), std::to_string(runs) + " cases, worst residual " + sci(worst));
  return out;
}

template <class F>
Outcome guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Outcome o;
    o.fail(std::string("exception: ") + e.what());
    return o;
  }
}

void print(int number, const std::string& name, const Outcome& o, double secs) {
  std::cout << "criterion " << number << " " << name << ": " << (o.pass ? "PASS" : "FAIL");
  char buf[32];
  std::snprintf(buf, sizeof buf, " [%.1f s]", secs);
  std::cout << buf << "\n";
  for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
}

}  // namespace

int main() {
  make_precision(256);
  bool all = true;
  auto record = [&](int k, const std::string& name, const Outcome& o, double secs) {
    print(k, name, o, secs);
    all = all && o.pass;
  };

  Outcome relations, dims;
  RelationRun run;
  relation_grid({"5", "7"}, relations, dims, run);
  if (run.seconds > kRelationSeconds) relations.fail("runtime " + std::to_string(run.seconds) + " s");
  relations.notes.insert(relations.notes.begin(), std::to_string(run.modules) + " modules, worst residual " + sci(run.worst));
  record(1, "relations", relations, run.seconds);
  record(2, "dimension formula", dims, 0);
  {
    Outcome r, d;
    RelationRun extra;
    relation_grid({"5", "15/2"}, r, d, extra);
    std::cout << "    supplementary, degenerate Q=(5,15/2): relations " << (r.pass ? "pass" : "fail") << ", dimensions "
              << (d.pass ? "pass" : "fail") << " over " << extra.modules << " modules, worst residual " << sci(extra.worst)
              << " (not counted)\n";
  }

  auto t0 = Clock::now();
  const Outcome census = guarded([&] { return census_criterion(); });
  record(3, "census identity", census, seconds_since(t0));

  t0 = Clock::now();
  const std::vector<Built> grid = build_grid();
  const double build_secs = seconds_since(t0);
  t0 = Clock::now();
  const IrreducibilityRun irr = irreducibility_criteria(grid);
  const double irr_secs = seconds_since(t0) + build_secs;
  record(4, "type classification", irr.types, irr_secs);
  record(5, "irreducibility and residues", irr.spin, 0);

  const auto timed = [&](int k, const std::string& name, auto&& fn) {
    const auto start = Clock::now();
    const Outcome o = guarded(fn);
    record(k, name, o, seconds_since(start));
  };
  timed(6, "separability equivalence", [&] { return separability_criterion(); });
  timed(7, "intertwiners", [&] { return intertwiner_criterion(grid); });
  timed(8, "oracle agreement", [&] { return oracle_criterion(); });
  timed(9, "RSK identities", [&] { return rsk_criterion(); });
  timed(10, "center", [&] { return center_criterion(); });

  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}

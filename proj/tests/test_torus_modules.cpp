#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "hcsa/commutant.hpp"
#include "hcsa/torus_modules.hpp"

using namespace hcsa;

namespace {

const Real kTight("1e-30");

Multipartition shape_s(std::vector<int> strict, std::vector<std::vector<int>> ordinary) {
  std::vector<Partition> ord;
  for (auto& o : ordinary) ord.push_back({std::move(o)});
  return Multipartition(Flavor::s, {{std::move(strict)}}, std::move(ord));
}

Real residual_named(const Report& r, const std::string& prefix) {
  Real worst = -1;
  for (const auto& x : r.residuals)
    if (x.name.rfind(prefix, 0) == 0) worst = std::max(worst, x.value);
  return worst;
}

/// V with every generator moved through twisted_generator.
TorusModule twist(const TorusModule& v, const std::vector<int>& tau) {
  TorusModule out = v;
  for (int k = 1; k <= v.positions(); ++k) {
    const Matrix x = twisted_generator(v, tau, GeneratorKind::X, k);
    std::vector<Scalar> diag;
    for (int r = 0; r < v.dim; ++r) diag.push_back(x.get(r, r));
    out.x_eigen[k - 1] = diag;
    out.C[k - 1] = twisted_generator(v, tau, GeneratorKind::C, k);
  }
  return out;
}

int even_commutant(const TorusModule& v, const Precision& pr) {
  SuperModuleView view;
  view.dim = v.dim;
  view.parity = v.parity;
  for (const auto& xs : v.x_eigen) view.diagonal.push_back(&xs);
  for (const auto& c : v.C) view.odd.push_back(&c);
  return supercommutant_dimension(view, false, pr);
}

}  // namespace

TEST_CASE("rank-one module at residue 1 is type Q with X = 1") {
  const ParameterSet p = fixtures::nondeg(Flavor::zero, 0);
  const TorusModule v = rank_one_module(Scalar(1), p);
  CHECK(v.dim == 2);
  CHECK(v.type == ModuleType::Q);
  CHECK(max_abs_difference(v.X(0), Matrix::identity(2)) <= p.precision.epsilon);
  REQUIRE(v.odd_involution);
  CHECK(max_abs_difference(*v.odd_involution * *v.odd_involution, Matrix::identity(2)) == 0);
  CHECK(verify_torus_relations(v, p, kTight).passed());
}

TEST_CASE("degenerate rank-one module at residue 0 is type Q with x = 0") {
  const ParameterSet p = fixtures::deg(Flavor::s, 0);
  const TorusModule v = rank_one_module(Scalar(0), p);
  CHECK(v.type == ModuleType::Q);
  CHECK(max_abs(v.X(0)) == 0);
  CHECK(verify_torus_relations(v, p, kTight).passed());
  CHECK_THROWS_AS(rank_one_module(Scalar(0), fixtures::nondeg(Flavor::zero, 0)), InvalidParameter);
}

TEST_CASE("generic rank-one module is type M with X = diag(b+, 1/b+)") {
  const ParameterSet p = fixtures::nondeg(Flavor::zero, 1);
  const Scalar res = p.Q[0];
  const TorusModule v = rank_one_module(res, p);
  CHECK(v.type == ModuleType::M);
  CHECK_FALSE(v.odd_involution);
  const Scalar b = b_plus(res, p);
  CHECK(approx_eq(v.x_eigen[0][0], b, p.precision));
  CHECK(approx_eq(v.x_eigen[0][1], Scalar(1) / b, p.precision));
  CHECK(approx_eq(b + Scalar(1) / b, qval(res, p), p.precision));
  CHECK(even_commutant(v, p.precision) == 1);
}

TEST_CASE("super tensor products follow the M/Q table") {
  const ParameterSet p = fixtures::nondeg(Flavor::s, 2);
  const TorusModule m1 = rank_one_module(p.Q[0], p);
  const TorusModule m2 = rank_one_module(p.Q[1], p);
  const TorusModule q1 = rank_one_module(Scalar(1), p);

  const TorusModule mm = super_tensor(m1, m2, p);
  CHECK(mm.dim == 4);
  CHECK(mm.type == ModuleType::M);
  CHECK(verify_torus_relations(mm, p, kTight).passed());
  CHECK(even_commutant(mm, p.precision) == 1);

  const TorusModule qq = super_tensor(q1, q1, p);
  CHECK(qq.dim == 2);
  CHECK(qq.type == ModuleType::M);
  CHECK(qq.splits == 1);
  CHECK(verify_torus_relations(qq, p, kTight).passed());
  CHECK(even_commutant(qq, p.precision) == 1);

  const TorusModule qm = super_tensor(q1, m1, p);
  CHECK(qm.dim == 4);
  CHECK(qm.type == ModuleType::Q);
  CHECK(verify_torus_relations(qm, p, kTight).passed());
  const TorusModule mq = super_tensor(m1, q1, p);
  CHECK(mq.type == ModuleType::Q);
  CHECK(verify_torus_relations(mq, p, kTight).passed());
}

TEST_CASE("build_L dimensions") {
  const ParameterSet p = fixtures::nondeg(Flavor::s, 1);
  const Multipartition lambda = shape_s({2, 1}, {{1, 1}});
  const TorusModule v = build_L(residue_sequence(StandardTableau::initial(lambda), p), p);
  CHECK(lambda.diagonal_count() == 2);
  CHECK(v.dim == 16);
  CHECK(v.type == ModuleType::M);
  CHECK(verify_torus_relations(v, p, kTight).passed());

  const ParameterSet g = fixtures::nondeg(Flavor::zero, 1);
  const TorusModule one = build_L(make_residue_sequence({g.Q[0]}, g), g);
  CHECK(one.dim == 2);
  CHECK(one.type == ModuleType::M);
  const TorusModule three = build_L(make_residue_sequence({parse_scalar("5"), parse_scalar("7"), parse_scalar("11")}, g), g);
  CHECK(three.dim == 8);
  CHECK(three.type == ModuleType::M);
  CHECK(even_commutant(three, g.precision) == 1);
}

TEST_CASE("build_L dimension is 2^(n - floor(D/2)) for every shape up to n = 5") {
  for (const auto& [variant, flavor] : fixtures::all_kinds()) {
    const ParameterSet p = fixtures::standard(variant, flavor, 1);
    for (int n = 1; n <= 5; ++n)
      for (const auto& shape : enumerate_multipartitions(flavor, 1, n)) {
        const ResidueSequence rs = residue_sequence(StandardTableau::initial(shape), p);
        const TorusModule v = build_L(rs, p);
        const int gamma = shape.diagonal_count();
        CHECK(v.dim == (1 << (n - gamma / 2)));
        CHECK((v.type == ModuleType::M) == (gamma % 2 == 0));
        const Report rep = verify_torus_relations(v, p, kTight);
        CHECK(rep.passed());
        // eigenvalues of X_k + X_k^-1 (x_k^2) are the q-residues
        Real worst = 0;
        for (int k = 0; k < n; ++k)
          for (const auto& a : v.x_eigen[k]) {
            const Scalar y = p.degenerate() ? a * a : a + Scalar(1) / a;
            worst = std::max(worst, abs(y - rs.qvalues[k]));
          }
        CHECK(worst <= Real("1e-60"));
        if (v.type == ModuleType::M && v.dim <= 16) CHECK(even_commutant(v, p.precision) == 1);
      }
  }
}

TEST_CASE("twisted generators") {
  const ParameterSet p = fixtures::nondeg(Flavor::zero, 1);
  const TorusModule v =
      build_L(make_residue_sequence({parse_scalar("5"), parse_scalar("7"), parse_scalar("11")}, p), p);
  const std::vector<int> id = {1, 2, 3};
  for (int k = 1; k <= 3; ++k) {
    CHECK(max_abs_difference(twisted_generator(v, id, GeneratorKind::X, k), v.X(k - 1)) == 0);
    CHECK(max_abs_difference(twisted_generator(v, id, GeneratorKind::Xinv, k), v.X_inverse(k - 1)) == 0);
    CHECK(max_abs_difference(twisted_generator(v, id, GeneratorKind::C, k), v.C[k - 1]) == 0);
  }
  const std::vector<int> s1 = {2, 1, 3};
  CHECK(max_abs_difference(twisted_generator(v, s1, GeneratorKind::X, 1), v.X(1)) == 0);
  CHECK(max_abs_difference(twisted_generator(v, s1, GeneratorKind::C, 2), v.C[0]) == 0);
  CHECK_THROWS_AS(twisted_generator(v, id, GeneratorKind::X, 4), InvalidParameter);

  // (V^sigma)^tau = V^(tau sigma) for all pairs in S_3
  std::vector<int> sigma = {1, 2, 3};
  do {
    std::vector<int> tau = {1, 2, 3};
    do {
      std::vector<int> composed(3);
      for (int j = 0; j < 3; ++j) composed[j] = tau[sigma[j] - 1];
      const TorusModule twice = twist(twist(v, sigma), tau);
      const TorusModule once = twist(v, composed);
      for (int k = 0; k < 3; ++k) {
        CHECK(max_abs_difference(twice.X(k), once.X(k)) == 0);
        CHECK(max_abs_difference(twice.C[k], once.C[k]) == 0);
      }
      CHECK(verify_torus_relations(twice, p, kTight).passed());
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("odd involution supercommutes on type Q products") {
  const ParameterSet p = fixtures::nondeg(Flavor::s, 1);
  const Multipartition lambda = shape_s({1}, {{1}});
  const TorusModule v = build_L(residue_sequence(StandardTableau::initial(lambda), p), p);
  REQUIRE(v.type == ModuleType::Q);
  REQUIRE(v.odd_involution);
  const Matrix& j = *v.odd_involution;
  CHECK(max_abs_difference(j * j, Matrix::identity(v.dim)) <= kTight);
  for (int k = 0; k < v.positions(); ++k) {
    CHECK(max_abs_difference(j * v.X(k), v.X(k) * j) <= kTight);
    CHECK(max_abs(j * v.C[k] + v.C[k] * j) <= kTight);
  }
  for (int r = 0; r < v.dim; ++r)
    for (const auto& e : j.row(r)) CHECK(v.parity[r] != v.parity[e.first]);
}

TEST_CASE("verify_torus_relations rejects a corrupted C") {
  const ParameterSet p = fixtures::nondeg(Flavor::zero, 2);
  TorusModule v = build_L(make_residue_sequence({p.Q[0], p.Q[1]}, p), p);
  REQUIRE(verify_torus_relations(v, p, kTight).passed());
  v.C[1] = Scalar(2) * v.C[1];
  const Report rep = verify_torus_relations(v, p, kTight);
  CHECK_FALSE(rep.passed());
  CHECK(residual_named(rep, "C2^2=1") > 1);
}

TEST_CASE("degenerate x_k c_k + c_k x_k vanishes") {
  const ParameterSet p = fixtures::deg(Flavor::s, 2);
  const Multipartition lambda = shape_s({2, 1}, {{1}, {1}});
  const TorusModule v = build_L(residue_sequence(StandardTableau::initial(lambda), p), p);
  const Report rep = verify_torus_relations(v, p, kTight);
  CHECK(rep.passed());
  CHECK(residual_named(rep, "x1c1=-c1x1") >= 0);
  CHECK(residual_named(rep, "x1c1=-c1x1") <= kTight);
  CHECK(residual_named(rep, "x5c5=-c5x5") <= kTight);
}

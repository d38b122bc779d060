#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ballcomp/funcmodel.hpp"
#include "ballcomp/verify.hpp"

using namespace ballcomp;

namespace {

bool same_poly(const PolyFn& a, const PolyFn& b) {
  if (a.dim() != b.dim()) return false;
  if (a.max_degree() != b.max_degree()) return false;
  const CVec z1 = a.dim() == 1
                      ? CVec{Complex{0.37, -0.21}}
                      : CVec{Complex{0.37, -0.21}, Complex{-0.11, 0.43}};
  return a.eval(z1) == b.eval(z1);
}

SearchConfig light_config() {
  SearchConfig cfg;
  cfg.radial_points = 16;
  cfg.sphere_samples = 64;
  cfg.refine_iters = 4;
  return cfg;
}

double constant_of(const PropertyReport& rep, const std::string& name) {
  for (const auto& [k, v] : rep.empirical_constants)
    if (k == name) return v;
  FAIL(("missing constant " + name));
  return 0.0;
}

}  // namespace

TEST_CASE("instance specs are validated") {
  CHECK_NOTHROW(validate_instance_spec(InstanceSpec{1, 2, 3, 0.5}));
  CHECK_THROWS_AS(validate_instance_spec(InstanceSpec{1, 0, 2, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_instance_spec(InstanceSpec{1, 7, 2, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_instance_spec(InstanceSpec{1, 2, -1, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_instance_spec(InstanceSpec{1, 2, 9, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_instance_spec(InstanceSpec{1, 2, 2, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_instance_spec(InstanceSpec{1, 2, 2, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("instance generation is deterministic and respects its parameters") {
  const InstanceSpec spec{42, 2, 3, 0.6};
  const SymbolQuadruple q1 = random_instance(spec);
  const SymbolQuadruple q2 = random_instance(spec);
  CHECK(q1.dim() == 2);
  CHECK(same_poly(q1.u, q2.u));
  CHECK(same_poly(q1.v, q2.v));
  for (int k = 0; k < 2; ++k) {
    CHECK(same_poly(q1.phi.component(k), q2.phi.component(k)));
    CHECK(same_poly(q1.psi.component(k), q2.psi.component(k)));
  }
  CHECK(q1.u.max_degree() <= 3);
  CHECK(q1.phi.component(0).max_degree() <= 3);

  // The rescaled symbols validate with sup equal to shrink.
  const SelfMapReport phi_rep = validate_selfmap(q1.phi, 0.0, spec.seed);
  CHECK(phi_rep.pass);
  CHECK(phi_rep.sup <= 0.6 + 1e-9);
  CHECK(phi_rep.sup >= 0.6 - 1e-6);
  const SelfMapReport psi_rep = validate_selfmap(q1.psi, 0.0, spec.seed);
  CHECK(psi_rep.sup <= 0.6 + 1e-9);

  const SymbolQuadruple other = random_instance(InstanceSpec{43, 2, 3, 0.6});
  CHECK_FALSE(same_poly(other.u, q1.u));
}

TEST_CASE("geometry suite passes and logs residuals") {
  const PropertyReport rep = geometry_suite(InstanceSpec{7, 2, 2, 0.5}, 500);
  CHECK(rep.pass());
  CHECK(rep.suite == "geometry");
  CHECK(rep.trials == 500);
  CHECK(constant_of(rep, "max_involution") < 1e-10);
  CHECK(constant_of(rep, "max_product_identity") < 1e-12);
  CHECK(constant_of(rep, "max_distance_invariance") < 1e-9);
}

TEST_CASE("evaluation stability suite passes on a small run") {
  const SpaceParams p{1.0, 1.0};
  const PropertyReport rep =
      lemma21_suite(InstanceSpec{11, 2, 2, 0.5}, 400, p, light_config());
  CHECK(rep.pass());
  CHECK(constant_of(rep, "C_emp") > 0.0);
  CHECK(constant_of(rep, "top_decile_median") > 0.0);
}

TEST_CASE("pointwise bound suite passes at default slack") {
  const SpaceParams p{1.0, 1.0};
  const PropertyReport rep =
      lemma22_suite(InstanceSpec{5, 2, 2, 0.5}, 2, p, light_config(), 1.05, 10);
  CHECK(rep.pass());
  // The bound has constant one; the logged constants stay below it.
  CHECK(constant_of(rep, "C_i_max") <= 1.0);
  CHECK(constant_of(rep, "C_ii_max") <= 1.0);
}

TEST_CASE("uniform bound suite passes on small instances") {
  const SpaceParams p{1.0, 1.0};
  const PropertyReport rep =
      lemma23_suite(InstanceSpec{9, 2, 2, 0.5}, 2, p, light_config());
  CHECK(rep.pass());
  CHECK(constant_of(rep, "C_i_max") > 0.0);
}

TEST_CASE("boundary trend suite passes and logs the tail constant") {
  const SpaceParams p{1.0, 1.0};
  const PropertyReport rep =
      lemma31_suite(InstanceSpec{3, 1, 2, 0.5}, 2, p, light_config());
  CHECK(rep.pass());
  CHECK(rep.suite == "lemma31");
}

TEST_CASE("sparse search with no slack produces honest counterexamples") {
  // Sharp peaks plus a coarse direction grid make the searched right side
  // undershoot the pointwise left side; the suite must report that rather
  // than mask it.
  SearchConfig coarse;
  coarse.radial_points = 16;
  coarse.sphere_samples = 64;
  coarse.refine_iters = 0;
  const SpaceParams p{2.0, 1.0};
  const PropertyReport rep =
      lemma22_suite(InstanceSpec{1, 3, 2, 0.9}, 3, p, coarse, 1.0, 15);
  CHECK_FALSE(rep.pass());
  REQUIRE_FALSE(rep.failures.empty());
  const Counterexample& ce = rep.failures.front();
  CHECK(ce.seed >= 1);
  CHECK(ce.detail.find("lhs") != std::string::npos);

  // The same instances at the shipped slack and resolution are clean.
  const PropertyReport ok =
      lemma22_suite(InstanceSpec{1, 3, 2, 0.9}, 3, p, SearchConfig{}, 1.05, 15);
  CHECK(ok.pass());
}

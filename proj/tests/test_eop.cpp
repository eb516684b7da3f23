#include <cmath>

#include "doctest.h"
#include "qrate/eop.hpp"
#include "qrate/errors.hpp"
#include "qrate/random.hpp"

using namespace qrate;

namespace {

EopConfig quick_config() {
  EopConfig cfg;
  cfg.restarts = 12;
  cfg.max_iters = 200;
  return cfg;
}

}  // namespace

TEST_CASE("purification entanglement of pure states equals the marginal entropy") {
  // Bell state
  std::vector<cplx> bell = {1.0 / std::sqrt(2.0), 0.0, 0.0,
                            1.0 / std::sqrt(2.0)};
  BipartiteState bs(2, 2, DensityMatrix(outer(bell, bell)));
  CHECK(entanglement_of_purification(bs, quick_config()).value ==
        doctest::Approx(1.0).epsilon(1e-3));

  Rng rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    auto v = random_pure_vector(rng, 4);
    BipartiteState w(2, 2, DensityMatrix(outer(v, v)));
    double ha = von_neumann_entropy(w.marginal_A());
    CHECK(entanglement_of_purification(w, quick_config()).value ==
          doctest::Approx(ha).epsilon(1e-3));
  }
}

TEST_CASE("product states carry no purification entanglement") {
  Rng rng(42);
  DensityMatrix a = random_density(rng, 2), b = random_density(rng, 2);
  BipartiteState w(2, 2, DensityMatrix(tensor(a.mat(), b.mat())));
  CHECK(entanglement_of_purification(w, quick_config()).value <= 1e-2);
}

TEST_CASE("maximally correlated classical bits") {
  ComplexMatrix m(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  BipartiteState w(2, 2, DensityMatrix(m));
  CHECK(entanglement_of_purification(w, quick_config()).value ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("estimate fields are sane") {
  Rng rng(43);
  BipartiteState w(2, 2, random_density(rng, 4));
  EopEstimate est = entanglement_of_purification(w, quick_config());
  CHECK(est.value >= 0.0);
  CHECK(est.spread >= 0.0);
  CHECK(est.restarts == 12);
  // never exceeds the purifying-marginal entropy reachable by the identity map
  Purification p = purify(w.state);
  double h_mu = von_neumann_entropy(DensityMatrix(
      partial_trace(p.projector(), {p.dim_R, 2, 2}, {0, 2})));
  CHECK(est.value <= h_mu + 1e-9);
}

TEST_CASE("oversized states are rejected") {
  BipartiteState w(8, 4, DensityMatrix::maximally_mixed(32));
  CHECK_THROWS_AS(entanglement_of_purification(w), DimensionTooLarge);
  CHECK_THROWS_AS(unassisted_rd_upper(DensityMatrix::maximally_mixed(2), 1.0),
                  InvalidDistortion);
}

TEST_CASE("unassisted upper bound endpoints") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  CHECK(unassisted_rd_upper(mm, 0.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(unassisted_rd_upper(mm, 0.75) == doctest::Approx(0.0).epsilon(1e-9));
  DensityMatrix pure = DensityMatrix::pure({0.8, 0.6});
  CHECK(unassisted_rd_upper(pure, 0.3) <= 1e-6);
  Rng rng(44);
  DensityMatrix rho = random_density(rng, 2);
  CHECK(unassisted_rd_upper(rho, 0.0) ==
        doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-3));
}

TEST_CASE("upper bound dominates the assisted qubit rate") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  EopConfig cfg = quick_config();
  cfg.channel_restarts = 3;
  double upper = unassisted_rd_upper(mm, 0.375, cfg);
  double lower = solve_r_eaq(mm, 0.375).rate;
  CHECK(upper >= lower - 1e-6);
  CHECK(upper <= 1.0 + 1e-9);  // never worse than lossless
}

TEST_CASE("upper bound is non-increasing in the budget") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  EopConfig cfg = quick_config();
  cfg.channel_restarts = 3;
  double prev = unassisted_rd_upper(mm, 0.0, cfg);
  for (double D : {0.25, 0.5, 0.75}) {
    double cur = unassisted_rd_upper(mm, D, cfg);
    CHECK(cur <= prev + 2e-3);
    prev = cur;
  }
}

TEST_CASE("sandwich reports") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  SandwichReport at0 = sandwich_check(mm, 0.0);
  CHECK(at0.lower == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(at0.upper == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(at0.ok);

  SandwichReport at_top = sandwich_check(mm, 0.75);
  CHECK(at_top.lower == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(at_top.upper == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(at_top.coherent_info_diag == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(at_top.ok);

  Rng rng(45);
  DensityMatrix rho = random_density(rng, 2);
  EopConfig cfg = quick_config();
  cfg.channel_restarts = 2;
  for (double D : {0.1, 0.4}) {
    SandwichReport rep = sandwich_check(rho, D, SolverConfig{}, cfg);
    CHECK(rep.ok);
  }
}

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qrate/errors.hpp"
#include "qrate/schumacher.hpp"

using namespace qrate;

namespace {

// independent binomial-tail oracle for a diagonal qubit source: mass of the
// floor(2^{n r}) most likely strings of {p, 1-p}^n (p >= 1/2)
double binomial_kept_mass(double p, std::size_t n, double rate) {
  std::vector<double> counts(n + 1);
  counts[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k)
    counts[k] = counts[k - 1] * static_cast<double>(n - k + 1) /
                static_cast<double>(k);
  double keep = std::floor(std::exp2(rate * static_cast<double>(n)));
  double mass = 0.0, used = 0.0;
  for (std::size_t k = 0; k <= n && used < keep; ++k) {
    double take = std::min(counts[k], keep - used);
    mass += take * std::pow(p, static_cast<double>(n - k)) *
            std::pow(1.0 - p, static_cast<double>(k));
    used += take;
  }
  return std::min(mass, 1.0);
}

}  // namespace

TEST_CASE("degenerate rates") {
  DensityMatrix pure = DensityMatrix::pure({1.0, 0.0});
  CompressionReport rep = schumacher_fidelity(pure, 10, 0.0);
  CHECK(rep.fidelity == doctest::Approx(1.0));
  CHECK(rep.kept_mass == doctest::Approx(1.0));

  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  CHECK(schumacher_fidelity(mm, 4, 1.0).fidelity == doctest::Approx(1.0));
}

TEST_CASE("matches the binomial-tail oracle on a skewed qubit") {
  DensityMatrix skew = DensityMatrix::diagonal({0.9, 0.1});
  for (std::size_t n : {5, 20, 60}) {
    for (double rate : {0.2, 0.469, 0.6, 0.9}) {
      CompressionReport rep = schumacher_fidelity(skew, n, rate);
      double mass = binomial_kept_mass(0.9, n, rate);
      CHECK(rep.kept_mass == doctest::Approx(mass).epsilon(1e-12));
      CHECK(rep.fidelity == doctest::Approx(mass * mass).epsilon(1e-12));
    }
  }
}

TEST_CASE("fidelity and kept mass are non-decreasing in rate") {
  DensityMatrix skew = DensityMatrix::diagonal({0.8, 0.2});
  double prev_f = -1.0, prev_m = -1.0;
  for (double rate = 0.0; rate <= 1.0001; rate += 0.05) {
    CompressionReport rep = schumacher_fidelity(skew, 25, std::min(rate, 1.0));
    CHECK(rep.fidelity >= prev_f - 1e-12);
    CHECK(rep.kept_mass >= prev_m - 1e-12);
    prev_f = rep.fidelity;
    prev_m = rep.kept_mass;
  }
}

TEST_CASE("concentration: above-entropy rates improve with block length") {
  DensityMatrix skew = DensityMatrix::diagonal({0.9, 0.1});
  CompressionReport n20 = schumacher_fidelity(skew, 20, 0.6);
  CompressionReport n60 = schumacher_fidelity(skew, 60, 0.6);
  CHECK(n60.fidelity > n20.fidelity);
  // below the entropy (h(0.1) = 0.469) the kept mass stays bounded away from 1
  CompressionReport starved = schumacher_fidelity(skew, 60, 0.4);
  CHECK(starved.kept_mass < 0.9);
}

TEST_CASE("non-diagonal sources are rotated into their eigenbasis") {
  // Bloch-x mixed state with eigenvalues {0.9, 0.1}
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = 0.4;
  m(1, 0) = 0.4;
  DensityMatrix rot(m);
  DensityMatrix diag = DensityMatrix::diagonal({0.9, 0.1});
  CompressionReport a = schumacher_fidelity(rot, 20, 0.6);
  CompressionReport b = schumacher_fidelity(diag, 20, 0.6);
  CHECK(a.fidelity == doctest::Approx(b.fidelity).epsilon(1e-12));
}

TEST_CASE("qutrit sources use multinomial classes") {
  DensityMatrix q = DensityMatrix::diagonal({0.7, 0.2, 0.1});
  CompressionReport rep = schumacher_fidelity(q, 10, 1.5);
  CHECK(rep.kept_mass > 0.9);
  CHECK(rep.kept_mass <= 1.0);
  CHECK(schumacher_fidelity(q, 10, std::log2(3.0)).fidelity ==
        doctest::Approx(1.0));
}

TEST_CASE("input validation") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  CHECK_THROWS_AS(schumacher_fidelity(mm, 0, 0.5), BlockTooLarge);
  CHECK_THROWS_AS(schumacher_fidelity(mm, 101, 0.5), BlockTooLarge);
  CHECK_THROWS_AS(schumacher_fidelity(mm, 10, -0.1), RateOutOfRange);
  CHECK_THROWS_AS(schumacher_fidelity(mm, 10, 1.5), RateOutOfRange);
}

#include <cmath>

#include "doctest.h"
#include "qrate/channels.hpp"
#include "qrate/entropic.hpp"
#include "qrate/errors.hpp"
#include "qrate/random.hpp"
#include "qrate/states.hpp"

using namespace qrate;

namespace {

double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// (id (x) N) applied to the canonical purification of rho
BipartiteState channel_output(const DensityMatrix& rho,
                              const QuantumChannel& n) {
  Purification p = purify(rho);
  ComplexMatrix proj = p.projector();
  ComplexMatrix idR = ComplexMatrix::identity(p.dim_R);
  ComplexMatrix w(p.dim_R * n.dim_out(), p.dim_R * n.dim_out());
  for (const auto& k : n.kraus()) {
    ComplexMatrix lifted = tensor(idR, k);
    w += lifted * proj * lifted.adjoint();
  }
  return BipartiteState(p.dim_R, n.dim_out(), DensityMatrix(w));
}

}  // namespace

TEST_CASE("entropy golden values") {
  CHECK(von_neumann_entropy(DensityMatrix::pure({1.0, 0.0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(1.0));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) ==
        doctest::Approx(2.0));
  CHECK(von_neumann_entropy(DensityMatrix::diagonal({0.9, 0.1})) ==
        doctest::Approx(0.468995593589281).epsilon(1e-10));
  // basis independence
  Rng rng(1);
  ComplexMatrix u = random_unitary(rng, 3);
  DensityMatrix rho = DensityMatrix::diagonal({0.5, 0.3, 0.2});
  DensityMatrix rot(u * rho.mat() * u.adjoint());
  CHECK(von_neumann_entropy(rot) == doctest::Approx(von_neumann_entropy(rho)));
}

TEST_CASE("mutual and coherent information on known states") {
  // Bell state: I = 2, coherent = 1
  std::vector<cplx> bell = {1.0 / std::sqrt(2.0), 0.0, 0.0,
                            1.0 / std::sqrt(2.0)};
  BipartiteState bs(2, 2, DensityMatrix(outer(bell, bell)));
  CHECK(mutual_information(bs) == doctest::Approx(2.0));
  CHECK(coherent_information(bs) == doctest::Approx(1.0));

  // product state: I = 0
  Rng rng(2);
  DensityMatrix a = random_density(rng, 2), b = random_density(rng, 3);
  BipartiteState prod(2, 3, DensityMatrix(tensor(a.mat(), b.mat())));
  CHECK(mutual_information(prod) == doctest::Approx(0.0).epsilon(1e-9));

  // pure output through a constant channel: coherent = -H(source)
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto constant = constant_channel(DensityMatrix::pure({1.0, 0.0}));
  CHECK(coherent_information(channel_output(mm, constant)) ==
        doctest::Approx(-1.0));
}

TEST_CASE("entanglement fidelity golden values") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  CHECK(entanglement_fidelity(mm, standard_channel(ChannelKind::Identity, 0, 2)) ==
        doctest::Approx(1.0));
  // full depolarizing on the maximally mixed qubit: 1/4, distortion 3/4
  auto dep = standard_channel(ChannelKind::CompletelyDepolarizing, 0, 2);
  CHECK(entanglement_fidelity(mm, dep) == doctest::Approx(0.25));
  CHECK(distortion(mm, dep) == doctest::Approx(0.75));
  // depolarizing(p) on the maximally mixed qubit: 1 - 3p/4
  auto dp = standard_channel(ChannelKind::Depolarizing, 0.3);
  CHECK(entanglement_fidelity(mm, dp) == doctest::Approx(1.0 - 0.75 * 0.3));
}

TEST_CASE("entanglement fidelity matches the purification overlap") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    DensityMatrix rho = random_density(rng, 2);
    QuantumChannel n = random_channel(rng, 2, 2, 3);
    Purification p = purify(rho);
    BipartiteState w = channel_output(rho, n);
    // <psi| omega |psi>
    ComplexMatrix proj = p.projector();
    cplx overlap = (proj * w.state.mat()).trace();
    CHECK(entanglement_fidelity(rho, n) ==
          doctest::Approx(overlap.real()).epsilon(1e-9));
  }
}

TEST_CASE("entanglement fidelity is affine in channel mixtures") {
  Rng rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    DensityMatrix rho = random_density(rng, 2);
    QuantumChannel n1 = random_channel(rng, 2, 2, 2);
    QuantumChannel n2 = random_channel(rng, 2, 2, 3);
    double w = 0.3;
    QuantumChannel mix = mix_channels({n1, n2}, {w, 1.0 - w});
    double expected = w * entanglement_fidelity(rho, n1) +
                      (1.0 - w) * entanglement_fidelity(rho, n2);
    CHECK(entanglement_fidelity(rho, mix) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("trace distance basics") {
  DensityMatrix z0 = DensityMatrix::pure({1.0, 0.0});
  DensityMatrix z1 = DensityMatrix::pure({0.0, 1.0});
  CHECK(trace_distance(z0, z1) == doctest::Approx(2.0));  // unnormalized
  CHECK(trace_distance(z0, z0) == doctest::Approx(0.0));
  Rng rng(5);
  DensityMatrix a = random_density(rng, 3), b = random_density(rng, 3),
                c = random_density(rng, 3);
  CHECK(trace_distance(a, b) >= 0.0);
  CHECK(trace_distance(a, b) <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
}

TEST_CASE("half mutual information dominates coherent information") {
  Rng rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    DensityMatrix rho = random_density(rng, 2);
    QuantumChannel n = random_channel(rng, 2, 2, 1 + trial % 4);
    BipartiteState w = channel_output(rho, n);
    CHECK(0.5 * mutual_information(w) >= coherent_information(w) - 1e-9);
  }
}

TEST_CASE("operator inequality: Tr P(A-B) >= negative part of A-B") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t dim = 2 + trial % 3;
    ComplexMatrix p = random_effect(rng, dim);
    ComplexMatrix a = random_hermitian(rng, dim);
    ComplexMatrix b = random_hermitian(rng, dim);
    ComplexMatrix diff = a - b;
    double lhs = (p * diff).trace().real();
    CHECK(lhs >= negative_part_trace(diff) - 1e-9);
  }
}

TEST_CASE("mutual information is superadditive across a joint channel") {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    auto phi1 = random_pure_vector(rng, 4);  // on R1 A1
    auto phi2 = random_pure_vector(rng, 4);  // on R2 A2
    QuantumChannel n = random_channel(rng, 4, 4, 1 + trial % 3);
    // assemble R1 A1 R2 A2, regroup to R1 R2 A1 A2, push A1 A2 through n
    ComplexMatrix joint = outer(tensor(phi1, phi2), tensor(phi1, phi2));
    joint = permute_systems(joint, {2, 2, 2, 2}, {0, 2, 1, 3});
    ComplexMatrix id4 = ComplexMatrix::identity(4);
    ComplexMatrix theta(16, 16);
    for (const auto& k : n.kraus()) {
      ComplexMatrix lifted = tensor(id4, k);
      theta += lifted * joint * lifted.adjoint();
    }
    double joint_mi =
        mutual_information(BipartiteState(4, 4, DensityMatrix(theta)));
    ComplexMatrix t11 = partial_trace(theta, {2, 2, 2, 2}, {0, 2});
    ComplexMatrix t22 = partial_trace(theta, {2, 2, 2, 2}, {1, 3});
    double mi1 = mutual_information(BipartiteState(2, 2, DensityMatrix(t11)));
    double mi2 = mutual_information(BipartiteState(2, 2, DensityMatrix(t22)));
    CHECK(joint_mi >= mi1 + mi2 - 1e-9);
  }
}

TEST_CASE("superadditivity is tight for product channels") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto phi1 = random_pure_vector(rng, 4);
    auto phi2 = random_pure_vector(rng, 4);
    QuantumChannel n1 = random_channel(rng, 2, 2, 2);
    QuantumChannel n2 = random_channel(rng, 2, 2, 2);
    std::vector<ComplexMatrix> kraus;
    for (const auto& a : n1.kraus())
      for (const auto& b : n2.kraus()) kraus.push_back(tensor(a, b));
    QuantumChannel n(4, 4, kraus);
    ComplexMatrix joint = outer(tensor(phi1, phi2), tensor(phi1, phi2));
    joint = permute_systems(joint, {2, 2, 2, 2}, {0, 2, 1, 3});
    ComplexMatrix id4 = ComplexMatrix::identity(4);
    ComplexMatrix theta(16, 16);
    for (const auto& k : n.kraus()) {
      ComplexMatrix lifted = tensor(id4, k);
      theta += lifted * joint * lifted.adjoint();
    }
    double joint_mi =
        mutual_information(BipartiteState(4, 4, DensityMatrix(theta)));
    ComplexMatrix t11 = partial_trace(theta, {2, 2, 2, 2}, {0, 2});
    ComplexMatrix t22 = partial_trace(theta, {2, 2, 2, 2}, {1, 3});
    double mi1 = mutual_information(BipartiteState(2, 2, DensityMatrix(t11)));
    double mi2 = mutual_information(BipartiteState(2, 2, DensityMatrix(t22)));
    CHECK(joint_mi == doctest::Approx(mi1 + mi2).epsilon(1e-9));
  }
}

TEST_CASE("binary entropy helper sanity") {
  CHECK(h2(0.1) == doctest::Approx(0.468995593589281).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto erasure = standard_channel(ChannelKind::Erasure, 0.3);
  CHECK_THROWS_AS(entanglement_fidelity(mm, erasure), DimensionMismatch);
  CHECK_THROWS_AS(trace_distance(mm, DensityMatrix::maximally_mixed(3)),
                  DimensionMismatch);
}

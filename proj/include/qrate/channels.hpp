#pragma once

#include <string>
#include <vector>

#include "qrate/complex_matrix.hpp"
#include "qrate/states.hpp"

namespace qrate {

/// CPTP map given by Kraus operators K_k (dim_out x dim_in) with
/// sum K^dagger K = I within 1e-9, checked on construction.
class QuantumChannel {
 public:
  QuantumChannel(std::size_t dim_in, std::size_t dim_out,
                 std::vector<ComplexMatrix> kraus);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;  // sum K x K^dagger
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const;  // sum K^dagger x K

 private:
  std::size_t dim_in_, dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

DensityMatrix apply_channel(const QuantumChannel& n, const DensityMatrix& rho);

/// Unnormalized Choi operator J = sum_{ij} |i><j| (x) N(|i><j|), with
/// Tr_out J = I_in. Input factor is the most significant index.
struct ChoiMatrix {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  ComplexMatrix mat;

  /// Checks Hermitian, PSD within -1e-9, Tr_out = I_in within 1e-9.
  /// Throws NotCPTP otherwise.
  void validate() const;
  ComplexMatrix apply(const ComplexMatrix& x) const;  // Tr_in[J (x^T (x) I)]
};

ChoiMatrix choi_of_channel(const QuantumChannel& n);
/// Kraus operators from the Choi spectrum (eigenvalues > 1e-10 kept).
QuantumChannel channel_of_choi(const ChoiMatrix& j);

struct StinespringResult {
  ComplexMatrix isometry;        // (dim_out * dim_env) x dim_in, V^dagger V = I
  std::size_t dim_env = 0;       // = number of Kraus operators
  QuantumChannel complementary;  // Tr_out V rho V^dagger
};

StinespringResult stinespring(const QuantumChannel& n);

enum class ChannelKind {
  Identity,
  CompletelyDepolarizing,
  Depolarizing,
  Dephasing,
  AmplitudeDamping,
  Erasure,
  Constant,
};

/// Test-fixture channel factory. Identity/CompletelyDepolarizing take a
/// dimension; Depolarizing/Dephasing a probability p; AmplitudeDamping a
/// damping gamma; Erasure a probability p (qubit input, output dim 3 with
/// |2> the erasure flag); Constant a target state sigma.
QuantumChannel standard_channel(ChannelKind kind, double param = 0.0,
                                std::size_t dim = 2);
QuantumChannel constant_channel(const DensityMatrix& sigma);

/// Convex mixture of channels with the same dimensions.
QuantumChannel mix_channels(const std::vector<QuantumChannel>& channels,
                            const std::vector<double>& weights);

}  // namespace qrate

#include "qrate/entropic.hpp"

#include <cmath>

#include "qrate/errors.hpp"

namespace qrate {

BipartiteState::BipartiteState(std::size_t da, std::size_t db, DensityMatrix s)
    : dim_A(da), dim_B(db), state(std::move(s)) {
  if (da * db != state.dim())
    throw DimensionMismatch("bipartite dims do not match state dimension");
}

DensityMatrix BipartiteState::marginal_A() const {
  return DensityMatrix(partial_trace(state.mat(), {dim_A, dim_B}, {0}));
}

DensityMatrix BipartiteState::marginal_B() const {
  return DensityMatrix(partial_trace(state.mat(), {dim_A, dim_B}, {1}));
}

double entropy_of_operator(const ComplexMatrix& psd) {
  EigResult e = eig_hermitian(psd);
  double h = 0.0;
  for (double lam : e.values) {
    if (lam < -1e-8) throw NotDensityMatrix("entropy of non-PSD operator");
    if (lam <= 1e-12) continue;  // 0 log 0 := 0, clamp at 1e-12
    h -= lam * std::log2(lam);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_operator(rho.mat());
}

double mutual_information(const BipartiteState& w) {
  return von_neumann_entropy(w.marginal_A()) + von_neumann_entropy(w.marginal_B()) -
         von_neumann_entropy(w.state);
}

double coherent_information(const BipartiteState& s) {
  return von_neumann_entropy(s.marginal_B()) - von_neumann_entropy(s.state);
}

double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& n) {
  if (n.dim_in() != n.dim_out())
    throw DimensionMismatch("entanglement fidelity needs dim_out == dim_in");
  if (rho.dim() != n.dim_in())
    throw DimensionMismatch("entanglement fidelity state/channel dims");
  double fe = 0.0;
  for (const auto& k : n.kraus()) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
      for (std::size_t j = 0; j < rho.dim(); ++j) t += rho.mat()(i, j) * k(j, i);
    fe += std::norm(t);
  }
  return fe;
}

double distortion(const DensityMatrix& rho, const QuantumChannel& n) {
  return 1.0 - entanglement_fidelity(rho, n);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("trace distance dims");
  return trace_norm_hermitian(rho.mat() - sigma.mat());
}

}  // namespace qrate

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qrate/capacity.hpp"
#include "qrate/channels.hpp"
#include "qrate/rdsolve.hpp"
#include "qrate/states.hpp"

namespace qrate {

enum class Theorem { T4, T5, T6, T7, T8 };

Theorem theorem_from_string(const std::string& s);
std::string theorem_to_string(Theorem t);

/// Source-channel feasibility verdict: lhs is a source rate, rhs a channel
/// capacity; the scheme is feasible when lhs <= rhs (boundary within 1e-6
/// counts as feasible).
struct SeparationVerdict {
  Theorem theorem = Theorem::T4;
  double lhs_bits = 0.0;
  double rhs_bits = 0.0;
  bool feasible = false;
  double margin = 0.0;  // rhs - lhs
  bool caveat = false;  // rhs is an uncertified best-found estimate
};

using SepSource = std::variant<ClassicalSource, DensityMatrix>;

/// T4: H(U) vs Holevo.  T5: classical R(D) vs Holevo.
/// T6: H(A) vs coherent-information capacity.  T7: H(A) vs half the
/// entanglement-assisted capacity.  T8: assisted quantum R(D) vs half the
/// entanglement-assisted capacity.  D is required for T5/T8 and forbidden
/// otherwise; the source type must match the theorem.
SeparationVerdict check(Theorem theorem, const SepSource& source,
                        const QuantumChannel& channel,
                        std::optional<double> D = std::nullopt,
                        const SolverConfig& rd_config = {},
                        const CapacityConfig& cap_config = {});

struct TwoStagePlan {
  double compression_rate = 0.0;       // bits per source symbol
  double channel_uses_per_symbol = 0.0;
};

/// Bookkeeping for the compress-then-channel-code scheme implied by a
/// feasible verdict.
TwoStagePlan two_stage_plan(const SeparationVerdict& verdict);

}  // namespace qrate

#include "qrate/sepcheck.hpp"

#include <cmath>

#include "qrate/entropic.hpp"
#include "qrate/errors.hpp"

namespace qrate {

namespace {

double pmf_entropy(const ClassicalSource& s) {
  double h = 0.0;
  for (double p : s.pmf)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

}  // namespace

Theorem theorem_from_string(const std::string& s) {
  if (s == "T4") return Theorem::T4;
  if (s == "T5") return Theorem::T5;
  if (s == "T6") return Theorem::T6;
  if (s == "T7") return Theorem::T7;
  if (s == "T8") return Theorem::T8;
  throw InvalidParameter("unknown theorem name: " + s);
}

std::string theorem_to_string(Theorem t) {
  switch (t) {
    case Theorem::T4: return "T4";
    case Theorem::T5: return "T5";
    case Theorem::T6: return "T6";
    case Theorem::T7: return "T7";
    case Theorem::T8: return "T8";
  }
  return "?";
}

SeparationVerdict check(Theorem theorem, const SepSource& source,
                        const QuantumChannel& channel,
                        std::optional<double> D,
                        const SolverConfig& rd_config,
                        const CapacityConfig& cap_config) {
  bool needs_d = theorem == Theorem::T5 || theorem == Theorem::T8;
  if (needs_d && !D) throw MissingDistortion("this check needs --distortion");
  if (!needs_d && D)
    throw InvalidParameter("distortion budget not accepted by this check");
  bool classical = theorem == Theorem::T4 || theorem == Theorem::T5;
  if (classical && !std::holds_alternative<ClassicalSource>(source))
    throw SourceTypeMismatch("this check takes a classical source");
  if (!classical && !std::holds_alternative<DensityMatrix>(source))
    throw SourceTypeMismatch("this check takes a quantum source");

  SeparationVerdict v;
  v.theorem = theorem;
  switch (theorem) {
    case Theorem::T4:
      v.lhs_bits = pmf_entropy(std::get<ClassicalSource>(source));
      v.rhs_bits = holevo_capacity(channel, cap_config).value;
      v.caveat = true;
      break;
    case Theorem::T5:
      v.lhs_bits = classical_rd(std::get<ClassicalSource>(source), *D, rd_config);
      v.rhs_bits = holevo_capacity(channel, cap_config).value;
      v.caveat = true;
      break;
    case Theorem::T6:
      v.lhs_bits = von_neumann_entropy(std::get<DensityMatrix>(source));
      v.rhs_bits = coherent_info_capacity(channel, cap_config).value;
      v.caveat = true;
      break;
    case Theorem::T7:
      v.lhs_bits = von_neumann_entropy(std::get<DensityMatrix>(source));
      v.rhs_bits = 0.5 * ea_capacity(channel, cap_config).value;
      v.caveat = false;
      break;
    case Theorem::T8:
      v.lhs_bits =
          solve_r_eaq(std::get<DensityMatrix>(source), *D, rd_config).rate;
      v.rhs_bits = 0.5 * ea_capacity(channel, cap_config).value;
      v.caveat = false;
      break;
  }
  v.margin = v.rhs_bits - v.lhs_bits;
  v.feasible = v.margin >= -1e-6;
  return v;
}

TwoStagePlan two_stage_plan(const SeparationVerdict& verdict) {
  if (!verdict.feasible)
    throw InfeasiblePlan("no two-stage plan for an infeasible verdict");
  TwoStagePlan plan;
  plan.compression_rate = verdict.lhs_bits;
  if (verdict.rhs_bits <= 1e-9) {
    if (verdict.lhs_bits <= 1e-9) {
      plan.channel_uses_per_symbol = 0.0;  // nothing to send
      return plan;
    }
    throw DegenerateCapacity("capacity too small to divide by");
  }
  plan.channel_uses_per_symbol = verdict.lhs_bits / verdict.rhs_bits;
  return plan;
}

}  // namespace qrate

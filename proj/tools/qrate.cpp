#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrate/block_distortion.hpp"
#include "qrate/capacity.hpp"
#include "qrate/eop.hpp"
#include "qrate/errors.hpp"
#include "qrate/json_io.hpp"
#include "qrate/parallel.hpp"
#include "qrate/rdsolve.hpp"
#include "qrate/schumacher.hpp"
#include "qrate/sepcheck.hpp"

using nlohmann::json;
using namespace qrate;

namespace {

int exit_code_of(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Parse: return 1;
    case ErrorCategory::Usage: return 1;
    case ErrorCategory::Numeric: return 2;
    case ErrorCategory::Infeasible: return 3;
    case ErrorCategory::Resource: return 4;
  }
  return 2;
}

// 9 significant digits for all numeric table output
std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file " + path);
  out << text;
}

std::vector<double> parse_grid(const std::string& spec) {
  // "lo:hi:count" inclusive
  double lo, hi;
  std::size_t count;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' ||
      count < 2 || hi < lo)
    throw ParseError("grid must look like lo:hi:count with count >= 2");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) /
                    static_cast<double>(count - 1);
  return g;
}

ClassicalSource classical_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pmf") || !j.contains("dist"))
    throw ParseError("classical source needs pmf and dist");
  try {
    return ClassicalSource(j.at("pmf").get<std::vector<double>>(),
                           j.at("dist").get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

SepSource sep_source_from_file(const std::string& path) {
  json j = load_json_file(path);
  if (j.is_object() && j.contains("pmf")) return classical_from_json(j);
  return state_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum rate-distortion toolkit"};
  app.require_subcommand(1);

  std::string source_path, channel_path, state_path, output_path, grid_spec,
      flavor = "eac", which = "ea", theorem = "T7";
  double tol = 1e-6, rate_tol = 1e-4, rate = 0.0, mix_weight = 0.0;
  std::optional<double> distortion_opt;
  std::uint64_t seed = 42;
  std::size_t copies = 1, dim_a = 0;

  auto* rd = app.add_subcommand("rd-curve", "rate-distortion curve as CSV");
  rd->add_option("--source", source_path, "source JSON")->required();
  rd->add_option("--flavor", flavor, "eac | eaq | classical");
  rd->add_option("--grid", grid_spec, "distortion grid lo:hi:count")->required();
  rd->add_option("--output,-o", output_path, "output path (default stdout)");
  rd->add_option("--tol", tol, "inner stationarity tolerance");
  rd->add_option("--rate-tol", rate_tol, "duality gap tolerance");

  auto* eo = app.add_subcommand("eop", "purification-entanglement bounds");
  eo->add_option("--source", source_path, "source JSON (with --distortion)");
  eo->add_option("--state", state_path, "bipartite state JSON (standalone)");
  eo->add_option("--dim-a", dim_a, "first subsystem dimension for --state");
  eo->add_option("--distortion", distortion_opt, "distortion budget");
  eo->add_option("--seed", seed, "restart seed");
  eo->add_option("--output,-o", output_path, "output path (default stdout)");

  auto* cap = app.add_subcommand("capacity", "channel capacity estimates");
  cap->add_option("--channel", channel_path, "channel JSON")->required();
  cap->add_option("--which", which, "holevo | coherent | ea");
  cap->add_option("--seed", seed, "restart seed");
  cap->add_option("--output,-o", output_path, "output path (default stdout)");

  auto* sep = app.add_subcommand("sepcheck", "source-channel separation verdict");
  sep->add_option("--theorem", theorem, "T4 | T5 | T6 | T7 | T8")->required();
  sep->add_option("--source", source_path, "source JSON")->required();
  sep->add_option("--channel", channel_path, "channel JSON")->required();
  sep->add_option("--distortion", distortion_opt, "distortion budget (T5/T8)");
  sep->add_option("--seed", seed, "restart seed");
  sep->add_option("--output,-o", output_path, "output path (default stdout)");

  auto* sch = app.add_subcommand("schumacher", "typical-subspace compression");
  sch->add_option("--source", source_path, "source JSON")->required();
  sch->add_option("--n", copies, "number of copies")->required();
  sch->add_option("--rate", rate, "bits per copy")->required();
  sch->add_option("--output,-o", output_path, "output path (default stdout)");

  auto* lem = app.add_subcommand("lemma1", "block distortion bridge check");
  lem->add_option("--source", source_path, "source JSON")->required();
  lem->add_option("--channel", channel_path, "target channel JSON")->required();
  lem->add_option("--n", copies, "block length");
  lem->add_option("--mix-depolarizing", mix_weight,
                  "perturb the block by mixing with full depolarizing");
  lem->add_option("--output,-o", output_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rd->parsed()) {
      std::vector<double> grid = parse_grid(grid_spec);
      SolverConfig cfg;
      cfg.tol = tol;
      cfg.rate_tol = rate_tol;
      std::ostringstream csv;
      csv << "D,rate_bits,lambda,gap\n";
      if (flavor == "classical") {
        ClassicalSource src = classical_from_json(load_json_file(source_path));
        for (double D : grid)
          csv << fmt9(D) << ',' << fmt9(classical_rd(src, D, cfg)) << ",0,0\n";
      } else if (flavor == "eac" || flavor == "eaq") {
        DensityMatrix src = load_state(source_path);
        RDCurve curve = rd_curve(
            src, grid, flavor == "eaq" ? RDFlavor::eaq : RDFlavor::eac, cfg);
        for (const auto& pt : curve.points)
          csv << fmt9(pt.D) << ',' << fmt9(pt.rate) << ',' << fmt9(pt.lambda)
              << ',' << fmt9(pt.gap) << '\n';
      } else {
        throw ParseError("unknown flavor: " + flavor);
      }
      write_text(output_path, csv.str());
    } else if (eo->parsed()) {
      json out;
      if (!state_path.empty()) {
        if (dim_a == 0)
          throw ParseError("--state needs --dim-a");
        DensityMatrix w = load_state(state_path);
        if (dim_a == 0 || w.dim() % dim_a != 0)
          throw DimensionMismatch("--dim-a must divide the state dimension");
        EopConfig cfg;
        cfg.seed = seed;
        EopEstimate est = entanglement_of_purification(
            BipartiteState(dim_a, w.dim() / dim_a, w), cfg);
        out = {{"value_bits", est.value},
               {"restarts", est.restarts},
               {"spread", est.spread}};
      } else if (!source_path.empty() && distortion_opt) {
        DensityMatrix srcq = load_state(source_path);
        EopConfig cfg;
        cfg.seed = seed;
        SandwichReport rep =
            sandwich_check(srcq, *distortion_opt, SolverConfig{}, cfg);
        out = {{"lower_bits", rep.lower},
               {"upper_bits", rep.upper},
               {"coherent_info_diag", rep.coherent_info_diag},
               {"ok", rep.ok}};
      } else {
        throw ParseError("need either --state --dim-a or --source --distortion");
      }
      write_text(output_path, out.dump(2) + "\n");
    } else if (cap->parsed()) {
      QuantumChannel n = load_channel(channel_path);
      CapacityConfig cfg;
      cfg.seed = seed;
      CapacityEstimate est;
      if (which == "holevo")
        est = holevo_capacity(n, cfg);
      else if (which == "coherent")
        est = coherent_info_capacity(n, cfg);
      else if (which == "ea")
        est = ea_capacity(n, cfg);
      else
        throw ParseError("unknown capacity kind: " + which);
      json out = {{"which", which},
                  {"value_bits", est.value},
                  {"raw_bits", est.raw},
                  {"certified", est.certified},
                  {"restarts", est.restarts},
                  {"spread", est.spread},
                  {"gap", est.gap}};
      write_text(output_path, out.dump(2) + "\n");
    } else if (sep->parsed()) {
      SepSource src = sep_source_from_file(source_path);
      QuantumChannel n = load_channel(channel_path);
      CapacityConfig cfg;
      cfg.seed = seed;
      SeparationVerdict v = check(theorem_from_string(theorem), src, n,
                                  distortion_opt, SolverConfig{}, cfg);
      json out = {{"theorem", theorem_to_string(v.theorem)},
                  {"lhs_bits", v.lhs_bits},
                  {"rhs_bits", v.rhs_bits},
                  {"feasible", v.feasible},
                  {"margin", v.margin},
                  {"caveat", v.caveat}};
      write_text(output_path, out.dump(2) + "\n");
      return v.feasible ? 0 : 3;
    } else if (sch->parsed()) {
      DensityMatrix src = load_state(source_path);
      CompressionReport rep = schumacher_fidelity(src, copies, rate);
      json out = {{"n", rep.n},
                  {"rate", rep.rate},
                  {"kept_mass", rep.kept_mass},
                  {"fidelity", rep.fidelity}};
      write_text(output_path, out.dump(2) + "\n");
    } else if (lem->parsed()) {
      DensityMatrix src = load_state(source_path);
      QuantumChannel n = load_channel(channel_path);
      BlockChannel block = product_block(n, copies);
      if (mix_weight > 0.0) {
        QuantumChannel noise = standard_channel(
            ChannelKind::CompletelyDepolarizing, 0.0, block.channel.dim_in());
        block = BlockChannel(
            copies, src.dim(),
            mix_channels({block.channel, noise}, {1.0 - mix_weight, mix_weight}));
      }
      Lemma1Report rep = lemma1_check(src, n, block);
      json out = {{"lhs", rep.lhs},
                  {"dbar", rep.dbar},
                  {"d_target", rep.d_target},
                  {"bound_holds", rep.bound_holds}};
      write_text(output_path, out.dump(2) + "\n");
      if (!rep.bound_holds) return 2;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_of(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

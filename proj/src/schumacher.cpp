#include "qrate/schumacher.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qrate/complex_matrix.hpp"
#include "qrate/errors.hpp"

namespace qrate {

namespace {

struct TypeClass {
  double eigenvalue = 0.0;  // common eigenvalue of every string in the class
  double count = 0.0;       // multinomial multiplicity (double: can be huge)
};

// All occupation types (k_0,...,k_{d-1}) with sum n, their product
// eigenvalues and multiplicities.
void enumerate_types(const std::vector<double>& lam, std::size_t n,
                     std::vector<TypeClass>& out) {
  std::size_t d = lam.size();
  std::vector<std::size_t> k(d, 0);
  // lexicographic recursion, iterative via explicit stack over first d-1 slots
  std::function<void(std::size_t, std::size_t, double, double)> rec =
      [&](std::size_t slot, std::size_t left, double logval, double logcount) {
        if (slot + 1 == d) {
          double lv = logval;
          if (left > 0) {
            if (lam[slot] <= 0.0) return;  // zero eigenvalue: class has no mass
            lv += static_cast<double>(left) * std::log(lam[slot]);
          }
          out.push_back({std::exp(lv), std::exp(logcount)});
          return;
        }
        double lc = logcount;
        double lv = logval;
        for (std::size_t c = 0; c <= left; ++c) {
          if (c > 0) {
            // multiply multinomial by (left_before - c + 1) / c incrementally
            lc += std::log(static_cast<double>(left - c + 1)) -
                  std::log(static_cast<double>(c));
            if (lam[slot] <= 0.0) break;
            lv += std::log(lam[slot]);
          }
          rec(slot + 1, left - c, lv, lc);
        }
      };
  rec(0, n, 0.0, 0.0);
}

}  // namespace

CompressionReport schumacher_fidelity(const DensityMatrix& rho, std::size_t n,
                                      double rate) {
  std::size_t d = rho.dim();
  if (n == 0 || n > 100)
    throw BlockTooLarge("copy count must lie in [1, 100]");
  double logd = std::log2(static_cast<double>(d));
  if (rate < 0.0 || rate > logd + 1e-12)
    throw RateOutOfRange("rate must lie in [0, log2 d]");

  std::vector<double> lam = eig_hermitian(rho.mat()).values;
  for (auto& l : lam) l = std::max(l, 0.0);

  std::vector<TypeClass> classes;
  enumerate_types(lam, n, classes);
  std::sort(classes.begin(), classes.end(),
            [](const TypeClass& a, const TypeClass& b) {
              return a.eigenvalue > b.eigenvalue;
            });

  double keep = std::floor(std::exp2(std::min(rate, logd) * n));
  if (keep < 1.0) keep = 1.0;
  double kept_mass = 0.0;
  double used = 0.0;
  for (const auto& c : classes) {
    if (used >= keep) break;
    double take = std::min(c.count, keep - used);
    kept_mass += take * c.eigenvalue;
    used += take;
  }
  kept_mass = std::min(kept_mass, 1.0);

  CompressionReport rep;
  rep.n = n;
  rep.rate = rate;
  rep.kept_mass = kept_mass;
  rep.fidelity = kept_mass * kept_mass;
  if (rate >= logd - 1e-12) {
    rep.kept_mass = 1.0;
    rep.fidelity = 1.0;
  }
  return rep;
}

}  // namespace qrate

#pragma once

#include "geolink/cycles.hpp"

namespace geolink {

struct CycleSet {
  std::vector<GeodesicCycle> cycles;

  static CycleSet from_forms(const std::vector<BQF>& forms) {
    CycleSet cs;
    for (const BQF& q : forms) cs.cycles.push_back(traverse(q));
    return cs;
  }
};

// iota_{L'}(T; s')_0: sum over classes C of disc -4 det T of
// m(T,C) * sum_{q in C/Gamma'} [w(x(q); c') - w(x(-tilde q); c')].
// Returns 0 for T not positive definite. Exact rational.
Rat iota_prime(const SymT& T, const CycleSet& cs);

// all (n,m) with T - (n^2, nm; nm, m^2) positive definite
std::vector<std::pair<Int, Int>> theta_shifts(const SymT& T);

// iota_L(T; s)_0 = sum over theta shifts of iota_prime on the shifted matrix
Rat iota_full(const SymT& T, const CycleSet& cs);

struct CoeffRow {
  SymT T;  // reduced, t0 >= 0
  Rat det;
  Rat value;
  bool surface_dependent;  // det T a rational square
};
struct CoeffTable {
  std::vector<CoeffRow> rows;
};

// Nonzero iota_full over reduced positive definite half-integral T with
// t0 >= 0 and det T < max_det, optionally skipping square determinants.
CoeffTable series_table(const Rat& max_det, const CycleSet& cs,
                        bool nonsquare_only);

struct GrowthReport {
  double max_ratio;  // max |iota| / det^{3/2}
  SymT argmax;
};
GrowthReport growth_check(const Rat& max_det, const CycleSet& cs);

}  // namespace geolink

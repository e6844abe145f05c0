#pragma once

#include <cstdint>
#include <string>

namespace tracelab::oracle {

using i64 = std::int64_t;

/// Kronecker symbol (D / k) for k >= 1.
int kronecker(i64 D, i64 k);

struct ClassNumberOracle {
  i64 h_wide = 0;
  i64 h_narrow = 0;
  double regulator = 0.0;  // log of the fundamental unit (any norm); 0 if imaginary
  bool norm_minus_one = false;
  std::string unit_source; // "pell-search", "library-checked" or "torsion"
};

/// Class numbers from the analytic class number formula for the maximal
/// order and the conductor formula for suborders. Regulators come from an
/// exhaustive search x^2 - D y^2 = +-4 over y <= pell_bound; beyond that the
/// library's continued-fraction unit is taken after an exact Pell check.
ClassNumberOracle analytic_class_number(i64 disc, i64 pell_bound = 1'000'000);

struct PellSolution {
  bool found = false;
  i64 x = 0, y = 0;
  int norm = 0; // +1 or -1
};

/// Smallest y >= 1 with x^2 - D y^2 = +-4 (or +4 only when norm_one_only).
PellSolution pell_search(i64 D, i64 y_bound, bool norm_one_only = false);

/// Number of SL_2(Z) classes of primitive forms of discriminant D, counted by
/// union-find over all forms with coefficients bounded by `bound` and the
/// generators T, S. Returns -1 when doubling the bound changes the count.
i64 box_form_classes(i64 D, i64 bound);

} // namespace tracelab::oracle

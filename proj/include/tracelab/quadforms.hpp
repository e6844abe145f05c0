#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tracelab::quad {

using i64 = std::int64_t;
using boost::multiprecision::cpp_int;

/// Quadratic order of discriminant disc = fund_disc * conductor^2.
struct QuadOrder {
  i64 disc = 0;
  i64 fund_disc = 0;
  i64 conductor = 1;

  /// Throws InvalidOrderError unless disc != 0, disc = 0,1 mod 4 and disc is
  /// not a perfect square.
  static QuadOrder from_disc(i64 disc);

  bool is_real() const { return disc > 0; }
  bool operator==(const QuadOrder&) const = default;
};

/// Norm-one unit data. For imaginary orders only torsion_order is set; for
/// real orders eps = (x + y sqrt(disc)) / 2 is the smallest norm-one unit > 1.
struct UnitData {
  bool imaginary = true;
  int torsion_order = 2;
  double log_eps = 0.0;
  cpp_int x = 0;
  cpp_int y = 0;
};

struct ClassInfo {
  i64 h_wide = 0;
  i64 h_narrow = 0;
  bool norm_minus_one = false; // real orders only
  double log_eps = 0.0;        // log of the norm-one fundamental unit
  std::size_t period = 0;      // continued-fraction period length
};

i64 fundamental_discriminant(i64 disc);

i64 class_number(const QuadOrder& order);
i64 narrow_class_number(const QuadOrder& order);

/// Cached class number and regulator data, safe to call from several threads.
ClassInfo class_info(const QuadOrder& order);

UnitData unit_data(const QuadOrder& order);
bool has_norm_minus_one_unit(const QuadOrder& order);

int torsion_order(i64 disc);

/// log of the norm-one fundamental unit, without forming x and y exactly.
double log_norm_one_unit(i64 disc);

/// Orders of Q(gamma) containing gamma, for gamma of trace t and norm n,
/// ordered by descending conductor so Z[gamma] comes first.
std::vector<QuadOrder> superorders_of_element(i64 t, i64 n);

/// Reduced primitive forms (a, b, c), used by the imaginary class number and
/// the CLI's form oracle.
struct Form {
  i64 a, b, c;
  bool operator==(const Form&) const = default;
  auto operator<=>(const Form&) const = default;
};
std::vector<Form> reduced_forms(i64 disc);

/// Drops cached class data. Used by benchmarks to time cold runs.
void clear_cache();

} // namespace tracelab::quad

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracelab/quadforms.hpp"

namespace tracelab::emb {

using i64 = std::int64_t;
using quad::QuadOrder;

/// Either the norm-one group of a maximal order in the quaternion division
/// algebra of discriminant d, or the Hecke congruence group Gamma_0(m).
struct GroupDescriptor {
  enum class Kind { CocompactUnits, HeckeCongruence };
  Kind kind = Kind::HeckeCongruence;
  i64 level = 1; // d for CocompactUnits, m for HeckeCongruence

  static GroupDescriptor cocompact(i64 d);
  static GroupDescriptor hecke(i64 m);

  bool is_cocompact() const { return kind == Kind::CocompactUnits; }
  std::vector<i64> primes() const;
  std::string label() const; // "O1(d=6)" or "Gamma0(6)"
};

struct Matrix2 {
  i64 a, b, c, d;
  i64 det() const { return a * d - b * c; }
  i64 trace() const { return a + d; }
  bool operator==(const Matrix2&) const = default;
};

struct Cusp {
  i64 num, den;
};

int symbol_bp(const QuadOrder& order, i64 p);

i64 embedding_count_order(const QuadOrder& order, const GroupDescriptor& g);

/// E(t, n, G); t >= 0. Throws ExceptionalTraceError when t^2 - 4n is a square.
i64 embedding_count_trace(i64 t, i64 n, const GroupDescriptor& g);

/// Primitive counts E'(t, 1, G) for t = 0 .. t_max; entries 2 stay 0, and
/// entries 0, 1 equal E(t, 1, G).
std::vector<i64> primitive_counts(i64 t_max, const GroupDescriptor& g);
i64 primitive_count(i64 t, const GroupDescriptor& g);

i64 exceptional_class_count(i64 p, i64 m);

struct ExceptionalRep {
  i64 v;
  i64 n;
  Matrix2 gamma;
};

std::vector<ExceptionalRep> exceptional_representatives_detailed(i64 p, i64 m);
std::vector<Matrix2> exceptional_representatives(i64 p, i64 m);

std::vector<Cusp> cusp_representatives(i64 m);

bool verify_cusp_inequivalence(i64 m, i64 p);

enum class ConjugationMode {
  Proper,        // conjugation inside Gamma_0(m) only
  WithReflection // also by diag(1, -1), i.e. classes under the extended group
};

struct ConjugacyResult {
  i64 count = 0;
  i64 count_at_double = 0;
  bool stable = false;
  i64 bound = 0;
};

/// Brute-force count of conjugacy classes of trace t, determinant 1 in
/// Gamma_0(m), m in {1, 2}, over matrices with entries bounded by `bound`.
/// The result is stable when doubling the bound gives the same count.
ConjugacyResult oracle_conjugacy_count(i64 t, i64 m, i64 bound = 24,
                                       ConjugationMode mode = ConjugationMode::WithReflection);

} // namespace tracelab::emb

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tracelab/trace_geometry.hpp"

namespace tracelab::corr {

using i64 = std::int64_t;
using geom::GeometricSideReport;
using geom::Options;
using geom::TestFunction;
using geom::TruncationBudget;

struct SubCheck {
  std::string name;
  double value = 0.0;
  double error_budget = 0.0;
  bool pass = false;
};

struct WeightedReport {
  i64 level;  // m
  i64 weight; // beta(d / m)
  GeometricSideReport report;
};

/// lhs is the cocompact side, rhs the beta-weighted sum of Gamma_0(m) sides.
/// pass iff abs_diff <= max(tolerance, error_budget).
struct IdentityVerdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double error_budget = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  GeometricSideReport lhs_report;
  std::vector<WeightedReport> breakdown;
  std::vector<SubCheck> subchecks;
  std::vector<std::string> notes;
};

struct AreaVerdict {
  boost::rational<i64> lhs;
  boost::rational<i64> rhs;
  boost::rational<i64> diff;
  bool pass = false;
};

struct CountVerdict {
  i64 t;
  i64 lhs;
  i64 rhs;
  bool pass;
};

AreaVerdict verify_area_identity(i64 d);

std::vector<CountVerdict> verify_counting_identities(i64 d, i64 t_max);

IdentityVerdict verify_theorem1(i64 d, const TestFunction& f, const TruncationBudget& b, double tolerance = 1e-8,
                                const Options& opt = {});

IdentityVerdict verify_theorem2(i64 d, i64 p, const TestFunction& f, const TruncationBudget& b,
                                double tolerance = 1e-8, const Options& opt = {});

/// level m -> (eigenvalue label -> multiplicity)
using MultiplicityTable = std::map<i64, std::map<std::string, i64>>;

/// New-space dimensions at every level m | d by beta inversion. Throws
/// DataInconsistencyError on a negative result.
MultiplicityTable newform_dimensions(const MultiplicityTable& table, i64 d);

/// Forward map: delta(m) = sum_{m' | m} tau(m / m') delta'(m').
MultiplicityTable full_dimensions(const MultiplicityTable& newforms, i64 d);

} // namespace tracelab::corr

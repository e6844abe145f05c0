// tracelab command-line front end.
//
//   tracelab verify   --theorem {1|2|area|counts} --disc d [--prime p] ...
//   tracelab tabulate {counts|classnumbers|areas|reps} ...
//   tracelab oracle   {forms|conjugacy|transform} ...
//
// Exit status: 0 pass, 1 fail, 2 usage error, 3 numeric, resource or I/O error.
#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracelab/arith.hpp"
#include "tracelab/correspondence.hpp"
#include "tracelab/embeddings.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/oracles.hpp"
#include "tracelab/quadforms.hpp"
#include "tracelab/selberg_transform.hpp"
#include "tracelab/trace_geometry.hpp"

using json = nlohmann::ordered_json;
using namespace tracelab;
using arith::i64;
using arith::u64;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- output ----------------------------------------------------------------

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

// JSON with every float printed to 17 significant digits.
void dump(const json& j, std::string& out, int level) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
  case json::value_t::object: {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(it.key()).dump() + ": ";
      dump(it.value(), out, level + 1);
    }
    out += "\n" + close + "}";
    return;
  }
  case json::value_t::array: {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      dump(j[i], out, level + 1);
    }
    out += "\n" + close + "]";
    return;
  }
  case json::value_t::number_float:
    out += format_double(j.get<double>());
    return;
  default:
    out += j.dump();
  }
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

// A table is an array of flat objects sharing the keys of `columns`.
std::string to_csv(const std::vector<std::string>& columns, const json& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      out += r.contains(columns[i]) ? csv_cell(r[columns[i]]) : "";
    }
    out += "\n";
  }
  return out;
}

struct OutputSpec {
  std::string path;
  std::string format = "json";
};

void emit(const OutputSpec& o, const json& doc, const std::vector<std::string>& columns, const json& rows) {
  std::string text;
  if (o.format == "csv") {
    text = to_csv(columns, rows);
  } else {
    dump(doc, text, 0);
    text += "\n";
  }
  if (o.path.empty() || o.path == "-") {
    std::cout << text;
    return;
  }
  const auto parent = std::filesystem::path(o.path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw ResourceError("cannot open " + o.path + " for writing");
  f << text;
  if (!f) throw ResourceError("write to " + o.path + " failed");
}

// ---- shared parsing --------------------------------------------------------

geom::Options make_options(const std::string& factor_mode, const std::string& elliptic, const std::string& exec,
                           int jobs) {
  geom::Options opt;
  opt.factor_mode = factor_mode == "printed" ? geom::FactorMode::AsPrinted : geom::FactorMode::StandardLogEps;
  opt.elliptic = elliptic == "linear" ? geom::EllipticConfig::Linear : geom::EllipticConfig::Projective;
  opt.exec = exec == "serial" ? geom::Exec::Serial : geom::Exec::Parallel;
  opt.jobs = jobs;
  return opt;
}

emb::GroupDescriptor cocompact_or_usage(i64 d) {
  try {
    return emb::GroupDescriptor::cocompact(d);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string rational_str(const boost::rational<i64>& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json report_json(const geom::GeometricSideReport& r, bool with_terms) {
  json j;
  j["group"] = r.group;
  j["test_function"] = r.test_function;
  j["identity_term"] = r.identity_term;
  j["elliptic_total"] = r.elliptic_total;
  j["hyperbolic_total"] = r.hyperbolic_total;
  j["parabolic_total"] = r.parabolic_total;
  j["has_exceptional_block"] = r.has_exceptional_block;
  j["grand_total"] = r.grand_total;
  j["tail_estimate"] = r.tail_estimate;
  j["quad_error"] = r.quad_error;
  j["budget"] = {{"t_max", r.budget.t_max}, {"k_max", r.budget.k_max}, {"n_max", r.budget.n_max},
                 {"quad_tol", r.budget.quad_tol}, {"tail_cap", r.budget.tail_cap}};
  if (with_terms) {
    json terms = json::array();
    for (const auto& e : r.term_log) {
      json t;
      t["t"] = e.t ? json(*e.t) : json(nullptr);
      t["block"] = e.block;
      t["value"] = e.value;
      t["disc"] = e.disc ? json(*e.disc) : json(nullptr);
      terms.push_back(t);
    }
    j["term_log"] = terms;
  }
  json und = json::array();
  for (const auto& u : r.undefined_terms) und.push_back({{"t", u.t}, {"disc", u.disc}, {"count", u.count}});
  j["undefined_terms"] = und;
  return j;
}

json report_row(const std::string& role, i64 level, i64 weight, const geom::GeometricSideReport& r) {
  return {{"role", role},
          {"group", r.group},
          {"level", level},
          {"weight", weight},
          {"identity", r.identity_term},
          {"elliptic", r.elliptic_total},
          {"hyperbolic", r.hyperbolic_total},
          {"parabolic", r.parabolic_total},
          {"grand_total", r.grand_total},
          {"tail_estimate", r.tail_estimate},
          {"quad_error", r.quad_error}};
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string theorem;
  i64 disc = 0;
  i64 prime = 0;
  std::string testfn = "gaussian:a=1";
  i64 t_max = 0, k_max = 0, n_max = 0;
  double tol = 1e-8;
  double quad_tol = 1e-12;
  double tail_cap = 1e-9;
  std::string factor_mode = "standard";
  std::string elliptic = "projective";
  std::string exec = "parallel";
  bool term_log = false;
  OutputSpec out;
};

int cmd_verify(const VerifyArgs& a, int jobs) {
  const auto g = cocompact_or_usage(a.disc);
  if (a.theorem == "area") {
    const auto v = corr::verify_area_identity(a.disc);
    json doc = {{"check", "area"},        {"disc", a.disc},           {"lhs_pi_coeff", rational_str(v.lhs)},
                {"rhs_pi_coeff", rational_str(v.rhs)}, {"diff", rational_str(v.diff)}, {"pass", v.pass}};
    emit(a.out, doc, {"check", "disc", "lhs_pi_coeff", "rhs_pi_coeff", "diff", "pass"}, json::array({doc}));
    return v.pass ? kPass : kFail;
  }
  if (a.theorem == "counts") {
    const i64 t_max = a.t_max > 0 ? a.t_max : 30;
    if (t_max < 3) throw UsageError("--tmax must be >= 3");
    const auto rows = corr::verify_counting_identities(a.disc, t_max);
    json arr = json::array();
    bool pass = true;
    for (const auto& c : rows) {
      arr.push_back({{"t", c.t}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
      pass = pass && c.pass;
    }
    json doc = {{"check", "counts"}, {"disc", a.disc}, {"t_max", t_max}, {"pass", pass}, {"rows", arr}};
    emit(a.out, doc, {"t", "lhs", "rhs", "pass"}, arr);
    return pass ? kPass : kFail;
  }
  if (a.theorem != "1" && a.theorem != "2") throw UsageError("--theorem must be 1, 2, area or counts");

  selberg::TestFunction f = [&] {
    try {
      return selberg::TestFunction::parse(a.testfn);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();
  const int omega = static_cast<int>(g.primes().size());
  geom::TruncationBudget b;
  if (a.theorem == "1") {
    b = geom::default_budget(f, geom::SideKind::Laplace, 0, omega);
  } else {
    if (a.prime <= 0) throw UsageError("--theorem 2 needs --prime");
    if (!arith::is_prime(static_cast<u64>(a.prime))) throw UsageError("--prime must be prime");
    if (a.disc % a.prime == 0) throw UsageError("--prime must not divide --disc");
    b = geom::default_budget(f, geom::SideKind::Hecke, a.prime, omega);
  }
  if (a.t_max > 0) b.t_max = a.t_max;
  if (a.k_max > 0) b.k_max = a.k_max;
  if (a.n_max > 0) b.n_max = a.n_max;
  b.quad_tol = a.quad_tol;
  b.tail_cap = a.tail_cap;
  try {
    b.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto opt = make_options(a.factor_mode, a.elliptic, a.exec, jobs);
  const auto v = a.theorem == "1" ? corr::verify_theorem1(a.disc, f, b, a.tol, opt)
                                  : corr::verify_theorem2(a.disc, a.prime, f, b, a.tol, opt);

  json doc;
  doc["name"] = v.name;
  doc["lhs"] = v.lhs;
  doc["rhs"] = v.rhs;
  doc["abs_diff"] = v.abs_diff;
  doc["error_budget"] = v.error_budget;
  doc["tolerance"] = v.tolerance;
  doc["pass"] = v.pass;
  json subs = json::array();
  for (const auto& s : v.subchecks)
    subs.push_back({{"name", s.name}, {"value", s.value}, {"error_budget", s.error_budget}, {"pass", s.pass}});
  doc["subchecks"] = subs;
  doc["notes"] = v.notes;
  doc["lhs_report"] = report_json(v.lhs_report, a.term_log);
  json br = json::array();
  json rows = json::array({report_row("lhs", a.disc, 1, v.lhs_report)});
  for (const auto& w : v.breakdown) {
    br.push_back({{"level", w.level}, {"weight", w.weight}, {"report", report_json(w.report, a.term_log)}});
    rows.push_back(report_row("rhs", w.level, w.weight, w.report));
  }
  doc["breakdown"] = br;
  emit(a.out, doc,
       {"role", "group", "level", "weight", "identity", "elliptic", "hyperbolic", "parabolic", "grand_total",
        "tail_estimate", "quad_error"},
       rows);
  std::fprintf(stderr, "%s: |lhs - rhs| = %.3g, error budget %.3g, tolerance %.3g -> %s\n", v.name.c_str(),
               v.abs_diff, v.error_budget, v.tolerance, v.pass ? "PASS" : "FAIL");
  return v.pass ? kPass : kFail;
}

// ---- tabulate --------------------------------------------------------------

struct TabulateArgs {
  std::string kind;
  std::vector<i64> range;
  i64 disc = 0;
  i64 level = 0;
  i64 prime = 0;
  i64 norm = 1;
  OutputSpec out;
};

bool valid_disc(i64 D) {
  const i64 r = ((D % 4) + 4) % 4;
  return D != 0 && (r == 0 || r == 1) && !arith::is_perfect_square(D);
}

json class_number_row(i64 D) {
  const auto o = quad::QuadOrder::from_disc(D);
  const auto ci = quad::class_info(o);
  json r = {{"disc", D},
            {"fund_disc", o.fund_disc},
            {"conductor", o.conductor},
            {"h_wide", ci.h_wide},
            {"h_narrow", ci.h_narrow}};
  if (D > 0) {
    const auto u = quad::unit_data(o);
    r["norm_minus_one"] = ci.norm_minus_one;
    r["log_eps"] = ci.log_eps;
    r["unit_x"] = u.x.str();
    r["unit_y"] = u.y.str();
    r["torsion_order"] = nullptr;
  } else {
    r["norm_minus_one"] = nullptr;
    r["log_eps"] = nullptr;
    r["unit_x"] = nullptr;
    r["unit_y"] = nullptr;
    r["torsion_order"] = quad::torsion_order(D);
  }
  return r;
}

int cmd_tabulate(const TabulateArgs& a) {
  auto range = [&](i64 lo, i64 hi) -> std::pair<i64, i64> {
    if (a.range.empty()) return {lo, hi};
    return {a.range[0], a.range[1]};
  };
  json rows = json::array();
  std::vector<std::string> cols;
  json meta = {{"table", a.kind}};

  if (a.kind == "counts") {
    if (a.disc && a.level) throw UsageError("give either --disc or --level");
    const auto g = a.disc ? cocompact_or_usage(a.disc) : emb::GroupDescriptor::hecke(a.level ? a.level : 1);
    if (a.norm != 1 && !arith::is_prime(static_cast<u64>(a.norm))) throw UsageError("--norm must be 1 or a prime");
    const auto [lo, hi] = range(0, 30);
    if (lo < 0) throw UsageError("trace range must be nonnegative");
    meta["group"] = g.label();
    meta["norm"] = a.norm;
    std::vector<i64> ep;
    if (a.norm == 1 && hi >= 3) ep = emb::primitive_counts(hi, g);
    for (i64 t = lo; t <= hi; ++t) {
      const i64 D = t * t - 4 * a.norm;
      if (D >= 0 && arith::is_perfect_square(D)) continue;
      json r = {{"t", t}, {"n", a.norm}, {"group", g.label()}, {"E", emb::embedding_count_trace(t, a.norm, g)}};
      r["E_primitive"] = (a.norm == 1 && t < static_cast<i64>(ep.size())) ? json(ep[static_cast<std::size_t>(t)]) : json(nullptr);
      rows.push_back(r);
    }
    cols = {"t", "n", "group", "E", "E_primitive"};
  } else if (a.kind == "classnumbers") {
    const auto [lo, hi] = range(-100, 100);
    for (i64 D = lo; D <= hi; ++D)
      if (valid_disc(D)) rows.push_back(class_number_row(D));
    cols = {"disc", "fund_disc", "conductor", "h_wide", "h_narrow", "norm_minus_one", "log_eps", "unit_x", "unit_y",
            "torsion_order"};
  } else if (a.kind == "areas") {
    auto area_row = [](const emb::GroupDescriptor& g, i64 weight) {
      const auto A = geom::area(g);
      return json{{"group", g.label()}, {"level", g.level}, {"beta_weight", weight},
                  {"pi_coeff", rational_str(A.coeff)}, {"value", A.value()}};
    };
    if (a.disc) {
      const auto g = cocompact_or_usage(a.disc);
      rows.push_back(area_row(g, 1));
      for (u64 m : arith::divisor_stats(static_cast<u64>(a.disc)).divisors)
        rows.push_back(area_row(emb::GroupDescriptor::hecke(static_cast<i64>(m)), arith::beta(static_cast<u64>(a.disc) / m)));
    } else {
      const auto [lo, hi] = range(1, 210);
      for (i64 d = std::max<i64>(lo, 1); d <= hi; ++d) {
        if (!arith::is_squarefree(static_cast<u64>(d))) continue;
        const int om = arith::divisor_stats(static_cast<u64>(d)).omega;
        if (om >= 2 && om % 2 == 0) rows.push_back(area_row(emb::GroupDescriptor::cocompact(d), 1));
      }
    }
    cols = {"group", "level", "beta_weight", "pi_coeff", "value"};
  } else if (a.kind == "reps") {
    if (a.prime <= 0 || !arith::is_prime(static_cast<u64>(a.prime))) throw UsageError("reps needs a prime --prime");
    const i64 m = a.level ? a.level : 1;
    if (m % a.prime == 0) throw UsageError("--prime must not divide --level");
    meta["prime"] = a.prime;
    meta["level"] = m;
    for (const auto& e : emb::exceptional_representatives_detailed(a.prime, m))
      rows.push_back({{"v", e.v}, {"n", e.n}, {"a", e.gamma.a}, {"b", e.gamma.b}, {"c", e.gamma.c}, {"d", e.gamma.d},
                      {"trace", e.gamma.trace()}, {"det", e.gamma.det()}});
    cols = {"v", "n", "a", "b", "c", "d", "trace", "det"};
  } else {
    throw UsageError("unknown table " + a.kind);
  }
  meta["rows"] = rows;
  emit(a.out, meta, cols, rows);
  return kPass;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string kind;
  std::vector<i64> disc_range;
  std::vector<i64> trace_range;
  i64 trace = -1;
  std::vector<i64> levels{1};
  i64 bound = 24;
  i64 pell_bound = 1'000'000;
  i64 orbit_limit = 300;
  std::string mode = "wide";
  std::string testfn = "gaussian:a=1";
  std::vector<double> u_range;
  double step = 0.5;
  OutputSpec out;
};

int cmd_oracle(OracleArgs a, const std::string& fixtures_dir) {
  json doc;
  json entries = json::array();
  std::vector<std::string> cols;
  std::string default_name;

  if (a.kind == "forms") {
    const i64 lo = a.disc_range.empty() ? -200 : a.disc_range[0];
    const i64 hi = a.disc_range.empty() ? 0 : a.disc_range[1];
    doc["oracle"] = "forms";
    doc["method"] = "analytic class number formula with conductor formula; bounded SL2(Z) orbit union-find";
    doc["pell_bound"] = a.pell_bound;
    doc["orbit_limit"] = a.orbit_limit;
    for (i64 D = lo; D <= hi; ++D) {
      if (!valid_disc(D)) continue;
      json e = {{"disc", D}};
      try {
        const auto r = oracle::analytic_class_number(D, a.pell_bound);
        e["h_wide"] = r.h_wide;
        e["h_narrow"] = r.h_narrow;
        e["regulator"] = D > 0 ? json(r.regulator) : json(nullptr);
        e["norm_minus_one"] = D > 0 ? json(r.norm_minus_one) : json(nullptr);
        e["unit_source"] = r.unit_source;
        e["status"] = "ok";
      } catch (const Error& ex) {
        e["status"] = std::string("inconclusive: ") + ex.what();
      }
      if (std::abs(D) <= a.orbit_limit) {
        const i64 box = oracle::box_form_classes(D, std::abs(D) / 2 + 8);
        e["orbit_classes"] = box < 0 ? json(nullptr) : json(box);
        e["orbit_stable"] = box >= 0;
      } else {
        e["orbit_classes"] = nullptr;
        e["orbit_stable"] = nullptr;
      }
      entries.push_back(e);
    }
    cols = {"disc", "h_wide", "h_narrow", "regulator", "norm_minus_one", "unit_source", "orbit_classes", "orbit_stable",
            "status"};
    default_name = "class_numbers.json";
  } else if (a.kind == "conjugacy") {
    std::vector<i64> ts;
    if (a.trace >= 0) ts.push_back(a.trace);
    if (!a.trace_range.empty())
      for (i64 t = a.trace_range[0]; t <= a.trace_range[1]; ++t) ts.push_back(t);
    if (ts.empty()) throw UsageError("give --trace or --trace-range");
    for (i64 m : a.levels)
      if (m != 1 && m != 2) throw UsageError("the conjugacy oracle supports --level 1 or 2");
    if (a.mode != "wide" && a.mode != "proper") throw UsageError("--mode must be wide or proper");
    const auto mode = a.mode == "proper" ? emb::ConjugationMode::Proper : emb::ConjugationMode::WithReflection;
    doc["oracle"] = "conjugacy";
    doc["method"] = "union-find over bounded trace-t elements under T and [[1,0],[m,1]]";
    doc["mode"] = a.mode;
    doc["bound"] = a.bound;
    for (i64 m : a.levels) {
      for (i64 t : ts) {
        const i64 D = t * t - 4;
        if (t < 0 || (D >= 0 && arith::is_perfect_square(D))) continue;
        const auto g = emb::GroupDescriptor::hecke(m);
        const auto r = emb::oracle_conjugacy_count(t, m, a.bound, mode);
        entries.push_back({{"t", t},
                           {"n", 1},
                           {"group", g.label()},
                           {"count", emb::embedding_count_trace(t, 1, g)},
                           {"oracle_count", r.count},
                           {"oracle_count_at_double", r.count_at_double},
                           {"stable", r.stable},
                           {"status", r.stable ? "stable" : "inconclusive"}});
      }
    }
    cols = {"t", "n", "group", "count", "oracle_count", "oracle_count_at_double", "stable", "status"};
    default_name = "embedding_counts.json";
  } else if (a.kind == "transform") {
    const auto f = [&] {
      try {
        return selberg::TestFunction::parse(a.testfn);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }();
    const double lo = a.u_range.empty() ? -20.0 : a.u_range[0];
    const double hi = a.u_range.empty() ? 20.0 : a.u_range[1];
    if (!(a.step > 0)) throw UsageError("--step must be positive");
    doc["oracle"] = "transform";
    doc["test_function"] = f.serialize();
    doc["method"] = "adaptive Gauss-Kronrod quadrature of (1/pi) int_0^inf h(r) cos(ru) dr";
    const auto n = static_cast<i64>(std::floor((hi - lo) / a.step + 1e-9));
    for (i64 i = 0; i <= n; ++i) {
      const double u = lo + static_cast<double>(i) * a.step;
      json e = {{"u", u}, {"hhat_closed", f.hhat(u)}};
      try {
        const auto q = f.hhat_quadrature(u);
        e["hhat_quadrature"] = q.value;
        e["quad_error"] = q.abs_error;
        e["status"] = "ok";
      } catch (const NumericError& ex) {
        e["hhat_quadrature"] = nullptr;
        e["quad_error"] = nullptr;
        e["status"] = std::string("inconclusive: ") + ex.what();
      }
      entries.push_back(e);
    }
    cols = {"u", "hhat_closed", "hhat_quadrature", "quad_error", "status"};
    default_name = "transform.json";
  } else {
    throw UsageError("unknown oracle " + a.kind);
  }
  doc["entries"] = entries;
  if (a.out.path.empty()) a.out.path = (std::filesystem::path(fixtures_dir) / default_name).string();
  emit(a.out, doc, cols, entries);
  return kPass;
}

void add_output(CLI::App* cmd, OutputSpec& o) {
  cmd->add_option("--out", o.path, "Output file; '-' or empty for stdout");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracelab: geometric trace-formula identities for quaternion and congruence groups"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Configuration file of key=value lines; flags override it");
  int jobs = 0;
  std::string fixtures_dir = "fixtures";
  app.add_option("--jobs", jobs, "Cap on worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--fixtures-dir", fixtures_dir, "Directory for oracle fixtures")->envname("TRACELAB_FIXTURES");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check an identity; exit 0 iff it passes");
  verify->add_option("--theorem", va.theorem, "1 (Laplace), 2 (Hecke), area or counts")->required();
  verify->add_option("--disc", va.disc, "Quaternion discriminant d (squarefree, even number of primes)")->required();
  verify->add_option("--prime", va.prime, "Hecke prime p, not dividing d (theorem 2)");
  verify->add_option("--testfn", va.testfn, "Test function, gaussian:a=<width>");
  verify->add_option("--tmax", va.t_max, "Trace cutoff (0: derived default)");
  verify->add_option("--kmax", va.k_max, "Power cutoff (0: derived default)");
  verify->add_option("--nmax", va.n_max, "Von Mangoldt cutoff (0: derived default)");
  verify->add_option("--tol", va.tol, "Absolute tolerance");
  verify->add_option("--quad-tol", va.quad_tol, "Quadrature tolerance per term");
  verify->add_option("--tail-cap", va.tail_cap, "Largest admissible truncation tail");
  verify->add_option("--factor-mode", va.factor_mode, "Hyperbolic Hecke factor")
      ->check(CLI::IsMember({"standard", "printed"}));
  verify->add_option("--elliptic", va.elliptic, "Elliptic centraliser orders")
      ->check(CLI::IsMember({"projective", "linear"}));
  verify->add_option("--exec", va.exec, "Kernel execution")->check(CLI::IsMember({"serial", "parallel"}));
  verify->add_flag("--term-log", va.term_log, "Include every summed term in JSON output");
  add_output(verify, va.out);

  TabulateArgs ta;
  auto* tab = app.add_subcommand("tabulate", "Dump counts, class numbers, areas or exceptional representatives");
  tab->add_option("kind", ta.kind, "counts | classnumbers | areas | reps")
      ->required()
      ->check(CLI::IsMember({"counts", "classnumbers", "areas", "reps"}));
  tab->add_option("--range", ta.range, "Inclusive range lo hi")->expected(2);
  tab->add_option("--disc", ta.disc, "Quaternion discriminant");
  tab->add_option("--level", ta.level, "Congruence level m");
  tab->add_option("--prime", ta.prime, "Prime p");
  tab->add_option("--norm", ta.norm, "Norm n of the elements counted (1 or a prime)");
  add_output(tab, ta.out);

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "Run brute-force oracles and write fixtures");
  orc->add_option("kind", oa.kind, "forms | conjugacy | transform")
      ->required()
      ->check(CLI::IsMember({"forms", "conjugacy", "transform"}));
  orc->add_option("--disc-range", oa.disc_range, "Discriminant range lo hi")->expected(2);
  orc->add_option("--trace", oa.trace, "Single trace t");
  orc->add_option("--trace-range", oa.trace_range, "Trace range lo hi")->expected(2);
  orc->add_option("--level", oa.levels, "Levels m (1 and/or 2)");
  orc->add_option("--bound", oa.bound, "Entry bound for the conjugacy search");
  orc->add_option("--mode", oa.mode, "wide (with diag(1,-1)) or proper");
  orc->add_option("--pell-bound", oa.pell_bound, "Largest y searched in x^2 - D y^2 = +-4");
  orc->add_option("--orbit-limit", oa.orbit_limit, "Largest |disc| for the orbit enumeration");
  orc->add_option("--testfn", oa.testfn, "Test function, gaussian:a=<width>");
  orc->add_option("--u-range", oa.u_range, "Range lo hi of u")->expected(2);
  orc->add_option("--step", oa.step, "Step in u");
  add_output(orc, oa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    if (verify->parsed()) return cmd_verify(va, jobs);
    if (tab->parsed()) return cmd_tabulate(ta);
    if (orc->parsed()) return cmd_oracle(oa, fixtures_dir);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

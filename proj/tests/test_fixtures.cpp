#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "tracelab/embeddings.hpp"
#include "tracelab/quadforms.hpp"

using namespace tracelab;
using json = nlohmann::json;
using i64 = std::int64_t;

namespace {

json load(const std::string& name) {
  std::ifstream f(std::string(TRACELAB_FIXTURES_DIR) + "/" + name);
  REQUIRE(f.good());
  return json::parse(f);
}

} // namespace

TEST_CASE("library class numbers match the stored oracle fixture") {
  const auto doc = load("class_numbers.json");
  REQUIRE(doc["entries"].size() > 1000);
  for (const auto& e : doc["entries"]) {
    const i64 D = e["disc"];
    INFO("disc " << D);
    REQUIRE(e["status"] == "ok");
    const auto ci = quad::class_info(quad::QuadOrder::from_disc(D));
    REQUIRE(ci.h_wide == e["h_wide"].get<i64>());
    REQUIRE(ci.h_narrow == e["h_narrow"].get<i64>());
    if (D > 0) {
      REQUIRE(ci.norm_minus_one == e["norm_minus_one"].get<bool>());
      CHECK(ci.log_eps * (ci.norm_minus_one ? 0.5 : 1.0) == doctest::Approx(e["regulator"].get<double>()).epsilon(1e-10));
    }
    if (!e["orbit_classes"].is_null()) REQUIRE(ci.h_narrow == e["orbit_classes"].get<i64>());
  }
}

TEST_CASE("embedding counts match the stored conjugacy fixture") {
  const auto doc = load("embedding_counts.json");
  REQUIRE(!doc["entries"].empty());
  for (const auto& e : doc["entries"]) {
    REQUIRE(e["stable"].get<bool>());
    const i64 t = e["t"], n = e["n"];
    const std::string group = e["group"];
    const i64 m = group == "Gamma0(1)" ? 1 : 2;
    INFO(group << " t=" << t);
    REQUIRE(emb::embedding_count_trace(t, n, emb::GroupDescriptor::hecke(m)) == e["oracle_count"].get<i64>());
  }
}

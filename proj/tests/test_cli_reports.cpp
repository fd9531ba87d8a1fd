#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "qcverify/verify.hpp"

using namespace qcv;

TEST_CASE("verification drivers pass on the paper data") {
  CHECK(verify_example(1).pass());
  CHECK(verify_example(2).pass());
  CHECK(verify_example(3).pass());
  CHECK(verify_heisenberg().pass());
  CHECK(jacobi_all().pass());
}

TEST_CASE("reports are byte-for-byte reproducible for a fixed seed") {
  auto once = [] {
    std::string s;
    s += verify_example(1).to_json();
    s += check_einstein("appendix1", {{"a", 1.0}}, 6, 5).to_json();
    s += check_ricci_flat("hk4_su2_eguchi_hanson", {}, 4, 5, 1e-6).to_json();
    s += family_residuals_cmd("qk_iso", 50).to_json();
    return s;
  };
  CHECK(once() == once());
}

TEST_CASE("report json carries the versioned schema and stringified numbers") {
  Report rep = check_einstein("appendix1", {{"a", 1.0}}, 6, 5);
  auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["schema"] == "qcverify-report/1");
  CHECK(j["pass"].is_boolean());
  CHECK(j["verdicts"].is_array());
  CHECK(j["verdicts"][0]["value"].is_string());
  bool found_exact_tag = false;
  for (auto& v : j["verdicts"])
    if (v["arithmetic"] == "numeric" || v["arithmetic"] == "exact") found_exact_tag = true;
  CHECK(found_exact_tag);
}

TEST_CASE("verdict failure propagates to the report") {
  // an impossible tolerance turns the verdict red without throwing
  Report rep = check_ricci_flat("hk4_su2_eguchi_hanson", {}, 4, 5, 1e-18);
  CHECK(!rep.pass());
}

TEST_CASE("exact verdicts are tagged exact") {
  Report rep = verify_example(1);
  for (auto& v : rep.verdicts) CHECK(v.exact);
}

TEST_CASE("registry listing names everything the commands accept") {
  std::string listing = registry_listing();
  for (auto needle : {"l1", "heis7", "qk_nonqk", "QK_GEN7", "hk4_su2_general", "appendix1"})
    CHECK(listing.find(needle) != std::string::npos);
}

TEST_CASE("user algebra files feed the jacobi command") {
  Report rep = jacobi_all();
  int n = int(rep.verdicts.size());
  CHECK(n >= 15);  // 15 registry algebras + derived-series spot checks
}

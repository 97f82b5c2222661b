#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "generators.hpp"
#include "thomform/km.hpp"
#include "thomform/verification.hpp"

using namespace thomform;

namespace {

CheckParams pq(int p, int q) {
  CheckParams params;
  params.p = p;
  params.q = q;
  return params;
}

CheckParams only_q(int q) {
  CheckParams params;
  params.q = q;
  return params;
}

}  // namespace

TEST_CASE("check identifiers") {
  const auto& ids = check_ids();
  CHECK(ids.size() == 14);
  CHECK(ids.front() == "THEOREM_MAIN");
  CHECK(ids.back() == "EXAMPLE_11");
  CHECK(canonical_check_id("theorem") == "THEOREM_MAIN");
  CHECK(canonical_check_id("k-invariance") == "K_INVARIANCE");
  CHECK(canonical_check_id("Fiber_Integral") == "FIBER_INTEGRAL");
  CHECK_THROWS_AS(canonical_check_id("nonsense"), Error);
}

TEST_CASE("main identity and recorded signs") {
  CheckResult r = run_check("theorem", pq(1, 2));
  CHECK(r.passed());
  REQUIRE(r.sign_sigma);
  CHECK(*r.sign_sigma == 1);
  CHECK(r.witness.empty());
  CheckResult odd = run_check("THEOREM_MAIN", pq(2, 1));
  CHECK(odd.passed());
  CHECK(*odd.sign_sigma == -1);
}

TEST_CASE("single checks at small sizes") {
  CHECK(run_check("FIBER_INTEGRAL", only_q(3)).passed());
  CHECK(run_check("CURVATURE", pq(2, 2)).passed());
  CHECK(run_check("HERMITE_LEMMA", pq(2, 3)).passed());
  CHECK(run_check("BEREZIN_COMBINATORIAL", pq(2, 2)).passed());
  CHECK(run_check("CLOSEDNESS", pq(2, 2)).passed());
  CHECK(run_check("K_INVARIANCE", pq(2, 2)).passed());
  CHECK(run_check("FIBER_RESTRICTION", only_q(2)).passed());
  CHECK(run_check("ANNIHILATION", only_q(4)).passed());
  CHECK(run_check("TRANSGRESSION", only_q(2)).passed());
  CheckParams howe;
  howe.n = 6;
  CHECK(run_check("HOWE_HERMITE", howe).passed());
  CHECK(run_check("EXAMPLE_11", {}).passed());
  CHECK_THROWS_AS(run_check("THEOREM_MAIN", pq(5, 5)), Error);
  CHECK_THROWS_AS(run_check("CURVATURE", only_q(2)), Error);
}

TEST_CASE("splitting along block decompositions") {
  CheckResult a = check_splitting(SignatureCtx(1, 1), SignatureCtx(1, 1));
  CHECK(a.passed());
  CHECK(a.recorded_sign);
  CHECK(check_splitting(SignatureCtx(1, 1), SignatureCtx(1, 2)).passed());
  CheckParams params = pq(1, 1);
  params.p2 = 2;
  params.q2 = 1;
  CHECK(run_check("SPLITTING", params).passed());
}

TEST_CASE("two-dimensional example") {
  // e1 = (1,1)/sqrt2, so v = (1,0) has x1 = x2 = 2^{-1/2}
  Example11Values one = example11_values(1.0, 1.0, 0.0);
  CHECK(one.machinery == doctest::Approx(std::exp(-std::numbers::pi) / std::numbers::sqrt2));
  CHECK(one.closed_form == doctest::Approx(one.machinery).epsilon(1e-14));
  Example11Values zero = example11_values(3.0, 0.0, 0.0);
  CHECK(zero.machinery == 0.0);
  CHECK(zero.closed_form == 0.0);
  Example11Values two = example11_values(2.0, 1.0, 1.0);
  CHECK(std::abs(two.machinery - two.closed_form) < 1e-12);
  CHECK_THROWS_AS(example11_values(0.0, 1.0, 1.0), Error);
}

TEST_CASE("delta limit reports honestly") {
  CheckResult r = run_check("DELTA_LIMIT", {});
  CHECK(r.status != CheckStatus::kSkipped);
  if (!r.passed()) {
    CHECK(r.witness.find("cos r") != std::string::npos);
    CHECK(r.witness.find("f = 1:") == std::string::npos);
  }
}

TEST_CASE("suite enumeration") {
  auto small = run_all(2);
  for (const auto& r : small) {
    if (r.params.contains("p")) {
      CHECK(r.params["p"] == 1);
      if (r.params.contains("q")) CHECK(r.params["q"] == 1);
    }
  }
  auto three = run_all(3, {"THEOREM_MAIN"});
  CHECK(three.size() == 3);
  for (const auto& r : three) CHECK(r.passed());
  CHECK_THROWS_AS(run_all(3, {"NOT_A_CHECK"}), Error);
  CHECK_THROWS_AS(run_all(1), Error);
}

TEST_CASE("suite up to p+q=4 passes apart from the numeric limit") {
  for (const auto& r : run_all(4)) {
    if (r.check_id == "DELTA_LIMIT") continue;
    CHECK_MESSAGE(r.status != CheckStatus::kFail, r.check_id << " " << r.params.dump() << " " << r.witness);
  }
}

TEST_CASE("size cap from the environment") {
  CHECK(max_pq_cap() == 8);
  setenv("THOMFORM_MAX_PQ", "5", 1);
  CHECK(max_pq_cap() == 5);
  CHECK_THROWS_AS(run_check("THEOREM_MAIN", pq(3, 3)), Error);
  setenv("THOMFORM_MAX_PQ", "12", 1);
  CHECK(max_pq_cap() == 8);
  unsetenv("THOMFORM_MAX_PQ");
}

TEST_CASE("result json") {
  CheckResult r = run_check("THEOREM_MAIN", pq(1, 1));
  nlohmann::json j = r.to_json(false);
  CHECK(j["schema"] == "thomform/1");
  CHECK(j["check_id"] == "THEOREM_MAIN");
  CHECK(j["status"] == "pass");
  CHECK(j["elapsed_ms"] == 0.0);
  CHECK(j["sign_sigma"] == -1);
  CHECK(j["params"]["q"] == 1);
  CHECK(run_check("CURVATURE", pq(1, 1)).to_json()["sign_sigma"].is_null());
  // byte-stable without timing
  CHECK(r.to_json(false).dump() == run_check("THEOREM_MAIN", pq(1, 1)).to_json(false).dump());
}

TEST_CASE("first difference") {
  SignatureCtx ctx(1, 2);
  SuperForm km = km_form_at_e(ctx);
  CHECK(first_difference(km, km).empty());
  CHECK(!first_difference(km, -km).empty());
  CHECK(!first_difference(km, SuperForm(ctx.layout())).empty());
}

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mckay/io.hpp"
#include "mckay/pipeline.hpp"

using namespace mckay;
using namespace fixtures;

namespace {

const char* c2_doc = R"({
  "name": "c2",
  "n": 2,
  "conductor": 2,
  "generators": [[["-1", "0"], ["0", "-1"]]]
})";

std::string s3_doc(bool with_irreps) {
  std::string s = R"({
  "name": "s3",
  "n": 4,
  "conductor": 3,
  "generators": [
    [["0","1","0","0"],["1","0","0","0"],["0","0","1","0"],["0","0","0","-1"]],
    [["0","0","1","0"],["1","0","0","0"],["0","1","0","0"],["0","0","0","1"]]
  ])";
  if (with_irreps)
    s += R"(,
  "irreps": [
    {"label": "trivial", "dim": 1, "gen_images": [[["1"]], [["1"]]]},
    {"label": "sign", "dim": 1, "gen_images": [[["-1"]], [["1"]]]},
    {"label": "standard", "dim": 2, "gen_images": [[["0","1"],["1","0"]], [["0","-1"],["1","-1"]]]}
  ])";
  return s + "}";
}

void check_same(const GinzburgPresentation& a, const GinzburgPresentation& b) {
  CHECK(a.n == b.n);
  CHECK(a.quiver == b.quiver);
  CHECK(a.from_potential == b.from_potential);
  CHECK(is_zero(a.potential - b.potential));
  REQUIRE(a.differential.size() == b.differential.size());
  for (std::size_t k = 0; k < a.differential.size(); ++k) CHECK(is_zero(a.differential[k] - b.differential[k]));
}

}  // namespace

TEST_CASE("group documents") {
  const GroupDocument doc = parse_group_document(c2_doc);
  CHECK(doc.name == "c2");
  CHECK(doc.spec.n == 2);
  REQUIRE(doc.spec.generators.size() == 1);
  CHECK(doc.spec.generators[0] == diagonal({Cyclo(-1), Cyclo(-1)}));
  CHECK(!doc.irreps);

  // the normalized echo parses back to the same document
  const GroupDocument again = parse_group_document(group_document_json(doc).dump());
  CHECK(again.spec.generators == doc.spec.generators);
  CHECK(group_document_json(again) == group_document_json(doc));

  const Cyclo z = Cyclo::zeta(3);
  const GroupDocument c3 = parse_group_document(R"({"n": 1, "conductor": 3, "generators": [[["z^2"]]]})");
  CHECK(c3.spec.generators[0](0, 0) == z * z);
  CHECK(parse_group_document(group_document_json(c3).dump()).spec.generators[0](0, 0) == z * z);
}

TEST_CASE("malformed group documents") {
  auto code = [](const std::string& text) {
    try {
      parse_group_document(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::DivisionByZero;
  };
  CHECK(code("{") == ErrorCode::ParseError);
  CHECK(code("[]") == ErrorCode::ParseError);
  CHECK(code(R"({"conductor": 2, "generators": [[["1"]]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n": 2, "generators": [[["1"]]]})") == ErrorCode::ValidationError);
  CHECK(code(R"({"n": 1, "generators": [[["1", "0"]]]})") == ErrorCode::ValidationError);
  CHECK(code(R"({"n": 1, "generators": [[["q"]]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n": 1, "generators": [[[true]]]})") == ErrorCode::ParseError);
  CHECK(code(R"({"n": 1, "generators": [[["1"]]], "irreps": [{"dim": 1, "gen_images": []}]})") ==
        ErrorCode::ValidationError);
  CHECK(code(R"({"n": 1, "generators": [[["1"]]], "labels": ["a", "b"]})") == ErrorCode::ValidationError);
}

TEST_CASE("irreps from documents") {
  {
    const GroupDocument doc = parse_group_document(c2_doc);
    auto g = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
    CHECK(resolve_irreps(g, doc).size() == 2);
  }
  {
    const GroupDocument doc = parse_group_document(s3_doc(true));
    auto g = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
    const IrrepSet irr = resolve_irreps(g, doc);
    REQUIRE(irr.size() == 3);
    CHECK(irr.dim(2) == 2);
    CHECK(irr.irreps[1].label == "sign");
  }
  {
    const GroupDocument doc = parse_group_document(s3_doc(false));
    auto g = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
    try {
      resolve_irreps(g, doc);
      FAIL("missing irreps accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValidationError);
      CHECK(std::string(e.what()).find("irreps are required") != std::string::npos);
    }
  }
  {
    // generator images listed in the document's order, which differs from the sorted order
    std::string text = s3_doc(true);
    GroupDocument doc = parse_group_document(text);
    std::swap(doc.spec.generators[0], doc.spec.generators[1]);
    for (auto& r : *doc.irreps) std::swap(r.gen_images[0], r.gen_images[1]);
    auto g = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
    CHECK(resolve_irreps(g, doc).size() == 3);
  }
}

TEST_CASE("presentations round-trip through JSON") {
  for (int n = 1; n <= 4; ++n) {
    const PolyQP p = poly_qp(n);
    check_same(parse_presentation(presentation_json(p.pres).dump()).pres, p.pres);
  }
  const McKayQP qp = assemble_mckay_qp(abelian_irreps(c3_sl3()));
  const PresentationDocument doc = parse_presentation(mckay_json(qp).dump(2));
  check_same(doc.pres, qp.pres);
  CHECK(doc.lambda == qp.lambda);
  REQUIRE(doc.pairing.size() == qp.pairing.size());
  for (std::size_t k = 0; k < doc.pairing.size(); ++k) CHECK(doc.pairing[k].gram == qp.pairing[k].gram);
  // serialization is a function of the presentation
  CHECK(mckay_json(qp).dump() == mckay_json(assemble_mckay_qp(abelian_irreps(c3_sl3()))).dump());

  const TensorDGA a = gl_dga(abelian_irreps(make_group(2, 4, {diagonal({Cyclo::zeta(4), Cyclo(1)})})));
  check_same(parse_presentation(presentation_json(a.pres).dump()).pres, a.pres);
}

TEST_CASE("random matrices round-trip") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = std::vector<int>{1, 3, 4, 5, 12}[static_cast<std::size_t>(trial % 5)];
    CycloMatrix a(2, 3);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        std::vector<Rational> v(static_cast<std::size_t>(euler_phi(m)));
        for (auto& x : v) x = Rational(coeff(rng), 1 + trial % 3);
        a.set(r, c, Cyclo(m, v));
      }
    CHECK(parse_matrix(matrix_json(a, m), m) == a);
  }
}

TEST_CASE("malformed presentations") {
  const Json good = presentation_json(poly_qp(2).pres);
  auto code = [](const Json& j) {
    try {
      parse_presentation(j.dump());
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::DivisionByZero;
  };
  CHECK(code(good) == ErrorCode::DivisionByZero);
  Json bad = good;
  bad["arrows"][0]["source"] = 7;
  CHECK(code(bad) == ErrorCode::VertexNotFound);
  bad = good;
  bad["potential"][0]["cycle"] = {0, 99};
  CHECK(code(bad) == ErrorCode::ValidationError);
  bad = good;
  bad["arrows"][0]["kind"] = "wobble";
  CHECK(code(bad) == ErrorCode::ParseError);
  bad = good;
  bad["from_potential"] = "yes";
  CHECK(code(bad) == ErrorCode::ParseError);
}

TEST_CASE("dot export follows the drawing conventions") {
  const McKayQP qp = assemble_mckay_qp(abelian_irreps(c3_sl3()));
  const std::string dot = quiver_dot(qp.pres.quiver);
  CHECK(dot.find("v0 [label=\"0:1\"]") != std::string::npos);
  CHECK(dot.find("v0 -> v1 [color=black, label=\"3\"]") != std::string::npos);
  CHECK(dot.find("red") == std::string::npos);
  CHECK(dot.find("v1 -> v0") == std::string::npos);
  const std::string all = quiver_dot(qp.pres.quiver, {true, "Q"});
  CHECK(all.find("v1 -> v0 [color=red, label=\"3\"]") != std::string::npos);
  CHECK(all.find("v0 -> v0 [color=gray]") != std::string::npos);
}

TEST_CASE("reports") {
  const PolyRun run = run_poly_qp(3);
  CHECK(run.report.passed());
  const Json j = run.report.to_json();
  CHECK(j["check_count"] == run.report.checks.size());
  CHECK(j["passed"] == true);
  CHECK(run.report.to_text().find("result: PASS") != std::string::npos);
  CHECK(run_poly_qp(3).report.to_json().dump() == j.dump());

  RunOptions opts;
  opts.w_max = 9;
  CHECK_THROWS_AS(run_poly_qp(2, opts), Error);

  // a tampered presentation fails verification and names the culprit
  PresentationDocument doc = parse_presentation(presentation_json(run.qp.pres).dump());
  doc.pres.potential.begin()->second = Cyclo(7);
  const Report r = run_verify(doc);
  CHECK(!r.passed());
  bool named = false;
  for (const auto& c : r.checks)
    if (!c.ok && c.name == "differential = Ginzburg differential of W") named = !c.failures.empty();
  CHECK(named);
}

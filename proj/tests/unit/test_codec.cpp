#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "wuq/codec.hpp"
#include "wuq/error.hpp"
#include "wuq/replay.hpp"

using namespace wuq;
using namespace wuq::testing;

namespace {

Node only(const std::string& text) {
  Document d = parse_document(text);
  REQUIRE(d.nodes.size() == 1);
  return d.nodes[0];
}

// encode -> text -> parse -> decode -> encode must reproduce the text.
template <class Decode, class Encode>
void round_trip(const Node& n, Decode decode, Encode encode) {
  const std::string text = serialize_node(n);
  const Node again = only(text);
  CHECK(serialize_node(encode(decode(again))) == text);
}

}  // namespace

TEST_CASE("vector arguments") {
  const Node n = only("vector 1:1/2 3:-2/1\n");
  CHECK(decode_vector(n) == FinVec{{1, ratio(1, 2)}, {3, -2}});
  CHECK(encode_vector_args(decode_vector(n)) == std::vector<std::string>{"1:1/2", "3:-2/1"});
  CHECK(decode_vector(only("vector 2:4/6 5:0")) == FinVec{{2, ratio(2, 3)}});
}

TEST_CASE("parse errors carry their location") {
  try {
    decode_vector(only("x 1 {\n  vector 1:1 2:0/0\n}").children.at(0));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 3);
  }
  try {
    parse_document("a {\n  b 1\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 2);
  }
  CHECK_THROWS_AS(decode_vector(only("vector 3:1 2:1")), ParseError);
  CHECK_THROWS_AS(decode_vector(only("vector x:1")), ParseError);
  CHECK_THROWS_AS(parse_document("a \"unterminated"), ParseError);
}

TEST_CASE("canonical text") {
  const std::string messy = "# comment\nmodel   {\n matrix 1 1 {\n row 2/4 }\n}\n";
  const Document d = parse_document(messy);
  const std::string canon = serialize_document(d);
  CHECK(serialize_document(parse_document(canon)) == canon);
  CHECK(canon.find("2/4") != std::string::npos);
  CHECK(serialize_node(only("s \"two words\" bare")) == "s \"two words\" bare\n");
}

TEST_CASE("unknown fields are rejected") {
  ModelRecord m;
  m.matrix = Matrix::identity(2);
  m.domain = m.codomain = NormSpec::sup();
  m.covering = 1;
  Node n = encode_model(m);
  n.children.push_back(Node{"colour", {"blue"}, {}, 0, 0});
  CHECK_THROWS_AS(decode_model(n), ParseError);
}

TEST_CASE("record round trips") {
  const Instance inst = make_instance(Family::Banded, 2);
  round_trip(encode_model(inst.record), decode_model, encode_model);
  round_trip(encode_schedule(inst.schedule), decode_schedule, encode_schedule);
  round_trip(encode_matrix(inst.record.matrix), decode_matrix, encode_matrix);
  const auto ls = lemma_scene(inst);
  REQUIRE(ls);
  round_trip(encode_scene(ls->record), decode_scene, encode_scene);
  round_trip(encode_report(ls->flat.report), decode_report, encode_report);
  round_trip(encode_trace({model_record(*synthetic_trace(2).model), synthetic_trace(2)}), decode_trace, encode_trace);
}

TEST_CASE("certificates verify after a round trip") {
  NormCertificateRecord nr{NormSpec::schreier(1), FinVec{{2, 1}, {3, 1}}, {}};
  nr.certificate = norm_eval(nr.vector, nr.space);
  const Node norm_node = encode_norm_certificate(nr);
  round_trip(norm_node, decode_norm_certificate, encode_norm_certificate);
  CHECK(certificate_kind(norm_node) == "norm");
  CHECK(verify_node(only(serialize_node(norm_node))).pass);

  ScheduleCertificateRecord sr{build_schedule(16), {}};
  sr.report = validate_schedule(sr.schedule);
  const Node sched_node = encode_schedule_certificate(sr);
  round_trip(sched_node, decode_schedule_certificate, encode_schedule_certificate);
  CHECK(verify_node(only(serialize_node(sched_node))).pass);

  const auto rec = extraction_scene(make_instance(Family::BlockDiagonal, 1));
  REQUIRE(rec);
  UncondCertificateRecord ur{*rec, {}, {}};
  const std::size_t count = plan_indices(rec->scene.schedule, rec->scene.cod.block_count(), 12).size();
  REQUIRE(count >= 3);
  ur.coefficients = default_coefficients(count);
  ur.result = extract_unconditional(rec->scene, ur.coefficients);
  const Node uncond = encode_uncond_certificate(ur);
  round_trip(uncond, decode_uncond_certificate, encode_uncond_certificate);
  const VerifyOutcome uv = verify_node(only(serialize_node(uncond)));
  CHECK(uv.pass == ur.result.found);

  const std::size_t n = 32;
  WitnessCertificateRecord wr;
  wr.model.matrix = Matrix::identity(n);
  wr.model.domain = wr.model.codomain = NormSpec::schreier(1);
  wr.model.y_norm = NormSpec::schreier(1);
  wr.model.covering = 1;
  for (std::size_t j = 1; j <= n; ++j) wr.ys.push_back(FinVec::unit(Index(j)));
  wr.budget = 10000;
  wr.report = s1_witness_search(*wr.model.build(), wr.ys, wr.budget);
  const Node wit = encode_witness_certificate(wr);
  round_trip(wit, decode_witness_certificate, encode_witness_certificate);
  CHECK(verify_node(only(serialize_node(wit))).pass);
}

TEST_CASE("edited certificates fail verification") {
  NormCertificateRecord nr{NormSpec::schreier(1), FinVec{{2, 1}, {3, 1}}, {}};
  nr.certificate = norm_eval(nr.vector, nr.space);
  std::string text = serialize_node(encode_norm_certificate(nr));
  const auto at = text.find("2/1");
  REQUIRE(at != std::string::npos);
  text.replace(at, 3, "3/1");
  CHECK_FALSE(verify_node(only(text)).pass);

  ScheduleCertificateRecord sr{build_schedule(12), {}};
  sr.report = validate_schedule(sr.schedule);
  sr.report.binding_margin += 1;
  CHECK_FALSE(verify_node(encode_schedule_certificate(sr)).pass);
}

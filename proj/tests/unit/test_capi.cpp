#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "wuq/wuq.h"

namespace {

std::string corpus(const std::string& name) {
  std::ifstream in(std::string(WUQ_CORPUS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Owns an output handle.
struct Out {
  wuq_text* text = nullptr;
  ~Out() { wuq_text_free(text); }
  std::string str() const { return text ? std::string(wuq_text_data(text), wuq_text_size(text)) : std::string(); }
};

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(wuq_version()).size() > 0);
  Out o;
  CHECK(wuq_norm("vector 1:0/0", "sup", &o.text) == WUQ_ERROR);
  CHECK(o.text == nullptr);
  CHECK(std::string(wuq_last_error_code()) == "ParseError");
  CHECK(std::string(wuq_last_error()).find("line 1") != std::string::npos);
  CHECK(wuq_norm("vector 1:1", "bogus", &o.text) == WUQ_ERROR);
  CHECK(wuq_canonicalize("a { b", &o.text) == WUQ_ERROR);
  wuq_text_free(nullptr);
}

TEST_CASE("norm certificate") {
  Out o;
  REQUIRE(wuq_norm("vector 2:1 3:1", "schreier:1", &o.text) == WUQ_OK);
  CHECK(o.str().find("value 2/1") != std::string::npos);
  Out v;
  CHECK(wuq_verify(o.str().c_str(), nullptr, &v.text) == WUQ_OK);
  Out c;
  REQUIRE(wuq_canonicalize(o.str().c_str(), &c.text) == WUQ_OK);
  CHECK(c.str() == o.str());
}

TEST_CASE("schedules") {
  Out good;
  CHECK(wuq_schedule_build(16, nullptr, nullptr, nullptr, &good.text) == WUQ_OK);
  Out bad;
  CHECK(wuq_schedule_build(8, "geometric", "1/64", "1/4", &bad.text) == WUQ_NEGATIVE);
  CHECK(bad.str().find("(1.1) second part at p = 0") != std::string::npos);
  Out file;
  CHECK(wuq_schedule_validate(corpus("geometric.schedule").c_str(), &file.text) == WUQ_NEGATIVE);
  Out v;
  CHECK(wuq_verify(bad.str().c_str(), nullptr, &v.text) == WUQ_OK);
}

TEST_CASE("models") {
  wuq_model* m = nullptr;
  REQUIRE(wuq_model_create(corpus("one_row.model").c_str(), &m) == WUQ_OK);
  Out d, q, p, c;
  CHECK(wuq_model_describe(m, &d.text) == WUQ_OK);
  CHECK(d.str().find("covering-verified") != std::string::npos);
  CHECK(wuq_quotient_norm(m, "vector 1:1", &q.text) == WUQ_OK);
  CHECK(q.str().find("value 1/1") != std::string::npos);
  CHECK(wuq_min_norm_preimage(m, "vector 1:3", nullptr, &p.text) == WUQ_OK);
  CHECK(p.str().find("norm 3/1") != std::string::npos);
  CHECK(wuq_covering_constant(m, &c.text) == WUQ_OK);
  Out bad;
  CHECK(wuq_quotient_norm(m, "vector 4:1", &bad.text) == WUQ_ERROR);
  wuq_model_free(m);
  wuq_model_free(nullptr);
  CHECK(wuq_model_create("model { }", &m) == WUQ_ERROR);
}

TEST_CASE("extraction and verification") {
  const std::string scene = corpus("block_diagonal.scene");
  Out e;
  const int st = wuq_extract(scene.c_str(), nullptr, &e.text);
  CHECK((st == WUQ_OK || st == WUQ_NEGATIVE));
  Out v;
  CHECK(wuq_verify(e.str().c_str(), nullptr, &v.text) == WUQ_OK);
  Out lem;
  CHECK(wuq_verify(corpus("perturbed_lemmas.scene").c_str(), "1.2,1.3", &lem.text) == WUQ_OK);
  Out nope;
  CHECK(wuq_verify(corpus("perturbed_lemmas.scene").c_str(), "9.9", &nope.text) == WUQ_ERROR);
}

TEST_CASE("saturation and probes") {
  Out s;
  REQUIRE(wuq_saturate(corpus("schreier64.model").c_str(), corpus("units64.ys").c_str(), 100000, nullptr, &s.text) ==
          WUQ_OK);
  Out v;
  CHECK(wuq_verify(s.str().c_str(), nullptr, &v.text) == WUQ_OK);
  Out t;
  REQUIRE(wuq_synthetic_trace(4, &t.text) == WUQ_OK);
  Out tv;
  CHECK(wuq_verify(t.str().c_str(), nullptr, &tv.text) == WUQ_OK);
  CHECK(wuq_synthetic_trace(3, &t.text) == WUQ_ERROR);
  Out sp;
  CHECK(wuq_probe_spreading(corpus("units64.ys").c_str(), "schreier:1", 4, "8,16,32", &sp.text) == WUQ_OK);
  CHECK(sp.str().find("spreading l1-like") != std::string::npos);
}

TEST_CASE("seeded output is deterministic") {
  const std::string scene = corpus("banded.scene");
  wuq_set_seed(11);
  Out a, b;
  wuq_probe_c0_fix(scene.c_str(), "1,2", &a.text);
  wuq_set_seed(11);
  wuq_probe_c0_fix(scene.c_str(), "1,2", &b.text);
  CHECK(a.str() == b.str());
  CHECK_FALSE(a.str().empty());
}

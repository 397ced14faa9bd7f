#include "wuq/wuq.h"

#include <sstream>
#include <string>

#include "wuq/codec.hpp"
#include "wuq/error.hpp"
#include "wuq/replay.hpp"

struct wuq_text {
  std::string data;
};

struct wuq_model {
  wuq::ModelRecord record;
  std::shared_ptr<const wuq::QuotientModel> model;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_code;
thread_local std::uint64_t g_seed = 7;

using wuq::Node;

template <class F>
int guard(F&& body) {
  g_error.clear();
  g_code.clear();
  try {
    return body();
  } catch (const wuq::Error& e) {
    g_error = e.what();
    g_code = wuq::error_code_name(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    g_code = "InternalError";
  }
  return WUQ_ERROR;
}

void require(const void* p, const char* what) {
  if (!p) throw wuq::Error(wuq::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

int emit(wuq_text** out, std::string text, int status) {
  *out = new wuq_text{std::move(text)};
  return status;
}

int emit(wuq_text** out, const Node& n, int status) { return emit(out, wuq::serialize_node(n), status); }

/// The single record of a document, which must have the given key.
Node single(const char* text, const std::string& key) {
  require(text, key.c_str());
  wuq::Document d = wuq::parse_document(text);
  if (d.nodes.size() != 1) throw wuq::ParseError(1, 1, "expected exactly one " + key + " record");
  if (d.nodes[0].key != key)
    throw wuq::ParseError(d.nodes[0].line, d.nodes[0].column, "expected a " + key + " record, got '" + d.nodes[0].key + "'");
  return std::move(d.nodes[0]);
}

Node make(std::string key, std::vector<std::string> args = {}, std::vector<Node> children = {}) {
  Node n;
  n.key = std::move(key);
  n.args = std::move(args);
  n.children = std::move(children);
  return n;
}

std::vector<std::size_t> index_list(const char* text) {
  std::vector<std::size_t> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw wuq::Error(wuq::ErrorCode::InvalidArgument, "bad index list '" + std::string(text) + "'");
    out.push_back(std::stoull(item));
  }
  return out;
}

std::vector<std::string> word_list(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::shared_ptr<const wuq::QuotientModel> build(const wuq::ModelRecord& r) { return r.build(g_seed); }

std::vector<wuq::FinVec> vectors_of(const Node& n) {
  std::vector<wuq::FinVec> out;
  for (const auto& c : n.children) {
    if (c.key != "vector") throw wuq::ParseError(c.line, c.column, "unknown field '" + c.key + "' in " + n.key);
    out.push_back(wuq::decode_vector(c));
  }
  return out;
}

}  // namespace

extern "C" {

const char* wuq_version(void) { return "1.0.0"; }
const char* wuq_last_error(void) { return g_error.c_str(); }
const char* wuq_last_error_code(void) { return g_code.c_str(); }

const char* wuq_text_data(const wuq_text* text) { return text ? text->data.c_str() : ""; }
size_t wuq_text_size(const wuq_text* text) { return text ? text->data.size() : 0; }
void wuq_text_free(wuq_text* text) { delete text; }

void wuq_set_seed(uint64_t seed) { g_seed = seed; }

int wuq_canonicalize(const char* document, wuq_text** out) {
  return guard([&] {
    require(document, "document");
    require(out, "out");
    return emit(out, wuq::serialize_document(wuq::parse_document(document)), WUQ_OK);
  });
}

int wuq_norm(const char* vector, const char* space, wuq_text** out) {
  return guard([&] {
    require(space, "space");
    require(out, "out");
    const Node v = single(vector, "vector");
    wuq::NormCertificateRecord r{wuq::NormSpec::parse(space), wuq::decode_vector(v), {}};
    if (!r.space.polyhedral())
      throw wuq::Error(wuq::ErrorCode::QuotientUnavailable, "use the quotient operations for quotient norms");
    r.certificate = wuq::norm_eval(r.vector, r.space);
    return emit(out, wuq::encode_norm_certificate(r), WUQ_OK);
  });
}

int wuq_schedule_build(size_t length, const char* tail_kind, const char* c, const char* r, wuq_text** out) {
  return guard([&] {
    require(out, "out");
    if (length == 0) throw wuq::Error(wuq::ErrorCode::InvalidArgument, "length must be positive");
    wuq::EpsilonSchedule s;
    if (!tail_kind) {
      s = wuq::build_schedule(length);
    } else {
      require(c, "c");
      require(r, "r");
      const std::string kind = tail_kind;
      if (kind == "factorial-damped")
        s = wuq::build_schedule(length, wuq::TailDescriptor::factorial_damped(wuq::parse_scalar(c), wuq::parse_scalar(r)));
      else if (kind == "geometric")
        s = wuq::build_schedule(length, wuq::TailDescriptor::geometric(wuq::parse_scalar(c), wuq::parse_scalar(r)));
      else
        throw wuq::Error(wuq::ErrorCode::InvalidArgument, "unknown tail kind '" + kind + "'");
    }
    const wuq::ScheduleReport rep = wuq::validate_schedule(s);
    return emit(out, wuq::encode_schedule_certificate({s, rep}), rep.pass ? WUQ_OK : WUQ_NEGATIVE);
  });
}

int wuq_schedule_validate(const char* schedule, wuq_text** out) {
  return guard([&] {
    require(out, "out");
    const wuq::EpsilonSchedule s = wuq::decode_schedule(single(schedule, "schedule"));
    const wuq::ScheduleReport rep = wuq::validate_schedule(s);
    return emit(out, wuq::encode_schedule_certificate({s, rep}), rep.pass ? WUQ_OK : WUQ_NEGATIVE);
  });
}

int wuq_model_create(const char* model, wuq_model** out) {
  return guard([&] {
    require(out, "out");
    auto h = std::make_unique<wuq_model>();
    h->record = wuq::decode_model(single(model, "model"));
    h->model = build(h->record);
    *out = h.release();
    return WUQ_OK;
  });
}

void wuq_model_free(wuq_model* model) { delete model; }

int wuq_model_describe(const wuq_model* model, wuq_text** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    Node n = wuq::encode_model(model->record);
    n.children.push_back(make("covering-verified", {model->model->covering_verified() ? "yes" : "no"}));
    return emit(out, n, WUQ_OK);
  });
}

int wuq_quotient_norm(const wuq_model* model, const char* vector, wuq_text** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    const wuq::FinVec y = wuq::decode_vector(single(vector, "vector"));
    const wuq::Scalar v = wuq::quotient_norm(*model->model, y);
    return emit(out, make("quotient-norm", {}, {wuq::encode_vector(y), make("value", {wuq::format_scalar(v)})}), WUQ_OK);
  });
}

int wuq_min_norm_preimage(const wuq_model* model, const char* vector, const char* slack, wuq_text** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    const wuq::FinVec y = wuq::decode_vector(single(vector, "vector"));
    const wuq::Scalar s = slack ? wuq::parse_scalar(slack) : wuq::Scalar(1);
    const wuq::FinVec x = wuq::min_norm_preimage(*model->model, y, s);
    const wuq::Scalar nx = wuq::norm(x, model->model->dom_norm());
    return emit(out,
                make("preimage", {},
                     {wuq::encode_vector(y), make("slack", {wuq::format_scalar(s)}), wuq::encode_vector(x, "x"),
                      make("norm", {wuq::format_scalar(nx)})}),
                WUQ_OK);
  });
}

int wuq_covering_constant(const wuq_model* model, wuq_text** out) {
  return guard([&] {
    require(model, "model");
    require(out, "out");
    const wuq::CoveringResult c = wuq::covering_constant(*model->model);
    const bool holds = c.value <= model->model->covering();
    return emit(out,
                make("covering", {},
                     {make("value", {wuq::format_scalar(c.value)}), wuq::encode_vector(c.binding, "binding"),
                      make("supplied", {wuq::format_scalar(model->model->covering())}),
                      make("supplied-holds", {holds ? "yes" : "no"})}),
                holds ? WUQ_OK : WUQ_NEGATIVE);
  });
}

int wuq_extract(const char* scene, const char* coefficients, wuq_text** out) {
  return guard([&] {
    require(out, "out");
    wuq::UncondCertificateRecord r;
    r.scene = wuq::decode_scene(single(scene, "scene"));
    if (coefficients) {
      const Node c = single(coefficients, "coefficients");
      for (const auto& a : c.children) {
        if (a.key != "a") throw wuq::ParseError(a.line, a.column, "unknown field '" + a.key + "' in coefficients");
        std::vector<wuq::Scalar> v;
        for (const auto& s : a.args) v.push_back(wuq::parse_scalar(s));
        r.coefficients.push_back(std::move(v));
      }
    }
    r.result = wuq::extract_unconditional(r.scene.scene, r.coefficients);
    return emit(out, wuq::encode_uncond_certificate(r), r.result.found ? WUQ_OK : WUQ_NEGATIVE);
  });
}

int wuq_verify(const char* document, const char* lemmas, wuq_text** out) {
  return guard([&] {
    require(document, "document");
    require(out, "out");
    const wuq::Document d = wuq::parse_document(document);
    if (d.nodes.empty()) throw wuq::ParseError(1, 1, "empty document");
    std::string text;
    bool all = true;
    for (const auto& n : d.nodes) {
      const wuq::VerifyOutcome v = wuq::verify_node(n, word_list(lemmas));
      Node r = make("verified", {v.kind},
                    {make("outcome", {v.pass ? "pass" : "fail"}), make("negative", {v.negative ? "yes" : "no"}),
                     wuq::encode_report(v.report)});
      if (const wuq::Clause* f = v.report.first_failure()) r.children.push_back(make("first-failure", {f->description}));
      text += wuq::serialize_node(r);
      all = all && v.pass;
    }
    return emit(out, text, all ? WUQ_OK : WUQ_NEGATIVE);
  });
}

int wuq_saturate(const char* model, const char* ys, size_t budget, const char* threshold, wuq_text** out) {
  return guard([&] {
    require(out, "out");
    wuq::WitnessCertificateRecord r;
    r.model = wuq::decode_model(single(model, "model"));
    r.ys = vectors_of(single(ys, "ys"));
    r.budget = budget;
    if (threshold) r.options.threshold = wuq::parse_scalar(threshold);
    r.report = wuq::s1_witness_search(*build(r.model), r.ys, budget, r.options);
    return emit(out, wuq::encode_witness_certificate(r), r.report.found ? WUQ_OK : WUQ_NEGATIVE);
  });
}

int wuq_synthetic_trace(size_t m, wuq_text** out) {
  return guard([&] {
    require(out, "out");
    wuq::TraceRecord r;
    r.trace = wuq::synthetic_trace(m);
    r.model = wuq::model_record(*r.trace.model);
    return emit(out, wuq::encode_trace(r), WUQ_OK);
  });
}

int wuq_probe_spreading(const char* ys, const char* space, size_t k, const char* starts, wuq_text** out) {
  return guard([&] {
    require(space, "space");
    require(out, "out");
    const auto xs = vectors_of(single(ys, "ys"));
    const wuq::SpreadingResult res = wuq::spreading_probe(xs, wuq::NormSpec::parse(space), k, index_list(starts));
    Node n = make("spreading", {res.classification});
    for (const auto& row : res.table) {
      std::vector<std::string> args{std::to_string(row.start), wuq::format_scalar(row.value)};
      for (auto t : row.tuple) args.push_back(std::to_string(t));
      n.children.push_back(make("row", args));
    }
    return emit(out, n, WUQ_OK);
  });
}

int wuq_probe_c0_fix(const char* scene, const char* depths, wuq_text** out) {
  return guard([&] {
    require(out, "out");
    const wuq::SceneRecord s = wuq::decode_scene(single(scene, "scene"));
    wuq::ProbeOptions o;
    o.seed = g_seed;
    const wuq::C0FixReport rep = wuq::c0_fix_probe(s.scene, s.scene.p, index_list(depths), o);
    Node n = make("c0-fix", {rep.found ? "stable" : (rep.failure.empty() ? "unstable" : rep.failure)});
    std::vector<std::string> p;
    for (auto i : rep.p) p.push_back(std::to_string(i));
    n.children.push_back(make("p", p));
    if (!rep.violation.empty()) {
      std::vector<std::string> v;
      for (const auto& a : rep.violation) v.push_back(wuq::format_scalar(a));
      n.children.push_back(make("violation", v));
    }
    for (std::size_t d = 0; d < rep.xs.size(); ++d) {
      Node dn = make("depth", {std::to_string(rep.depths[d])});
      std::vector<std::string> r;
      for (auto i : rep.r[d]) r.push_back(std::to_string(i));
      dn.children.push_back(make("r", r));
      for (const auto& x : rep.xs[d]) dn.children.push_back(wuq::encode_vector(x, "x"));
      n.children.push_back(std::move(dn));
    }
    if (rep.failure.empty()) {
      n.children.push_back(make("stable", {rep.stable ? "yes" : "no", std::to_string(rep.stable_from)}));
      n.children.push_back(make("uniform-bound", {wuq::format_scalar(rep.uniform_bound)}));
      for (const auto& w : rep.omegas) n.children.push_back(wuq::encode_vector(w, "omega"));
      for (const auto& c : rep.corrected) n.children.push_back(wuq::encode_vector(c, "corrected"));
      n.children.push_back(wuq::encode_report(rep.report));
    }
    return emit(out, n, rep.found ? WUQ_OK : WUQ_NEGATIVE);
  });
}

}  // extern "C"

#include "wuq/codec.hpp"

#include <algorithm>
#include <set>

#include "wuq/error.hpp"

namespace wuq {

namespace {

[[noreturn]] void fail(const Node& at, const std::string& what) { throw ParseError(at.line, at.column, what); }

/// Tracks which children of a record were consumed; anything left over is
/// an unknown field.
class Fields {
 public:
  Fields(const Node& n, std::initializer_list<const char*> allowed) : n_(n) {
    for (auto a : allowed) allowed_.insert(a);
    for (const auto& c : n.children)
      if (!allowed_.count(c.key)) fail(c, "unknown field '" + c.key + "' in " + n.key);
  }

  const Node& need(const std::string& key) const {
    const Node* c = n_.find(key);
    if (!c) fail(n_, n_.key + " is missing field '" + key + "'");
    return *c;
  }
  const Node* opt(const std::string& key) const { return n_.find(key); }
  std::vector<const Node*> all(const std::string& key) const { return n_.find_all(key); }

 private:
  const Node& n_;
  std::set<std::string> allowed_;
};

Node make(std::string key, std::vector<std::string> args = {}, std::vector<Node> children = {}) {
  Node n;
  n.key = std::move(key);
  n.args = std::move(args);
  n.children = std::move(children);
  return n;
}

Scalar scalar_at(const std::string& text, const Node& at) {
  try {
    return parse_scalar(text);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(at, e.detail());
  }
}

std::size_t count_at(const std::string& text, const Node& at) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(at, "expected a non-negative integer, got '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    fail(at, "integer out of range: '" + text + "'");
  }
}

long signed_at(const std::string& text, const Node& at) {
  if (!text.empty() && text[0] == '-') return -long(count_at(text.substr(1), at));
  return long(count_at(text, at));
}

const std::string& arg(const Node& n, std::size_t i) {
  if (i >= n.args.size()) fail(n, n.key + " needs at least " + std::to_string(i + 1) + " arguments");
  return n.args[i];
}

void arity(const Node& n, std::size_t count) {
  if (n.args.size() != count) fail(n, n.key + " takes " + std::to_string(count) + " arguments");
}

Scalar scalar_field(const Node& n) {
  arity(n, 1);
  return scalar_at(n.args[0], n);
}

std::size_t count_field(const Node& n) {
  arity(n, 1);
  return count_at(n.args[0], n);
}

std::vector<std::string> scalars(const std::vector<Scalar>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(format_scalar(s));
  return out;
}

std::vector<Scalar> scalars_from(const Node& n) {
  std::vector<Scalar> out;
  for (const auto& a : n.args) out.push_back(scalar_at(a, n));
  return out;
}

template <class T>
std::vector<std::string> counts(const std::vector<T>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(std::to_string(s));
  return out;
}

std::vector<std::size_t> counts_from(const Node& n) {
  std::vector<std::size_t> out;
  for (const auto& a : n.args) out.push_back(count_at(a, n));
  return out;
}

NormSpec norm_from(const std::string& tag, const Node& at) {
  try {
    return NormSpec::parse(tag);
  } catch (const Error& e) {
    fail(at, e.detail());
  }
}

Node vector_list(const std::string& key, const std::vector<FinVec>& vs) {
  Node n = make(key);
  for (const auto& v : vs) n.children.push_back(encode_vector(v));
  return n;
}

std::vector<FinVec> vectors_from(const Node& n) {
  Fields f(n, {"vector"});
  std::vector<FinVec> out;
  for (const auto* c : f.all("vector")) out.push_back(decode_vector(*c));
  return out;
}

Node coefficient_list(const std::vector<std::vector<Scalar>>& sets) {
  Node n = make("coefficients");
  for (const auto& a : sets) n.children.push_back(make("a", scalars(a)));
  return n;
}

std::vector<std::vector<Scalar>> coefficients_from(const Node& n) {
  Fields f(n, {"a"});
  std::vector<std::vector<Scalar>> out;
  for (const auto* c : f.all("a")) out.push_back(scalars_from(*c));
  return out;
}

Blocking blocking_from(const Node& n) {
  try {
    return Blocking(counts_from(n));
  } catch (const Error& e) {
    fail(n, e.detail());
  }
}

const char* pass_word(bool ok) { return ok ? "pass" : "fail"; }

bool pass_from(const std::string& w, const Node& at) {
  if (w == "pass") return true;
  if (w == "fail") return false;
  fail(at, "expected pass or fail, got '" + w + "'");
}

bool yes_from(const Node& n) {
  arity(n, 1);
  if (n.args[0] == "yes") return true;
  if (n.args[0] == "no") return false;
  fail(n, "expected yes or no");
}

Node clause_node(const std::string& key, const Clause& c) {
  std::vector<std::string> args{c.description, c.kind == Clause::Kind::Less ? "less" : "less-eq", format_scalar(c.lhs),
                                format_scalar(c.rhs), pass_word(c.pass)};
  for (auto w : c.witness) args.push_back(std::to_string(w));
  return make(key, std::move(args));
}

Clause clause_from(const Node& n) {
  if (n.args.size() < 5) fail(n, "a clause needs description, kind, lhs, rhs and verdict");
  Clause c;
  c.description = n.args[0];
  if (n.args[1] == "less")
    c.kind = Clause::Kind::Less;
  else if (n.args[1] == "less-eq")
    c.kind = Clause::Kind::LessEq;
  else
    fail(n, "clause kind must be less or less-eq");
  c.lhs = scalar_at(n.args[2], n);
  c.rhs = scalar_at(n.args[3], n);
  c.pass = pass_from(n.args[4], n);
  for (std::size_t i = 5; i < n.args.size(); ++i) c.witness.push_back(signed_at(n.args[i], n));
  return c;
}

Node plan_node(const RampPlan& p) {
  return make("plan", {std::to_string(p.n), std::to_string(p.m)}, {make("i", counts(p.i)), make("j", counts(p.j))});
}

RampPlan plan_from(const Node& n) {
  arity(n, 2);
  Fields f(n, {"i", "j"});
  RampPlan p;
  p.n = count_at(n.args[0], n);
  p.m = count_at(n.args[1], n);
  p.i = counts_from(f.need("i"));
  p.j = counts_from(f.need("j"));
  return p;
}

Node search_node(const AverageSearch& s) {
  return make("search", {},
              {make("found", {s.found ? "yes" : "no"}), make("indices", counts(s.indices)),
               make("average", {format_scalar(s.average)}), make("searched", {std::to_string(s.searched)})});
}

AverageSearch search_from(const Node& n) {
  Fields f(n, {"found", "indices", "average", "searched"});
  AverageSearch s;
  s.found = yes_from(f.need("found"));
  s.indices = counts_from(f.need("indices"));
  s.average = scalar_field(f.need("average"));
  s.searched = count_field(f.need("searched"));
  return s;
}

}  // namespace

FinVec decode_vector_args(const std::vector<std::string>& args, const Node& where) {
  FinVec v;
  Index last = 0;
  for (const auto& a : args) {
    const auto colon = a.find(':');
    if (colon == std::string::npos) fail(where, "expected index:value, got '" + a + "'");
    const Index i = count_at(a.substr(0, colon), where);
    if (i == 0) fail(where, "indices start at 1");
    if (i <= last) fail(where, "indices must be strictly ascending");
    last = i;
    v.set(i, scalar_at(a.substr(colon + 1), where));
  }
  return v;
}

std::vector<std::string> encode_vector_args(const FinVec& v) {
  std::vector<std::string> out;
  for (const auto& [i, x] : v.entries()) out.push_back(std::to_string(i) + ":" + format_scalar(x));
  return out;
}

Node encode_vector(const FinVec& v, const std::string& key) { return make(key, encode_vector_args(v)); }

FinVec decode_vector(const Node& n) {
  if (!n.children.empty()) fail(n.children.front(), "a vector has no fields");
  return decode_vector_args(n.args, n);
}

Node encode_matrix(const Matrix& m) {
  Node n = make("matrix", {std::to_string(m.rows()), std::to_string(m.cols())});
  for (std::size_t r = 1; r <= m.rows(); ++r) {
    const FinVec row = m.row(r);
    if (row.is_zero()) continue;
    std::vector<std::string> args{std::to_string(r)};
    for (auto& a : encode_vector_args(row)) args.push_back(std::move(a));
    n.children.push_back(make("row", std::move(args)));
  }
  return n;
}

Matrix decode_matrix(const Node& n) {
  arity(n, 2);
  Fields f(n, {"row"});
  Matrix m(count_at(n.args[0], n), count_at(n.args[1], n));
  std::size_t last = 0;
  for (const auto* r : f.all("row")) {
    const std::size_t i = count_at(arg(*r, 0), *r);
    if (i == 0 || i > m.rows()) fail(*r, "row index out of range");
    if (i <= last) fail(*r, "rows must be strictly ascending");
    last = i;
    const FinVec row = decode_vector_args(std::vector<std::string>(r->args.begin() + 1, r->args.end()), *r);
    if (row.max_index() > m.cols()) fail(*r, "column index out of range");
    for (const auto& [c, v] : row.entries()) m.at(i, c) = v;
  }
  return m;
}

Node encode_schedule(const EpsilonSchedule& s) {
  Node n = make("schedule");
  n.children.push_back(make("length", {std::to_string(s.length())}));
  if (s.tail())
    n.children.push_back(make("tail", {s.tail()->tag(), format_scalar(s.tail()->c), format_scalar(s.tail()->r)}));
  n.children.push_back(make("eps", scalars(s.eps_prefix())));
  n.children.push_back(make("eps-tilde", scalars(s.eps_tilde_prefix())));
  return n;
}

EpsilonSchedule decode_schedule(const Node& n) {
  Fields f(n, {"length", "tail", "eps", "eps-tilde"});
  const std::size_t length = count_field(f.need("length"));
  std::optional<TailDescriptor> tail;
  if (const Node* t = f.opt("tail")) {
    arity(*t, 3);
    const Scalar c = scalar_at(t->args[1], *t), r = scalar_at(t->args[2], *t);
    if (t->args[0] == "factorial-damped")
      tail = TailDescriptor::factorial_damped(c, r);
    else if (t->args[0] == "geometric")
      tail = TailDescriptor::geometric(c, r);
    else
      fail(*t, "unknown tail kind '" + t->args[0] + "'");
  }
  const Node* e = f.opt("eps");
  const Node* et = f.opt("eps-tilde");
  if ((e == nullptr) != (et == nullptr)) fail(n, "eps and eps-tilde go together");
  try {
    if (!e) {
      if (!tail) fail(n, "a schedule needs a tail or explicit eps values");
      return build_schedule(length, *tail);
    }
    EpsilonSchedule s(scalars_from(*e), scalars_from(*et), tail);
    if (s.length() != length) fail(n, "length does not match the stored values");
    return s;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    fail(n, err.detail());
  }
}

std::shared_ptr<const QuotientModel> ModelRecord::build(std::uint64_t seed) const {
  ModelOptions o;
  o.covering = choice;
  o.seed = seed;
  return std::make_shared<QuotientModel>(matrix, domain, codomain, y_norm, covering, o);
}

ModelRecord model_record(const QuotientModel& m) {
  ModelRecord r;
  r.matrix = m.matrix();
  r.domain = m.dom_norm();
  r.codomain = m.cod_norm();
  r.y_norm = m.y_norm();
  r.covering = m.covering();
  return r;
}

Node encode_model(const ModelRecord& m) {
  Node n = make("model");
  n.children.push_back(encode_matrix(m.matrix));
  n.children.push_back(make("domain", {m.domain.tag()}));
  n.children.push_back(make("codomain", {m.codomain.tag()}));
  n.children.push_back(make("y-norm", {m.y_norm ? m.y_norm->tag() : "quotient"}));
  n.children.push_back(make("covering", {format_scalar(m.covering)}));
  n.children.push_back(make("covering-choice", {m.choice == CoveringChoice::Minimal ? "minimal" : "supplied"}));
  return n;
}

ModelRecord decode_model(const Node& n) {
  Fields f(n, {"matrix", "domain", "codomain", "y-norm", "covering", "covering-choice"});
  ModelRecord m;
  m.matrix = decode_matrix(f.need("matrix"));
  const Node& d = f.need("domain");
  arity(d, 1);
  m.domain = norm_from(d.args[0], d);
  const Node& c = f.need("codomain");
  arity(c, 1);
  m.codomain = norm_from(c.args[0], c);
  if (const Node* y = f.opt("y-norm")) {
    arity(*y, 1);
    if (y->args[0] != "quotient") m.y_norm = norm_from(y->args[0], *y);
  } else {
    m.y_norm = m.codomain;
  }
  for (const auto& s : {m.domain, m.codomain})
    if (!s.polyhedral()) fail(n, "domain and codomain norms must be computable coordinate norms");
  m.covering = scalar_field(f.need("covering"));
  if (const Node* ch = f.opt("covering-choice")) {
    arity(*ch, 1);
    if (ch->args[0] == "minimal")
      m.choice = CoveringChoice::Minimal;
    else if (ch->args[0] != "supplied")
      fail(*ch, "covering-choice is supplied or minimal");
  }
  return m;
}

Node encode_scene(const SceneRecord& r) {
  const Scene& s = r.scene;
  Node n = make("scene");
  n.children.push_back(encode_model(r.model));
  n.children.push_back(encode_schedule(s.schedule));
  n.children.push_back(make("dom-tilde", counts(s.dom_tilde.cuts())));
  n.children.push_back(make("cod-tilde", counts(s.cod_tilde.cuts())));
  n.children.push_back(make("dom", counts(s.dom.cuts())));
  n.children.push_back(make("cod", counts(s.cod.cuts())));
  n.children.push_back(vector_list("ys", s.ys));
  if (s.window) n.children.push_back(make("window", {std::to_string(s.window->first), std::to_string(s.window->second)}));
  if (!s.p.empty()) n.children.push_back(make("p", counts(s.p)));
  if (!s.r.empty()) n.children.push_back(make("r", counts(s.r)));
  if (!s.coefficients.empty()) n.children.push_back(coefficient_list(s.coefficients));
  if (s.x) n.children.push_back(encode_vector(*s.x, "x"));
  return n;
}

SceneRecord decode_scene(const Node& n) {
  Fields f(n, {"model", "schedule", "dom-tilde", "cod-tilde", "dom", "cod", "ys", "window", "p", "r", "coefficients", "x"});
  SceneRecord r;
  r.model = decode_model(f.need("model"));
  Scene& s = r.scene;
  try {
    s.model = r.model.build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(f.need("model"), e.detail());
  }
  s.schedule = decode_schedule(f.need("schedule"));
  s.dom = blocking_from(f.need("dom"));
  s.cod = blocking_from(f.need("cod"));
  s.dom_tilde = f.opt("dom-tilde") ? blocking_from(*f.opt("dom-tilde")) : s.dom;
  s.cod_tilde = f.opt("cod-tilde") ? blocking_from(*f.opt("cod-tilde")) : s.cod;
  s.ys = vectors_from(f.need("ys"));
  if (const Node* w = f.opt("window")) {
    arity(*w, 2);
    s.window = std::make_pair(count_at(w->args[0], *w), count_at(w->args[1], *w));
  }
  if (const Node* p = f.opt("p")) s.p = counts_from(*p);
  if (const Node* q = f.opt("r")) s.r = counts_from(*q);
  if (const Node* c = f.opt("coefficients")) s.coefficients = coefficients_from(*c);
  if (const Node* x = f.opt("x")) s.x = decode_vector(*x);
  return r;
}

Node encode_report(const InequalityReport& r) {
  Node n = make("report", {r.lemma.empty() ? "-" : r.lemma});
  n.children.push_back(make("verdict", {r.verdict()}));
  for (const auto& c : r.hypotheses) n.children.push_back(clause_node("hypothesis", c));
  for (const auto& c : r.clauses) n.children.push_back(clause_node("clause", c));
  return n;
}

InequalityReport decode_report(const Node& n) {
  arity(n, 1);
  Fields f(n, {"verdict", "hypothesis", "clause"});
  InequalityReport r;
  r.lemma = n.args[0] == "-" ? "" : n.args[0];
  for (const auto* c : f.all("hypothesis")) r.hypotheses.push_back(clause_from(*c));
  for (const auto* c : f.all("clause")) r.clauses.push_back(clause_from(*c));
  return r;
}

Node encode_tree(const AdmissibleTree& t) {
  Node n = make("tree", {std::to_string(t.level)});
  if (t.children.empty())
    for (auto i : t.leaves) n.args.push_back(std::to_string(i));
  for (const auto& c : t.children) n.children.push_back(encode_tree(c));
  return n;
}

AdmissibleTree decode_tree(const Node& n) {
  Fields f(n, {"tree"});
  AdmissibleTree t;
  t.level = unsigned(count_at(arg(n, 0), n));
  std::vector<Index> leaves;
  for (std::size_t i = 1; i < n.args.size(); ++i) leaves.push_back(count_at(n.args[i], n));
  try {
    t.leaves = IndexSet(leaves);
  } catch (const Error& e) {
    fail(n, e.detail());
  }
  for (const auto* c : f.all("tree")) t.children.push_back(decode_tree(*c));
  return t;
}

std::string certificate_kind(const Node& n) {
  if (n.key != "certificate") fail(n, "expected a certificate record, got '" + n.key + "'");
  arity(n, 1);
  return n.args[0];
}

Node encode_norm_certificate(const NormCertificateRecord& r) {
  Node n = make("certificate", {"norm"});
  n.children.push_back(make("space", {r.space.tag()}));
  n.children.push_back(encode_vector(r.vector));
  n.children.push_back(make("value", {format_scalar(r.certificate.value)}));
  n.children.push_back(make("witness", {}, {encode_tree(r.certificate.witness)}));
  std::vector<std::string> signs;
  for (int s : r.certificate.signs) signs.push_back(std::to_string(s));
  n.children.push_back(make("signs", signs));
  return n;
}

NormCertificateRecord decode_norm_certificate(const Node& n) {
  Fields f(n, {"space", "vector", "value", "witness", "signs"});
  NormCertificateRecord r;
  const Node& sp = f.need("space");
  arity(sp, 1);
  r.space = norm_from(sp.args[0], sp);
  if (!r.space.polyhedral()) fail(sp, "norm certificates cover coordinate norms only");
  r.vector = decode_vector(f.need("vector"));
  r.certificate.value = scalar_field(f.need("value"));
  const Node& w = f.need("witness");
  if (w.children.size() != 1 || w.children[0].key != "tree") fail(w, "witness holds exactly one tree");
  r.certificate.witness = decode_tree(w.children[0]);
  const Node& s = f.need("signs");
  for (const auto& a : s.args) {
    const long v = signed_at(a, s);
    if (v != 1 && v != -1) fail(s, "signs are 1 or -1");
    r.certificate.signs.push_back(int(v));
  }
  return r;
}

Node encode_schedule_certificate(const ScheduleCertificateRecord& r) {
  Node n = make("certificate", {"schedule"});
  n.children.push_back(encode_schedule(r.schedule));
  n.children.push_back(make("verdict", {pass_word(r.report.pass)}));
  n.children.push_back(make("binding", {r.report.binding, format_scalar(r.report.binding_margin)}));
  for (const auto& c : r.report.clauses)
    n.children.push_back(make("check", {c.name, pass_word(c.pass), format_scalar(c.margin)}));
  return n;
}

ScheduleCertificateRecord decode_schedule_certificate(const Node& n) {
  Fields f(n, {"schedule", "verdict", "binding", "check"});
  ScheduleCertificateRecord r;
  r.schedule = decode_schedule(f.need("schedule"));
  const Node& v = f.need("verdict");
  arity(v, 1);
  r.report.pass = pass_from(v.args[0], v);
  const Node& b = f.need("binding");
  arity(b, 2);
  r.report.binding = b.args[0];
  r.report.binding_margin = scalar_at(b.args[1], b);
  for (const auto* c : f.all("check")) {
    arity(*c, 3);
    r.report.clauses.push_back({c->args[0], pass_from(c->args[1], *c), scalar_at(c->args[2], *c)});
  }
  return r;
}

Node encode_uncond_certificate(const UncondCertificateRecord& r) {
  const ExtractResult& res = r.result;
  const UncondCertificate& cert = res.certificate;
  Node n = make("certificate", {"unconditional"});
  n.children.push_back(encode_scene(r.scene));
  if (!r.coefficients.empty()) n.children.push_back(coefficient_list(r.coefficients));
  n.children.push_back(make("found", {res.found ? "yes" : "no"}));
  n.children.push_back(make("p", counts(cert.p)));
  n.children.push_back(make("covering", {format_scalar(cert.covering)}));
  n.children.push_back(make("t-norm-lower", {format_scalar(cert.t_norm_lower)}));
  n.children.push_back(make("bound", {format_scalar(cert.bound)}));
  for (const auto& run : cert.runs) {
    Node rn = make("run");
    rn.children.push_back(make("a", scalars(run.a)));
    rn.children.push_back(make("scale", {format_scalar(run.scale)}));
    rn.children.push_back(encode_vector(run.x, "x"));
    rn.children.push_back(make("r", counts(run.r)));
    for (const auto& p : run.plans) rn.children.push_back(plan_node(p));
    std::vector<FinVec> xbar;
    for (const auto& b : run.xbar) xbar.push_back(b.sum());
    rn.children.push_back(vector_list("xbar", xbar));
    rn.children.push_back(make("measured", {format_scalar(run.measured)}));
    std::vector<std::string> signs;
    for (int s : run.best_signs) signs.push_back(std::to_string(s));
    rn.children.push_back(make("signs", signs));
    rn.children.push_back(encode_report(run.report));
    n.children.push_back(std::move(rn));
  }
  if (!res.found) {
    Node fn = make("failure", {res.failure});
    fn.children.push_back(make("window", {std::to_string(res.failed_window)}));
    if (res.failed_flatten) {
      const FlattenResult& fr = *res.failed_flatten;
      fn.children.push_back(make("n0", {std::to_string(fr.n0)}));
      fn.children.push_back(make("side", {fr.failed_search.empty() ? "-" : fr.failed_search}));
      fn.children.push_back(search_node(fr.certificate));
    }
    n.children.push_back(std::move(fn));
  }
  return n;
}

UncondCertificateRecord decode_uncond_certificate(const Node& n) {
  Fields f(n, {"scene", "coefficients", "found", "p", "covering", "t-norm-lower", "bound", "run", "failure"});
  UncondCertificateRecord r;
  r.scene = decode_scene(f.need("scene"));
  if (const Node* c = f.opt("coefficients")) r.coefficients = coefficients_from(*c);
  ExtractResult& res = r.result;
  UncondCertificate& cert = res.certificate;
  res.found = yes_from(f.need("found"));
  cert.p = counts_from(f.need("p"));
  cert.covering = scalar_field(f.need("covering"));
  cert.t_norm_lower = scalar_field(f.need("t-norm-lower"));
  cert.bound = scalar_field(f.need("bound"));
  const Blocking& dom = r.scene.scene.dom;
  for (const auto* rn : f.all("run")) {
    Fields rf(*rn, {"a", "scale", "x", "r", "plan", "xbar", "measured", "signs", "report"});
    UncondRun run;
    run.a = scalars_from(rf.need("a"));
    run.scale = scalar_field(rf.need("scale"));
    run.x = decode_vector(rf.need("x"));
    run.r = counts_from(rf.need("r"));
    for (const auto* p : rf.all("plan")) run.plans.push_back(plan_from(*p));
    for (const auto& v : vectors_from(rf.need("xbar"))) {
      if (v.max_index() > dom.last_index()) fail(rf.need("xbar"), "xbar beyond the domain");
      run.xbar.push_back(block_decompose(v, dom));
    }
    run.measured = scalar_field(rf.need("measured"));
    for (const auto& a : rf.need("signs").args) run.best_signs.push_back(int(signed_at(a, rf.need("signs"))));
    run.report = decode_report(rf.need("report"));
    cert.runs.push_back(std::move(run));
  }
  if (const Node* fl = f.opt("failure")) {
    Fields ff(*fl, {"window", "n0", "side", "search"});
    res.failure = arg(*fl, 0);
    res.failed_window = count_field(ff.need("window"));
    if (const Node* s = ff.opt("search")) {
      FlattenResult fr;
      fr.failure = "WindowExhausted";
      if (const Node* n0 = ff.opt("n0")) fr.n0 = count_field(*n0);
      if (const Node* side = ff.opt("side")) {
        arity(*side, 1);
        fr.failed_search = side->args[0] == "-" ? "" : side->args[0];
      }
      fr.certificate = search_from(*s);
      res.failed_flatten = std::move(fr);
    }
  }
  return r;
}

Node encode_witness_certificate(const WitnessCertificateRecord& r) {
  Node n = make("certificate", {"witness"});
  n.children.push_back(encode_model(r.model));
  n.children.push_back(vector_list("ys", r.ys));
  n.children.push_back(make("budget", {std::to_string(r.budget)}));
  n.children.push_back(make("threshold", {format_scalar(r.options.threshold)}));
  n.children.push_back(make("min-blocks", {std::to_string(r.options.min_blocks)}));
  n.children.push_back(make("max-blocks", {std::to_string(r.options.max_blocks)}));
  if (!r.options.starts.empty()) n.children.push_back(make("starts", counts(r.options.starts)));
  n.children.push_back(make("found", {r.report.found ? "yes" : "no"}));
  n.children.push_back(make("budget-exhausted", {r.report.budget_exhausted ? "yes" : "no"}));
  n.children.push_back(make("evaluations", {std::to_string(r.report.evaluations)}));
  n.children.push_back(make("start", {std::to_string(r.report.start)}));
  for (const auto& t : r.report.averages) {
    std::vector<std::string> args{format_scalar(t.lambda)};
    for (auto i : t.f) args.push_back(std::to_string(i));
    n.children.push_back(make("average", args));
  }
  n.children.push_back(vector_list("blocks", r.report.vectors));
  n.children.push_back(make("constant", {format_scalar(r.report.constant)}));
  return n;
}

WitnessCertificateRecord decode_witness_certificate(const Node& n) {
  Fields f(n, {"model", "ys", "budget", "threshold", "min-blocks", "max-blocks", "starts", "found", "budget-exhausted",
               "evaluations", "start", "average", "blocks", "constant"});
  WitnessCertificateRecord r;
  r.model = decode_model(f.need("model"));
  r.ys = vectors_from(f.need("ys"));
  r.budget = count_field(f.need("budget"));
  r.options.threshold = scalar_field(f.need("threshold"));
  r.options.min_blocks = count_field(f.need("min-blocks"));
  r.options.max_blocks = count_field(f.need("max-blocks"));
  if (const Node* s = f.opt("starts")) r.options.starts = counts_from(*s);
  r.report.found = yes_from(f.need("found"));
  r.report.budget_exhausted = yes_from(f.need("budget-exhausted"));
  r.report.evaluations = count_field(f.need("evaluations"));
  r.report.start = count_field(f.need("start"));
  for (const auto* a : f.all("average")) {
    AverageTree t;
    t.lambda = scalar_at(arg(*a, 0), *a);
    std::vector<Index> idx;
    for (std::size_t i = 1; i < a->args.size(); ++i) idx.push_back(count_at(a->args[i], *a));
    try {
      t.f = IndexSet(idx);
    } catch (const Error& e) {
      fail(*a, e.detail());
    }
    r.report.averages.push_back(std::move(t));
  }
  r.report.vectors = vectors_from(f.need("blocks"));
  r.report.constant = scalar_field(f.need("constant"));
  return r;
}

Node encode_trace(const TraceRecord& r) {
  const ContradictionTrace& t = r.trace;
  Node n = make("certificate", {"contradiction"});
  n.children.push_back(encode_model(r.model));
  n.children.push_back(make("delta", {format_scalar(t.delta)}));
  n.children.push_back(make("m", {std::to_string(t.m)}));
  n.children.push_back(make("lambda", {format_scalar(t.lambda)}));
  n.children.push_back(make("eps", scalars(t.eps)));
  n.children.push_back(vector_list("zs", t.zs));
  n.children.push_back(vector_list("xs", t.xs));
  n.children.push_back(vector_list("omegas", t.omegas));
  n.children.push_back(make("picks", counts(t.picks)));
  for (const auto& fam : t.families) n.children.push_back(make("family", counts(fam.items())));
  for (const auto& [name, value] : t.recorded) n.children.push_back(make("recorded", {name, format_scalar(value)}));
  return n;
}

TraceRecord decode_trace(const Node& n) {
  Fields f(n, {"model", "delta", "m", "lambda", "eps", "zs", "xs", "omegas", "picks", "family", "recorded"});
  TraceRecord r;
  ContradictionTrace& t = r.trace;
  if (const Node* m = f.opt("model")) {
    r.model = decode_model(*m);
    try {
      t.model = r.model.build();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(*m, e.detail());
    }
  }
  if (const Node* d = f.opt("delta")) t.delta = scalar_field(*d);
  if (const Node* m = f.opt("m")) t.m = count_field(*m);
  if (const Node* l = f.opt("lambda")) t.lambda = scalar_field(*l);
  if (const Node* e = f.opt("eps")) t.eps = scalars_from(*e);
  if (const Node* z = f.opt("zs")) t.zs = vectors_from(*z);
  if (const Node* x = f.opt("xs")) t.xs = vectors_from(*x);
  if (const Node* w = f.opt("omegas")) t.omegas = vectors_from(*w);
  if (const Node* p = f.opt("picks")) t.picks = counts_from(*p);
  for (const auto* fam : f.all("family")) {
    try {
      t.families.emplace_back(counts_from(*fam));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(*fam, e.detail());
    }
  }
  for (const auto* rec : f.all("recorded")) {
    arity(*rec, 2);
    t.recorded.emplace_back(rec->args[0], scalar_at(rec->args[1], *rec));
  }
  return r;
}

}  // namespace wuq

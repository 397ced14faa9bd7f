#include "wuq/schedule.hpp"

#include "wuq/error.hpp"

namespace wuq {

namespace {

// c = 1/32, r = 1/8 passes every clause for all L; the validator is the
// check, see the schedule tests.
const Scalar kDefaultC(1, 32);
const Scalar kDefaultR(1, 8);

Scalar rpow(const Scalar& r, long i) {
  if (i >= 0) return pow(r, static_cast<unsigned>(i));
  return Scalar(1) / pow(r, static_cast<unsigned>(-i));
}

Scalar tilde_rule(const Scalar& eps_p2, std::size_t p, const Scalar& previous) {
  const Scalar a = eps_p2 / Scalar(8 * (static_cast<long>(p) + 1));
  if (p == 0) return a;
  const Scalar b = previous / 4;
  return a < b ? a : b;
}

}  // namespace

Scalar TailDescriptor::eps(long i) const {
  if (i < -1) throw Error(ErrorCode::IndexOutOfRange, "eps index below -1");
  if (kind == Kind::Geometric) return c * rpow(r, i);
  return c * rpow(r, i) / factorial(static_cast<unsigned>(i + 3));
}

std::string TailDescriptor::tag() const {
  return kind == Kind::Geometric ? "geometric" : "factorial-damped";
}

EpsilonSchedule::EpsilonSchedule(std::vector<Scalar> eps, std::vector<Scalar> eps_tilde,
                                 std::optional<TailDescriptor> tail)
    : eps_(std::move(eps)), eps_tilde_(std::move(eps_tilde)), tail_(std::move(tail)) {
  if (eps_tilde_.empty() || eps_.size() != eps_tilde_.size() + 1)
    throw Error(ErrorCode::LengthMismatch, "a schedule stores eps_{-1}..eps_L and eps~_0..eps~_L");
}

Scalar EpsilonSchedule::eps(long i) const {
  if (i < -1) throw Error(ErrorCode::IndexOutOfRange, "eps index below -1");
  if (static_cast<std::size_t>(i + 1) < eps_.size()) return eps_[static_cast<std::size_t>(i + 1)];
  if (!tail_) throw Error(ErrorCode::TailDescriptorMissing, "eps_" + std::to_string(i) + " lies beyond the prefix");
  return tail_->eps(i);
}

Scalar EpsilonSchedule::eps_tilde(std::size_t p) const {
  if (p < eps_tilde_.size()) return eps_tilde_[p];
  Scalar value = eps_tilde_.back();
  for (std::size_t q = eps_tilde_.size(); q <= p; ++q) value = tilde_rule(eps(static_cast<long>(q) + 2), q, value);
  return value;
}

EpsilonSchedule EpsilonSchedule::with_scaled_tilde(const Scalar& factor) const {
  EpsilonSchedule s = *this;
  for (auto& v : s.eps_tilde_) v *= factor;
  return s;
}

EpsilonSchedule build_schedule(std::size_t length) {
  return build_schedule(length, TailDescriptor::factorial_damped(kDefaultC, kDefaultR));
}

EpsilonSchedule build_schedule(std::size_t length, const TailDescriptor& tail) {
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "schedule length must be >= 1");
  std::vector<Scalar> eps, tilde;
  for (long i = -1; i <= static_cast<long>(length); ++i) eps.push_back(tail.eps(i));
  for (std::size_t p = 0; p <= length; ++p)
    tilde.push_back(tilde_rule(tail.eps(static_cast<long>(p) + 2), p, p ? tilde.back() : Scalar(0)));
  return EpsilonSchedule(std::move(eps), std::move(tilde), tail);
}

namespace {

struct TailBounds {
  Scalar eps_sum;            // >= sum_{i>L} eps_i
  Scalar weighted_sum;       // >= sum_{i>L} (4i+2) eps_i
  std::optional<Scalar> uniform_ratio;  // sup_{p>L+1} sum_{i>=p}(4i+2)eps_i / eps_{p-1}, if < infinity
  std::optional<long> first_failure;    // smallest p > L+1 violating the clause, if certified
};

TailBounds tail_bounds(const TailDescriptor& t, long L) {
  TailBounds b;
  const Scalar next = t.eps(L + 1);
  if (t.kind == TailDescriptor::Kind::FactorialDamped) {
    // Ratios of consecutive terms are r/(i+4) and (4i+6)/(4i+2) * r/(i+4),
    // both decreasing in i.
    const Scalar rho_eps = t.r / Scalar(L + 5);
    const Scalar rho = ratio(4 * L + 10, 4 * L + 6) * t.r / Scalar(L + 5);
    if (rho_eps >= 1 || rho >= 1) return b;
    b.eps_sum = next / (1 - rho_eps);
    b.weighted_sum = Scalar(4 * (L + 1) + 2) * next / (1 - rho);
    // For p >= L+2: sum/eps_{p-1} <= (4p+2)/(p+3) * r / (1 - rho) < 4r / (1 - rho).
    b.uniform_ratio = 4 * t.r / (1 - rho);
    return b;
  }
  const Scalar& q = t.r;
  if (q >= 1) return b;
  // sum_{i>=p} (4i+2) q^i = q^p [(4p+2)/(1-q) + 4q/(1-q)^2], exactly.
  auto weighted = [&](long p) -> Scalar { return t.c * rpow(q, p) * (Scalar(4 * p + 2) / (1 - q) + 4 * q / ((1 - q) * (1 - q))); };
  b.eps_sum = next / (1 - q);
  b.weighted_sum = weighted(L + 1);
  for (long p = L + 2; p < L + 2 + 100000; ++p)
    if (weighted(p) >= t.eps(p - 1)) {
      b.first_failure = p;
      break;
    }
  return b;
}

}  // namespace

ScheduleReport validate_schedule(const EpsilonSchedule& s) {
  if (!s.tail()) throw Error(ErrorCode::TailDescriptorMissing, "infinite-sum clauses need a tail descriptor");
  const TailDescriptor& t = *s.tail();
  const long L = static_cast<long>(s.length());
  ScheduleReport report;
  auto add = [&](std::string name, const Scalar& lhs, const Scalar& rhs) {
    report.clauses.push_back({std::move(name), lhs < rhs, rhs > 0 ? 1 - lhs / rhs : Scalar(-1)});
  };
  auto add_ratio = [&](std::string name, const std::optional<Scalar>& ratio) {
    report.clauses.push_back({std::move(name), ratio && *ratio < 1, ratio ? 1 - *ratio : Scalar(-1)});
  };

  bool monotone = true;
  Scalar worst = 1;
  auto step = [&](const Scalar& hi, const Scalar& lo) {
    if (!(lo > 0 && lo < hi)) monotone = false;
    if (hi > 0 && 1 - lo / hi < worst) worst = 1 - lo / hi;
  };
  for (long i = -1; i <= L; ++i) step(i == -1 ? Scalar(1) + s.eps(-1) : s.eps(i - 1), s.eps(i));
  step(s.eps(L), s.eps(L + 1));
  for (long p = 0; p <= L; ++p) step(p == 0 ? Scalar(1) + s.eps_tilde(0) : s.eps_tilde(p - 1), s.eps_tilde(p));
  step(s.eps_tilde(L), s.eps_tilde(L + 1));
  report.clauses.push_back({"monotone decreasing", monotone, monotone ? worst : Scalar(-1)});

  const TailBounds tail = tail_bounds(t, L);
  Scalar total = tail.eps_sum;
  for (long i = -1; i <= L; ++i) total += s.eps(i);
  add("(1.1) first part", total, Scalar(1, 4));

  Scalar suffix = tail.weighted_sum;
  std::vector<Scalar> weighted(L + 2);
  for (long p = L; p >= 0; --p) {
    suffix += Scalar(4 * p + 2) * s.eps(p);
    weighted[p] = suffix;
  }
  for (long p = 0; p <= L; ++p) add("(1.1) second part at p = " + std::to_string(p), weighted[p], s.eps(p - 1));
  add("(1.1) second part at p = " + std::to_string(L + 1), tail.weighted_sum, s.eps(L));
  if (tail.first_failure)
    add("(1.1) second part at p = " + std::to_string(*tail.first_failure), Scalar(1), Scalar(0));
  else
    add_ratio("(1.1) second part for p > " + std::to_string(L + 1), tail.uniform_ratio);

  for (long p = 1; p <= L; ++p)
    add("(1.2) first part at p = " + std::to_string(p), 4 * Scalar(p) * s.eps_tilde(p), s.eps(p + 2));
  // Beyond L the min-rule gives 4p eps~_p <= p/(2(p+1)) eps_{p+2} < eps_{p+2}/2.
  add_ratio("(1.2) first part for p > " + std::to_string(L), Scalar(1, 2));

  // Beyond L the min-rule gives eps~_{j+1} <= eps~_j / 4, so sum_{j>L} <= eps~_L / 3.
  Scalar tilde_suffix = s.eps_tilde(L) / 3;
  std::vector<Scalar> after(L + 1);
  for (long p = L; p >= 0; --p) {
    after[p] = tilde_suffix;
    tilde_suffix += s.eps_tilde(p);
  }
  for (long p = 0; p <= L; ++p) add("(1.2) second part at p = " + std::to_string(p), after[p], s.eps_tilde(p));
  add_ratio("(1.2) second part for p > " + std::to_string(L), Scalar(1, 3));

  report.pass = true;
  const ClauseResult* binding = nullptr;
  for (const auto& c : report.clauses) {
    if (!c.pass) {
      report.pass = false;
      binding = &c;
      break;
    }
    if (!binding || c.margin < binding->margin) binding = &c;
  }
  report.binding = binding->name;
  report.binding_margin = binding->margin;
  return report;
}

}  // namespace wuq

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wuq/blocking.hpp"
#include "wuq/document.hpp"
#include "wuq/pipeline.hpp"
#include "wuq/saturation.hpp"
#include "wuq/schedule.hpp"

namespace wuq {

/// "i:v" arguments, indices strictly ascending. Throws ParseError at the
/// node's location.
FinVec decode_vector_args(const std::vector<std::string>& args, const Node& where);
std::vector<std::string> encode_vector_args(const FinVec& v);

Node encode_vector(const FinVec& v, const std::string& key = "vector");
FinVec decode_vector(const Node& n);

Node encode_matrix(const Matrix& m);
Matrix decode_matrix(const Node& n);

Node encode_schedule(const EpsilonSchedule& s);
/// With only `length` and `tail`, the schedule is built from the descriptor.
EpsilonSchedule decode_schedule(const Node& n);

/// Model record. The covering choice is kept so a decoded record rebuilds
/// the same model.
struct ModelRecord {
  Matrix matrix;
  NormSpec domain = NormSpec::sup();
  NormSpec codomain = NormSpec::sup();
  std::optional<NormSpec> y_norm;
  Scalar covering;
  CoveringChoice choice = CoveringChoice::Supplied;

  std::shared_ptr<const QuotientModel> build(std::uint64_t seed = 7) const;
};

Node encode_model(const ModelRecord& m);
ModelRecord decode_model(const Node& n);
ModelRecord model_record(const QuotientModel& m);

struct SceneRecord {
  ModelRecord model;
  Scene scene;
};

Node encode_scene(const SceneRecord& s);
SceneRecord decode_scene(const Node& n);

Node encode_report(const InequalityReport& r);
InequalityReport decode_report(const Node& n);

Node encode_tree(const AdmissibleTree& t);
AdmissibleTree decode_tree(const Node& n);

/// Certificates: a top-level `certificate <kind> { ... }` node.
struct NormCertificateRecord {
  NormSpec space = NormSpec::sup();
  FinVec vector;
  NormCertificate certificate;
};
Node encode_norm_certificate(const NormCertificateRecord& r);
NormCertificateRecord decode_norm_certificate(const Node& n);

struct ScheduleCertificateRecord {
  EpsilonSchedule schedule;
  ScheduleReport report;
};
Node encode_schedule_certificate(const ScheduleCertificateRecord& r);
ScheduleCertificateRecord decode_schedule_certificate(const Node& n);

struct UncondCertificateRecord {
  SceneRecord scene;
  /// Supplied coefficient sets; empty means the defaults.
  std::vector<std::vector<Scalar>> coefficients;
  ExtractResult result;
};
Node encode_uncond_certificate(const UncondCertificateRecord& r);
UncondCertificateRecord decode_uncond_certificate(const Node& n);

struct WitnessCertificateRecord {
  ModelRecord model;
  std::vector<FinVec> ys;
  std::size_t budget = 0;
  WitnessOptions options;
  SaturationReport report;
};
Node encode_witness_certificate(const WitnessCertificateRecord& r);
WitnessCertificateRecord decode_witness_certificate(const Node& n);

struct TraceRecord {
  ModelRecord model;
  ContradictionTrace trace;
};
Node encode_trace(const TraceRecord& r);
TraceRecord decode_trace(const Node& n);

/// Kind of a certificate node ("norm", "schedule", ...). Throws ParseError.
std::string certificate_kind(const Node& n);

}  // namespace wuq

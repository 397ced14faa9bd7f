#pragma once

#include <string>
#include <vector>

#include "wuq/codec.hpp"

namespace wuq {

/// Outcome of checking one record. `pass` means the record's claims hold;
/// `negative` marks a valid certificate of a legitimate negative outcome.
struct VerifyOutcome {
  std::string kind;
  bool pass = false;
  bool negative = false;
  InequalityReport report;
};

/// Each checker recomputes every cited quantity from the raw data in the
/// record, and the certificate itself from its inputs, comparing the
/// canonical text byte for byte.
VerifyOutcome verify_norm_certificate(const Node& n);
VerifyOutcome verify_schedule_certificate(const Node& n);
VerifyOutcome verify_uncond_certificate(const Node& n);
VerifyOutcome verify_witness_certificate(const Node& n);
VerifyOutcome verify_trace(const Node& n);
/// check_lemma for each id; all of 1.2 .. 1.6b that the scene supports
/// when `lemmas` is empty.
VerifyOutcome verify_scene(const Node& n, const std::vector<std::string>& lemmas);

/// Dispatches on the record type.
VerifyOutcome verify_node(const Node& n, const std::vector<std::string>& lemmas = {});

/// Independent replay of an unconditionality certificate: ramps rebuilt from
/// the plans, the claim bounds, the sign maximum by direct enumeration.
InequalityReport check_uncond_certificate(const Scene& scene, const UncondCertificate& cert);

}  // namespace wuq

// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wuq/wuq.h"

namespace {

struct Failure {
  std::string message;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

/// Prints the output text, writes it to `out_path` when given, and maps the
/// status to an exit code. `text` is taken by reference because it is
/// filled by the call producing `status` in the same argument list.
int finish(int status, wuq_text* const& text, const std::string& out_path) {
  if (status == WUQ_ERROR) {
    std::fprintf(stderr, "%s\n", wuq_last_error());
    return 2;
  }
  const std::string body(wuq_text_data(text), wuq_text_size(text));
  wuq_text_free(text);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << body)) throw Failure{"cannot write '" + out_path + "'"};
  }
  std::fwrite(body.data(), 1, body.size(), stdout);
  return status;
}

/// A vector given inline ("1:1/2 3:-2") or as a file holding a vector record.
std::string vector_record(const std::string& inline_args, const std::string& file) {
  if (!file.empty()) return read_file(file);
  return "vector " + inline_args + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-section experiments on quotients of Schreier-type spaces"};
  app.require_subcommand(1);
  std::uint64_t seed = 7;
  app.add_option("--seed", seed, "Seed for sampled checks");
  app.set_version_flag("--version", std::string(wuq_version()));

  std::string out_path;
  auto add_out = [&](CLI::App* c) { c->add_option("-o,--out", out_path, "Also write the output record to this file"); };

  // norm
  auto* norm = app.add_subcommand("norm", "Coordinate norm of a vector, with witness");
  std::string space = "schreier:1", vec_inline, vec_file;
  norm->add_option("--space", space, "sup, sum or schreier:<level>");
  auto* vi = norm->add_option("--vector", vec_inline, "Inline entries, e.g. \"2:1 3:1\"");
  auto* vf = norm->add_option("file", vec_file, "File holding a vector record");
  vi->excludes(vf);
  add_out(norm);

  // schedule
  auto* sched = app.add_subcommand("schedule", "Build or validate an epsilon schedule");
  std::size_t length = 0;
  std::string tail, tail_c, tail_r, validate_file;
  sched->add_option("--length", length, "Length of a built schedule");
  sched->add_option("--tail", tail, "Tail kind: factorial-damped or geometric")->check(CLI::IsMember({"factorial-damped", "geometric"}));
  sched->add_option("--c", tail_c, "Tail coefficient");
  sched->add_option("--r", tail_r, "Tail ratio");
  sched->add_option("--validate", validate_file, "Validate the schedule record in this file");
  add_out(sched);

  // quotient
  auto* quot = app.add_subcommand("quotient", "Quotient norm, minimal preimage or covering constant");
  std::string model_file, slack;
  bool want_norm = false, want_pre = false, want_cover = false, want_desc = false;
  quot->add_option("model", model_file, "File holding a model record")->required();
  quot->add_flag("--norm", want_norm, "Quotient norm of the vector");
  quot->add_flag("--preimage", want_pre, "Preimage of norm at most slack times the quotient norm");
  quot->add_flag("--covering", want_cover, "Covering constant of the model");
  quot->add_flag("--describe", want_desc, "Canonical model record");
  quot->add_option("--vector", vec_inline, "Inline entries of the vector");
  quot->add_option("--slack", slack, "Rational slack >= 1");
  add_out(quot);

  // extract
  auto* ext = app.add_subcommand("extract", "Extract and certify an unconditional block sequence");
  std::string scene_file, coeff_file;
  ext->add_option("scene", scene_file, "File holding a scene record")->required();
  ext->add_option("--coefficients", coeff_file, "File holding a coefficients record");
  add_out(ext);

  // verify
  auto* ver = app.add_subcommand("verify", "Replay certificates or check a scene");
  std::string doc_file, lemmas;
  ver->add_option("file", doc_file, "Document to verify")->required();
  ver->add_option("--lemma", lemmas, "Comma-separated lemma ids for scenes");
  add_out(ver);

  // saturate
  auto* sat = app.add_subcommand("saturate", "Search 1-averages for a c0 block basis");
  std::string ys_file, threshold;
  std::size_t budget = 100000;
  sat->add_option("model", model_file, "File holding a model record")->required();
  sat->add_option("ys", ys_file, "File holding a ys record")->required();
  sat->add_option("--budget", budget, "Norm evaluations allowed");
  sat->add_option("--threshold", threshold, "c0 constant to reach (default 2)");
  add_out(sat);

  // probe
  auto* probe = app.add_subcommand("probe", "Asymptotic probes");
  probe->require_subcommand(1);
  auto* spread = probe->add_subcommand("spreading", "Sums of spread-out tuples");
  std::size_t k = 4, m = 4;
  std::string starts, depths;
  spread->add_option("ys", ys_file, "File holding a ys record")->required();
  spread->add_option("--space", space, "sup, sum or schreier:<level>");
  spread->add_option("--k", k, "Tuple length (at least 3)");
  spread->add_option("--starts", starts, "Comma-separated start depths");
  add_out(spread);
  auto* fix = probe->add_subcommand("c0-fix", "Stability of corrected preimages");
  fix->add_option("scene", scene_file, "File holding a scene record")->required();
  fix->add_option("--depths", depths, "Comma-separated depths");
  add_out(fix);
  auto* trace = probe->add_subcommand("trace", "Consistent counting-argument trace");
  trace->add_option("--m", m, "Number of picks (even)");
  add_out(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  wuq_set_seed(seed);
  wuq_text* text = nullptr;
  try {
    if (*norm) {
      if (vec_inline.empty() && vec_file.empty()) throw Failure{"norm needs --vector or a file"};
      const std::string v = vector_record(vec_inline, vec_file);
      return finish(wuq_norm(v.c_str(), space.c_str(), &text), text, out_path);
    }
    if (*sched) {
      if (!validate_file.empty()) {
        const std::string s = read_file(validate_file);
        return finish(wuq_schedule_validate(s.c_str(), &text), text, out_path);
      }
      if (length == 0) throw Failure{"schedule needs --length or --validate"};
      if (!tail.empty() && (tail_c.empty() || tail_r.empty())) throw Failure{"--tail needs --c and --r"};
      return finish(wuq_schedule_build(length, opt(tail), opt(tail_c), opt(tail_r), &text), text, out_path);
    }
    if (*quot) {
      if (int(want_norm) + int(want_pre) + int(want_cover) + int(want_desc) != 1)
        throw Failure{"quotient needs exactly one of --norm, --preimage, --covering, --describe"};
      const std::string mtext = read_file(model_file);
      wuq_model* model = nullptr;
      if (wuq_model_create(mtext.c_str(), &model) != WUQ_OK) return finish(WUQ_ERROR, nullptr, "");
      int status;
      const std::string v = vector_record(vec_inline, "");
      if ((want_norm || want_pre) && vec_inline.empty()) {
        wuq_model_free(model);
        throw Failure{"--norm and --preimage need --vector"};
      }
      if (want_norm)
        status = wuq_quotient_norm(model, v.c_str(), &text);
      else if (want_pre)
        status = wuq_min_norm_preimage(model, v.c_str(), opt(slack), &text);
      else if (want_cover)
        status = wuq_covering_constant(model, &text);
      else
        status = wuq_model_describe(model, &text);
      wuq_model_free(model);
      return finish(status, text, out_path);
    }
    if (*ext) {
      const std::string s = read_file(scene_file);
      const std::string c = coeff_file.empty() ? std::string() : read_file(coeff_file);
      return finish(wuq_extract(s.c_str(), coeff_file.empty() ? nullptr : c.c_str(), &text), text, out_path);
    }
    if (*ver) {
      const std::string d = read_file(doc_file);
      return finish(wuq_verify(d.c_str(), opt(lemmas), &text), text, out_path);
    }
    if (*sat) {
      const std::string mt = read_file(model_file), ys = read_file(ys_file);
      return finish(wuq_saturate(mt.c_str(), ys.c_str(), budget, opt(threshold), &text), text, out_path);
    }
    if (*spread) {
      const std::string ys = read_file(ys_file);
      return finish(wuq_probe_spreading(ys.c_str(), space.c_str(), k, opt(starts), &text), text, out_path);
    }
    if (*fix) {
      const std::string s = read_file(scene_file);
      return finish(wuq_probe_c0_fix(s.c_str(), opt(depths), &text), text, out_path);
    }
    if (*trace) return finish(wuq_synthetic_trace(m, &text), text, out_path);
  } catch (const Failure& f) {
    std::fprintf(stderr, "InvalidArgument: %s\n", f.message.c_str());
    return 2;
  }
  return 2;
}

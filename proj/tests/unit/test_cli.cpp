#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run cli(const std::string& args) {
  const std::string cmd = std::string("'") + WUQ_CLI_PATH + "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int w = pclose(p);
  r.status = WIFEXITED(w) ? WEXITSTATUS(w) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string("'") + WUQ_CORPUS_DIR + "/" + name + "'"; }

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wuq_cli_test_" + name)).string();
}

}  // namespace

TEST_CASE("norm") {
  const Run r = cli("norm --space schreier:1 --vector '2:1 3:1'");
  CHECK(r.status == 0);
  CHECK(r.out.find("value 2/1") != std::string::npos);
  CHECK(r.out.find("tree 1 2 3") != std::string::npos);
  const Run f = cli("norm --space schreier:1 " + corpus("e2_e3.vector"));
  CHECK(f.out == r.out);
}

TEST_CASE("input errors exit 2 with a location") {
  const Run r = cli("norm --space sup --vector 1:0/0");
  CHECK(r.status == 2);
  CHECK(r.out.find("ParseError") != std::string::npos);
  CHECK(r.out.find("column") != std::string::npos);
  CHECK(cli("norm").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("verify /nonexistent/file").status == 2);
}

TEST_CASE("schedule") {
  CHECK(cli("schedule --length 16").status == 0);
  const Run g = cli("schedule --validate " + corpus("geometric.schedule"));
  CHECK(g.status == 1);
  CHECK(g.out.find("binding \"(1.1) second part at p = 0\" -1/9") != std::string::npos);
}

TEST_CASE("quotient") {
  const Run n = cli("quotient " + corpus("one_row.model") + " --norm --vector 1:1");
  CHECK(n.status == 0);
  CHECK(n.out.find("value 1/1") != std::string::npos);
  CHECK(cli("quotient " + corpus("one_row.model") + " --preimage --vector 1:2 --slack 2").status == 0);
  CHECK(cli("quotient " + corpus("one_row.model") + " --describe").status == 0);
}

TEST_CASE("extract output verifies") {
  const std::string cert = temp("extract.txt");
  const Run e = cli("extract " + corpus("banded.scene") + " -o '" + cert + "'");
  CHECK((e.status == 0 || e.status == 1));
  REQUIRE(std::filesystem::exists(cert));
  CHECK(cli("verify '" + cert + "'").status == 0);

  // A hand edit to a certified value is caught.
  std::ifstream in(cert);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto at = text.find("measured ");
  if (at != std::string::npos) {
    text.insert(at + 9, "7");
    const std::string edited = temp("edited.txt");
    std::ofstream(edited) << text;
    CHECK(cli("verify '" + edited + "'").status != 0);
  }
}

TEST_CASE("verify lemmas on a scene") {
  CHECK(cli("verify " + corpus("perturbed_lemmas.scene")).status == 0);
  CHECK(cli("verify " + corpus("perturbed_lemmas.scene") + " --lemma 1.4").status == 0);
}

TEST_CASE("saturate and probes") {
  const std::string cert = temp("witness.txt");
  CHECK(cli("saturate " + corpus("schreier64.model") + " " + corpus("units64.ys") + " -o '" + cert + "'").status == 0);
  CHECK(cli("verify '" + cert + "'").status == 0);
  const Run sp = cli("probe spreading " + corpus("units64.ys") + " --space sup --k 4 --starts 8,16");
  CHECK(sp.status == 0);
  CHECK(sp.out.find("c0-like") != std::string::npos);
  const std::string trace = temp("trace.txt");
  CHECK(cli("probe trace --m 4 -o '" + trace + "'").status == 0);
  CHECK(cli("verify '" + trace + "'").status == 0);
}

TEST_CASE("fixed seed gives identical output") {
  const std::string args = "probe c0-fix " + corpus("banded.scene") + " --depths 1,2";
  const Run a = cli("--seed 5 " + args);
  const Run b = cli("--seed 5 " + args);
  CHECK(a.status == b.status);
  CHECK(a.out == b.out);
  const Run x = cli("extract " + corpus("block_diagonal.scene"));
  const Run y = cli("extract " + corpus("block_diagonal.scene"));
  CHECK(x.out == y.out);
}

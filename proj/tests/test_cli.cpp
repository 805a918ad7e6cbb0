#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string g_bin;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = g_bin + " " + args + " 2>&1";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf;
  while (fgets(buf.data(), (int)buf.size(), f)) r.out += buf.data();
  int status = pclose(f);
  r.code = WEXITSTATUS(status);
  return r;
}

bool bin_available() {
  const char* env = std::getenv("IWA_BIN");
  if (!env) return false;
  g_bin = env;
  return true;
}

}  // namespace

TEST_CASE("invariants command: sigma table for the worked example") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  RunResult r = run("invariants --curve 0,0,0,1,-10 --p 5 --sigma0 2,7,13 --format tsv");
  CHECK(r.code == 0);
  CHECK(r.out == "2\t1\t0\t0\n7\t5\t1\t5\n13\t1\t0\t0\n");

  // identical runs are byte-identical (determinism contract)
  RunResult r2 = run("invariants --curve 0,0,0,1,-10 --p 5 --sigma0 2,7,13 --format tsv");
  CHECK(r2.out == r.out);
}

TEST_CASE("exit codes: refusal, precision, input") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  // p = 2 is refused as input
  CHECK(run("invariants --curve 0,0,0,1,-10 --p 2").code == 4);
  // additive at p: hypothesis refusal (E1 twisted by -3 is additive at 3)
  CHECK(run("invariants --curve 0,0,0,9,270 --p 3").code == 2);
  // supersingular refusal
  CHECK(run("invariants --curve 0,0,0,1,0 --p 3").code == 2);
  // unknown label
  CHECK(run("invariants --curve nosuchcurve --p 5").code == 4);
  // undecided classical lambda within a tiny budget
  RunResult kl = run("kl --char kronecker:-14496932 --p 5 --level 2");
  CHECK(kl.code == 3);
  CHECK(kl.out.find("undecided") != std::string::npos);
}

TEST_CASE("kl command computes a certified lambda") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  RunResult r = run("kl --char kronecker:-4 --p 5 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"certified\": true") != std::string::npos);
  CHECK(r.out.find("\"mu\": 0") != std::string::npos);
}

TEST_CASE("transfer command reproduces the worked example") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  RunResult r = run("transfer --curve1 52a1 --curve2 364a1 --p 5 --screen-bound 300 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"lambda_out\": 5") != std::string::npos);
  CHECK(r.out.find("\"schema_version\": 1") != std::string::npos);

  // non-congruent pair: refusal with exit 2
  RunResult bad = run("transfer --curve1 52a1 --curve2 11a1 --p 5 --screen-bound 100");
  CHECK(bad.code == 2);
}

TEST_CASE("catalog round trip") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  RunResult r = run("catalog");
  CHECK(r.code == 0);
  CHECK(r.out.find("52a1") != std::string::npos);
  CHECK(r.out.find("11a1") != std::string::npos);
  CHECK(r.out.find("N=364") != std::string::npos);
}

TEST_CASE("msym-cache builds and reuses the space") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  std::string dir = "./cli_test_cache";
  RunResult r1 = run("msym-cache --n 26 --cache-dir " + dir);
  CHECK(r1.code == 0);
  RunResult r2 = run("msym-cache --n 26 --cache-dir " + dir);
  CHECK(r2.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("cache corruption triggers recompute, never silent reuse") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  std::string dir = "./cli_test_cache2";
  RunResult r1 = run("msym-cache --n 17 --cache-dir " + dir);
  CHECK(r1.code == 0);
  // corrupt the payload (checksum now mismatches)
  {
    std::string path = dir + "/msym_17.txt";
    FILE* f = fopen(path.c_str(), "r+");
    REQUIRE(f != nullptr);
    fseek(f, -4, SEEK_END);
    fputs("9999", f);
    fclose(f);
  }
  RunResult r2 = run("msym-cache --n 17 --cache-dir " + dir);
  CHECK(r2.code == 0);
  CHECK(r2.out == r1.out);  // rebuilt from scratch, same deterministic result
}

TEST_CASE("JSON reports are byte-identical across runs") {
  if (!bin_available()) { MESSAGE("IWA_BIN not set; skipping"); return; }
  std::string cmd = "transfer --curve1 52a1 --curve2 364a1 --p 5 --screen-bound 200 --format json";
  RunResult r1 = run(cmd);
  RunResult r2 = run(cmd);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

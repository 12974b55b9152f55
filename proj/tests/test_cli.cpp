#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(TURANWB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  int status = pclose(pipe);
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = out;
  return r;
}

bool has(const RunResult& r, const std::string& needle) {
  return r.out.find(needle) != std::string::npos;
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

std::string data_path(const char* name) {
  return std::string(TURANWB_DATA_DIR) + "/" + name;
}

std::string temp_path(const char* stem) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path();
  return (dir / (std::string("turanwb_cli_") + stem + std::to_string(counter++) + "_" +
                 std::to_string(::getpid())))
      .string();
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("exact construction values print as rationals") {
  RunResult blow = run(
      "blowup --pattern 'parts=3; weights=1/3,1/3,1/3; edges=112,223,331,123' --target K4-");
  CHECK(blow.code == 0);
  CHECK(blow.out == "16/27\n");

  RunResult dens = run("density --target 4.2 --graph 5:123,234,345,145,125");
  CHECK(dens.code == 0);
  CHECK(dens.out == "1\n");

  RunResult iter = run(
      "iterate --pattern 'parts=2; weights=1/2,1/2; edges=12; recursive=1; directed=1' "
      "--target S3");
  CHECK(iter.code == 0);
  CHECK(iter.out == "3/7\n");
}

TEST_CASE("enumerate lists classes in both formats") {
  RunResult text = run("enumerate --order 4");
  CHECK(text.code == 0);
  CHECK(line_count(text.out) == 5);

  RunResult js = run("enumerate --order 5 --format structured");
  CHECK(js.code == 0);
  CHECK(has(js, "\"count\": 34"));

  RunResult dir = run("enumerate --order 3 --arity 2 --directed");
  CHECK(dir.code == 0);
  CHECK(line_count(dir.out) == 7);

  RunResult forb = run("enumerate --order 5 --forbid K4");
  CHECK(forb.code == 0);
  CHECK(line_count(forb.out) == 23);
}

TEST_CASE("optimizer output reports value and weights") {
  RunResult opt = run(
      "optimize --pattern 'parts=2; weights=1/2,1/2; edges=112' --target edge --tol 1e-8");
  CHECK(opt.code == 0);
  CHECK(has(opt, "value: 0.4444444"));
  CHECK(has(opt, "+-"));
  CHECK(has(opt, "weights: 0.666"));
}

TEST_CASE("geometric construction in exact and sampling modes") {
  RunResult exact = run("geometric --points 4 --exact");
  CHECK(exact.code == 0);
  CHECK(has(exact, " 3/4"));
  CHECK(has(exact, " 1/8"));

  RunResult sample = run("geometric --points 5 --trials 50 --seed 7");
  CHECK(sample.code == 0);
  CHECK(has(sample, "edge "));
  CHECK(has(sample, "+-"));

  RunResult again = run("geometric --points 5 --trials 50 --seed 7");
  CHECK(again.out == sample.out);

  RunResult mode = run("geometric --points 5");
  CHECK(mode.code == 2);
  CHECK(has(mode, "usage error"));
}

TEST_CASE("oracle subcommand emits maxima and sequences") {
  RunResult r = run("oracle --order 4 --target 4.2");
  CHECK(r.code == 0);
  CHECK(has(r, "max_count: 1"));
  CHECK(has(r, "max_density: 1"));
  CHECK(has(r, "witness: "));

  RunResult seq = run("oracle --order 6 --from 4 --target 4.2");
  CHECK(seq.code == 0);
  CHECK(has(seq, "4: 1"));
  CHECK(has(seq, "6: 1"));
}

TEST_CASE("export, round, and verify form a working pipeline") {
  std::string sdpa = temp_path("mantel.sdpa");
  std::string prob = temp_path("mantel.problem.json");
  std::string solution = temp_path("mantel.sol");
  std::string cert = temp_path("mantel.cert.json");

  RunResult exp = run("sdp-export --order 3 --arity 2 --forbid 3:12,13,23 --target 2:12 --out " +
                      sdpa + " --problem-out " + prob);
  CHECK(exp.code == 0);
  CHECK(has(exp, "3 constraints, 1 types"));
  CHECK(std::filesystem::exists(sdpa));
  CHECK(std::filesystem::exists(prob));

  {
    std::ofstream os(solution);
    os << "0.5 0.5 -0.5 0.5\n";
  }
  RunResult rnd = run("sdp-round --problem " + prob + " --solution " + solution + " --out " +
                      cert);
  CHECK(rnd.code == 0);
  CHECK(has(rnd, "bound: 1/2"));

  RunResult ver = run("verify --cert " + cert + " --problem " + prob);
  CHECK(ver.code == 0);
  CHECK(has(ver, "valid: bound 1/2"));

  for (const auto& p : {sdpa, prob, solution, cert}) std::filesystem::remove(p);
}

TEST_CASE("verify rejects a tampered certificate with a diagnostic") {
  std::string cert_text = slurp(data_path("mantel_n3.cert.json"));
  auto pos = cert_text.find("\"bound\": \"1/2\"");
  REQUIRE(pos != std::string::npos);
  cert_text.replace(pos, 14, "\"bound\": \"9/20\"");
  std::string tampered = temp_path("tampered.cert.json");
  {
    std::ofstream os(tampered);
    os << cert_text;
  }

  RunResult good = run("verify --cert " + data_path("mantel_n3.cert.json") + " --problem " +
                       data_path("mantel_n3.problem.json"));
  CHECK(good.code == 0);
  CHECK(has(good, "valid: bound 1/2"));

  RunResult bad = run("verify --cert " + tampered + " --problem " +
                      data_path("mantel_n3.problem.json"));
  CHECK(bad.code == 1);
  CHECK(has(bad, "invalid:"));
  CHECK(has(bad, "exceeds"));
  CHECK(has(bad, "recomputed bound 1/2"));
  std::filesystem::remove(tampered);
}

TEST_CASE("bad invocations exit two, bad inputs exit one") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("enumerate").code == 2);               // missing --order
  CHECK(run("enumerate --order 4 --arity 5").code == 2);
  CHECK(run("optimize --pattern 'parts=1; weights=1; edges=' --target edge --tol 1e-20").code ==
        2);

  RunResult graph = run("density --target 4.2 --graph nope");
  CHECK(graph.code == 2);
  CHECK(has(graph, "usage error"));

  RunResult missing = run("verify --cert /nonexistent.cert --problem /nonexistent.problem");
  CHECK(missing.code == 1);
  CHECK(has(missing, "error:"));

  // an order past the enumeration cap fails at compute time, not parse time
  RunResult cap = run("enumerate --order 9 --arity 3");
  CHECK(cap.code == 1);
  CHECK(has(cap, "error:"));
}

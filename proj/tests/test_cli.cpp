#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
};

std::string cli() {
  const char* p = std::getenv("HWCT_CLI");
  REQUIRE(p != nullptr);
  return p;
}

// Run a shell command, capturing stdout; stderr is discarded.
RunResult run(const std::string& args) {
  const std::string cmd = args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

size_t count_lines(const std::string& s) {
  size_t c = 0;
  for (char ch : s)
    if (ch == '\n') ++c;
  return c;
}

std::filesystem::path work_dir() {
  const auto d = std::filesystem::temp_directory_path() / "hwct_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

std::vector<char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("usage errors exit with code 2", "[cli]") {
  CHECK(run(cli()).rc == 2);
  CHECK(run(cli() + " frobnicate").rc == 2);
  CHECK(run(cli() + " scan").rc == 2);                       // missing required flags
  CHECK(run(cli() + " build").rc == 2);                      // missing --limit
  CHECK(run(cli() + " verify 125").rc == 2);                 // missing offset and --ell
  CHECK(run(cli() + " --help").rc == 0);
  CHECK(run(cli() + " --version").rc == 0);
}

TEST_CASE("build produces a loadable file and verify round-trips", "[cli]") {
  const auto dir = work_dir();
  const auto t5 = (dir / "t5.hwct").string();
  const auto r = run(cli() + " build --limit 200000 --mod 5 --out " + t5);
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("\"event\":\"built\"") != std::string::npos);
  CHECK(r.out.find("\"table_checksum\":\"") != std::string::npos);

  const auto v = run(cli() + " verify 125 25 --ell 5 --table " + t5);
  CHECK(v.rc == 0);
  CHECK(v.out.find("\"holds\":true") != std::string::npos);

  const auto bad = run(cli() + " verify 125 26 --ell 5 --table " + t5);
  CHECK(bad.rc == 1);
  CHECK(bad.out.find("\"holds\":false") != std::string::npos);

  // the environment variable substitutes for --table
  const auto env = run("HWCT_TABLE=" + t5 + " " + cli() + " verify 125 100 --ell 5");
  CHECK(env.rc == 0);
  CHECK(env.out.find("\"holds\":true") != std::string::npos);

  // a residue table for one modulus cannot answer questions about another
  CHECK(run(cli() + " verify 343 147 --ell 7 --table " + t5).rc == 2);
}

TEST_CASE("build is byte-identical across worker counts", "[cli]") {
  const auto dir = work_dir();
  const auto w1 = (dir / "w1.hwct").string();
  const auto w8 = (dir / "w8.hwct").string();
  REQUIRE(run(cli() + " build --limit 3000000 --mod 5 --workers 1 --out " + w1).rc == 0);
  REQUIRE(run(cli() + " build --limit 3000000 --mod 5 --workers 8 --out " + w8).rc == 0);
  CHECK(slurp(w1) == slurp(w8));
}

TEST_CASE("a zero-limit build is a minimal valid table", "[cli]") {
  const auto dir = work_dir();
  const auto mini = (dir / "mini.hwct").string();
  REQUIRE(run(cli() + " build --limit 0 --out " + mini).rc == 0);
  CHECK(std::filesystem::file_size(mini) == 59);  // header + one entry + checksum
  CHECK(run(cli() + " scan --ell 5 --a-max 1 --table " + mini).rc == 0);
}

TEST_CASE("build rejects contradictory mode flags", "[cli]") {
  const auto out = (work_dir() / "x.hwct").string();
  CHECK(run(cli() + " build --limit 10 --mod 5 --exact --out " + out).rc == 2);
  CHECK(run(cli() + " build --limit 10 --mod 6 --out " + out).rc == 2);  // bad modulus
}

TEST_CASE("scan rediscovers known progressions and stays silent otherwise", "[cli]") {
  const auto t5 = (work_dir() / "t5.hwct").string();
  if (!std::filesystem::exists(t5))
    REQUIRE(run(cli() + " build --limit 200000 --mod 5 --out " + t5).rc == 0);

  const auto r = run(cli() + " scan --ell 5 --a-max 128 --table " + t5);
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("\"a\":125,\"b\":25") != std::string::npos);
  CHECK(r.out.find("\"a\":27,\"b\":9") != std::string::npos);

  const auto empty = run(cli() + " scan --ell 5 --a-max 4 --table " + t5);
  CHECK(empty.rc == 0);
  CHECK(empty.out.empty());
}

TEST_CASE("explain reports the forcing local factor", "[cli]") {
  const auto r = run(cli() + " explain 27 9 --ell 5");
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("\"status\":\"forced\"") != std::string::npos);
  CHECK(r.out.find("\"witness_prime\":3") != std::string::npos);

  const auto pp = run(cli() + " explain 3125 625 --ell 5");
  REQUIRE(pp.rc == 0);
  CHECK(pp.out.find("\"forced\":true") != std::string::npos);

  const auto open = run(cli() + " explain 11 3 --ell 5");
  REQUIRE(open.rc == 0);
  CHECK(open.out.find("\"status\":\"not-explained\"") != std::string::npos);
}

TEST_CASE("damaged table files exit with the I/O code", "[cli]") {
  const auto dir = work_dir();
  const auto good = dir / "good.hwct";
  REQUIRE(run(cli() + " build --limit 50000 --mod 5 --out " + good.string()).rc == 0);

  auto bytes = slurp(good);
  bytes[bytes.size() / 2] ^= 0x5a;  // payload corruption breaks the digest
  const auto corrupt = dir / "corrupt.hwct";
  std::ofstream(corrupt, std::ios::binary).write(bytes.data(), static_cast<long>(bytes.size()));
  CHECK(run(cli() + " verify 125 25 --ell 5 --table " + corrupt.string()).rc == 3);

  const auto trunc = dir / "trunc.hwct";
  std::ofstream(trunc, std::ios::binary).write(bytes.data(), 40);
  CHECK(run(cli() + " verify 125 25 --ell 5 --table " + trunc.string()).rc == 3);

  CHECK(run(cli() + " verify 125 25 --ell 5 --table " + (dir / "absent.hwct").string()).rc == 3);
  CHECK(run(cli() + " build --limit 10 --out /nonexistent-dir/x.hwct").rc == 3);
}

TEST_CASE("holproj fits the level-one stream", "[cli]") {
  const auto r = run(cli() + " holproj 1 0 --n-check 40");
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("\"ok\":true") != std::string::npos);
  CHECK(r.out.find("-1/36") != std::string::npos);
  CHECK(r.out.find("\"n_verified\":38") != std::string::npos);

  CHECK(run(cli() + " holproj 5 3 --n-check 5").rc == 2);  // -3 is not a square mod 5
}

TEST_CASE("selftest passes and reports the constant exactly once", "[cli]") {
  const auto r = run(cli() + " selftest");
  REQUIRE(r.rc == 0);
  size_t pos = 0, hits = 0;
  while ((pos = r.out.find("kappa_report", pos)) != std::string::npos) {
    ++hits;
    ++pos;
  }
  CHECK(hits == 1);
  CHECK(r.out.find("\"kappa\":-1") != std::string::npos);
  CHECK(count_lines(r.out) >= 10);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"

namespace tcsp {
namespace {

namespace fs = std::filesystem;

const std::string seed_a(64, 'a');
const std::string seed_b(64, 'b');

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tcsp");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tcsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, TwinRoundTrip) {
  const Bytes message{'b', 'r', 'a', 'i', 'd', '\n', 0, 0xff};
  write_file(path("msg"), message);
  ASSERT_EQ(run({"keygen", "--scheme", "twin", "--out", path("k"), "--seed", seed_a}).code, 0);
  ASSERT_EQ(run({"encrypt", "--pk", path("k.pub"), "--in", path("msg"), "--out", path("ct"), "--seed", seed_b}).code, 0);
  ASSERT_EQ(run({"decrypt", "--sk", path("k.sec"), "--in", path("ct"), "--out", path("back")}).code, 0);
  EXPECT_EQ(read_file(path("back")), message);
}

TEST_F(CliTest, CsRoundTripToStdout) {
  write_file(path("msg"), Bytes{'o', 'k'});
  ASSERT_EQ(run({"keygen", "--scheme", "cs", "--out", path("k"), "--seed", seed_a, "--l", "4", "--r", "5"}).code, 0);
  ASSERT_EQ(run({"encrypt", "--pk", path("k.pub"), "--in", path("msg"), "--out", path("ct")}).code, 0);
  const Result r = run({"decrypt", "--sk", path("k.sec"), "--in", path("ct")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok");
}

TEST_F(CliTest, TamperedCiphertextExitsThree) {
  write_file(path("msg"), Bytes(100, 'x'));
  ASSERT_EQ(run({"keygen", "--out", path("k"), "--seed", seed_a}).code, 0);
  ASSERT_EQ(run({"encrypt", "--pk", path("k.pub"), "--in", path("msg"), "--out", path("ct"), "--seed", seed_b}).code, 0);
  Bytes ct = read_file(path("ct"));
  ct.back() ^= 0x01;
  write_file(path("ct"), ct);
  const Result r = run({"decrypt", "--sk", path("k.sec"), "--in", path("ct"), "--out", path("back")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("authentication"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("back")));
}

TEST_F(CliTest, WrongKeyExitsThree) {
  write_file(path("msg"), Bytes{'m'});
  ASSERT_EQ(run({"keygen", "--out", path("a"), "--seed", seed_a}).code, 0);
  ASSERT_EQ(run({"keygen", "--out", path("b"), "--seed", seed_b}).code, 0);
  ASSERT_EQ(run({"encrypt", "--pk", path("a.pub"), "--in", path("msg"), "--out", path("ct")}).code, 0);
  EXPECT_EQ(run({"decrypt", "--sk", path("b.sec"), "--in", path("ct")}).code, 3);
}

TEST_F(CliTest, MalformedInputExitsTwo) {
  write_file(path("junk"), Bytes{'n', 'o', 'p', 'e'});
  EXPECT_EQ(run({"inspect", path("junk")}).code, 2);
  EXPECT_EQ(run({"inspect", path("missing")}).code, 2);
  ASSERT_EQ(run({"keygen", "--out", path("k"), "--seed", seed_a}).code, 0);
  Bytes key = read_file(path("k.pub"));
  key[7] = 0x02;
  write_file(path("k2.pub"), key);
  const Result r = run({"encrypt", "--pk", path("k2.pub"), "--in", path("k.pub"), "--out", path("ct")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("offset 7"), std::string::npos) << r.err;
}

TEST_F(CliTest, KeygenIsDeterministicUnderSeed) {
  ASSERT_EQ(run({"keygen", "--out", path("a"), "--seed", seed_a}).code, 0);
  ASSERT_EQ(run({"keygen", "--out", path("b"), "--seed", seed_a}).code, 0);
  ASSERT_EQ(run({"keygen", "--out", path("c"), "--seed", seed_b}).code, 0);
  EXPECT_EQ(read_file(path("a.sec")), read_file(path("b.sec")));
  EXPECT_NE(read_file(path("a.sec")), read_file(path("c.sec")));
}

TEST_F(CliTest, InspectDescribesFiles) {
  ASSERT_EQ(run({"keygen", "--out", path("k"), "--seed", seed_a}).code, 0);
  const Result r = run({"inspect", path("k.pub")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("scheme=twin kind=public l=8 r=8 W=16"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("X2:"), std::string::npos);
}

TEST(Cli, TrapdoorDemoSummary) {
  const Result r = run({"trapdoor-demo", "--trials", "50", "--seed", seed_a});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("trials=50 completeness=100.00% half-dishonest-rejection=100.00%"), std::string::npos) << r.out;
}

TEST(Cli, ReduceDemoSummary) {
  const Result r = run({"reduce-demo", "--queries", "12", "--seed", seed_a});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("queries=12 oracle-agreement=100.00%"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("outcome=success ground-truth-match=yes"), std::string::npos);
}

TEST(Cli, KexDemoIsDeterministic) {
  const Result a = run({"kex-demo", "--seed", seed_a});
  const Result b = run({"kex-demo", "--mode", "socketpair", "--seed", seed_a});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("keys match: yes"), std::string::npos);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"kex-demo", "--nike", "--seed", seed_a}).code, 0);
  EXPECT_EQ(run({"kex-demo", "--no-confirm", "--seed", seed_a}).code, 0);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({"keygen", "--bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"kex-demo", "--mode", "carrier-pigeon"}).code, 1);
  EXPECT_EQ(run({"trapdoor-demo", "--seed", "xyz"}).code, 1);
  EXPECT_EQ(run({"keygen", "--out", "/tmp/x", "--scheme", "rsa"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace tcsp

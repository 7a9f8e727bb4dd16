#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "latticeforge/cli.hpp"

using namespace latticeforge;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "latticeforge");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() / ("lf_cli_" + std::to_string(::getpid()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_F(CliTest, PresentFfAndValidate) {
  auto r = call({"present", "ff", "--p", "5", "--places", "2,3,4", "--out", path("g.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto P = deserialize_json(read_file(path("g.json")));
  EXPECT_EQ(P.squares.size(), 27u);
  auto v = call({"validate", "--in", path("g.json")});
  EXPECT_EQ(v.code, 0) << v.err;
  auto j = nlohmann::json::parse(v.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["pairs"].size(), 3u);
  auto l = call({"link", "--in", path("g.json"), "--json", path("link.json")});
  EXPECT_EQ(l.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(read_file(path("link.json")))["pass"].get<bool>());
}

TEST_F(CliTest, TextOutputListsWords) {
  auto r = call({"present", "hurwitz", "--primes", "3,5", "--text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(" = 1"), std::string::npos);
  auto k = call({"present", "hurwitz", "--primes", "3", "--unit", "k", "--text"});
  EXPECT_EQ(k.code, 0);
  EXPECT_NE(k.out, call({"present", "hurwitz", "--primes", "3", "--text"}).out);
}

TEST_F(CliTest, DoubleFailsOnBrokenLink) {
  auto P = cyclic_complex({2, 2});
  P.squares.push_back(P.squares[0]);
  write_file(path("bad.json"), serialize_json(P));
  EXPECT_EQ(call({"link", "--in", path("bad.json")}).code, 1);
  auto d = call({"double", "--in", path("bad.json")});
  EXPECT_EQ(d.code, 1);
  EXPECT_NE(d.err.find("error[LinkFailure]"), std::string::npos);
  EXPECT_EQ(call({"validate", "--in", path("bad.json")}).code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"present", "ff", "--p", "5"}).code, 2);
  EXPECT_EQ(call({"present", "hurwitz", "--primes", "3", "--unit", "j"}).code, 2);
  EXPECT_EQ(call({"cyclic", "--sizes", "3,2"}).code, 2);
  EXPECT_EQ(call({"validate", "--in", path("missing.json")}).code, 2);
  write_file(path("junk.json"), "{not json");
  EXPECT_EQ(call({"validate", "--in", path("junk.json")}).code, 2);
  auto future = to_json(cyclic_complex({2, 2}));
  future["version"] = 2;
  write_file(path("future.json"), future.dump());
  EXPECT_EQ(call({"validate", "--in", path("future.json")}).code, 2);
  auto r = call({"present", "ff", "--p", "4", "--places", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error[", 0), 0u);
}

TEST_F(CliTest, QuotientAndSpectrum) {
  ASSERT_EQ(call({"present", "hurwitz", "--primes", "5", "--out", path("h.json")}).code, 0);
  auto q = call({"quotient", "--in", path("h.json"), "--mod", "11", "--out", path("h.adj"), "--dot", path("h.dot")});
  ASSERT_EQ(q.code, 0) << q.err;
  auto j = nlohmann::json::parse(q.out);
  EXPECT_EQ(j["vertices"].get<int>(), 660);
  EXPECT_EQ(j["psl2_order"].get<int>(), 660);
  EXPECT_TRUE(fs::exists(path("h.dot")));
  auto s = call({"spectrum", "--in", path("h.adj"), "--csv", path("h.csv")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(nlohmann::json::parse(s.out)["pass"].get<bool>());
  EXPECT_EQ(read_file(path("h.csv")).rfind("direction,index,eigenvalue\n", 0), 0u);
  // 2 ramifies; 5 is a lattice prime
  EXPECT_EQ(call({"quotient", "--in", path("h.json"), "--mod", "2", "--out", path("x.adj")}).code, 2);
  EXPECT_EQ(call({"quotient", "--in", path("h.json"), "--mod", "5", "--out", path("x.adj")}).code, 2);
  // no quotient for cyclic complexes
  ASSERT_EQ(call({"cyclic", "--sizes", "2,2", "--out", path("c.json")}).code, 0);
  EXPECT_EQ(call({"quotient", "--in", path("c.json"), "--mod", "7", "--out", path("x.adj")}).code, 2);
}

TEST_F(CliTest, FunctionFieldQuotient) {
  ASSERT_EQ(call({"present", "ff", "--p", "3", "--places", "1,2", "--out", path("f.json")}).code, 0);
  auto q = call({"quotient", "--in", path("f.json"), "--mod", "t^2+1", "--out", path("f.adj")});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(nlohmann::json::parse(q.out)["field_size"].get<int>(), 9);
  EXPECT_EQ(call({"quotient", "--in", path("f.json"), "--mod", "t^2+2", "--out", path("x.adj")}).code, 2);
  auto s = call({"spectrum", "--in", path("f.adj"), "--eigenvalues"});
  ASSERT_EQ(s.code, 0) << s.err;
  auto j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j["directions"].size(), 2u);
}

TEST_F(CliTest, OutputsAreDeterministic) {
  for (int k = 0; k < 2; ++k) {
    const std::string sfx = std::to_string(k);
    ASSERT_EQ(call({"present", "ff", "--p", "3", "--places", "1,2", "--out", path("f" + sfx + ".json")}).code, 0);
    ASSERT_EQ(call({"double", "--in", path("f" + sfx + ".json"), "--out", path("d" + sfx + ".json")}).code, 0);
    ASSERT_EQ(call({"quotient", "--in", path("f" + sfx + ".json"), "--mod", "t^2+1", "--out", path("f" + sfx + ".adj"), "--json", path("q" + sfx + ".json")}).code, 0);
    ASSERT_EQ(call({"spectrum", "--in", path("f" + sfx + ".adj"), "--csv", path("s" + sfx + ".csv"), "--json", path("s" + sfx + ".json")}).code, 0);
  }
  for (std::string f : {"f%.json", "d%.json", "f%.adj", "q%.json", "s%.csv", "s%.json"}) {
    auto a = f, b = f;
    a.replace(a.find('%'), 1, "0");
    b.replace(b.find('%'), 1, "1");
    EXPECT_EQ(read_file(path(a)), read_file(path(b))) << f;
  }
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string exe = LF_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("cyclic --sizes 4,6 --out " + path("c.json")), 0);
  EXPECT_EQ(status("link --in " + path("c.json")), 0);
  EXPECT_EQ(status("cyclic --sizes 5"), 2);
  EXPECT_EQ(status("--help"), 0);
}

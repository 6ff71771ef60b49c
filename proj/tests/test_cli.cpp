#include <gtest/gtest.h>

#include <json.hpp>
#include <k3lat/cli.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "k3lat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = k3lat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class LatticeFile {
 public:
  explicit LatticeFile(const std::string& json) {
    path_ = std::filesystem::temp_directory_path() /
            ("k3lat_cli_test_" + std::to_string(std::hash<std::string>{}(json)) + ".json");
    std::ofstream(path_) << json;
  }
  ~LatticeFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

const char* kPencil = R"({"basis": ["E","F","R"], "gram": [[0,2,1],[2,0,1],[1,1,-2]]})";
const char* kPlane = R"({"basis": ["F","G"], "gram": [[2,"n"],["n",4]], "parameter": "n"})";

}  // namespace

TEST(Cli, HilbClassExample) {
  const auto r = run({"hilb", "class", "--m", "1", "--g0", "3", "--pa", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["w"], "H - 2*e");
  EXPECT_EQ(j["slope"], "1/2");
  EXPECT_EQ(j["q"], "4");
}

TEST(Cli, RhoSingExample) {
  const auto r = run({"bn", "rho-sing", "--pa", "4", "--r", "1", "--d", "2", "--g", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["rho_sing"], "0");
  EXPECT_EQ(r.json()["nonexistence_triggered"], false);
}

TEST(Cli, DecimalAddsButDoesNotReplace) {
  const auto exact = run({"bn", "bounds", "--pa", "9", "--d", "3"});
  const auto dec = run({"bn", "bounds", "--pa", "9", "--d", "3", "--decimal"});
  ASSERT_EQ(exact.code, 0) << exact.err;
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_NE(dec.out, exact.out);
  EXPECT_NE(dec.out.find("sqrt(1/4)"), std::string::npos);
  EXPECT_NE(exact.out.find("sqrt(1/4)"), std::string::npos);
}

TEST(Cli, IdenticalArgvGivesIdenticalOutput) {
  const std::vector<std::vector<std::string>> cmds{
      {"verify"}, {"bn", "bounds", "--pa", "56", "--n", "12"}, {"hilb", "class", "--m", "2", "--g0", "5", "--pa", "9"}};
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run({"verify"}).code, 0);
  EXPECT_EQ(run({"verify", "--case", "plane", "--param", "8"}).code, 0);
  EXPECT_EQ(run({"verify", "--case", "pencils", "--param", "3,2"}).code, 0);
  EXPECT_EQ(run({"verify", "--case", "pencils", "--param", "9"}).code, 0);
  EXPECT_EQ(run({"verify", "--case", "bundle", "--param", "4", "--perturb", "0,1,1"}).code, 1);
  EXPECT_EQ(run({"verify", "--case", "nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "--case", "quartic", "--pretty"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"hilb", "class", "--m", "x", "--g0", "3", "--pa", "7"}).code, 2);
  EXPECT_EQ(run({"bn", "bounds", "--pa", "9", "--n", "6", "--d", "3"}).code, 2);
  EXPECT_EQ(run({"lattice", "info", "/nonexistent/lattice.json"}).code, 2);
  EXPECT_EQ(run({"bn", "rho-sing", "--pa", "4", "--r", "1", "--d", "2", "--g", "9"}).code, 2);
}

TEST(Cli, LatticeInfoAndEnumerate) {
  LatticeFile f(kPencil);
  const auto info = run({"lattice", "info", f.path()});
  ASSERT_EQ(info.code, 0) << info.err;
  EXPECT_EQ(info.json()["rank"], 3);
  const auto en = run({"lattice", "enumerate", f.path(), "--square", "-2", "--against", "E+F+R", "--lo", "0",
                       "--hi", "3", "--constraint", "E<0"});
  ASSERT_EQ(en.code, 0) << en.err;
  EXPECT_EQ(en.json()["complete"], true);
  ASSERT_EQ(en.json()["solutions"].size(), 1u);
  EXPECT_EQ(en.json()["solutions"][0]["class"], "-R");
}

TEST(Cli, SymbolicLatticeNeedsAParameterForEnumeration) {
  LatticeFile f(kPlane);
  const auto info = run({"lattice", "info", f.path()});
  ASSERT_EQ(info.code, 0) << info.err;
  EXPECT_EQ(info.json()["determinant"], "8 - n^2");
  EXPECT_EQ(run({"lattice", "enumerate", f.path(), "--square", "-2", "--against", "G", "--lo", "0", "--hi", "1"}).code,
            2);
  EXPECT_EQ(run({"lattice", "enumerate", f.path(), "--square", "-2", "--against", "G", "--lo", "0", "--hi", "1",
                 "--param", "7"})
                .code,
            0);
}

TEST(Cli, K3Subcommands) {
  LatticeFile f(kPencil);
  const auto nef = run({"k3", "nef", f.path(), "--class", "E+F+2*R", "--witness", "E+F", "--bound", "8"});
  ASSERT_EQ(nef.code, 0) << nef.err;
  EXPECT_EQ(nef.json()["status"], "counterexample");
  const auto refl = run({"k3", "reflect-to-nef", f.path(), "--class", "E+F+2*R", "--witness", "E+F+R"});
  ASSERT_EQ(refl.code, 0) << refl.err;
  EXPECT_EQ(refl.json()["converged"], true);
  const auto dec = run({"k3", "decompose", f.path(), "--class", "E+F+R", "--witness", "E", "--witness", "F",
                        "--witness", "E+F+R", "--root", "R", "--box", "3"});
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(dec.json()["pairs"].size(), 3u);
  const auto flags = run({"k3", "bpf-flags", f.path(), "--class", "E+F+R", "--witness", "E+F+R"});
  ASSERT_EQ(flags.code, 0) << flags.err;
}

TEST(Cli, InvolutionOnASymbolicLattice) {
  LatticeFile f(kPlane);
  const auto r = run({"hilb", "involution", f.path(), "--class", "2*F - 3*e", "--G", "G"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["image"], "-2*F + (-6 + 2*n)*G + (9 - 2*n)*e");
  EXPECT_EQ(r.json()["q"], "-10");
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

namespace grushin::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "grushin");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

// Second line, given column of a single-row CSV result.
std::string csv_field(const std::string& csv, const std::string& column) {
  std::istringstream is(csv);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(tok);
    return out;
  };
  const auto h = split(header), r = split(row);
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k] == column) return r.at(k);
  }
  return "<missing>";
}

class CliFileTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("grushin_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(CliTest, QuasidistanceExamples) {
  auto r = invoke({"quasidistance", "--alpha", "2", "--z1", "0,0", "--z2", "0,1"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(csv_field(r.out, "quasidistance"), "1");
  EXPECT_EQ(csv_field(r.out, "branch"), "vertical_power");

  r = invoke({"--alpha", "2", "quasidistance", "--z1", "1,0", "--z2", "3,4"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(csv_field(r.out, "quasidistance"), "2");
  EXPECT_EQ(csv_field(r.out, "branch"), "horizontal");
}

TEST(CliTest, MalformedCoordinatesAreBadArguments) {
  for (const char* bad : {"a,b", "1", "1,2,3", "1,", "nan,0", "1;2"}) {
    const auto r = invoke({"quasidistance", "--z1", bad, "--z2", "0,1"});
    EXPECT_EQ(r.code, kBadArguments) << bad;
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(invoke({"quasidistance", "--z1", "0,0"}).code, kBadArguments);
  EXPECT_EQ(invoke({"nosuchcommand"}).code, kBadArguments);
  EXPECT_EQ(invoke({"compare", "--norm", "l2"}).code, kBadArguments);
}

TEST(CliTest, PreconditionViolations) {
  EXPECT_EQ(invoke({"quasidistance", "--alpha", "0", "--z1", "0,0", "--z2", "0,1"}).code,
            kPreconditionViolation);
  EXPECT_EQ(invoke({"ccdist", "--z1", "5,0", "--z2", "0,0"}).code, kPreconditionViolation);
  EXPECT_EQ(invoke({"compare", "--region", "0,0,0,1", "--samples", "3"}).code,
            kPreconditionViolation);
  EXPECT_EQ(invoke({"qs", "--samples", "0"}).code, kPreconditionViolation);
  EXPECT_EQ(invoke({"semmes", "--beta", "-1", "--z1", "0,0", "--z2", "1,0"}).code,
            kPreconditionViolation);
}

TEST(CliTest, CcdistExamples) {
  auto r = invoke({"ccdist", "--alpha", "2", "--z1", "0,0", "--z2", "0,1", "--resolution", "128"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NEAR(std::stod(csv_field(r.out, "staircase")), 2.82843, 5e-6);
  EXPECT_EQ(csv_field(r.out, "branch"), "INTERIOR_OPTIMUM");

  r = invoke({"ccdist", "--z1", "1,0", "--z2", "1,0", "--resolution", "64"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(csv_field(r.out, "staircase"), "0");
  EXPECT_EQ(csv_field(r.out, "grid"), "0");
}

TEST(CliTest, JacobianExamples) {
  auto r = invoke({"jacobian", "--beta", "-1"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NE(r.out.find("regime=PAPER_RANGE"), std::string::npos);
  EXPECT_NE(r.out.find("derived_alpha=2 "), std::string::npos);
  EXPECT_NE(r.out.find("slope=-1"), std::string::npos);

  r = invoke({"jacobian", "--beta", "0"});
  EXPECT_NE(r.out.find("regime=TRIVIAL_IDENTITY"), std::string::npos);

  r = invoke({"jacobian", "--beta", "-3", "--format", "json"});
  ASSERT_EQ(r.code, kSuccess);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["regime"], "OPEN");
  EXPECT_FALSE(j.contains("density"));
  EXPECT_EQ(j["summary"]["acl_integrable"], false);
}

TEST(CliTest, AclAndSemmes) {
  auto r = invoke({"acl", "--t", "1", "2", "3", "--format", "json"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["acl"].size(), 3u);
  EXPECT_EQ(j["acl"][0]["integrable"], true);
  EXPECT_EQ(j["acl"][0]["integral"], 2.0);
  EXPECT_EQ(j["acl"][1]["integrable"], false);
  EXPECT_EQ(j["acl"][2]["divergence_certified"], true);

  r = invoke({"semmes", "--beta", "0", "--z1", "0,0", "--z2", "1,0", "--samples", "100000"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NEAR(std::stod(csv_field(r.out, "delta")), 1.77245, 0.01);
}

TEST(CliTest, HelpDocumentsSchemas) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("sample_id,z1_x,z1_y,z2_x,z2_y,quasidistance,staircase,grid,ratio"),
            std::string::npos);
}

TEST_F(CliFileTest, CompareIsDeterministic) {
  const auto run_seed = [&](const std::string& seed, const std::string& name) {
    const auto path = (dir_ / name).string();
    const auto r = invoke({"compare", "--samples", "200", "--resolution", "64", "--seed", seed,
                           "--out", path});
    EXPECT_EQ(r.code, kSuccess) << r.err;
    return slurp(path);
  };
  const auto a = run_seed("1", "a.csv");
  const auto b = run_seed("2", "b.csv");
  const auto c = run_seed("1", "c.csv");
  EXPECT_EQ(a, c);
  EXPECT_NE(a, b);
  EXPECT_EQ(a.rfind("sample_id,z1_x,z1_y,z2_x,z2_y,quasidistance,staircase,grid,ratio\n", 0), 0u);
  EXPECT_NE(a.find("# summary ratio_min="), std::string::npos);
  EXPECT_NE(a.find(" C="), std::string::npos);
  // Only the final files remain.
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}), 3);
}

TEST_F(CliFileTest, CompareJsonMirrorsCsv) {
  const auto csv = (dir_ / "o.csv").string(), json = (dir_ / "o.json").string();
  ASSERT_EQ(invoke({"compare", "--samples", "20", "--resolution", "32", "--out", csv}).code, 0);
  ASSERT_EQ(invoke({"compare", "--samples", "20", "--resolution", "32", "--format", "json",
                    "--out", json})
                .code,
            0);
  const auto j = nlohmann::json::parse(slurp(json));
  ASSERT_EQ(j["samples"].size(), 20u);
  std::istringstream is(slurp(csv));
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  const double ratio_csv = std::stod(line.substr(line.rfind(',') + 1));
  EXPECT_EQ(ratio_csv, j["samples"][0]["ratio"].get<double>());
  EXPECT_TRUE(j["summary"].contains("C"));
}

TEST_F(CliFileTest, QsRunPassesDefaultWindow) {
  const auto path = (dir_ / "qs.csv").string();
  const auto r = invoke({"qs", "--samples", "5000", "--out", path});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto text = slurp(path);
  EXPECT_NE(text.find("violations=0"), std::string::npos);
  EXPECT_NE(text.find("\nbin,t_lo,t_hi,count,max_rho,envelope\n"), std::string::npos);
  EXPECT_EQ(text, (invoke({"qs", "--samples", "5000", "--out", path}), slurp(path)));
}

TEST_F(CliFileTest, QsIdentityHook) {
  const auto path = (dir_ / "id.json").string();
  ASSERT_EQ(invoke({"qs", "--samples", "20000", "--triples", "400000", "--identity-hook", "--bins", "8", "--format",
                    "json", "--out", path})
                .code,
            kSuccess);
  const auto j = nlohmann::json::parse(slurp(path));
  for (const auto& bin : j["eta"]) {
    if (bin["count"].get<int>() < 100) continue;
    EXPECT_NEAR(bin["envelope"].get<double>() / bin["t_hi"].get<double>(), 1.0, 0.02);
  }
}

TEST_F(CliFileTest, UnwritablePathIsIoFailure) {
  const auto path = (dir_ / "missing" / "out.csv").string();
  const auto r = invoke({"compare", "--samples", "5", "--resolution", "16", "--out", path});
  EXPECT_EQ(r.code, kIoFailure);
  EXPECT_FALSE(fs::exists(path));
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}), 0);
}

TEST_F(CliFileTest, FailedRunLeavesNoFile) {
  const auto path = (dir_ / "bad.csv").string();
  EXPECT_EQ(invoke({"compare", "--region", "1,1,0,0", "--out", path}).code,
            kPreconditionViolation);
  EXPECT_FALSE(fs::exists(path));
}

}  // namespace
}  // namespace grushin::cli

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include "json.hpp"

#include "kfermion/fockrep.hpp"
#include "kfermion/harness.hpp"

using namespace kfermion;
using nlohmann::json;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

RunConfig only(std::vector<int> ks, std::vector<Suite> suites = all_suites()) {
  RunConfig c;
  c.k_list = std::move(ks);
  c.suites = std::move(suites);
  return c;
}

}  // namespace

TEST(Harness, ParseKList) {
  EXPECT_EQ(parse_k_list("2,3,5"), (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(parse_k_list("2..4,7"), (std::vector<int>{2, 3, 4, 7}));
  EXPECT_EQ(parse_k_list(" 6 "), (std::vector<int>{6}));
  for (const char* bad : {"", "a", "4..2", "2,,3", "2..", "3.5"}) {
    EXPECT_THROW(parse_k_list(bad), ConfigError) << bad;
  }
}

TEST(Harness, Validation) {
  EXPECT_NO_THROW(RunConfig{}.validate());
  auto c = RunConfig{};
  c.k_list = {1};
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.eps_schedule = {1e-3, 1e-2};
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.suites.clear();
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.k_list = {17};
  EXPECT_THROW(c.validate(), ConfigError);
  c.extended = true;
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.effective_tol(), 1e-6);
  EXPECT_DOUBLE_EQ(RunConfig{}.effective_tol(), 1e-9);
}

TEST(Harness, NamesRoundTrip) {
  for (Suite s : all_suites()) EXPECT_EQ(parse_suite(suite_name(s)), s);
  for (OutputFormat f : {OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text})
    EXPECT_EQ(parse_format(format_name(f)), f);
  EXPECT_THROW(parse_suite("nope"), ConfigError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  EXPECT_EQ(parse_table_kind("limits"), TableKind::Limits);
  EXPECT_THROW(parse_table_kind("rows"), ConfigError);
}

TEST(Harness, ConfigJson) {
  RunConfig c;
  c.k_list = {3, 5};
  c.theta0 = 0.25;
  c.suites = {Suite::Phase};
  c.output_format = OutputFormat::Csv;
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.k_list, c.k_list);
  EXPECT_EQ(back.theta0, c.theta0);
  EXPECT_EQ(back.suites, c.suites);
  EXPECT_EQ(back.output_format, c.output_format);
  EXPECT_EQ(config_from_json(R"({"k_list":"2..3"})").k_list, (std::vector<int>{2, 3}));
  EXPECT_EQ(config_from_json("{}").k_list, RunConfig{}.k_list);
  EXPECT_THROW(config_from_json(R"({"kk":[2]})"), ConfigError);
  EXPECT_THROW(config_from_json("{"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"tol":-1})"), ConfigError);
}

TEST(Harness, FermionRunPasses) {
  const auto r = run_suites(only({2}));
  EXPECT_GT(r.size(), 50u);
  for (const auto& e : r.entries()) EXPECT_TRUE(e.passed) << e.equation_tag << " " << e.detail;
}

TEST(Harness, DefaultRunPasses) {
  const auto r = run_suites(RunConfig{});
  for (const auto& e : r.entries()) EXPECT_TRUE(e.passed) << e.equation_tag << " k=" << e.k << " " << e.detail;
  for (int k = 2; k <= 8; ++k) EXPECT_FALSE(r.find("Eq.1", k).empty());
}

TEST(Harness, JsonIsByteStable) {
  const auto c = only({3, 4});
  const auto a = render_json(c, run_suites(c));
  const auto b = render_json(c, run_suites(c));
  EXPECT_EQ(a, b);
  const auto j = json::parse(a);
  EXPECT_EQ(j.at("summary").at("total").get<std::size_t>(), j.at("entries").size());
  EXPECT_EQ(j.at("summary").at("failed"), 0);
}

TEST(Harness, CsvAndText) {
  const auto c = only({2}, {Suite::FockRep});
  const auto r = run_suites(c);
  const auto csv = lines(render_csv(r));
  ASSERT_FALSE(csv.empty());
  EXPECT_EQ(csv.front(), "k,equation_tag,params,residual,tol,passed,detail");
  EXPECT_EQ(csv.size(), r.size() + 1);
  const auto txt = render_text(r);
  EXPECT_NE(txt.find("PASS"), std::string::npos);
  EXPECT_EQ(txt.find("FAIL"), std::string::npos);
}

TEST(Harness, CoherenceTable) {
  const auto t = lines(emit_table(TableKind::Coherence, only({2})));
  ASSERT_GE(t.size(), 3u);
  EXPECT_EQ(t[0], "k,m,re,im,abs,expected");
  EXPECT_EQ(t[1], "2,1,1,0,1,1");
  EXPECT_EQ(t[2], "2,2,0,0,0,0");
}

TEST(Harness, LimitsTableHeader) {
  const auto t = lines(emit_table(TableKind::Limits, only({3})));
  ASSERT_GT(t.size(), 1u);
  EXPECT_EQ(t[0], "k,r,s,ratio,eps,ratio_re,ratio_im,expected,abs_err");
}

TEST(Harness, ResidualTableSorted) {
  const auto t = lines(emit_table(TableKind::Residuals, only({3, 2})));
  ASSERT_GT(t.size(), 1u);
  EXPECT_EQ(t[0], "k,equation_tag,params,m1,m2,n1,n2,residual,tol,passed");
  int last_k = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const int k = std::stoi(t[i].substr(0, t[i].find(',')));
    EXPECT_GE(k, last_k);
    last_k = k;
  }
}

TEST(Harness, WriteFileCreatesParents) {
  const auto dir = std::filesystem::temp_directory_path() / "kfermion_harness_test";
  std::filesystem::remove_all(dir);
  const auto path = (dir / "a" / "b.txt").string();
  write_file(path, "hello");
  std::ifstream in(path);
  std::string got;
  std::getline(in, got);
  EXPECT_EQ(got, "hello");
  // A regular file where a directory is needed.
  EXPECT_THROW(write_file((dir / "a" / "b.txt" / "c.txt").string(), "x"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Harness, ExportMatrices) {
  const auto j = json::parse(export_matrices(4, 0.0));
  const auto rep = build_rep(DeformationParams::make(4, 1e-9));
  const auto& ap = j.at("operators").at("a_plus");
  ASSERT_EQ(ap.at("rows"), 4);
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c) {
      const Complex v(ap["data"][i][c][0].get<double>(), ap["data"][i][c][1].get<double>());
      EXPECT_EQ(v, rep.a_plus(i, c));
    }
  EXPECT_TRUE(j.at("operators").contains("J_plus"));
  EXPECT_FALSE(json::parse(export_matrices(2, 0.0)).at("operators").contains("J_plus"));
  EXPECT_THROW(export_matrices(1, 0.0), std::invalid_argument);
}

TEST(Harness, ExtendedIllConditionedSymmetryFailsCleanly) {
  RunConfig c = only({24}, {Suite::Symmetry});
  c.extended = true;
  const auto r = run_suites(c);
  bool saw = false;
  for (const auto& e : r.entries())
    if (!e.passed && e.detail.find("conditioning") != std::string::npos) saw = true;
  EXPECT_TRUE(saw);
}

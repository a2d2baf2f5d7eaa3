#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tdtsw/cli.hpp"

using tdtsw::cli::dispatch;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("tdtsw_cli_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, GridTable) {
  const CliRun r = run({"grid"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> labels, colors;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string id, d, t, sw, crisp, color;
    fields >> id >> d >> t >> sw >> crisp >> color;
    labels.push_back(sw);
    colors.push_back(color);
  }
  EXPECT_EQ(labels, (std::vector<std::string>{"Low", "Medium", "High", "Medium", "Medium", "High", "High", "High",
                                              "High"}));
  EXPECT_EQ(colors, (std::vector<std::string>{"red", "orange", "green", "orange", "orange", "green", "green", "green",
                                              "green"}));
}

TEST(Cli, GridJsonAndSvg) {
  const CliRun j = run({"grid", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc["cells"].size(), 9u);
  EXPECT_EQ(doc["cells"][3]["result"]["label"], "Medium");
  EXPECT_EQ(doc["cells"][3]["result"]["color"], "orange");

  const CliRun svg = run({"grid", "--format", "svg"});
  ASSERT_EQ(svg.code, 0);
  EXPECT_NE(svg.out.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.out.find("#ff7f0e"), std::string::npos);
  EXPECT_NE(svg.out.find(">0.833<"), std::string::npos);
  EXPECT_EQ(svg.out, run({"grid", "--format", "svg"}).out);
}

TEST(Cli, EvalJsonSchema) {
  const CliRun r = run({"eval", "--d", "0.25", "--t", "0.25", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"inputs", "fuzzified", "firings", "aggregated", "crisp", "label", "color"}));
  EXPECT_EQ(doc["aggregated"]["Low"], 0.5);
  EXPECT_NEAR(doc["crisp"].get<double>(), 0.4405, 0.001);
  EXPECT_EQ(doc["label"], "Low");
}

TEST(Cli, EvalTable) {
  const CliRun r = run({"eval", "--d", "1", "--t", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("label: High\n"), std::string::npos);
  EXPECT_NE(r.out.find("color: green\n"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"grid", "--unknown"}).code, 1);
  EXPECT_EQ(run({"eval", "--d", "0.5"}).code, 1);
  EXPECT_EQ(run({"eval", "--d", "0.5", "--t", "0.5", "--format", "svg"}).code, 1);
  EXPECT_EQ(run({"relations", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1"}).code, 1);
  EXPECT_EQ(run({"relations", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1", "--d", "0.1", "--t",
                 "0.1", "--mc", "10"})
                .code,
            1);
  EXPECT_EQ(run({"axioms", "--formula", "xdtsw", "--models"}).code, 1);
  EXPECT_EQ(run({"axioms", "--formula", "adtsw"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RuleFileErrorsExitTwo) {
  const auto path = temp_file("bad.rules", "universe 0 1\nvar D: Low = tri(0,0,1)\nout SW: Low = tri(0,0,1)\n"
                                           "rule R1: IF D IS Loww THEN SW IS Low\n");
  const CliRun r = run({"grid", "--rules", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":4:18: error: unknown label 'Loww' for variable D"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"grid", "--rules", "/nonexistent/file.rules"}).code, 2);
}

TEST(Cli, RulesFromEnvironment) {
  const auto path = temp_file("env.rules", std::string(tdtsw::kBundledRules) + "rule R10: IF D IS Low THEN SW IS High\n");
  ::setenv("TDTSW_RULES", path.string().c_str(), 1);
  const CliRun r = run({"eval", "--d", "0", "--t", "0", "--format", "json"});
  ::unsetenv("TDTSW_RULES");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["firings"]["R10"], 1.0);
  EXPECT_EQ(doc["aggregated"]["High"], 1.0);
}

TEST(Cli, DomainErrorExitThree) {
  EXPECT_EQ(run({"eval", "--d", "nan", "--t", "0.5"}).code, 3);
  EXPECT_EQ(run({"axioms", "--formula", "pdtsw", "--models"}).code, 3);
  EXPECT_EQ(run({"relations", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1", "--mc", "0", "--seed",
                 "1", "--dist-d", "point:0", "--dist-t", "point:0"})
                .code,
            3);
  const auto path = temp_file("partial.rules", "universe 0 1\nvar D: Low = tri(0,0,0.5), High = tri(0.5,1,1)\n"
                                               "out SW: Low = tri(0,0,1)\nrule R1: IF D IS Low THEN SW IS Low\n");
  EXPECT_EQ(run({"eval", "--d", "1", "--rules", path.string()}).code, 3);
}

TEST(Cli, AxiomsModelsAndCheck) {
  const CliRun m = run({"axioms", "--formula", "adtsw", "--models"});
  ASSERT_EQ(m.code, 0);
  EXPECT_EQ(m.out, "models: 8 / 128\n");
  const CliRun l = run({"axioms", "--formula", "adtsw", "--models", "--list"});
  std::istringstream lines(l.out);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 8);
  const CliRun c = run({"axioms", "--formula", "adtsw", "--check", "D=1,T=0,I=0,A=0,C_part=0,SW=0,R=0"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("adtsw: false\nviolated: (D -> T)\n", 0), 0u);
  const CliRun t = run({"axioms", "--formula", "adtsw", "--check", "D=1,T=1,I=1,A=1,C_part=1,SW=1,R=1"});
  EXPECT_EQ(t.out, "adtsw: true\n");
  EXPECT_EQ(run({"axioms", "--formula", "adtsw", "--check", "D=1"}).code, 1);
  const CliRun partial = run({"axioms", "--formula", "adtsw", "--check", "D=1,T=0"});
  EXPECT_EQ(partial.code, 1);
  EXPECT_EQ(partial.out, "");
  EXPECT_NE(partial.err.find("no value for A,C_part,I,R,SW"), std::string::npos) << partial.err;
}

TEST(Cli, RelationsDeterministic) {
  const CliRun r = run({"relations", "--alpha", "0.25", "--beta", "0.25", "--gamma", "2", "--delta", "2", "--d", "0.5",
                     "--t", "0.25", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["w"], 0.25 * 0.5 + 0.25 * 0.25 + 2 * 0.5 * 0.25);
  EXPECT_EQ(doc["c"], 0.5);
  EXPECT_EQ(doc["e"], 0.25 * 0.25 + 0.25 * 0.5 + 2 * 0.25 * 0.5);
  const CliRun wide = run({"relations", "--alpha", "3", "--beta", "3", "--gamma", "0", "--delta", "1", "--d", "0.5",
                        "--t", "0.5"});
  EXPECT_EQ(wide.code, 0);
  EXPECT_NE(wide.err.find("warning: W = 3"), std::string::npos);
}

TEST(Cli, RelationsMonteCarloDeterministic) {
  std::vector<std::string> args{"relations", "--alpha", "0.5",   "--beta",   "0.5",         "--gamma",
                                "1",         "--delta", "1",     "--mc",     "50000",       "--seed",
                                "7",         "--dist-d", "uniform:0,1", "--dist-t", "uniform:0,1"};
  const CliRun a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto b_args = args;
  b_args.insert(b_args.end(), {"--workers", "5"});
  EXPECT_EQ(a.out, run(b_args).out);
  EXPECT_NE(a.out.find("quantity mean std_error ci_low ci_high"), std::string::npos);
  EXPECT_EQ(run({"relations", "--alpha", "1", "--beta", "1", "--gamma", "1", "--delta", "1", "--mc", "10", "--seed",
                 "1", "--dist-d", "uniform:1,0", "--dist-t", "point:0"})
                .code,
            1);
}

TEST(Cli, BatchScoresAnchorRows) {
  const auto in = temp_file("rows.csv", "id,d,t\r\nrow1,0,0\r\nrow2,0.5,1\r\n\"row,3\",1,1\r\n");
  const auto out = std::filesystem::temp_directory_path() / "tdtsw_cli_scored.csv";
  const CliRun r = run({"batch", "--input", in.string(), "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(out);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "id,d,t,sw_low,sw_medium,sw_high,sw_crisp,sw_label,color");
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("row1,0,0,1,0,0,", 0), 0u);
  EXPECT_NE(line.find(",Low,red"), std::string::npos);
  std::getline(lines, line);
  EXPECT_NE(line.find(",High,green"), std::string::npos);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("\"row,3\",1,1,", 0), 0u);
  EXPECT_NE(line.find(",High,green"), std::string::npos);
}

TEST(Cli, BatchErrors) {
  const auto out = std::filesystem::temp_directory_path() / "tdtsw_cli_unused.csv";
  const auto bad_header = temp_file("bad_header.csv", "name,d,t\na,0,0\n");
  const CliRun h = run({"batch", "--input", bad_header.string(), "--output", out.string()});
  EXPECT_EQ(h.code, 2);
  EXPECT_NE(h.err.find(":1:1: error: header is missing required column 'id'"), std::string::npos) << h.err;
  const auto bad_value = temp_file("bad_value.csv", "id,d,t\na,0,0\nb,0;5,1\n");
  const CliRun v = run({"batch", "--input", bad_value.string(), "--output", out.string()});
  EXPECT_EQ(v.code, 2);
  EXPECT_NE(v.err.find(":3:3: error: invalid d value '0;5'"), std::string::npos) << v.err;
  const auto short_row = temp_file("short.csv", "id,d,t\na,0\n");
  EXPECT_EQ(run({"batch", "--input", short_row.string(), "--output", out.string()}).code, 2);
  EXPECT_EQ(run({"batch", "--input", "/nonexistent.csv", "--output", out.string()}).code, 2);
  EXPECT_EQ(run({"batch", "--input", bad_value.string()}).code, 1);
}

TEST(Cli, BatchParallelMatchesSerial) {
  std::string csv = "id,d,t,note\n";
  for (int i = 0; i < 60; ++i) {
    csv += "r" + std::to_string(i) + "," + std::to_string((i * 37 % 101) / 100.0) + "," +
           std::to_string((i * 53 % 101) / 100.0) + ",x\n";
  }
  const auto in = temp_file("par.csv", csv);
  const CliRun serial = run({"batch", "--input", in.string(), "--output", "-"});
  const CliRun parallel = run({"batch", "--input", in.string(), "--output", "-", "--jobs", "4"});
  ASSERT_EQ(serial.code, 0) << serial.err;
  EXPECT_EQ(serial.out, parallel.out);
}

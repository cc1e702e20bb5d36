#include <doctest.h>

#include "pc/cli.hpp"
#include "pc/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using pc::Integer;
using pc::Rational;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "padic-chabauty");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = pc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json parse_document(const Result& r, const std::string& command) {
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "padic-chabauty/1");
  CHECK(j.at("command") == command);
  REQUIRE(j.contains("result"));
  return j.at("result");
}

}  // namespace

TEST_CASE("parsers") {
  CHECK(pc::cli::parse_integer_list("1,0,-1,0") == std::vector<Integer>{1, 0, -1, 0});
  CHECK(pc::cli::parse_integer_list(" 123456789012345678901234567890 ") ==
        std::vector<Integer>{Integer("123456789012345678901234567890")});
  CHECK(pc::cli::parse_polynomial("t^3/3 - 2t + 1/2", 't') ==
        std::vector<Rational>{Rational(1, 2), Rational(-2), Rational(0), Rational(1, 3)});
  CHECK(pc::cli::parse_polynomial("729t^2", 't') == std::vector<Rational>{0, 0, 729});
  pc::cli::ParsedCurve c = pc::cli::parse_curve("y2+y=x7+x+1");
  CHECK(c.genus == 3);
  CHECK(c.q == std::vector<Integer>{1});
  CHECK(c.r == std::vector<Integer>{1, 1, 0, 0, 0, 0, 0, 1});
  pc::cli::ParsedCurve d = pc::cli::parse_curve("y^2 + x*y = x^5 + 1");
  CHECK(d.genus == 2);
  CHECK(d.q == std::vector<Integer>{0, 1});
  CHECK_THROWS_AS(pc::cli::parse_curve("2y2=x3+1"), pc::Error);
  CHECK_THROWS_AS(pc::cli::parse_curve("y2=x4+1"), pc::Error);
  CHECK_THROWS_AS(pc::cli::parse_polynomial("t^", 't'), pc::Error);
}

TEST_CASE("command examples") {
  auto m = parse_document(run({"model", "--p", "2", "--g", "1", "--f", "1,0,-1,0"}), "model");
  CHECK(m.at("total_smooth") == 4);
  auto m2 = parse_document(run({"model", "--p", "2", "--curve", "y2=x3-x"}), "model");
  CHECK(m2.at("total_smooth") == 4);

  CHECK(parse_document(run({"expect", "exact", "--p", "2", "--k", "1"}), "expect exact").at("value") == "23/8");
  CHECK(parse_document(run({"expect", "exact", "--p", "3", "--k", "0"}), "expect exact").at("value") == "11/3");

  auto r = parse_document(run({"rholog", "--g", "3", "--curve", "y2+y=x7+x+1"}), "rholog");
  CHECK(r.at("union") == nlohmann::json::parse("[[1,0,0]]"));
  CHECK(r.at("hypotheses").at("all_pass") == true);
  CHECK(r.at("hypotheses").at("checks").size() == 4);

  auto disks = parse_document(run({"disks", "--p", "3", "--curve", "y2=x5+1"}), "disks");
  CHECK(disks.at("disks").size() == 4);

  auto img = parse_document(run({"p1image", "--p", "3", "--map", "1;9t;729t^2;531441t^3"}), "p1image");
  CHECK(img.at("size") == 10);

  auto s = parse_document(run({"seriesimage", "--p", "3", "--series", "t;t^2"}), "seriesimage");
  CHECK(s.at("points") == nlohmann::json::parse("[[1,0]]"));

  auto h = parse_document(run({"height", "--p", "2", "--g", "2", "--f", "0,0,0,0,32"}), "height");
  CHECK(h.at("height") == doctest::Approx(2.0));

  auto b = parse_document(run({"bounds", "--p", "2", "--g", "10"}), "bounds");
  bool found = false;
  for (const auto& x : b)
    if (x.at("formula") == "density_main") {
      found = true;
      CHECK(x.at("value") == "221/256");
    }
  CHECK(found);

  for (const auto& args : std::vector<std::vector<std::string>>{
           {"newton", "--p", "2", "--series", "2+t"},
           {"wprep", "--p", "3", "--series", "-3+t^2", "--truncation", "6"},
           {"expect", "cases", "--p", "3", "--g", "2", "--trials", "100"},
           {"expect", "x0", "--p", "2", "--g", "1", "--trials", "20"},
           {"expect", "mc", "--p", "2", "--g", "1", "--trials", "20"},
       }) {
    std::string command = args[0] == "expect" ? "expect " + args[1] : args[0];
    parse_document(run(args), command);
  }
}

TEST_CASE("exit codes and messages") {
  Result bad_prime = run({"model", "--p", "4", "--g", "1", "--f", "1,0,-1,0"});
  CHECK(bad_prime.code == 1);
  CHECK_FALSE(bad_prime.err.empty());

  Result usage = run({"expect", "mc", "--p", "2", "--trials", "abc"});
  CHECK(usage.code == 1);
  CHECK(usage.err.find("--trials") != std::string::npos);
  CHECK(usage.err.find("integer >= 1") != std::string::npos);

  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"rholog", "--curve", "y2+y=x5"}).code == 1);

  Result depth = run({"p1image", "--p", "3", "--map", "1;9t;729t^2;531441t^3", "--max-depth", "1"});
  CHECK(depth.code == 2);
  CHECK(depth.err.find("MaxDepthExceeded") != std::string::npos);

  CHECK(run({"newton", "--p", "2", "--series", "2+t", "--format", "csv"}).code == 1);
}

TEST_CASE("csv and files") {
  Result csv = run({"expect", "mc", "--p", "2", "--g", "2", "--trials", "5", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("trial,total_smooth,max_depth\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 6);

  const std::string path = "test_cli_output.json";
  Result file = run({"expect", "exact", "--p", "2", "--k", "0", "--out", path});
  CHECK(file.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j.at("result").at("value") == "5/2");
  std::remove(path.c_str());
}

TEST_CASE("determinism across thread counts") {
  for (const auto& base : std::vector<std::vector<std::string>>{
           {"expect", "mc", "--p", "3", "--g", "2", "--trials", "300", "--seed", "9"},
           {"expect", "x0", "--p", "2", "--g", "2", "--trials", "300", "--seed", "4"},
       }) {
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    Result a = run(one), b = run(four), c = run(four);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "primebias/cli.hpp"

using namespace primebias;
using namespace primebias::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "primebias");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("primebias_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parse census") {
  const RunConfig c = parse_config({"census", "--k", "2", "--first-primes", "100000"});
  CHECK(c.command == Command::census);
  CHECK(c.k_list == std::vector<std::int64_t>{2});
  CHECK(c.scope == CensusScope::first_primes(100'000));
  CHECK(c.format == OutputFormat::csv);
  CHECK(c.thread_count == 1);
  CHECK_FALSE(c.output_path.has_value());
}

TEST_CASE("parse constants with a range") {
  const RunConfig c = parse_config({"constants", "--k", "2..12:2", "--cutoff-r", "10000000"});
  CHECK(c.command == Command::constants);
  CHECK(c.k_list == std::vector<std::int64_t>{2, 4, 6, 8, 10, 12});
  CHECK(c.cutoffs.r_series == 10'000'000);
  CHECK(c.cutoffs.euler_product == default_euler_cutoff);
  CHECK(c.format == OutputFormat::json);
}

TEST_CASE("k lists") {
  CHECK(parse_k_list("2,4,10") == std::vector<std::int64_t>{2, 4, 10});
  CHECK(parse_k_list("2..8") == std::vector<std::int64_t>{2, 4, 6, 8});
  CHECK(parse_k_list("6..30:12,2") == std::vector<std::int64_t>{6, 18, 30, 2});
  CHECK(parse_k_list("2..120:2").size() == 60);
  CHECK_THROWS_AS(parse_k_list("3"), UsageError);
  CHECK_THROWS_AS(parse_k_list("2..9:3"), UsageError);
  CHECK_THROWS_AS(parse_k_list("0"), UsageError);
  CHECK_THROWS_AS(parse_k_list("-2"), UsageError);
  CHECK_THROWS_AS(parse_k_list("2,,4"), UsageError);
  CHECK_THROWS_AS(parse_k_list("two"), UsageError);
  CHECK_THROWS_AS(parse_k_list("8..2"), UsageError);
  CHECK_THROWS_AS(parse_k_list("2..8:0"), UsageError);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse_config({"census", "--k", "3"}), UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--k", "2"}), UsageError);  // no scope
  CHECK_THROWS_AS(parse_config({"census", "--first-primes", "10"}), UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--k", "2", "--up-to", "100", "--first-primes", "5"}),
                  UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--k", "2", "--up-to", "2"}), UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--k", "2", "--up-to", "100", "--bogus"}), UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--k", "2", "--up-to", "100", "--threads", "0"}),
                  UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--k", "2", "--up-to", "100", "--format", "xml"}),
                  UsageError);
  CHECK_THROWS_AS(parse_config({"tables", "--k", "2"}), UsageError);
  CHECK_THROWS_AS(parse_config({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_config({}), UsageError);
  CHECK_THROWS_AS(parse_config({"census", "--help"}), HelpRequested);

  const Outcome odd = invoke({"census", "--k", "3", "--up-to", "100"});
  CHECK(odd.code == exit_code::usage);
  CHECK(odd.out.empty());
  CHECK(odd.err.find("even") != std::string::npos);
}

TEST_CASE("tables and verify flags") {
  const RunConfig t = parse_config({"tables", "--scale", "5000", "--out", "dir"});
  CHECK(t.command == Command::tables);
  CHECK(t.table_scale == 5000);
  CHECK(t.output_path == fs::path("dir"));
  CHECK(parse_config({"tables"}).table_scale == default_table_scale);
  CHECK(parse_config({"tables", "--full"}).table_scale == full_table_scale);
  const RunConfig v = parse_config({"verify", "--threads", "2"});
  CHECK(v.command == Command::verify);
  CHECK(v.thread_count == 2);
  CHECK_FALSE(v.extended);
  CHECK(parse_config({"verify", "--full"}).extended);
}

TEST_CASE("census to stdout") {
  const Outcome r = invoke({"census", "--k", "2", "--up-to", "100"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out ==
        "k,mode,bound,pair_count,t_neg,t_zero,t_pos,s_neg,s_zero,s_pos,st_agree\n"
        "2,up_to_x,100,8,1,3,4,0,1,7,4\n");

  const Outcome j = invoke({"census", "--k", "2,4", "--first-primes", "1000", "--format", "json"});
  CHECK(j.code == exit_code::ok);
  const auto parsed = nlohmann::json::parse(j.out);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[1]["k"] == 4);
  CHECK(parsed[1]["mode"] == "first_n_primes");
  CHECK(parsed[1]["bound"] == 1000);
}

TEST_CASE("census output is identical across thread counts") {
  TempDir dir;
  const auto one = dir.path / "one.csv";
  const auto four = dir.path / "four.csv";
  CHECK(invoke({"census", "--k", "2..30:2", "--first-primes", "50000", "--threads", "1", "--out",
                one.string()})
            .code == exit_code::ok);
  const Outcome r = invoke({"census", "--k", "2..30:2", "--first-primes", "50000", "--threads",
                            "4", "--out", four.string()});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.empty());
  CHECK(slurp(one) == slurp(four));
  CHECK(lines(slurp(one)) == 16);
  CHECK_FALSE(fs::exists(one.string() + ".part"));
}

TEST_CASE("capacity errors exit with 2") {
  const Outcome r = invoke({"census", "--k", "2", "--up-to", "2199023255552"});
  CHECK(r.code == exit_code::capacity);
  CHECK(r.err.find("capacity") != std::string::npos);
}

TEST_CASE("domain errors from lower modules exit with 1") {
  const Outcome r = invoke({"constants", "--k", "2", "--cutoff-r", "10"});
  CHECK(r.code == exit_code::usage);
  CHECK(r.err.find("cutoff") != std::string::npos);
}

TEST_CASE("failed writes leave no partial file") {
  TempDir dir;
  const auto target = dir.path / "missing" / "out.csv";
  const Outcome r = invoke({"census", "--k", "2", "--up-to", "100", "--out", target.string()});
  CHECK(r.code != exit_code::ok);
  CHECK_FALSE(fs::exists(target));
  CHECK_FALSE(fs::exists(target.string() + ".part"));
}

TEST_CASE("constants JSON") {
  const Outcome r = invoke({"constants", "--k", "2"});
  REQUIRE(r.code == exit_code::ok);
  CHECK(r.out.find("\"0.067139\"") != std::string::npos);
  CHECK(r.out.find("\"0.651516\"") != std::string::npos);
  const auto parsed = nlohmann::json::parse(r.out);
  CHECK(parsed[0]["display"]["l_k"] == "0.067139");
  CHECK(parsed[0]["display"]["bound_reversed"] == "0.651516");
  CHECK(parsed[0]["r_k"]["cutoff"] == default_r_cutoff);

  const Outcome csv = invoke({"constants", "--k", "2,6", "--format", "csv", "--cutoff-r", "100000",
                              "--cutoff-euler", "100000"});
  CHECK(csv.code == exit_code::ok);
  CHECK(lines(csv.out) == 3);
}

TEST_CASE("predict") {
  const Outcome r = invoke({"predict", "--k", "2,6", "--up-to", "100", "--cutoff-euler", "100000"});
  REQUIRE(r.code == exit_code::ok);
  std::istringstream in(r.out);
  std::string header, row2, row6;
  std::getline(in, header);
  std::getline(in, row2);
  std::getline(in, row6);
  CHECK(header == "k,x,pair_count,predicted,ratio");
  CHECK(row2.rfind("2,100,8,6.22", 0) == 0);
  CHECK(row6.rfind("6,100,", 0) == 0);
}

TEST_CASE("tables at desk scale") {
  TempDir dir;
  const Outcome r = invoke({"tables", "--scale", "100000", "--out", dir.path.string()});
  REQUIRE(r.code == exit_code::ok);
  const std::string t1 = slurp(dir.path / "table1.csv");
  CHECK(t1.rfind("k,t_neg_count,pair_count,proportion\n", 0) == 0);
  CHECK(lines(t1) == 61);
  CHECK(t1.find("\n2,211,10250,") != std::string::npos);
  const std::string t2 = slurp(dir.path / "table2.csv");
  CHECK(lines(t2) == 61);
  CHECK(t2.find("\n30,3.52086\n") != std::string::npos);
  const std::string t3 = slurp(dir.path / "table3.csv");
  CHECK(lines(t3) == 1 + 28);  // k = 2, 8, ..., 164
  CHECK(t3.find("\n14,11 13 17 19 23 29 31 37 41 43 47 53,0.113089,0.103683,1.56e-18,0.061779,0.847635\n") !=
        std::string::npos);
  const std::string t4 = slurp(dir.path / "table4.csv");
  CHECK(lines(t4) == 1 + 31);  // k = 4, 10, ..., 184
  const std::string t5 = slurp(dir.path / "table5.csv");
  CHECK(lines(t5) == 1 + 26);  // k = 6, 12, ..., 156
  CHECK(t5.find("\n6,5,0.223144,0.066917,0.233372,7,0.154151,0.110468,0.056675\n") !=
        std::string::npos);
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    CHECK(entry.path().extension() != ".part");
  }
  CHECK(r.err.find("table1") != std::string::npos);
}

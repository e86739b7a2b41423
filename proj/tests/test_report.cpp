#include "citerank/report.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "citerank/fields.hpp"
#include "citerank/ingest.hpp"

using namespace citerank;
namespace fs = std::filesystem;

namespace {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(CITERANK_DATA_DIR) + "/" + name,
                   std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() /
                 ("citerank_report_" + std::to_string(::getpid())) / tag;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_fixed") {
  CHECK(format_fixed(1.0, 4) == "1.0000");
  CHECK(format_fixed(0.82489, 2) == "0.82");
  CHECK(format_fixed(36.85, 2) == "36.85");
  CHECK(format_fixed(-1.5, 1) == "-1.5");
  CHECK(format_fixed(2.0, 0) == "2");
  // Tiny negatives must not print as "-0.00".
  CHECK(format_fixed(-0.0001, 2) == "0.00");
  CHECK(format_fixed(-0.0, 3) == "0.000");
}

TEST_CASE("ratio report covers the union of fields") {
  std::map<std::string, double> t = {{"Mathematics", 1.0}, {"Physics", 19.0}};
  HRatios h;
  h.levels = {{"Mathematics", 600.0}, {"Chemistry", 6222.0}};
  h.ratios = {{"Mathematics", 1.0}, {"Chemistry", 10.37}};
  std::ostringstream out;
  write_ratio_report(out, t, h);
  CHECK(out.str() ==
        "nsf_field,t_ratio,h_level,h_ratio\n"
        "Chemistry,,6222.0000,10.3700\n"
        "Mathematics,1.0000,600.0000,1.0000\n"
        "Physics,19.0000,,\n");
}

TEST_CASE("fit report carries a two-digit alpha footer") {
  std::vector<ResidualRow> rows = {
      {"Mathematics", 1.0, 1.0, 1.0, 0.0, false},
      {"Physics", 19.0, 12.0, 11.3, 0.7, false}};
  std::ostringstream out;
  write_fit_report(out, rows, 0.8248980934089161);
  std::string text = out.str();
  CHECK(text.find("field,T,H,H_pred,residual\n") == 0);
  CHECK(text.find("alpha,0.82\n") != std::string::npos);
  CHECK(text.find("Physics,19.0000,12.0000,11.3000,0.7000\n") !=
        std::string::npos);

  std::ostringstream plot;
  write_fit_plot(plot, rows);
  CHECK(plot.str().find("t,h,h_pred\n") == 0);
}

TEST_CASE("merged CSV round-trips through the reference-list parser") {
  std::istringstream in(data_file("appendix_top200.csv"));
  auto rows = parse_appendix_fixture(in);
  auto merged =
      merge_rank(regroup_fixture(rows), fields::appendix_divisors());

  std::ostringstream out;
  write_merged_csv(out, merged);
  std::istringstream back_in(out.str());
  auto back = parse_appendix_fixture(back_in);
  REQUIRE(back.size() == merged.entries.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].global_rank == merged.entries[i].global_rank);
    CHECK(back[i].record == merged.entries[i].record);
    CHECK(back[i].normalized == merged.entries[i].normalized_citations);
  }
}

TEST_CASE("merged JSON keeps the exact scores as num/den") {
  std::istringstream in(data_file("appendix_top200.csv"));
  auto rows = parse_appendix_fixture(in);
  auto merged =
      merge_rank(regroup_fixture(rows), fields::appendix_divisors());

  std::ostringstream out;
  write_merged_json(out, merged);
  auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc.contains("entries"));
  REQUIRE(doc["entries"].size() == 200);
  const auto& first = doc["entries"][0];
  CHECK(first["name"] == "INOUE, A");
  CHECK(first["normalized_citations"] == 2495);
  CHECK(first["normalized_exact"]["num"] == 4989);
  CHECK(first["normalized_exact"]["den"] == 2);
  CHECK(doc["divisor_preset"] == merged.divisor_preset);

  std::ostringstream md;
  write_merged_markdown(md, merged);
  CHECK(md.str().find("| INOUE, A |") != std::string::npos);
}

TEST_CASE("indicator report leaves absent cells empty") {
  std::vector<IndicatorRow> rows;
  IndicatorRow full;
  full.name = "A, B";
  full.esi_field = "Physics";
  full.cpp_cents = 1269;
  full.h_index = 17;
  full.cpmp = 812.5;
  full.papers_per_year = 3.25;
  full.aggregation_flagged = false;
  rows.push_back(full);

  IndicatorRow bare;
  bare.name = "C, D";
  bare.esi_field = "Chemistry";
  bare.cpp_cents = 50;
  bare.papers_per_year = 120.0;
  bare.aggregation_flagged = true;
  rows.push_back(bare);

  std::ostringstream out;
  write_indicator_report(out, rows);
  CHECK(out.str() ==
        "name,esi_field,cpp,h_index,cpmp,papers_per_year,aggregation_flagged\n"
        "\"A, B\",Physics,12.69,17,812.50,3.25,false\n"
        "\"C, D\",Chemistry,0.50,,,120.00,true\n");
}

TEST_CASE("summary text is stable") {
  std::istringstream in(data_file("appendix_top200.csv"));
  auto rows = parse_appendix_fixture(in);
  auto merged =
      merge_rank(regroup_fixture(rows), fields::appendix_divisors());
  std::string text = summary_text(merged);
  CHECK(text.find("entries: 200\n") != std::string::npos);
  CHECK(text.find("clusters: 45\n") != std::string::npos);
  CHECK(text.find("field leaders in top 10 / 50 / 100: 5 / 7 / 10\n") !=
        std::string::npos);
  CHECK(text.find("Chemistry") != std::string::npos);
  CHECK(summary_text(merged) == text);
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("atomic write and read round-trip") {
  auto dir = fresh_dir("atomic");
  fs::path target = dir / "nested" / "out.txt";
  atomic_write(target, "first\n");
  CHECK(read_file(target) == "first\n");
  atomic_write(target, "second\n");
  CHECK(read_file(target) == "second\n");

  // No temporary files stay behind.
  for (const auto& entry : fs::directory_iterator(target.parent_path())) {
    CHECK(entry.path().filename() == "out.txt");
  }

  CHECK_THROWS_AS(read_file(dir / "absent.txt"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("manifest json is deterministic and carries no clock") {
  std::vector<std::pair<std::string, std::string>> params = {
      {"preset", "appendix"}, {"top", "100"}};
  std::vector<ManifestFile> inputs = {
      {"snapshots", "data/snapshots.csv", sha256_hex("x")}};
  std::vector<ManifestFile> outputs = {
      {"merged", "out/merged.csv", sha256_hex("y")}};
  std::string a = manifest_json("rank", params, inputs, outputs);
  std::string b = manifest_json("rank", params, inputs, outputs);
  CHECK(a == b);

  auto doc = nlohmann::json::parse(a);
  CHECK(doc["command"] == "rank");
  CHECK(doc["parameters"]["preset"] == "appendix");
  CHECK(doc["inputs"]["snapshots"]["sha256"] == sha256_hex("x"));
  CHECK(doc["outputs"]["merged"]["path"] == "out/merged.csv");
  CHECK(a.find("time") == std::string::npos);
  CHECK(a.find("date") == std::string::npos);
}

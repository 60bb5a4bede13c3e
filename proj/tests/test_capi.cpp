#include <lipsat/lipsat.h>

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;

namespace {

struct Owned {
  char *p = nullptr;
  ~Owned() { lipsat_string_free(p); }
  json parse() const { return json::parse(p); }
};

lipsat_semigroup *parse(const std::string &text) {
  lipsat_semigroup *s = nullptr;
  REQUIRE(lipsat_semigroup_parse(text.data(), text.size(), &s) == LIPSAT_OK);
  return s;
}

const char *kFinal = R"({"dim":2,"generators":[[1,0],[0,3],[0,4],[0,5],[3,1],[3,2]],"name":"final"})";

} // namespace

TEST_SUITE("capi") {

TEST_CASE("handles expose the parsed semigroup") {
  auto *s = parse(kFinal);
  CHECK(lipsat_semigroup_dim(s) == 2);
  CHECK(lipsat_semigroup_count(s) == 6);
  CHECK(std::string(lipsat_semigroup_name(s)) == "final");
  Owned j;
  REQUIRE(lipsat_semigroup_to_json(s, &j.p) == LIPSAT_OK);
  CHECK(j.parse()["generators"].size() == 6);
  lipsat_semigroup_destroy(s);

  const int64_t entries[] = {1, 0, 0, 1};
  lipsat_semigroup *t = nullptr;
  REQUIRE(lipsat_semigroup_create(2, entries, 2, &t) == LIPSAT_OK);
  CHECK(lipsat_semigroup_count(t) == 2);
  lipsat_semigroup_destroy(t);
  lipsat_semigroup_destroy(nullptr);
  CHECK(std::strlen(lipsat_version()) > 0);
}

TEST_CASE("errors map onto status codes") {
  lipsat_semigroup *s = nullptr;
  const std::string bad = "1 -2\n";
  CHECK(lipsat_semigroup_parse(bad.data(), bad.size(), &s) == LIPSAT_ERROR_PARSE);
  CHECK(s == nullptr);
  CHECK(std::strlen(lipsat_last_error()) > 0);

  const int64_t zero[] = {0, 0};
  CHECK(lipsat_semigroup_create(2, zero, 1, &s) == LIPSAT_ERROR_INVALID_ARGUMENT);
  CHECK(lipsat_semigroup_create(2, nullptr, 1, &s) == LIPSAT_ERROR_INVALID_ARGUMENT);

  auto *ns = parse(R"({"dim":2,"generators":[[2,0],[0,2],[1,1]]})");
  int smooth = 1;
  Owned diag;
  REQUIRE(lipsat_check_smooth(ns, &smooth, &diag.p) == LIPSAT_OK);
  CHECK(smooth == 0);
  CHECK(diag.parse()["group_index"] == 2);
  const int64_t q[] = {1, 1};
  int member = 0;
  CHECK(lipsat_check(ns, q, 2, &member, nullptr) == LIPSAT_ERROR_NOT_SMOOTH);
  CHECK(std::string(lipsat_last_error()).find("group index 2") != std::string::npos);
  lipsat_semigroup_destroy(ns);

  auto *f = parse(kFinal);
  const int64_t q3[] = {1, 1, 1};
  CHECK(lipsat_check(f, q3, 3, &member, nullptr) == LIPSAT_ERROR_DIMENSION);
  const int64_t neg[] = {-1, 1};
  CHECK(lipsat_check(f, neg, 2, &member, nullptr) == LIPSAT_ERROR_INVALID_ARGUMENT);
  const int64_t ok[] = {1, 1};
  CHECK(lipsat_check(f, ok, 2, &member, nullptr) == LIPSAT_OK);
  CHECK(std::string(lipsat_last_error()).empty());
  lipsat_semigroup_destroy(f);
  CHECK(std::string(lipsat_status_string(LIPSAT_ERROR_PARSE)) == "parse error");
}

TEST_CASE("membership, bounds and sets") {
  auto *s = parse(kFinal);
  int64_t b[2], c[2], box[2];
  REQUIRE(lipsat_bounds(s, b, c, box) == LIPSAT_OK);
  CHECK(b[0] == 1);
  CHECK(b[1] == 3);
  CHECK(c[0] == 3);
  CHECK(c[1] == 5);
  CHECK(box[0] == 4);
  CHECK(box[1] == 8);

  const int64_t q[] = {2, 2};
  int member = 0;
  Owned verdict;
  REQUIRE(lipsat_check(s, q, 2, &member, &verdict.p) == LIPSAT_OK);
  CHECK(member == 1);
  CHECK(verdict.parse()["certificate"]["kind"] == "maximal_subsets");

  Owned diff;
  REQUIRE(lipsat_diff(s, nullptr, 2, 0, &diff.p) == LIPSAT_OK);
  CHECK(diff.parse()["points"] == json::parse("[[2,2]]"));

  Owned camp;
  REQUIRE(lipsat_campillo(s, nullptr, &camp.p) == LIPSAT_OK);
  auto cj = camp.parse();
  CHECK(cj["box"] == json::parse("[4,8]"));
  CHECK(cj["iterations"].get<int>() >= 1);

  Owned sat;
  const int64_t bigger[] = {5, 9};
  REQUIRE(lipsat_saturate(s, bigger, 1, 1, &sat.p) == LIPSAT_OK);
  auto sj = sat.parse();
  CHECK(sj["box"] == json::parse("[5,9]"));
  CHECK(sj["bound_box"]["bound"] == json::parse("[4,8]"));
  CHECK(sj["verdicts"].size() == 45);
  CHECK(sj["members"].size() <= 45);

  Owned svg;
  REQUIRE(lipsat_plot_svg(s, nullptr, 1, &svg.p) == LIPSAT_OK);
  CHECK(std::string(svg.p).rfind("<?xml", 0) == 0);
  lipsat_semigroup_destroy(s);

  auto *three = parse("1 0 0\n0 1 0\n0 0 1\n");
  char *out = nullptr;
  CHECK(lipsat_plot_svg(three, nullptr, 1, &out) == LIPSAT_ERROR_DIMENSION);
  CHECK(out == nullptr);
  lipsat_semigroup_destroy(three);
}

TEST_CASE("verify_report round trip") {
  auto *s = parse(kFinal);
  Owned sat;
  REQUIRE(lipsat_saturate(s, nullptr, 1, 1, &sat.p) == LIPSAT_OK);
  json report{{"input", json::parse(kFinal)}, {"results", sat.parse()}};
  const std::string text = report.dump();
  int valid = 0;
  Owned details;
  REQUIRE(lipsat_verify_report(text.data(), text.size(), &valid, &details.p) == LIPSAT_OK);
  CHECK(valid == 1);
  CHECK(details.parse()["checked"] == 32);

  CHECK(lipsat_verify_report(text.data(), text.size() / 2, &valid, nullptr) == LIPSAT_ERROR_PARSE);
  lipsat_semigroup_destroy(s);
}

TEST_CASE("last error is per thread") {
  lipsat_semigroup *s = nullptr;
  const std::string bad = "x";
  REQUIRE(lipsat_semigroup_parse(bad.data(), bad.size(), &s) != LIPSAT_OK);
  std::string other;
  std::thread([&] { other = lipsat_last_error(); }).join();
  CHECK(other.empty());
  CHECK(std::strlen(lipsat_last_error()) > 0);
}

} // TEST_SUITE

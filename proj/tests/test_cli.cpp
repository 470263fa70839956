#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "iqp/json_io.hpp"

using namespace iqp;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args) {
  const char* bin = std::getenv("INTERQP_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return Run{WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(IQP_TEST_DATA) + "/" + name; }

std::string temp_spec(const std::string& name, const Json& j) {
  std::string path = std::string(IQP_TEST_TMP) + "/" + name;
  std::ofstream(path) << j.dump();
  return path;
}

std::vector<std::vector<int>> sets(const Json& j) { return j.get<std::vector<std::vector<int>>>(); }

const Json kQuadMu = Json::array({{-1, 0}, {0, -1}, {1, 1}, {-1, 1}});

}  // namespace

TEST_CASE("chambers") {
  auto r = run("chambers --input " + data("quadrilateral.json"));
  REQUIRE(r.rc == 0);
  Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["bases"].size() == 6);
  using V = std::vector<std::vector<int>>;
  CHECK(sets(j["chambers"][0]["bases"]) == V{{1, 2}, {1, 3}, {2, 3}});
  CHECK(sets(j["chambers"][1]["bases"]) == V{{1, 2}, {1, 4}, {2, 3}, {3, 4}});
  CHECK(sets(j["chambers"][2]["bases"]) == V{{1, 2}, {1, 4}, {2, 3}, {3, 4}});
  CHECK(j["chambers"][0]["redundant"] == Json::array({4}));

  auto wall = run("chambers --input " +
                  temp_spec("wall.json", Json{{"mu", kQuadMu}, {"samples", {{0, 0, 5, 5}, {-1, -1, -5, 3}}}}));
  CHECK(wall.rc == 3);
  Json w = Json::parse(wall.out);
  CHECK(w["chambers"][0]["error"]["code"] == "OnWall");
  CHECK(w["chambers"][1]["error"]["code"] == "EmptyChamber");
}

TEST_CASE("ehrhart") {
  auto r = run("ehrhart --input " + data("interval.json") + " --eval 1/2,3/2,2,2");
  REQUIRE(r.rc == 0);
  Json j = Json::parse(r.out);
  QP q = qp_from_json(j["qp"]);
  CHECK(qp_equivalent(q, parse_qp("b1+b2-{b1}-{b2}+1", default_names(2))));
  CHECK(j["evaluations"][0]["value"] == "2");
  CHECK(j["evaluations"][1]["value"] == "5");
  // round trip of the serialized quasi-polynomial
  for (const auto& e : j["evaluations"]) CHECK(rat_to_json(q.eval(ratvec_from_json(e["at"]))) == e["value"]);

  auto s = run("ehrhart --input " + data("simplex4.json") + " --eval 0,1,2");
  REQUIRE(s.rc == 0);
  Json js = Json::parse(s.out);
  CHECK(js["evaluations"][0]["value"] == "-5/5184");
  CHECK(js["evaluations"][1]["value"] == "15763/5184");
  CHECK(js["variant"] == "conebycone");
  CHECK(js["k"] == 1);

  auto t = run("ehrhart --input " + data("triangle.json") + " --eval 1/2,1,99/100,101/100 --oracle-check");
  CHECK(t.rc == 0);
  Json jt = Json::parse(t.out);
  std::vector<std::string> want{"1", "3", "1", "1"};
  for (size_t i = 0; i < want.size(); ++i) CHECK(jt["evaluations"][i]["value"] == want[i]);
  CHECK(jt["oracle_agrees"] == true);

  auto h = run("ehrhart --input " + data("hexagon.json") + " --eval 1,1,2,1/3");
  REQUIRE(h.rc == 0);
  Json jh = Json::parse(h.out);
  CHECK(jh["variables"] == Json::array({"t1", "t2"}));
  CHECK(jh["evaluations"][0]["value"] == "6");
}

TEST_CASE("plotdata") {
  auto r = run("plotdata --input " + data("quadrilateral.json") + " --grid 0,1,1/120 --oracle-check");
  REQUIRE(r.rc == 0);
  Json j = Json::parse(r.out);
  CHECK(j["oracle_agrees"] == true);
  CHECK(j["columns"] == Json::array({"count", "vertical", "area"}));
  std::set<Rat> jumps;
  Json prev;
  for (const auto& row : j["rows"]) {
    if (!prev.is_null() && row["count"] != prev["count"]) jumps.insert(rat_from_json(row["t"]));
    prev = row;
  }
  CHECK(jumps == std::set<Rat>{rat(1, 5), rat(1, 3), rat(2, 5), rat(3, 5), rat(2, 3), rat(4, 5), Rat(1)});

  auto csv = run("plotdata --input " + data("triangle.json") + " --grid 0,2,1/8 --format csv");
  REQUIRE(csv.rc == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,conebycone:k0,conebycone:k1,conebycone:k2,barvinok:k1");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // k=2 is the exact count
    auto last = line.find(',', line.find(',', line.find(',') + 1) + 1);
    std::string k2 = line.substr(last + 1, line.find(',', last + 1) - last - 1);
    CHECK(k2.substr(k2.find('.')) == ".000000000000");
  }
  CHECK(rows == 17);

  auto point = run("plotdata --input " +
                   temp_spec("point.json", Json{{"mu", {{1}, {-1}}}, {"ray_b0", {0, 0}}, {"b", {1, 1}}}) +
                   " --grid 0,3,1/2");
  REQUIRE(point.rc == 0);
  for (const auto& row : Json::parse(point.out)["rows"]) CHECK(row["exact"] == "1");
}

TEST_CASE("oracle") {
  auto tri = run("oracle --input " +
                 temp_spec("tri.json", Json{{"vertices", {{1, 1}, {1, 2}, {2, 2}}}}) + " --eval 1,1/2");
  REQUIRE(tri.rc == 0);
  Json j = Json::parse(tri.out);
  CHECK(j["results"][0]["value"] == "3");
  CHECK(j["results"][1]["value"] == "1");
  auto quad = run("oracle --input " + data("quadrilateral.json"));
  REQUIRE(quad.rc == 0);
  CHECK(Json::parse(quad.out)["results"][0]["integral"] == "23/2");
  auto empty = run("oracle --input " + temp_spec("empty.json", Json{{"mu", kQuadMu}, {"b", {-1, -1, -5, 3}}}));
  REQUIRE(empty.rc == 0);
  CHECK(Json::parse(empty.out)["results"][0]["value"] == "0");
}

TEST_CASE("exit codes") {
  CHECK(run("ehrhart --input " + data("interval.json") + " --variant nonsense").rc == 2);
  CHECK(run("ehrhart --input " + temp_spec("nomu.json", Json{{"b", {1, 1}}})).rc == 2);
  CHECK(run("ehrhart --input " + temp_spec("badschema.json", Json{{"schema", 7}, {"mu", {{1}, {-1}}}})).rc == 2);
  CHECK(run("ehrhart --input /nonexistent/spec.json").rc == 2);
  auto wall = run("ehrhart --input " + temp_spec("w.json", Json{{"mu", kQuadMu}, {"b", {0, 0, 5, 5}}}));
  CHECK(wall.rc == 3);
  CHECK(Json::parse(wall.out)["error"]["code"] == "OnWall");
  CHECK(run("ehrhart --input " + temp_spec("unb.json", Json{{"mu", {{1, 0}, {0, 1}}}, {"b", {1, 1}}})).rc == 3);
  CHECK(run("oracle --input " + temp_spec("big.json", Json{{"vertices", {{0, 0}, {3000, 0}, {0, 3000}}}})).rc == 4);
  CHECK(run("--help").rc == 0);
  CHECK(run("").rc == 2);
}

#include <sstream>

#include "doctest.h"
#include "locent/io.hpp"
#include "../common/oracles.hpp"

using namespace locent;
using locent::io::Json;

TEST_CASE("rationals and numbers") {
  CHECK(io::rational(Json("1/3")) == doctest::Approx(1.0 / 3).epsilon(1e-16));
  CHECK(io::rational(Json("-2/4")) == -0.5);
  CHECK(io::rational(Json(0.25)) == 0.25);
  CHECK(io::rational(Json("7")) == 7.0);
  CHECK_THROWS_AS(io::rational(Json("1/0")), io::InputError);
  CHECK_THROWS_AS(io::rational(Json("a/b")), io::InputError);
  CHECK_THROWS_AS(io::rational(Json::array()), io::InputError);
  CHECK(io::number(1.0 / 3).dump() == "0.333333333333");
  CHECK(io::number(-0.0).dump() == "0.0");
  CHECK(io::number(std::numeric_limits<double>::infinity()).is_null());
}

TEST_CASE("sets and folner specs") {
  const auto s = io::subset_from_json(Json::parse("[[2],[0],[1]]"));
  CHECK(s == oracle::interval(0, 2));
  CHECK(io::to_json(s).dump() == "[[0],[1],[2]]");
  CHECK_THROWS_AS(io::subset_from_json(Json::parse("[[0],[1,2]]")), io::InputError);
  CHECK_THROWS_AS(io::subset_from_json(Json::parse("[[0.5]]")), io::InputError);
  const auto box = io::folner_from_json(Json::parse(R"({"kind":"box","d":2})"));
  CHECK(folner(box, 2).size() == 4);
  const auto sh = io::folner_from_json(Json::parse(R"({"kind":"shifted_interval","shift":[0,0,1]})"));
  CHECK(folner(sh, 3) == oracle::interval(9, 11));
  const auto custom = io::folner_from_json(Json::parse(R"({"kind":"custom","sets":[[[0]],[[5],[6]]]})"));
  CHECK(folner(custom, 2) == oracle::ints({5, 6}));
  CHECK_THROWS_AS(io::folner_from_json(Json::parse(R"({"kind":"spiral"})")), io::InputError);
}

TEST_CASE("sft, cover and measure files") {
  const auto sft = io::sft_from_json(
      Json::parse(R"({"alphabet":["0","1"],"d":1,"forbidden":[{"shape":[[0],[1]],"assign":["1","1"]}]})"));
  CHECK(language(sft, oracle::interval(0, 4)).size() == 13);
  CHECK(io::to_json(sft) ==
        Json::parse(R"({"alphabet":["0","1"],"d":1,"forbidden":[{"shape":[[0],[1]],"assign":["1","1"]}]})"));

  const auto c = io::cover_from_json(Json::parse(R"([[{"shape":[],"assign":[]}],[{"shape":[[0]],"assign":["1"]}]])"),
                                     sft.alphabet(), 1);
  CHECK(c.elements[0].is_syntactically_full());
  CHECK(io::to_json(c, sft.alphabet())[1][0]["assign"][0] == "1");
  CHECK_THROWS_AS(io::cover_from_json(Json::parse(R"([[{"shape":[[0]],"assign":["2"]}]])"), sft.alphabet(), 1),
                  io::InputError);
  CHECK_THROWS_AS(io::cover_from_json(Json::parse(R"([[{"shape":[[0],[0]],"assign":["1","0"]}]])"), sft.alphabet(), 1),
                  io::InputError);

  const auto b = io::measure_from_json(Json::parse(R"({"variant":"bernoulli","probs":{"0":"1/3","1":"2/3"}})"),
                                       sft.alphabet(), 1);
  CHECK(b.cylinder_mass(Pattern(oracle::ints({0}), {0})) == doctest::Approx(1.0 / 3));
  const auto m = io::measure_from_json(
      Json::parse(R"({"variant":"markov","transition":{"0":{"0":"1/2","1":"1/2"},"1":{"0":"1","1":"0"}}})"),
      sft.alphabet(), 1);
  CHECK(m.stationary()[1] == doctest::Approx(1.0 / 3));
  const auto p = io::measure_from_json(Json::parse(R"({"variant":"periodic","word":["0","1"]})"), sft.alphabet(), 1);
  CHECK(p.kind() == MeasureKind::periodic);
  const auto mix = io::measure_from_json(
      Json::parse(R"({"variant":"convex","weights":["1/4","3/4"],"components":[
        {"variant":"bernoulli","probs":["1","0"]},{"variant":"bernoulli","probs":["0","1"]}]})"),
      sft.alphabet(), 1);
  CHECK(mix.cylinder_mass(Pattern(oracle::ints({0}), {0})) == doctest::Approx(0.25));
  CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"({"variant":"bernoulli","probs":{"0":"1/2","1":"1/3"}})"),
                                        sft.alphabet(), 1),
                  io::InputError);
  CHECK_THROWS_AS(io::measure_from_json(Json::parse(R"({"variant":"gibbs"})"), sft.alphabet(), 1), io::InputError);
}

TEST_CASE("points files") {
  const auto c = io::points_from_json(Json::parse(R"({"r":1,"points":[["0","1","0"],["0","0","0"]]})"),
                                      Alphabet::binary(), 1);
  CHECK(c.r == 1);
  CHECK(c.points[0] == Pattern(oracle::interval(-1, 1), {0, 1, 0}));
  CHECK_THROWS_AS(io::points_from_json(Json::parse(R"({"r":1,"points":[["0"]]})"), Alphabet::binary(), 1),
                  io::InputError);
}

TEST_CASE("reports") {
  const auto sft = SFT::golden_mean();
  const auto e = h_top(sft, Cover::symbol_partition(sft.alphabet()), FolnerSequence::boxes(1), 6);
  const auto j = io::to_json(e);
  CHECK(j["values"].size() == 6);
  CHECK_FALSE(j["values"][0].contains("seconds"));
  CHECK(io::to_json(e, true)["values"][0].contains("seconds"));
  CHECK(j.dump() == io::to_json(e).dump());

  const auto text = io::plot_data(j);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line[0] == '#');
  int rows = 0;
  double prev = 1e9;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    double n, v, inf, cert;
    r >> n >> v >> inf >> cert;
    CHECK(cert <= prev);
    CHECK(cert <= inf + 1e-12);
    prev = cert;
    ++rows;
  }
  CHECK(rows == 6);

  Json empty = j;
  empty["values"] = Json::array();
  CHECK(io::plot_data(empty).find('\n') == io::plot_data(empty).size() - 1);
  CHECK_THROWS_AS(io::plot_data(Json::parse("{}")), io::InputError);
}

TEST_CASE("unreadable files") {
  CHECK_THROWS_AS(io::read_file("/nonexistent/locent.json"), io::InputError);
}

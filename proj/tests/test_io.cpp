#include <doctest.h>

#include <sstream>

#include "dualnup/history.hpp"
#include "dualnup/instance_io.hpp"

using namespace dualnup;

TEST_CASE("instance canonical form round-trips byte-identically") {
  const auto gen = generate_instance({4, 2, 2, 8}, 42);
  const std::string first = instance_to_json(gen.instance);
  const ProblemInstance reloaded = instance_from_json(first);
  const std::string second = instance_to_json(reloaded);
  CHECK(first == second);
}

TEST_CASE("instance json carries every loss kind and the inf beta spelling") {
  ProblemInstance inst;
  inst.model.A = Mat::Identity(2, 2);
  inst.model.B = Mat::Ones(2, 1);
  inst.model.C = Mat::Ones(1, 2);
  inst.model.N = 3;
  inst.priors.m_x1 = Vec::Zero(2);
  inst.priors.V_x1 = Mat::Identity(2, 2);
  inst.priors.m_u = Vec::Zero(1);
  inst.priors.V_u = Mat::Identity(1, 1);
  inst.constraints.push_back({1, 1, ConstraintTarget::Output, ScalarLoss::interval(-1.0, 1.0)});
  inst.constraints.push_back({2, 1, ConstraintTarget::Output, ScalarLoss::hinge_above(2.0, 5.0)});
  inst.constraints.push_back({3, 1, ConstraintTarget::Input, ScalarLoss::l1(0.0, 1.5)});

  const std::string text = instance_to_json(inst);
  CHECK(text.find("\"kind\":\"interval\"") != std::string::npos);
  CHECK(text.find("\"beta\":\"inf\"") != std::string::npos);
  CHECK(text.find("\"on\":\"u\"") != std::string::npos);

  const ProblemInstance back = instance_from_json(text);
  REQUIRE(back.constraints.size() == 3);
  CHECK(back.constraints[0].loss.beta == kInf);
  CHECK(back.constraints[1].loss.beta == doctest::Approx(5.0));
  CHECK(back.constraints[2].on == ConstraintTarget::Input);
}

TEST_CASE("instance json rejects malformed documents") {
  CHECK_THROWS_AS(instance_from_json("{"), std::runtime_error);
  CHECK_THROWS_AS(instance_from_json("{}"), std::runtime_error);

  const auto gen = generate_instance({2, 1, 1, 2}, 1);
  std::string text = instance_to_json(gen.instance);

  // Unknown loss kind.
  std::string bad = text;
  const auto pos = bad.find("\"interval\"");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 10, "\"squared\" ");
  CHECK_THROWS_AS(instance_from_json(bad), std::runtime_error);

  // Out-of-range constraint index.
  std::string oob = text;
  const auto npos = oob.find("\"n\":1");
  REQUIRE(npos != std::string::npos);
  oob.replace(npos, 5, "\"n\":9");
  CHECK_THROWS_AS(instance_from_json(oob), std::runtime_error);
}

TEST_CASE("history csv format and ordering") {
  std::vector<HistoryRow> rows;
  rows.push_back({"irlge", 2, 1, false, 3.0, std::nullopt, 0.1, 0.01});
  rows.push_back({"iffbdd", 1, 2, false, 2.0, 0.5, 0.0, 0.02});
  rows.push_back({"iffbdd", 1, 0, true, 2.0, 0.5, 0.0, 0.05});
  rows.push_back({"iffbdd", 1, 1, false, 4.0, 1.0, 0.2, 0.01});

  std::ostringstream out;
  write_history_csv(out, rows);
  const std::string text = out.str();

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == kHistoryCsvHeader);
  std::getline(lines, line);
  CHECK(line.rfind("iffbdd,1,1,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("iffbdd,1,2,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("iffbdd,1,total,", 0) == 0);  // summary row closes the group
  std::getline(lines, line);
  CHECK(line.rfind("irlge,2,1,", 0) == 0);
  CHECK(line.find(",,") != std::string::npos);  // empty rel_gap column
}

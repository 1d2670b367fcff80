#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "cvinfer/dataset.hpp"
#include "cvinfer/errors.hpp"

using namespace cvinfer;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return load_csv(in);
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("a three-row toy file parses into names and values") {
  const Dataset ds = parse(
      "y,x1,x2\n"
      "1.5,2.0,3.0\n"
      "-0.5,0.25,1e-3\n"
      "4,5,6\n");
  REQUIRE(ds.columns == std::vector<std::string>{"y", "x1", "x2"});
  REQUIRE(ds.n_rows() == 3);
  REQUIRE(ds.n_cols() == 3);
  CHECK(ds.values(0, 0) == 1.5);
  CHECK(ds.values(1, 2) == 1e-3);
  CHECK(ds.values(2, 1) == 5.0);

  const DesignSplit split = split_response(ds, "y");
  CHECK(split.y.size() == 3);
  CHECK(split.x.rows() == 3);
  CHECK(split.x.cols() == 2);
  CHECK(split.predictor_names == std::vector<std::string>{"x1", "x2"});
  CHECK(split.response_index == 0);
  CHECK(split.y(1) == -0.5);
  CHECK(split.x(0, 1) == 3.0);
}

TEST_CASE("the response column may sit anywhere") {
  const Dataset ds = parse("a,y,b\n1,2,3\n");
  const DesignSplit split = split_response(ds, "y");
  CHECK(split.response_index == 1);
  CHECK(split.y(0) == 2.0);
  CHECK(split.x(0, 0) == 1.0);
  CHECK(split.x(0, 1) == 3.0);
  CHECK(split.predictor_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("whitespace around fields is trimmed, blank lines are skipped") {
  const Dataset ds = parse(
      "y , x1\r\n"
      " 1.5 ,\t2.0\n"
      "\n"
      "   \n"
      "2.5,3.0\n");
  CHECK(ds.columns == std::vector<std::string>{"y", "x1"});
  REQUIRE(ds.n_rows() == 2);
  CHECK(ds.values(0, 0) == 1.5);
  CHECK(ds.values(1, 1) == 3.0);
}

TEST_CASE("missing values are hard errors with their location") {
  try {
    parse("y,x1\n1.0,\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 2);
    CHECK(e.column() == 2);
    CHECK(std::string(e.what()).find("missing value") != std::string::npos);
  }
}

TEST_CASE("non-numeric cells are rejected with their location") {
  try {
    parse("y,x1\n1.0,2.0\n3.0,oops\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == 2);
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
}

TEST_CASE("ragged rows are rejected") {
  try {
    parse("y,x1,x2\n1,2,3\n4,5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(std::string(e.what()).find("expected 3 fields, found 2") !=
          std::string::npos);
  }
}

TEST_CASE("header problems are reported on row one") {
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("y,x1,y\n1,2,3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 1);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  try {
    parse("y,,x2\n1,2,3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 1);
    CHECK(e.column() == 2);
  }
}

TEST_CASE("files are loaded through the path overload") {
  const std::string path = "dataset_roundtrip_test.csv";
  {
    std::ofstream out(path);
    out << "y,x1\n0.5,1.5\n2.5,3.5\n";
  }
  const Dataset ds = load_csv(path);
  CHECK(ds.n_rows() == 2);
  CHECK(ds.values(1, 1) == 3.5);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_csv("definitely_not_here_413.csv"), ParseError);
}

TEST_CASE("a missing response column is named in the error") {
  const Dataset ds = parse("y,x1\n1,2\n");
  try {
    split_response(ds, "outcome");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("outcome") != std::string::npos);
  }
}

TEST_CASE("a lone column cannot be split into response and design") {
  const Dataset ds = parse("y\n1\n2\n");
  CHECK_THROWS_AS(split_response(ds, "y"), ContractViolation);
}

TEST_CASE("standardize_columns centers and rescales to unit norm") {
  Matrix x(4, 2);
  x << 1.0, 10.0,
       2.0, 20.0,
       3.0, 30.0,
       4.0, 44.0;
  standardize_columns(x);
  for (int c = 0; c < 2; ++c) {
    CHECK(x.col(c).sum() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(x.col(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("constant columns cannot be standardized") {
  Matrix x(3, 2);
  x << 1.0, 7.0,
       2.0, 7.0,
       3.0, 7.0;
  try {
    standardize_columns(x);
    FAIL("expected ContractViolation");
  } catch (const ContractViolation& e) {
    CHECK(std::string(e.what()).find("column 1") != std::string::npos);
  }
}

}  // TEST_SUITE("dataset")

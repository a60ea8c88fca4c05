#include <doctest.h>

#include <cmath>
#include <limits>

#include "mid/dataset.hpp"
#include "mid/errors.hpp"

using namespace mid;

namespace {

Dataset small() {
  Dataset d;
  d.kind = "demo";
  d.metadata["gamma"] = 0.5;
  d.columns = {"x", "y", "flag"};
  d.rows = {{0.0, 1.5, 1.0}, {0.1, std::numeric_limits<double>::quiet_NaN(), 0.0}, {-0.0, -2e-300, 1.0}};
  return d;
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  for (double v : {1.0 / 3.0, -7.25e-13, 6.02214076e23, 2.0 / 7.0}) {
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("csv") {
  const auto csv = to_csv(small());
  CHECK(csv.rfind("x,y,flag\n", 0) == 0);
  CHECK(csv.find("0.10000000000000001,nan,0\n") != std::string::npos);
  CHECK(csv.find("0,-2.0000000000000001e-300,1\n") != std::string::npos);
}

TEST_CASE("json round trip") {
  const auto d = small();
  const auto back = dataset_from_json(to_json(d));
  CHECK(back.kind == "demo");
  CHECK(back.metadata["gamma"] == 0.5);
  CHECK(same_data(d, back));
  CHECK(to_json(back) == to_json(d));
}

TEST_CASE("same_data and column") {
  auto a = small();
  auto b = small();
  CHECK(same_data(a, b));
  b.rows[0][1] = 1.5000000000000002;
  CHECK_FALSE(same_data(a, b));
  CHECK(a.column("flag") == 2);
  CHECK_THROWS_AS(a.column("nope"), DomainError);
}

TEST_CASE("formats") {
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("svg") == Format::Svg);
  CHECK(extension(Format::Json) == "json");
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("write_text") {
  CHECK_THROWS_AS(write_text("/nonexistent-dir/x/out.csv", "a"), IoError);
}

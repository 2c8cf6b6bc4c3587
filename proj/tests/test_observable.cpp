#include <doctest.h>

#include <cmath>

#include "ergopt/errors.hpp"
#include "ergopt/observable.hpp"

using namespace ergopt;

TEST_CASE("parser accepts the shipped grammar examples") {
  Observable a = parse_observable("cos(2*pi*x)", Space::Circle);
  CHECK(a.expr.kind == Expr::Kind::Cos);
  CHECK(a.expr.kids[0].kind == Expr::Kind::Mul);

  Observable b = parse_observable("-dist(x,[0.333333,0.666667])", Space::Circle);
  CHECK(b.expr.kind == Expr::Kind::Neg);
  CHECK(b.expr.kids[0].kind == Expr::Kind::Dist);
  CHECK(b.expr.kids[0].dist_points.size() == 2);

  Observable c = parse_observable("cos(2*pi*(x-0.5)) + 0.1*sin(2*pi*x)", Space::Circle);
  CHECK(c.expr.kind == Expr::Kind::Add);

  CHECK_NOTHROW(parse_observable("min(cos(2*pi*x), 1 - x)", Space::Circle));
  CHECK_NOTHROW(parse_observable("abs(x - 1) * exp(-x)", Space::Interval, 0.0, 2.0));
}

TEST_CASE("parse errors carry a byte offset and expectation set") {
  try {
    parse_observable("cos(2*pi*x", Space::Circle);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 10);
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS(parse_observable("", Space::Circle), ParseError);
  CHECK_THROWS_AS(parse_observable("cot(x)", Space::Circle), ParseError);
  CHECK_THROWS_AS(parse_observable("dist(y,[0.5])", Space::Circle), ParseError);
  CHECK_THROWS_AS(parse_observable("1 +", Space::Circle), ParseError);
}

TEST_CASE("evaluation on both spaces") {
  Observable cosx = parse_observable("cos(2*pi*x)", Space::Circle);
  CHECK(cosx.eval(0.0) == doctest::Approx(1.0));

  Observable d = parse_observable("dist(x,[0.33333333333333331,0.66666666666666663])",
                                  Space::Circle);
  CHECK(d.eval(0.5) == doctest::Approx(1.0 / 6.0));

  Observable d0 = parse_observable("dist(x,[0])", Space::Circle);
  CHECK(d0.eval(0.9) == doctest::Approx(0.1));  // wraps around the circle

  Observable di = parse_observable("dist(x,[0.5])", Space::Interval, 0.0, 2.0);
  CHECK(di.eval(1.75) == doctest::Approx(1.25));  // no wrap on the interval
}

TEST_CASE("analytic lip bounds: cos frequency, dist, constants") {
  Observable cosx = parse_observable("cos(2*pi*x)", Space::Circle);
  CHECK(lip_constant(cosx, LipMode::Analytic) == doctest::Approx(2 * M_PI));

  Observable d = parse_observable("dist(x,[0.333333,0.666667])", Space::Circle);
  CHECK(lip_constant(d, LipMode::Analytic) == doctest::Approx(1.0));

  Observable c5 = parse_observable("5", Space::Circle);
  CHECK(lip_constant(c5, LipMode::Analytic) == 0.0);
  CHECK(lip_constant(c5, LipMode::Grid, 100) == 0.0);
}

TEST_CASE("grid estimate stays below the analytic bound") {
  const char* bank[] = {
      "cos(2*pi*x)",
      "-dist(x,[0.25,0.75])",
      "cos(2*pi*(x-0.5)) + 0.1*sin(2*pi*x)",
      "min(cos(2*pi*x), sin(2*pi*x))",
      "abs(sin(2*pi*x))",
      "exp(cos(2*pi*x))",
  };
  for (const char* src : bank) {
    Observable phi = parse_observable(src, Space::Circle);
    double analytic = lip_constant(phi, LipMode::Analytic);
    for (int n : {100, 1000, 10000}) {
      double grid = lip_constant(phi, LipMode::Grid, n);
      CHECK(grid <= analytic + 1e-9);
    }
  }
}

TEST_CASE("print-then-reparse reproduces the tree") {
  const char* bank[] = {
      "cos(2*pi*x)",
      "-dist(x,[0.333333,0.666667])",
      "cos(2*pi*(x-0.5)) + 0.1*sin(2*pi*x)",
      "min(cos(2*pi*x), max(x, 0.25))",
      "1 - 2*x + x*x",
      "exp(-abs(x - 0.5))",
      "0.125*sin(2*pi*3*x) - 4.75e-2*cos(2*pi*x)",
  };
  for (const char* src : bank) {
    Observable phi = parse_observable(src, Space::Circle);
    std::string printed = to_string(phi.expr);
    Observable re = parse_observable(printed, Space::Circle);
    CHECK(re.expr == phi.expr);
    CHECK(to_string(re.expr) == printed);
  }
}

TEST_CASE("evaluation is deterministic and total on the declared space") {
  Observable phi =
      parse_observable("exp(cos(2*pi*x)) - min(x, dist(x,[0.5]))", Space::Circle);
  for (int i = 0; i <= 1000; ++i) {
    double x = i / 1000.0;
    double v1 = phi.eval(x), v2 = phi.eval(x);
    CHECK(std::isfinite(v1));
    CHECK(v1 == v2);
  }
}

#ifndef ERGOPT_OBSERVABLE_HPP
#define ERGOPT_OBSERVABLE_HPP

#include <string>
#include <vector>

#include "ergopt/real.hpp"

namespace ergopt {

/// Expression tree over the observable language:
///   atoms  x, numeric literal, pi, dist(x,[p0,p1,...])
///   unary  cos sin exp abs neg
///   binary + - * min max
struct Expr {
  enum class Kind {
    Num, Var, Pi, Dist,
    Cos, Sin, Exp, Abs, Neg,
    Add, Sub, Mul, Min, Max,
  };

  Kind kind = Kind::Num;
  double num = 0.0;                 // Kind::Num
  std::vector<Expr> kids;           // unary: 1, binary: 2
  std::vector<double> dist_points;  // Kind::Dist

  bool operator==(const Expr& o) const;
};

/// Closed interval used by the range analysis.
struct ValueBound {
  double lo = 0.0;
  double hi = 0.0;
};

enum class LipMode { Analytic, Grid };

/// A parsed Lipschitz observable together with an estimate of lip(phi).
/// The analytic estimate is a sound upper bound obtained from per-node
/// composition rules; the grid estimate is a lower bound (max adjacent
/// difference quotient).
struct Observable {
  Expr expr;
  Space space = Space::Circle;
  double domain_lo = 0.0;  // evaluation domain; [0,1) for the circle
  double domain_hi = 1.0;
  double lip_estimate = 0.0;
  LipMode lip_mode = LipMode::Analytic;

  double eval(double x) const;
  double eval(const Real& x) const { return eval(x.to_double()); }
};

/// Parse the textual observable grammar. Throws ParseError with a byte
/// offset and expectation set on malformed input.
Observable parse_observable(const std::string& src, Space space,
                            double domain_lo = 0.0, double domain_hi = 1.0);

/// Canonical printing; parse(print(e)) reproduces the tree exactly.
std::string to_string(const Expr& e);

double eval_expr(const Expr& e, double x, Space space);

/// Lipschitz-constant estimate. Analytic mode composes per-node bounds
/// (an upper bound); grid mode scans grid_n adjacent difference quotients
/// (a lower bound). Analytic mode falls back to grid when a range bound
/// overflows (e.g. towers of exp).
double lip_constant(const Observable& phi, LipMode mode, int grid_n = 1000);

/// Interval range bound of the expression over the observable's domain.
ValueBound range_bound(const Observable& phi);

/// sup |phi| upper bound from the range analysis.
double sup_abs_bound(const Observable& phi);

}  // namespace ergopt

#endif

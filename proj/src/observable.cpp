#include "ergopt/observable.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "ergopt/errors.hpp"

namespace ergopt {

Rational rational_from_decimal(const std::string& text) {
  // sign, integer part, optional fraction, optional exponent
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  BigInt mant = 0;
  long scale = 0;  // power of ten dividing the mantissa
  bool digits = false;
  for (; i < text.size() && std::isdigit((unsigned char)text[i]); ++i) {
    mant = mant * 10 + (text[i] - '0');
    digits = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit((unsigned char)text[i]); ++i) {
      mant = mant * 10 + (text[i] - '0');
      ++scale;
      digits = true;
    }
  }
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    bool edigits = false;
    for (; i < text.size() && std::isdigit((unsigned char)text[i]); ++i) {
      exp10 = exp10 * 10 + (text[i] - '0');
      edigits = true;
    }
    if (!edigits) throw DomainError("malformed exponent in numeric literal: " + text);
    if (eneg) exp10 = -exp10;
  }
  if (!digits || i != text.size())
    throw DomainError("malformed numeric literal: " + text);
  Rational r(mant);
  long net = exp10 - scale;
  BigInt pow10 = 1;
  for (long k = 0; k < std::labs(net); ++k) pow10 *= 10;
  if (net >= 0)
    r *= Rational(pow10);
  else
    r /= Rational(pow10);
  if (neg) r = -r;
  return r;
}

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Num) return num == o.num;
  if (kind == Kind::Dist) return dist_points == o.dist_points;
  return kids == o.kids;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := NUM | 'x' | 'pi' | FUNC '(' expr ')'
//           | 'dist' '(' 'x' ',' '[' NUM (',' NUM)* ']' ')'
//           | ('min'|'max') '(' expr ',' expr ')'
//           | '(' expr ')' | '-' factor
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& src, Space space) : src_(src), space_(space) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"end of input", "'+'", "'-'", "'*'"});
    return e;
  }

 private:
  const std::string& src_;
  Space space_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "parse error at byte " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw ParseError(pos_, std::move(expected), msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail({std::string("'") + c + "'"});
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha((unsigned char)src_[pos_])) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
      } else {
        pos_ = mark;  // 'e' was not an exponent
      }
    }
    if (pos_ == start) fail({"number"});
    return std::strtod(src_.substr(start, pos_ - start).c_str(), nullptr);
  }

  double signed_number() {
    skip_ws();
    bool neg = eat('-');
    double v = number();
    return neg ? -v : v;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (eat('+')) {
        Expr node;
        node.kind = Expr::Kind::Add;
        node.kids = {std::move(lhs), term()};
        lhs = std::move(node);
      } else if (eat('-')) {
        Expr node;
        node.kind = Expr::Kind::Sub;
        node.kids = {std::move(lhs), term()};
        lhs = std::move(node);
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (eat('*')) {
      Expr node;
      node.kind = Expr::Kind::Mul;
      node.kids = {std::move(lhs), factor()};
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr unary(Expr::Kind k) {
    expect('(');
    Expr node;
    node.kind = k;
    node.kids = {expr()};
    expect(')');
    return node;
  }

  Expr binary(Expr::Kind k) {
    expect('(');
    Expr node;
    node.kind = k;
    node.kids.push_back(expr());
    expect(',');
    node.kids.push_back(expr());
    expect(')');
    return node;
  }

  Expr dist_atom() {
    Expr node;
    node.kind = Expr::Kind::Dist;
    expect('(');
    std::string v = ident();
    if (v != "x") fail({"'x'"});
    expect(',');
    expect('[');
    node.dist_points.push_back(signed_number());
    while (eat(',')) node.dist_points.push_back(signed_number());
    expect(']');
    expect(')');
    for (double p : node.dist_points) {
      if (space_ == Space::Circle) {
        if (p < 0.0 || p >= 1.0)
          throw DomainError("dist point outside the circle [0,1): " + std::to_string(p));
      }
    }
    return node;
  }

  Expr factor() {
    skip_ws();
    if (pos_ >= src_.size())
      fail({"number", "'x'", "'pi'", "function", "'('", "'-'"});
    char c = peek();
    if (c == '(') {
      expect('(');
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (c == '-') {
      expect('-');
      Expr node;
      node.kind = Expr::Kind::Neg;
      node.kids = {factor()};
      return node;
    }
    if (std::isdigit((unsigned char)c) || c == '.') {
      Expr node;
      node.kind = Expr::Kind::Num;
      node.num = number();
      return node;
    }
    if (std::isalpha((unsigned char)c)) {
      std::size_t at = pos_;
      std::string name = ident();
      if (name == "x") {
        Expr node;
        node.kind = Expr::Kind::Var;
        return node;
      }
      if (name == "pi") {
        Expr node;
        node.kind = Expr::Kind::Pi;
        return node;
      }
      if (name == "cos") return unary(Expr::Kind::Cos);
      if (name == "sin") return unary(Expr::Kind::Sin);
      if (name == "exp") return unary(Expr::Kind::Exp);
      if (name == "abs") return unary(Expr::Kind::Abs);
      if (name == "min") return binary(Expr::Kind::Min);
      if (name == "max") return binary(Expr::Kind::Max);
      if (name == "dist") return dist_atom();
      pos_ = at;
      fail({"'x'", "'pi'", "'cos'", "'sin'", "'exp'", "'abs'", "'min'", "'max'", "'dist'"});
    }
    fail({"number", "'x'", "'pi'", "function", "'('", "'-'"});
  }
};

double dist_to_points(Space space, double x, const std::vector<double>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (double p : pts) best = std::min(best, space_dist(space, x, p));
  return best;
}

}  // namespace

double eval_expr(const Expr& e, double x, Space space) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Num: return e.num;
    case K::Var: return x;
    case K::Pi: return M_PI;
    case K::Dist: return dist_to_points(space, x, e.dist_points);
    case K::Cos: return std::cos(eval_expr(e.kids[0], x, space));
    case K::Sin: return std::sin(eval_expr(e.kids[0], x, space));
    case K::Exp: return std::exp(eval_expr(e.kids[0], x, space));
    case K::Abs: return std::fabs(eval_expr(e.kids[0], x, space));
    case K::Neg: return -eval_expr(e.kids[0], x, space);
    case K::Add: return eval_expr(e.kids[0], x, space) + eval_expr(e.kids[1], x, space);
    case K::Sub: return eval_expr(e.kids[0], x, space) - eval_expr(e.kids[1], x, space);
    case K::Mul: return eval_expr(e.kids[0], x, space) * eval_expr(e.kids[1], x, space);
    case K::Min: return std::min(eval_expr(e.kids[0], x, space), eval_expr(e.kids[1], x, space));
    case K::Max: return std::max(eval_expr(e.kids[0], x, space), eval_expr(e.kids[1], x, space));
  }
  return 0.0;
}

double Observable::eval(double x) const { return eval_expr(expr, x, space); }

// ---------------------------------------------------------------------------
// Printing. Numbers use %.17g so the round trip is bit-exact.
// ---------------------------------------------------------------------------

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int precedence(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Add:
    case K::Sub: return 1;
    case K::Mul: return 2;
    case K::Neg: return 3;
    default: return 4;  // atoms and call-style nodes
  }
}

void print_rec(const Expr& e, int parent_prec, std::string& out) {
  using K = Expr::Kind;
  int prec = precedence(e);
  bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (e.kind) {
    case K::Num: out += fmt_num(e.num); break;
    case K::Var: out += 'x'; break;
    case K::Pi: out += "pi"; break;
    case K::Dist: {
      out += "dist(x,[";
      for (std::size_t i = 0; i < e.dist_points.size(); ++i) {
        if (i) out += ',';
        out += fmt_num(e.dist_points[i]);
      }
      out += "])";
      break;
    }
    case K::Cos: case K::Sin: case K::Exp: case K::Abs: {
      out += e.kind == K::Cos ? "cos" : e.kind == K::Sin ? "sin"
             : e.kind == K::Exp ? "exp" : "abs";
      out += '(';
      print_rec(e.kids[0], 0, out);
      out += ')';
      break;
    }
    case K::Neg:
      out += '-';
      print_rec(e.kids[0], prec + 1, out);
      break;
    case K::Add: case K::Sub:
      print_rec(e.kids[0], prec, out);
      out += e.kind == K::Add ? " + " : " - ";
      print_rec(e.kids[1], prec + 1, out);
      break;
    case K::Mul:
      print_rec(e.kids[0], prec, out);
      out += '*';
      print_rec(e.kids[1], prec + 1, out);
      break;
    case K::Min: case K::Max:
      out += e.kind == K::Min ? "min(" : "max(";
      print_rec(e.kids[0], 0, out);
      out += ", ";
      print_rec(e.kids[1], 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lipschitz and range analysis.
//
// Per-node rules: lip(x)=1, lip(const)=0, lip(dist(.,O))=1,
// lip(f+g) <= lip f + lip g, lip(f*g) <= sup|f| lip g + sup|g| lip f,
// lip(cos f), lip(sin f), lip(abs f) <= lip f,
// lip(exp f) <= exp(sup f) lip f, lip(min/max(f,g)) <= max(lip f, lip g).
// Ranges propagate by interval arithmetic with trig clipped to [-1,1].
// ---------------------------------------------------------------------------

namespace {

struct Analysis {
  ValueBound range;
  double lip;
};

ValueBound mul_range(const ValueBound& a, const ValueBound& b) {
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {std::min(std::min(c[0], c[1]), std::min(c[2], c[3])),
          std::max(std::max(c[0], c[1]), std::max(c[2], c[3]))};
}

Analysis analyze(const Expr& e, const Observable& phi) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Num: return {{e.num, e.num}, 0.0};
    case K::Var: return {{phi.domain_lo, phi.domain_hi}, 1.0};
    case K::Pi: return {{M_PI, M_PI}, 0.0};
    case K::Dist: {
      double cap = phi.space == Space::Circle
                       ? 0.5
                       : phi.domain_hi - phi.domain_lo;
      return {{0.0, cap}, 1.0};
    }
    case K::Cos: case K::Sin: {
      Analysis a = analyze(e.kids[0], phi);
      return {{-1.0, 1.0}, a.lip};
    }
    case K::Exp: {
      Analysis a = analyze(e.kids[0], phi);
      double hi = std::exp(a.range.hi);
      return {{std::exp(a.range.lo), hi}, hi * a.lip};
    }
    case K::Abs: {
      Analysis a = analyze(e.kids[0], phi);
      double lo = (a.range.lo <= 0.0 && a.range.hi >= 0.0)
                      ? 0.0
                      : std::min(std::fabs(a.range.lo), std::fabs(a.range.hi));
      double hi = std::max(std::fabs(a.range.lo), std::fabs(a.range.hi));
      return {{lo, hi}, a.lip};
    }
    case K::Neg: {
      Analysis a = analyze(e.kids[0], phi);
      return {{-a.range.hi, -a.range.lo}, a.lip};
    }
    case K::Add: {
      Analysis a = analyze(e.kids[0], phi), b = analyze(e.kids[1], phi);
      return {{a.range.lo + b.range.lo, a.range.hi + b.range.hi}, a.lip + b.lip};
    }
    case K::Sub: {
      Analysis a = analyze(e.kids[0], phi), b = analyze(e.kids[1], phi);
      return {{a.range.lo - b.range.hi, a.range.hi - b.range.lo}, a.lip + b.lip};
    }
    case K::Mul: {
      Analysis a = analyze(e.kids[0], phi), b = analyze(e.kids[1], phi);
      double sup_a = std::max(std::fabs(a.range.lo), std::fabs(a.range.hi));
      double sup_b = std::max(std::fabs(b.range.lo), std::fabs(b.range.hi));
      return {mul_range(a.range, b.range), sup_a * b.lip + sup_b * a.lip};
    }
    case K::Min: {
      Analysis a = analyze(e.kids[0], phi), b = analyze(e.kids[1], phi);
      return {{std::min(a.range.lo, b.range.lo), std::min(a.range.hi, b.range.hi)},
              std::max(a.lip, b.lip)};
    }
    case K::Max: {
      Analysis a = analyze(e.kids[0], phi), b = analyze(e.kids[1], phi);
      return {{std::max(a.range.lo, b.range.lo), std::max(a.range.hi, b.range.hi)},
              std::max(a.lip, b.lip)};
    }
  }
  return {{0.0, 0.0}, 0.0};
}

double grid_lip(const Observable& phi, int grid_n) {
  if (grid_n < 2) throw DomainError("grid mode needs grid_n >= 2");
  double lo = phi.domain_lo, hi = phi.domain_hi;
  double h = (hi - lo) / grid_n;
  double best = 0.0;
  double prev = phi.eval(lo);
  for (int i = 1; i <= grid_n; ++i) {
    double x = (i == grid_n) ? hi : lo + i * h;
    if (phi.space == Space::Circle && i == grid_n) break;
    double cur = phi.eval(x);
    best = std::max(best, std::fabs(cur - prev) / h);
    prev = cur;
  }
  if (phi.space == Space::Circle) {
    // wrap pair (last, first)
    double a = phi.eval(lo + (grid_n - 1) * h), b = phi.eval(lo);
    best = std::max(best, std::fabs(b - a) / h);
  }
  return best;
}

}  // namespace

ValueBound range_bound(const Observable& phi) { return analyze(phi.expr, phi).range; }

double sup_abs_bound(const Observable& phi) {
  ValueBound b = range_bound(phi);
  return std::max(std::fabs(b.lo), std::fabs(b.hi));
}

double lip_constant(const Observable& phi, LipMode mode, int grid_n) {
  if (mode == LipMode::Analytic) {
    Analysis a = analyze(phi.expr, phi);
    if (std::isfinite(a.lip) && std::isfinite(a.range.lo) && std::isfinite(a.range.hi))
      return a.lip;
    // unbounded intermediate (e.g. nested exp overflow): fall back to grid
    return grid_lip(phi, std::max(grid_n, 1000));
  }
  return grid_lip(phi, grid_n);
}

Observable parse_observable(const std::string& src, Space space, double domain_lo,
                            double domain_hi) {
  if (src.empty()) throw ParseError(0, {"expression"}, "empty observable source");
  Observable obs;
  obs.space = space;
  if (space == Space::Circle) {
    obs.domain_lo = 0.0;
    obs.domain_hi = 1.0;
  } else {
    obs.domain_lo = domain_lo;
    obs.domain_hi = domain_hi;
  }
  obs.expr = Parser(src, space).parse();
  Analysis a = analyze(obs.expr, obs);
  if (std::isfinite(a.lip)) {
    obs.lip_estimate = a.lip;
    obs.lip_mode = LipMode::Analytic;
  } else {
    obs.lip_estimate = grid_lip(obs, 1000);
    obs.lip_mode = LipMode::Grid;
  }
  return obs;
}

}  // namespace ergopt

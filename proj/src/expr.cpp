#include "tandev/expr.hpp"

#include <algorithm>
#include <cctype>

#include "tandev/error.hpp"
#include "tandev/polynomial.hpp"

namespace tandev {

struct Expr::Node {
  Kind kind;
  Rational value;      // constant
  std::string name;    // variable
  int exponent = 0;    // pow
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Expr::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1), 1, static_cast<int>(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(Expr::Kind::add, lhs, term());
      else if (eat('-'))
        lhs = make(Expr::Kind::sub, lhs, term());
      else
        return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Expr::Kind::mul, lhs, unary());
      else if (eat('/'))
        lhs = make(Expr::Kind::div, lhs, unary());
      else
        return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Expr::Kind::neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) {
      skip();
      bool neg = false;
      bool paren = eat('(');
      if (eat('-')) neg = true;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be an integer");
      if (pos_ - start > 6) fail("exponent too large");
      int e = std::stoi(s_.substr(start, pos_ - start));
      if (paren && !eat(')')) fail("expected ')'");
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Kind::pow;
      n->exponent = neg ? -e : e;
      n->a = base;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') fail("chained exponents are not supported");
      return n;
    }
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "sin" || id == "cos" || id == "exp") {
        if (!eat('(')) fail("expected '(' after " + id);
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        Expr::Kind k = id == "sin" ? Expr::Kind::sin : id == "cos" ? Expr::Kind::cos : Expr::Kind::exp;
        return make(k, arg);
      }
      if (std::find(vars_.begin(), vars_.end(), id) == vars_.end()) {
        pos_ = start;
        fail("unknown identifier '" + id + "'");
      }
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Kind::variable;
      n->name = id;
      return n;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::constant;
    try {
      n->value = parse_rational(s_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      pos_ = start;
      fail("malformed number");
    }
    return n;
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

template <class T>
Jet<T> eval(const NodePtr& n, const T& t0, int order, const std::string& var) {
  using K = Expr::Kind;
  switch (n->kind) {
    case K::constant:
      if constexpr (std::is_same_v<T, double>)
        return Jet<T>::constant(t0, n->value.get_d(), order);
      else
        return Jet<T>::constant(t0, T(n->value), order);
    case K::variable:
      if (n->name != var) throw DomainError("expression depends on '" + n->name + "', not only on '" + var + "'");
      return Jet<T>::variable(t0, order);
    case K::neg:
      return -eval(n->a, t0, order, var);
    case K::add:
      return eval(n->a, t0, order, var) + eval(n->b, t0, order, var);
    case K::sub:
      return eval(n->a, t0, order, var) - eval(n->b, t0, order, var);
    case K::mul:
      return eval(n->a, t0, order, var) * eval(n->b, t0, order, var);
    case K::div:
      return eval(n->a, t0, order, var) / eval(n->b, t0, order, var);
    case K::pow:
      return pow(eval(n->a, t0, order, var), n->exponent);
    case K::sin:
      return sin(eval(n->a, t0, order, var));
    case K::cos:
      return cos(eval(n->a, t0, order, var));
    case K::exp:
      return exp(eval(n->a, t0, order, var));
  }
  throw DomainError("corrupt expression");
}

std::optional<RationalPoly> poly(const NodePtr& n, const std::vector<std::string>& vars) {
  using K = Expr::Kind;
  switch (n->kind) {
    case K::constant:
      return RationalPoly::constant(n->value, vars);
    case K::variable:
      if (std::find(vars.begin(), vars.end(), n->name) == vars.end()) return std::nullopt;
      return RationalPoly::variable(n->name, vars);
    case K::neg: {
      auto a = poly(n->a, vars);
      if (!a) return std::nullopt;
      return -*a;
    }
    case K::add:
    case K::sub:
    case K::mul: {
      auto a = poly(n->a, vars);
      auto b = poly(n->b, vars);
      if (!a || !b) return std::nullopt;
      if (n->kind == K::add) return *a + *b;
      if (n->kind == K::sub) return *a - *b;
      return *a * *b;
    }
    case K::div: {
      auto a = poly(n->a, vars);
      auto b = poly(n->b, vars);
      if (!a || !b || b->is_zero()) return std::nullopt;
      if (b->terms().size() != 1) return std::nullopt;
      const auto& [e, c] = *b->terms().begin();
      if (std::any_of(e.begin(), e.end(), [](int k) { return k != 0; })) return std::nullopt;
      return *a * (Rational(1) / c);
    }
    case K::pow: {
      if (n->exponent < 0) return std::nullopt;
      auto a = poly(n->a, vars);
      if (!a) return std::nullopt;
      return a->pow(n->exponent);
    }
    case K::sin:
    case K::cos:
    case K::exp:
      return std::nullopt;
  }
  return std::nullopt;
}

int precedence(Expr::Kind k) {
  using K = Expr::Kind;
  switch (k) {
    case K::add:
    case K::sub:
      return 1;
    case K::mul:
    case K::div:
      return 2;
    case K::neg:
      return 3;
    case K::pow:
      return 4;
    default:
      return 5;
  }
}

std::string text(const NodePtr& n) {
  using K = Expr::Kind;
  auto wrap = [&](const NodePtr& c, int min_prec) {
    std::string s = text(c);
    return precedence(c->kind) < min_prec ? "(" + s + ")" : s;
  };
  switch (n->kind) {
    case K::constant:
      return n->value.get_str();
    case K::variable:
      return n->name;
    case K::neg:
      return "-" + wrap(n->a, 3);
    case K::add:
      return wrap(n->a, 1) + " + " + wrap(n->b, 2);
    case K::sub:
      return wrap(n->a, 1) + " - " + wrap(n->b, 2);
    case K::mul:
      return wrap(n->a, 2) + "*" + wrap(n->b, 3);
    case K::div:
      return wrap(n->a, 2) + "/" + wrap(n->b, 3);
    case K::pow:
      return wrap(n->a, 5) + "^" + (n->exponent < 0 ? "(" + std::to_string(n->exponent) + ")" : std::to_string(n->exponent));
    case K::sin:
      return "sin(" + text(n->a) + ")";
    case K::cos:
      return "cos(" + text(n->a) + ")";
    case K::exp:
      return "exp(" + text(n->a) + ")";
  }
  return "?";
}

}  // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& vars) {
  return Expr(Parser(text, vars).run());
}

Expr Expr::constant(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return Expr(n);
}

Expr Expr::variable(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->name = name;
  return Expr(n);
}

Expr::Kind Expr::kind() const { return node_->kind; }

Jet<double> Expr::jet(double t0, int order, const std::string& var) const {
  return eval<double>(node_, t0, order, var);
}

Jet<Rational> Expr::jet(const Rational& t0, int order, const std::string& var) const {
  return eval<Rational>(node_, t0, order, var);
}

std::optional<RationalPoly> Expr::as_polynomial(const std::vector<std::string>& vars) const {
  return poly(node_, vars);
}

std::string Expr::to_string() const { return text(node_); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make(Expr::Kind::add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make(Expr::Kind::sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make(Expr::Kind::mul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make(Expr::Kind::div, a.node_, b.node_)); }

}  // namespace tandev

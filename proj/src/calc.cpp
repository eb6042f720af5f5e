#include "uniloc/calc.hpp"

#include <cctype>
#include <memory>
#include <vector>

namespace uniloc {

CalcError::CalcError(std::size_t column, const std::string& message)
    : Error("column " + std::to_string(column) + ": " + message), column_(column) {}

namespace {

struct Token {
  enum class Kind { number, plus, minus, star, lparen, rparen, directive, end } kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < in.size()) {
    const char c = in[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < in.size() && (std::isdigit(static_cast<unsigned char>(in[j])) || in[j] == '/' || in[j] == '.')) ++j;
      out.push_back({Token::Kind::number, std::string(in.substr(i, j - i)), col});
      i = j;
    } else if (c == '@') {
      std::size_t j = i + 1;
      while (j < in.size() && std::isalpha(static_cast<unsigned char>(in[j]))) ++j;
      out.push_back({Token::Kind::directive, std::string(in.substr(i, j - i)), col});
      i = j;
    } else {
      Token::Kind k;
      switch (c) {
        case '+': k = Token::Kind::plus; break;
        case '-': k = Token::Kind::minus; break;
        case '*': k = Token::Kind::star; break;
        case '(': k = Token::Kind::lparen; break;
        case ')': k = Token::Kind::rparen; break;
        case '/': throw CalcError(col, "division is not supported");
        default: throw CalcError(col, std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c), col});
      ++i;
    }
  }
  out.push_back({Token::Kind::end, "", in.size() + 1});
  return out;
}

struct Node {
  enum class Op { literal, add, sub, mul, neg } op;
  Rational value;
  std::unique_ptr<Node> left, right;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::unique_ptr<Node> expression() {
    auto lhs = term();
    while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
      const auto op = next().kind == Token::Kind::plus ? Node::Op::add : Node::Op::sub;
      lhs = binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  Rational number(const char* what) {
    bool negative = false;
    if (peek().kind == Token::Kind::minus) {
      negative = true;
      next();
    }
    const Token& t = next();
    if (t.kind != Token::Kind::number) throw CalcError(t.column, std::string("expected ") + what);
    Rational q = literal(t);
    return negative ? Rational(-q) : q;
  }

 private:
  static Rational literal(const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const Error& e) {
      throw CalcError(t.column, e.what());
    }
  }

  static std::unique_ptr<Node> binary(Node::Op op, std::unique_ptr<Node> l, std::unique_ptr<Node> r) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
  }

  std::unique_ptr<Node> term() {
    auto lhs = factor();
    while (peek().kind == Token::Kind::star) {
      next();
      lhs = binary(Node::Op::mul, std::move(lhs), factor());
    }
    return lhs;
  }

  std::unique_ptr<Node> factor() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::minus: {
        auto n = std::make_unique<Node>();
        n->op = Node::Op::neg;
        n->left = factor();
        return n;
      }
      case Token::Kind::lparen: {
        auto inner = expression();
        if (next().kind != Token::Kind::rparen) throw CalcError(toks_[pos_ - 1].column, "expected ')'");
        return inner;
      }
      case Token::Kind::number: {
        auto n = std::make_unique<Node>();
        n->op = Node::Op::literal;
        n->value = literal(t);
        return n;
      }
      case Token::Kind::end: throw CalcError(t.column, "unexpected end of expression");
      default: throw CalcError(t.column, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

CauchyReal as_real(const Node& n) {
  switch (n.op) {
    case Node::Op::literal: return embed_rational(n.value);
    case Node::Op::add: return sum(as_real(*n.left), as_real(*n.right));
    case Node::Op::sub: return sum(as_real(*n.left), negation(as_real(*n.right)));
    case Node::Op::mul: return product(as_real(*n.left), as_real(*n.right));
    default: return negation(as_real(*n.left));
  }
}

PAdicBall as_ball(const Node& n, const PAdicMode& mode) {
  switch (n.op) {
    case Node::Op::literal: return PAdicBall(mode.prime, n.value, mode.precision);
    case Node::Op::add: return padic_add(as_ball(*n.left, mode), as_ball(*n.right, mode));
    case Node::Op::sub: return padic_sub(as_ball(*n.left, mode), as_ball(*n.right, mode));
    case Node::Op::mul: return padic_mul(as_ball(*n.left, mode), as_ball(*n.right, mode));
    default: return padic_neg(as_ball(*n.left, mode));
  }
}

}  // namespace

CalcOutcome evaluate_calc(std::string_view input, const CalcSettings& settings) {
  Parser parser(tokenize(input));
  auto tree = parser.expression();
  CalcSettings s = settings;
  while (parser.peek().kind == Token::Kind::directive) {
    const Token d = parser.next();
    if (d.text == "@eps") {
      s.eps = parser.number("a precision after @eps");
      if (*s.eps <= 0) throw CalcError(d.column, "precision must be positive");
    } else if (d.text == "@padic") {
      const Token& pt = parser.peek();
      Rational p = parser.number("a prime after @padic");
      Rational k = parser.number("a precision after the prime");
      if (p.get_den() != 1 || !p.get_num().fits_ulong_p() || !is_prime(p.get_num().get_ui()))
        throw CalcError(pt.column, format_rational(p) + " is not prime");
      if (k.get_den() != 1 || !k.get_num().fits_slong_p()) throw CalcError(d.column, "p-adic precision must be an integer");
      s.padic = PAdicMode{p.get_num().get_ui(), k.get_num().get_si()};
    } else {
      throw CalcError(d.column, "unknown directive " + d.text);
    }
  }
  if (parser.peek().kind != Token::Kind::end) throw CalcError(parser.peek().column, "unexpected '" + parser.peek().text + "'");
  if (s.padic && !is_prime(s.padic->prime)) throw CalcError(1, std::to_string(s.padic->prime) + " is not prime");

  CalcOutcome out;
  out.eps = s.eps.value_or(Rational(1, 1000000));
  if (out.eps <= 0) throw CalcError(1, "precision must be positive");
  if (s.padic) {
    out.ball = as_ball(*tree, *s.padic);
    out.text = out.ball->format();
  } else {
    out.interval = as_real(*tree).at(out.eps);
    out.text = out.interval->format();
  }
  return out;
}

}  // namespace uniloc

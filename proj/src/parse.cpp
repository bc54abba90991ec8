#include "newt/parse.hpp"

#include <cctype>

namespace newt {

namespace {

constexpr int kMaxExponent = 100000;

class Parser {
 public:
  Parser(const std::string& src, const Ctx& ctx) : src_(src), ctx_(ctx) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(pos_, "trailing input");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c)
      throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  Poly expr() {
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      negate = c == '-';
    }
    Poly acc = term();
    if (negate) acc = -acc;
    while (true) {
      char op = peek();
      if (op != '+' && op != '-') break;
      ++pos_;
      Poly t = term();
      acc = op == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (peek() == '^') {
      ++pos_;
      long u = parse_uint();
      if (u > kMaxExponent) throw ParseError(pos_, "exponent too large");
      b = b.pow(static_cast<unsigned>(u));
    }
    return b;
  }

  Poly base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      std::string name;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          name += d;
          ++pos_;
        } else {
          break;
        }
      }
      int idx = ctx_->index_of(name);
      if (idx < 0) throw ParseError(start, "unknown variable " + name);
      return Poly::variable(ctx_, idx);
    }
    throw ParseError(pos_, "expected rational, identifier or '('");
  }

  Poly rational() {
    skip_ws();
    size_t start = pos_;
    bool neg = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::string digits = read_digits();
    if (digits.empty()) throw ParseError(start, "expected integer");
    mpz_class num(digits);
    if (neg) num = -num;
    mpq_class value(num);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '/') {
      ++pos_;
      skip_ws();
      size_t dpos = pos_;
      std::string dden = read_digits();
      if (dden.empty()) throw ParseError(dpos, "expected unsigned denominator");
      mpz_class den(dden);
      if (den == 0) throw ParseError(dpos, "zero denominator");
      value = mpq_class(num, den);
      value.canonicalize();
    }
    return Poly::constant(ctx_, value);
  }

  long parse_uint() {
    skip_ws();
    size_t start = pos_;
    std::string digits = read_digits();
    if (digits.empty()) throw ParseError(start, "expected unsigned integer");
    if (digits.size() > 9) throw ParseError(start, "integer too large");
    return std::stol(digits);
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      out += src_[pos_];
      ++pos_;
    }
    return out;
  }

  const std::string& src_;
  Ctx ctx_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& src, const Ctx& ctx) { return Parser(src, ctx).run(); }

}  // namespace newt

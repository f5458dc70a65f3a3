#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "crtrans/mpoly.hpp"

namespace crtrans {

enum class ParseErrorKind { Syntax, UnknownIdentifier, DimensionOverflow };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " + message), kind_(kind), position_(position) {}
  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
};

namespace detail {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := base ('^' nat)?
//   base   := nat ['/' nat] | 'i' | ident | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, Universe u) : s_(text), u_(std::move(u)) {}

  MPoly parse() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseErrorKind kind = ParseErrorKind::Syntax) const {
    throw ParseError(kind, pos_, msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_base(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  MPoly expr() {
    MPoly acc(u_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = s_[pos_++] == '-';
    MPoly t = term();
    acc = negate ? -t : t;
    while (peek() == '+' || peek() == '-') {
      const bool minus = s_[pos_++] == '-';
      MPoly next = term();
      acc = minus ? acc - next : acc + next;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_base(c)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  MPoly factor() {
    MPoly b = base();
    if (peek() == '^') {
      ++pos_;
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
      const std::string digits = number();
      if (digits.size() > 6) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return b;
  }

  std::string number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  MPoly base() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value(number());
      if (peek() == '/') {
        ++pos_;
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("'/' is only allowed inside a rational literal p/q");
        const std::size_t at = pos_;
        mpz_class den(number());
        if (den == 0) throw ParseError(ParseErrorKind::Syntax, at, "zero denominator");
        value /= den;
        value.canonicalize();
      }
      return MPoly(u_, GaussRat(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  MPoly identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::size_t letters_end = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "i") return MPoly(u_, GaussRat::i());
    if (auto v = u_->find(name)) return MPoly::variable(u_, *v);
    const std::string prefix(s_.substr(start, letters_end - start));
    if (letters_end != pos_) {
      for (const auto& known : u_->names()) {
        if (known.size() > prefix.size() && known.compare(0, prefix.size(), prefix) == 0 &&
            std::isdigit(static_cast<unsigned char>(known[prefix.size()]))) {
          throw ParseError(ParseErrorKind::DimensionOverflow, start, "variable index out of range: " + name);
        }
      }
    }
    throw ParseError(ParseErrorKind::UnknownIdentifier, start, "unknown identifier: " + name);
  }

  std::string_view s_;
  Universe u_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over Q(i) in the variables of u. Whitespace is
/// ignored and juxtaposition means multiplication.
inline MPoly parse_poly(std::string_view text, const Universe& u) { return detail::PolyParser(text, u).parse(); }

}  // namespace crtrans

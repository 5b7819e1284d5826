#include "arithdyn/parse.hpp"

#include <cctype>

namespace arithdyn {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::uint64_t conductor, bool allow_z, std::size_t offset = 0)
      : text_(text), conductor_(conductor), allow_z_(allow_z), offset_(offset) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    Polynomial value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial constant(const Rational& q) const { return Polynomial::constant(CycloNumber(conductor_, q)); }

  Polynomial expr() {
    Polynomial acc(conductor_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const Polynomial d = factor();
        if (d.degree() > 0) throw ParseError("division by a non-constant", offset_ + at);
        if (d.is_zero()) throw ParseError("division by zero", offset_ + at);
        acc *= d.leading().inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      if (pos_ - start > 4) throw ParseError("exponent too large", offset_ + start);
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (c == 'z') {
      if (!allow_z_) fail("variable 'z' not allowed here");
      ++pos_;
      return Polynomial::identity(conductor_);
    }
    if (c == 'w') {
      if (conductor_ == 1) fail("cyclotomic symbol 'w' used without a conductor");
      ++pos_;
      return Polynomial::constant(CycloNumber::zeta(conductor_));
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::uint64_t conductor_;
  bool allow_z_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

// Splits "a, b, (c, d)" at top-level commas, reporting each piece's offset.
std::vector<std::pair<std::string_view, std::size_t>> split_top_level(std::string_view s, std::size_t offset) {
  std::vector<std::pair<std::string_view, std::size_t>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      parts.emplace_back(s.substr(start, i - start), offset + start);
      start = i + 1;
    }
  }
  parts.emplace_back(s.substr(start), offset + start);
  return parts;
}

class LineParser {
 public:
  LineParser(std::string_view text, std::uint64_t conductor) : text_(text), conductor_(conductor) {}

  Line parse(std::size_t dimension) {
    auto base = tuple();
    expect('+');
    expect('t');
    expect('*');
    auto dir = tuple();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    if (base.size() != dir.size()) throw ParseError("base point and direction differ in dimension", pos_);
    if (dimension != 0 && base.size() != dimension) {
      throw ParseError("line has dimension " + std::to_string(base.size()) + ", expected " +
                           std::to_string(dimension),
                       0);
    }
    bool any = false;
    for (const auto& v : dir) any = any || !v.is_zero();
    if (!any) throw ParseError("zero direction", pos_);
    return Line(std::move(base), std::move(dir));
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::vector<CycloNumber> tuple() {
    expect('(');
    const std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size() && depth > 0) {
      if (text_[pos_] == '(') ++depth;
      if (text_[pos_] == ')') --depth;
      ++pos_;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses", start);
    std::vector<CycloNumber> out;
    for (auto [piece, off] : split_top_level(text_.substr(start, pos_ - 1 - start), start)) {
      out.push_back(ExprParser(piece, conductor_, false, off).parse().coeff(0));
    }
    return out;
  }

  std::string_view text_;
  std::uint64_t conductor_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::uint64_t conductor) {
  if (conductor == 0) throw std::invalid_argument("conductor must be >= 1");
  return ExprParser(text, conductor, true).parse();
}

CycloNumber parse_constant(std::string_view text, std::uint64_t conductor) {
  if (conductor == 0) throw std::invalid_argument("conductor must be >= 1");
  return ExprParser(text, conductor, false).parse().coeff(0);
}

Line parse_line(std::string_view text, std::size_t dimension, std::uint64_t conductor) {
  if (conductor == 0) throw std::invalid_argument("conductor must be >= 1");
  return LineParser(text, conductor).parse(dimension);
}

std::string to_string(const Line& line) {
  auto tuple = [](const std::vector<CycloNumber>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += to_string(v[i]);
    }
    return s + ")";
  };
  return tuple(line.base()) + " + t*" + tuple(line.direction());
}

std::vector<Polynomial> parse_map_list(std::string_view text, std::uint64_t conductor) {
  std::vector<Polynomial> maps;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    const auto piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    try {
      maps.push_back(parse_polynomial(piece, conductor));
    } catch (const ParseError& e) {
      throw ParseError("map " + std::to_string(maps.size() + 1) + ": " + e.what(), start + e.position());
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return maps;
}

}  // namespace arithdyn

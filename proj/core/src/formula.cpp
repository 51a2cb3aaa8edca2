#include "bergm/formula.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergm/error.hpp"

namespace bergm {

namespace {

enum class Tok { ident, string, number, lparen, rparen, comma, equals, plus, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  double number = 0.0;
  std::size_t column = 0;  // 1-based
};

[[noreturn]] void fail(const std::string& message, std::size_t column) {
  throw ParseError(message, "formula column " + std::to_string(column));
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (true) {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    Token tok;
    tok.column = pos + 1;
    if (pos == src.size()) {
      out.push_back(tok);
      return out;
    }
    const char c = src[pos];
    const bool leading_dot_number =
        c == '.' && pos + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + 1]));
    if (!leading_dot_number &&
        (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.')) {
      const std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
              src[pos] == '.')) {
        ++pos;
      }
      tok.type = Tok::ident;
      tok.text = std::string(src.substr(start, pos - start));
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || leading_dot_number) {
      const std::size_t start = pos;
      ++pos;
      while (pos < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.' ||
              src[pos] == 'e' || src[pos] == 'E' ||
              ((src[pos] == '+' || src[pos] == '-') &&
               (src[pos - 1] == 'e' || src[pos - 1] == 'E')))) {
        ++pos;
      }
      tok.type = Tok::number;
      tok.text = std::string(src.substr(start, pos - start));
      char* end = nullptr;
      tok.number = std::strtod(tok.text.c_str(), &end);
      if (end != tok.text.c_str() + tok.text.size()) {
        fail("malformed number '" + tok.text + "'", tok.column);
      }
    } else if (c == '"' || c == '\'') {
      ++pos;
      std::string value;
      bool closed = false;
      while (pos < src.size()) {
        const char ch = src[pos++];
        if (ch == '\\' && pos < src.size()) {
          value.push_back(src[pos++]);
        } else if (ch == c) {
          closed = true;
          break;
        } else {
          value.push_back(ch);
        }
      }
      if (!closed) fail("unterminated string", tok.column);
      tok.type = Tok::string;
      tok.text = std::move(value);
    } else {
      switch (c) {
        case '(': tok.type = Tok::lparen; break;
        case ')': tok.type = Tok::rparen; break;
        case ',': tok.type = Tok::comma; break;
        case '=': tok.type = Tok::equals; break;
        case '+': tok.type = Tok::plus; break;
        default: fail(std::string("unexpected character '") + c + "'", tok.column);
      }
      tok.text = std::string(1, c);
      ++pos;
    }
    out.push_back(std::move(tok));
  }
}

using Value = std::variant<std::string, double, bool, std::vector<std::string>>;

struct Argument {
  std::optional<std::string> name;
  Value value;
  std::size_t column = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  ModelSpec parse() {
    ModelSpec spec;
    if (peek().type == Tok::end) fail("empty formula", peek().column);
    spec.terms.push_back(term());
    while (peek().type == Tok::plus) {
      next();
      spec.terms.push_back(term());
    }
    if (peek().type != Tok::end) fail("expected '+' or end of formula", peek().column);
    return spec;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  const Token& expect(Tok type, const char* what) {
    if (peek().type != type) fail(std::string("expected ") + what, peek().column);
    return next();
  }

  Value value() {
    const Token& tok = next();
    switch (tok.type) {
      case Tok::string:
        return tok.text;
      case Tok::number:
        return tok.number;
      case Tok::ident:
        if (tok.text == "TRUE" || tok.text == "true") return true;
        if (tok.text == "FALSE" || tok.text == "false") return false;
        if (tok.text == "c" && peek().type == Tok::lparen) {
          next();
          std::vector<std::string> items;
          if (peek().type != Tok::rparen) {
            items.push_back(expect(Tok::string, "a quoted level").text);
            while (peek().type == Tok::comma) {
              next();
              items.push_back(expect(Tok::string, "a quoted level").text);
            }
          }
          expect(Tok::rparen, "')'");
          return items;
        }
        fail("unexpected identifier '" + tok.text + "'", tok.column);
      default:
        fail("expected a value", tok.column);
    }
  }

  Argument argument() {
    Argument arg;
    arg.column = peek().column;
    if (peek().type == Tok::ident && tokens_[pos_ + 1].type == Tok::equals) {
      arg.name = next().text;
      next();
    }
    arg.value = value();
    return arg;
  }

  ModelTerm term() {
    const Token& head = expect(Tok::ident, "a term name");
    const auto kind = term_kind_from_name(head.text);
    if (!kind) fail("unknown term '" + head.text + "'", head.column);
    std::vector<Argument> args;
    if (peek().type == Tok::lparen) {
      next();
      if (peek().type != Tok::rparen) {
        args.push_back(argument());
        while (peek().type == Tok::comma) {
          next();
          args.push_back(argument());
        }
      }
      expect(Tok::rparen, "')'");
    }
    ModelTerm term;
    term.kind = *kind;
    bind(term, args);
    try {
      validate(term, /*allow_unbound=*/true);
    } catch (const ModelError& e) {
      fail(e.what(), head.column);
    }
    return term;
  }

  static void bind(ModelTerm& term, const std::vector<Argument>& args) {
    bool named_seen = false;
    int positional = 0;
    for (const auto& arg : args) {
      if (!arg.name) {
        if (named_seen) fail("positional argument after named argument", arg.column);
        if (positional++ > 0) fail("too many positional arguments", arg.column);
        if (const auto* s = std::get_if<std::string>(&arg.value)) {
          term.attribute = *s;
        } else if (const auto* d = std::get_if<double>(&arg.value)) {
          if (*d != std::floor(*d) || std::abs(*d) > 1e6) {
            fail("integer argument expected", arg.column);
          }
          term.order = static_cast<int>(*d);
        } else {
          fail("positional argument must be a quoted attribute or an integer", arg.column);
        }
        continue;
      }
      named_seen = true;
      const std::string& name = *arg.name;
      if (name == "alpha" || name == "beta") {
        const auto* d = std::get_if<double>(&arg.value);
        if (!d) fail(name + " must be a number", arg.column);
        auto& slot = name == "alpha" ? term.alpha : term.beta;
        if (slot) fail("duplicate argument " + name, arg.column);
        slot = *d;
      } else if (name == "diff") {
        const auto* b = std::get_if<bool>(&arg.value);
        if (!b) fail("diff must be TRUE or FALSE", arg.column);
        term.diff = *b;
      } else if (name == "keep") {
        if (const auto* s = std::get_if<std::string>(&arg.value)) {
          term.keep_levels = {*s};
        } else if (const auto* v = std::get_if<std::vector<std::string>>(&arg.value)) {
          term.keep_levels = *v;
        } else {
          fail("keep must be a level or c(...) of levels", arg.column);
        }
      } else if (name == "attr" || name == "attrname") {
        const auto* s = std::get_if<std::string>(&arg.value);
        if (!s) fail(name + " must be a quoted attribute name", arg.column);
        term.attribute = *s;
      } else {
        fail("unknown argument '" + name + "'", arg.column);
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

ModelSpec parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

std::string format_formula(const ModelSpec& spec) {
  std::string out;
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    const ModelTerm& term = spec.terms[t];
    if (t > 0) out += " + ";
    out += term_name(term.kind);
    std::vector<std::string> args;
    if (term.attribute) args.push_back(quote(*term.attribute));
    if (term.order) args.push_back(std::to_string(*term.order));
    if (term.alpha) args.push_back("alpha = " + format_number(*term.alpha));
    if (term.beta) args.push_back("beta = " + format_number(*term.beta));
    if (term.diff) args.push_back("diff = TRUE");
    if (!term.keep_levels.empty()) {
      std::string keep = "keep = c(";
      for (std::size_t l = 0; l < term.keep_levels.size(); ++l) {
        if (l > 0) keep += ", ";
        keep += quote(term.keep_levels[l]);
      }
      args.push_back(keep + ")");
    }
    if (args.empty()) continue;
    out += "(";
    for (std::size_t a = 0; a < args.size(); ++a) {
      if (a > 0) out += ", ";
      out += args[a];
    }
    out += ")";
  }
  return out;
}

}  // namespace bergm

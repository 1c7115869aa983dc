#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace expdq {

// Arithmetic over the variables x, y, t: binary + - * / (also the unicode
// aliases for times, divide and minus), unary minus, parentheses, the
// functions sin cos sinh cosh exp log, decimal literals, and pi (also the
// unicode glyph).  Parsed once into a postfix program, evaluated many times.
class Expression {
 public:
  static Expression parse(const std::string& text) {
    Parser p{text, 0, {}};
    p.sum();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    Expression e;
    e.code_ = std::move(p.out);
    return e;
  }

  double operator()(double x, double y, double t) const {
    std::vector<double> st;
    st.reserve(16);
    for (const Instr& in : code_) {
      switch (in.op) {
        case Op::kConst: st.push_back(in.value); break;
        case Op::kX: st.push_back(x); break;
        case Op::kY: st.push_back(y); break;
        case Op::kT: st.push_back(t); break;
        case Op::kNeg: st.back() = -st.back(); break;
        case Op::kAdd: pop_into(st, [](double a, double b) { return a + b; }); break;
        case Op::kSub: pop_into(st, [](double a, double b) { return a - b; }); break;
        case Op::kMul: pop_into(st, [](double a, double b) { return a * b; }); break;
        case Op::kDiv: pop_into(st, [](double a, double b) { return a / b; }); break;
        case Op::kSin: st.back() = std::sin(st.back()); break;
        case Op::kCos: st.back() = std::cos(st.back()); break;
        case Op::kSinh: st.back() = std::sinh(st.back()); break;
        case Op::kCosh: st.back() = std::cosh(st.back()); break;
        case Op::kExp: st.back() = std::exp(st.back()); break;
        case Op::kLog: st.back() = std::log(st.back()); break;
      }
    }
    return st.back();
  }

 private:
  enum class Op : unsigned char {
    kConst, kX, kY, kT, kNeg, kAdd, kSub, kMul, kDiv,
    kSin, kCos, kSinh, kCosh, kExp, kLog
  };
  struct Instr {
    Op op;
    double value;
  };

  template <class F>
  static void pop_into(std::vector<double>& st, F f) {
    const double b = st.back();
    st.pop_back();
    st.back() = f(st.back(), b);
  }

  struct Parser {
    const std::string& s;
    std::size_t i;
    std::vector<Instr> out;

    [[noreturn]] void fail(const std::string& what) const {
      throw std::invalid_argument("expression error at byte " +
                                  std::to_string(i) + ": " + what);
    }
    void skip() {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool match(std::string_view tok) {
      skip();
      if (s.compare(i, tok.size(), tok) == 0) {
        i += tok.size();
        return true;
      }
      return false;
    }

    void sum() {
      product();
      for (;;) {
        if (match("+")) {
          product();
          out.push_back({Op::kAdd, 0});
        } else if (match("-") || match("\xE2\x88\x92")) {
          product();
          out.push_back({Op::kSub, 0});
        } else {
          break;
        }
      }
    }

    void product() {
      factor();
      for (;;) {
        if (match("*") || match("\xC3\x97")) {
          factor();
          out.push_back({Op::kMul, 0});
        } else if (match("/") || match("\xC3\xB7")) {
          factor();
          out.push_back({Op::kDiv, 0});
        } else {
          break;
        }
      }
    }

    void factor() {
      if (match("-") || match("\xE2\x88\x92")) {
        factor();
        out.push_back({Op::kNeg, 0});
      } else if (match("+")) {
        factor();
      } else {
        primary();
      }
    }

    void primary() {
      skip();
      if (i >= s.size()) fail("unexpected end of input");
      const char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        number();
        return;
      }
      if (match("(")) {
        sum();
        if (!match(")")) fail("expected ')'");
        return;
      }
      if (match("\xCF\x80")) {
        out.push_back({Op::kConst, std::numbers::pi});
        return;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        ident();
        return;
      }
      fail(std::string("unexpected character '") + c + "'");
    }

    void number() {
      const char* begin = s.c_str() + i;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      i += static_cast<std::size_t>(end - begin);
      out.push_back({Op::kConst, v});
    }

    void ident() {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_'))
        ++i;
      const std::string name = s.substr(start, i - start);
      if (name == "x") {
        out.push_back({Op::kX, 0});
        return;
      }
      if (name == "y") {
        out.push_back({Op::kY, 0});
        return;
      }
      if (name == "t") {
        out.push_back({Op::kT, 0});
        return;
      }
      if (name == "pi") {
        out.push_back({Op::kConst, std::numbers::pi});
        return;
      }
      Op fn;
      if (name == "sin") fn = Op::kSin;
      else if (name == "cos") fn = Op::kCos;
      else if (name == "sinh") fn = Op::kSinh;
      else if (name == "cosh") fn = Op::kCosh;
      else if (name == "exp") fn = Op::kExp;
      else if (name == "log") fn = Op::kLog;
      else fail("unknown name '" + name + "'");
      if (!match("(")) fail("'" + name + "' needs a parenthesized argument");
      sum();
      if (!match(")")) fail("expected ')'");
      out.push_back({fn, 0});
    }
  };

  std::vector<Instr> code_;
};

}  // namespace expdq

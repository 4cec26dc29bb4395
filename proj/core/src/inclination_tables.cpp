#include "flyby/inclination_tables.hpp"

#include <cctype>
#include <string>

#include "flyby/errors.hpp"

namespace flyby {

namespace {

using Coeffs = std::array<long long, 5>;

Coeffs add(const Coeffs& a, const Coeffs& b, long long sign) {
  Coeffs r{};
  for (std::size_t n = 0; n < r.size(); ++n) r[n] = a[n] + sign * b[n];
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  Coeffs r{};
  for (std::size_t m = 0; m < a.size(); ++m) {
    for (std::size_t n = 0; n < b.size(); ++n) {
      if (a[m] == 0 || b[n] == 0) continue;
      if (m + n >= r.size()) throw DomainError("inclination polynomial degree exceeds s^8");
      r[m + n] += a[m] * b[n];
    }
  }
  return r;
}

// poly   := term { ('+'|'-') term }
// term   := ['+'|'-'] factor { factor }
// factor := integer | "s^2" | "s^4" | '(' poly ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Coeffs parse() {
    Coeffs r = poly();
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    return r;
  }

 private:
  Coeffs poly() {
    Coeffs acc = term();
    for (;;) {
      skip();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) return acc;
      const long long sign = text_[pos_] == '-' ? -1 : 1;
      ++pos_;
      acc = add(acc, term(), sign);
    }
  }

  Coeffs term() {
    skip();
    long long sign = 1;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      if (text_[pos_] == '-') sign = -1;
      ++pos_;
    }
    Coeffs acc = factor();
    for (;;) {
      skip();
      if (pos_ >= text_.size()) break;
      const char ch = text_[pos_];
      if (ch == '(' || ch == 's' || std::isdigit(static_cast<unsigned char>(ch))) {
        acc = mul(acc, factor());
      } else {
        break;
      }
    }
    Coeffs unit{};
    unit[0] = sign;
    return mul(unit, acc);
  }

  Coeffs factor() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    Coeffs r{};
    if (ch == '(') {
      ++pos_;
      r = poly();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return r;
    }
    if (ch == 's') {
      if (text_.substr(pos_, 3) == "s^2") {
        r[1] = 1;
      } else if (text_.substr(pos_, 3) == "s^4") {
        r[2] = 1;
      } else {
        fail("expected s^2 or s^4");
      }
      pos_ += 3;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      long long v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = 10 * v + (text_[pos_] - '0');
        ++pos_;
      }
      r[0] = v;
      return r;
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("malformed inclination polynomial \"" + std::string(text_) + "\": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Row {
  int i;
  int j;
  std::array<std::string_view, 3> by_k;
};

// Cosine-term polynomials q_{k,i,j}, columns k = 0, 1, 2.
constexpr Row kQRows[] = {
    {0, -2, {"0", "64 (3 s^2-2)", "0"}},
    {0, -1, {"0", "160 (3 s^2-2)", "0"}},
    {0, 0, {"0", "16 (s^2+6)", "-48"}},
    {0, 1, {"0", "0", "-48"}},
    {0, 2, {"-24 s^2 (15 s^2-4)", "0", "-120"}},
    {0, 3, {"-112 s^4", "0", "0"}},
    {0, 4, {"-72 s^4", "0", "0"}},
    {1, -3, {"0", "8 (3 s^2-2)", "0"}},
    {1, -2, {"0", "-80 (3 s^2-2)", "0"}},
    {1, -1, {"-12 s^2 (13 s^2-4)", "-8 (45 s^2-26)", "-12"}},
    {1, 0, {"2 (255 s^4-576 s^2+272)", "8 (149 s^2-142)", "42"}},
    {1, 1, {"-12 s^2 (13 s^2-4)", "96 (2 s^2-1)", "-36"}},
    {1, 2, {"12 s^2 (45 s^2-16)", "-96 (6 s^2-5)", "60"}},
    {1, 3, {"4 s^2 (7 s^2+8)", "0", "-120"}},
    {1, 4, {"90 s^4", "0", "-54"}},
    {1, 5, {"-12 s^4", "0", "0"}},
    {2, -3, {"0", "-10 (3 s^2-2)", "0"}},
    {2, -2, {"0", "16 (3 s^2-2)", "0"}},
    {2, -1, {"8 (75 s^4-72 s^2+20)", "-2 (153 s^2-134)", "15"}},
    {2, 0, {"6 (11 s^4+64 s^2-48)", "-4 (329 s^2-278)", "6"}},
    {2, 1, {"8 (75 s^4-72 s^2+20)", "-6 (127 s^2-90)", "81"}},
    {2, 2, {"4 (27 s^4-72 s^2+32)", "24 (9 s^2-10)", "60"}},
    {2, 3, {"s^2 (145 s^2-64)", "-2 (195 s^2-146)", "105"}},
    {2, 4, {"-18 s^4", "-36 (3 s^2-2)", "54"}},
    {2, 5, {"15 s^4", "0", "-9"}},
    {3, -3, {"0", "2 (3 s^2-2)", "0"}},
    {3, -1, {"-6 (5 s^4+4 s^2-4)", "24 (7 s^2-6)", "-3"}},
    {3, 1, {"-6 (5 s^4+4 s^2-4)", "12 (25 s^2-22)", "3"}},
    {3, 3, {"-25 s^4-16 s^2+16", "8 (15 s^2-14)", "15"}},
    {3, 5, {"-3 s^4", "-6 (3 s^2-2)", "9"}},
};

// Sine-term polynomials p_{k,i,j}, columns k = 0, 1, 2.
constexpr Row kPRows[] = {
    {0, -2, {"0", "-64 (3 s^2-2)", "0"}},
    {0, -1, {"0", "-160 (3 s^2-2)", "0"}},
    {0, 0, {"0", "-16 (s^2+6)", "48"}},
    {0, 1, {"0", "0", "48"}},
    {0, 2, {"-24 s^2 (15 s^2-4)", "0", "120"}},
    {0, 3, {"-112 s^4", "0", "0"}},
    {0, 4, {"-72 s^4", "0", "0"}},
    {1, -3, {"0", "-8 (3 s^2-2)", "0"}},
    {1, -2, {"0", "48 (3 s^2-2)", "0"}},
    {1, -1, {"12 s^2 (13 s^2-4)", "24 (5 s^2-2)", "12"}},
    {1, 0, {"0", "-16 (75 s^2-68)", "-18"}},
    {1, 1, {"-12 s^2 (13 s^2-4)", "-96 (2 s^2-1)", "60"}},
    {1, 2, {"72 s^2 (5 s^2-2)", "-32 (15 s^2-13)", "0"}},
    {1, 3, {"4 s^2 (8-7 s^2)", "0", "120"}},
    {1, 4, {"54 s^4", "0", "66"}},
    {1, 5, {"-12 s^4", "0", "0"}},
    {2, -3, {"0", "6 (3 s^2-2)", "0"}},
    {2, -1, {"-2 (27 s^4+180 s^2-128)", "18 (17 s^2-14)", "-9"}},
    {2, 0, {"0", "-6 (17 s^2-18)", "-9"}},
    {2, 1, {"2 (27 s^4+180 s^2-128)", "-2 (825 s^2-742)", "-45"}},
    {2, 2, {"6 (5 s^4+8 s^2-8)", "-24 (s^2-2)", "-15"}},
    {2, 3, {"3 s^2 (39 s^2-16)", "2 (55 s^2-34)", "-15"}},
    {2, 4, {"0", "6 (13 s^2-10)", "-3"}},
    {2, 5, {"9 s^4", "0", "21"}},
    {2, 6, {"0", "0", "3"}},
};

const InclinationPoly kZero{};

}  // namespace

std::array<long long, 5> expand_inclination_polynomial(std::string_view text) { return Parser(text).parse(); }

std::string render_inclination_polynomial(const std::array<long long, 5>& coeff) {
  std::string out;
  for (int n = static_cast<int>(coeff.size()) - 1; n >= 0; --n) {
    const long long c = coeff[n];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const long long a = c < 0 ? -c : c;
    if (a != 1 || n == 0) out += std::to_string(a);
    if (n > 0) {
      if (a != 1) out += " ";
      out += "s^" + std::to_string(2 * n);
    }
  }
  return out.empty() ? "0" : out;
}

InclinationTables::InclinationTables() {
  auto fill = [](Grid& grid, const auto& rows) {
    for (const Row& row : rows) {
      for (int k = 0; k < 3; ++k) {
        InclinationPoly& entry = grid[k][row.i][row.j - kMinJ];
        entry.printed = row.by_k[k];
        entry.coeff = expand_inclination_polynomial(row.by_k[k]);
      }
    }
  };
  fill(q_, kQRows);
  fill(p_, kPRows);
}

const InclinationTables& InclinationTables::instance() {
  static const InclinationTables tables;
  return tables;
}

const InclinationPoly& InclinationTables::lookup(const Grid& g, int k, int i, int j) {
  if (k < 0 || k > 2 || i < 0 || i > 3 || j < kMinJ || j > kMaxJ) return kZero;
  return g[k][i][j - kMinJ];
}

const InclinationPoly& InclinationTables::q(int k, int i, int j) const { return lookup(q_, k, i, j); }
const InclinationPoly& InclinationTables::p(int k, int i, int j) const { return lookup(p_, k, i, j); }

}  // namespace flyby

#pragma once

// Integer inclination polynomials in s^2 (s = sine of inclination) that weight
// the trigonometric terms of the second-order generating function.

#include <array>
#include <string>
#include <string_view>

namespace flyby {

// c[0] + c[1] s^2 + c[2] s^4 + c[3] s^6 + c[4] s^8
struct InclinationPoly {
  std::array<long long, 5> coeff{};
  std::string_view printed = "0";

  template <class T>
  T operator()(const T& s2) const {
    T acc = T(static_cast<double>(coeff[4]));
    for (int n = 3; n >= 0; --n) acc = acc * s2 + static_cast<double>(coeff[n]);
    return acc;
  }

  bool is_zero() const {
    for (auto c : coeff)
      if (c != 0) return false;
    return true;
  }
};

// Expands a factored polynomial such as "-24 s^2 (15 s^2-4)".
// Throws DomainError on malformed input.
std::array<long long, 5> expand_inclination_polynomial(std::string_view text);

// Canonical expanded rendering, highest power first: "-360 s^4 + 96 s^2".
std::string render_inclination_polynomial(const std::array<long long, 5>& coeff);

class InclinationTables {
 public:
  static constexpr int kMinJ = -3;
  static constexpr int kMaxJ = 6;

  static const InclinationTables& instance();

  // Cosine-term polynomials q_{k,i,j}; zero when the entry is not tabulated.
  const InclinationPoly& q(int k, int i, int j) const;
  // Sine-term polynomials p_{k,i,j}.
  const InclinationPoly& p(int k, int i, int j) const;

 private:
  InclinationTables();

  using Grid = std::array<std::array<std::array<InclinationPoly, kMaxJ - kMinJ + 1>, 4>, 3>;
  static const InclinationPoly& lookup(const Grid& g, int k, int i, int j);

  Grid q_{};
  Grid p_{};
};

}  // namespace flyby

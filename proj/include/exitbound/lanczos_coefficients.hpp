#pragma once

#include <array>

namespace exitbound::lanczos {

// Lanczos approximation with g = 7 and 9 terms (the table published by
// Godfrey and used by many numerical libraries):
//   Gamma(z + 1) = sqrt(2 pi) (z + g + 1/2)^(z + 1/2) e^-(z + g + 1/2) A_g(z)
//   A_g(z) = c0 + sum_{k=1}^{8} c_k / (z + k)
// Relative error is below 2e-15 for real z > 0.
inline constexpr double g = 7.0;

inline constexpr std::array<double, 9> coefficients = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace exitbound::lanczos

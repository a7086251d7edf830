#include "conint/chem/boys.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace conint::chem {

namespace {
constexpr double kLargeArgument = 30.0;
}

void boys_function(double t, std::span<double> out) {
  if (out.empty()) return;
  const int m_max = static_cast<int>(out.size()) - 1;
  if (t < 1e-14) {
    for (int m = 0; m <= m_max; ++m) out[m] = 1.0 / (2 * m + 1) - t / (2 * m + 3);
    return;
  }
  const double et = std::exp(-t);
  if (t > kLargeArgument) {
    out[0] = 0.5 * std::sqrt(std::numbers::pi / t) * std::erf(std::sqrt(t));
    for (int m = 0; m < m_max; ++m) out[m + 1] = ((2 * m + 1) * out[m] - et) / (2.0 * t);
    return;
  }
  // F_m(t) = e^{-t} sum_k (2t)^k / ((2m+1)(2m+3)...(2m+2k+1)); all terms positive.
  double term = 1.0 / (2 * m_max + 1);
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= 2.0 * t / (2 * m_max + 2 * k + 1);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  out[m_max] = et * sum;
  for (int m = m_max; m > 0; --m) out[m - 1] = (2.0 * t * out[m] + et) / (2 * m - 1);
}

double boys_function(int m, double t) {
  std::vector<double> buf(m + 1);
  boys_function(t, buf);
  return buf[m];
}

}  // namespace conint::chem

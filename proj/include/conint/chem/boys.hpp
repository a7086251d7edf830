#pragma once

#include <span>

namespace conint::chem {

/// Boys function F_m(T) = \int_0^1 t^{2m} exp(-T t^2) dt for m = 0..out.size()-1.
///
/// Small and moderate T: series for the highest order followed by downward
/// recursion. Large T: closed form for F_0 and upward recursion, which is
/// stable there. Relative accuracy is about 1e-14 throughout.
void boys_function(double t, std::span<double> out);

double boys_function(int m, double t);

}  // namespace conint::chem

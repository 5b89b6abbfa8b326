// zeta(0) of the flat Dirac operator from a truncated spectrum.
#include <cstdio>
#include <numbers>

#include "conftorus/numerics/zeta.hpp"

int main() {
  namespace num = conftorus::num;
  const int n = 1;
  for (int N : {8, 12, 16}) {
    const auto fit = num::zeta_at_zero(num::dirac_spectrum(N, n), N, 2.0 * n / (4 * std::numbers::pi));
    std::printf("N = %2d  zeta(0) = %+.6f  bracket [%+.6f, %+.6f]  kernel %d\n", N, fit.zeta0, fit.lo, fit.hi,
                fit.kernel_dim);
  }
  std::printf("exact value: %d\n", -2 * n);
}

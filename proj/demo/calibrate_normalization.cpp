// Measures the constant linking the localized heat-trace coefficient of D_h^2
// to int Tr(f R): c0(f) = kappa int Tr(f R). Expected kappa = 1 / (2 pi^2).
#include <cstdio>
#include <numbers>

#include "conftorus/numerics/profiles.hpp"
#include "conftorus/xi/field.hpp"

int main() {
  namespace num = conftorus::num;
  namespace xi = conftorus::xi;
  const num::Profile p = num::make_profile("P2", 1);
  const num::MatrixFunction f =
      num::MatrixFunction::from_samples(1, [](double x1, double) { return num::Matrix::Constant(1, 1, std::cos(2 * std::numbers::pi * x1)); });
  const xi::DensityParts parts = xi::curvature_pipeline();
  const double integral = xi::torus_integral(parts.total(), xi::FieldData(p.H), 128, &f);
  std::printf("int Tr(f R) = %.6f\n", integral);
  for (int N : {10, 12, 14}) {
    const num::TruncatedOperator op = num::profile_operator(p, N);
    const num::HeatTraceFit fit = num::localized_trace(op, f, num::weyl_coefficient(p.h, &f));
    std::printf("N = %2d  c0 = %.5f  kappa = %.6f\n", N, fit.c0, fit.c0 / integral);
  }
  std::printf("1 / (2 pi^2) = %.6f\n", 1 / (2 * std::numbers::pi * std::numbers::pi));
}

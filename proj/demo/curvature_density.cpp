// Symbolic curvature density, then its torus integral for a matrix profile with a gauge field.
#include <cstdio>

#include "conftorus/numerics/profiles.hpp"
#include "conftorus/xi/field.hpp"

int main() {
  namespace xi = conftorus::xi;
  const xi::DensityParts parts = xi::curvature_pipeline();
  std::printf("pure-H part (coefficients of pi):\n");
  for (const auto& [k, c] : parts.pureH.pureH) std::printf("  %s  %s\n", conftorus::sym::to_string(c).c_str(), xi::pureH_tag(k).c_str());
  std::printf("A-dependent parts:\n");
  for (const auto* R : {&parts.linA, &parts.linDA, &parts.quadA})
    for (const auto& s : R->sandwich) std::printf("  %s\n", xi::describe(s).c_str());
  for (const char* name : {"P3", "P4"}) {
    const auto p = conftorus::num::make_profile(name, 2);
    const xi::FieldData F(p.H, p.A ? p.A : p.gauge);
    std::printf("%s: int Tr R = %.3e\n", name, xi::torus_integral(parts.total(), F, 96));
  }
}

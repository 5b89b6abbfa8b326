// Chern number of the Bott projection, by density and by plaquettes.
#include <cstdio>

#include "conftorus/chern/mesh.hpp"

int main() {
  namespace ch = conftorus::chern;
  for (int nu : {25, 50, 100}) {
    const ch::ProjectionField P = ch::bott_projection(nu, 2 * nu);
    std::printf("%3d x %3d  density %+.8f  plaquette %+.8f\n", nu, 2 * nu, ch::chern_number_density(P),
                ch::plaquette_chern(ch::mesh_for(P), P.values));
  }
}

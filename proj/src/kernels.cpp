#include "taukit/kernels.hpp"

#include <cmath>

#include "taukit/errors.hpp"

namespace taukit {

Complex schiffer_kernel_ext(const ExteriorMap& map, Complex z, Complex w) {
  if (std::abs(z - w) < 1e-12 * (1.0 + std::abs(z)))
    throw CoincidentPoints("schiffer_kernel_ext: z and w coincide");
  Complex Gz = eval_G(map, z), Gw = eval_G(map, w);
  Complex Gpz = 1.0 / eval_g_prime(map, Gz), Gpw = 1.0 / eval_g_prime(map, Gw);
  Complex d = Gz - Gw;
  return Gpz * Gpw / (d * d);
}

Complex bergman_kernel_ext(const ExteriorMap& map, Complex z, Complex w) {
  Complex Gz = eval_G(map, z), Gw = eval_G(map, w);
  Complex Gpz = 1.0 / eval_g_prime(map, Gz), Gpw = 1.0 / eval_g_prime(map, Gw);
  Complex d = 1.0 - Gz * std::conj(Gw);
  return Gpz * std::conj(Gpw) / (kPi * d * d);
}

Complex bergman_series(const ExteriorMap& map, Complex z, Complex w, int terms) {
  Complex Gz = eval_G(map, z), Gw = eval_G(map, w);
  Complex Gpz = 1.0 / eval_g_prime(map, Gz), Gpw = 1.0 / eval_g_prime(map, Gw);
  KahanSum<Complex> acc;
  Complex pz = 1.0 / (Gz * Gz), pw = 1.0 / (Gw * Gw);
  for (int n = 1; n <= terms; ++n) {
    Complex un = std::sqrt(n / kPi) * pz * Gpz;
    Complex um = std::sqrt(n / kPi) * pw * Gpw;
    acc.add(un * std::conj(um));
    pz /= Gz;
    pw /= Gw;
  }
  return acc.value();
}

Real green_dbc(const ExteriorMap& map, Complex z, Complex w) {
  if (std::abs(z - w) < 1e-12 * (1.0 + std::abs(z)))
    throw CoincidentPoints("green_dbc: z and w coincide");
  Complex Gz = eval_G(map, z), Gw = eval_G(map, w);
  return (2.0 / kPi) * std::log(std::abs((1.0 - Gz * std::conj(Gw)) / (Gz - Gw)));
}

}  // namespace taukit

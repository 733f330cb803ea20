#include "qdisk/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qdisk {

cplx random_complex(Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

ToeplitzElement random_compact_element(Rng& rng, int k_max, int mode_lo, int mode_hi, int support) {
  if (support < 0 || support > k_max) throw std::invalid_argument("random_compact_element: bad support");
  ToeplitzElement e(k_max, mode_lo, mode_hi);
  for (int m = mode_lo; m <= mode_hi; ++m) {
    auto c = e.mode(m);
    for (int k = 0; k <= support; ++k) c[static_cast<std::size_t>(k)] = random_complex(rng);
    if (support < k_max) e.declare_tail(m, 0.0, support + 1);
  }
  // Mode 0 may have been added by the constructor without being filled.
  for (int m = e.mode_min(); m <= e.mode_max(); ++m) {
    if ((m < mode_lo || m > mode_hi) && support < k_max) e.declare_tail(m, 0.0, 0);
  }
  return e;
}

ToeplitzElement random_tail_element(Rng& rng, int k_max, int mode_lo, int mode_hi, int tail_start) {
  if (tail_start < 0 || tail_start > k_max) throw std::invalid_argument("random_tail_element: bad tail start");
  ToeplitzElement e(k_max, mode_lo, mode_hi);
  for (int m = mode_lo; m <= mode_hi; ++m) {
    auto c = e.mode(m);
    for (int k = 0; k < tail_start; ++k) c[static_cast<std::size_t>(k)] = random_complex(rng);
    e.declare_tail(m, random_complex(rng), tail_start);
  }
  for (int m = e.mode_min(); m <= e.mode_max(); ++m) {
    if (m < mode_lo || m > mode_hi) e.declare_tail(m, 0.0, 0);
  }
  return e;
}

BoundaryFunction random_boundary(Rng& rng, int degree) {
  BoundaryFunction f;
  for (int m = -degree; m <= degree; ++m) f.modes[m] = random_complex(rng);
  return f;
}

}  // namespace qdisk

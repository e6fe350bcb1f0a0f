#include "tandev/jet.hpp"

namespace tandev {

Jet<double> inv_norm(const JetVector<double>& v) {
  const Jet<double> sq = dot(v, v);
  if (!(sq[0] > 0.0)) throw ZeroDivision("normalization of a vector that vanishes at the basepoint");
  return inv_sqrt(sq);
}

JetVector<double> normalized(const JetVector<double>& v) { return scale(v, inv_norm(v)); }

}  // namespace tandev

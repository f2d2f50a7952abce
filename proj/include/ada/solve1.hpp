#ifndef ADA_SOLVE1_HPP
#define ADA_SOLVE1_HPP

#include "ada/field.hpp"

namespace ada {

// Distinguished solution of z' + xi z = f on the truncated instance, constant
// of integration fixed at 0.  Regimes:
//   xi = 0              : plain antiderivative;
//   v(xi) <= 0          : fixed point z <- (f - z')/xi;
//   v(xi) > 0           : strip xi = m^dagger + eps, substitute z = w/m, then
//                         fixed point w <- int(m f - eps w).
// Throws DominanceFailure when the iteration does not contract.
CElem solve_linear_order1(const CElem& xi, const CElem& f, int cap = 64,
                          std::optional<Mono> rel_prec = std::nullopt);

} // namespace ada

#endif

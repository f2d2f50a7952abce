#ifndef ADA_OSCINT_HPP
#define ADA_OSCINT_HPP

#include "ada/solve1.hpp"
#include "ada/univexp.hpp"

namespace ada {

// The integration-by-parts ladder P_0..P_m in Q{Z,V}:
//   P_0 = V,  P_{j+1} = (j+1) Z P_j - P_j'.
// Row j is stored by V-derivative: P_j = sum_k coeff[j][k] V^{(k)} with
// coeff[j][k] in Q{Z} and coeff[j][j] = (-1)^j.
struct PjLadder {
    std::vector<std::vector<DiffPoly>> rows;
    int size() const { return static_cast<int>(rows.size()) - 1; } // highest j
};

PjLadder pj_ladder(const CtxPtr& ctx, int m);

// P_j(zeta, f) evaluated in K
CElem pj_eval(const PjLadder& ladder, int j, const CElem& zeta, const CElem& f, const Deriv& d = {});

// residual of the exact identity
//   f e = (sum_{j<=m} P_j(zeta,f) e/xi^{j+1})' + P_{m+1}(zeta,f) e/xi^{m+1}
// with e = e(lambda_e), e^dagger = xi, zeta = xi^dagger.  Must be exactly 0
// over exact coefficients.
GrElem byparts_check(const UPtr& uctx, const CElem& f, const CElem& xi, int m, const LambdaVec& lambda_e);

enum class Order1Target { YPrimePlusXiY, UEOverXi };

struct Order1Solution {
    CElem y;                       // solution of the requested target
    std::vector<CElem> approximants; // ladder partial sums matched to the target
    CElem residual;                // target residual of y
};

// Distinguished solve with the paper's dominance guarantee: requires
// xi flat-larger than 1 (xi > 1 and xi^dagger >= 1).
Order1Solution solve_order1(const CElem& xi, const CElem& f, Order1Target target, int approximants = 4,
                            std::optional<Mono> rel_prec = std::nullopt);

// (xi^l e)^{(n)} has dominant coefficient xi^{l+n} (sign (-1)^n for e(-lambda));
// returns true when the expansion matches.
bool deriv_expansion_check(const UPtr& uctx, long l, int n, const CElem& xi, const LambdaVec& lambda_e);

} // namespace ada

#endif

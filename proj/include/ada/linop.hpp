#ifndef ADA_LINOP_HPP
#define ADA_LINOP_HPP

#include <optional>
#include <vector>

#include "ada/diffpoly.hpp"
#include "ada/field.hpp"

namespace ada {

// Linear differential operator a_0 + a_1 D + ... + a_r D^r over the
// complexified coefficient field; composition via D a = a D + a'.
class LinOp {
public:
    explicit LinOp(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    LinOp(CtxPtr ctx, std::vector<CElem> coeffs) : ctx_(std::move(ctx)), a_(std::move(coeffs)) { trim(); }

    static LinOp d(CtxPtr ctx);                       // the operator D
    static LinOp constant(const CElem& c);
    static LinOp d_minus(const CElem& g);             // D - g

    const CtxPtr& ctx() const { return ctx_; }
    bool is_zero() const { return a_.empty(); }
    int order() const { return static_cast<int>(a_.size()) - 1; } // -1 for 0
    const std::vector<CElem>& coeffs() const { return a_; }
    CElem coeff(int k) const;
    CElem leading() const;
    bool is_monic() const;
    LinOp monic_scaled() const; // divide by the leading coefficient

    friend LinOp operator+(const LinOp& A, const LinOp& B);
    friend LinOp operator-(const LinOp& A, const LinOp& B);
    LinOp operator-() const;
    friend LinOp operator*(const CElem& c, const LinOp& A);

    bool equals_exact(const LinOp& B) const;

    std::string str() const;

private:
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }
    CtxPtr ctx_;
    std::vector<CElem> a_;
};

LinOp compose(const LinOp& A, const LinOp& B, const Deriv& d = {});
CElem apply(const LinOp& A, const CElem& y, const Deriv& d = {});
LinOp adjoint(const LinOp& A, const Deriv& d = {});
// A_a = sum a_i (D + a)^i, the twist by any u with u^dagger = a
LinOp twist(const LinOp& A, const CElem& a, const Deriv& d = {});
// A^phi in K^phi[delta]; its coefficients are returned for the conjugated derivation
LinOp comp_conj(const LinOp& A, const CElem& phi, const Deriv& d = {});

// linear part of a differential polynomial: L_P = sum (dP/dY^{(n)})(0) D^n
LinOp linear_part(const DiffPoly& P);
// Ri(A) = sum a_n R_n in K{Z}
DiffPoly riccati_op(const LinOp& A, const Deriv& d = {});

// span and dominance -------------------------------------------------------

int dwm(const LinOp& A); // min index attaining v(A)
int dwt(const LinOp& A); // max index attaining v(A)
CElem span(const LinOp& A); // fv(A) = a_r / a_m, m = dwt(A)

struct DwmAt {
    int dwm, dwt;
    bool exceptional; // dwm > 0
};
DwmAt dwm_at(const LinOp& A, const ValVec& gamma, const Deriv& d = {});

// splittings ---------------------------------------------------------------

// lead * (D - f_1) ... (D - f_r)
struct Splitting {
    CElem lead;
    std::vector<CElem> factors;
    int order() const { return static_cast<int>(factors.size()); }
};

LinOp expand(const Splitting& s, const Deriv& d = {});
// exact check expand(s) == A; on failure returns the residual operator
std::optional<LinOp> verify_splitting(const Splitting& s, const LinOp& A, const Deriv& d = {});

Splitting split_twist(const Splitting& s, const CElem& n_dagger);     // factors g_j - n^dagger
Splitting split_comp_conj(const Splitting& s, const CElem& phi, const Deriv& d = {});
// from b_1..b_r: the splitting (a_r,...,a_1) with a_j = (b_1...b_j)^dagger
Splitting polya_splitting(const std::vector<CElem>& b, const Deriv& d = {});
// b_1...b_r (D b_r^-1) ... (D b_1^-1)
LinOp polya_product(const std::vector<CElem>& b, const Deriv& d = {});

// real splittings -----------------------------------------------------------

// (D - (a - bi + b^dagger))(D - (a + bi)), real coefficients
LinOp compose_order2(const FieldElem& a, const FieldElem& b, const Deriv& d = {});
// splitting of a real operator into real order-1 factors and conjugate order-2 blocks
bool verify_real_splitting(const LinOp& A, const Splitting& s, const Deriv& d = {});
// strong splitting: Re g_j succeq fv^dagger for all j
bool strong_split_check(const Splitting& s, const CElem& fv, const Deriv& d = {});

// division / lclm -----------------------------------------------------------

std::pair<LinOp, LinOp> right_divide(const LinOp& A, const LinOp& B, const Deriv& d = {});
LinOp lclm(const LinOp& A, const LinOp& B, const Deriv& d = {});

// order-1 values -------------------------------------------------------------

struct Order1Values {
    std::optional<ValVec> exceptional; // E^e(A): v(m) for g = m^dagger + eps, v(eps) > Psi
    std::optional<ValVec> ultimate;    // E^u(A): v(g) for Re g = g^dagger + eps, eps in I(H)
    std::string note;                  // instance-relative caveats
};
Order1Values order1_values(const LinOp& A);

} // namespace ada

#endif

#ifndef ADA_UNIVEXP_HPP
#define ADA_UNIVEXP_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ada/linop.hpp"

namespace ada {

// Session-declared complement Lambda of K^dagger: an ordered basis of
// elements of K, each validated to lie outside K^dagger, and jointly
// independent of the generator log-derivatives.
class UnivCtx {
public:
    UnivCtx(CtxPtr field_ctx, std::vector<CElem> basis, std::vector<std::string> names);

    const CtxPtr& field_ctx() const { return fctx_; }
    int size() const { return static_cast<int>(basis_.size()); }
    const std::vector<CElem>& basis() const { return basis_; }
    const std::vector<std::string>& names() const { return names_; }
    // every basis element purely real / purely imaginary? (enables conjugation)
    bool split_real_imag() const { return split_ri_; }
    bool imag_basis(int j) const { return imag_[static_cast<size_t>(j)]; }

private:
    CtxPtr fctx_;
    std::vector<CElem> basis_;
    std::vector<std::string> names_;
    std::vector<bool> imag_;
    bool split_ri_ = true;
};

using UPtr = std::shared_ptr<const UnivCtx>;

// rational coordinate vector over the Lambda basis
class LambdaVec {
public:
    LambdaVec() = default;
    explicit LambdaVec(std::vector<Rat> q) : q_(std::move(q)) { trim(); }
    static LambdaVec unit(int k, int j, Rat c = Rat(1));

    const std::vector<Rat>& raw() const { return q_; }
    Rat at(int j) const { return j < static_cast<int>(q_.size()) ? q_[static_cast<size_t>(j)] : Rat(0); }
    bool is_zero() const { return q_.empty(); }

    friend LambdaVec operator+(const LambdaVec& a, const LambdaVec& b);
    LambdaVec operator-() const;
    friend LambdaVec operator-(const LambdaVec& a, const LambdaVec& b) { return a + (-b); }
    friend bool operator==(const LambdaVec& a, const LambdaVec& b) { return a.q_ == b.q_; }
    friend bool operator<(const LambdaVec& a, const LambdaVec& b) { return a.q_ < b.q_; }

    std::string str(const UnivCtx& ctx) const;

private:
    void trim() {
        while (!q_.empty() && q_.back() == 0) q_.pop_back();
    }
    std::vector<Rat> q_;
};

CElem as_field_elem(const UnivCtx& ctx, const LambdaVec& l);

// element of U = K[e(Lambda)]
class GrElem {
public:
    explicit GrElem(UPtr ctx) : ctx_(std::move(ctx)) {}
    GrElem(UPtr ctx, std::map<LambdaVec, CElem> slots) : ctx_(std::move(ctx)), s_(std::move(slots)) {
        normalize();
    }

    static GrElem from_coeff(UPtr ctx, const CElem& c); // c e(0)
    static GrElem unit(UPtr ctx, const LambdaVec& l, const CElem& c); // c e(l)

    const UPtr& uctx() const { return ctx_; }
    const std::map<LambdaVec, CElem>& slots() const { return s_; }
    bool is_zero() const { return s_.empty(); }
    bool maybe_zero() const;
    CElem slot(const LambdaVec& l) const;
    // single spectral slot with certain nonzero coefficient
    std::optional<std::pair<LambdaVec, CElem>> single_slot() const;

    friend GrElem operator+(const GrElem& a, const GrElem& b);
    friend GrElem operator-(const GrElem& a, const GrElem& b);
    friend GrElem operator*(const GrElem& a, const GrElem& b);
    GrElem operator-() const;
    friend GrElem operator*(const CElem& c, const GrElem& f);

    GrElem derive() const;  // slotwise f' + lambda f
    GrElem star() const;    // sum conj(f_l) e(-l)
    GrElem conj_c() const;  // complex conjugate (needs split real/imag basis)
    GrElem re_part() const;
    GrElem im_part() const;

    std::string str() const;

private:
    void normalize();
    UPtr ctx_;
    std::map<LambdaVec, CElem> s_;
};

VInfo vg_info(const GrElem& f);                 // gaussian valuation
CElem trace(const GrElem& f);                   // coefficient of e(0)
CElem inner(const GrElem& f, const GrElem& g);  // tr(f g*)
FieldElem norm_sq(const GrElem& f);             // sum |f_l|^2
FieldElem norm1(const GrElem& f);               // sum |f_l|  (needs rational-square dominants)

// character automorphism f_chi; chi given on the basis, |chi_j| = 1 enforced
// when `unitary`; supports on integer lattices only
GrElem char_action(const GrElem& f, const std::vector<CElem>& chi, bool unitary = true);

// operators on U -------------------------------------------------------------

LinOp op_spectral(const LinOp& A, const UnivCtx& ctx, const LambdaVec& l); // A_lambda
GrElem apply(const LinOp& A, const GrElem& f);                             // sum A_l(f_l) e(l)

// canonical decomposition b = lambda + m^dagger + eps over the session Lambda
struct Decomp {
    LambdaVec lambda;
    Mono m;
    CElem eps; // v(eps) > 0
};
Decomp decompose(const UnivCtx& ctx, const CElem& b);

// b = lambda + u^dagger with u in K^x: u = m exp(int eps); requires eps in I(K)
std::pair<LambdaVec, CElem> unit_solve(const UnivCtx& ctx, const CElem& b);

// splittings and kernels ------------------------------------------------------

struct SplitFromKernel {
    std::vector<CElem> tuple; // (a_1, ..., a_n)
    LinOp An;                 // (D - a_n) ... (D - a_1)
    int n;
};
SplitFromKernel split_from_kernel(const UnivCtx& ctx, const std::vector<GrElem>& ys);

// kernel basis of lead (D-g_1)...(D-g_r) in U; y_i in K^x e(lambda_i)
std::vector<GrElem> kernel_from_splitting(const UPtr& ctx, const Splitting& s);

// eigenvalues with multiplicity from a splitting
std::map<LambdaVec, int> spectrum_from_splitting(const UnivCtx& ctx, const Splitting& s);

} // namespace ada

#endif

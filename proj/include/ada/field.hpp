#ifndef ADA_FIELD_HPP
#define ADA_FIELD_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ada/errors.hpp"
#include "ada/qpoly.hpp"
#include "ada/rational.hpp"
#include "ada/valvec.hpp"

namespace ada {

// A monomial prod_l g_l^{q_l} of the multi-level instance with generators
// g_0 = x, g_l = exp(g_{l-1}).  exps[l] is the exponent of g_l.
class Mono {
public:
    Mono() = default;
    explicit Mono(std::vector<Rat> exps) : e_(std::move(exps)) {}
    static Mono one(int levels) { return Mono(std::vector<Rat>(static_cast<size_t>(levels))); }
    static Mono gen(int levels, int l, Rat q = Rat(1)) {
        std::vector<Rat> e(static_cast<size_t>(levels));
        e[static_cast<size_t>(l)] = std::move(q);
        return Mono(std::move(e));
    }

    int levels() const { return static_cast<int>(e_.size()); }
    const std::vector<Rat>& exps() const { return e_; }
    bool is_one() const {
        for (const auto& q : e_)
            if (q != 0) return false;
        return true;
    }
    // top nonzero generator level; -1 for the unit monomial
    int top_level() const {
        for (int l = levels() - 1; l >= 0; --l)
            if (e_[static_cast<size_t>(l)] != 0) return l;
        return -1;
    }

    ValVec val() const {
        std::vector<Rat> c(e_.rbegin(), e_.rend());
        for (auto& q : c) q = -q;
        return ValVec(std::move(c));
    }
    static Mono from_val(const ValVec& v) {
        if (v.is_inf()) throw Precondition("no monomial of infinite valuation");
        std::vector<Rat> e(v.coords().rbegin(), v.coords().rend());
        for (auto& q : e) q = -q;
        return Mono(std::move(e));
    }

    friend Mono operator*(const Mono& a, const Mono& b) {
        check(a, b);
        std::vector<Rat> e(a.e_);
        for (size_t i = 0; i < e.size(); ++i) e[i] += b.e_[i];
        return Mono(std::move(e));
    }
    Mono inverse() const {
        std::vector<Rat> e(e_);
        for (auto& q : e) q = -q;
        return Mono(std::move(e));
    }
    Mono pow(const Rat& q) const {
        std::vector<Rat> e(e_);
        for (auto& x : e) x *= q;
        return Mono(std::move(e));
    }

    friend bool operator==(const Mono& a, const Mono& b) { return a.e_ == b.e_; }

    // true iff a strictly dominates b (a > b as growth order, i.e. v(a) < v(b))
    static bool dominates(const Mono& a, const Mono& b) {
        check(a, b);
        for (int l = a.levels() - 1; l >= 0; --l) {
            const Rat &x = a.e_[static_cast<size_t>(l)], &y = b.e_[static_cast<size_t>(l)];
            if (x != y) return x > y;
        }
        return false;
    }

private:
    static void check(const Mono& a, const Mono& b) {
        if (a.levels() != b.levels()) throw Precondition("monomial level mismatch");
    }
    std::vector<Rat> e_;
};

// map comparator: most dominant monomial first
struct MonoDomLess {
    bool operator()(const Mono& a, const Mono& b) const { return Mono::dominates(a, b); }
};

enum class FieldKind { RatFunc, MultiTrans };

struct FieldCtx {
    FieldKind kind;
    int levels;
    // Number of terms an infinite expansion (division, exp, sqrt, asymptotic
    // integration) produces before the tail is absorbed into the error
    // monomial.  Measured against the expansion's own contraction ratio, so
    // it is meaningful at every generator level.
    int depth;
};

using CtxPtr = std::shared_ptr<const FieldCtx>;

struct RatFuncData {
    QPoly num, den; // den monic, gcd(num, den) = 1; zero has num = 0, den = 1
};

struct SeriesData {
    std::map<Mono, Rat, MonoDomLess> terms; // all terms strictly dominate err
    std::optional<Mono> err;                // meaning + O(err), O inclusive
};

// valuation lower bound: if exact, v(f) = v; else v(f) >= v (f may vanish)
struct VInfo {
    ValVec v;
    bool exact;
};

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(CtxPtr ctx, RatFuncData d) : ctx_(std::move(ctx)), data_(std::move(d)) {}
    FieldElem(CtxPtr ctx, SeriesData d) : ctx_(std::move(ctx)), data_(std::move(d)) { normalize(); }

    const CtxPtr& ctx() const { return ctx_; }
    FieldKind kind() const { return ctx_->kind; }
    int levels() const { return ctx_->levels; }

    const RatFuncData& rf() const { return std::get<RatFuncData>(data_); }
    const SeriesData& sd() const { return std::get<SeriesData>(data_); }

    bool is_exact() const;
    bool is_zero() const;          // exactly zero
    bool maybe_zero() const;       // zero or hidden below err
    bool is_one() const;

    // arithmetic
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow_int(long e) const;
    friend bool operator==(const FieldElem& a, const FieldElem& b); // may throw InsufficientPrecision

    FieldElem derive() const;
    FieldElem logderiv() const; // f'/f
    FieldElem antiderivative() const;
    FieldElem exp_small() const;   // exp(f) for f prec 1 (or 0)
    FieldElem sqrt_pos() const;    // sqrt(f) for f > 0 with square dominant coefficient

    VInfo vinfo() const;
    ValVec val_exact() const; // throws InsufficientPrecision unless determined

    // dominant term (mono, coeff); nullopt for exact zero; throws if hidden by err
    std::optional<std::pair<Mono, Rat>> dominant() const;

    int sign() const; // sign of the germ at +infinity; throws if undecidable

    // truncate: fold everything preceq m into O(m)
    FieldElem truncated(const Mono& m) const;
    std::optional<Mono> err() const;
    FieldElem exact_part() const; // drop the error term (use with care)

    std::string str() const;

    // internal: also used by CElem
    void normalize();

private:
    CtxPtr ctx_;
    std::variant<RatFuncData, SeriesData> data_;
};

// instance handle / element factory
class Field {
public:
    static Field ratfunc();
    static Field multitrans(int levels, int depth = 24);
    static Field of(CtxPtr ctx) { return Field(std::move(ctx)); }

    const CtxPtr& ctx() const { return ctx_; }
    FieldKind kind() const { return ctx_->kind; }
    int levels() const { return ctx_->levels; }

    FieldElem from_rat(const Rat& q) const;
    FieldElem zero() const { return from_rat(Rat(0)); }
    FieldElem one() const { return from_rat(Rat(1)); }
    FieldElem x() const;
    FieldElem gen(int l) const; // g_l
    FieldElem monomial(const Mono& m, const Rat& coeff = Rat(1)) const;
    FieldElem with_err(const FieldElem& f, const Mono& m) const; // f + O(m)

private:
    explicit Field(CtxPtr c) : ctx_(std::move(c)) {}
    CtxPtr ctx_;
};

// m^dagger as a field element: finite sum of generator log-derivatives.
FieldElem mono_logderiv(const CtxPtr& ctx, const Mono& m);
// dominant monomial of m^dagger (for error propagation); unit monomial maps to x^{-1}.
Mono mono_logderiv_bound(const Mono& m);

// asymptotic comparisons ------------------------------------------------

enum class Rel { Prec, PrecEq, Asymp, Sim, FlatPrec };

// rel in {Prec,PrecEq,Asymp}: optionally coarsened by a convex subgroup.
bool asym_cmp(Rel rel, const FieldElem& f, const FieldElem& g,
              std::optional<ConvexSubgroup> delta = std::nullopt);

// psi / flattening / I(K) ------------------------------------------------

bool in_I(const FieldElem& f); // f in I(K) = {y : y preceq h' for some h preceq 1}

// canonical decomposition g = m^dagger + eps with all generator-logderiv
// coefficients absorbed into m; requires the large part of g to lie in the
// span of the g_l^dagger.  Returns (m, eps) with v(eps) > 0.
std::pair<Mono, FieldElem> logderiv_solve(const FieldElem& g);

// omega / sigma ----------------------------------------------------------

FieldElem omega_map(const FieldElem& z);          // -(2z' + z^2)
FieldElem sigma_map(const FieldElem& y);          // omega(-y^dagger) + y^2

// complexified elements ---------------------------------------------------

class CElem {
public:
    CElem() = default;
    CElem(FieldElem re, FieldElem im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit CElem(FieldElem re);

    const FieldElem& re() const { return re_; }
    const FieldElem& im() const { return im_; }
    const CtxPtr& ctx() const { return re_.ctx(); }

    bool is_exact() const { return re_.is_exact() && im_.is_exact(); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool maybe_zero() const { return re_.maybe_zero() && im_.maybe_zero(); }
    bool is_real() const { return im_.is_zero(); }

    friend CElem operator+(const CElem& a, const CElem& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
    friend CElem operator-(const CElem& a, const CElem& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
    CElem operator-() const { return {-re_, -im_}; }
    friend CElem operator*(const CElem& a, const CElem& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend CElem operator/(const CElem& a, const CElem& b) {
        FieldElem n = abs_sq(b);
        CElem c = a * conj(b);
        return {c.re_ / n, c.im_ / n};
    }
    CElem inverse() const;
    CElem pow_int(long e) const;
    friend bool operator==(const CElem& a, const CElem& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    CElem derive() const { return {re_.derive(), im_.derive()}; }
    CElem logderiv() const { return derive() / *this; }
    CElem antiderivative() const { return {re_.antiderivative(), im_.antiderivative()}; }
    CElem truncated(const Mono& m) const { return {re_.truncated(m), im_.truncated(m)}; }
    CElem exp_small() const; // exp for arguments prec 1

    friend CElem conj(const CElem& z) { return {z.re_, -z.im_}; }
    friend FieldElem abs_sq(const CElem& z) { return z.re_ * z.re_ + z.im_ * z.im_; }

    VInfo vinfo() const;
    ValVec val_exact() const;

    std::string str() const;

private:
    FieldElem re_, im_;
};

// wr(a, b) = a b' - a' b
FieldElem wronskian2(const FieldElem& a, const FieldElem& b);

bool asym_cmp(Rel rel, const CElem& f, const CElem& g,
              std::optional<ConvexSubgroup> delta = std::nullopt);

CElem omega_map(const CElem& z);
CElem sigma_map(const CElem& y);

// |f| for f != 0 real-signed: sign-normalized copy (uses ordering).
FieldElem abs_elem(const FieldElem& f);

// Ambient derivation: the base derivation of the instance, or its
// compositional conjugate delta = phi^-1 d after conjugating by phi.
class Deriv {
public:
    Deriv() = default;
    explicit Deriv(CElem phi);

    bool is_base() const { return !phi_.has_value(); }
    const CElem& phi() const;          // throws for the base derivation
    CElem phi_or_one(const CtxPtr&) const;

    FieldElem operator()(const FieldElem& f) const;
    CElem operator()(const CElem& f) const;

    // derivation of K^phi seen from this one: (this.phi * phi)^-1 d
    Deriv conjugated(const CElem& phi) const;

private:
    std::optional<CElem> phi_, phi_inv_;
};

} // namespace ada

#endif

#include "ada/linop.hpp"

#include <sstream>

namespace ada {

namespace {

CElem czero(const CtxPtr& ctx) { return CElem(Field::of(ctx).zero()); }
CElem cone(const CtxPtr& ctx) { return CElem(Field::of(ctx).one()); }

VInfo merge_vinfos(const std::vector<VInfo>& vs) {
    ValVec vmin_exact = ValVec::infinity();
    ValVec low_min = ValVec::infinity();
    bool any_inexact = false;
    for (const auto& vi : vs) {
        if (vi.exact) {
            if (vi.v < vmin_exact) vmin_exact = vi.v;
        } else {
            any_inexact = true;
            if (vi.v < low_min) low_min = vi.v;
        }
    }
    if (!any_inexact || vmin_exact <= low_min) return {vmin_exact, true};
    return {low_min, false};
}

} // namespace

LinOp LinOp::d(CtxPtr ctx) {
    std::vector<CElem> a{czero(ctx), cone(ctx)};
    return LinOp(std::move(ctx), std::move(a));
}

LinOp LinOp::constant(const CElem& c) {
    LinOp A(c.ctx());
    if (!c.is_zero()) A.a_.push_back(c);
    return A;
}

LinOp LinOp::d_minus(const CElem& g) {
    std::vector<CElem> a{-g, cone(g.ctx())};
    return LinOp(g.ctx(), std::move(a));
}

CElem LinOp::coeff(int k) const {
    if (k < 0 || k > order()) return czero(ctx_);
    return a_[static_cast<size_t>(k)];
}

CElem LinOp::leading() const {
    if (is_zero()) throw Precondition("leading coefficient of the zero operator");
    if (a_.back().maybe_zero())
        throw InsufficientPrecision("leading coefficient hidden below the error term");
    return a_.back();
}

bool LinOp::is_monic() const {
    if (is_zero()) return false;
    const CElem& c = a_.back();
    return c.is_real() && c.re().is_one();
}

LinOp LinOp::monic_scaled() const {
    CElem inv = leading().inverse();
    return inv * *this;
}

LinOp operator+(const LinOp& A, const LinOp& B) {
    std::vector<CElem> r;
    int n = std::max(A.order(), B.order());
    for (int k = 0; k <= n; ++k) r.push_back(A.coeff(k) + B.coeff(k));
    return LinOp(A.ctx_, std::move(r));
}

LinOp LinOp::operator-() const {
    std::vector<CElem> r;
    for (const auto& c : a_) r.push_back(-c);
    return LinOp(ctx_, std::move(r));
}

LinOp operator-(const LinOp& A, const LinOp& B) { return A + (-B); }

LinOp operator*(const CElem& c, const LinOp& A) {
    std::vector<CElem> r;
    for (const auto& a : A.a_) r.push_back(c * a);
    return LinOp(A.ctx_, std::move(r));
}

bool LinOp::equals_exact(const LinOp& B) const {
    LinOp diff = *this - B;
    for (const auto& c : diff.a_)
        if (!c.is_zero()) return false;
    return true;
}

namespace {

// D o C in the ring with derivation d: coefficients c_k -> c_{k-1} + d(c_k)
LinOp d_compose(const LinOp& C, const Deriv& d) {
    std::vector<CElem> r(static_cast<size_t>(C.order()) + 2, czero(C.ctx()));
    for (int k = 0; k <= C.order(); ++k) {
        r[static_cast<size_t>(k + 1)] = r[static_cast<size_t>(k + 1)] + C.coeff(k);
        r[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] + d(C.coeff(k));
    }
    return LinOp(C.ctx(), std::move(r));
}

} // namespace

LinOp compose(const LinOp& A, const LinOp& B, const Deriv& d) {
    LinOp acc(A.ctx());
    LinOp cur = B; // D^i o B
    for (int i = 0; i <= A.order(); ++i) {
        acc = acc + A.coeff(i) * cur;
        if (i < A.order()) cur = d_compose(cur, d);
    }
    return acc;
}

CElem apply(const LinOp& A, const CElem& y, const Deriv& d) {
    CElem acc = czero(A.ctx());
    CElem yk = y;
    for (int k = 0; k <= A.order(); ++k) {
        acc = acc + A.coeff(k) * yk;
        if (k < A.order()) yk = d(yk);
    }
    return acc;
}

LinOp adjoint(const LinOp& A, const Deriv& d) {
    LinOp acc(A.ctx());
    for (int i = 0; i <= A.order(); ++i) {
        LinOp term = LinOp::constant(A.coeff(i));
        for (int j = 0; j < i; ++j) term = -d_compose(term, d);
        acc = acc + term;
    }
    return acc;
}

LinOp twist(const LinOp& A, const CElem& a, const Deriv& d) {
    LinOp da = LinOp::d(A.ctx()) + LinOp::constant(a); // D + a
    LinOp acc(A.ctx());
    LinOp pw = LinOp::constant(cone(A.ctx()));
    for (int i = 0; i <= A.order(); ++i) {
        acc = acc + A.coeff(i) * pw;
        if (i < A.order()) pw = compose(da, pw, d);
    }
    return acc;
}

LinOp comp_conj(const LinOp& A, const CElem& phi, const Deriv& d) {
    if (phi.maybe_zero()) throw Precondition("compositional conjugation by zero");
    Deriv dd = d.conjugated(phi);
    LinOp acc(A.ctx());
    LinOp pw = LinOp::constant(cone(A.ctx())); // (phi delta)^i
    for (int i = 0; i <= A.order(); ++i) {
        acc = acc + A.coeff(i) * pw;
        if (i < A.order()) pw = phi * d_compose(pw, dd);
    }
    return acc;
}

LinOp linear_part(const DiffPoly& P) {
    int r = std::max(P.order(), 0);
    std::vector<CElem> a;
    for (int n = 0; n <= r; ++n) a.push_back(P.coeff(MultiIndex::of(n, 1)));
    return LinOp(P.ctx(), std::move(a));
}

DiffPoly riccati_op(const LinOp& A, const Deriv& d) {
    std::vector<DiffPoly> R = riccati_basis(A.ctx(), std::max(A.order(), 0), d);
    DiffPoly acc(A.ctx());
    for (int n = 0; n <= A.order(); ++n) acc = acc + A.coeff(n) * R[static_cast<size_t>(n)];
    return acc;
}

// ---------------------------------------------------------------- span

namespace {

VInfo op_vinfo(const LinOp& A) {
    std::vector<VInfo> vs;
    for (const auto& c : A.coeffs()) vs.push_back(c.vinfo());
    return merge_vinfos(vs);
}

std::pair<int, int> dominant_range(const LinOp& A) {
    if (A.is_zero()) throw Precondition("dominant data of the zero operator");
    VInfo vp = op_vinfo(A);
    if (!vp.exact) throw InsufficientPrecision("gaussian valuation hidden below the error term");
    int lo = -1, hi = -1;
    for (int k = 0; k <= A.order(); ++k) {
        VInfo vi = A.coeff(k).vinfo();
        bool dominant;
        if (vi.exact)
            dominant = vi.v == vp.v;
        else if (vi.v > vp.v)
            dominant = false;
        else
            throw InsufficientPrecision("dominant coefficient hidden below the error term");
        if (!dominant) continue;
        if (lo < 0) lo = k;
        hi = k;
    }
    return {lo, hi};
}

} // namespace

int dwm(const LinOp& A) { return dominant_range(A).first; }
int dwt(const LinOp& A) { return dominant_range(A).second; }

CElem span(const LinOp& A) {
    int m = dwt(A);
    CElem ar = A.leading();
    return ar / A.coeff(m);
}

DwmAt dwm_at(const LinOp& A, const ValVec& gamma, const Deriv& d) {
    Field F = Field::of(A.ctx());
    CElem m(F.monomial(Mono::from_val(gamma)));
    LinOp B = compose(A, LinOp::constant(m), d);
    auto [lo, hi] = dominant_range(B);
    return {lo, hi, lo > 0};
}

// ---------------------------------------------------------------- splittings

LinOp expand(const Splitting& s, const Deriv& d) {
    const CtxPtr& ctx = s.lead.ctx();
    LinOp acc = LinOp::constant(cone(ctx));
    for (const auto& g : s.factors) acc = compose(acc, LinOp::d_minus(g), d);
    return s.lead * acc;
}

std::optional<LinOp> verify_splitting(const Splitting& s, const LinOp& A, const Deriv& d) {
    LinOp diff = expand(s, d) - A;
    for (const auto& c : diff.coeffs())
        if (!c.maybe_zero()) return diff;
    return std::nullopt;
}

Splitting split_twist(const Splitting& s, const CElem& n_dagger) {
    Splitting r = s;
    for (auto& g : r.factors) g = g - n_dagger;
    return r;
}

Splitting split_comp_conj(const Splitting& s, const CElem& phi, const Deriv& d) {
    if (phi.maybe_zero()) throw Precondition("compositional conjugation by zero");
    int r = s.order();
    CElem phid = d(phi) / phi;
    CElem phiinv = phi.inverse();
    Splitting out;
    out.lead = s.lead * phi.pow_int(r);
    Field F = Field::of(phi.ctx());
    for (int j = 1; j <= r; ++j) {
        CElem factor = s.factors[static_cast<size_t>(j - 1)];
        CElem count(F.from_rat(Rat(r - j)));
        out.factors.push_back(phiinv * (factor - count * phid));
    }
    return out;
}

Splitting polya_splitting(const std::vector<CElem>& b, const Deriv& d) {
    if (b.empty()) throw Precondition("empty tuple");
    Splitting s;
    s.lead = cone(b.front().ctx());
    std::vector<CElem> a;
    CElem prefix = cone(b.front().ctx());
    for (const auto& bj : b) {
        if (bj.maybe_zero()) throw Precondition("Polya tuple entries must be nonzero");
        prefix = prefix * bj;
        a.push_back(d(prefix) / prefix);
    }
    // splitting tuple is (a_r, ..., a_1)
    s.factors.assign(a.rbegin(), a.rend());
    return s;
}

LinOp polya_product(const std::vector<CElem>& b, const Deriv& d) {
    if (b.empty()) throw Precondition("empty tuple");
    const CtxPtr& ctx = b.front().ctx();
    CElem prod = cone(ctx);
    for (const auto& bj : b) prod = prod * bj;
    LinOp acc = LinOp::constant(prod);
    for (auto it = b.rbegin(); it != b.rend(); ++it)
        acc = compose(acc, compose(LinOp::d(ctx), LinOp::constant(it->inverse()), d), d);
    return acc;
}

LinOp compose_order2(const FieldElem& a, const FieldElem& b, const Deriv& d) {
    if (b.maybe_zero()) throw Precondition("order-2 real block needs b != 0");
    CElem ac(a), bc(b);
    CElem i(Field::of(a.ctx()).zero(), Field::of(a.ctx()).one());
    CElem bd = d(bc) / bc;
    CElem f = ac - bc * i + bd;
    CElem g = ac + bc * i;
    LinOp A = compose(LinOp::d_minus(f), LinOp::d_minus(g), d);
    for (const auto& c : A.coeffs())
        if (!c.im().maybe_zero()) throw Precondition("order-2 block failed to be real");
    return A;
}

bool verify_real_splitting(const LinOp& A, const Splitting& s, const Deriv& d) {
    for (const auto& c : A.coeffs())
        if (!c.im().maybe_zero()) return false;
    if (!s.lead.im().maybe_zero()) return false;
    size_t j = 0;
    while (j < s.factors.size()) {
        const CElem& g = s.factors[j];
        if (g.im().maybe_zero()) { // real order-1 block
            ++j;
            continue;
        }
        // order-2 block: this factor must be a - bi + b^dagger for the next one a + bi
        if (j + 1 >= s.factors.size()) return false;
        const CElem& g2 = s.factors[j + 1];
        FieldElem a = g2.re(), b = g2.im();
        if (b.maybe_zero()) return false;
        CElem i(Field::of(a.ctx()).zero(), Field::of(a.ctx()).one());
        CElem want = CElem(a) - CElem(b) * i + CElem(d(b) / b);
        CElem diff = g - want;
        if (!diff.maybe_zero()) return false;
        j += 2;
    }
    return !verify_splitting(s, A, d).has_value();
}

bool strong_split_check(const Splitting& s, const CElem& fv, const Deriv& d) {
    if (fv.maybe_zero()) throw Precondition("span must be nonzero");
    CElem fvd = d(fv) / fv;
    for (const auto& g : s.factors) {
        // Re g succeq fv^dagger, i.e. fv^dagger preceq Re g
        if (!asym_cmp(Rel::PrecEq, fvd, CElem(g.re()))) return false;
    }
    return true;
}

// ---------------------------------------------------------------- division

std::pair<LinOp, LinOp> right_divide(const LinOp& A, const LinOp& B, const Deriv& d) {
    if (B.is_zero()) throw DivByZero("right division by the zero operator");
    CElem blead = B.leading();
    LinOp R = A;
    LinOp Q(A.ctx());
    while (!R.is_zero() && R.order() >= B.order()) {
        if (R.coeffs().back().maybe_zero())
            throw InsufficientPrecision("leading coefficient undecidable during division");
        int k = R.order() - B.order();
        CElem f = R.coeffs().back() / blead;
        std::vector<CElem> qc(static_cast<size_t>(k) + 1, czero(A.ctx()));
        qc.back() = f;
        LinOp t(A.ctx(), std::move(qc));
        Q = Q + t;
        R = R - compose(t, B, d);
    }
    return {Q, R};
}

LinOp lclm(const LinOp& A, const LinOp& B, const Deriv& d) {
    if (A.is_zero() || B.is_zero()) throw DivByZero("lclm of a zero operator");
    // extended right Euclid: track R_i = U_i A + V_i B, stop at R = 0
    LinOp r0 = A, r1 = B;
    LinOp u0 = LinOp::constant(cone(A.ctx())), u1(A.ctx());
    for (int guard = 0; guard < 64; ++guard) {
        if (r1.is_zero()) {
            // U1 A + V1 B = 0, so U1 A = lclm up to normalization
            LinOp L = compose(u1, A, d);
            if (L.is_zero()) throw Precondition("degenerate lclm");
            return L.monic_scaled();
        }
        auto [q, r2] = right_divide(r0, r1, d);
        LinOp u2 = u0 - compose(q, u1, d);
        r0 = r1;
        r1 = r2;
        u0 = u1;
        u1 = u2;
    }
    throw DominanceFailure("lclm Euclid did not terminate");
}

// ---------------------------------------------------------------- order 1

Order1Values order1_values(const LinOp& A) {
    if (A.order() != 1) throw Precondition("order1_values needs an order-1 operator");
    CElem g = -(A.coeff(0) / A.coeff(1));
    Order1Values out;
    int L = A.ctx()->levels;
    // exceptional: g = m^dagger + eps with v(eps) > max Psi (grounded surrogate)
    auto [m, eps_re] = logderiv_solve(g.re());
    CElem eps(eps_re, g.im());
    VInfo vi = eps.vinfo();
    ValVec cap = max_psi(L);
    if (vi.v > cap)
        out.exceptional = m.val();
    else if (!vi.exact)
        throw InsufficientPrecision("exceptional value test hidden below the error term");
    // ultimate: Re g = gg^dagger + eps with eps in I(H)
    if (in_I(eps_re))
        out.ultimate = m.val();
    else
        out.note = "Re g - m^dagger is not in I(H): the ultimate value is not attained in this instance";
    out.note += out.note.empty() ? "grounded instance: thresholds use max Psi" : "; grounded instance: thresholds use max Psi";
    return out;
}

// ---------------------------------------------------------------- printing

std::string LinOp::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = order(); k >= 0; --k) {
        const CElem& c = coeff(k);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool unit = c.is_real() && c.re().is_one();
        bool neg = false;
        if (c.is_real()) {
            try {
                if (c.re().is_exact() && !c.re().maybe_zero() && c.re().sign() < 0) neg = true;
            } catch (const Error&) {
            }
        }
        std::string body;
        if (neg) {
            cs = (-c).str();
        }
        if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos || !c.is_real())
            cs = "(" + cs + ")";
        if (k == 0)
            body = cs;
        else {
            std::string dpow = k == 1 ? "D" : "D^" + std::to_string(k);
            bool unit_after_neg = neg ? (-c).is_real() && (-c).re().is_one() : unit;
            body = unit_after_neg ? dpow : cs + "*" + dpow;
        }
        if (first)
            os << (neg ? "-" : "") << body;
        else
            os << (neg ? " - " : " + ") << body;
        first = false;
    }
    return os.str();
}

} // namespace ada

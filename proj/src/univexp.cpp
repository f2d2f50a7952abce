#include "ada/univexp.hpp"

#include <algorithm>
#include <sstream>

#include "ada/solve1.hpp"

namespace ada {

namespace {

CElem czero(const CtxPtr& ctx) { return CElem(Field::of(ctx).zero()); }
CElem cone(const CtxPtr& ctx) { return CElem(Field::of(ctx).one()); }

bool in_I_c(const CElem& z) { return in_I(z.re()) && in_I(z.im()); }

// is v an element of K^dagger of this instance?
bool in_Kdagger(const CElem& v) {
    try {
        auto [m, eps] = logderiv_solve(v.re());
        (void)m;
        return in_I(eps) && in_I(v.im());
    } catch (const NotLogDerivShape&) {
        return false;
    }
}

// ---- profile machinery for the decomposition system ----------------------
//
// A profile maps a "monomial key" to an exact complex rational coefficient.
// MultiTrans: keys are the series monomials.  RatFunc: keys are integer
// x-exponents of the expansion at +infinity (basis elements must be
// polynomials; the expansion of the input is only needed down to x^-1).

struct CKey {
    std::vector<Rat> exps;
    friend bool operator<(const CKey& a, const CKey& b) { return a.exps < b.exps; }
    friend bool operator==(const CKey& a, const CKey& b) { return a.exps == b.exps; }
};

using Profile = std::map<CKey, std::pair<Rat, Rat>>; // key -> (re, im)

void add_profile(Profile& p, const CKey& k, const Rat& re, const Rat& im) {
    auto& slot = p[k];
    slot.first += re;
    slot.second += im;
}

Profile profile_of(const CElem& z) {
    Profile p;
    if (z.ctx()->kind == FieldKind::MultiTrans) {
        for (const auto& [m, c] : z.re().sd().terms) add_profile(p, CKey{m.exps()}, c, Rat(0));
        for (const auto& [m, c] : z.im().sd().terms) add_profile(p, CKey{m.exps()}, Rat(0), c);
        return p;
    }
    // rational-function instance: expansion at infinity; polynomial part plus x^-1
    auto expand = [&p](const FieldElem& f, bool imag) {
        const auto& d = f.rf();
        auto [q, r] = d.num.divmod(d.den);
        for (int k = 0; k <= q.degree(); ++k) {
            if (q.coeff(k) == 0) continue;
            add_profile(p, CKey{{Rat(k)}}, imag ? Rat(0) : q.coeff(k), imag ? q.coeff(k) : Rat(0));
        }
        if (!r.is_zero() && r.degree() == d.den.degree() - 1) {
            Rat c = r.leading() / d.den.leading();
            add_profile(p, CKey{{Rat(-1)}}, imag ? Rat(0) : c, imag ? c : Rat(0));
        }
    };
    expand(z.re(), false);
    expand(z.im(), true);
    return p;
}

bool key_is_large(const CKey& k, const CtxPtr& ctx) {
    if (ctx->kind == FieldKind::MultiTrans) return !(Mono(k.exps).val() > ValVec::zero(ctx->levels));
    return !(k.exps[0] < 0);
}

// exact Gaussian elimination; returns a solution of M x = rhs or nullopt
std::optional<std::vector<Rat>> solve_system(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs) {
    size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        std::swap(rhs[p], rhs[r]);
        Rat inv = Rat(1) / M[r][c];
        for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt; // inconsistent
    std::vector<Rat> x(cols, Rat(0));
    for (size_t i = 0; i < r; ++i) x[static_cast<size_t>(pivot_col_of_row[i])] = rhs[i];
    return x;
}

// profiles of the generator log-derivatives g_l^dagger
std::vector<Profile> gdag_profiles(const CtxPtr& ctx) {
    std::vector<Profile> out;
    if (ctx->kind == FieldKind::RatFunc) {
        Profile p;
        add_profile(p, CKey{{Rat(-1)}}, Rat(1), Rat(0));
        out.push_back(std::move(p));
        return out;
    }
    int L = ctx->levels;
    for (int l = 0; l < L; ++l) {
        Mono m = l == 0 ? Mono::gen(L, 0, Rat(-1)) : mono_logderiv_bound(Mono::gen(L, l));
        Profile p;
        add_profile(p, CKey{m.exps()}, Rat(1), Rat(0));
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------- UnivCtx

UnivCtx::UnivCtx(CtxPtr field_ctx, std::vector<CElem> basis, std::vector<std::string> names)
    : fctx_(std::move(field_ctx)), basis_(std::move(basis)), names_(std::move(names)) {
    if (names_.size() != basis_.size()) throw Precondition("lambda basis/name mismatch");
    for (const auto& b : basis_) {
        if (b.maybe_zero()) throw Precondition("lambda basis elements must be nonzero");
        if (!b.is_exact()) throw Precondition("lambda basis elements must be exact");
        if (fctx_->kind == FieldKind::RatFunc &&
            (b.re().rf().den.degree() > 0 || b.im().rf().den.degree() > 0))
            throw Precondition("lambda basis over the rational instance must be polynomial");
        if (in_Kdagger(b))
            throw Precondition("lambda basis element " + b.str() + " lies in K^dagger");
        bool re0 = b.re().is_zero(), im0 = b.im().is_zero();
        imag_.push_back(re0);
        if (!re0 && !im0) split_ri_ = false;
    }
    // joint independence from the generator log-derivatives: the combined
    // profile matrix must have full column rank
    std::vector<Profile> cols;
    for (const auto& b : basis_) cols.push_back(profile_of(b));
    for (auto& p : gdag_profiles(fctx_)) cols.push_back(std::move(p));
    std::map<CKey, size_t> keyidx;
    for (const auto& p : cols)
        for (const auto& [k, v] : p) keyidx.emplace(k, keyidx.size());
    std::vector<std::vector<Rat>> M(2 * keyidx.size(), std::vector<Rat>(cols.size(), Rat(0)));
    for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& [k, v] : cols[c]) {
            size_t i = keyidx[k];
            M[2 * i][c] = v.first;
            M[2 * i + 1][c] = v.second;
        }
    size_t rank = 0;
    for (size_t c = 0; c < cols.size(); ++c) {
        size_t p = rank;
        while (p < M.size() && M[p][c] == 0) ++p;
        if (p == M.size()) throw Precondition("lambda basis is not independent of the generator log-derivatives");
        std::swap(M[p], M[rank]);
        Rat inv = Rat(1) / M[rank][c];
        for (size_t j = 0; j < cols.size(); ++j) M[rank][j] *= inv;
        for (size_t i = 0; i < M.size(); ++i) {
            if (i == rank || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (size_t j = 0; j < cols.size(); ++j) M[i][j] -= f * M[rank][j];
        }
        ++rank;
    }
}

// ---------------------------------------------------------------- LambdaVec

LambdaVec LambdaVec::unit(int k, int j, Rat c) {
    std::vector<Rat> q(static_cast<size_t>(k));
    q[static_cast<size_t>(j)] = std::move(c);
    return LambdaVec(std::move(q));
}

LambdaVec operator+(const LambdaVec& a, const LambdaVec& b) {
    std::vector<Rat> q(std::max(a.q_.size(), b.q_.size()));
    for (size_t j = 0; j < q.size(); ++j) q[j] = a.at(static_cast<int>(j)) + b.at(static_cast<int>(j));
    return LambdaVec(std::move(q));
}

LambdaVec LambdaVec::operator-() const {
    std::vector<Rat> q(q_);
    for (auto& x : q) x = -x;
    return LambdaVec(std::move(q));
}

std::string LambdaVec::str(const UnivCtx& ctx) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < static_cast<int>(q_.size()); ++j) {
        Rat c = q_[static_cast<size_t>(j)];
        if (c == 0) continue;
        if (first)
            os << (sign(c) < 0 ? "-" : "");
        else
            os << (sign(c) < 0 ? " - " : " + ");
        Rat a = abs(c);
        if (a != 1) os << to_string(a) << "*";
        os << ctx.names()[static_cast<size_t>(j)];
        first = false;
    }
    return os.str();
}

CElem as_field_elem(const UnivCtx& ctx, const LambdaVec& l) {
    CElem acc = czero(ctx.field_ctx());
    Field F = Field::of(ctx.field_ctx());
    for (int j = 0; j < static_cast<int>(l.raw().size()); ++j) {
        if (l.at(j) == 0) continue;
        acc = acc + CElem(F.from_rat(l.at(j))) * ctx.basis()[static_cast<size_t>(j)];
    }
    return acc;
}

// ---------------------------------------------------------------- GrElem

void GrElem::normalize() {
    for (auto it = s_.begin(); it != s_.end();) {
        if (it->second.is_zero())
            it = s_.erase(it);
        else
            ++it;
    }
}

GrElem GrElem::from_coeff(UPtr ctx, const CElem& c) {
    GrElem f(std::move(ctx));
    if (!c.is_zero()) f.s_.emplace(LambdaVec(), c);
    return f;
}

GrElem GrElem::unit(UPtr ctx, const LambdaVec& l, const CElem& c) {
    GrElem f(std::move(ctx));
    if (!c.is_zero()) f.s_.emplace(l, c);
    return f;
}

bool GrElem::maybe_zero() const {
    for (const auto& [l, c] : s_)
        if (!c.maybe_zero()) return false;
    return true;
}

CElem GrElem::slot(const LambdaVec& l) const {
    auto it = s_.find(l);
    if (it == s_.end()) return czero(ctx_->field_ctx());
    return it->second;
}

std::optional<std::pair<LambdaVec, CElem>> GrElem::single_slot() const {
    std::optional<std::pair<LambdaVec, CElem>> found;
    for (const auto& [l, c] : s_) {
        if (c.maybe_zero())
            throw InsufficientPrecision("spectral slot with coefficient hidden below the error term");
        if (found) return std::nullopt;
        found = {l, c};
    }
    return found;
}

GrElem operator+(const GrElem& a, const GrElem& b) {
    GrElem r = a;
    for (const auto& [l, c] : b.s_) {
        auto [it, fresh] = r.s_.emplace(l, c);
        if (!fresh) it->second = it->second + c;
    }
    r.normalize();
    return r;
}

GrElem GrElem::operator-() const {
    GrElem r(ctx_);
    for (const auto& [l, c] : s_) r.s_.emplace(l, -c);
    return r;
}

GrElem operator-(const GrElem& a, const GrElem& b) { return a + (-b); }

GrElem operator*(const GrElem& a, const GrElem& b) {
    GrElem r(a.ctx_);
    for (const auto& [la, ca] : a.s_)
        for (const auto& [lb, cb] : b.s_) {
            LambdaVec l = la + lb;
            CElem prod = ca * cb;
            auto [it, fresh] = r.s_.emplace(std::move(l), prod);
            if (!fresh) it->second = it->second + prod;
        }
    r.normalize();
    return r;
}

GrElem operator*(const CElem& c, const GrElem& f) {
    GrElem r(f.ctx_);
    for (const auto& [l, cf] : f.s_) {
        CElem prod = c * cf;
        if (!prod.is_zero()) r.s_.emplace(l, std::move(prod));
    }
    return r;
}

GrElem GrElem::derive() const {
    GrElem r(ctx_);
    for (const auto& [l, c] : s_) {
        CElem d = c.derive() + as_field_elem(*ctx_, l) * c;
        if (!d.is_zero()) r.s_.emplace(l, std::move(d));
    }
    return r;
}

GrElem GrElem::star() const {
    GrElem r(ctx_);
    for (const auto& [l, c] : s_) r.s_.emplace(-l, conj(c));
    return r;
}

GrElem GrElem::conj_c() const {
    if (!ctx_->split_real_imag())
        throw Precondition("conjugation needs a basis of purely real / purely imaginary elements");
    GrElem r(ctx_);
    for (const auto& [l, c] : s_) {
        std::vector<Rat> q;
        for (int j = 0; j < static_cast<int>(l.raw().size()); ++j)
            q.push_back(ctx_->imag_basis(j) ? -l.at(j) : l.at(j));
        r.s_.emplace(LambdaVec(std::move(q)), conj(c));
    }
    r.normalize();
    return r;
}

GrElem GrElem::re_part() const {
    Field F = Field::of(ctx_->field_ctx());
    CElem half(F.from_rat(rat(1, 2)));
    return half * (*this + conj_c());
}

GrElem GrElem::im_part() const {
    Field F = Field::of(ctx_->field_ctx());
    CElem mhalf_i(F.zero(), F.from_rat(rat(-1, 2)));
    return mhalf_i * (*this - conj_c());
}

// ---------------------------------------------------------------- norms etc.

VInfo vg_info(const GrElem& f) {
    ValVec vmin_exact = ValVec::infinity();
    ValVec low_min = ValVec::infinity();
    bool any_inexact = false;
    for (const auto& [l, c] : f.slots()) {
        VInfo vi = c.vinfo();
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

CElem trace(const GrElem& f) { return f.slot(LambdaVec()); }

CElem inner(const GrElem& f, const GrElem& g) { return trace(f * g.star()); }

FieldElem norm_sq(const GrElem& f) {
    FieldElem acc = Field::of(f.uctx()->field_ctx()).zero();
    for (const auto& [l, c] : f.slots()) acc = acc + abs_sq(c);
    return acc;
}

FieldElem norm1(const GrElem& f) {
    FieldElem acc = Field::of(f.uctx()->field_ctx()).zero();
    for (const auto& [l, c] : f.slots()) {
        if (c.im().is_zero())
            acc = acc + abs_elem(c.re());
        else if (c.re().is_zero())
            acc = acc + abs_elem(c.im());
        else
            acc = acc + abs_sq(c).sqrt_pos();
    }
    return acc;
}

GrElem char_action(const GrElem& f, const std::vector<CElem>& chi, bool unitary) {
    const UnivCtx& ctx = *f.uctx();
    if (static_cast<int>(chi.size()) != ctx.size()) throw Precondition("character arity mismatch");
    for (const auto& c : chi) {
        if (c.maybe_zero()) throw Precondition("character values must be nonzero");
        if (unitary && !(abs_sq(c) - Field::of(ctx.field_ctx()).one()).is_zero())
            throw Precondition("character value " + c.str() + " is not of modulus 1");
    }
    std::map<LambdaVec, CElem> out;
    for (const auto& [l, c] : f.slots()) {
        CElem factor = cone(ctx.field_ctx());
        for (int j = 0; j < ctx.size(); ++j) {
            Rat q = l.at(j);
            if (q == 0) continue;
            if (!is_int(q)) throw Precondition("character action needs integer lattice support");
            factor = factor * chi[static_cast<size_t>(j)].pow_int(to_long(q));
        }
        out.emplace(l, factor * c);
    }
    return GrElem(f.uctx(), std::move(out));
}

// ---------------------------------------------------------------- operators

LinOp op_spectral(const LinOp& A, const UnivCtx& ctx, const LambdaVec& l) {
    return twist(A, as_field_elem(ctx, l));
}

GrElem apply(const LinOp& A, const GrElem& f) {
    std::map<LambdaVec, CElem> out;
    for (const auto& [l, c] : f.slots()) {
        CElem v = apply(op_spectral(A, *f.uctx(), l), c);
        if (!v.is_zero()) out.emplace(l, std::move(v));
    }
    return GrElem(f.uctx(), std::move(out));
}

// ---------------------------------------------------------------- decompose

Decomp decompose(const UnivCtx& ctx, const CElem& b) {
    const CtxPtr& fctx = ctx.field_ctx();
    std::vector<Profile> cols;
    for (const auto& lb : ctx.basis()) cols.push_back(profile_of(lb));
    size_t k = cols.size();
    for (auto& p : gdag_profiles(fctx)) cols.push_back(std::move(p));

    if (!b.is_exact() && fctx->kind == FieldKind::MultiTrans) {
        auto e1 = b.re().err() ? b.re().err()->val() : ValVec::infinity();
        auto e2 = b.im().err() ? b.im().err()->val() : ValVec::infinity();
        ValVec emin = e1 < e2 ? e1 : e2;
        if (!(emin > ValVec::zero(fctx->levels)))
            throw InsufficientPrecision("decomposition hidden below the error term");
    }
    Profile pb = profile_of(b);

    // rows: keys of the columns plus every large key of b
    std::map<CKey, size_t> keyidx;
    for (const auto& p : cols)
        for (const auto& [key, v] : p) keyidx.emplace(key, keyidx.size());
    for (const auto& [key, v] : pb)
        if (key_is_large(key, fctx)) keyidx.emplace(key, keyidx.size());

    std::vector<std::vector<Rat>> M(2 * keyidx.size(), std::vector<Rat>(cols.size(), Rat(0)));
    std::vector<Rat> rhs(2 * keyidx.size(), Rat(0));
    for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& [key, v] : cols[c]) {
            size_t i = keyidx[key];
            M[2 * i][c] = v.first;
            M[2 * i + 1][c] = v.second;
        }
    for (const auto& [key, v] : pb) {
        auto it = keyidx.find(key);
        if (it == keyidx.end()) continue; // small residual term
        rhs[2 * it->second] = v.first;
        rhs[2 * it->second + 1] = v.second;
    }
    auto sol = solve_system(std::move(M), std::move(rhs));
    if (!sol) throw NotLogDerivShape("element is not lambda + m^dagger + small over this session");

    Decomp out;
    std::vector<Rat> q(sol->begin(), sol->begin() + static_cast<long>(k));
    out.lambda = LambdaVec(std::move(q));
    int L = fctx->kind == FieldKind::RatFunc ? 1 : fctx->levels;
    std::vector<Rat> exps(static_cast<size_t>(L));
    for (int l = 0; l < L; ++l) exps[static_cast<size_t>(l)] = (*sol)[k + static_cast<size_t>(l)];
    out.m = Mono(std::move(exps));
    out.eps = b - as_field_elem(ctx, out.lambda) - CElem(mono_logderiv(fctx, out.m));
    VInfo vi = out.eps.vinfo();
    if (vi.exact && !vi.v.is_inf() && !(vi.v > ValVec::zero(L)))
        throw NotLogDerivShape("residual is not infinitesimal");
    return out;
}

std::pair<LambdaVec, CElem> unit_solve(const UnivCtx& ctx, const CElem& b) {
    Decomp d = decompose(ctx, b);
    if (!in_I_c(d.eps))
        throw NotLogDerivShape("residual " + d.eps.str() + " is not in I(K): no unit with this log-derivative");
    Field F = Field::of(ctx.field_ctx());
    CElem u = CElem(F.monomial(d.m));
    if (!d.eps.is_zero()) u = u * d.eps.antiderivative().exp_small();
    return {d.lambda, u};
}

// ---------------------------------------------------------------- split/kernel

SplitFromKernel split_from_kernel(const UnivCtx& ctx, const std::vector<GrElem>& ys) {
    const CtxPtr& fctx = ctx.field_ctx();
    SplitFromKernel out{{}, LinOp::constant(cone(fctx)), 0};
    for (const auto& y : ys) {
        GrElem f = apply(out.An, y);
        if (f.is_zero()) break; // dependent on the previous ones
        auto single = f.single_slot();
        if (!single) throw Precondition("A_{i-1}(y_i) is not a unit of U");
        CElem a = single->second.logderiv() + as_field_elem(ctx, single->first);
        out.An = compose(LinOp::d_minus(a), out.An);
        out.tuple.push_back(std::move(a));
        out.n += 1;
    }
    return out;
}

std::vector<GrElem> kernel_from_splitting(const UPtr& ctx, const Splitting& s) {
    const CtxPtr& fctx = ctx->field_ctx();
    if (fctx->kind != FieldKind::MultiTrans)
        throw Precondition("kernel_from_splitting needs the truncated instance");
    int r = s.order();
    std::vector<GrElem> basis;
    for (int j = r; j >= 1; --j) {
        // homogeneous solution of the j-th factor
        auto [lam, u] = unit_solve(*ctx, s.factors[static_cast<size_t>(j - 1)]);
        GrElem cur = GrElem::unit(ctx, lam, u);
        // push through factors j+1..r
        for (int t = j + 1; t <= r; ++t) {
            auto single = cur.single_slot();
            if (!single) throw Precondition("inhomogeneous solve lost the spectral slot");
            const auto& [mu, h] = *single;
            CElem xi = as_field_elem(*ctx, mu) - s.factors[static_cast<size_t>(t - 1)];
            CElem z = solve_linear_order1(xi, h);
            cur = GrElem::unit(ctx, mu, z);
        }
        basis.push_back(std::move(cur));
    }
    return basis;
}

std::map<LambdaVec, int> spectrum_from_splitting(const UnivCtx& ctx, const Splitting& s) {
    std::map<LambdaVec, int> out;
    for (const auto& g : s.factors) {
        Decomp d = decompose(ctx, g);
        if (!in_I_c(d.eps))
            throw NotLogDerivShape("factor residual is not in I(K); eigenvalue not in this instance");
        out[d.lambda] += 1;
    }
    return out;
}

// ---------------------------------------------------------------- printing

std::string GrElem::str() const {
    if (s_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : s_) {
        std::string cs = c.str();
        if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos || !c.is_real())
            cs = "(" + cs + ")";
        if (!first) os << " + ";
        first = false;
        if (l.is_zero()) {
            os << cs;
            continue;
        }
        bool unit = c.is_real() && c.re().is_one();
        if (!unit) os << cs << "*";
        os << "E(" << l.str(*ctx_) << ")";
    }
    return os.str();
}

} // namespace ada

#include "ada/oscint.hpp"

namespace ada {

namespace {

CElem czero(const CtxPtr& ctx) { return CElem(Field::of(ctx).zero()); }
CElem cone(const CtxPtr& ctx) { return CElem(Field::of(ctx).one()); }

} // namespace

// ---------------------------------------------------------------- solver core

CElem solve_linear_order1(const CElem& xi, const CElem& f, int cap, std::optional<Mono> rel_prec) {
    if (f.is_zero()) return f;
    if (xi.is_zero()) return f.antiderivative();
    const CtxPtr& ctx = xi.ctx();
    Field F = Field::of(ctx);

    if (ctx->kind == FieldKind::RatFunc) {
        // exact instance: plain fixed point; terminates only when the solution
        // is a rational function reached in finitely many steps
        VInfo vx = xi.vinfo();
        if (!vx.exact) throw InsufficientPrecision("solver coefficient hidden below the error term");
        CElem z(F.zero());
        CElem r = f;
        CElem xi_inv = xi.inverse();
        for (int k = 0; k < cap; ++k) {
            if (r.is_zero()) return z;
            CElem delta = r * xi_inv;
            z = z + delta;
            r = -delta.derive();
        }
        if (r.is_zero()) return z;
        throw DominanceFailure("order-1 fixed point does not terminate over the exact instance");
    }

    // truncated instance: peel the dominant term of the residual.  For the
    // residual's dominant term c m, the balance (m^dagger + xi) gives the
    // update t = c m / lt(m^dagger + xi) with (d + xi)(t) ~ c m.
    auto dominant_term = [&](const CElem& z) -> std::pair<Mono, CElem> {
        VInfo vi = z.vinfo();
        if (!vi.exact) throw InsufficientPrecision("residual hidden below the error term");
        Mono m = Mono::from_val(vi.v);
        Rat cre(0), cim(0);
        auto itr = z.re().sd().terms.find(m);
        if (itr != z.re().sd().terms.end()) cre = itr->second;
        auto iti = z.im().sd().terms.find(m);
        if (iti != z.im().sd().terms.end()) cim = iti->second;
        return {m, CElem(F.from_rat(cre), F.from_rat(cim))};
    };

    CElem z(F.zero());
    CElem r = f;
    std::optional<ValVec> last, target;
    int steps = rel_prec ? cap : std::min(cap, ctx->depth);
    for (int k = 0; k < steps; ++k) {
        if (r.maybe_zero()) return z;
        auto [m, c] = dominant_term(r);
        if (rel_prec && target && m.val() >= *target) return z.truncated(m);
        CElem balance = CElem(mono_logderiv(ctx, m)) + xi;
        if (balance.maybe_zero())
            throw DominanceFailure("resonant balance: the solution leaves the instance");
        VInfo vb = balance.vinfo();
        if (!vb.exact) throw InsufficientPrecision("balance hidden below the error term");
        Mono bm = Mono::from_val(vb.v);
        Rat bre(0), bim(0);
        auto itr = balance.re().sd().terms.find(bm);
        if (itr != balance.re().sd().terms.end()) bre = itr->second;
        auto iti = balance.im().sd().terms.find(bm);
        if (iti != balance.im().sd().terms.end()) bim = iti->second;
        CElem lt = CElem(F.monomial(bm)) * CElem(F.from_rat(bre), F.from_rat(bim));
        CElem t = (c * CElem(F.monomial(m))) / lt;
        z = z + t;
        r = r - (t.derive() + xi * t);
        if (!target) target = m.val() + (rel_prec ? rel_prec->val() : ValVec::zero(ctx->levels));
        VInfo vr = r.vinfo();
        if (last && !(vr.v > *last)) throw DominanceFailure("order-1 peeling does not contract");
        last = vr.v;
    }
    if (r.maybe_zero()) return z;
    VInfo vr = r.vinfo();
    if (!rel_prec || vr.v >= *target) return z.truncated(Mono::from_val(vr.v));
    throw DominanceFailure("order-1 peeling did not reach the requested precision");
}

// ---------------------------------------------------------------- ladder

PjLadder pj_ladder(const CtxPtr& ctx, int m) {
    if (m < 0) throw Precondition("ladder needs m >= 0");
    PjLadder out;
    // P_0 = V
    out.rows.push_back({DiffPoly::constant(cone(ctx))});
    for (int j = 0; j < m; ++j) {
        const auto& prev = out.rows.back();
        std::vector<DiffPoly> next(prev.size() + 1, DiffPoly(ctx));
        DiffPoly Z = DiffPoly::indeterminate(ctx, 0);
        CElem jc(Field::of(ctx).from_rat(Rat(j + 1)));
        for (size_t k = 0; k < prev.size(); ++k) {
            // (j+1) Z P_jk  -  P_jk'   (coefficient part)
            next[k] = next[k] + jc * (Z * prev[k]) - prev[k].total_derivative();
            // shift part of -P_j': -P_jk V^{(k+1)}
            next[k + 1] = next[k + 1] - prev[k];
        }
        out.rows.push_back(std::move(next));
    }
    return out;
}

CElem pj_eval(const PjLadder& ladder, int j, const CElem& zeta, const CElem& f, const Deriv& d) {
    if (j < 0 || j > ladder.size()) throw Precondition("ladder row out of range");
    const auto& row = ladder.rows[static_cast<size_t>(j)];
    CElem acc = czero(zeta.ctx());
    CElem fk = f;
    for (size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_zero()) acc = acc + row[k].evaluate(zeta, d) * fk;
        fk = d(fk);
    }
    return acc;
}

// ---------------------------------------------------------------- byparts

GrElem byparts_check(const UPtr& uctx, const CElem& f, const CElem& xi, int m, const LambdaVec& lambda_e) {
    if (xi.maybe_zero()) throw Precondition("byparts needs xi != 0");
    CElem lam = as_field_elem(*uctx, lambda_e);
    if (!(lam - xi).is_zero())
        throw Precondition("lambda_e must realize e with e^dagger = xi exactly");
    CElem zeta = xi.logderiv();
    PjLadder ladder = pj_ladder(xi.ctx(), m + 1);
    CElem xi_inv = xi.inverse();

    GrElem e = GrElem::unit(uctx, lambda_e, cone(xi.ctx()));
    GrElem fe = f * e;
    GrElem sum(uctx);
    CElem xi_pow = xi_inv;
    for (int j = 0; j <= m; ++j) {
        sum = sum + (pj_eval(ladder, j, zeta, f) * xi_pow) * e;
        xi_pow = xi_pow * xi_inv;
    }
    GrElem tail = (pj_eval(ladder, m + 1, zeta, f) * (xi_pow * xi)) * e; // e/xi^{m+1}
    return fe - sum.derive() - tail;
}

// ---------------------------------------------------------------- solve_order1

Order1Solution solve_order1(const CElem& xi, const CElem& f, Order1Target target, int approximants,
                            std::optional<Mono> rel_prec) {
    const CtxPtr& ctx = xi.ctx();
    if (!asym_cmp(Rel::FlatPrec, cone(ctx), xi))
        throw DominanceFailure("xi is not flat-larger than 1");
    CElem zeta = xi.logderiv();

    Order1Solution out{czero(ctx), {}, czero(ctx)};
    if (target == Order1Target::YPrimePlusXiY) {
        out.y = solve_linear_order1(xi, f, 64, rel_prec);
        out.residual = out.y.derive() + xi * out.y - f;
    } else {
        // (u e / xi)' = f e  <=>  u' + (xi - zeta) u = f xi
        out.y = solve_linear_order1(xi - zeta, f * xi, 64, rel_prec);
        out.residual = out.y.derive() + (xi - zeta) * out.y - f * xi;
    }

    PjLadder ladder = pj_ladder(ctx, approximants);
    CElem acc = czero(ctx);
    CElem xi_pow = cone(ctx);
    CElem xi_inv = xi.inverse();
    for (int j = 0; j <= approximants; ++j) {
        acc = acc + pj_eval(ladder, j, zeta, f) * xi_pow;
        xi_pow = xi_pow * xi_inv;
        // u-form partial sum; for the y-form divide by xi
        out.approximants.push_back(target == Order1Target::UEOverXi ? acc : acc * xi_inv);
    }
    return out;
}

// ---------------------------------------------------------------- derivative expansion

bool deriv_expansion_check(const UPtr& uctx, long l, int n, const CElem& xi, const LambdaVec& lambda_e) {
    const CtxPtr& ctx = xi.ctx();
    if (!asym_cmp(Rel::FlatPrec, cone(ctx), xi)) throw Precondition("needs xi flat-larger than 1");
    CElem lam = as_field_elem(*uctx, lambda_e);
    bool negated;
    if ((lam - xi).is_zero())
        negated = false;
    else if ((lam + xi).is_zero())
        negated = true;
    else
        throw Precondition("lambda_e must realize e with e^dagger = +-xi exactly");

    GrElem g = xi.pow_int(l) * GrElem::unit(uctx, lambda_e, cone(ctx));
    for (int k = 0; k < n; ++k) g = g.derive();
    CElem coeff = g.slot(lambda_e);
    CElem want = xi.pow_int(l + n);
    if (negated && n % 2 == 1) want = -want;
    return asym_cmp(Rel::Sim, coeff, want);
}

} // namespace ada

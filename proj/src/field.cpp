#include "ada/field.hpp"

#include <sstream>

namespace ada {

// ---------------------------------------------------------------- helpers

namespace {

void check_ctx(const FieldElem& a, const FieldElem& b) {
    if (a.ctx()->kind != b.ctx()->kind || a.ctx()->levels != b.ctx()->levels)
        throw Precondition("elements from different field instances");
}

// coarser of two error monomials (the one naming the larger error class)
std::optional<Mono> err_max(const std::optional<Mono>& a, const std::optional<Mono>& b) {
    if (!a) return b;
    if (!b) return a;
    return Mono::dominates(*a, *b) ? *a : *b;
}

RatFuncData rf_normalize(QPoly num, QPoly den) {
    if (den.is_zero()) throw DivByZero();
    if (num.is_zero()) return {QPoly(), QPoly(Rat(1))};
    QPoly g = gcd(num, den);
    if (g.degree() > 0) {
        num = num.divmod(g).first;
        den = den.divmod(g).first;
    }
    Rat lc = den.leading();
    if (lc != 1) {
        num = (Rat(1) / lc) * num;
        den = (Rat(1) / lc) * den;
    }
    return {std::move(num), std::move(den)};
}

std::string rat_coeff_str(const Rat& q) { return to_string(q); }

std::string qpoly_str(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Rat c = p.coeff(k);
        if (c == 0) continue;
        if (first) {
            if (sign(c) < 0) os << "-";
        } else {
            os << (sign(c) < 0 ? " - " : " + ");
        }
        Rat a = abs(c);
        if (k == 0) {
            os << rat_coeff_str(a);
        } else {
            if (a != 1) os << rat_coeff_str(a) << "*";
            os << "x";
            if (k != 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

std::string exp_str(const Rat& q) {
    if (is_int(q)) return "^" + to_string(q);
    return "^(" + to_string(q) + ")";
}

std::string mono_str(const Mono& m) {
    if (m.is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (int l = 0; l < m.levels(); ++l) {
        const Rat& q = m.exps()[static_cast<size_t>(l)];
        if (q == 0) continue;
        if (!first) os << "*";
        if (l == 0)
            os << "x";
        else
            os << "e(" << l << ")";
        if (q != 1) os << exp_str(q);
        first = false;
    }
    return os.str();
}

} // namespace

// ---------------------------------------------------------------- Field

Field Field::ratfunc() {
    auto ctx = std::make_shared<FieldCtx>(FieldCtx{FieldKind::RatFunc, 1, 24});
    return Field(ctx);
}

Field Field::multitrans(int levels, int depth) {
    if (levels < 1) throw Precondition("multitrans needs at least one level");
    if (depth < 1) throw Precondition("depth must be positive");
    auto ctx = std::make_shared<FieldCtx>(FieldCtx{FieldKind::MultiTrans, levels, depth});
    return Field(ctx);
}

FieldElem Field::from_rat(const Rat& q) const {
    if (kind() == FieldKind::RatFunc) return FieldElem(ctx_, RatFuncData{QPoly(q), QPoly(Rat(1))});
    SeriesData d;
    if (q != 0) d.terms.emplace(Mono::one(levels()), q);
    return FieldElem(ctx_, std::move(d));
}

FieldElem Field::x() const {
    if (kind() == FieldKind::RatFunc) return FieldElem(ctx_, RatFuncData{QPoly::x(), QPoly(Rat(1))});
    return monomial(Mono::gen(levels(), 0));
}

FieldElem Field::gen(int l) const {
    if (l == 0) return x();
    if (kind() == FieldKind::RatFunc || l < 0 || l >= levels())
        throw Precondition("no such generator in this instance");
    return monomial(Mono::gen(levels(), l));
}

FieldElem Field::monomial(const Mono& m, const Rat& coeff) const {
    if (kind() == FieldKind::RatFunc) {
        if (m.levels() != 1) throw Precondition("monomial level mismatch");
        const Rat& q = m.exps()[0];
        if (!is_int(q)) throw Precondition("rational powers of x are not in the rational-function instance");
        long e = to_long(q);
        std::vector<Rat> c(static_cast<size_t>(std::abs(e)) + 1);
        c.back() = coeff;
        QPoly p(std::move(c));
        if (e >= 0) return FieldElem(ctx_, rf_normalize(p, QPoly(Rat(1))));
        std::vector<Rat> dc(static_cast<size_t>(-e) + 1);
        dc.back() = Rat(1);
        return FieldElem(ctx_, rf_normalize(QPoly(coeff), QPoly(std::move(dc))));
    }
    if (m.levels() != levels()) throw Precondition("monomial level mismatch");
    SeriesData d;
    if (coeff != 0) d.terms.emplace(m, coeff);
    return FieldElem(ctx_, std::move(d));
}

FieldElem Field::with_err(const FieldElem& f, const Mono& m) const {
    if (kind() == FieldKind::RatFunc) throw Precondition("the rational-function instance is exact");
    SeriesData d = f.sd();
    d.err = err_max(d.err, m);
    return FieldElem(ctx_, std::move(d));
}

// ---------------------------------------------------------------- FieldElem basics

void FieldElem::normalize() {
    if (!std::holds_alternative<SeriesData>(data_)) return;
    auto& d = std::get<SeriesData>(data_);
    for (auto it = d.terms.begin(); it != d.terms.end();) {
        bool absorbed = d.err && !Mono::dominates(it->first, *d.err);
        if (it->second == 0 || absorbed)
            it = d.terms.erase(it);
        else
            ++it;
    }
}

bool FieldElem::is_exact() const {
    if (std::holds_alternative<RatFuncData>(data_)) return true;
    return !sd().err.has_value();
}

bool FieldElem::is_zero() const {
    if (std::holds_alternative<RatFuncData>(data_)) return rf().num.is_zero();
    return sd().terms.empty() && !sd().err;
}

bool FieldElem::maybe_zero() const {
    if (std::holds_alternative<RatFuncData>(data_)) return rf().num.is_zero();
    return sd().terms.empty();
}

bool FieldElem::is_one() const {
    if (std::holds_alternative<RatFuncData>(data_))
        return rf().den.degree() == 0 && rf().num.degree() == 0 && !rf().num.is_zero() && rf().num.leading() == 1;
    const auto& d = sd();
    return !d.err && d.terms.size() == 1 && d.terms.begin()->first.is_one() && d.terms.begin()->second == 1;
}

std::optional<Mono> FieldElem::err() const {
    if (std::holds_alternative<RatFuncData>(data_)) return std::nullopt;
    return sd().err;
}

FieldElem FieldElem::exact_part() const {
    if (std::holds_alternative<RatFuncData>(data_)) return *this;
    SeriesData d = sd();
    d.err.reset();
    return FieldElem(ctx_, std::move(d));
}

FieldElem FieldElem::truncated(const Mono& m) const {
    if (std::holds_alternative<RatFuncData>(data_))
        throw Precondition("cannot truncate an exact rational function");
    SeriesData d = sd();
    d.err = err_max(d.err, m);
    return FieldElem(ctx_, std::move(d));
}

// ---------------------------------------------------------------- arithmetic

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    check_ctx(a, b);
    if (std::holds_alternative<RatFuncData>(a.data_)) {
        const auto &x = a.rf(), &y = b.rf();
        return FieldElem(a.ctx_, rf_normalize(x.num * y.den + y.num * x.den, x.den * y.den));
    }
    SeriesData r;
    r.err = err_max(a.sd().err, b.sd().err);
    r.terms = a.sd().terms;
    for (const auto& [m, c] : b.sd().terms) {
        auto [it, fresh] = r.terms.emplace(m, c);
        if (!fresh) it->second += c;
    }
    return FieldElem(a.ctx_, std::move(r));
}

FieldElem FieldElem::operator-() const {
    if (std::holds_alternative<RatFuncData>(data_)) {
        RatFuncData d = rf();
        d.num = -d.num;
        return FieldElem(ctx_, std::move(d));
    }
    SeriesData d = sd();
    for (auto& [m, c] : d.terms) c = -c;
    return FieldElem(ctx_, std::move(d));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    check_ctx(a, b);
    if (std::holds_alternative<RatFuncData>(a.data_)) {
        const auto &x = a.rf(), &y = b.rf();
        return FieldElem(a.ctx_, rf_normalize(x.num * y.num, x.den * y.den));
    }
    const auto &da = a.sd(), &db = b.sd();
    SeriesData r;
    // error terms: a_err * dom(b), dom(a) * b_err, a_err * b_err
    if (da.err) {
        if (!db.terms.empty()) r.err = err_max(r.err, *da.err * db.terms.begin()->first);
        if (db.err) r.err = err_max(r.err, *da.err * *db.err);
    }
    if (db.err && !da.terms.empty()) r.err = err_max(r.err, da.terms.begin()->first * *db.err);
    for (const auto& [ma, ca] : da.terms)
        for (const auto& [mb, cb] : db.terms) {
            Mono m = ma * mb;
            if (r.err && !Mono::dominates(m, *r.err)) continue;
            auto [it, fresh] = r.terms.emplace(std::move(m), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    return FieldElem(a.ctx_, std::move(r));
}

FieldElem FieldElem::inverse() const {
    if (std::holds_alternative<RatFuncData>(data_)) {
        if (rf().num.is_zero()) throw DivByZero();
        return FieldElem(ctx_, rf_normalize(rf().den, rf().num));
    }
    const auto& d = sd();
    if (d.terms.empty()) {
        if (d.err) throw InsufficientPrecision("inverting an element with no term above its error bound");
        throw DivByZero();
    }
    const Mono& m0 = d.terms.begin()->first;
    const Rat& c0 = d.terms.begin()->second;
    Field F = Field::of(ctx_);
    FieldElem lead_inv = F.monomial(m0.inverse(), Rat(1) / c0);

    // delta = f / (c0 m0) - 1, so v(delta) > 0
    SeriesData ds;
    for (auto it = std::next(d.terms.begin()); it != d.terms.end(); ++it)
        ds.terms.emplace(it->first * m0.inverse(), it->second / c0);
    if (d.err) ds.err = *d.err * m0.inverse();
    FieldElem delta(ctx_, std::move(ds));

    if (delta.is_zero()) return lead_inv; // exact (or exact up to propagated err below)

    // relative truncation: propagated error target when present, with a
    // depth-based cut so every expansion terminates
    std::optional<Mono> err_target;
    if (d.err) err_target = *d.err * m0.inverse(); // err/(c0 m0): relative error of f
    Mono ratio = delta.maybe_zero() ? *delta.err() : delta.dominant()->first;
    std::optional<Mono> reached;

    FieldElem acc = F.one();
    FieldElem pw = F.one();
    for (int k = 1; k <= ctx_->depth; ++k) {
        pw = pw * (-delta);
        VInfo vi = pw.vinfo();
        reached = ratio.pow(Rat(k));
        if (err_target && vi.v >= err_target->val()) {
            reached.reset();
            break;
        }
        if (pw.is_zero()) {
            reached.reset();
            break;
        }
        acc = acc + pw;
    }
    std::optional<Mono> cut = err_target;
    if (reached) cut = err_max(cut, *reached);
    acc = acc.truncated(*cut);
    return acc * lead_inv;
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

FieldElem FieldElem::pow_int(long e) const {
    if (e == 0) return Field::of(ctx_).one();
    FieldElem base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    FieldElem acc = base;
    n -= 1;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    check_ctx(a, b);
    FieldElem d = a - b;
    if (d.is_zero()) return true;
    if (!d.maybe_zero()) return false;
    throw InsufficientPrecision("equality hidden below the error term");
}

// ---------------------------------------------------------------- valuation

VInfo FieldElem::vinfo() const {
    if (std::holds_alternative<RatFuncData>(data_)) {
        if (rf().num.is_zero()) return {ValVec::infinity(), true};
        return {ValVec({Rat(rf().den.degree() - rf().num.degree())}), true};
    }
    const auto& d = sd();
    if (!d.terms.empty()) return {d.terms.begin()->first.val(), true};
    if (d.err) return {d.err->val(), false};
    return {ValVec::infinity(), true};
}

ValVec FieldElem::val_exact() const {
    VInfo vi = vinfo();
    if (!vi.exact) throw InsufficientPrecision("valuation hidden below the error term");
    return vi.v;
}

std::optional<std::pair<Mono, Rat>> FieldElem::dominant() const {
    if (std::holds_alternative<RatFuncData>(data_)) {
        if (rf().num.is_zero()) return std::nullopt;
        long e = rf().num.degree() - rf().den.degree();
        return std::make_pair(Mono::gen(1, 0, Rat(e)), rf().num.leading());
    }
    const auto& d = sd();
    if (!d.terms.empty()) return std::make_pair(d.terms.begin()->first, d.terms.begin()->second);
    if (d.err) throw InsufficientPrecision("dominant term hidden below the error bound");
    return std::nullopt;
}

int FieldElem::sign() const {
    auto dom = dominant();
    if (!dom) return 0;
    return ada::sign(dom->second);
}

FieldElem abs_elem(const FieldElem& f) {
    int s = f.sign();
    return s < 0 ? -f : f;
}

// ---------------------------------------------------------------- derivation

FieldElem mono_logderiv(const CtxPtr& ctx, const Mono& m) {
    if (ctx->kind == FieldKind::RatFunc) {
        Field F = Field::ratfunc();
        // (x^q)^dagger = q/x
        return F.monomial(Mono::gen(1, 0, Rat(-1)), m.exps()[0]);
    }
    Field F = Field::of(ctx);
    FieldElem acc = F.zero();
    int L = ctx->levels;
    for (int l = 0; l < L; ++l) {
        const Rat& q = m.exps()[static_cast<size_t>(l)];
        if (q == 0) continue;
        if (l == 0) {
            acc = acc + F.monomial(Mono::gen(L, 0, Rat(-1)), q);
        } else {
            // g_l^dagger = g_1 ... g_{l-1}
            std::vector<Rat> e(static_cast<size_t>(L));
            for (int j = 1; j < l; ++j) e[static_cast<size_t>(j)] = 1;
            acc = acc + F.monomial(Mono(std::move(e)), q);
        }
    }
    return acc;
}

Mono mono_logderiv_bound(const Mono& m) {
    int L = m.levels();
    int top = m.top_level();
    if (top <= 0) return Mono::gen(L, 0, Rat(-1));
    std::vector<Rat> e(static_cast<size_t>(L));
    for (int j = 1; j < top; ++j) e[static_cast<size_t>(j)] = 1;
    return Mono(std::move(e));
}

FieldElem FieldElem::derive() const {
    if (std::holds_alternative<RatFuncData>(data_)) {
        const auto& d = rf();
        return FieldElem(ctx_, rf_normalize(d.num.derivative() * d.den - d.num * d.den.derivative(), d.den * d.den));
    }
    const auto& d = sd();
    Field F = Field::of(ctx_);
    FieldElem acc = F.zero();
    if (d.err) acc = F.with_err(acc, *d.err * mono_logderiv_bound(*d.err));
    for (const auto& [m, c] : d.terms) {
        if (m.is_one()) continue; // constants
        acc = acc + F.monomial(m, c) * mono_logderiv(ctx_, m);
    }
    return acc;
}

FieldElem FieldElem::logderiv() const { return derive() / *this; }

// ---------------------------------------------------------------- antiderivative

FieldElem FieldElem::antiderivative() const {
    if (std::holds_alternative<RatFuncData>(data_))
        throw Precondition("antiderivative is only provided on the truncated instance");
    const auto& d = sd();
    Field F = Field::of(ctx_);
    int L = levels();

    std::optional<Mono> out_err;
    if (d.err) {
        const Mono& e = *d.err;
        int top = e.top_level();
        if (top <= 0) {
            Rat a = top < 0 ? Rat(0) : e.exps()[0];
            if (a == -1)
                throw InsufficientPrecision("cannot bound the antiderivative of O(x^-1)");
            out_err = Mono::gen(L, 0, a + 1);
        } else {
            out_err = e * mono_logderiv_bound(e).inverse();
        }
    }

    FieldElem acc = F.zero();
    FieldElem osc = F.zero(); // terms with an exponential part, integrated by parts
    for (const auto& [m, c] : d.terms) {
        if (m.top_level() <= 0) {
            Rat a = m.top_level() < 0 ? Rat(0) : m.exps()[0];
            if (a == -1) throw LogDivergent("term " + to_string(c) + "*x^-1 has no antiderivative in the field");
            acc = acc + F.monomial(Mono::gen(L, 0, a + 1), c / (a + 1));
        } else {
            osc = osc + F.monomial(m, c);
        }
    }

    // iterated integration by parts on the exponential part
    std::optional<ValVec> stop; // absolute valuation at which to cut
    if (out_err) stop = out_err->val();
    bool truncated_run = false;
    FieldElem integral = F.zero();
    int budget = ctx_->depth * (1 + static_cast<int>(d.terms.size()));
    for (int rounds = 0; rounds <= budget; ++rounds) {
        if (osc.maybe_zero()) break;
        auto [m, c] = *osc.dominant();
        if ((stop && m.val() >= *stop) || rounds == budget) { // tail below the cut
            truncated_run = true;
            if (!stop) stop = (m * mono_logderiv_bound(m).inverse()).val();
            break;
        }
        int top = m.top_level();
        if (top <= 0) throw LogDivergent("integration by parts produced a pure power term"); // cannot happen
        Mono mt = m * mono_logderiv_bound(m).inverse();
        Rat ct = c / m.exps()[static_cast<size_t>(top)];
        FieldElem t = F.monomial(mt, ct);
        integral = integral + t;
        osc = osc - t.derive();
    }
    acc = acc + integral;
    if (truncated_run && stop) out_err = err_max(out_err, Mono::from_val(*stop));
    if (out_err) acc = F.with_err(acc, *out_err);
    return acc;
}

// ---------------------------------------------------------------- exp / sqrt

FieldElem FieldElem::exp_small() const {
    Field F = Field::of(ctx_);
    if (is_zero()) return F.one();
    if (kind() == FieldKind::RatFunc) throw Precondition("exp is only provided on the truncated instance");
    VInfo vi = vinfo();
    if (!(vi.v > ValVec::zero(levels()))) throw Precondition("exp needs an infinitesimal argument");

    std::optional<Mono> err_target = sd().err;
    Mono ratio = maybe_zero() ? *sd().err : dominant()->first;
    std::optional<Mono> reached;

    FieldElem acc = F.one();
    FieldElem pw = F.one();
    for (int k = 1; k <= ctx_->depth; ++k) {
        pw = pw * *this;
        pw = pw * F.from_rat(Rat(1, k));
        reached = ratio.pow(Rat(k));
        if (pw.is_zero()) {
            reached.reset();
            break;
        }
        if (err_target && pw.vinfo().v >= err_target->val()) {
            reached.reset();
            break;
        }
        acc = acc + pw;
    }
    std::optional<Mono> cut = err_target;
    if (reached) cut = err_max(cut, *reached);
    return F.with_err(acc, *cut);
}

FieldElem FieldElem::sqrt_pos() const {
    if (kind() == FieldKind::RatFunc) throw Precondition("sqrt is only provided on the truncated instance");
    auto dom = dominant();
    if (!dom) throw DivByZero("sqrt of zero");
    auto [m0, c0] = *dom;
    if (ada::sign(c0) <= 0) throw Precondition("sqrt needs a positive element");
    auto root = sqrt_exact(c0);
    if (!root) throw Precondition("dominant coefficient " + to_string(c0) + " is not a rational square");
    Field F = Field::of(ctx_);
    Mono half = m0.pow(Rat(1, 2));
    FieldElem lead = F.monomial(half, *root);

    SeriesData ds;
    const auto& d = sd();
    for (auto it = std::next(d.terms.begin()); it != d.terms.end(); ++it)
        ds.terms.emplace(it->first * m0.inverse(), it->second / c0);
    if (d.err) ds.err = *d.err * m0.inverse();
    FieldElem delta(ctx_, std::move(ds));
    if (delta.is_zero()) return lead;

    std::optional<Mono> err_target;
    if (d.err) err_target = *d.err * m0.inverse();
    Mono ratio = delta.maybe_zero() ? *delta.err() : delta.dominant()->first;
    std::optional<Mono> reached;

    FieldElem acc = F.one();
    FieldElem pw = F.one();
    for (int k = 1; k <= ctx_->depth; ++k) {
        pw = pw * delta;
        reached = ratio.pow(Rat(k));
        if (pw.is_zero() || (pw.maybe_zero() && !pw.is_zero())) {
            reached.reset();
            break;
        }
        if (err_target && pw.vinfo().v >= err_target->val()) {
            reached.reset();
            break;
        }
        acc = acc + F.from_rat(binomial(Rat(1, 2), static_cast<unsigned>(k))) * pw;
    }
    std::optional<Mono> cut = err_target;
    if (reached) cut = err_max(cut, *reached);
    acc = acc.truncated(*cut);
    return acc * lead;
}

// ---------------------------------------------------------------- comparisons

namespace {

// decide "vf > vg" / "vf >= vg" / "vf == vg" from interval data
enum class Tri { True, False, Unknown };

Tri cmp_gt(const VInfo& f, const VInfo& g) {
    ValVec max_g = g.exact ? g.v : ValVec::infinity();
    if (f.v > max_g) return Tri::True;
    if (f.exact && f.v <= g.v) return Tri::False;
    // f interval [f.v, inf] vs g interval [g.v, inf]
    if (f.exact && !g.exact) {
        // vf known; vg in [g.v, inf]: vf > vg iff vg < vf: unknown unless vf <= g.v
        return f.v <= g.v ? Tri::False : Tri::Unknown;
    }
    return Tri::Unknown;
}

Tri cmp_ge(const VInfo& f, const VInfo& g) {
    ValVec max_g = g.exact ? g.v : ValVec::infinity();
    if (f.v >= max_g) return Tri::True;
    if (f.exact && f.v < g.v) return Tri::False;
    return Tri::Unknown;
}

Tri cmp_eq(const VInfo& f, const VInfo& g) {
    if (f.exact && g.exact) return f.v == g.v ? Tri::True : Tri::False;
    if (f.exact && f.v < g.v) return Tri::False;
    if (g.exact && g.v < f.v) return Tri::False;
    return Tri::Unknown;
}

bool settle(Tri t, const char* what) {
    if (t == Tri::Unknown) throw InsufficientPrecision(std::string(what) + " verdict lies below the error term");
    return t == Tri::True;
}

VInfo project(const VInfo& vi, const std::optional<ConvexSubgroup>& delta) {
    if (!delta || vi.v.is_inf()) return vi;
    return {coarsen(vi.v, *delta), vi.exact};
}

} // namespace

bool asym_cmp(Rel rel, const FieldElem& f, const FieldElem& g, std::optional<ConvexSubgroup> delta) {
    check_ctx(f, g);
    if (rel == Rel::Sim) {
        // f ~ g  iff  f - g prec f  (coarsened variant compares in the quotient)
        return asym_cmp(Rel::Prec, f - g, f, delta);
    }
    if (rel == Rel::FlatPrec) {
        return asym_cmp(Rel::Prec, f, g, flat_subgroup(f.levels()));
    }
    VInfo vf = project(f.vinfo(), delta), vg = project(g.vinfo(), delta);
    switch (rel) {
        case Rel::Prec:
            return settle(cmp_gt(vf, vg), "prec");
        case Rel::PrecEq:
            return settle(cmp_ge(vf, vg), "preceq");
        case Rel::Asymp:
            return settle(cmp_eq(vf, vg), "asymp");
        default:
            throw Precondition("bad relation");
    }
}

bool asym_cmp(Rel rel, const CElem& f, const CElem& g, std::optional<ConvexSubgroup> delta) {
    if (rel == Rel::Sim) return asym_cmp(Rel::Prec, f - g, f, delta);
    if (rel == Rel::FlatPrec) return asym_cmp(Rel::Prec, f, g, flat_subgroup(f.re().levels()));
    VInfo vf = project(f.vinfo(), delta), vg = project(g.vinfo(), delta);
    switch (rel) {
        case Rel::Prec:
            return settle(cmp_gt(vf, vg), "prec");
        case Rel::PrecEq:
            return settle(cmp_ge(vf, vg), "preceq");
        case Rel::Asymp:
            return settle(cmp_eq(vf, vg), "asymp");
        default:
            throw Precondition("bad relation");
    }
}

// ---------------------------------------------------------------- I(K), logderiv_solve

namespace {

bool in_I_val(const ValVec& w, int L) {
    if (w.is_inf()) return true;
    for (int l = 0; l < L; ++l) {
        ValVec u = w - psi_of_level(l, L);
        if (!(u > ValVec::zero(L))) continue;
        if (*u.leading_index() <= L - 1 - l) return true;
    }
    return false;
}

} // namespace

bool in_I(const FieldElem& f) {
    int L = f.levels();
    VInfo vi = f.vinfo();
    if (in_I_val(vi.v, L)) return true; // condition is upward closed, so the bound suffices
    if (!vi.exact) throw InsufficientPrecision("I(K) membership hidden below the error term");
    return false;
}

std::pair<Mono, FieldElem> logderiv_solve(const FieldElem& g) {
    int L = g.levels();
    if (g.kind() == FieldKind::RatFunc) {
        // shape: q/x + eps, v(eps) > 1
        Field F = Field::ratfunc();
        VInfo vi = g.vinfo();
        if (!vi.v.is_inf() && vi.v <= ValVec::zero(1))
            throw NotLogDerivShape("element is not infinitesimal");
        FieldElem xg = g * F.x();
        Rat q(0);
        if (!xg.is_zero() && xg.val_exact() == ValVec::zero(1)) {
            q = xg.rf().num.leading() / xg.rf().den.leading();
        }
        FieldElem eps = g - F.monomial(Mono::gen(1, 0, Rat(-1)), q);
        return {Mono::gen(1, 0, q), eps};
    }
    Field F = Field::of(g.ctx());
    FieldElem eps = g;
    std::vector<Rat> exps(static_cast<size_t>(L));
    for (int l = L - 1; l >= 0; --l) {
        Mono ml = l == 0 ? Mono::gen(L, 0, Rat(-1)) : mono_logderiv_bound(Mono::gen(L, l));
        // coefficient of ml in eps
        auto it = eps.sd().terms.find(ml);
        if (it != eps.sd().terms.end()) {
            exps[static_cast<size_t>(l)] = it->second;
            eps = eps - F.monomial(ml, it->second);
        }
    }
    // remaining part must be infinitesimal
    for (const auto& [m, c] : eps.sd().terms) {
        (void)c;
        if (!(m.val() > ValVec::zero(L)))
            throw NotLogDerivShape("large part is not in the span of the generator log-derivatives");
    }
    if (eps.err() && !(eps.err()->val() > ValVec::zero(L)))
        throw InsufficientPrecision("log-derivative shape hidden below the error term");
    return {Mono(std::move(exps)), eps};
}

// ---------------------------------------------------------------- omega / sigma

FieldElem omega_map(const FieldElem& z) { return -(z.derive() + z.derive() + z * z); }

FieldElem sigma_map(const FieldElem& y) {
    if (y.maybe_zero()) throw Precondition("sigma needs a nonzero argument");
    return omega_map(-y.logderiv()) + y * y;
}

CElem omega_map(const CElem& z) { return -(z.derive() + z.derive() + z * z); }

CElem sigma_map(const CElem& y) {
    if (y.maybe_zero()) throw Precondition("sigma needs a nonzero argument");
    return omega_map(-y.logderiv()) + y * y;
}

// ---------------------------------------------------------------- CElem

CElem::CElem(FieldElem re) : re_(std::move(re)) { im_ = Field::of(re_.ctx()).zero(); }

CElem CElem::inverse() const {
    FieldElem n = abs_sq(*this);
    CElem c = conj(*this);
    return {c.re_ / n, c.im_ / n};
}

CElem CElem::pow_int(long e) const {
    if (e == 0) return CElem(Field::of(re_.ctx()).one());
    CElem base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    CElem acc = base;
    n -= 1;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

CElem CElem::exp_small() const {
    // exp(a+bi) with a, b prec 1: exp(a) * (sum (bi)^k / k!)
    FieldElem ea = re_.exp_small();
    if (im_.is_zero()) return CElem(ea);
    Field F = Field::of(re_.ctx());
    VInfo vb = im_.vinfo();
    if (!(vb.v > ValVec::zero(re_.levels()))) throw Precondition("exp needs an infinitesimal argument");
    std::optional<Mono> err_target = im_.err();
    Mono ratio = im_.maybe_zero() ? *im_.err() : im_.dominant()->first;
    std::optional<Mono> reached;
    CElem acc(F.one());
    CElem pw(F.one());
    CElem bi(F.zero(), im_);
    for (int k = 1; k <= re_.ctx()->depth; ++k) {
        pw = pw * bi;
        pw = pw * CElem(F.from_rat(Rat(1, k)));
        reached = ratio.pow(Rat(k));
        if (pw.is_zero()) {
            reached.reset();
            break;
        }
        if (err_target && pw.vinfo().v >= err_target->val()) {
            reached.reset();
            break;
        }
        acc = acc + pw;
    }
    std::optional<Mono> cut = err_target;
    if (reached) cut = err_max(cut, *reached);
    acc = CElem(F.with_err(acc.re_, *cut), F.with_err(acc.im_, *cut));
    return acc * CElem(ea);
}

VInfo CElem::vinfo() const {
    VInfo a = re_.vinfo(), b = im_.vinfo();
    // v(z) = min(v re, v im); combine interval lower bounds
    ValVec lo = a.v <= b.v ? a.v : b.v;
    bool exact;
    if (a.exact && b.exact)
        exact = true;
    else if (a.exact && a.v <= b.v)
        exact = true; // re attains the min regardless of im
    else if (b.exact && b.v <= a.v)
        exact = true;
    else
        exact = false;
    return {lo, exact};
}

ValVec CElem::val_exact() const {
    VInfo vi = vinfo();
    if (!vi.exact) throw InsufficientPrecision("valuation hidden below the error term");
    return vi.v;
}

FieldElem wronskian2(const FieldElem& a, const FieldElem& b) { return a * b.derive() - a.derive() * b; }

// ---------------------------------------------------------------- printing

std::string FieldElem::str() const {
    if (std::holds_alternative<RatFuncData>(data_)) {
        const auto& d = rf();
        if (d.num.is_zero()) return "0";
        if (d.den.degree() == 0) return qpoly_str(d.num);
        return "(" + qpoly_str(d.num) + ")/(" + qpoly_str(d.den) + ")";
    }
    const auto& d = sd();
    if (d.terms.empty() && !d.err) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : d.terms) {
        if (first) {
            if (ada::sign(c) < 0) os << "-";
        } else {
            os << (ada::sign(c) < 0 ? " - " : " + ");
        }
        Rat a = abs(c);
        std::string ms = mono_str(m);
        if (ms == "1") {
            os << to_string(a);
        } else {
            if (a != 1) os << to_string(a) << "*";
            os << ms;
        }
        first = false;
    }
    if (d.err) {
        if (!first) os << " + ";
        os << "O(" << mono_str(*d.err) << ")";
    }
    return os.str();
}

std::string CElem::str() const {
    if (im_.is_zero()) return re_.str();
    std::string im_part = "(" + im_.str() + ")*i";
    if (re_.is_zero()) return im_part;
    return "(" + re_.str() + ") + " + im_part;
}

// ---------------------------------------------------------------- Deriv

Deriv::Deriv(CElem phi) {
    if (phi.maybe_zero()) throw Precondition("compositional conjugation by zero");
    if (phi.is_real() && phi.re().is_one()) return; // stay on the base derivation
    phi_inv_ = phi.inverse();
    phi_ = std::move(phi);
}

const CElem& Deriv::phi() const {
    if (!phi_) throw Precondition("base derivation has no phi");
    return *phi_;
}

CElem Deriv::phi_or_one(const CtxPtr& ctx) const {
    if (phi_) return *phi_;
    return CElem(Field::of(ctx).one());
}

FieldElem Deriv::operator()(const FieldElem& f) const {
    if (!phi_) return f.derive();
    if (!phi_->is_real()) throw Precondition("real element under a complex derivation twist");
    return f.derive() * phi_inv_->re();
}

CElem Deriv::operator()(const CElem& f) const {
    if (!phi_) return f.derive();
    return f.derive() * *phi_inv_;
}

Deriv Deriv::conjugated(const CElem& phi) const {
    if (!phi_) return Deriv(phi);
    return Deriv(*phi_ * phi);
}

} // namespace ada

#include "ada/diffpoly.hpp"

#include <climits>
#include <sstream>

namespace ada {

namespace {

CElem czero(const CtxPtr& ctx) { return CElem(Field::of(ctx).zero()); }
CElem cone(const CtxPtr& ctx) { return CElem(Field::of(ctx).one()); }

Rat int_binom(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Rat acc(1);
    for (int j = 0; j < k; ++j) acc *= Rat(n - j) / Rat(j + 1);
    return acc;
}

} // namespace

void DiffPoly::normalize() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
}

DiffPoly DiffPoly::constant(const CElem& c) {
    DiffPoly p(c.ctx());
    if (!c.is_zero()) p.c_.emplace(MultiIndex(), c);
    return p;
}

DiffPoly DiffPoly::indeterminate(CtxPtr ctx, int k, int power) {
    DiffPoly p(ctx);
    if (power < 0) throw Precondition("negative power of an indeterminate");
    if (power == 0) return constant(cone(ctx));
    p.c_.emplace(MultiIndex::of(k, power), cone(ctx));
    return p;
}

CElem DiffPoly::coeff(const MultiIndex& i) const {
    auto it = c_.find(i);
    if (it == c_.end()) return czero(ctx_);
    return it->second;
}

int DiffPoly::order() const {
    int r = -1;
    for (const auto& [i, c] : c_) r = std::max(r, i.top());
    return r;
}

int DiffPoly::deg() const {
    int d = -1;
    for (const auto& [i, c] : c_) d = std::max(d, i.total());
    return d;
}

int DiffPoly::mult() const {
    int m = INT_MAX;
    for (const auto& [i, c] : c_) m = std::min(m, i.total());
    return m;
}

int DiffPoly::weight() const {
    int w = -1;
    for (const auto& [i, c] : c_) w = std::max(w, i.weight());
    return w;
}

std::tuple<int, int, int> DiffPoly::complexity() const {
    if (is_zero() || order() < 0) return {0, 0, 0}; // elements of K
    int r = order();
    int s = 0;
    for (const auto& [i, c] : c_) s = std::max(s, i.at(r));
    return {r, s, deg()};
}

DiffPoly DiffPoly::select(const std::function<bool(int)>& keep) const {
    DiffPoly p(ctx_);
    for (const auto& [i, c] : c_)
        if (keep(i.total())) p.c_.emplace(i, c);
    return p;
}

DiffPoly DiffPoly::homogeneous_part(int d) const {
    return select([d](int t) { return t == d; });
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r = a;
    for (const auto& [i, c] : b.c_) {
        auto [it, fresh] = r.c_.emplace(i, c);
        if (!fresh) it->second = it->second + c;
    }
    r.normalize();
    return r;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r(ctx_);
    for (const auto& [i, c] : c_) r.c_.emplace(i, -c);
    return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r(a.ctx_);
    for (const auto& [i, ci] : a.c_)
        for (const auto& [j, cj] : b.c_) {
            MultiIndex k = i + j;
            CElem prod = ci * cj;
            auto [it, fresh] = r.c_.emplace(std::move(k), prod);
            if (!fresh) it->second = it->second + prod;
        }
    r.normalize();
    return r;
}

DiffPoly operator*(const CElem& c, const DiffPoly& p) {
    DiffPoly r(p.ctx());
    for (const auto& [i, ci] : p.coeffs()) {
        CElem prod = c * ci;
        if (!prod.is_zero()) r.c_.emplace(i, std::move(prod));
    }
    return r;
}

bool DiffPoly::equals_exact(const DiffPoly& other) const {
    DiffPoly d = *this - other;
    for (const auto& [i, c] : d.c_)
        if (!c.is_zero()) return false;
    return true;
}

DiffPoly DiffPoly::partial(const MultiIndex& i) const {
    DiffPoly r(ctx_);
    for (const auto& [j, c] : c_) {
        if (!j.covers(i)) continue;
        Rat mult(1);
        std::vector<int> rest(static_cast<size_t>(std::max(j.top(), i.top())) + 1, 0);
        for (int k = 0; k <= std::max(j.top(), i.top()); ++k) {
            mult *= int_binom(j.at(k), i.at(k));
            rest[static_cast<size_t>(k)] = j.at(k) - i.at(k);
        }
        if (mult == 0) continue;
        CElem coeff = CElem(Field::of(ctx_).from_rat(mult)) * c;
        MultiIndex key{std::move(rest)};
        auto [it, fresh] = r.c_.emplace(std::move(key), coeff);
        if (!fresh) it->second = it->second + coeff;
    }
    r.normalize();
    return r;
}

DiffPoly DiffPoly::separant() const {
    int r = order();
    if (r < 0) throw Precondition("separant of an element of the coefficient field");
    return partial(MultiIndex::of(r, 1));
}

DiffPoly DiffPoly::total_derivative(const Deriv& d) const {
    DiffPoly r(ctx_);
    auto add = [&](MultiIndex key, CElem val) {
        if (val.is_zero()) return;
        auto [it, fresh] = r.c_.emplace(std::move(key), val);
        if (!fresh) it->second = it->second + val;
    };
    for (const auto& [i, c] : c_) {
        add(i, d(c));
        for (int k = 0; k <= i.top(); ++k) {
            int e = i.at(k);
            if (e == 0) continue;
            CElem coeff = CElem(Field::of(ctx_).from_rat(Rat(e))) * c;
            add(i.plus(k, -1).plus(k + 1, +1), std::move(coeff));
        }
    }
    r.normalize();
    return r;
}

CElem DiffPoly::evaluate(const CElem& y, const Deriv& d) const {
    int r = order();
    std::vector<CElem> ys;
    ys.push_back(y);
    for (int k = 1; k <= r; ++k) ys.push_back(d(ys.back()));
    CElem acc = czero(ctx_);
    for (const auto& [i, c] : c_) {
        CElem term = c;
        for (int k = 0; k <= i.top(); ++k)
            for (int e = 0; e < i.at(k); ++e) term = term * ys[static_cast<size_t>(k)];
        acc = acc + term;
    }
    return acc;
}

namespace {

DiffPoly poly_pow(const DiffPoly& p, int e, const CtxPtr& ctx) {
    DiffPoly acc = DiffPoly::constant(cone(ctx));
    for (int j = 0; j < e; ++j) acc = acc * p;
    return acc;
}

// substitute Y^{(k)} |-> S[k] into P
DiffPoly substitute(const DiffPoly& P, const std::vector<DiffPoly>& S, const CtxPtr& ctx) {
    DiffPoly r(ctx);
    for (const auto& [i, c] : P.coeffs()) {
        DiffPoly term = DiffPoly::constant(c);
        for (int k = 0; k <= i.top(); ++k)
            if (i.at(k) > 0) term = term * poly_pow(S[static_cast<size_t>(k)], i.at(k), ctx);
        r = r + term;
    }
    return r;
}

} // namespace

DiffPoly DiffPoly::conj_add(const CElem& a, const Deriv& d) const {
    int r = std::max(order(), 0);
    std::vector<DiffPoly> subs;
    CElem ak = a;
    for (int k = 0; k <= r; ++k) {
        subs.push_back(DiffPoly::constant(ak) + DiffPoly::indeterminate(ctx_, k));
        ak = d(ak);
    }
    return substitute(*this, subs, ctx_);
}

DiffPoly DiffPoly::conj_mult(const CElem& a, const Deriv& d) const {
    int r = std::max(order(), 0);
    std::vector<CElem> as; // a, a', ..., a^{(r)}
    as.push_back(a);
    for (int k = 1; k <= r; ++k) as.push_back(d(as.back()));
    std::vector<DiffPoly> subs;
    for (int n = 0; n <= r; ++n) {
        DiffPoly f(ctx_);
        for (int k = 0; k <= n; ++k) {
            CElem coeff = CElem(Field::of(ctx_).from_rat(int_binom(n, k))) * as[static_cast<size_t>(n - k)];
            f = f + coeff * DiffPoly::indeterminate(ctx_, k);
        }
        subs.push_back(f);
    }
    return substitute(*this, subs, ctx_);
}

DiffPoly DiffPoly::conj_comp(const CElem& phi, const Deriv& d) const {
    if (phi.maybe_zero()) throw Precondition("compositional conjugation by zero");
    int r = std::max(order(), 0);
    Deriv dd = d.conjugated(phi);
    std::vector<DiffPoly> G;
    G.push_back(DiffPoly::indeterminate(ctx_, 0));
    for (int n = 1; n <= r; ++n) G.push_back(DiffPoly::constant(phi) * G.back().total_derivative(dd));
    return substitute(*this, G, ctx_);
}

// ---------------------------------------------------------------- Riccati

std::vector<DiffPoly> riccati_basis(const CtxPtr& ctx, int n, const Deriv& d) {
    std::vector<DiffPoly> R;
    R.push_back(DiffPoly::constant(cone(ctx)));
    if (n == 0) return R;
    R.push_back(DiffPoly::indeterminate(ctx, 0));
    for (int k = 2; k <= n; ++k) R.push_back(R[1] * R.back() + R.back().total_derivative(d));
    return R;
}

DiffPoly riccati_poly(const DiffPoly& P, const Deriv& d) {
    if (P.is_zero()) return P;
    int dg = P.deg();
    if (dg != P.mult()) throw Precondition("Riccati transform needs a homogeneous polynomial");
    int r = std::max(P.order(), 0);
    std::vector<DiffPoly> R = riccati_basis(P.ctx(), r, d);
    DiffPoly acc(P.ctx());
    for (const auto& [i, c] : P.coeffs()) {
        DiffPoly term = DiffPoly::constant(c);
        for (int k = 0; k <= i.top(); ++k)
            if (i.at(k) > 0) term = term * poly_pow(R[static_cast<size_t>(k)], i.at(k), P.ctx());
        acc = acc + term;
    }
    return acc;
}

// ---------------------------------------------------------------- dominance

namespace {

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

VInfo gaussian_vinfo(const DiffPoly& P) {
    std::vector<VInfo> vs;
    for (const auto& [i, c] : P.coeffs()) vs.push_back(c.vinfo());
    return merge_vinfos(vs);
}

DominantData dominant_data(const DiffPoly& P) {
    if (P.is_zero()) throw Precondition("dominant data of the zero polynomial");
    VInfo vp = gaussian_vinfo(P);
    if (!vp.exact) throw InsufficientPrecision("gaussian valuation hidden below the error term");
    DominantData d{vp.v, -1, INT_MAX, -1};
    for (const auto& [i, c] : P.coeffs()) {
        VInfo vi = c.vinfo();
        bool dominant;
        if (vi.exact)
            dominant = vi.v == vp.v;
        else if (vi.v > vp.v)
            dominant = false;
        else
            throw InsufficientPrecision("dominant part membership hidden below the error term");
        if (!dominant) continue;
        d.ddeg = std::max(d.ddeg, i.total());
        d.dval = std::min(d.dval, i.total());
        d.dwt = std::max(d.dwt, i.weight());
    }
    return d;
}

SweepResult newton_sweep(const DiffPoly& P, const std::vector<CElem>& phi_chain, const Deriv& d) {
    if (phi_chain.empty()) throw Precondition("newton_sweep needs a nonempty chain");
    SweepResult r;
    for (const auto& phi : phi_chain) {
        DiffPoly q = P.conj_comp(phi, d);
        DominantData dd = dominant_data(q);
        r.entries.push_back({phi.str(), dd.dval, dd.ddeg, dd.dwt});
    }
    size_t n = r.entries.size();
    auto same = [&](size_t a, size_t b) {
        return r.entries[a].dval == r.entries[b].dval && r.entries[a].ddeg == r.entries[b].ddeg &&
               r.entries[a].dwt == r.entries[b].dwt;
    };
    r.stabilized = n >= 3 ? (same(n - 1, n - 2) && same(n - 2, n - 3)) : (n == 2 ? same(0, 1) : true);
    return r;
}

// ---------------------------------------------------------------- printing

std::string DiffPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::vector<const std::pair<const MultiIndex, CElem>*> terms;
    for (const auto& t : c_) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) {
        if (a->first.total() != b->first.total()) return a->first.total() > b->first.total();
        return b->first < a->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : terms) {
        const MultiIndex& i = t->first;
        const CElem& c = t->second;
        std::string cs;
        bool neg = false;
        bool is_unit = false;
        if (c.is_real()) {
            FieldElem a = c.re();
            bool exact_sign = a.is_exact() && !a.maybe_zero();
            if (exact_sign && a.sign() < 0) {
                neg = true;
                a = -a;
            }
            cs = a.str();
            is_unit = a.is_one();
            if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos) cs = "(" + cs + ")";
        } else {
            cs = "(" + c.str() + ")";
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int k = 0; k <= i.top(); ++k) {
            int e = i.at(k);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            if (k == 0)
                mono += var;
            else if (k == 1)
                mono += var + "'";
            else if (k == 2)
                mono += var + "''";
            else
                mono += var + "^(" + std::to_string(k) + ")";
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            os << cs;
        else if (is_unit)
            os << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

} // namespace ada

#ifndef ADA_DIFFPOLY_HPP
#define ADA_DIFFPOLY_HPP

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "ada/field.hpp"

namespace ada {

// Exponent tuple i = (i_0, ..., i_r) of a differential monomial
// Y^{i_0} (Y')^{i_1} ... (Y^{(r)})^{i_r}; no trailing zeros stored.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> v) : i_(std::move(v)) { trim(); }

    static MultiIndex of(int k, int e = 1) {
        std::vector<int> v(static_cast<size_t>(k) + 1, 0);
        v[static_cast<size_t>(k)] = e;
        return MultiIndex(std::move(v));
    }

    const std::vector<int>& raw() const { return i_; }
    int at(int k) const { return (k >= 0 && k < static_cast<int>(i_.size())) ? i_[static_cast<size_t>(k)] : 0; }
    int top() const { return static_cast<int>(i_.size()) - 1; } // -1 for the constant index

    int total() const { // |i|
        int s = 0;
        for (int e : i_) s += e;
        return s;
    }
    int weight() const { // ||i||
        int s = 0;
        for (size_t k = 0; k < i_.size(); ++k) s += static_cast<int>(k) * i_[k];
        return s;
    }
    Rat factorial() const {
        Rat f(1);
        for (int e : i_)
            for (int j = 2; j <= e; ++j) f *= j;
        return f;
    }
    MultiIndex plus(int k, int delta) const {
        std::vector<int> v = i_;
        if (k >= static_cast<int>(v.size())) v.resize(static_cast<size_t>(k) + 1, 0);
        v[static_cast<size_t>(k)] += delta;
        if (v[static_cast<size_t>(k)] < 0) throw Precondition("negative exponent in multi-index");
        return MultiIndex(std::move(v));
    }
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        std::vector<int> v(std::max(a.i_.size(), b.i_.size()), 0);
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.at(static_cast<int>(k)) + b.at(static_cast<int>(k));
        return MultiIndex(std::move(v));
    }
    // componentwise a >= b
    bool covers(const MultiIndex& b) const {
        for (int k = 0; k <= std::max(top(), b.top()); ++k)
            if (at(k) < b.at(k)) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.i_ == b.i_; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.i_ < b.i_; } // lex, canonical

private:
    void trim() {
        while (!i_.empty() && i_.back() == 0) i_.pop_back();
    }
    std::vector<int> i_;
};

// Sparse differential polynomial over the complexified coefficient field.
class DiffPoly {
public:
    explicit DiffPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    DiffPoly(CtxPtr ctx, std::map<MultiIndex, CElem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        normalize();
    }

    static DiffPoly constant(const CElem& c);
    static DiffPoly indeterminate(CtxPtr ctx, int k, int power = 1); // Y^{(k)}^power

    const CtxPtr& ctx() const { return ctx_; }
    const std::map<MultiIndex, CElem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    CElem coeff(const MultiIndex& i) const;
    CElem constant_coeff() const { return coeff(MultiIndex()); } // P(0)

    int order() const;    // max k with Y^{(k)} present; -1 for constants
    int deg() const;      // -1 (for -infinity) when zero
    int mult() const;     // multiplicity at 0; INT_MAX when zero
    int weight() const;   // -1 when zero
    std::tuple<int, int, int> complexity() const; // c(P) = (order, deg_{Y^{(r)}}, deg)

    DiffPoly select(const std::function<bool(int)>& keep_total_degree) const;
    DiffPoly homogeneous_part(int d) const;

    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly operator-() const;
    friend DiffPoly operator*(const CElem& c, const DiffPoly& p);
    bool equals_exact(const DiffPoly& other) const; // true iff difference is exactly 0

    // formal partial P_(i) = (1/i!) d^i P / dY^i
    DiffPoly partial(const MultiIndex& i) const;
    DiffPoly separant() const; // dP/dY^{(r)}, r = order

    // total derivative: coefficients via d, indeterminate shift Y^{(k)} -> Y^{(k+1)}
    DiffPoly total_derivative(const Deriv& d = {}) const;

    CElem evaluate(const CElem& y, const Deriv& d = {}) const;

    DiffPoly conj_add(const CElem& a, const Deriv& d = {}) const;   // P(a+Y)
    DiffPoly conj_mult(const CElem& a, const Deriv& d = {}) const;  // P(aY)
    // coefficients of P^phi, living in K^phi (derivation d.conjugated(phi))
    DiffPoly conj_comp(const CElem& phi, const Deriv& d = {}) const;

    std::string str(const std::string& var = "Y") const;

private:
    void normalize();
    CtxPtr ctx_;
    std::map<MultiIndex, CElem> c_;
};

// Riccati basis R_0..R_n in Q{Z}: R_0 = 1, R_{n+1} = Z R_n + R_n'.
std::vector<DiffPoly> riccati_basis(const CtxPtr& ctx, int n, const Deriv& d = {});

// Riccati transform of a homogeneous P: Ri(P)(y^dagger) = P(y)/y^{deg P}.
DiffPoly riccati_poly(const DiffPoly& P, const Deriv& d = {});

// gaussian valuation data ---------------------------------------------------

VInfo gaussian_vinfo(const DiffPoly& P);

struct DominantData {
    ValVec v;  // gaussian valuation v(P)
    int ddeg;  // max d with v(P_d) = v(P)
    int dval;  // min d with v(P_d) = v(P)
    int dwt;   // max weight of a dominant index
};

// throws InsufficientPrecision when any of the quantities is undetermined
DominantData dominant_data(const DiffPoly& P);

struct SweepEntry {
    std::string phi;
    int dval, ddeg, dwt;
};
struct SweepResult {
    std::vector<SweepEntry> entries;
    bool stabilized; // last three entries agree (heuristic, chain-relative)
};
SweepResult newton_sweep(const DiffPoly& P, const std::vector<CElem>& phi_chain, const Deriv& d = {});

} // namespace ada

#endif

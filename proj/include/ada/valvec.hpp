#ifndef ADA_VALVEC_HPP
#define ADA_VALVEC_HPP

#include <algorithm>
#include <compare>
#include <optional>
#include <variant>
#include <vector>

#include "ada/errors.hpp"
#include "ada/rational.hpp"

namespace ada {

// Element of the value group Gamma = Q^L under lexicographic order, or the
// distinguished top element infinity (= v(0)).  Coordinates are stored most
// significant first: coords[0] belongs to the highest exponential level.
class ValVec {
public:
    ValVec() : inf_(true) {}
    explicit ValVec(std::vector<Rat> coords) : inf_(false), coords_(std::move(coords)) {}

    static ValVec infinity() { return ValVec(); }
    static ValVec zero(int levels) { return ValVec(std::vector<Rat>(levels)); }

    bool is_inf() const { return inf_; }
    bool is_zero() const {
        if (inf_) return false;
        return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c == 0; });
    }
    int levels() const { return static_cast<int>(coords_.size()); }
    const std::vector<Rat>& coords() const {
        if (inf_) throw Precondition("infinite valuation has no coordinates");
        return coords_;
    }

    // Index of the leading (most significant) nonzero coordinate; nullopt for 0.
    std::optional<int> leading_index() const {
        if (inf_) throw Precondition("leading_index of infinity");
        for (int i = 0; i < levels(); ++i)
            if (coords_[i] != 0) return i;
        return std::nullopt;
    }

    friend ValVec operator+(const ValVec& a, const ValVec& b) {
        if (a.inf_ || b.inf_) return infinity();
        check_same(a, b);
        std::vector<Rat> c(a.coords_);
        for (int i = 0; i < a.levels(); ++i) c[i] += b.coords_[i];
        return ValVec(std::move(c));
    }
    friend ValVec operator-(const ValVec& a, const ValVec& b) { return a + (-b); }
    ValVec operator-() const {
        if (inf_) throw Precondition("cannot negate infinite valuation");
        std::vector<Rat> c(coords_);
        for (auto& x : c) x = -x;
        return ValVec(std::move(c));
    }
    friend ValVec operator*(const Rat& q, const ValVec& a) {
        if (a.inf_) {
            if (q == 0) throw Precondition("0 * infinity in the value group");
            return infinity();
        }
        std::vector<Rat> c(a.coords_);
        for (auto& x : c) x *= q;
        return ValVec(std::move(c));
    }

    // Total lexicographic order; infinity is greatest.
    friend std::strong_ordering operator<=>(const ValVec& a, const ValVec& b) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        if (a.inf_) return std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        check_same(a, b);
        for (int i = 0; i < a.levels(); ++i) {
            if (a.coords_[i] != b.coords_[i])
                return a.coords_[i] < b.coords_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const ValVec& a, const ValVec& b) { return (a <=> b) == 0; }

private:
    static void check_same(const ValVec& a, const ValVec& b) {
        if (a.levels() != b.levels()) throw Precondition("value-group rank mismatch");
    }
    bool inf_;
    std::vector<Rat> coords_;
};

// Comparison of archimedean classes [a] vs [b] for nonzero finite vectors:
// in lex Q^L the class is determined by the leading nonzero level, deeper
// (more significant) level meaning the larger class.
inline std::strong_ordering arch_cmp(const ValVec& a, const ValVec& b) {
    if (a.is_inf() || b.is_inf() || a.is_zero() || b.is_zero())
        throw Precondition("archimedean class needs a nonzero finite argument");
    int ia = *a.leading_index(), ib = *b.leading_index();
    // smaller leading index  <=>  larger class
    if (ia == ib) return std::strong_ordering::equal;
    return ia > ib ? std::strong_ordering::less : std::strong_ordering::greater;
}

// The convex subgroup of Gamma = Q^L consisting of all vectors supported on
// the lowest `level` generator levels, i.e. whose first L-level coordinates
// vanish.  level = 0 is the trivial group, level = L all of Gamma.
struct ConvexSubgroup {
    int level = 0;

    bool contains(const ValVec& g) const {
        if (g.is_inf()) return false;
        int L = g.levels();
        for (int i = 0; i < L - level; ++i)
            if (g.coords()[i] != 0) return false;
        return true;
    }
};

// Delta(m) = {gamma : [gamma] < [m]} for v(m) = w != 0.
inline ConvexSubgroup delta_of(const ValVec& w) {
    if (w.is_inf() || w.is_zero()) throw Precondition("Delta(m) needs m not asymptotic to 1");
    int lead = *w.leading_index();
    // generator level of the class of w:
    int gen_level = w.levels() - 1 - lead;
    return ConvexSubgroup{gen_level};
}

// Projection of gamma into Gamma/Delta: keep the significant part, zero the rest.
inline ValVec coarsen(const ValVec& g, const ConvexSubgroup& delta) {
    if (g.is_inf()) return g;
    std::vector<Rat> c = g.coords();
    int L = g.levels();
    for (int i = L - delta.level; i < L; ++i) c[static_cast<size_t>(i)] = 0;
    return ValVec(std::move(c));
}

// psi(gamma) = v(m^dagger) for any monomial m with v(m) = gamma.  With
// generators g_0 = x, g_l = exp(g_{l-1}) we have  v(g_0^dagger) = v(1/x) and
// v(g_l^dagger) = -(e_1 + ... + e_{l-1})  (product of lower generators).
inline ValVec psi_of_level(int gen_level, int L) {
    std::vector<Rat> c(static_cast<size_t>(L));
    if (gen_level == 0) {
        c[static_cast<size_t>(L - 1)] = 1; // v(x^{-1})
    } else {
        for (int j = 1; j < gen_level; ++j) c[static_cast<size_t>(L - 1 - j)] = -1;
    }
    return ValVec(std::move(c));
}

inline ValVec psi(const ValVec& g) {
    if (g.is_inf() || g.is_zero()) throw Precondition("psi needs a nonzero finite argument");
    int lead = *g.leading_index();
    int L = g.levels();
    return psi_of_level(L - 1 - lead, L);
}

// Gamma^flat = {gamma : psi(gamma) > 0}: exactly the vectors supported on
// generator level 0.
inline ConvexSubgroup flat_subgroup(int /*L*/) { return ConvexSubgroup{1}; }

inline bool in_flat(const ValVec& g) {
    if (g.is_inf() || g.is_zero()) throw Precondition("in_flat needs a nonzero finite argument");
    return psi(g) > ValVec::zero(g.levels());
}

// The largest value of psi on Gamma^{!=0}: attained on classes of level 0.
inline ValVec max_psi(int L) { return psi_of_level(0, L); }

// A nonempty downward-closed subset of Gamma, standing for v(a^ - H).
struct CutSpec {
    struct Below {
        ValVec bound;
    }; // {gamma : gamma < bound}
    struct DownOf {
        ConvexSubgroup group;
    }; // downward closure of the subgroup
    struct All {};

    std::variant<Below, DownOf, All> spec = All{};

    bool contains(const ValVec& g) const {
        if (g.is_inf()) return false; // cuts live in Gamma
        if (std::holds_alternative<All>(spec)) return true;
        if (auto* b = std::get_if<Below>(&spec)) return g < b->bound;
        const auto& d = std::get<DownOf>(spec).group;
        if (d.contains(g)) return true;
        // g <= some member of the subgroup iff its significant part is negative
        int L = g.levels();
        for (int i = 0; i < L - d.level; ++i) {
            if (g.coords()[i] != 0) return g.coords()[i] < 0;
        }
        return true;
    }

    // Shift the cut by delta: v((a^ - H)/n) = cut - v(n).
    CutSpec shifted(const ValVec& delta) const {
        if (auto* b = std::get_if<Below>(&spec)) return CutSpec{Below{b->bound + delta}};
        if (std::holds_alternative<DownOf>(spec) && !delta.is_zero())
            throw Precondition("cannot shift a subgroup-shaped cut by a nonzero value");
        return *this;
    }

    // Largest generator level realized by a positive member of the cut, or
    // nullopt when the cut has no positive member.
    std::optional<int> max_positive_level(int L) const {
        if (std::holds_alternative<All>(spec)) return L - 1;
        if (auto* d = std::get_if<DownOf>(&spec)) {
            if (d->group.level == 0) return std::nullopt;
            return d->group.level - 1;
        }
        const ValVec& b = std::get<Below>(spec).bound;
        if (b.is_inf()) return L - 1;
        if (b <= ValVec::zero(L)) return std::nullopt;
        return L - 1 - *b.leading_index();
    }
};

// member: g in cut;  bound: every element of S inside the cut is <= g.
inline std::pair<bool, bool> cut_tests(const std::vector<ValVec>& S, const CutSpec& cut, const ValVec& g) {
    bool member = cut.contains(g);
    bool bound = true;
    for (const auto& s : S)
        if (cut.contains(s) && !(s <= g)) bound = false;
    return {member, bound};
}

} // namespace ada

#endif

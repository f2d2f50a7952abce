#ifndef ADA_QPOLY_HPP
#define ADA_QPOLY_HPP

#include <vector>

#include "ada/errors.hpp"
#include "ada/rational.hpp"

namespace ada {

// Dense polynomial over Q in one variable (the generator x of the rational
// function instance).  Coefficient of x^k at index k; no trailing zeros.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(Rat c) {
        if (c != 0) c_.push_back(std::move(c));
    }
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly x() { return QPoly(std::vector<Rat>{Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const Rat& leading() const {
        if (is_zero()) throw Precondition("leading coefficient of zero polynomial");
        return c_.back();
    }
    const Rat& coeff(int k) const {
        static const Rat z(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return z;
        return c_[static_cast<size_t>(k)];
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return QPoly(std::move(r));
    }
    QPoly operator-() const {
        std::vector<Rat> r(c_);
        for (auto& q : r) q = -q;
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const Rat& q, const QPoly& a) {
        if (q == 0) return QPoly();
        std::vector<Rat> r(a.c_);
        for (auto& x : r) x *= q;
        return QPoly(std::move(r));
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<Rat> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c_[i];
        return QPoly(std::move(r));
    }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw DivByZero("polynomial division by zero");
        QPoly r = *this;
        std::vector<Rat> q(std::max<size_t>(1, c_.size()), Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rat f = r.leading() / d.leading();
            q[static_cast<size_t>(k)] = f;
            std::vector<Rat> sub(static_cast<size_t>(k), Rat(0));
            sub.insert(sub.end(), d.c_.begin(), d.c_.end());
            QPoly s(std::move(sub));
            r = r - f * s;
        }
        return {QPoly(std::move(q)), r};
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        return (Rat(1) / leading()) * *this;
    }

    friend QPoly gcd(QPoly a, QPoly b) {
        while (!b.is_zero()) {
            QPoly r = a.divmod(b).second;
            a = std::move(b);
            b = r.monic(); // keep coefficients tame
        }
        return a.monic();
    }

    std::vector<Rat>& raw() { return c_; }
    const std::vector<Rat>& raw() const { return c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

} // namespace ada

#endif

#pragma once

// Restricted rational functions num/den. There is deliberately no
// multivariate gcd here: the only simplifications are (a) clearing a
// constant or exactly-dividing denominator and (b) scaling the
// denominator monic. Equality is decided by cross-multiplication.

#include "logjet/poly.hpp"

namespace logjet {

class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(num_.vars(), Rat(1)) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        normalize();
    }
    RatFunc(const VarsPtr& vars, const Rat& c) : num_(vars, c), den_(vars, Rat(1)) {}

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarsPtr& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    Poly as_poly() const {
        if (!is_polynomial()) throw std::logic_error("RatFunc: denominator not constant");
        return num_.scaled(den_.constant_value().inverse());
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc scaled(const Rat& c) const {
        RatFunc r = *this;
        r.num_ = r.num_.scaled(c);
        return r;
    }

    // quotient rule, exact
    RatFunc derivative(std::size_t v) const {
        Poly dn = partial_derivative(num_, v);
        Poly dd = partial_derivative(den_, v);
        if (dd.is_zero()) return RatFunc(dn, den_);
        return RatFunc(dn * den_ - num_ * dd, den_ * den_);
    }

    Rat eval(const std::vector<Rat>& point) const {
        Rat d = logjet::eval(den_, point);
        if (d.is_zero()) throw std::domain_error("RatFunc: denominator vanishes at point");
        return logjet::eval(num_, point) / d;
    }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly(den_.vars(), Rat(1));
            return;
        }
        if (!den_.is_constant()) {
            if (auto q = try_exact_divide(num_, den_)) {
                num_ = std::move(*q);
                den_ = Poly(num_.vars(), Rat(1));
                return;
            }
        }
        Rat lc = den_.leading().second;
        if (!lc.is_one()) {
            Rat inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Poly num_;
    Poly den_;
};

// a/b == c/d decided by cross-multiplication (no gcd needed)
inline bool ratfunc_eq(const RatFunc& a, const RatFunc& b) {
    return a.num() * b.den() == b.num() * a.den();
}

inline RatFunc ratfunc_pow(const RatFunc& f, long e) {
    if (e < 0) return ratfunc_pow(RatFunc(f.den(), f.num()), -e);
    RatFunc r(f.vars(), Rat(1));
    RatFunc b = f;
    auto n = static_cast<unsigned long>(e);
    for (; n; n >>= 1) {
        if (n & 1) r *= b;
        if (n > 1) b *= b;
    }
    return r;
}

// Ring-homomorphic substitution variable -> rational function. Entries in
// `image` that are nullopt map the variable to itself, looked up by name in
// the target universe.
inline RatFunc substitute(const Poly& p, const VarsPtr& target,
                          const std::vector<std::optional<RatFunc>>& image) {
    std::size_t nsrc = p.vars() ? p.vars()->size() : 0;
    std::vector<RatFunc> base(nsrc);
    std::vector<bool> ready(nsrc, false);
    auto var_image = [&](std::size_t i) -> const RatFunc& {
        if (!ready[i]) {
            if (i < image.size() && image[i]) {
                base[i] = *image[i];
            } else {
                base[i] = RatFunc(Poly::var(target, target->index_of(p.vars()->name(i))));
            }
            ready[i] = true;
        }
        return base[i];
    };
    RatFunc acc(target, Rat(0));
    for (auto& [m, c] : p.terms()) {
        RatFunc t(target, c);
        for (std::size_t i = 0; i < m.width(); ++i)
            if (m[i]) t *= ratfunc_pow(var_image(i), m[i]);
        acc += t;
    }
    return acc;
}

inline std::string to_string(const RatFunc& f) {
    if (f.is_polynomial()) return to_string(f.as_poly());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace logjet

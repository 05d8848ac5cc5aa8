#pragma once

// Exact rational scalar on top of GMP. Every Rat is kept canonical
// (lowest terms, positive denominator), which mpq_class alone does not
// guarantee after mixed construction.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace logjet {

using BigInt = mpz_class;

class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    explicit Rat(const BigInt& n) : v_(n) {}
    Rat(const BigInt& num, const BigInt& den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        v_.canonicalize();
    }
    Rat(long num, long den) : Rat(BigInt(num), BigInt(den)) {}

    static Rat from_mpq(mpq_class q) {
        q.canonicalize();
        Rat r;
        r.v_ = std::move(q);
        return r;
    }

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return from_mpq(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat inverse() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(den(), num());
    }

    Rat pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        BigInt n, d;
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rat(n, d);
    }

    std::string str() const {
        if (den() == 1) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

  private:
    mpq_class v_;
};

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// ceil(a/b) for exact rationals, as a big integer
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt rat_ceil(const Rat& r) { return ceil_div(r.num(), r.den()); }

}  // namespace logjet

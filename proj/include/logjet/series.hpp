#pragma once

// Univariate truncated power series over Rat, used for exact jet
// composition and for the log-derivative oracle in tests.

#include "logjet/poly.hpp"

#include <vector>

namespace logjet {

class TruncSeries {
  public:
    // coefficients c[0..cap] of Σ c_i t^i, exact mod t^{cap+1}
    TruncSeries(int cap, std::vector<Rat> c) : cap_(cap), c_(std::move(c)) { c_.resize(cap_ + 1); }
    explicit TruncSeries(int cap) : cap_(cap), c_(cap + 1) {}

    static TruncSeries constant(int cap, const Rat& v) {
        TruncSeries s(cap);
        s.c_[0] = v;
        return s;
    }

    // Taylor coefficients of a univariate polynomial p(t) around 0
    static TruncSeries of_poly(int cap, const Poly& p) {
        TruncSeries s(cap);
        for (auto& [m, c] : p.terms()) {
            unsigned long d = m.degree();
            if (d <= static_cast<unsigned long>(cap)) s.c_[d] += c;
        }
        return s;
    }

    int cap() const { return cap_; }
    const Rat& operator[](int i) const { return c_.at(i); }
    Rat& operator[](int i) { return c_.at(i); }

    // j-th derivative at 0
    Rat derivative_at0(int j) const {
        if (j > cap_) throw std::out_of_range("TruncSeries: derivative beyond cap");
        return c_[j] * Rat(factorial(static_cast<unsigned long>(j)));
    }

    static TruncSeries from_derivatives(int cap, const std::vector<Rat>& d) {
        TruncSeries s(cap);
        for (int j = 0; j <= cap && j < static_cast<int>(d.size()); ++j)
            s.c_[j] = d[j] / Rat(factorial(static_cast<unsigned long>(j)));
        return s;
    }

    std::vector<Rat> derivatives() const {
        std::vector<Rat> d(cap_ + 1);
        for (int j = 0; j <= cap_; ++j) d[j] = derivative_at0(j);
        return d;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.cap_, b.cap_));
        for (int i = 0; i <= r.cap_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.cap_, b.cap_));
        for (int i = 0; i <= r.cap_; ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.cap_, b.cap_));
        for (int i = 0; i <= r.cap_; ++i)
            for (int j = 0; i + j <= r.cap_; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }

    TruncSeries derive() const {
        TruncSeries r(cap_);
        for (int i = 1; i <= cap_; ++i) r.c_[i - 1] = c_[i] * Rat(i);
        return r;
    }

    // multiplicative inverse; requires a unit constant term
    TruncSeries inverse() const {
        if (c_[0].is_zero()) throw std::domain_error("TruncSeries: inverse of non-unit");
        TruncSeries r(cap_);
        r.c_[0] = c_[0].inverse();
        for (int i = 1; i <= cap_; ++i) {
            Rat acc(0);
            for (int j = 1; j <= i; ++j) acc += c_[j] * r.c_[i - j];
            r.c_[i] = -acc * r.c_[0];
        }
        return r;
    }

    // this ∘ g, requires g(0) = 0
    TruncSeries compose(const TruncSeries& g) const {
        if (!g.c_[0].is_zero()) throw std::domain_error("TruncSeries: compose needs g(0) = 0");
        int cap = std::min(cap_, g.cap_);
        TruncSeries acc = TruncSeries::constant(cap, c_[0]);
        TruncSeries gp = TruncSeries::constant(cap, Rat(1));
        for (int i = 1; i <= cap; ++i) {
            gp = gp * g;
            TruncSeries t = gp;
            for (int j = 0; j <= cap; ++j) t.c_[j] = t.c_[j] * c_[i];
            acc = acc + t;
        }
        return acc;
    }

  private:
    int cap_;
    std::vector<Rat> c_;
};

}  // namespace logjet

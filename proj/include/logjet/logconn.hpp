#pragma once

// Higher-order logarithmic connections nabla^k s = sigma d^k(s/sigma),
// absolute and logarithmic Wronskians, the Leibniz identity, and the
// conversion between the D^j z / z and D^j log z jet bases.
//
// A LogJetPoly is stored as body / sigma^pole with polynomial-coefficient
// body, so the recursion for nabla stays in exact polynomial arithmetic.

#include "logjet/jet.hpp"
#include "logjet/linalg.hpp"

#include <map>

namespace logjet {

struct NonTransverseError : std::runtime_error {
    NonTransverseError() : std::runtime_error("restriction is not transverse to the divisor") {}
};

struct InternalMismatchError : std::runtime_error {
    explicit InternalMismatchError(const std::string& what)
        : std::runtime_error("internal mismatch: " + what) {}
};

class LogPair {
  public:
    LogPair(VarsPtr vars, Poly sigma) : vars_(std::move(vars)), sigma_(std::move(sigma)) {
        if (sigma_.is_zero()) throw std::logic_error("LogPair: sigma is identically zero");
        sigma_ = sigma_.extend_to(vars_);
    }

    const VarsPtr& vars() const { return vars_; }
    const Poly& sigma() const { return sigma_; }
    // unit sigma means an empty divisor; allowed, the connection is then d
    bool divisor_empty() const { return sigma_.is_constant(); }

  private:
    VarsPtr vars_;
    Poly sigma_;
};

class LogJetPoly {
  public:
    LogJetPoly(LogPair pair, JetPoly body, long pole)
        : pair_(std::move(pair)), body_(std::move(body)), pole_(pole) {
        if (pole_ < 0) throw std::logic_error("LogJetPoly: negative pole order");
        if (!body_.coefficients_polynomial())
            throw std::logic_error("LogJetPoly: body must have polynomial coefficients");
        normalize();
    }

    const LogPair& pair() const { return pair_; }
    const JetPoly& body() const { return body_; }
    long pole() const { return pole_; }
    bool is_zero() const { return body_.is_zero(); }

    // the value as a jet polynomial with rational-function coefficients
    JetPoly as_jetpoly() const {
        if (pole_ == 0) return body_;
        RatFunc inv(Poly(pair_.vars(), Rat(1)), pair_.sigma().pow(pole_));
        return body_.scaled(inv);
    }

    // body rescaled so the value reads body_at_pole(m) / sigma^m, m >= pole
    JetPoly body_at_pole(long m) const { return raised(m); }

    friend LogJetPoly operator+(const LogJetPoly& a, const LogJetPoly& b) {
        check(a, b);
        long m = std::max(a.pole_, b.pole_);
        return LogJetPoly(a.pair_, a.raised(m) + b.raised(m), m);
    }
    friend LogJetPoly operator-(const LogJetPoly& a, const LogJetPoly& b) {
        check(a, b);
        long m = std::max(a.pole_, b.pole_);
        return LogJetPoly(a.pair_, a.raised(m) - b.raised(m), m);
    }
    friend LogJetPoly operator*(const LogJetPoly& a, const LogJetPoly& b) {
        check(a, b);
        return LogJetPoly(a.pair_, a.body_ * b.body_, a.pole_ + b.pole_);
    }
    LogJetPoly operator-() const { return LogJetPoly(pair_, -body_, pole_); }

    friend bool operator==(const LogJetPoly& a, const LogJetPoly& b) {
        check(a, b);
        long m = std::max(a.pole_, b.pole_);
        return a.raised(m) == b.raised(m);
    }
    friend bool operator!=(const LogJetPoly& a, const LogJetPoly& b) { return !(a == b); }

    Rat pullback(const CurveJet& f) const {
        Rat s0 = eval(pair_.sigma(), f.point());
        if (pole_ > 0 && s0.is_zero()) throw PoleAtBasepointError{};
        Rat num = pullback_curve(body_, f);
        return pole_ == 0 ? num : num / s0.pow(pole_);
    }

    RatFunc evaluate_at(const JetValuation& val) const {
        RatFunc num = evaluate(body_, val);
        if (pole_ == 0) return num;
        RatFunc s = substitute(pair_.sigma(), val.params, [&] {
            std::vector<std::optional<RatFunc>> image(pair_.vars()->size());
            for (std::size_t i = 0; i < image.size(); ++i) image[i] = val.base_vals.at(i);
            return image;
        }());
        return num / ratfunc_pow(s, pole_);
    }

  private:
    static void check(const LogJetPoly& a, const LogJetPoly& b) {
        if (a.pair_.sigma() != b.pair_.sigma())
            throw std::logic_error("LogJetPoly: mixed log pairs");
    }

    JetPoly raised(long m) const {
        if (m == pole_) return body_;
        return body_.scaled(pair_.sigma().pow(static_cast<unsigned long>(m - pole_)));
    }

    // cancel sigma factors common to every coefficient, so the stored pole
    // order is minimal (this is what makes sigma * W_D land at pole zero)
    void normalize() {
        if (body_.is_zero()) {
            pole_ = 0;
            return;
        }
        while (pole_ > 0) {
            JetPoly reduced(body_.base());
            bool ok = true;
            for (auto& [m, c] : body_.terms()) {
                auto q = try_exact_divide(c.as_poly(), pair_.sigma());
                if (!q) {
                    ok = false;
                    break;
                }
                reduced.add_term(m, RatFunc(std::move(*q)));
            }
            if (!ok) break;
            body_ = std::move(reduced);
            --pole_;
        }
    }

    LogPair pair_;
    JetPoly body_;
    long pole_;
};

namespace detail {

// one recursion step in the body/sigma^m representation:
// nabla(P / s^m) = (s dP - (m+1) P ds) / s^{m+1}
inline JetPoly nabla_step(const JetPoly& p, long m, const Poly& sigma) {
    JetPoly dsigma = total_derive(JetPoly::of_base(sigma));
    return total_derive(p).scaled(sigma) - (p * dsigma).scaled(Rat(m + 1));
}

}  // namespace detail

// nabla^k s computed by the local recursion; exact, poles stay powers of sigma.
inline LogJetPoly nabla_recursive(int k, const Poly& s, const LogPair& pair) {
    JetPoly body = JetPoly::of_base(s.extend_to(pair.vars()));
    for (int j = 0; j < k; ++j) body = detail::nabla_step(body, j, pair.sigma());
    return LogJetPoly(pair, body, k);
}

// nabla^k s computed from the closed form sigma d^k(s/sigma) with generic
// rational-function coefficient arithmetic (independent of the recursion).
inline JetPoly nabla_closed_form(int k, const Poly& s, const LogPair& pair) {
    RatFunc ratio(s.extend_to(pair.vars()), pair.sigma());
    JetPoly jp = total_derive(JetPoly::of_coeff(ratio), k);
    return jp.scaled(pair.sigma());
}

// The k-th order logarithmic connection. Both computation routes are run
// and compared exactly; a disagreement is an implementation bug.
inline LogJetPoly nabla(int k, const Poly& s, const LogPair& pair) {
    if (k < 0) throw std::logic_error("nabla: negative order");
    LogJetPoly rec = nabla_recursive(k, s, pair);
    if (rec.as_jetpoly() != nabla_closed_form(k, s, pair))
        throw InternalMismatchError("nabla recursion and closed form disagree");
    return rec;
}

// d^k s - sum_i C(k,i) nabla^i s d^{k-i}sigma / sigma, returned as the
// numerator over sigma^{k+1}; identically zero iff the Leibniz identity holds.
inline JetPoly leibniz_defect(int k, const Poly& s, const LogPair& pair) {
    if (k < 1) throw std::logic_error("leibniz_defect: k >= 1 required");
    const Poly& sigma = pair.sigma();
    JetPoly acc = total_derive(JetPoly::of_base(s.extend_to(pair.vars())), k)
                      .scaled(sigma.pow(static_cast<unsigned long>(k) + 1));
    for (int i = 0; i <= k; ++i) {
        // nabla^i s d^{k-i}sigma / sigma has pole i+1; raise it to k+1
        JetPoly pi = nabla_recursive(i, s, pair).body_at_pole(i);
        JetPoly dsig = total_derive(JetPoly::of_base(sigma), k - i);
        Rat binom_ki(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(i)));
        acc -= (pi * dsig).scaled(binom_ki).scaled(sigma.pow(static_cast<unsigned long>(k - i)));
    }
    return acc;
}

// (k+1) x (k+1) determinant of d^j s_i, j = 0..k; isobaric of weight k(k+1)/2.
inline JetPoly wronskian_abs(const std::vector<Poly>& sections) {
    if (sections.empty()) throw std::logic_error("wronskian_abs: no sections");
    std::size_t n = sections.size();
    Matrix<JetPoly> m(n, std::vector<JetPoly>(n));
    for (std::size_t i = 0; i < n; ++i) {
        JetPoly cur = JetPoly::of_base(sections[i]);
        for (std::size_t j = 0; j < n; ++j) {
            m[j][i] = cur;
            if (j + 1 < n) cur = total_derive(cur);
        }
    }
    return ring_det(m, JetPoly(sections[0].vars()));
}

// k x k determinant of nabla^j s_i, j = 1..k.
inline LogJetPoly wronskian_log(const std::vector<Poly>& sections, const LogPair& pair) {
    if (sections.empty()) throw std::logic_error("wronskian_log: no sections");
    std::size_t k = sections.size();
    Matrix<LogJetPoly> m;
    m.reserve(k);
    for (std::size_t j = 1; j <= k; ++j) {
        std::vector<LogJetPoly> row;
        row.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            row.push_back(nabla_recursive(static_cast<int>(j), sections[i], pair));
        m.push_back(std::move(row));
    }
    LogJetPoly zero(pair, JetPoly(pair.vars()), 0);
    return ring_det(m, zero);
}

enum class BasisDirection { abs_from_log, log_from_abs };

// Integer coefficients b_{j,beta} of the two jet-basis conversions: the
// expansion of D^j z / z in the D^i log z (abs_from_log) and its inverse.
// Keys are exponent vectors beta with beta_1 + 2 beta_2 + ... + j beta_j = j.
inline std::map<MultiIndex, long long, GrlexLess> log_basis_coeffs(int j, BasisDirection dir) {
    if (j < 1) throw std::logic_error("log_basis_coeffs: j >= 1 required");
    using Expansion = std::map<MultiIndex, long long, GrlexLess>;
    auto add = [](Expansion& e, const MultiIndex& m, long long c) {
        if (c == 0) return;
        auto [it, fresh] = e.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) e.erase(it);
        }
    };
    Expansion cur;
    cur[MultiIndex::unit(0)] = 1;  // j = 1: single variable u_1
    for (int step = 1; step < j; ++step) {
        Expansion next;
        if (dir == BasisDirection::abs_from_log) {
            // T_{j+1} = u_1 T_j + D(T_j) with the shift derivation u_i -> u_{i+1}
            for (auto& [m, c] : cur) add(next, m.plus(MultiIndex::unit(0)), c);
            for (auto& [m, c] : cur) {
                for (std::size_t i = 0; i < m.width(); ++i) {
                    if (!m[i]) continue;
                    add(next, m.with(i, -1).with(i + 1, +1),
                        c * static_cast<long long>(m[i]));
                }
            }
        } else {
            // S_{j+1} = D'(S_j) with the derivation v_i -> v_{i+1} - v_i v_1
            for (auto& [m, c] : cur) {
                for (std::size_t i = 0; i < m.width(); ++i) {
                    if (!m[i]) continue;
                    long long ci = c * static_cast<long long>(m[i]);
                    add(next, m.with(i, -1).with(i + 1, +1), ci);
                    add(next, m.plus(MultiIndex::unit(0)), -ci);
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Strict pole check in divisor-adapted coordinates sigma = z_v: each
// monomial may carry at most one pole factor per jet variable of z_v,
// counted with multiplicity. The constructor-level invariant only bounds
// poles by the jet order; this is the sharp per-monomial refinement.
inline bool sharp_pole_bound_holds(const LogJetPoly& p, std::size_t divisor_var) {
    const Poly& sigma = p.pair().sigma();
    if (sigma != Poly::var(p.pair().vars(), divisor_var))
        throw std::logic_error("sharp pole bound needs adapted coordinates sigma = z_v");
    std::size_t nb = p.body().nbase();
    for (auto& [m, c] : p.body().terms()) {
        long allowed = 0;  // multiplicity of jet variables of the divisor coordinate
        for (std::size_t id = 0; id < m.width(); ++id)
            if (m[id] && jet_var_of_id(nb, id).coord == divisor_var) allowed += m[id];
        long excess = p.pole() - allowed;
        if (excess <= 0) continue;
        Poly reduced = c.as_poly();
        for (long e = 0; e < excess; ++e) {
            auto q = try_exact_divide(reduced, sigma);
            if (!q) return false;
            reduced = std::move(*q);
        }
    }
    return true;
}

// Restriction to a coordinate hyperplane: the base variable and all its jet
// variables are set to zero. Requires sigma restricted to stay nonzero.
inline LogJetPoly restrict_hyperplane(const LogJetPoly& p, std::size_t var) {
    Poly sigma_r = eval_partial(p.pair().sigma(), var, Rat(0));
    if (sigma_r.is_zero()) throw NonTransverseError{};
    LogPair pair_r(p.pair().vars(), sigma_r);
    std::size_t nb = p.body().nbase();
    JetPoly body_r(p.body().base());
    for (auto& [m, c] : p.body().terms()) {
        bool kills = false;
        for (std::size_t id = 0; id < m.width(); ++id)
            if (m[id] && jet_var_of_id(nb, id).coord == var) kills = true;
        if (kills) continue;
        Poly cr = eval_partial(c.as_poly(), var, Rat(0));
        if (!cr.is_zero()) body_r.add_term(m, RatFunc(std::move(cr)));
    }
    return LogJetPoly(pair_r, body_r, p.pole());
}

inline std::string to_string(const LogJetPoly& p) {
    if (p.is_zero()) return "0";
    if (p.pole() == 0) return to_string(p.body());
    std::string sig = to_string(p.pair().sigma());
    std::string den =
        p.pair().sigma().terms().size() > 1 ? "(" + sig + ")" : sig;
    if (p.pole() > 1) den += "^" + std::to_string(p.pole());
    return "(" + to_string(p.body()) + ")/" + den;
}

}  // namespace logjet

#pragma once

// Jet-differential algebra: polynomials in the jet variables D^j z_i with
// rational-function coefficients in the base variables, the derivation d,
// pullback along curve jets, and the rescaling / reparametrization actions.
//
// Jet coordinates follow the raw-derivative convention: D^j z_i evaluated
// on a curve jet is the plain j-th derivative, with no factorial.

#include "logjet/ratfunc.hpp"
#include "logjet/series.hpp"

#include <functional>
#include <optional>

namespace logjet {

struct PoleAtBasepointError : std::runtime_error {
    PoleAtBasepointError()
        : std::runtime_error("coefficient denominator vanishes at the jet basepoint") {}
};

// A jet variable D^j z_c is identified inside a jet monomial by the id
// (j-1)*nbase + c. Order j >= 1 throughout.
struct JetVar {
    std::size_t coord;
    int order;
};

inline std::size_t jet_var_id(std::size_t nbase, const JetVar& v) {
    return static_cast<std::size_t>(v.order - 1) * nbase + v.coord;
}

inline JetVar jet_var_of_id(std::size_t nbase, std::size_t id) {
    return JetVar{id % nbase, static_cast<int>(id / nbase) + 1};
}

class JetPoly {
  public:
    using TermMap = std::map<MultiIndex, RatFunc, GrlexLess>;

    JetPoly() = default;
    explicit JetPoly(VarsPtr base) : base_(std::move(base)) {}

    static JetPoly of_base(const Poly& p) {
        JetPoly r(p.vars());
        if (!p.is_zero()) r.terms_[MultiIndex{}] = RatFunc(p);
        return r;
    }
    static JetPoly of_coeff(const RatFunc& c) {
        JetPoly r(c.vars());
        if (!c.is_zero()) r.terms_[MultiIndex{}] = c;
        return r;
    }
    static JetPoly jet_var(const VarsPtr& base, std::size_t coord, int order) {
        JetPoly r(base);
        r.terms_[MultiIndex::unit(jet_var_id(base->size(), {coord, order}))] =
            RatFunc(base, Rat(1));
        return r;
    }

    const VarsPtr& base() const { return base_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::size_t nbase() const { return base_ ? base_->size() : 0; }

    void add_term(const MultiIndex& m, const RatFunc& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int order() const {
        int k = 0;
        for (auto& [m, c] : terms_)
            for (std::size_t id = 0; id < m.width(); ++id)
                if (m[id]) k = std::max(k, jet_var_of_id(nbase(), id).order);
        return k;
    }

    long monomial_weight(const MultiIndex& m) const {
        long w = 0;
        for (std::size_t id = 0; id < m.width(); ++id)
            if (m[id]) w += static_cast<long>(m[id]) * jet_var_of_id(nbase(), id).order;
        return w;
    }

    // isobaric weight, or nullopt when monomials of different weight mix
    std::optional<long> weight() const {
        std::optional<long> w;
        for (auto& [m, c] : terms_) {
            long mw = monomial_weight(m);
            if (!w) {
                w = mw;
            } else if (*w != mw) {
                return std::nullopt;
            }
        }
        if (!w) return 0;  // zero polynomial: isobaric of any weight; report 0
        return w;
    }

    JetPoly operator-() const {
        JetPoly r(base_);
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend JetPoly operator+(const JetPoly& a, const JetPoly& b) {
        JetPoly r = a;
        if (!r.base_) r.base_ = b.base_;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend JetPoly operator-(const JetPoly& a, const JetPoly& b) {
        JetPoly r = a;
        if (!r.base_) r.base_ = b.base_;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
        JetPoly r(a.base_ ? a.base_ : b.base_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma.plus(mb), ca * cb);
        return r;
    }
    JetPoly& operator+=(const JetPoly& o) { return *this = *this + o; }
    JetPoly& operator-=(const JetPoly& o) { return *this = *this - o; }
    JetPoly& operator*=(const JetPoly& o) { return *this = *this * o; }

    JetPoly scaled(const RatFunc& c) const {
        JetPoly r(base_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.add_term(m, k * c);
        return r;
    }
    JetPoly scaled(const Rat& c) const { return scaled(RatFunc(base_, c)); }
    JetPoly scaled(const Poly& p) const { return scaled(RatFunc(p)); }

    bool coefficients_polynomial() const {
        for (auto& [m, c] : terms_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    // exact equality of coefficients, decided per monomial by cross-multiplication
    friend bool operator==(const JetPoly& a, const JetPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        for (auto& [m, c] : b.terms_) {
            if (!(ia->first == m) || !ratfunc_eq(ia->second, c)) return false;
            ++ia;
        }
        return true;
    }
    friend bool operator!=(const JetPoly& a, const JetPoly& b) { return !(a == b); }

  private:
    VarsPtr base_;
    TermMap terms_;
};

// The derivation d: on coefficients it acts via D^1 of the base variables,
// on jet variables it shifts D^j z_i to D^{j+1} z_i. Raises weight by one
// on isobaric input and satisfies the Leibniz rule exactly.
inline JetPoly total_derive(const JetPoly& p) {
    JetPoly r(p.base());
    std::size_t nb = p.nbase();
    for (auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < nb; ++i) {
            RatFunc dc = c.derivative(i);
            if (!dc.is_zero())
                r.add_term(m.plus(MultiIndex::unit(jet_var_id(nb, {i, 1}))), dc);
        }
        for (std::size_t id = 0; id < m.width(); ++id) {
            if (!m[id]) continue;
            JetVar v = jet_var_of_id(nb, id);
            MultiIndex shifted =
                m.with(id, -1).with(jet_var_id(nb, {v.coord, v.order + 1}), +1);
            r.add_term(shifted, c.scaled(Rat(static_cast<long>(m[id]))));
        }
    }
    return r;
}

inline JetPoly total_derive(const JetPoly& p, int times) {
    JetPoly r = p;
    for (int i = 0; i < times; ++i) r = total_derive(r);
    return r;
}

// The k-jet of a curve germ: raw derivative vectors f_i^(j)(0), j = 0..k.
class CurveJet {
  public:
    CurveJet(VarsPtr base, int order, std::vector<std::vector<Rat>> derivs)
        : base_(std::move(base)), order_(order), d_(std::move(derivs)) {
        if (d_.size() != base_->size()) throw std::logic_error("CurveJet: coordinate count");
        for (auto& v : d_)
            if (static_cast<int>(v.size()) != order_ + 1)
                throw std::logic_error("CurveJet: derivative vector length");
    }

    const VarsPtr& base() const { return base_; }
    int order() const { return order_; }
    const Rat& deriv(std::size_t coord, int j) const { return d_.at(coord).at(j); }
    std::vector<Rat> point() const {
        std::vector<Rat> p(d_.size());
        for (std::size_t i = 0; i < d_.size(); ++i) p[i] = d_[i][0];
        return p;
    }

    bool is_regular() const {
        for (auto& v : d_)
            if (order_ >= 1 && !v[1].is_zero()) return true;
        return false;
    }

  private:
    VarsPtr base_;
    int order_;
    std::vector<std::vector<Rat>> d_;
};

// jets of polynomial test curves t -> (f_1(t), ..., f_n(t))
inline CurveJet jet_of_poly_curve(const VarsPtr& base, const std::vector<Poly>& f, int k) {
    if (f.size() != base->size()) throw std::logic_error("jet_of_poly_curve: coordinate count");
    std::vector<std::vector<Rat>> d;
    d.reserve(f.size());
    for (auto& fi : f) d.push_back(TruncSeries::of_poly(k, fi).derivatives());
    return CurveJet(base, k, std::move(d));
}

inline Rat pullback_curve(const JetPoly& p, const CurveJet& f) {
    if (p.order() > f.order())
        throw std::logic_error("pullback_curve: jet order of the curve is too small");
    if (!same_vars(p.base(), f.base()))
        throw std::logic_error("pullback_curve: base variable mismatch");
    std::vector<Rat> x = f.point();
    std::size_t nb = p.nbase();
    Rat acc(0);
    for (auto& [m, c] : p.terms()) {
        Rat v;
        try {
            v = c.eval(x);
        } catch (const std::domain_error&) {
            throw PoleAtBasepointError{};
        }
        for (std::size_t id = 0; id < m.width(); ++id) {
            if (!m[id]) continue;
            JetVar jv = jet_var_of_id(nb, id);
            v *= f.deriv(jv.coord, jv.order).pow(m[id]);
        }
        acc += v;
    }
    return acc;
}

// Substitution of base and jet variables by rational functions over a
// parameter universe; the symbolic counterpart of pullback_curve.
struct JetValuation {
    VarsPtr params;
    std::vector<RatFunc> base_vals;                // indexed by base coord
    std::vector<std::vector<RatFunc>> jet_vals;    // [coord][order-1]

    const RatFunc& jet(std::size_t coord, int order) const {
        const auto& v = jet_vals.at(coord);
        if (order < 1 || order > static_cast<int>(v.size()))
            throw std::logic_error("JetValuation: jet order not provided");
        return v[static_cast<std::size_t>(order - 1)];
    }
};

inline RatFunc evaluate(const JetPoly& p, const JetValuation& val) {
    std::size_t nb = p.nbase();
    std::vector<std::optional<RatFunc>> image(nb);
    for (std::size_t i = 0; i < nb; ++i) image[i] = val.base_vals.at(i);
    RatFunc acc(val.params, Rat(0));
    for (auto& [m, c] : p.terms()) {
        RatFunc t = substitute(c.num(), val.params, image) /
                    substitute(c.den(), val.params, image);
        for (std::size_t id = 0; id < m.width(); ++id) {
            if (!m[id]) continue;
            JetVar jv = jet_var_of_id(nb, id);
            t *= ratfunc_pow(val.jet(jv.coord, jv.order), m[id]);
        }
        acc += t;
    }
    return acc;
}

// C*-action: the j-th derivative scales by lambda^j.
inline CurveJet rescale(const CurveJet& f, const Rat& lambda) {
    std::vector<std::vector<Rat>> d;
    d.reserve(f.base()->size());
    for (std::size_t i = 0; i < f.base()->size(); ++i) {
        std::vector<Rat> v(f.order() + 1);
        for (int j = 0; j <= f.order(); ++j) v[j] = f.deriv(i, j) * lambda.pow(j);
        d.push_back(std::move(v));
    }
    return CurveJet(f.base(), f.order(), std::move(d));
}

// phi(t) = a_1 t + ... + a_k t^k with a_1 != 0, an element of the
// reparametrization group of k-jets.
struct Reparam {
    std::vector<Rat> a;  // a[j] is the coefficient of t^{j+1}

    explicit Reparam(std::vector<Rat> coeffs) : a(std::move(coeffs)) {
        if (a.empty() || a[0].is_zero())
            throw std::logic_error("Reparam: leading coefficient must be nonzero");
    }

    const Rat& prime0() const { return a[0]; }

    TruncSeries series(int cap) const {
        TruncSeries s(cap);
        for (std::size_t j = 0; j < a.size(); ++j)
            if (static_cast<int>(j) + 1 <= cap) s[static_cast<int>(j) + 1] = a[j];
        return s;
    }

    // truncated composition this . other, again a reparametrization
    Reparam compose(const Reparam& other, int k) const {
        TruncSeries c = series(k).compose(other.series(k));
        std::vector<Rat> coeffs(k);
        for (int j = 1; j <= k; ++j) coeffs[j - 1] = c[j];
        return Reparam(std::move(coeffs));
    }
};

// jet of f . phi via exact truncated series composition
inline CurveJet reparametrize(const CurveJet& f, const Reparam& phi) {
    int k = f.order();
    TruncSeries ps = phi.series(k);
    std::vector<std::vector<Rat>> d;
    d.reserve(f.base()->size());
    for (std::size_t i = 0; i < f.base()->size(); ++i) {
        std::vector<Rat> raw(k + 1);
        for (int j = 0; j <= k; ++j) raw[j] = f.deriv(i, j);
        TruncSeries composed = TruncSeries::from_derivatives(k, raw).compose(ps);
        d.push_back(composed.derivatives());
    }
    return CurveJet(f.base(), k, std::move(d));
}

// Per sample, P(j_k(f . phi)) - phi'(0)^m P(j_k f); all zeros certify
// invariance of weight m on the sample set.
inline std::vector<Rat> invariance_defect(const JetPoly& p, long m,
                                          const std::vector<std::pair<CurveJet, Reparam>>& samples) {
    if (auto w = p.weight(); !w || *w != m)
        throw std::logic_error("invariance_defect: input is not isobaric of the stated weight");
    std::vector<Rat> out;
    out.reserve(samples.size());
    for (auto& [f, phi] : samples) {
        Rat lhs = pullback_curve(p, reparametrize(f, phi));
        Rat rhs = phi.prime0().pow(m) * pullback_curve(p, f);
        out.push_back(lhs - rhs);
    }
    return out;
}

inline std::string jet_var_name(const VarPool& base, std::size_t nbase, std::size_t id) {
    JetVar v = jet_var_of_id(nbase, id);
    return "D" + std::to_string(v.order) + base.name(v.coord);
}

inline std::string to_string(const JetPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    std::size_t nb = p.nbase();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        // render the jet monomial
        std::string mono;
        for (std::size_t id = 0; id < m.width(); ++id) {
            if (!m[id]) continue;
            if (!mono.empty()) mono += "*";
            mono += jet_var_name(*p.base(), nb, id);
            if (m[id] > 1) mono += "^" + std::to_string(m[id]);
        }
        bool coeff_is_one = c.is_polynomial() && c.as_poly().is_constant() &&
                            c.as_poly().constant_value().is_one();
        bool coeff_is_minus_one = c.is_polynomial() && c.as_poly().is_constant() &&
                                  c.as_poly().constant_value() == Rat(-1);
        std::string piece;
        bool neg = false;
        if (!mono.empty() && coeff_is_one) {
            piece = mono;
        } else if (!mono.empty() && coeff_is_minus_one) {
            piece = mono;
            neg = true;
        } else {
            std::string cs;
            if (c.is_polynomial()) {
                Poly cp = c.as_poly();
                bool needs_parens = cp.terms().size() > 1 && !mono.empty();
                cs = needs_parens ? "(" + to_string(cp) + ")" : to_string(cp);
            } else {
                cs = to_string(c);
            }
            if (!cs.empty() && cs[0] == '-') {
                neg = true;
                cs = cs.substr(1);
            }
            piece = mono.empty() ? cs : cs + "*" + mono;
        }
        if (first) {
            os << (neg ? "-" : "") << piece;
        } else {
            os << (neg ? " - " : " + ") << piece;
        }
        first = false;
    }
    return os.str();
}

}  // namespace logjet

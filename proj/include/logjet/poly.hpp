#pragma once

// Sparse multivariate polynomials over Rat with a declared variable list.
// Terms are stored in ascending grlex order; the leading term is the last
// entry, and printing walks the map backwards so output is deterministic.

#include "logjet/multiindex.hpp"
#include "logjet/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace logjet {

struct NotDivisibleError : std::runtime_error {
    NotDivisibleError() : std::runtime_error("exact division failed: not divisible") {}
};

class VarPool {
  public:
    explicit VarPool(std::vector<std::string> names) : names_(std::move(names)) {}

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> find(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

    std::size_t index_of(const std::string& n) const {
        auto i = find(n);
        if (!i) throw std::out_of_range("unknown variable: " + n);
        return *i;
    }

    friend bool operator==(const VarPool& a, const VarPool& b) { return a.names_ == b.names_; }

  private:
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const VarPool>;

inline VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarPool>(std::move(names));
}

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) {
    return a == b || (a && b && *a == *b);
}

class Poly {
  public:
    using TermMap = std::map<MultiIndex, Rat, GrlexLess>;

    Poly() = default;
    explicit Poly(VarsPtr vars) : vars_(std::move(vars)) {}
    Poly(VarsPtr vars, const Rat& c) : vars_(std::move(vars)) {
        if (!c.is_zero()) terms_[MultiIndex{}] = c;
    }

    static Poly var(const VarsPtr& vars, std::size_t v, unsigned exp = 1) {
        if (v >= vars->size()) throw std::out_of_range("variable id out of range");
        Poly p(vars);
        if (exp == 0) {
            p.terms_[MultiIndex{}] = Rat(1);
        } else {
            p.terms_[MultiIndex::unit(v, exp)] = Rat(1);
        }
        return p;
    }

    static Poly monomial(const VarsPtr& vars, const MultiIndex& m, const Rat& c) {
        Poly p(vars);
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::logic_error("Poly: not a constant");
        return terms_.begin()->second;
    }

    Rat coeff(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    unsigned long total_degree() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
    }

    // leading term w.r.t. grlex
    std::pair<MultiIndex, Rat> leading() const {
        if (terms_.empty()) throw std::logic_error("Poly: leading term of zero");
        return *terms_.rbegin();
    }

    void add_term(const MultiIndex& m, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(vars_);
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check_same(a, b);
        Poly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        check_same(a, b);
        Poly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check_same(a, b);
        Poly r(a.vars_ ? a.vars_ : b.vars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma.plus(mb), ca * cb);
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rat& c) const {
        Poly r(vars_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    Poly pow(unsigned long e) const {
        Poly r(vars_, Rat(1));
        Poly b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // move this polynomial into a pool that contains all its variables by name
    Poly extend_to(const VarsPtr& target) const {
        if (same_vars(vars_, target)) {
            Poly r = *this;
            r.vars_ = target;
            return r;
        }
        std::vector<std::size_t> remap(vars_ ? vars_->size() : 0);
        for (std::size_t i = 0; i < remap.size(); ++i)
            remap[i] = target->index_of(vars_->name(i));
        Poly r(target);
        for (auto& [m, c] : terms_) {
            std::vector<unsigned> e(target->size(), 0);
            for (std::size_t i = 0; i < m.width(); ++i)
                if (m[i]) e[remap[i]] = m[i];
            r.add_term(MultiIndex(std::move(e)), c);
        }
        return r;
    }

  private:
    static void check_same(const Poly& a, const Poly& b) {
        if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_))
            throw std::logic_error("Poly: mixed variable universes");
    }

    VarsPtr vars_;
    TermMap terms_;
};

inline Poly partial_derivative(const Poly& p, std::size_t v) {
    Poly r(p.vars());
    for (auto& [m, c] : p.terms()) {
        unsigned e = m[v];
        if (e == 0) continue;
        r.add_term(m.with(v, -1), c * Rat(static_cast<long>(e)));
    }
    return r;
}

inline std::optional<Poly> try_exact_divide(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
    Poly rem = p;
    Poly quot(p.vars() ? p.vars() : q.vars());
    auto [qm, qc] = q.leading();
    while (!rem.is_zero()) {
        auto [rm, rc] = rem.leading();
        if (!qm.divides(rm)) return std::nullopt;
        Poly t = Poly::monomial(rem.vars(), rm.minus(qm), rc / qc);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

inline Poly exact_divide(const Poly& p, const Poly& q) {
    auto r = try_exact_divide(p, q);
    if (!r) throw NotDivisibleError{};
    return *r;
}

inline Rat eval(const Poly& p, const std::vector<Rat>& point) {
    Rat acc(0);
    for (auto& [m, c] : p.terms()) {
        Rat t = c;
        for (std::size_t i = 0; i < m.width(); ++i)
            if (m[i]) t *= point.at(i).pow(m[i]);
        acc += t;
    }
    return acc;
}

// sets one variable to a rational constant, keeping the universe
inline Poly eval_partial(const Poly& p, std::size_t v, const Rat& value) {
    Poly r(p.vars());
    for (auto& [m, c] : p.terms()) {
        unsigned e = m[v];
        if (e == 0) {
            r.add_term(m, c);
        } else {
            Rat c2 = c * value.pow(e);
            if (!c2.is_zero()) r.add_term(m.with(v, -static_cast<int>(e)), c2);
        }
    }
    return r;
}

inline std::string monomial_str(const VarPool& vars, const MultiIndex& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.width(); ++i) {
        if (!m[i]) continue;
        if (!first) os << "*";
        first = false;
        os << vars.name(i);
        if (m[i] > 1) os << "^" << m[i];
    }
    return os.str();
}

// Deterministic printer for the expression grammar: terms in descending
// grlex order, "c*mono" pieces joined with " + " / " - ".
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        std::string mono = m.empty() ? "" : monomial_str(*p.vars(), m);
        if (mono.empty()) {
            os << a.str();
        } else if (a.is_one()) {
            os << mono;
        } else {
            os << a.str() << "*" << mono;
        }
    }
    return os.str();
}

}  // namespace logjet

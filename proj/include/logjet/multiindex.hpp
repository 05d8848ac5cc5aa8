#pragma once

// Exponent vectors keyed by variable id. Trailing zero entries are always
// trimmed so that equal multi-indices compare equal regardless of how many
// variables were touched along the way.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace logjet {

class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) { trim(); }

    static MultiIndex unit(std::size_t var, unsigned exp = 1) {
        if (exp == 0) return {};
        std::vector<unsigned> e(var + 1, 0);
        e[var] = exp;
        return MultiIndex(std::move(e));
    }

    unsigned operator[](std::size_t i) const { return i < e_.size() ? e_[i] : 0u; }
    std::size_t width() const { return e_.size(); }
    bool empty() const { return e_.empty(); }

    unsigned long degree() const {
        return std::accumulate(e_.begin(), e_.end(), 0ul);
    }

    MultiIndex plus(const MultiIndex& o) const {
        std::vector<unsigned> e(std::max(e_.size(), o.e_.size()), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = (*this)[i] + o[i];
        return MultiIndex(std::move(e));
    }

    // componentwise subtraction; caller must know divides(o) holds
    MultiIndex minus(const MultiIndex& o) const {
        std::vector<unsigned> e(e_.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = e_[i] - o[i];
        return MultiIndex(std::move(e));
    }

    bool divides(const MultiIndex& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o[i]) return false;
        return true;
    }

    MultiIndex with(std::size_t var, int delta) const {
        std::vector<unsigned> e(std::max(e_.size(), var + 1), 0);
        for (std::size_t i = 0; i < e_.size(); ++i) e[i] = e_[i];
        e[var] = static_cast<unsigned>(static_cast<int>(e[var]) + delta);
        return MultiIndex(std::move(e));
    }

    MultiIndex scaled(unsigned c) const {
        if (c == 0) return {};
        std::vector<unsigned> e(e_);
        for (auto& x : e) x *= c;
        return MultiIndex(std::move(e));
    }

    const std::vector<unsigned>& raw() const { return e_; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }

  private:
    void trim() {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }
    std::vector<unsigned> e_;
};

// Graded lexicographic order (earlier variables dominate the lex tie-break).
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        unsigned long da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        std::size_t w = std::max(a.width(), b.width());
        for (std::size_t i = 0; i < w; ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    return GrlexLess{}(a, b);
}

}  // namespace logjet

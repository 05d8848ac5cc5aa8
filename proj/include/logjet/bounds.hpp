#pragma once

// Big-integer / exact-rational arithmetic behind every effective bound:
// the canonical parameter choice (k = n+1, delta = n^2+3n+1), the headline
// degree bounds, the degree decomposition m = eps + (r+k) delta with its
// existence threshold, the dimension-count audits, and the orbifold
// multiplicity ceiling. All comparisons are exact; nothing is floated.

#include "logjet/multiindex.hpp"
#include "logjet/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace logjet {

struct BoundParams {
    long n = 0;
    long k = 0;       // k = n+1
    BigInt delta;     // (k+1) n + k = n^2 + 3n + 1
    BigInt k_prime;   // k(k+1)/2
};

inline BoundParams params_for(long n) {
    if (n < 2) throw std::domain_error("params_for: n >= 2 required");
    BoundParams p;
    p.n = n;
    p.k = n + 1;
    p.delta = BigInt(n) * n + 3 * n + 1;
    p.k_prime = BigInt(p.k) * (p.k + 1) / 2;
    return p;
}

// (n+2)^{n+3} (n+1)^{n+3}
inline BigInt kobayashi_bound(long n) {
    if (n < 2) throw std::domain_error("kobayashi_bound: n >= 2 required");
    auto e = static_cast<unsigned long>(n + 3);
    return big_pow(BigInt(n + 2), e) * big_pow(BigInt(n + 1), e);
}

// (n^2+3n+1)^{n+3}, the alternative headline shape
inline BigInt alt_bound(long n) {
    if (n < 2) throw std::domain_error("alt_bound: n >= 2 required");
    return big_pow(BigInt(n) * n + 3 * n + 1, static_cast<unsigned long>(n + 3));
}

// k (k + delta - 1 + k delta) < (delta + 1)^2
inline bool basic_inequality(long n) {
    BoundParams p = params_for(n);
    BigInt lhs = BigInt(p.k) * (p.k + p.delta - 1 + p.k * p.delta);
    BigInt rhs = (p.delta + 1) * (p.delta + 1);
    return lhs < rhs;
}

enum class DegreeMode { kobayashi, smt };

struct Decomposition {
    BigInt eps;
    BigInt r;
};

// r must clear this floor strictly
inline BigInt r_floor(const BoundParams& p, const BigInt& eps, DegreeMode mode) {
    BigInt dk1 = big_pow(p.delta, static_cast<unsigned long>(p.k - 1));
    BigInt f = dk1 * p.k * (eps + p.k * p.delta);
    if (mode == DegreeMode::smt) f += dk1 * p.k_prime;
    return f;
}

// m = eps + (r+k) delta with k <= eps <= k+delta-1 and r above the mode's
// floor; the admissible eps is pinned by eps = m (mod delta).
inline std::optional<Decomposition> decompose_degree(const BigInt& m, long n, DegreeMode mode) {
    BoundParams p = params_for(n);
    BigInt rem = (m - p.k) % p.delta;
    if (rem < 0) rem += p.delta;
    BigInt eps = p.k + rem;
    BigInt r = (m - eps) / p.delta - p.k;
    if (r < 1) return std::nullopt;
    if (r <= r_floor(p, eps, mode)) return std::nullopt;
    return Decomposition{eps, r};
}

// r_0 = delta^{k-1}(delta+1)^2 resp. delta^{k-1}(delta+1)(delta+3/2); the
// smt value is kept as an exact rational before taking the threshold.
inline Rat r0_for(long n, DegreeMode mode) {
    BoundParams p = params_for(n);
    BigInt dk1 = big_pow(p.delta, static_cast<unsigned long>(p.k - 1));
    if (mode == DegreeMode::kobayashi) return Rat(dk1 * (p.delta + 1) * (p.delta + 1));
    return Rat(dk1 * (p.delta + 1)) * (Rat(p.delta) + Rat(3, 2));
}

// least m from which decompose_degree is guaranteed to succeed
inline BigInt decompose_threshold(long n, DegreeMode mode) {
    BoundParams p = params_for(n);
    Rat t = (r0_for(n, mode) + Rat(BigInt(p.k))) * Rat(p.delta) + Rat(2 * p.delta);
    return rat_ceil(t);
}

// delta^{k-1} k' / (r - delta^{k-1} k (eps + k delta)); < 1 is the budget
// the truncated-counting comparison needs in the limit.
inline Rat smt_ratio(long n, const BigInt& m) {
    BoundParams p = params_for(n);
    auto dec = decompose_degree(m, n, DegreeMode::smt);
    if (!dec) throw std::domain_error("smt_ratio: degree too small to decompose");
    BigInt dk1 = big_pow(p.delta, static_cast<unsigned long>(p.k - 1));
    BigInt denom = dec->r - dk1 * p.k * (dec->eps + p.k * p.delta);
    return Rat(dk1 * p.k_prime, denom);
}

struct DimensionAudit {
    BigInt index_count_lower;  // binom(N-n+delta, delta) with N = n+1
    BigInt margin_regular;     // (k+1)n+1 + (k-1) - (delta+1); must be < 0
    BigInt margin_avoid;       // (k+1)n+1 - (delta+1); must be < 0
    bool index_count_ok = false;
    bool regular_ok = false;
    bool avoid_ok = false;
    bool pass() const { return index_count_ok && regular_ok && avoid_ok; }
};

inline DimensionAudit dimension_audit(long n) {
    BoundParams p = params_for(n);
    DimensionAudit a;
    // N = k = n+1, so N - n + delta = delta + 1
    BigInt towers_dim = BigInt(p.k + 1) * n + 1;
    a.index_count_lower = binomial(BigInt(p.delta + 1).get_ui(), p.delta.get_ui());
    a.index_count_ok = a.index_count_lower >= p.delta + 1;
    a.margin_regular = towers_dim + (p.k - 1) - (p.delta + 1);
    a.regular_ok = a.margin_regular < 0;
    a.margin_avoid = towers_dim - (p.delta + 1);
    a.avoid_ok = a.margin_avoid < 0;
    return a;
}

// ceil(sum_j alpha_j^1 min(j,m) / m) <= ceil(N/m) where N is the full
// weighted degree of alpha. `alpha` lists, per order j = 1..k, the
// exponent vector alpha_j over the base coordinates; the first coordinate
// is the one carrying the divisor.
inline bool orbifold_ceiling_check(const std::vector<MultiIndex>& alpha, long m) {
    if (m < 1) throw std::domain_error("orbifold_ceiling_check: m >= 1 required");
    BigInt weighted(0), lhs_sum(0);
    for (std::size_t j = 1; j <= alpha.size(); ++j) {
        const MultiIndex& aj = alpha[j - 1];
        weighted += BigInt(static_cast<long>(j)) * static_cast<long>(aj.degree());
        lhs_sum += BigInt(static_cast<long>(aj[0])) *
                   std::min<long>(static_cast<long>(j), m);
    }
    return ceil_div(lhs_sum, BigInt(m)) <= ceil_div(weighted, BigInt(m));
}

struct BoundRow {
    long n = 0;
    BoundParams params;
    BigInt kobayashi;
    BigInt alternative;
    bool alt_below_main = false;  // delta < (n+1)(n+2)
    bool basic_ok = false;
    DimensionAudit audit;
    BigInt threshold_kobayashi;
    BigInt threshold_smt;
    bool threshold_below_bound = false;  // kobayashi threshold < headline bound
    Rat smt_ratio_at_bound;
    bool smt_ratio_ok = false;
    std::string asymptotic_ratio;  // informational only

    bool pass() const {
        return alt_below_main && basic_ok && audit.pass() && threshold_below_bound && smt_ratio_ok;
    }
};

inline std::string asymptotic_ratio_string(long n, const BigInt& bound) {
    // bound / (e^3 n^{2n+6}), reported to six digits; informational only
    double num = mpz_get_d(bound.get_mpz_t());
    double den = std::exp(3.0) * std::pow(static_cast<double>(n), 2.0 * n + 6.0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", num / den);
    return buf;
}

inline BoundRow bounds_row(long n) {
    BoundRow row;
    row.n = n;
    row.params = params_for(n);
    row.kobayashi = kobayashi_bound(n);
    row.alternative = alt_bound(n);
    row.alt_below_main = row.params.delta < BigInt(n + 1) * (n + 2);
    row.basic_ok = basic_inequality(n);
    row.audit = dimension_audit(n);
    row.threshold_kobayashi = decompose_threshold(n, DegreeMode::kobayashi);
    row.threshold_smt = decompose_threshold(n, DegreeMode::smt);
    row.threshold_below_bound = row.threshold_kobayashi < row.kobayashi;
    row.smt_ratio_at_bound = smt_ratio(n, row.kobayashi);
    row.smt_ratio_ok = row.smt_ratio_at_bound < Rat(1);
    row.asymptotic_ratio = asymptotic_ratio_string(n, row.kobayashi);
    return row;
}

inline std::vector<BoundRow> bounds_table(long n_from, long n_to) {
    std::vector<BoundRow> rows;
    for (long n = n_from; n <= n_to; ++n) rows.push_back(bounds_row(n));
    return rows;
}

// big integers serialize as decimal strings: values exceed 64-bit early
inline nlohmann::ordered_json bounds_row_json(const BoundRow& row) {
    nlohmann::ordered_json j;
    j["n"] = row.n;
    j["k"] = row.params.k;
    j["delta"] = row.params.delta.get_str();
    j["k_prime"] = row.params.k_prime.get_str();
    j["kobayashi_bound"] = row.kobayashi.get_str();
    j["alternative_bound"] = row.alternative.get_str();
    j["alternative_below_main"] = row.alt_below_main;
    j["basic_inequality"] = row.basic_ok;
    j["index_count_lower"] = row.audit.index_count_lower.get_str();
    j["margin_regular"] = row.audit.margin_regular.get_str();
    j["margin_avoid"] = row.audit.margin_avoid.get_str();
    j["dimension_audit"] = row.audit.pass();
    j["threshold_kobayashi"] = row.threshold_kobayashi.get_str();
    j["threshold_smt"] = row.threshold_smt.get_str();
    j["threshold_below_bound"] = row.threshold_below_bound;
    j["smt_ratio_at_bound"] = row.smt_ratio_at_bound.str();
    j["smt_ratio_below_one"] = row.smt_ratio_ok;
    j["asymptotic_ratio"] = row.asymptotic_ratio;
    j["pass"] = row.pass();
    return j;
}

}  // namespace logjet

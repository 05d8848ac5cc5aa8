#pragma once

// Explicit regular chart of the iterated projectivized jet tower: the
// chart has coordinates z_1..z_n plus level coordinates z_i^(j) for
// i < n, lifting direction z_n. The vector fields xi_p trivialize the
// tautological bundles level by level, and nabla_chart iterates the
// induced directional connection. The curve family gamma_(w,z) realizes
// chart points as honest curve jets, which is what verify_chart_identity
// and omega_chart test against.

#include "logjet/logconn.hpp"

namespace logjet {

struct LevelViolationError : std::runtime_error {
    LevelViolationError()
        : std::runtime_error("chart function depends on levels at or above the field level") {}
};

enum class DivisorMode { away_from_D, adapted };

class TowerChart {
  public:
    TowerChart(int n, int k, DivisorMode mode = DivisorMode::away_from_D)
        : n_(n), k_(k), mode_(mode) {
        if (n < 1 || k < 1) throw std::logic_error("TowerChart: need n, k >= 1");
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
        for (int j = 1; j <= k; ++j)
            for (int i = 1; i <= n - 1; ++i)
                names.push_back("z" + std::to_string(i) + "_" + std::to_string(j));
        pool_ = make_vars(names);
        std::vector<std::string> base(names.begin(), names.begin() + n);
        base_pool_ = make_vars(base);
    }

    int n() const { return n_; }
    int k() const { return k_; }
    DivisorMode mode() const { return mode_; }
    const VarsPtr& pool() const { return pool_; }
    const VarsPtr& base_pool() const { return base_pool_; }

    // coordinate ids in the chart pool
    std::size_t var_z(int i) const {  // 1-based
        return static_cast<std::size_t>(i - 1);
    }
    std::size_t var_level(int i, int j) const {  // z_i^(j), 1 <= i <= n-1
        return static_cast<std::size_t>(n_ + (j - 1) * (n_ - 1) + (i - 1));
    }

    // level of a chart variable: 0 for z_i, j for z_i^(j)
    int level_of(std::size_t var) const {
        if (var < static_cast<std::size_t>(n_)) return 0;
        return static_cast<int>((var - n_) / (n_ - 1)) + 1;
    }

    int max_level(const Poly& g) const {
        int lv = 0;
        for (auto& [m, c] : g.terms())
            for (std::size_t v = 0; v < m.width(); ++v)
                if (m[v]) lv = std::max(lv, level_of(v));
        return lv;
    }

    Poly sigma_chart() const {
        if (mode_ == DivisorMode::away_from_D) return Poly(pool_, Rat(1));
        return Poly::var(pool_, var_z(1));
    }

  private:
    int n_, k_;
    DivisorMode mode_;
    VarsPtr pool_;
    VarsPtr base_pool_;
};

using ChartFunction = RatFunc;

// Directional derivative along xi_p = d/dz_n + sum_j<=p sum_i<n z_i^(j) d/dz_i^(j-1).
inline ChartFunction xi_apply(const TowerChart& chart, int p, const ChartFunction& g) {
    if (p < 1 || p > chart.k()) throw std::logic_error("xi_apply: level out of range");
    if (chart.max_level(g.num()) >= p || chart.max_level(g.den()) >= p)
        throw LevelViolationError{};
    int n = chart.n();
    ChartFunction acc = g.derivative(chart.var_z(n));
    for (int j = 1; j <= p; ++j) {
        for (int i = 1; i <= n - 1; ++i) {
            std::size_t target = (j == 1) ? chart.var_z(i) : chart.var_level(i, j - 1);
            ChartFunction dg = g.derivative(target);
            if (dg.is_zero()) continue;
            acc += dg * RatFunc(Poly::var(chart.pool(), chart.var_level(i, j)));
        }
    }
    return acc;
}

// nabla^j of a function of the base coordinates, iterated through the
// levels. In away_from_D mode (sigma = 1) this stays polynomial; in
// adapted mode (sigma = z_1) the correction term -g xi(sigma)/sigma applies.
inline ChartFunction nabla_chart(const TowerChart& chart, int j, const Poly& f) {
    if (j < 0 || j > chart.k()) throw std::logic_error("nabla_chart: order out of range");
    ChartFunction cur(f.extend_to(chart.pool()));
    Poly sigma = chart.sigma_chart();
    for (int level = 1; level <= j; ++level) {
        ChartFunction next = xi_apply(chart, level, cur);
        if (chart.mode() == DivisorMode::adapted) {
            ChartFunction dsig = xi_apply(chart, level, ChartFunction(sigma));
            next -= cur * dsig / ChartFunction(sigma);
        }
        cur = next;
    }
    return cur;
}

// Jet parameters of the chart curve family: base point z and Taylor
// parameters w_i^(j), so that gamma^(j)(0) = w^(j) exactly.
struct GammaParams {
    std::vector<Rat> z;               // n entries
    std::vector<std::vector<Rat>> w;  // [i-1][j-1], i <= n-1, j <= k
};

inline CurveJet gamma_curve(const TowerChart& chart, const GammaParams& params, int k) {
    int n = chart.n();
    if (static_cast<int>(params.z.size()) != n)
        throw std::logic_error("gamma_curve: base point size");
    std::vector<std::vector<Rat>> d;
    d.reserve(n);
    for (int i = 1; i <= n - 1; ++i) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[0] = params.z[i - 1];
        const auto& wi = params.w.at(i - 1);
        for (int j = 1; j <= k; ++j) v[j] = j <= static_cast<int>(wi.size()) ? wi[j - 1] : Rat(0);
        d.push_back(std::move(v));
    }
    std::vector<Rat> vn(k + 1, Rat(0));
    vn[0] = params.z[n - 1];
    if (k >= 1) vn[1] = Rat(1);
    d.push_back(std::move(vn));
    return CurveJet(chart.base_pool(), k, std::move(d));
}

inline Rat eval_chart(const TowerChart& chart, const ChartFunction& g, const GammaParams& params) {
    std::vector<Rat> point(chart.pool()->size(), Rat(0));
    for (int i = 1; i <= chart.n(); ++i) point[chart.var_z(i)] = params.z[i - 1];
    for (int i = 1; i <= chart.n() - 1; ++i) {
        const auto& wi = params.w.at(i - 1);
        for (int j = 1; j <= chart.k(); ++j)
            point[chart.var_level(i, j)] = j <= static_cast<int>(wi.size()) ? wi[j - 1] : Rat(0);
    }
    return g.eval(point);
}

// d^j f (j_k gamma_(w,z)) - nabla^j f (w,z); identically zero in away mode.
inline Rat chart_identity_defect(const TowerChart& chart, const Poly& f, int j,
                                 const GammaParams& params) {
    if (chart.mode() != DivisorMode::away_from_D)
        throw std::logic_error("chart identity is asserted away from the divisor only");
    CurveJet gamma = gamma_curve(chart, params, std::max(j, 1));
    Rat lhs = pullback_curve(total_derive(JetPoly::of_base(f.extend_to(chart.base_pool())), j), gamma);
    Rat rhs = eval_chart(chart, nabla_chart(chart, j, f), params);
    return lhs - rhs;
}

// k x k chart Wronskian det(nabla^j s_i).
inline ChartFunction omega_chart(const TowerChart& chart, const std::vector<Poly>& sections) {
    std::size_t k = sections.size();
    if (k == 0 || static_cast<int>(k) > chart.k())
        throw std::logic_error("omega_chart: section count must be 1..k");
    Matrix<ChartFunction> m(k, std::vector<ChartFunction>(k));
    for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t i = 0; i < k; ++i)
            m[j - 1][i] = nabla_chart(chart, static_cast<int>(j), sections[i]);
    return ring_det(m, ChartFunction(chart.pool(), Rat(0)));
}

// Coefficients (k, k+(k-1), ..., k+...+2) attached to the exceptional
// divisors of levels 2..k in the weighted tautological comparison.
inline std::vector<long> gamma_weights(int k) {
    if (k < 2) throw std::logic_error("gamma_weights: k >= 2 required");
    std::vector<long> out;
    long acc = 0;
    for (int j = 2; j <= k; ++j) {
        // coefficient of Gamma_j is k + (k-1) + ... + (k-j+2)
        acc = 0;
        for (int t = k; t >= k - j + 2; --t) acc += t;
        out.push_back(acc);
    }
    return out;
}

}  // namespace logjet

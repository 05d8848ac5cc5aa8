#pragma once

// Randomized exact-identity suites. Every check evaluates an algebraic
// identity with exact arithmetic, so a single failing instance is a hard
// counterexample. Deterministic given the seed.

#include "logjet/fermat.hpp"
#include "logjet/rng.hpp"
#include "logjet/tower.hpp"

#include <string>
#include <vector>

namespace logjet {

struct CheckResult {
    explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}
    std::string name;
    long passed = 0;
    long total = 0;
    std::string detail;  // first failure, if any
    bool ok() const { return passed == total; }
};

struct SuiteReport {
    explicit SuiteReport(std::string suite_name) : suite(std::move(suite_name)) {}
    std::string suite;
    std::vector<CheckResult> checks;
    bool ok() const {
        for (auto& c : checks)
            if (!c.ok()) return false;
        return true;
    }
};

namespace gen {

inline Poly random_poly(Rng& rng, const VarsPtr& vars, int max_deg, int max_terms) {
    Poly p(vars);
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        std::vector<unsigned> e(vars->size(), 0);
        long budget = rng.range(0, max_deg);
        for (std::size_t v = 0; v < vars->size() && budget > 0; ++v) {
            long take = rng.range(0, budget);
            e[v] = static_cast<unsigned>(take);
            budget -= take;
        }
        p.add_term(MultiIndex(std::move(e)), rng.small_rat_nonzero(4));
    }
    return p;
}

inline Poly random_nonzero_poly(Rng& rng, const VarsPtr& vars, int max_deg, int max_terms) {
    for (;;) {
        Poly p = random_poly(rng, vars, max_deg, max_terms);
        if (!p.is_zero()) return p;
    }
}

// isobaric jet polynomial of the given weight with polynomial coefficients
inline JetPoly random_isobaric(Rng& rng, const VarsPtr& vars, long weight, int max_order,
                               int max_terms) {
    JetPoly p(vars);
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        MultiIndex mono;
        long rem = weight;
        while (rem > 0) {
            int ord = static_cast<int>(rng.range(1, std::min<long>(max_order, rem)));
            std::size_t coord = rng.below(vars->size());
            mono = mono.with(jet_var_id(vars->size(), {coord, ord}), +1);
            rem -= ord;
        }
        p.add_term(mono, RatFunc(random_nonzero_poly(rng, vars, 2, 2)));
    }
    return p;
}

inline std::vector<Poly> random_curve_polys(Rng& rng, std::size_t ncoords, const VarsPtr& tvars,
                                            int deg) {
    std::vector<Poly> f;
    for (std::size_t i = 0; i < ncoords; ++i) f.push_back(random_poly(rng, tvars, deg, 3));
    return f;
}

inline CurveJet random_curve(Rng& rng, const VarsPtr& base, int k, int deg) {
    VarsPtr tv = make_vars({"t"});
    return jet_of_poly_curve(base, random_curve_polys(rng, base->size(), tv, deg), k);
}

inline Reparam random_reparam(Rng& rng, int k) {
    std::vector<Rat> a;
    a.push_back(rng.small_rat_nonzero(3));
    for (int j = 2; j <= k; ++j) a.push_back(rng.small_rat(3));
    return Reparam(std::move(a));
}

struct RandomFamilySpec {
    int n_max = 2, delta_max = 2, r_max = 4, k_max = 3, eps_max = 3;
    int min_coeffs = 1;
};

inline FermatFamily random_family(Rng& rng, const RandomFamilySpec& spec) {
    FermatFamily fam;
    fam.n = rng.range(1, spec.n_max);
    fam.N = fam.n + rng.range(0, 1);
    fam.delta = rng.range(1, spec.delta_max);
    fam.k = rng.range(1, spec.k_max);
    fam.epsilon = rng.range(std::max<long>(fam.k, 1), std::max<long>(fam.k, spec.eps_max));
    fam.r = rng.range(1, spec.r_max);
    std::vector<std::string> names;
    for (long i = 1; i <= fam.n; ++i) names.push_back("z" + std::to_string(i));
    fam.y_pool = make_vars(names);
    // tau_0 = 1 and affine coordinates first, then random low-degree extras
    fam.tau.push_back(Poly(fam.y_pool, Rat(1)));
    for (long j = 1; j <= fam.N; ++j) {
        if (j <= fam.n) {
            fam.tau.push_back(Poly::var(fam.y_pool, static_cast<std::size_t>(j - 1)));
        } else {
            fam.tau.push_back(random_nonzero_poly(rng, fam.y_pool, 1, 2));
        }
    }
    auto all = enumerate_indices(static_cast<int>(fam.N) + 1, fam.delta);
    long want = rng.range(spec.min_coeffs,
                          std::min<long>(static_cast<long>(all.size()), spec.min_coeffs + 2));
    // tau entries can be proportional, so coefficients may conspire to make
    // F identically zero; such degenerate draws are rejected
    do {
        fam.a.clear();
        while (static_cast<long>(fam.a.size()) < want) {
            const MultiIndex& I = all[rng.below(all.size())];
            if (fam.a.count(I)) continue;
            fam.a.emplace(I, random_nonzero_poly(rng, fam.y_pool, static_cast<int>(
                                                     std::min<long>(fam.epsilon, 2)),
                                                 2));
        }
    } while (build_F(fam).is_zero());
    fam.validate();
    return fam;
}

}  // namespace gen

namespace checks {

inline void record(CheckResult& c, bool pass, const std::string& what) {
    ++c.total;
    if (pass) {
        ++c.passed;
    } else if (c.detail.empty()) {
        c.detail = what;
    }
}

// --- jetalg ---------------------------------------------------------

inline CheckResult derivation_rule(Rng& rng, long instances) {
    CheckResult c{"jetalg/derivation d(PQ) = dP Q + P dQ"};
    for (long i = 0; i < instances; ++i) {
        auto vars = make_vars({"z1", "z2"});
        JetPoly p = gen::random_isobaric(rng, vars, rng.range(1, 3), 3, 2);
        JetPoly q = gen::random_isobaric(rng, vars, rng.range(1, 3), 3, 2);
        bool ok = total_derive(p * q) == total_derive(p) * q + p * total_derive(q);
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult weight_bookkeeping(Rng& rng, long instances) {
    CheckResult c{"jetalg/weight: isobaric(m) derives to isobaric(m+1)"};
    for (long i = 0; i < instances; ++i) {
        auto vars = make_vars({"z1", "z2", "z3"});
        long w = rng.range(1, 5);
        JetPoly p = gen::random_isobaric(rng, vars, w, 4, 3);
        JetPoly dp = total_derive(p);
        // a fully cancelled draw is isobaric of every weight; skip it
        bool ok = p.is_zero() ||
                  (p.weight() == std::optional<long>(w) &&
                   (dp.is_zero() || dp.weight() == std::optional<long>(w + 1)));
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult curve_compatibility(Rng& rng, long instances) {
    CheckResult c{"jetalg/compatibility of d with curve shifts"};
    VarsPtr tv = make_vars({"t"});
    for (long i = 0; i < instances; ++i) {
        int k = static_cast<int>(rng.range(1, 3));
        auto vars = make_vars({"z1", "z2"});
        JetPoly p = gen::random_isobaric(rng, vars, rng.range(1, k), k, 2);
        auto fpolys = gen::random_curve_polys(rng, vars->size(), tv, k + 2);
        // jets of the curve shifted to basepoint t: derivatives as polys in t
        JetValuation val;
        val.params = tv;
        for (auto& fp : fpolys) {
            val.base_vals.push_back(RatFunc(fp));
            std::vector<RatFunc> jets;
            Poly d = fp;
            for (int j = 1; j <= k; ++j) {
                d = partial_derivative(d, 0);
                jets.push_back(RatFunc(d));
            }
            val.jet_vals.push_back(std::move(jets));
        }
        RatFunc along = evaluate(p, val);
        Rat lhs = TruncSeries::of_poly(1, along.as_poly()).derivative_at0(1);
        Rat rhs = pullback_curve(total_derive(p), jet_of_poly_curve(vars, fpolys, k + 1));
        record(c, lhs == rhs, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult rescale_equivariance(Rng& rng, long instances) {
    CheckResult c{"jetalg/C*-equivariance of isobaric pullbacks"};
    for (long i = 0; i < instances; ++i) {
        auto vars = make_vars({"z1", "z2"});
        long w = rng.range(1, 4);
        JetPoly p = gen::random_isobaric(rng, vars, w, 3, 2);
        CurveJet f = gen::random_curve(rng, vars, std::max(p.order(), 1), 4);
        Rat lambda = rng.small_rat_nonzero(3);
        bool ok = pullback_curve(p, rescale(f, lambda)) == lambda.pow(w) * pullback_curve(p, f);
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult reparam_right_action(Rng& rng, long instances) {
    CheckResult c{"jetalg/reparametrization is a right action"};
    for (long i = 0; i < instances; ++i) {
        int k = static_cast<int>(rng.range(1, 4));
        auto vars = make_vars({"z1", "z2"});
        CurveJet f = gen::random_curve(rng, vars, k, k + 1);
        Reparam phi = gen::random_reparam(rng, k), psi = gen::random_reparam(rng, k);
        CurveJet lhs = reparametrize(reparametrize(f, phi), psi);
        CurveJet rhs = reparametrize(f, phi.compose(psi, k));
        bool ok = true;
        for (std::size_t coord = 0; coord < vars->size(); ++coord)
            for (int j = 0; j <= k; ++j) ok = ok && lhs.deriv(coord, j) == rhs.deriv(coord, j);
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult invariance_sensitivity() {
    CheckResult c{"jetalg/invariance defect detects non-invariance"};
    auto vars = make_vars({"z1"});
    VarsPtr tv = make_vars({"t"});
    CurveJet f = jet_of_poly_curve(vars, {Poly::var(tv, 0)}, 2);
    Reparam phi({Rat(1), Rat(1)});  // t + t^2
    // d^1 z is invariant of weight 1
    auto d1 = invariance_defect(JetPoly::jet_var(vars, 0, 1), 1, {{f, phi}});
    record(c, d1.at(0).is_zero(), "d1z should be invariant");
    // d^2 z is not invariant of weight 2
    auto d2 = invariance_defect(JetPoly::jet_var(vars, 0, 2), 2, {{f, phi}});
    record(c, !d2.at(0).is_zero(), "d2z defect should be nonzero");
    return c;
}

// --- logconn --------------------------------------------------------

inline VarsPtr small_pool(Rng& rng, int n_max) {
    long n = rng.range(1, n_max);
    std::vector<std::string> names;
    for (long i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    return make_vars(names);
}

inline CheckResult nabla_vanishing(Rng& rng, long instances, bool corrupt = false) {
    CheckResult c{"logconn/nabla^k sigma = 0"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 3);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 4, 3);
        int k = static_cast<int>(rng.range(1, 4));
        LogPair pair(vars, sigma);
        LogJetPoly nk = nabla_recursive(k, sigma, pair);
        if (corrupt) {
            // harness hook: inject a defect to prove the suite would catch one
            JetPoly junk = JetPoly::jet_var(vars, 0, 1);
            nk = LogJetPoly(pair, nk.body_at_pole(nk.pole()) + junk, nk.pole());
        }
        record(c, nk.is_zero(), "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult nabla_dual_route(Rng& rng, long instances) {
    CheckResult c{"logconn/nabla recursion matches closed form"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 3);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 3, 2);
        Poly s = gen::random_poly(rng, vars, 3, 3);
        int k = static_cast<int>(rng.range(0, 4));
        LogPair pair(vars, sigma);
        bool ok = true;
        try {
            (void)nabla(k, s, pair);
        } catch (const InternalMismatchError&) {
            ok = false;
        }
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult leibniz_identity(Rng& rng, long instances) {
    CheckResult c{"logconn/Leibniz identity defect = 0"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 3);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 4, 3);
        Poly s = gen::random_poly(rng, vars, 4, 3);
        int k = static_cast<int>(rng.range(1, 4));
        record(c, leibniz_defect(k, s, LogPair(vars, sigma)).is_zero(),
               "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult pole_order_bound(Rng& rng, long instances) {
    CheckResult c{"logconn/sigma^k nabla^k s has polynomial coefficients"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 2);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 3, 2);
        Poly s = gen::random_poly(rng, vars, 3, 2);
        int k = static_cast<int>(rng.range(1, 3));
        LogPair pair(vars, sigma);
        // the closed-form route knows nothing about sigma-divisibility
        JetPoly cf = nabla_closed_form(k, s, pair).scaled(sigma.pow(static_cast<unsigned long>(k)));
        record(c, cf.coefficients_polynomial(), "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult wronskian_alternating(Rng& rng, long instances) {
    CheckResult c{"logconn/Wronskians are alternating and multilinear"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 2);
        int k = static_cast<int>(rng.range(2, 3));
        std::vector<Poly> s;
        for (int j = 0; j <= k; ++j) s.push_back(gen::random_poly(rng, vars, 3, 2));
        JetPoly w = wronskian_abs(s);
        std::vector<Poly> swapped = s;
        std::swap(swapped[0], swapped[1]);
        bool ok = wronskian_abs(swapped) == -w;
        std::vector<Poly> repeated = s;
        repeated[1] = repeated[0];
        ok = ok && wronskian_abs(repeated).is_zero();
        // linearity in slot 0 over constant rationals
        Rat lam = rng.small_rat_nonzero(3);
        std::vector<Poly> scaled = s;
        scaled[0] = scaled[0].scaled(lam);
        ok = ok && wronskian_abs(scaled) == w.scaled(lam);
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult nonlog_identity(Rng& rng, long instances) {
    CheckResult c{"logconn/sigma W_D(g) = W_abs(sigma, g)"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 2);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 3, 2);
        int k = static_cast<int>(rng.range(1, 3));
        std::vector<Poly> g;
        for (int j = 0; j < k; ++j) g.push_back(gen::random_poly(rng, vars, 3, 2));
        LogPair pair(vars, sigma);
        JetPoly lhs = wronskian_log(g, pair).as_jetpoly().scaled(sigma);
        std::vector<Poly> with_sigma;
        with_sigma.push_back(sigma);
        for (auto& gi : g) with_sigma.push_back(gi);
        record(c, lhs == wronskian_abs(with_sigma), "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult wronskian_covariance(Rng& rng, long instances) {
    CheckResult c{"logconn/W_abs pullback is reparametrization covariant"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 2);
        int k = static_cast<int>(rng.range(1, 3));
        std::vector<Poly> s;
        for (int j = 0; j <= k; ++j) s.push_back(gen::random_poly(rng, vars, 3, 2));
        JetPoly w = wronskian_abs(s);
        long kprime = static_cast<long>(k) * (k + 1) / 2;
        CurveJet f = gen::random_curve(rng, vars, k, k + 1);
        Reparam phi = gen::random_reparam(rng, k);
        Rat lhs = pullback_curve(w, reparametrize(f, phi));
        Rat rhs = phi.prime0().pow(kprime) * pullback_curve(w, f);
        record(c, lhs == rhs, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult kjet_dependence(Rng& rng, long instances) {
    CheckResult c{"logconn/W_D pullback depends only on k-jets of sections"};
    for (long i = 0; i < instances; ++i) {
        VarsPtr vars = small_pool(rng, 2);
        int k = static_cast<int>(rng.range(1, 3));
        CurveJet f = gen::random_curve(rng, vars, k, k + 1);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 3, 2);
        // shift so the basepoint is off the divisor: sigma(f(0)) = 1
        sigma += Poly(vars, Rat(1) - eval(sigma, f.point()));
        LogPair pair(vars, sigma);
        std::vector<Poly> g;
        for (int j = 0; j < k; ++j) g.push_back(gen::random_poly(rng, vars, 3, 2));
        Rat base = wronskian_log(g, pair).pullback(f);
        std::size_t coord = rng.below(vars->size());
        Poly lin = Poly::var(vars, coord) - Poly(vars, f.point()[coord]);
        Poly h = lin.pow(static_cast<unsigned long>(k) + 1) *
                 gen::random_nonzero_poly(rng, vars, 2, 2);
        std::size_t slot = rng.below(g.size());
        g[slot] += h;
        record(c, wronskian_log(g, pair).pullback(f) == base, "instance " + std::to_string(i));
    }
    return c;
}

// symbolic mutual-inverse check of the two jet-basis conversions
inline CheckResult basis_conversion_inverse(int j_max) {
    CheckResult c{"logconn/log jet basis conversions are mutually inverse"};
    for (int j = 1; j <= j_max; ++j) {
        std::vector<std::string> names;
        for (int i = 1; i <= j; ++i) names.push_back("u" + std::to_string(i));
        VarsPtr upool = make_vars(names);
        // A_i(u) expands D^i z / z in the log-basis variables u_1..u_i
        std::vector<std::optional<RatFunc>> image(static_cast<std::size_t>(j));
        for (int i = 1; i <= j; ++i) {
            Poly ai(upool);
            for (auto& [beta, coeff] : log_basis_coeffs(i, BasisDirection::abs_from_log))
                ai.add_term(beta, Rat(coeff));
            image[static_cast<std::size_t>(i - 1)] = RatFunc(ai);
        }
        // B_j expands D^j log z in the absolute-basis variables v_1..v_j;
        // substituting A_i for v_i must return exactly u_j
        Poly bj(upool);
        for (auto& [beta, coeff] : log_basis_coeffs(j, BasisDirection::log_from_abs))
            bj.add_term(beta, Rat(coeff));
        RatFunc composed = substitute(bj, upool, image);
        bool ok = composed.is_polynomial() &&
                  composed.as_poly() == Poly::var(upool, static_cast<std::size_t>(j - 1));
        record(c, ok, "order " + std::to_string(j));
    }
    return c;
}

// series oracle: (log f)' = f'/f on random curves with f(0) != 0
inline CheckResult basis_series_oracle(Rng& rng, long instances, int j_max) {
    CheckResult c{"logconn/log jet basis against the f'/f series oracle"};
    VarsPtr tv = make_vars({"t"});
    for (long inst = 0; inst < instances; ++inst) {
        Poly f = gen::random_poly(rng, tv, j_max, 3) + Poly(tv, rng.small_rat_nonzero(3));
        TruncSeries fs = TruncSeries::of_poly(j_max, f);
        if (fs[0].is_zero()) {
            record(c, true, "");
            continue;
        }
        TruncSeries logderiv = fs.derive() * fs.inverse();  // = (log f)'
        std::vector<Rat> L(static_cast<std::size_t>(j_max) + 1);  // L[i] = (log f)^(i)(0)
        for (int i = 1; i <= j_max; ++i)
            L[static_cast<std::size_t>(i)] = logderiv.derivative_at0(i - 1);
        std::vector<Rat> V(static_cast<std::size_t>(j_max) + 1);  // V[i] = f^(i)(0)/f(0)
        for (int i = 1; i <= j_max; ++i)
            V[static_cast<std::size_t>(i)] = fs.derivative_at0(i) / fs[0];
        bool ok = true;
        for (int j = 1; j <= j_max; ++j) {
            Rat abs_sum(0), log_sum(0);
            for (auto& [beta, coeff] : log_basis_coeffs(j, BasisDirection::abs_from_log)) {
                Rat t(coeff);
                for (std::size_t i = 0; i < beta.width(); ++i)
                    if (beta[i]) t *= L[i + 1].pow(beta[i]);
                abs_sum += t;
            }
            for (auto& [beta, coeff] : log_basis_coeffs(j, BasisDirection::log_from_abs)) {
                Rat t(coeff);
                for (std::size_t i = 0; i < beta.width(); ++i)
                    if (beta[i]) t *= V[i + 1].pow(beta[i]);
                log_sum += t;
            }
            ok = ok && abs_sum == V[static_cast<std::size_t>(j)] &&
                 log_sum == L[static_cast<std::size_t>(j)];
        }
        record(c, ok, "instance " + std::to_string(inst));
    }
    return c;
}

// --- tower ----------------------------------------------------------

inline GammaParams random_gamma_params(Rng& rng, const TowerChart& chart) {
    GammaParams params;
    for (int i = 1; i <= chart.n(); ++i) params.z.push_back(rng.small_rat(4));
    for (int i = 1; i <= chart.n() - 1; ++i) {
        std::vector<Rat> wi;
        for (int j = 1; j <= chart.k(); ++j) wi.push_back(rng.small_rat(4));
        params.w.push_back(std::move(wi));
    }
    return params;
}

inline CheckResult chart_identity(Rng& rng, long draws, bool monomial_grid) {
    CheckResult c{"tower/chart identity d^j f(j_k gamma) = nabla^j f"};
    for (int n = 1; n <= 3; ++n) {
        for (int k = 1; k <= 4; ++k) {
            TowerChart chart(n, k);
            std::vector<Poly> fs;
            if (monomial_grid) {
                for (auto& m : coefficient_basis(n, 3))
                    fs.push_back(Poly::monomial(chart.base_pool(), m, Rat(1)));
            } else {
                fs.push_back(gen::random_poly(rng, chart.base_pool(), 3, 3));
            }
            for (auto& f : fs)
                for (int j = 1; j <= k; ++j)
                    for (long d = 0; d < draws; ++d) {
                        GammaParams params = random_gamma_params(rng, chart);
                        record(c, chart_identity_defect(chart, f, j, params).is_zero(),
                               "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                   " j=" + std::to_string(j));
                    }
        }
    }
    return c;
}

inline CheckResult omega_alternating(Rng& rng, long instances) {
    CheckResult c{"tower/omega is alternating multilinear"};
    for (long i = 0; i < instances; ++i) {
        int n = static_cast<int>(rng.range(2, 3));
        int k = static_cast<int>(rng.range(2, 3));
        TowerChart chart(n, k);
        std::vector<Poly> s;
        for (int j = 0; j < k; ++j) s.push_back(gen::random_poly(rng, chart.base_pool(), 2, 2));
        ChartFunction w = omega_chart(chart, s);
        std::vector<Poly> sw = s;
        std::swap(sw[0], sw[1]);
        bool ok = ratfunc_eq(omega_chart(chart, sw), -w);
        std::vector<Poly> rep = s;
        rep[1] = rep[0];
        ok = ok && omega_chart(chart, rep).is_zero();
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult omega_matches_wronskian(Rng& rng, long instances) {
    CheckResult c{"tower/omega equals the Wronskian pullback along gamma"};
    for (long i = 0; i < instances; ++i) {
        int n = static_cast<int>(rng.range(2, 3));
        int k = static_cast<int>(rng.range(1, 3));
        TowerChart chart(n, k);
        std::vector<Poly> s;
        for (int j = 0; j < k; ++j) s.push_back(gen::random_poly(rng, chart.base_pool(), 2, 2));
        // away from the divisor the log pair is trivial and W_D = det(d^j s_i)
        LogPair pair(chart.base_pool(), Poly(chart.base_pool(), Rat(1)));
        JetPoly w = wronskian_log(s, pair).as_jetpoly();
        GammaParams params = random_gamma_params(rng, chart);
        Rat lhs = pullback_curve(w, gamma_curve(chart, params, k));
        Rat rhs = eval_chart(chart, omega_chart(chart, s), params);
        record(c, lhs == rhs, "instance " + std::to_string(i));
    }
    return c;
}

inline CheckResult level_discipline(Rng& rng, long instances) {
    CheckResult c{"tower/nabla^j depends only on levels <= j"};
    for (long i = 0; i < instances; ++i) {
        int n = static_cast<int>(rng.range(2, 3));
        int k = static_cast<int>(rng.range(1, 4));
        TowerChart chart(n, k);
        Poly f = gen::random_poly(rng, chart.base_pool(), 3, 3);
        bool ok = true;
        for (int j = 1; j <= k; ++j) {
            ChartFunction nj = nabla_chart(chart, j, f);
            ok = ok && chart.max_level(nj.num()) <= j && chart.max_level(nj.den()) <= j;
        }
        record(c, ok, "instance " + std::to_string(i));
    }
    return c;
}

// --- fermat ---------------------------------------------------------

inline CheckResult fermat_factorization(Rng& rng, long families) {
    CheckResult c{"fermat/nabla factorization through tau^{rI}"};
    for (long i = 0; i < families; ++i) {
        FermatFamily fam = gen::random_family(rng, {});
        TotalChart chart(static_cast<int>(fam.n));
        bool ok = true;
        std::string what;
        try {
            for (auto& [I, aI] : fam.a) {
                for (int j = 1; j <= fam.k; ++j) {
                    LogJetPoly q = nabla_factor(j, I, aI, fam.tau, fam.r, fam.k, chart);
                    // multiply back and compare against the underived connection
                    Poly tau_rI =
                        tau_power(fam.tau, I, static_cast<unsigned long>(fam.r)).extend_to(chart.pool());
                    Poly section = (aI * tau_power(fam.tau, I, static_cast<unsigned long>(fam.r + fam.k)))
                                       .extend_to(chart.pool());
                    LogJetPoly direct = nabla_recursive(j, section, chart.pair());
                    LogJetPoly back(chart.pair(), q.body_at_pole(q.pole()).scaled(tau_rI), q.pole());
                    ok = ok && back == direct;
                }
            }
        } catch (const NotDivisibleError&) {
            ok = false;
            what = "NotDivisible raised";
        }
        record(c, ok, what.empty() ? "family " + std::to_string(i) : what);
    }
    return c;
}

inline CheckResult tautological_system(Rng& rng, long families) {
    CheckResult c{"fermat/tautological system residual = 0 on the graph"};
    for (long i = 0; i < families; ++i) {
        FermatFamily fam = gen::random_family(rng, {});
        TotalChart chart(static_cast<int>(fam.n));
        bool ok = true;
        for (int j = 1; j <= fam.k; ++j) ok = ok && system_residual(fam, j, chart).is_zero();
        record(c, ok, "family " + std::to_string(i));
    }
    return c;
}

// The residual vanishes on a shifted graph t = F + p exactly when F/(F+p)
// is constant, so the perturbation must not be proportional to F.
inline Poly graph_perturbation(const FermatFamily& fam) {
    Poly f = build_F(fam);
    if (!f.is_constant()) return Poly(fam.y_pool, Rat(1));
    return Poly::var(fam.y_pool, 0);
}

inline CheckResult perturbed_graph_sensitivity(Rng& rng, long families) {
    CheckResult c{"fermat/perturbed graph gives a nonzero residual"};
    for (long i = 0; i < families; ++i) {
        FermatFamily fam = gen::random_family(rng, {});
        TotalChart chart(static_cast<int>(fam.n));
        Poly perturb = graph_perturbation(fam);
        bool nonzero = false;
        for (int j = 1; j <= fam.k; ++j)
            nonzero = nonzero || !system_residual(fam, j, chart, perturb).is_zero();
        record(c, nonzero, "family " + std::to_string(i));
    }
    return c;
}

inline CheckResult plucker_identities(Rng& rng, long instances) {
    CheckResult c{"fermat/Pluecker determinants factor and alternate"};
    long done = 0;
    while (done < instances) {
        gen::RandomFamilySpec spec;
        spec.k_max = 2;
        spec.min_coeffs = 2;
        FermatFamily fam = gen::random_family(rng, spec);
        if (static_cast<long>(fam.a.size()) < fam.k) continue;
        TotalChart chart(static_cast<int>(fam.n));
        std::vector<MultiIndex> idx;
        for (auto& [I, aI] : fam.a) {
            idx.push_back(I);
            if (static_cast<long>(idx.size()) == fam.k) break;
        }
        LogJetPoly det = plucker_omega(idx, fam, chart);
        MultiIndex total;
        std::vector<Poly> sections;
        for (auto& I : idx) {
            total = total.plus(I);
            sections.push_back((fam.a.at(I) *
                                tau_power(fam.tau, I, static_cast<unsigned long>(fam.r + fam.k)))
                                   .extend_to(chart.pool()));
        }
        Poly tau_total =
            tau_power(fam.tau, total, static_cast<unsigned long>(fam.r)).extend_to(chart.pool());
        LogJetPoly lhs(chart.pair(), det.body_at_pole(det.pole()).scaled(tau_total), det.pole());
        bool ok = lhs == wronskian_log(sections, chart.pair());
        if (fam.k >= 2) {
            std::vector<MultiIndex> swapped = idx;
            std::swap(swapped[0], swapped[1]);
            ok = ok && plucker_omega(swapped, fam, chart) == -det;
            std::vector<MultiIndex> repeated = idx;
            repeated[1] = repeated[0];
            ok = ok && plucker_omega(repeated, fam, chart).is_zero();
        }
        record(c, ok, "instance " + std::to_string(done));
        ++done;
    }
    return c;
}

inline std::vector<Poly> random_frame(Rng& rng, const FermatFamily& fam) {
    std::vector<Poly> frame;
    for (long i = 0; i < fam.k; ++i) frame.push_back(gen::random_nonzero_poly(rng, fam.y_pool, 3, 3));
    return frame;
}

inline CheckResult cramer_identity(Rng& rng, long instances) {
    CheckResult c{"fermat/Cramer determinant identity"};
    long done = 0;
    while (done < instances) {
        gen::RandomFamilySpec spec;
        spec.n_max = 1;
        spec.k_max = 2;
        spec.delta_max = 2;
        spec.min_coeffs = 2;
        FermatFamily fam = gen::random_family(rng, spec);
        if (static_cast<long>(fam.a.size()) < fam.k) continue;
        TotalChart chart(static_cast<int>(fam.n));
        SymbolicJet jet = make_symbolic_jet(chart, static_cast<int>(fam.k));
        std::vector<MultiIndex> idx;
        for (auto& [I, aI] : fam.a) {
            idx.push_back(I);
            if (static_cast<long>(idx.size()) == fam.k) break;
        }
        try {
            RatFunc defect = cramer_identity_defect(random_frame(rng, fam), idx, fam, chart, jet);
            record(c, defect.is_zero(), "instance " + std::to_string(done));
        } catch (const SingularFrameError&) {
            continue;  // redraw the frame
        }
        ++done;
    }
    return c;
}

inline CurveJet random_total_sample(Rng& rng, const TotalChart& chart, int k) {
    // regular in the chart direction z_n, basepoint off the divisor t = 0
    std::vector<std::vector<Rat>> d;
    std::vector<Rat> tvec(static_cast<std::size_t>(k) + 1);
    tvec[0] = rng.small_rat_nonzero(3);
    for (int j = 1; j <= k; ++j) tvec[j] = rng.small_rat(3);
    d.push_back(std::move(tvec));
    for (int i = 1; i <= chart.n(); ++i) {
        std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
        v[0] = rng.small_rat(3);
        if (i == chart.n()) {
            v[1] = Rat(1);
            for (int j = 2; j <= k; ++j) v[j] = Rat(0);
        } else {
            for (int j = 1; j <= k; ++j) v[j] = rng.small_rat(3);
        }
        d.push_back(std::move(v));
    }
    return CurveJet(chart.pool(), k, std::move(d));
}

inline CheckResult rank_claim(Rng& rng, long instances, bool force_vanishing_tau = false) {
    CheckResult c{"fermat/rank of the coefficient map is k #I_y"};
    long done = 0;
    while (done < instances) {
        gen::RandomFamilySpec spec;
        spec.n_max = 2;
        spec.k_max = 2;
        spec.delta_max = 2;
        FermatFamily fam = gen::random_family(rng, spec);
        TotalChart chart(static_cast<int>(fam.n));
        CurveJet sample = random_total_sample(rng, chart, static_cast<int>(fam.k));
        if (force_vanishing_tau) {
            // zero the basepoint coordinate carried by tau_1 = z_1
            std::vector<std::vector<Rat>> d;
            for (std::size_t coord = 0; coord < chart.pool()->size(); ++coord) {
                std::vector<Rat> v;
                for (int j = 0; j <= sample.order(); ++j) v.push_back(sample.deriv(coord, j));
                d.push_back(std::move(v));
            }
            d[chart.var_z(1)][0] = Rat(0);
            sample = CurveJet(chart.pool(), sample.order(), std::move(d));
        }
        try {
            std::size_t rank = rank_probe(fam, chart, random_frame(rng, fam), sample);
            std::vector<Rat> y;
            for (int i = 1; i <= chart.n(); ++i) y.push_back(sample.deriv(chart.var_z(i), 0));
            std::size_t expect = static_cast<std::size_t>(fam.k) * active_indices(fam, y).size();
            record(c, rank == expect,
                   "instance " + std::to_string(done) + ": rank " + std::to_string(rank) +
                       " expected " + std::to_string(expect));
        } catch (const SingularFrameError&) {
            continue;  // frame degenerate at the sample, redraw
        }
        ++done;
    }
    return c;
}

}  // namespace checks

struct VerifyOptions {
    std::uint64_t seed = 12345;
    int scale = 1;  // 1 = small, 3 = medium
    bool corrupt_nabla = false;
};

inline SuiteReport verify_jetalg(const VerifyOptions& opt) {
    Rng rng(opt.seed ^ 0x6a6574616c67ull);
    long base = 40 * opt.scale;
    SuiteReport r("jetalg");
    r.checks.push_back(checks::derivation_rule(rng, base));
    r.checks.push_back(checks::weight_bookkeeping(rng, base));
    r.checks.push_back(checks::curve_compatibility(rng, base));
    r.checks.push_back(checks::rescale_equivariance(rng, base));
    r.checks.push_back(checks::reparam_right_action(rng, base));
    r.checks.push_back(checks::invariance_sensitivity());
    return r;
}

inline SuiteReport verify_logconn(const VerifyOptions& opt) {
    Rng rng(opt.seed ^ 0x6c6f67636f6e6eull);
    long base = 50 * opt.scale;
    SuiteReport r("logconn");
    r.checks.push_back(checks::nabla_vanishing(rng, 4 * base, opt.corrupt_nabla));
    r.checks.push_back(checks::nabla_dual_route(rng, base));
    r.checks.push_back(checks::leibniz_identity(rng, 4 * base));
    r.checks.push_back(checks::pole_order_bound(rng, base));
    r.checks.push_back(checks::wronskian_alternating(rng, base));
    r.checks.push_back(checks::nonlog_identity(rng, 2 * base));
    r.checks.push_back(checks::wronskian_covariance(rng, 2 * base));
    r.checks.push_back(checks::kjet_dependence(rng, base));
    r.checks.push_back(checks::basis_conversion_inverse(5));
    r.checks.push_back(checks::basis_series_oracle(rng, base, 5));
    return r;
}

inline SuiteReport verify_tower(const VerifyOptions& opt) {
    Rng rng(opt.seed ^ 0x746f776572ull);
    SuiteReport r("tower");
    r.checks.push_back(checks::chart_identity(rng, 2 * opt.scale, false));
    r.checks.push_back(checks::omega_alternating(rng, 10 * opt.scale));
    r.checks.push_back(checks::omega_matches_wronskian(rng, 10 * opt.scale));
    r.checks.push_back(checks::level_discipline(rng, 20 * opt.scale));
    return r;
}

inline SuiteReport verify_fermat(const VerifyOptions& opt) {
    Rng rng(opt.seed ^ 0x6665726d6174ull);
    SuiteReport r("fermat");
    r.checks.push_back(checks::fermat_factorization(rng, 10 * opt.scale));
    r.checks.push_back(checks::tautological_system(rng, 10 * opt.scale));
    r.checks.push_back(checks::perturbed_graph_sensitivity(rng, 3 * opt.scale));
    r.checks.push_back(checks::plucker_identities(rng, 5 * opt.scale));
    r.checks.push_back(checks::cramer_identity(rng, 5 * opt.scale));
    r.checks.push_back(checks::rank_claim(rng, 3 * opt.scale));
    return r;
}

inline std::vector<SuiteReport> verify_all(const VerifyOptions& opt) {
    return {verify_jetalg(opt), verify_logconn(opt), verify_tower(opt), verify_fermat(opt)};
}

}  // namespace logjet

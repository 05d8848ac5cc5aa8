#pragma once

// Fermat-type deformation families F(a) = sum_{|I|=delta} a_I tau^{(r+k)I}
// studied in one affine chart of the total space of the twisting bundle:
// coordinates (t, z_1..z_n) with divisor t = 0 and tautological section t.
// Provides the tau^{rI} factorization of the connection derivatives, the
// graph-substitution residual of the tautological system, the Pluecker
// determinants, the Cramer-style linear solves ell^p_I, and the rank probe
// for the induced linear map on coefficient spaces.

#include "logjet/linalg.hpp"
#include "logjet/logconn.hpp"
#include "logjet/parse.hpp"

#include <functional>
#include <sstream>

namespace logjet {

struct SingularFrameError : std::runtime_error {
    SingularFrameError() : std::runtime_error("frame Wronskian determinant vanishes identically") {}
};

struct FamilyFormatError : std::runtime_error {
    explicit FamilyFormatError(const std::string& what)
        : std::runtime_error("family file: " + what) {}
};

// Affine chart (t, z_1..z_n) of the total space, with log pair sigma = t.
class TotalChart {
  public:
    explicit TotalChart(int n) : n_(n) {
        std::vector<std::string> names{"t"};
        std::vector<std::string> base;
        for (int i = 1; i <= n; ++i) {
            names.push_back("z" + std::to_string(i));
            base.push_back("z" + std::to_string(i));
        }
        pool_ = make_vars(names);
        y_pool_ = make_vars(base);
        pair_ = std::make_shared<LogPair>(pool_, Poly::var(pool_, 0));
    }

    int n() const { return n_; }
    const VarsPtr& pool() const { return pool_; }
    const VarsPtr& y_pool() const { return y_pool_; }
    const LogPair& pair() const { return *pair_; }
    std::size_t var_t() const { return 0; }
    std::size_t var_z(int i) const { return static_cast<std::size_t>(i); }  // 1-based

  private:
    int n_;
    VarsPtr pool_;
    VarsPtr y_pool_;
    std::shared_ptr<LogPair> pair_;
};

struct FermatFamily {
    long n = 0, N = 0, delta = 0, epsilon = 0, r = 0, k = 0;
    VarsPtr y_pool;                         // z_1..z_n
    std::vector<Poly> tau;                  // N+1 sections over y_pool
    std::map<MultiIndex, Poly, GrlexLess> a;  // keys |I| = delta over N+1 slots

    void validate() const {
        if (n < 1) throw FamilyFormatError("n >= 1 required");
        if (N < n) throw FamilyFormatError("N >= n required");
        if (delta < 1 || r < 1 || k < 1 || epsilon < 1)
            throw FamilyFormatError("delta, epsilon, r, k >= 1 required");
        if (static_cast<long>(tau.size()) != N + 1)
            throw FamilyFormatError("tau must list N+1 sections");
        for (auto& [I, aI] : a) {
            if (static_cast<long>(I.degree()) != delta)
                throw FamilyFormatError("coefficient index with |I| != delta");
            if (I.width() > static_cast<std::size_t>(N + 1))
                throw FamilyFormatError("coefficient index has more than N+1 slots");
            if (static_cast<long>(aI.total_degree()) > epsilon)
                throw FamilyFormatError("coefficient of degree above epsilon");
        }
    }
};

// all multi-indices over `slots` entries with |I| = total
inline std::vector<MultiIndex> enumerate_indices(int slots, long total) {
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(slots, 0);
    std::function<void(int, long)> rec = [&](int pos, long rem) {
        if (pos == slots - 1) {
            cur[pos] = static_cast<unsigned>(rem);
            out.emplace_back(cur);
            return;
        }
        for (long v = 0; v <= rem; ++v) {
            cur[pos] = static_cast<unsigned>(v);
            rec(pos + 1, rem - v);
        }
    };
    if (slots >= 1 && total >= 0) rec(0, total);
    return out;
}

// tau^{c I} as a polynomial over the base pool
inline Poly tau_power(const std::vector<Poly>& tau, const MultiIndex& I, unsigned long c) {
    Poly acc(tau.at(0).vars(), Rat(1));
    for (std::size_t j = 0; j < tau.size(); ++j)
        if (I[j]) acc *= tau[j].pow(static_cast<unsigned long>(I[j]) * c);
    return acc;
}

// F(a) = sum a_I tau^{(r+k)I}
inline Poly build_F(const FermatFamily& fam) {
    Poly acc(fam.y_pool);
    for (auto& [I, aI] : fam.a)
        acc += aI * tau_power(fam.tau, I, static_cast<unsigned long>(fam.r + fam.k));
    return acc;
}

// nabla^j (a_I tau^{(r+k)I}) in the pair (total chart, sigma = t), with
// every coefficient exactly divided by tau^{rI}. A NotDivisible escape
// falsifies the factorization, so it is left to propagate.
inline LogJetPoly nabla_factor(int j, const MultiIndex& I, const Poly& a_I,
                               const std::vector<Poly>& tau, long r, long k,
                               const TotalChart& chart) {
    if (j < 1 || j > k) throw std::logic_error("nabla_factor: 1 <= j <= k required");
    Poly section = (a_I * tau_power(tau, I, static_cast<unsigned long>(r + k)))
                       .extend_to(chart.pool());
    LogJetPoly nab = nabla_recursive(j, section, chart.pair());
    Poly divisor = tau_power(tau, I, static_cast<unsigned long>(r)).extend_to(chart.pool());
    JetPoly body = nab.body_at_pole(j);
    JetPoly quotient(body.base());
    for (auto& [m, c] : body.terms())
        quotient.add_term(m, RatFunc(exact_divide(c.as_poly(), divisor)));
    return LogJetPoly(chart.pair(), quotient, j);
}

inline LogJetPoly nabla_factor(int j, const MultiIndex& I, const FermatFamily& fam,
                               const TotalChart& chart) {
    auto it = fam.a.find(I);
    if (it == fam.a.end()) throw std::logic_error("nabla_factor: index has no coefficient");
    return nabla_factor(j, I, it->second, fam.tau, fam.r, fam.k, chart);
}

// d^p of a base polynomial as a jet polynomial (used for graph jets)
inline JetPoly base_derivative(const Poly& g, int p) {
    return total_derive(JetPoly::of_base(g), p);
}

// Substitutes the graph t := g(z), D^p t := d^p g into a jet polynomial
// over the total chart. The result no longer involves t or its jets.
inline JetPoly graph_substitute(const JetPoly& body, const Poly& g, const TotalChart& chart) {
    std::size_t nb = body.nbase();
    std::size_t tvar = chart.var_t();
    Poly glift = g.extend_to(chart.pool());
    std::vector<JetPoly> dg;  // dg[p-1] = d^p g, filled lazily
    auto dg_at = [&](int p) -> const JetPoly& {
        while (static_cast<int>(dg.size()) < p)
            dg.push_back(base_derivative(glift, static_cast<int>(dg.size()) + 1));
        return dg[static_cast<std::size_t>(p - 1)];
    };
    JetPoly acc(body.base());
    for (auto& [m, c] : body.terms()) {
        // substitute t := g in the coefficient
        Poly cp = c.as_poly();
        Poly csub(chart.pool());
        for (auto& [cm, cc] : cp.terms()) {
            unsigned e = cm[tvar];
            Poly piece = Poly::monomial(chart.pool(), cm.with(tvar, -static_cast<int>(e)), cc);
            if (e) piece *= glift.pow(e);
            csub += piece;
        }
        JetPoly term = JetPoly::of_base(csub);
        // substitute jets of t, keep jets of the z's
        MultiIndex kept;
        for (std::size_t id = 0; id < m.width(); ++id) {
            if (!m[id]) continue;
            JetVar v = jet_var_of_id(nb, id);
            if (v.coord == tvar) {
                JetPoly pw = dg_at(v.order);
                for (unsigned e = 0; e < m[id]; ++e) term *= pw;
            } else {
                kept = kept.with(id, static_cast<int>(m[id]));
            }
        }
        JetPoly mono(body.base());
        mono.add_term(kept, RatFunc(chart.pool(), Rat(1)));
        acc += term * mono;
    }
    return acc;
}

// nabla^j (t - sigma_a(z)) restricted to jets of curves in the graph
// t = sigma_a(z); must vanish identically. `perturb` shifts the graph and
// is the negative control for the sensitivity of this test.
inline JetPoly system_residual(const FermatFamily& fam, int j, const TotalChart& chart,
                               const Poly& perturb = Poly()) {
    Poly sig_a = build_F(fam);
    Poly section = Poly::var(chart.pool(), chart.var_t()) - sig_a.extend_to(chart.pool());
    LogJetPoly nab = nabla_recursive(j, section, chart.pair());
    Poly graph = sig_a.extend_to(chart.pool());
    if (!perturb.is_zero()) graph += perturb.extend_to(chart.pool());
    return graph_substitute(nab.body_at_pole(j), graph, chart);
}

// k x k Pluecker determinant det(nabla^j_{I_q} a_{I_q}).
inline LogJetPoly plucker_omega(const std::vector<MultiIndex>& indices, const FermatFamily& fam,
                                const TotalChart& chart) {
    std::size_t k = static_cast<std::size_t>(fam.k);
    if (indices.size() != k) throw std::logic_error("plucker_omega: need k indices");
    Matrix<LogJetPoly> m;
    m.reserve(k);
    for (std::size_t j = 1; j <= k; ++j) {
        std::vector<LogJetPoly> row;
        row.reserve(k);
        for (auto& I : indices) row.push_back(nabla_factor(static_cast<int>(j), I, fam, chart));
        m.push_back(std::move(row));
    }
    LogJetPoly zero(chart.pair(), JetPoly(chart.pool()), 0);
    return ring_det(m, zero);
}

// Symbolic regular jet through the chart: the last base coordinate moves
// as z_n + t, every other coordinate (including the fiber coordinate t)
// carries free derivative parameters. Basepoint coordinates are symbolic.
struct SymbolicJet {
    VarsPtr params;
    JetValuation valuation;
};

inline SymbolicJet make_symbolic_jet(const TotalChart& chart, int k) {
    int n = chart.n();
    std::vector<std::string> names;
    names.push_back("t0");
    for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
    for (int j = 1; j <= k; ++j) names.push_back("wt_" + std::to_string(j));
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= k; ++j)
            names.push_back("w" + std::to_string(i) + "_" + std::to_string(j));
    VarsPtr params = make_vars(names);
    auto var = [&](const std::string& nm) { return RatFunc(Poly::var(params, params->index_of(nm))); };

    JetValuation val;
    val.params = params;
    val.base_vals.resize(n + 1, RatFunc(params, Rat(0)));
    val.jet_vals.assign(n + 1, {});
    val.base_vals[chart.var_t()] = var("t0");
    for (int i = 1; i <= n; ++i) val.base_vals[chart.var_z(i)] = var("y" + std::to_string(i));
    for (int j = 1; j <= k; ++j)
        val.jet_vals[chart.var_t()].push_back(var("wt_" + std::to_string(j)));
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= k; ++j)
            val.jet_vals[chart.var_z(i)].push_back(var("w" + std::to_string(i) + "_" + std::to_string(j)));
    val.jet_vals[chart.var_z(n)].push_back(RatFunc(params, Rat(1)));
    for (int j = 2; j <= k; ++j) val.jet_vals[chart.var_z(n)].push_back(RatFunc(params, Rat(0)));
    return SymbolicJet{params, std::move(val)};
}

// frame matrix G(j,i) = nabla^j(b_i) evaluated along the jet
inline Matrix<RatFunc> frame_matrix(const std::vector<Poly>& frame, const TotalChart& chart,
                                    const JetValuation& val) {
    std::size_t k = frame.size();
    Matrix<RatFunc> g(k, std::vector<RatFunc>(k));
    for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
            LogJetPoly nb =
                nabla_recursive(static_cast<int>(j), frame[i].extend_to(chart.pool()), chart.pair());
            g[j - 1][i] = nb.evaluate_at(val);
        }
    return g;
}

// Cramer solve for ell^1_I(a_I)..ell^k_I(a_I): G ell = (nabla^j_I a_I)_j.
inline std::vector<RatFunc> ell_solve(const std::vector<Poly>& frame, const MultiIndex& I,
                                      const Poly& a_I, const FermatFamily& fam,
                                      const TotalChart& chart, const SymbolicJet& jet) {
    if (static_cast<long>(frame.size()) != fam.k)
        throw std::logic_error("ell_solve: frame must have k sections");
    Matrix<RatFunc> g = frame_matrix(frame, chart, jet.valuation);
    RatFunc det_g = ring_det(g, RatFunc(jet.params, Rat(0)));
    if (det_g.is_zero()) throw SingularFrameError{};
    std::vector<RatFunc> rhs;
    rhs.reserve(frame.size());
    for (int j = 1; j <= fam.k; ++j)
        rhs.push_back(nabla_factor(j, I, a_I, fam.tau, fam.r, fam.k, chart).evaluate_at(jet.valuation));
    return cramer_solve(g, rhs, det_g);
}

// det[ell^p_{I_q}(a_{I_q})] - det[nabla^p_{I_q}(a_{I_q})]/det G; must vanish.
inline RatFunc cramer_identity_defect(const std::vector<Poly>& frame,
                                      const std::vector<MultiIndex>& indices,
                                      const FermatFamily& fam, const TotalChart& chart,
                                      const SymbolicJet& jet) {
    std::size_t k = static_cast<std::size_t>(fam.k);
    if (indices.size() != k) throw std::logic_error("cramer_identity_defect: need k indices");
    Matrix<RatFunc> g = frame_matrix(frame, chart, jet.valuation);
    RatFunc det_g = ring_det(g, RatFunc(jet.params, Rat(0)));
    if (det_g.is_zero()) throw SingularFrameError{};
    Matrix<RatFunc> ell(k, std::vector<RatFunc>(k));
    Matrix<RatFunc> vals(k, std::vector<RatFunc>(k));
    for (std::size_t q = 0; q < k; ++q) {
        auto it = fam.a.find(indices[q]);
        if (it == fam.a.end()) throw std::logic_error("cramer_identity_defect: missing coefficient");
        std::vector<RatFunc> rhs;
        for (int j = 1; j <= fam.k; ++j)
            rhs.push_back(nabla_factor(j, indices[q], it->second, fam.tau, fam.r, fam.k, chart)
                              .evaluate_at(jet.valuation));
        std::vector<RatFunc> col = cramer_solve(g, rhs, det_g);
        for (std::size_t p = 0; p < k; ++p) {
            ell[p][q] = col[p];
            vals[p][q] = rhs[p];
        }
    }
    RatFunc zero(jet.params, Rat(0));
    return ring_det(ell, zero) - ring_det(vals, zero) / det_g;
}

// monomial basis of the coefficient space: all monomials of degree <= eps
inline std::vector<MultiIndex> coefficient_basis(int nvars, long eps) {
    std::vector<MultiIndex> out;
    for (long d = 0; d <= eps; ++d)
        for (auto& m : enumerate_indices(nvars, d)) out.push_back(m);
    return out;
}

// indices I with tau^I(y) != 0
inline std::vector<MultiIndex> active_indices(const FermatFamily& fam, const std::vector<Rat>& y) {
    std::vector<Rat> tau_vals;
    tau_vals.reserve(fam.tau.size());
    for (auto& t : fam.tau) tau_vals.push_back(eval(t, y));
    std::vector<MultiIndex> out;
    for (auto& I : enumerate_indices(static_cast<int>(fam.N) + 1, fam.delta)) {
        bool active = true;
        for (std::size_t j = 0; j < tau_vals.size(); ++j)
            if (I[j] && tau_vals[j].is_zero()) active = false;
        if (active) out.push_back(I);
    }
    return out;
}

// ---------------------------------------------------------------------
// Family description files: UTF-8 key-value lines, '#' comments,
// "tau = e0, e1, ..." and one "a[i0,...,iN] = expr" line per coefficient,
// expressions in the polynomial grammar. The printer echoes canonically.
// ---------------------------------------------------------------------

inline FermatFamily parse_family(const std::string& text) {
    FermatFamily fam;
    std::map<std::string, std::string> scalars;
    std::vector<std::pair<std::vector<unsigned>, std::string>> coeff_lines;
    std::string tau_line;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string{};
            std::size_t e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FamilyFormatError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.rfind("a[", 0) == 0) {
            if (key.back() != ']')
                throw FamilyFormatError("line " + std::to_string(lineno) + ": malformed index");
            std::string inner = key.substr(2, key.size() - 3);
            std::vector<unsigned> idx;
            std::istringstream is(inner);
            std::string piece;
            while (std::getline(is, piece, ',')) {
                piece = strip(piece);
                if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
                    throw FamilyFormatError("line " + std::to_string(lineno) +
                                            ": index entries must be non-negative integers");
                idx.push_back(static_cast<unsigned>(std::stoul(piece)));
            }
            coeff_lines.emplace_back(std::move(idx), value);
        } else if (key == "tau") {
            tau_line = value;
        } else {
            scalars[key] = value;
        }
    }

    auto need_long = [&](const std::string& key) {
        auto it = scalars.find(key);
        if (it == scalars.end()) throw FamilyFormatError("missing key '" + key + "'");
        try {
            return std::stol(it->second);
        } catch (...) {
            throw FamilyFormatError("key '" + key + "' is not an integer");
        }
    };
    fam.n = need_long("n");
    fam.N = need_long("N");
    fam.delta = need_long("delta");
    fam.epsilon = need_long("epsilon");
    fam.r = need_long("r");
    fam.k = need_long("k");
    for (auto& [key, value] : scalars)
        if (key != "n" && key != "N" && key != "delta" && key != "epsilon" && key != "r" &&
            key != "k")
            throw FamilyFormatError("unknown key '" + key + "'");

    std::vector<std::string> names;
    for (long i = 1; i <= fam.n; ++i) names.push_back("z" + std::to_string(i));
    fam.y_pool = make_vars(names);

    if (tau_line.empty()) throw FamilyFormatError("missing key 'tau'");
    {
        std::istringstream is(tau_line);
        std::string piece;
        while (std::getline(is, piece, ',')) {
            try {
                fam.tau.push_back(parse_poly(piece, fam.y_pool));
            } catch (const ParseError& e) {
                throw FamilyFormatError(std::string("tau entry: ") + e.what());
            }
        }
    }
    for (auto& [idx, expr] : coeff_lines) {
        if (idx.size() != static_cast<std::size_t>(fam.N + 1))
            throw FamilyFormatError("coefficient index must have N+1 entries");
        Poly p;
        try {
            p = parse_poly(expr, fam.y_pool);
        } catch (const ParseError& e) {
            throw FamilyFormatError(std::string("coefficient entry: ") + e.what());
        }
        MultiIndex I{std::vector<unsigned>(idx)};
        if (fam.a.count(I)) throw FamilyFormatError("duplicate coefficient index");
        if (!p.is_zero()) fam.a.emplace(I, std::move(p));
    }
    fam.validate();
    if (fam.a.empty()) throw FamilyFormatError("family has no nonzero coefficient");
    return fam;
}

inline std::string family_to_string(const FermatFamily& fam) {
    std::ostringstream os;
    os << "n = " << fam.n << "\n";
    os << "N = " << fam.N << "\n";
    os << "delta = " << fam.delta << "\n";
    os << "epsilon = " << fam.epsilon << "\n";
    os << "r = " << fam.r << "\n";
    os << "k = " << fam.k << "\n";
    os << "tau = ";
    for (std::size_t j = 0; j < fam.tau.size(); ++j) {
        if (j) os << ", ";
        os << to_string(fam.tau[j]);
    }
    os << "\n";
    for (auto& [I, aI] : fam.a) {
        os << "a[";
        for (long j = 0; j <= fam.N; ++j) {
            if (j) os << ",";
            os << I[static_cast<std::size_t>(j)];
        }
        os << "] = " << to_string(aI) << "\n";
    }
    return os.str();
}

// Exact rank of a -> (ell^1, ..., ell^k) restricted to the active index
// set at the basepoint of `sample`. The map is block diagonal across I,
// each block assembled on the monomial basis of the coefficient space.
inline std::size_t rank_probe(const FermatFamily& fam, const TotalChart& chart,
                              const std::vector<Poly>& frame, const CurveJet& sample) {
    std::size_t k = static_cast<std::size_t>(fam.k);
    Matrix<Rat> g(k, std::vector<Rat>(k));
    for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t i = 0; i < k; ++i)
            g[j - 1][i] =
                nabla_recursive(static_cast<int>(j), frame[i].extend_to(chart.pool()), chart.pair())
                    .pullback(sample);
    if (rank_exact(g) != k) throw SingularFrameError{};

    std::vector<Rat> y;
    for (int i = 1; i <= chart.n(); ++i) y.push_back(sample.deriv(chart.var_z(i), 0));
    std::vector<MultiIndex> act = active_indices(fam, y);
    std::vector<MultiIndex> basis = coefficient_basis(static_cast<int>(fam.n), fam.epsilon);

    // block-diagonal assembly: rows (I, p), columns (I, basis monomial)
    Matrix<Rat> full(k * act.size(), std::vector<Rat>(act.size() * basis.size(), Rat(0)));
    for (std::size_t bi = 0; bi < act.size(); ++bi) {
        for (std::size_t c = 0; c < basis.size(); ++c) {
            Poly mono = Poly::monomial(fam.y_pool, basis[c], Rat(1));
            std::vector<Rat> rhs;
            rhs.reserve(k);
            for (int j = 1; j <= fam.k; ++j)
                rhs.push_back(nabla_factor(j, act[bi], mono, fam.tau, fam.r, fam.k, chart)
                                  .pullback(sample));
            std::vector<Rat> ell = solve_exact(g, rhs);
            for (std::size_t p = 0; p < k; ++p)
                full[bi * k + p][bi * basis.size() + c] = ell[p];
        }
    }
    return rank_exact(std::move(full));
}

}  // namespace logjet

// Batch CLI over the exact jet-calculus library. Reports go to stdout,
// diagnostics to stderr. Exit codes: 0 success, 1 identity defect or
// failed check, 2 usage / parse / file errors.

#include "logjet/logjet.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("LOGJET_SEED");
    if (!env || !*env) return fallback;
    try {
        return std::stoull(env);
    } catch (...) {
        std::cerr << "warning: ignoring malformed LOGJET_SEED\n";
        return fallback;
    }
}

int print_reports(const std::vector<logjet::SuiteReport>& reports) {
    bool all_ok = true;
    for (auto& suite : reports) {
        for (auto& check : suite.checks) {
            std::cout << check.name << ": " << check.passed << "/" << check.total
                      << (check.ok() ? " ok" : " FAIL") << "\n";
            if (!check.ok()) {
                all_ok = false;
                std::cerr << "first failure: " << check.name << " (" << check.detail << ")\n";
            }
        }
    }
    std::cout << (all_ok ? "verify: all identities hold" : "verify: FAILURES above") << "\n";
    return all_ok ? 0 : 1;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& size,
               bool corrupt_nabla) {
    logjet::VerifyOptions opt;
    opt.seed = seed;
    opt.scale = (size == "medium") ? 3 : 1;
    opt.corrupt_nabla = corrupt_nabla;
    std::vector<logjet::SuiteReport> reports;
    if (suite == "all") {
        reports = logjet::verify_all(opt);
    } else if (suite == "jetalg") {
        reports = {logjet::verify_jetalg(opt)};
    } else if (suite == "logconn") {
        reports = {logjet::verify_logconn(opt)};
    } else if (suite == "tower") {
        reports = {logjet::verify_tower(opt)};
    } else if (suite == "fermat") {
        reports = {logjet::verify_fermat(opt)};
    } else {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
    }
    return print_reports(reports);
}

int run_wronskian(const std::string& sections_arg, bool log_mode, const std::string& sigma_arg) {
    std::vector<std::string> exprs;
    {
        std::istringstream is(sections_arg);
        std::string piece;
        while (std::getline(is, piece, ',')) exprs.push_back(piece);
    }
    if (exprs.empty()) {
        std::cerr << "no sections given\n";
        return 2;
    }
    try {
        std::vector<std::string> all = exprs;
        if (log_mode) all.push_back(sigma_arg);
        auto [vars, polys] = logjet::parse_polys_auto(all);
        if (log_mode) {
            logjet::Poly sigma = polys.back();
            polys.pop_back();
            logjet::LogPair pair(vars, sigma);
            std::cout << logjet::to_string(logjet::wronskian_log(polys, pair)) << "\n";
        } else {
            std::cout << logjet::to_string(logjet::wronskian_abs(polys)) << "\n";
        }
    } catch (const logjet::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run_nabla(const std::string& sigma_arg, const std::string& section_arg, int k) {
    if (k < 0) {
        std::cerr << "order must be >= 0\n";
        return 2;
    }
    try {
        auto [vars, polys] = logjet::parse_polys_auto({section_arg, sigma_arg});
        logjet::LogPair pair(vars, polys[1]);
        std::cout << logjet::to_string(logjet::nabla(k, polys[0], pair)) << "\n";
    } catch (const logjet::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run_tower(int n, int k, const std::string& f_arg, int j, std::uint64_t seed, long draws) {
    try {
        logjet::TowerChart chart(n, k);
        logjet::Poly f = logjet::parse_poly(f_arg, chart.base_pool());
        std::cout << "nabla^" << j << " = " << logjet::to_string(logjet::nabla_chart(chart, j, f))
                  << "\n";
        logjet::Rng rng(seed);
        for (long d = 0; d < draws; ++d) {
            auto params = logjet::checks::random_gamma_params(rng, chart);
            logjet::Rat defect = logjet::chart_identity_defect(chart, f, j, params);
            std::cout << "draw " << d << ": defect " << defect.str() << "\n";
            if (!defect.is_zero()) return 1;
        }
    } catch (const logjet::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run_fermat(const std::string& path, const std::string& which, bool perturb_graph) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open family file '" << path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    logjet::FermatFamily fam;
    try {
        fam = logjet::parse_family(buf.str());
    } catch (const logjet::FamilyFormatError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << "family:\n" << logjet::family_to_string(fam);
    logjet::TotalChart chart(static_cast<int>(fam.n));

    bool ok = true;
    auto report = [&](const std::string& name, bool pass) {
        std::cout << "check " << name << ": " << (pass ? "ok" : "FAIL") << "\n";
        ok = ok && pass;
    };
    try {
        if (which == "factor" || which == "all") {
            bool pass = true;
            for (auto& [I, aI] : fam.a)
                for (int j = 1; j <= fam.k; ++j) {
                    try {
                        (void)logjet::nabla_factor(j, I, fam, chart);
                    } catch (const logjet::NotDivisibleError&) {
                        pass = false;
                    }
                }
            report("factor", pass);
        }
        if (which == "system" || which == "all") {
            bool pass = true;
            logjet::Poly perturb;
            if (perturb_graph) perturb = logjet::checks::graph_perturbation(fam);
            for (int j = 1; j <= fam.k; ++j)
                pass = pass && logjet::system_residual(fam, j, chart, perturb).is_zero();
            report(perturb_graph ? "system (perturbed graph)" : "system", pass);
        }
        if (which == "plucker" || which == "all") {
            bool pass = true;
            if (static_cast<long>(fam.a.size()) >= fam.k) {
                std::vector<logjet::MultiIndex> idx;
                for (auto& [I, aI] : fam.a) {
                    idx.push_back(I);
                    if (static_cast<long>(idx.size()) == fam.k) break;
                }
                logjet::LogJetPoly det = logjet::plucker_omega(idx, fam, chart);
                logjet::MultiIndex total;
                std::vector<logjet::Poly> sections;
                for (auto& I : idx) {
                    total = total.plus(I);
                    sections.push_back(
                        (fam.a.at(I) * logjet::tau_power(fam.tau, I,
                                                         static_cast<unsigned long>(fam.r + fam.k)))
                            .extend_to(chart.pool()));
                }
                logjet::Poly tau_total =
                    logjet::tau_power(fam.tau, total, static_cast<unsigned long>(fam.r))
                        .extend_to(chart.pool());
                logjet::LogJetPoly lhs(chart.pair(),
                                       det.body_at_pole(det.pole()).scaled(tau_total), det.pole());
                pass = lhs == logjet::wronskian_log(sections, chart.pair());
            }
            report("plucker", pass);
        }
        if (which == "rank" || which == "all") {
            logjet::Rng rng(seed_from_env(kDefaultSeed));
            bool pass = false;
            for (int attempt = 0; attempt < 20 && !pass; ++attempt) {
                auto sample = logjet::checks::random_total_sample(rng, chart,
                                                                  static_cast<int>(fam.k));
                try {
                    std::size_t rank = logjet::rank_probe(
                        fam, chart, logjet::checks::random_frame(rng, fam), sample);
                    std::vector<logjet::Rat> y;
                    for (int i = 1; i <= chart.n(); ++i)
                        y.push_back(sample.deriv(chart.var_z(i), 0));
                    pass = rank == static_cast<std::size_t>(fam.k) *
                                       logjet::active_indices(fam, y).size();
                } catch (const logjet::SingularFrameError&) {
                    continue;
                }
            }
            report("rank", pass);
        }
    } catch (const std::exception& e) {
        std::cerr << "fermat check error: " << e.what() << "\n";
        return 1;
    }
    return ok ? 0 : 1;
}

int run_bounds(long n_from, long n_to, const std::string& format) {
    if (n_from < 2 || n_to < n_from) {
        std::cerr << "need 2 <= from <= to\n";
        return 2;
    }
    auto rows = logjet::bounds_table(n_from, n_to);
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (auto& row : rows) arr.push_back(logjet::bounds_row_json(row));
        std::cout << arr.dump(2) << "\n";
    } else {
        for (auto& row : rows) {
            std::cout << "n=" << row.n << " k=" << row.params.k << " delta="
                      << row.params.delta.get_str() << " k'=" << row.params.k_prime.get_str()
                      << "\n";
            std::cout << "  degree bound " << row.kobayashi.get_str() << " (alternative "
                      << row.alternative.get_str() << ")\n";
            std::cout << "  thresholds: " << row.threshold_kobayashi.get_str() << " (smt "
                      << row.threshold_smt.get_str() << ")"
                      << ", threshold < bound: " << (row.threshold_below_bound ? "yes" : "NO")
                      << "\n";
            std::cout << "  basic inequality: " << (row.basic_ok ? "yes" : "NO")
                      << ", dimension audit: " << (row.audit.pass() ? "yes" : "NO")
                      << ", smt ratio " << row.smt_ratio_at_bound.str() << " < 1: "
                      << (row.smt_ratio_ok ? "yes" : "NO") << "\n";
            std::cout << "  asymptotic ratio vs e^3 n^{2n+6}: " << row.asymptotic_ratio << "\n";
        }
    }
    bool all = true;
    for (auto& row : rows) all = all && row.pass();
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact jet-differential calculus, log Wronskians and effective bounds"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the randomized exact-identity suites");
    std::string suite = "all";
    std::uint64_t seed = seed_from_env(kDefaultSeed);
    std::string size = "small";
    bool corrupt_nabla = false;
    verify->add_option("--suite", suite, "jetalg|logconn|tower|fermat|all")
        ->check(CLI::IsMember({"jetalg", "logconn", "tower", "fermat", "all"}));
    verify->add_option("--seed", seed, "RNG seed (default 12345, env LOGJET_SEED)");
    verify->add_option("--size", size, "small|medium")
        ->check(CLI::IsMember({"small", "medium"}));
    verify->add_flag("--corrupt-nabla", corrupt_nabla,
                     "test-harness hook: inject a defect (suite must then fail)");

    auto* wronskian = app.add_subcommand("wronskian", "print an absolute or log Wronskian");
    std::string sections;
    std::string sigma = "1";
    bool log_mode = false;
    wronskian->add_option("--sections", sections, "comma-separated section expressions")
        ->required();
    wronskian->add_flag("--log", log_mode, "compute the logarithmic Wronskian");
    wronskian->add_option("--sigma", sigma, "divisor equation (with --log)");

    auto* nabla_cmd = app.add_subcommand("nabla", "print nabla^k of a section");
    std::string nabla_sigma, nabla_section;
    int nabla_k = 1;
    nabla_cmd->add_option("--sigma", nabla_sigma, "divisor equation")->required();
    nabla_cmd->add_option("--section", nabla_section, "section expression")->required();
    nabla_cmd->add_option("--k", nabla_k, "connection order");

    auto* tower_cmd = app.add_subcommand("tower", "chart connection and chart-identity draws");
    int tower_n = 2, tower_k = 2, tower_j = 1;
    long tower_draws = 5;
    std::string tower_f;
    tower_cmd->add_option("--n", tower_n, "base dimension");
    tower_cmd->add_option("--k", tower_k, "tower height");
    tower_cmd->add_option("--f", tower_f, "base function")->required();
    tower_cmd->add_option("--j", tower_j, "derivative order");
    tower_cmd->add_option("--draws", tower_draws, "random identity draws");

    auto* fermat_cmd = app.add_subcommand("fermat", "checks for a family description file");
    std::string family_file, fermat_checks = "all";
    bool perturb_graph = false;
    fermat_cmd->add_option("file", family_file, "family description file")->required();
    fermat_cmd->add_option("--checks", fermat_checks, "factor|system|plucker|rank|all")
        ->check(CLI::IsMember({"factor", "system", "plucker", "rank", "all"}));
    fermat_cmd->add_flag("--perturb-graph", perturb_graph,
                         "negative control: shift the graph substitution");

    auto* bounds_cmd = app.add_subcommand("bounds", "effective-bound table");
    long n_from = 2, n_to = 2;
    std::string format = "text";
    bounds_cmd->add_option("--from", n_from, "first dimension (>= 2)");
    bounds_cmd->add_option("--to", n_to, "last dimension");
    bounds_cmd->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify)) return run_verify(suite, seed, size, corrupt_nabla);
        if (app.got_subcommand(wronskian)) return run_wronskian(sections, log_mode, sigma);
        if (app.got_subcommand(nabla_cmd)) return run_nabla(nabla_sigma, nabla_section, nabla_k);
        if (app.got_subcommand(tower_cmd))
            return run_tower(tower_n, tower_k, tower_f, tower_j, seed, tower_draws);
        if (app.got_subcommand(fermat_cmd))
            return run_fermat(family_file, fermat_checks, perturb_graph);
        if (app.got_subcommand(bounds_cmd)) return run_bounds(n_from, n_to, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

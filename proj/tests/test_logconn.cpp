#include "logjet/logconn.hpp"
#include "logjet/rng.hpp"
#include "logjet/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace logjet;

TEST_CASE("higher order log connection basics") {
    auto vars = make_vars({"z"});
    Poly z = Poly::var(vars, 0), one(vars, Rat(1));
    LogPair pair(vars, z);

    SECTION("nabla^k annihilates sigma") {
        for (int k = 1; k <= 4; ++k) CHECK(nabla(k, z, pair).is_zero());
    }

    SECTION("unit sigma degenerates to the plain derivative") {
        LogPair trivial(vars, one);
        Poly s = z * z + z.scaled(Rat(3));
        for (int k = 0; k <= 3; ++k) {
            LogJetPoly nk = nabla(k, s, trivial);
            CHECK(nk.pole() == 0);
            CHECK(nk.body() == total_derive(JetPoly::of_base(s), k));
        }
    }

    SECTION("nabla^1(1) = -d^1 z / z for sigma = z") {
        LogJetPoly n1 = nabla(1, one, pair);
        CHECK(n1.pole() == 1);
        CHECK(n1.body() == -JetPoly::jet_var(vars, 0, 1));
        CHECK(to_string(n1) == "(-D1z)/z");
    }

    SECTION("nabla^0 is the identity") {
        Poly s = z * z - one;
        LogJetPoly n0 = nabla(0, s, pair);
        CHECK(n0.pole() == 0);
        CHECK(n0.body() == JetPoly::of_base(s));
    }
}

TEST_CASE("closed form and recursion agree on random input") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        VarsPtr vars = checks::small_pool(rng, 3);
        Poly sigma = gen::random_nonzero_poly(rng, vars, 3, 3);
        Poly s = gen::random_poly(rng, vars, 3, 3);
        int k = static_cast<int>(rng.range(1, 4));
        LogPair pair(vars, sigma);
        CHECK(nabla_recursive(k, s, pair).as_jetpoly() == nabla_closed_form(k, s, pair));
    }
}

TEST_CASE("Leibniz identity") {
    auto vars = make_vars({"z"});
    Poly z = Poly::var(vars, 0);
    LogPair pair(vars, z);

    SECTION("worked example: sigma = z, s = z^2, k = 1") {
        // d(z^2) = 2z dz while nabla^1(z^2) + z^2 dz/z = z dz + z dz
        CHECK(leibniz_defect(1, z * z, pair).is_zero());
    }

    SECTION("s = sigma is immediate") { CHECK(leibniz_defect(3, z, pair).is_zero()); }

    SECTION("randomized") {
        Rng rng(9);
        for (int i = 0; i < 40; ++i) {
            VarsPtr pool = checks::small_pool(rng, 3);
            Poly sigma = gen::random_nonzero_poly(rng, pool, 4, 3);
            Poly s = gen::random_poly(rng, pool, 4, 3);
            int k = static_cast<int>(rng.range(1, 4));
            CHECK(leibniz_defect(k, s, LogPair(pool, sigma)).is_zero());
        }
    }
}

TEST_CASE("absolute Wronskians") {
    auto vars = make_vars({"z"});
    Poly z = Poly::var(vars, 0), one(vars, Rat(1));

    CHECK(wronskian_abs({one, z}) == JetPoly::jet_var(vars, 0, 1));
    CHECK(wronskian_abs({z, one}) == -JetPoly::jet_var(vars, 0, 1));

    JetPoly d1 = JetPoly::jet_var(vars, 0, 1);
    CHECK(wronskian_abs({one, z, z * z}) == (d1 * d1 * d1).scaled(Rat(2)));

    SECTION("weight is 1 + 2 + ... + k") {
        auto pool = make_vars({"z1", "z2"});
        Rng rng(3);
        for (int k = 1; k <= 3; ++k) {
            std::vector<Poly> s;
            for (int i = 0; i <= k; ++i) s.push_back(gen::random_poly(rng, pool, 2, 2));
            JetPoly w = wronskian_abs(s);
            if (!w.is_zero()) CHECK(w.weight() == std::optional<long>(k * (k + 1) / 2));
        }
    }
}

TEST_CASE("logarithmic Wronskians") {
    auto vars = make_vars({"z"});
    Poly z = Poly::var(vars, 0), one(vars, Rat(1));
    LogPair pair(vars, z);

    SECTION("W_D(sigma) = 0") { CHECK(wronskian_log({z}, pair).is_zero()); }

    SECTION("W_D(1) = -d^1 z / z for sigma = z") {
        LogJetPoly w = wronskian_log({one}, pair);
        CHECK(w.pole() == 1);
        CHECK(w.body() == -JetPoly::jet_var(vars, 0, 1));
    }

    SECTION("sigma W_D(1) = W_abs(z, 1)") {
        JetPoly lhs = wronskian_log({one}, pair).as_jetpoly().scaled(z);
        CHECK(lhs == wronskian_abs({z, one}));
        CHECK(lhs == -JetPoly::jet_var(vars, 0, 1));
    }

    SECTION("sigma W_D has polynomial coefficients") {
        Rng rng(21);
        for (int i = 0; i < 20; ++i) {
            VarsPtr pool = checks::small_pool(rng, 2);
            Poly sigma = gen::random_nonzero_poly(rng, pool, 3, 2);
            std::vector<Poly> g;
            int k = static_cast<int>(rng.range(1, 3));
            for (int j = 0; j < k; ++j) g.push_back(gen::random_poly(rng, pool, 3, 2));
            CHECK(wronskian_log(g, LogPair(pool, sigma)).pole() <= 1);
        }
    }
}

TEST_CASE("jet basis conversions") {
    SECTION("order one is the identity in both directions") {
        auto ab = log_basis_coeffs(1, BasisDirection::abs_from_log);
        REQUIRE(ab.size() == 1);
        CHECK(ab.begin()->first == MultiIndex::unit(0));
        CHECK(ab.begin()->second == 1);
        auto la = log_basis_coeffs(1, BasisDirection::log_from_abs);
        REQUIRE(la.size() == 1);
        CHECK(la.begin()->second == 1);
    }

    SECTION("order two matches the series oracle by hand") {
        // d^2 z / z = d^2 log z + (d^1 log z)^2
        auto ab = log_basis_coeffs(2, BasisDirection::abs_from_log);
        REQUIRE(ab.size() == 2);
        CHECK(ab.at(MultiIndex::unit(1)) == 1);          // d^2 log z
        CHECK(ab.at(MultiIndex::unit(0, 2)) == 1);       // (d^1 log z)^2
        // d^2 log z = d^2 z / z - (d^1 z / z)^2
        auto la = log_basis_coeffs(2, BasisDirection::log_from_abs);
        REQUIRE(la.size() == 2);
        CHECK(la.at(MultiIndex::unit(1)) == 1);
        CHECK(la.at(MultiIndex::unit(0, 2)) == -1);
    }

    SECTION("weighted support: beta_1 + 2 beta_2 + ... = j") {
        for (int j = 1; j <= 5; ++j) {
            for (auto dir : {BasisDirection::abs_from_log, BasisDirection::log_from_abs}) {
                for (auto& [beta, c] : log_basis_coeffs(j, dir)) {
                    long w = 0;
                    for (std::size_t i = 0; i < beta.width(); ++i)
                        w += static_cast<long>(i + 1) * beta[i];
                    CHECK(w == j);
                }
            }
        }
    }

    SECTION("symbolic mutual inverse up to order five") {
        CheckResult c = checks::basis_conversion_inverse(5);
        CHECK(c.ok());
    }

    SECTION("series oracle on random curves") {
        Rng rng(77);
        CheckResult c = checks::basis_series_oracle(rng, 30, 5);
        CHECK(c.ok());
    }
}

TEST_CASE("restriction to hyperplanes") {
    auto vars = make_vars({"z1", "z2"});
    Poly z1 = Poly::var(vars, 0), z2 = Poly::var(vars, 1);

    SECTION("restriction commutes with the log Wronskian") {
        LogPair pair(vars, z1);
        Poly s = z1 + z2;
        LogJetPoly whole = wronskian_log({s}, pair);
        LogJetPoly restricted = restrict_hyperplane(whole, 1);  // z2 = 0
        LogJetPoly direct = wronskian_log({z1}, LogPair(vars, z1));
        CHECK(restricted == direct);
        CHECK(restricted.is_zero());  // the restricted section is sigma itself
    }

    SECTION("restriction of a z2-free object is the identity") {
        LogPair pair(vars, z1);
        LogJetPoly w = wronskian_log({z1 * z1 + Poly(vars, Rat(1))}, pair);
        CHECK(restrict_hyperplane(w, 1) == w);
    }

    SECTION("non-transverse restriction is rejected") {
        LogPair pair(vars, z2);
        LogJetPoly w = wronskian_log({z1}, pair);
        CHECK_THROWS_AS(restrict_hyperplane(w, 1), NonTransverseError);
    }

    SECTION("restriction commutes on a two-variable random suite") {
        Rng rng(41);
        for (int i = 0; i < 25; ++i) {
            Poly sigma = gen::random_nonzero_poly(rng, vars, 3, 2);
            if (eval_partial(sigma, 1, Rat(0)).is_zero()) continue;
            int k = static_cast<int>(rng.range(1, 2));
            std::vector<Poly> g, g_restricted;
            for (int j = 0; j < k; ++j) {
                g.push_back(gen::random_poly(rng, vars, 3, 2));
                g_restricted.push_back(eval_partial(g.back(), 1, Rat(0)));
            }
            LogPair pair(vars, sigma);
            LogPair pair_r(vars, eval_partial(sigma, 1, Rat(0)));
            CHECK(restrict_hyperplane(wronskian_log(g, pair), 1) ==
                  wronskian_log(g_restricted, pair_r));
        }
    }
}

TEST_CASE("log jet polynomial pole bookkeeping") {
    auto vars = make_vars({"z"});
    Poly z = Poly::var(vars, 0);
    LogPair pair(vars, z);

    // sigma^k nabla^k s stays polynomial even through the generic route
    Rng rng(55);
    for (int i = 0; i < 20; ++i) {
        Poly s = gen::random_poly(rng, vars, 3, 2);
        int k = static_cast<int>(rng.range(1, 3));
        JetPoly generic =
            nabla_closed_form(k, s, pair).scaled(z.pow(static_cast<unsigned long>(k)));
        CHECK(generic.coefficients_polynomial());
    }
}

TEST_CASE("sharp pole bound in adapted coordinates") {
    auto vars = make_vars({"z1", "z2"});
    Poly z1 = Poly::var(vars, 0);
    LogPair pair(vars, z1);

    SECTION("worked example nabla^2(1) = -d^2z/z + 2 (d^1z)^2/z^2") {
        LogJetPoly n2 = nabla(2, Poly(vars, Rat(1)), pair);
        CHECK(sharp_pole_bound_holds(n2, 0));
    }

    SECTION("connection values and log Wronskians satisfy the sharp shape") {
        Rng rng(61);
        for (int i = 0; i < 25; ++i) {
            Poly s = gen::random_poly(rng, vars, 3, 3);
            int k = static_cast<int>(rng.range(1, 4));
            CHECK(sharp_pole_bound_holds(nabla_recursive(k, s, pair), 0));
        }
        std::vector<Poly> g{Poly(vars, Rat(1)), Poly::var(vars, 1)};
        CHECK(sharp_pole_bound_holds(wronskian_log(g, pair), 0));
    }

    SECTION("a hand-built violation is caught") {
        // (d^1 z2) / z1 puts a divisor pole under a transverse jet variable
        LogJetPoly bad(pair, JetPoly::jet_var(vars, 1, 1), 1);
        CHECK_FALSE(sharp_pole_bound_holds(bad, 0));
    }

    SECTION("non-adapted pairs are rejected") {
        LogPair generic(vars, z1 * z1 + Poly(vars, Rat(1)));
        LogJetPoly p(generic, JetPoly::jet_var(vars, 0, 1), 0);
        CHECK_THROWS_AS(sharp_pole_bound_holds(p, 0), std::logic_error);
    }
}

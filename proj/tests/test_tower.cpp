#include "logjet/tower.hpp"
#include "logjet/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace logjet;

TEST_CASE("chart vector fields") {
    TowerChart chart(3, 3);
    auto var = [&](std::size_t id) { return ChartFunction(Poly::var(chart.pool(), id)); };

    SECTION("xi_1 reads off the tangent direction") {
        CHECK(ratfunc_eq(xi_apply(chart, 1, var(chart.var_z(3))),
                         ChartFunction(chart.pool(), Rat(1))));
        CHECK(ratfunc_eq(xi_apply(chart, 1, var(chart.var_z(1))), var(chart.var_level(1, 1))));
        CHECK(ratfunc_eq(xi_apply(chart, 1, var(chart.var_z(2))), var(chart.var_level(2, 1))));
    }

    SECTION("xi_2 shifts level-one coordinates up") {
        CHECK(ratfunc_eq(xi_apply(chart, 2, var(chart.var_level(1, 1))),
                         var(chart.var_level(1, 2))));
    }

    SECTION("level discipline is enforced") {
        CHECK_THROWS_AS(xi_apply(chart, 1, var(chart.var_level(1, 1))), LevelViolationError);
        CHECK_THROWS_AS(xi_apply(chart, 2, var(chart.var_level(1, 2))), LevelViolationError);
    }
}

TEST_CASE("chart connection") {
    TowerChart chart(2, 2);
    Poly z1 = Poly::var(chart.base_pool(), 0), z2 = Poly::var(chart.base_pool(), 1);

    SECTION("direction coordinate") {
        CHECK(ratfunc_eq(nabla_chart(chart, 1, z2), ChartFunction(chart.pool(), Rat(1))));
        CHECK(nabla_chart(chart, 2, z2).is_zero());
    }

    SECTION("transverse coordinates climb the levels") {
        CHECK(ratfunc_eq(nabla_chart(chart, 1, z1),
                         ChartFunction(Poly::var(chart.pool(), chart.var_level(1, 1)))));
        CHECK(ratfunc_eq(nabla_chart(chart, 2, z1),
                         ChartFunction(Poly::var(chart.pool(), chart.var_level(1, 2)))));
    }

    SECTION("constants are annihilated") {
        Poly c(chart.base_pool(), Rat(7));
        for (int j = 1; j <= 2; ++j) CHECK(nabla_chart(chart, j, c).is_zero());
    }

    SECTION("worked product: nabla^2(z1 z2) = 2 z1^(1) + z2 z1^(2)") {
        ChartFunction got = nabla_chart(chart, 2, z1 * z2);
        Poly l1 = Poly::var(chart.pool(), chart.var_level(1, 1));
        Poly l2 = Poly::var(chart.pool(), chart.var_level(1, 2));
        Poly zz2 = Poly::var(chart.pool(), chart.var_z(2));
        CHECK(got.is_polynomial());  // away from the divisor nothing divides
        CHECK(ratfunc_eq(got, ChartFunction(l1.scaled(Rat(2)) + zz2 * l2)));
    }
}

TEST_CASE("gamma curve family") {
    TowerChart chart(2, 2);

    SECTION("w = 0 moves only the direction coordinate") {
        GammaParams params{{Rat(3), Rat(-1)}, {{Rat(0), Rat(0)}}};
        CurveJet jet = gamma_curve(chart, params, 2);
        CHECK(jet.deriv(0, 0) == Rat(3));
        CHECK(jet.deriv(0, 1).is_zero());
        CHECK(jet.deriv(0, 2).is_zero());
        CHECK(jet.deriv(1, 0) == Rat(-1));
        CHECK(jet.deriv(1, 1) == Rat(1));
        CHECK(jet.deriv(1, 2).is_zero());
    }

    SECTION("first derivatives are (w1, 1) at k = 1") {
        TowerChart c1(2, 1);
        GammaParams params{{Rat(0), Rat(0)}, {{Rat(5)}}};
        CurveJet jet = gamma_curve(c1, params, 1);
        CHECK(jet.deriv(0, 1) == Rat(5));
        CHECK(jet.deriv(1, 1) == Rat(1));
    }

    SECTION("Taylor normalization makes gamma''(0) = w^(2)") {
        GammaParams params{{Rat(0), Rat(0)}, {{Rat(2), Rat(7)}}};
        CurveJet jet = gamma_curve(chart, params, 2);
        CHECK(jet.deriv(0, 2) == Rat(7));
        CHECK(jet.deriv(1, 2).is_zero());
    }
}

TEST_CASE("chart identity") {
    SECTION("f = z1, j = 1: both sides are w1") {
        TowerChart chart(2, 1);
        Poly z1 = Poly::var(chart.base_pool(), 0);
        GammaParams params{{Rat(2), Rat(3)}, {{Rat(5)}}};
        CHECK(chart_identity_defect(chart, z1, 1, params).is_zero());
        CHECK(eval_chart(chart, nabla_chart(chart, 1, z1), params) == Rat(5));
    }

    SECTION("f = z_n, j = 1: both sides are 1") {
        TowerChart chart(2, 1);
        Poly z2 = Poly::var(chart.base_pool(), 1);
        GammaParams params{{Rat(1), Rat(4)}, {{Rat(-2)}}};
        CHECK(chart_identity_defect(chart, z2, 1, params).is_zero());
        CHECK(eval_chart(chart, nabla_chart(chart, 1, z2), params) == Rat(1));
    }

    SECTION("f = z1 z2, j = 2, random parameters") {
        TowerChart chart(2, 2);
        Poly f = Poly::var(chart.base_pool(), 0) * Poly::var(chart.base_pool(), 1);
        Rng rng(13);
        for (int i = 0; i < 25; ++i) {
            GammaParams params = checks::random_gamma_params(rng, chart);
            CHECK(chart_identity_defect(chart, f, 2, params).is_zero());
        }
    }

    SECTION("adapted mode is rejected for the identity") {
        TowerChart chart(2, 2, DivisorMode::adapted);
        Poly z1 = Poly::var(chart.base_pool(), 0);
        GammaParams params{{Rat(1), Rat(1)}, {{Rat(1), Rat(0)}}};
        CHECK_THROWS_AS(chart_identity_defect(chart, z1, 1, params), std::logic_error);
    }
}

TEST_CASE("adapted mode produces log poles along z1") {
    TowerChart chart(2, 2, DivisorMode::adapted);
    Poly one(chart.base_pool(), Rat(1));
    ChartFunction n1 = nabla_chart(chart, 1, one);
    // nabla^1(1) = -xi_1(z1)/z1 = -z1^(1)/z1
    Poly z1 = Poly::var(chart.pool(), chart.var_z(1));
    Poly l1 = Poly::var(chart.pool(), chart.var_level(1, 1));
    CHECK(ratfunc_eq(n1, ChartFunction(-l1, z1)));
}

TEST_CASE("chart Wronskian") {
    TowerChart chart(2, 2);
    Poly z1 = Poly::var(chart.base_pool(), 0), z2 = Poly::var(chart.base_pool(), 1);

    SECTION("k = 1, s = z_n gives omega = 1") {
        TowerChart c1(2, 1);
        ChartFunction w = omega_chart(c1, {Poly::var(c1.base_pool(), 1)});
        CHECK(ratfunc_eq(w, ChartFunction(c1.pool(), Rat(1))));
    }

    SECTION("repeated sections vanish") {
        CHECK(omega_chart(chart, {z1, z1}).is_zero());
    }

    SECTION("expanded 2x2 example matches the Wronskian pullback") {
        std::vector<Poly> s{z1, z1 * z1};
        ChartFunction w = omega_chart(chart, s);
        // independent route: pull the log Wronskian (trivial divisor) back
        LogPair pair(chart.base_pool(), Poly(chart.base_pool(), Rat(1)));
        JetPoly wd = wronskian_log(s, pair).as_jetpoly();
        Rng rng(17);
        for (int i = 0; i < 20; ++i) {
            GammaParams params = checks::random_gamma_params(rng, chart);
            CHECK(pullback_curve(wd, gamma_curve(chart, params, 2)) ==
                  eval_chart(chart, w, params));
        }
    }
}

TEST_CASE("exceptional weight sequence") {
    CHECK(gamma_weights(2) == std::vector<long>{2});
    CHECK(gamma_weights(3) == std::vector<long>{3, 5});
    CHECK(gamma_weights(4) == std::vector<long>{4, 7, 9});
    CHECK(gamma_weights(5) == std::vector<long>{5, 9, 12, 14});
    CHECK_THROWS_AS(gamma_weights(1), std::logic_error);
}

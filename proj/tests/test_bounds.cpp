#include <doctest.h>

#include <cmath>

#include "mvcp/bounds.hpp"
#include "mvcp/trees.hpp"

using namespace mvcp;

TEST_SUITE("lambda bound calculators") {
  TEST_CASE("extinction assumption arithmetic") {
    CHECK_FALSE(extinction_assumption(3, DeathProfile({0.0, 1.0})));       // M=2
    CHECK(extinction_assumption(10, DeathProfile({0.5, 0.6, 0.7, 1.0}))); // M=4
    CHECK_FALSE(extinction_assumption(4, DeathProfile({0.0, 0.5, 1.0}))); // M=3
    CHECK_THROWS_AS(extinction_assumption(2, DeathProfile({1.0})), std::domain_error);
  }

  TEST_CASE("extinction bound spot values") {
    auto b = extinction_bound(4, DeathProfile({0.1, 0.2, 1.0}));
    REQUIRE(b.has_value());
    CHECK(*b == doctest::Approx(1.0 / 2.4).epsilon(1e-13));

    auto c = extinction_bound(3, DeathProfile({0.0, 0.0, 0.0, 0.0, 1.0}));
    REQUIRE(c.has_value());
    CHECK(*c == doctest::Approx(0.5).epsilon(1e-13));

    // phi(2) large enough makes the denominator nonpositive.
    CHECK(!extinction_bound(3, DeathProfile({0.9, 0.95, 1.0})).has_value());
  }

  TEST_CASE("per-load bound reduces to the base bound at i = 1") {
    DeathProfile p({0.1, 0.2, 0.6, 1.0});
    for (int d : {3, 4, 7}) {
      auto base = extinction_bound(d, p);
      auto load1 = extinction_bound_for_load(d, p, 1);
      REQUIRE(base.has_value());
      REQUIRE(load1.has_value());
      CHECK(*base == *load1);  // exact, same code path
    }
  }

  TEST_CASE("per-load bound spot value") {
    auto b = extinction_bound_for_load(5, DeathProfile({0.0, 0.1, 0.2, 1.0}), 2);
    REQUIRE(b.has_value());
    CHECK(*b == doctest::Approx(1.0 / 3.4).epsilon(1e-13));
  }

  TEST_CASE("per-load bound grows with the load when phi(2) is positive") {
    DeathProfile p({0.05, 0.1, 0.15, 0.2, 1.0});
    for (int d : {3, 5, 9}) {
      auto base = extinction_bound_for_load(d, p, 1);
      REQUIRE(base.has_value());
      for (int i = 2; i <= p.cutoff() - 1; ++i) {
        auto bi = extinction_bound_for_load(d, p, i);
        if (bi) CHECK(*bi > *base);
      }
    }
    // With phi(i+1) = 0 the bounds tie: not strictly larger.
    DeathProfile zeros({0.0, 0.0, 0.0, 1.0});
    CHECK(*extinction_bound_for_load(5, zeros, 2) ==
          *extinction_bound_for_load(5, zeros, 1));
  }

  TEST_CASE("per-load hypothesis failure") {
    // i = M-1: phi(i+1) = 1, hypothesis (1-phi(1))(d-2) + 1 - M.
    DeathProfile p({0.0, 0.5, 1.0});
    CHECK(!extinction_bound_for_load(3, p, 2).has_value());   // 1 + 1 - 3 < 0
    CHECK(extinction_bound_for_load(5, p, 2).has_value());    // 3 + 1 - 3 > 0
    CHECK_THROWS_AS(extinction_bound_for_load(3, p, 0), std::domain_error);
    CHECK_THROWS_AS(extinction_bound_for_load(3, p, 3), std::domain_error);
  }

  TEST_CASE("survival bound") {
    CHECK(survival_assumption(DeathProfile({0.0, 0.0, 1.0})));
    CHECK(*survival_bound(DeathProfile({0.0, 0.0, 1.0})) == doctest::Approx(1.0));
    CHECK(*survival_bound(DeathProfile({0.2, 0.3, 1.0})) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK_FALSE(survival_assumption(DeathProfile({0.5, 0.5, 1.0})));
    CHECK(!survival_bound(DeathProfile({0.5, 0.5, 1.0})).has_value());
  }

  TEST_CASE("dead branch bound") {
    CHECK(*dead_branch_bound(DeathProfile({0.0, 0.0, 1.0})) == doctest::Approx(1.0));
    CHECK(*dead_branch_bound(DeathProfile({0.1, 0.25, 1.0})) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(!dead_branch_bound(DeathProfile({0.2, 0.5, 1.0})).has_value());
  }

  TEST_CASE("dead branch bound strictly exceeds the extinction bound") {
    for (int d : {3, 4, 5, 6, 10}) {
      for (double phi2 : {0.0, 0.1, 0.2, 0.3}) {
        DeathProfile p({phi2 / 2, phi2, 1.0});
        auto lo = extinction_bound(d, p);
        auto dead = dead_branch_bound(p);
        REQUIRE(lo.has_value());
        REQUIRE(dead.has_value());
        CHECK(*dead > *lo);
      }
    }
  }

  TEST_CASE("bound set gathers everything") {
    BoundSet bs = compute_bounds(4, DeathProfile({0.1, 0.2, 1.0}));
    CHECK(bs.lambda_star_lower.has_value());
    CHECK(bs.lambda_star_upper.has_value());
    CHECK(bs.dead_branch.has_value());
    CHECK_FALSE(bs.extinction_assumption_holds);
    CHECK(bs.survival_assumption_holds);
    CHECK(bs.lambda_i_bounds.count(1) == 1);
    // i = 2 hits the cutoff: phi(3) = 1 and (1-0.1)*2 + 1 - 3 < 0.
    CHECK(bs.lambda_i_bounds.count(2) == 0);
    CHECK(bs.lambda_i_bounds.at(1) == *bs.lambda_star_lower);

    BoundSet wide = compute_bounds(6, DeathProfile({0.1, 0.2, 0.3, 1.0}));
    CHECK(wide.lambda_i_bounds.count(1) == 1);
    CHECK(wide.lambda_i_bounds.count(2) == 1);
    CHECK(wide.lambda_i_bounds.count(3) == 1);
  }
}

TEST_SUITE("rho functional") {
  TEST_CASE("nu_rho values") {
    GraphState g = build_tree(TreeSpec::truncated_regular(3, 2));
    CHECK(nu_rho(g, {0, 1, 2}, 0.5) == 1.0);  // no infections
    g.set_infections(0, 1);
    CHECK(nu_rho(g, {0}, 0.5) == 0.5);
    g.set_infections(1, 2);
    CHECK(nu_rho(g, {0, 1}, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK_THROWS_AS(nu_rho(g, {0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(nu_rho(g, {0}, 1.0), std::domain_error);
    g.remove_vertex(2);
    CHECK_THROWS_AS(nu_rho(g, {2}, 0.5), std::domain_error);
  }
}

namespace {

MvcpConfig cfg_of(double lambda, std::vector<double> phi) {
  return MvcpConfig(lambda, DeathProfile(std::move(phi)));
}

}  // namespace

TEST_SUITE("drift oracle and closed forms") {
  TEST_CASE("single infected interior vertex: generator value") {
    // Root of the 3-regular ball, one infection, lambda=1, phi = 0 below the
    // cutoff, rho = 1/2. Heal gains nu/rho - nu, each of the 3 transmissions
    // loses nu - nu*rho: 0.5 - 0.75 = -0.25.
    GraphState g = build_tree(TreeSpec::truncated_regular(3, 2));
    g.set_infections(0, 1);
    auto cfg = cfg_of(1.0, {0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    DriftReport r = drift_generator(g, cfg, 0.5);
    CHECK(r.drift == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(r.terms.size() == 4);
  }

  TEST_CASE("single infected interior vertex: closed-form value") {
    // The closed form keeps per-vertex intra-set channels even for |A| = 1,
    // so it evaluates to -0.5 on the same parameters; the generator and the
    // closed form agree only on perfect-matching sets (2*E_A = |A|).
    auto cfg = cfg_of(1.0, {0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    CHECK(drift_closed_form_uniform(1, 3, 1, cfg, 0.5) ==
          doctest::Approx(-0.5).epsilon(1e-14));
  }

  TEST_CASE("all-healthy state has zero drift") {
    GraphState g = build_tree(TreeSpec::truncated_regular(3, 2));
    auto cfg = cfg_of(1.0, {0.1, 0.5, 1.0});
    CHECK(drift_generator(g, cfg, 0.5).drift == 0.0);
  }

  TEST_CASE("isolated infected pair: generator equals the closed form") {
    // Two adjacent vertices, one infection each, no other edges: an exact
    // perfect matching, value 0.625 by direct event enumeration.
    GraphState g(2);
    g.add_edge(0, 1);
    g.set_infections(0, 1);
    g.set_infections(1, 1);
    auto cfg = cfg_of(1.0, {0.1, 0.5, 1.0});
    DriftReport gen = drift_generator(g, cfg, 0.5);
    CHECK(gen.drift == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(drift_closed_form_uniform(2, 0, 1, cfg, 0.5) ==
          doctest::Approx(0.625).epsilon(1e-14));
    CHECK(std::abs(gen.drift - drift_closed_form_uniform(2, 0, 1, cfg, 0.5)) <=
          1e-12);
  }

  TEST_CASE("adjacent interior pair in the ball: matched set, 1e-12 agreement") {
    auto spec = TreeSpec::truncated_regular(3, 3);
    GraphState g = build_tree(spec);
    VertexId child = g.neighbors(0)[0];
    g.set_infections(0, 1);
    g.set_infections(child, 1);
    for (double rho : {0.2, 0.5, 0.9}) {
      for (double lambda : {0.5, 1.0, 3.0}) {
        auto cfg = cfg_of(lambda, {0.1, 0.4, 0.7, 1.0});
        double gen = drift_generator(g, cfg, rho).drift;
        double closed = drift_closed_form_uniform(2, 4, 1, cfg, rho);
        CHECK(std::abs(gen - closed) <= 1e-12 * std::max(1.0, std::abs(gen)));
      }
    }
  }

  TEST_CASE("two-class closed form: frozen fixture values") {
    // B = {root, 1 infection}, C = {child, 2 infections} on the 3-regular
    // ball, lambda=1, rho=0.5, phi=(0.1,0.3,0.6,1.0). Exhaustive event
    // enumeration gives 0.225 for the generator; the closed form keeps
    // per-vertex intra-class channels and evaluates to 0.61875.
    GraphState g = build_tree(TreeSpec::truncated_regular(3, 2));
    VertexId child = g.neighbors(0)[0];
    g.set_infections(0, 1);
    g.set_infections(child, 2);
    auto cfg = cfg_of(1.0, {0.1, 0.3, 0.6, 1.0});
    CHECK(drift_generator(g, cfg, 0.5).drift ==
          doctest::Approx(0.225).epsilon(1e-14));
    CHECK(drift_closed_form_two_class(1, 1, 3, 3, 1, 1, 2, cfg, 0.5) ==
          doctest::Approx(0.61875).epsilon(1e-14));
  }

  TEST_CASE("two-class with matched classes agrees with the generator") {
    // B = {root, child0} with 1 infection each, C = {child1, grandchild}
    // with 2 each: both classes are perfect matchings, one cross edge.
    // Hand enumeration gives 0.15234375 on both routes.
    auto spec = TreeSpec::truncated_regular(3, 3);
    GraphState g = build_tree(spec);
    VertexId child0 = g.neighbors(0)[0];
    VertexId child1 = g.neighbors(0)[1];
    VertexId grand = 0;
    for (VertexId nb : g.neighbors(child1))
      if (nb != 0) {
        grand = nb;
        break;
      }
    g.set_infections(0, 1);
    g.set_infections(child0, 1);
    g.set_infections(child1, 2);
    g.set_infections(grand, 2);
    auto cfg = cfg_of(1.0, {0.1, 0.3, 0.6, 1.0});

    double gen = drift_generator(g, cfg, 0.5).drift;
    double closed = drift_closed_form_two_class(2, 2, 4, 4, 1, 1, 2, cfg, 0.5);
    CHECK(gen == doctest::Approx(0.15234375).epsilon(1e-14));
    CHECK(closed == doctest::Approx(0.15234375).epsilon(1e-14));
    CHECK(std::abs(gen - closed) <= 1e-12);

    // Agreement holds across rho and lambda on the same matched fixture.
    for (double rho : {0.15, 0.5, 0.85}) {
      for (double lambda : {0.3, 2.0}) {
        auto c2 = cfg_of(lambda, {0.1, 0.3, 0.6, 1.0});
        double a = drift_generator(g, c2, rho).drift;
        double b = drift_closed_form_two_class(2, 2, 4, 4, 1, 1, 2, c2, rho);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }

  TEST_CASE("two-class degenerates to the uniform form") {
    auto cfg = cfg_of(1.3, {0.1, 0.3, 0.6, 1.0});
    // Empty C and no cross edges: exactly the uniform expression for B.
    CHECK(drift_closed_form_two_class(3, 0, 7, 0, 0, 2, 2, cfg, 0.4) ==
          doctest::Approx(drift_closed_form_uniform(3, 7, 2, cfg, 0.4))
              .epsilon(1e-14));
    // Equal loads with no cross edges: uniform with summed sizes.
    CHECK(drift_closed_form_two_class(2, 3, 5, 7, 0, 2, 2, cfg, 0.6) ==
          doctest::Approx(drift_closed_form_uniform(5, 12, 2, cfg, 0.6))
              .epsilon(1e-14));
  }

  TEST_CASE("two-class equal loads with cross edges, against the generator") {
    // Two disjoint infected pairs joined by one cross edge: a path of four
    // vertices, all with load 1, inside the ball. Both classes matched.
    auto spec = TreeSpec::truncated_regular(3, 4);
    GraphState g = build_tree(spec);
    VertexId a = 0;
    VertexId b = g.neighbors(0)[0];
    VertexId c = 0, d_ = 0;
    for (VertexId nb : g.neighbors(b))
      if (nb != a) {
        c = nb;
        break;
      }
    for (VertexId nb : g.neighbors(c))
      if (nb != b) {
        d_ = nb;
        break;
      }
    for (VertexId v : {a, b, c, d_}) g.set_infections(v, 1);
    auto cfg = cfg_of(0.8, {0.05, 0.35, 1.0});
    double gen = drift_generator(g, cfg, 0.45).drift;
    // B = {a,b}, C = {c,d}: N_B = 4, N_C = 4, one cross edge (b,c).
    double closed = drift_closed_form_two_class(2, 2, 4, 4, 1, 1, 1, cfg, 0.45);
    CHECK(std::abs(gen - closed) <= 1e-12 * std::max(1.0, std::abs(gen)));
  }

  TEST_CASE("parameter validation") {
    auto cfg = cfg_of(1.0, {0.1, 0.5, 1.0});
    CHECK_THROWS_AS(drift_closed_form_uniform(1, 3, 0, cfg, 0.5), std::domain_error);
    CHECK_THROWS_AS(drift_closed_form_uniform(1, 3, 1, cfg, 1.0), std::domain_error);
    CHECK_THROWS_AS(drift_closed_form_uniform(-1, 3, 1, cfg, 0.5), std::domain_error);
    CHECK_THROWS_AS(drift_closed_form_two_class(1, 1, 3, 3, 1, 2, 1, cfg, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(drift_closed_form_two_class(1, 1, 3, 3, 4, 1, 2, cfg, 0.5),
                    std::domain_error);
  }

  TEST_CASE("drift vanishes as rho approaches one") {
    GraphState g = build_tree(TreeSpec::truncated_regular(3, 2));
    g.set_infections(0, 1);
    VertexId child = g.neighbors(0)[0];
    g.set_infections(child, 2);
    auto cfg = cfg_of(2.0, {0.1, 0.3, 0.6, 1.0});
    CHECK(std::abs(drift_generator(g, cfg, 1.0 - 1e-9).drift) < 1e-6);
  }

  TEST_CASE("closed-form sign flips at the algebraic lambda root") {
    // For connected A with N_A = d|A| - 2(|A|-1) and load 1, the drift is
    // zero at lambda = (|A|/rho) / (|A|*Bq + 2(1-phi1)) where
    // Bq = (1-phi1)(d-2) + (1-phi2) - phi2/rho, approaching 1/(rho*Bq) as
    // |A| grows. Bisection on the closed form must find the same root.
    const int d = 3;
    const double rho = 0.5, phi1 = 0.1, phi2 = 0.2;
    auto mk = [&](double lambda) { return cfg_of(lambda, {phi1, phi2, 1.0}); };
    for (std::int64_t a_size : {1, 2, 5, 20, 200}) {
      std::int64_t n_a = d * a_size - 2 * (a_size - 1);
      double bq = (1 - phi1) * (d - 2) + (1 - phi2) - phi2 / rho;
      double expected = (a_size / rho) / (a_size * bq + 2 * (1 - phi1));

      double lo = 1e-6, hi = 50.0;
      // Drift is positive (towards 1) for tiny lambda, negative for large.
      REQUIRE(drift_closed_form_uniform(a_size, n_a, 1, mk(lo), rho) > 0.0);
      REQUIRE(drift_closed_form_uniform(a_size, n_a, 1, mk(hi), rho) < 0.0);
      for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2;
        if (drift_closed_form_uniform(a_size, n_a, 1, mk(mid), rho) > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      CHECK(lo == doctest::Approx(expected).epsilon(1e-9));
      if (a_size == 200)
        CHECK(lo == doctest::Approx(1.0 / (rho * bq)).epsilon(0.02));
    }
  }
}

TEST_SUITE("rho bracket") {
  TEST_CASE("non-decreasing on the grid, supremum at one") {
    for (int d : {3, 5}) {
      for (int i : {1, 2, 3}) {
        DeathProfile p({0.1, 0.2, 0.3, 0.4, 1.0});
        double prev = rho_bracket(0.01, d, p, i);
        for (double rho = 0.02; rho < 0.995; rho += 0.01) {
          double v = rho_bracket(rho, d, p, i);
          CHECK(v >= prev - 1e-12);
          prev = v;
        }
        // Supremum equals the bound denominator (value at rho -> 1).
        double denom = (1.0 - p.phi(1)) * (d - 2) + 1.0 - (i + 1) * p.phi(i + 1);
        RhoOptimum opt = optimize_rho_bracket(d, p, i);
        CHECK(opt.rho > 0.999);
        CHECK(opt.value == doctest::Approx(denom).epsilon(1e-6));
      }
    }
  }
}

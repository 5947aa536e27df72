#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetbrane/errors.hpp"
#include "jetbrane/jet.hpp"
#include "support/random_exprs.hpp"

using namespace jetbrane;

namespace {

const SpaceSpec mech = SpaceSpec::make(1, {"t"});
const SpaceSpec plane = SpaceSpec::make(2, {"x0", "x1"});

const Generator q = Generator::field(0);
const Generator q_t = Generator::field(0, MultiIndex::single(0));
const Generator q_tt = Generator::field(0, MultiIndex::of({0, 0}));
const Generator x0 = Generator::coordinate(0);

Expr gen(const Generator& g) {
    return Expr::from_generator(g);
}

Expr reconstruct(const SpaceSpec& sp, const DivergenceNormalForm& nf) {
    Expr out = nf.core;
    for (int mu = 0; mu < sp.dim; ++mu) {
        out = out + total_derivative(sp, nf.witness[static_cast<size_t>(mu)], mu);
    }
    return out;
}

}  // namespace

TEST_CASE("total derivative: bare field") {
    CHECK(total_derivative(mech, gen(q), 0) == gen(q_t));
}

TEST_CASE("total derivative: chain rule") {
    CHECK(total_derivative(mech, gen(q).pow(2), 0) == rat(2) * (gen(q) * gen(q_t)));
}

TEST_CASE("total derivative: explicit coordinate term") {
    Expr e = gen(x0) * gen(q);
    CHECK(total_derivative(mech, e, 0) == gen(q) + gen(x0) * gen(q_t));
}

TEST_CASE("total derivative: out-of-range coordinate") {
    CHECK_THROWS_AS(total_derivative(mech, gen(q), 1), IndexError);
}

TEST_CASE("multi total derivative basics") {
    CHECK(multi_total_derivative(mech, gen(q), MultiIndex::of({0, 0})) == gen(q_tt));
    Expr e = gen(q) * gen(q_t) + gen(x0);
    CHECK(multi_total_derivative(mech, e, MultiIndex{}) == e);
    Generator A = Generator::field(0);
    CHECK(multi_total_derivative(plane, gen(A), MultiIndex::of({0, 1})) ==
          multi_total_derivative(plane, gen(A), MultiIndex::of({1, 0})));
}

TEST_CASE("total derivatives commute on random expressions") {
    jbtest::Rng rng(21);
    jbtest::GenPool pool = jbtest::GenPool::extended(plane, 2, 1, 2);
    for (int i = 0; i < 100; ++i) {
        Expr e = jbtest::random_expr(rng, pool, 3, 3);
        Expr d01 = total_derivative(plane, total_derivative(plane, e, 0), 1);
        Expr d10 = total_derivative(plane, total_derivative(plane, e, 1), 0);
        CHECK(d01 == d10);
    }
}

TEST_CASE("horizontal differential: mechanics") {
    Expr d = horizontal_differential(mech, gen(q));
    CHECK(d == gen(q_t) * gen(Generator::basis_form(0)));
}

TEST_CASE("horizontal differential: top form goes to zero") {
    Expr top = gen(Generator::basis_form(0)) * gen(Generator::basis_form(1));
    CHECK(horizontal_differential(plane, top).is_zero());
}

TEST_CASE("horizontal differential is nilpotent") {
    jbtest::Rng rng(22);
    jbtest::GenPool pool = jbtest::GenPool::classical(plane, 2, 2, true, true);
    CHECK(horizontal_differential(plane, horizontal_differential(plane, gen(Generator::field(0))))
              .is_zero());
    for (int i = 0; i < 100; ++i) {
        Expr e = jbtest::random_expr(rng, pool, 3, 3);
        CHECK(horizontal_differential(plane, horizontal_differential(plane, e)).is_zero());
    }
}

TEST_CASE("evolutionary prolongation: constant shift") {
    auto Q = EvolutionaryField::make(Parity::Even, {{q, Expr::one()}});
    CHECK(prolong_evolutionary(mech, Q, gen(q_t).pow(2)).is_zero());
}

TEST_CASE("evolutionary prolongation: scaling field") {
    auto Q = EvolutionaryField::make(Parity::Even, {{q, gen(q)}});
    Expr e = gen(q) * gen(q_t);
    CHECK(prolong_evolutionary(mech, Q, e) == rat(2) * e);
}

TEST_CASE("evolutionary prolongation fixes base coordinates") {
    auto Q = EvolutionaryField::make(Parity::Even, {{q, gen(q_t).pow(2) + gen(q)}});
    CHECK(prolong_evolutionary(mech, Q, gen(x0)).is_zero());
}

TEST_CASE("evolutionary prolongation commutes with total derivatives") {
    jbtest::Rng rng(23);
    jbtest::GenPool pool = jbtest::GenPool::classical(plane, 2, 2, true, false);
    for (int i = 0; i < 60; ++i) {
        EvolutionaryField Q = jbtest::random_evolutionary(rng, plane, 2, 2);
        Expr e = jbtest::random_expr(rng, pool, 3, 3);
        for (int mu = 0; mu < plane.dim; ++mu) {
            Expr a = prolong_evolutionary(plane, Q, total_derivative(plane, e, mu));
            Expr b = total_derivative(plane, prolong_evolutionary(plane, Q, e), mu);
            CHECK(a == b);
        }
    }
}

TEST_CASE("generalized prolongation: pure time translation") {
    GeneralizedField X;
    X.P = {Expr::one()};
    CHECK(prolong_generalized(mech, X, gen(q_t)).is_zero());
}

TEST_CASE("generalized prolongation with P=0 reduces to the evolutionary one") {
    jbtest::Rng rng(24);
    jbtest::GenPool pool = jbtest::GenPool::classical(plane, 2, 2, true, true);
    for (int i = 0; i < 40; ++i) {
        EvolutionaryField Q = jbtest::random_evolutionary(rng, plane, 2, 2);
        GeneralizedField X;
        X.P = {Expr::zero(), Expr::zero()};
        for (const auto& [g, e] : Q.characteristics) X.R[g.base] = e;
        Expr w = jbtest::random_expr(rng, pool, 3, 3);
        CHECK(prolong_generalized(plane, X, w) == prolong_evolutionary(plane, Q, w));
    }
}

TEST_CASE("generalized prolongation commutes with the horizontal differential") {
    jbtest::Rng rng(25);
    jbtest::GenPool pool = jbtest::GenPool::classical(plane, 2, 2, true, true);
    jbtest::GenPool coeffs = jbtest::GenPool::classical(plane, 2, 1, true, false);
    for (int i = 0; i < 40; ++i) {
        GeneralizedField X;
        for (int mu = 0; mu < plane.dim; ++mu) {
            X.P.push_back(jbtest::random_parity_expr(rng, coeffs, 2, 2, Parity::Even));
        }
        for (int f = 0; f < 2; ++f) {
            X.R[f] = jbtest::random_parity_expr(rng, coeffs, 2, 2, Parity::Even);
        }
        Expr w = jbtest::random_expr(rng, pool, 3, 2);
        Expr lhs = prolong_generalized(plane, X, horizontal_differential(plane, w));
        Expr rhs = horizontal_differential(plane, prolong_generalized(plane, X, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Euler-Lagrange: free particle") {
    Expr L = rat(1, 2) * gen(q_t).pow(2);
    CHECK(euler_lagrange(mech, L, q, Side::Left) == -gen(q_tt));
}

TEST_CASE("Euler-Lagrange annihilates total derivatives") {
    Expr L = total_derivative(mech, gen(q) * gen(q_t), 0);
    CHECK(euler_lagrange(mech, L, q, Side::Left).is_zero());
}

TEST_CASE("Euler-Lagrange: linear integrand") {
    CHECK(euler_lagrange(mech, gen(q), q, Side::Left) == Expr::one());
}

TEST_CASE("Euler-Lagrange rejects inhomogeneous input") {
    Expr bad = gen(q) + gen(Generator::ghost(0));
    CHECK_THROWS_AS(euler_lagrange(mech, bad, q, Side::Left), GradingError);
}

TEST_CASE("divergence normal form: an exact divergence") {
    Expr L = total_derivative(mech, gen(q).pow(2), 0);
    DivergenceNormalForm nf = divergence_normal_form(mech, L);
    CHECK(nf.core.is_zero());
    CHECK(nf.witness[0] == gen(q).pow(2));
    CHECK(reconstruct(mech, nf) == L);
}

TEST_CASE("divergence normal form: kinetic term has nonzero core") {
    Expr L = rat(1, 2) * gen(q_t).pow(2);
    DivergenceNormalForm nf = divergence_normal_form(mech, L);
    CHECK(!nf.core.is_zero());
    CHECK(reconstruct(mech, nf) == L);
}

TEST_CASE("divergence normal form: zero input") {
    DivergenceNormalForm nf = divergence_normal_form(mech, Expr::zero());
    CHECK(nf.core.is_zero());
    CHECK(nf.witness[0].is_zero());
}

TEST_CASE("divergence normal form: pure coordinate polynomials are divergences") {
    Expr L = gen(x0).pow(3) + rat(2) * gen(Generator::coordinate(1));
    DivergenceNormalForm nf = divergence_normal_form(plane, L);
    CHECK(nf.core.is_zero());
    CHECK(reconstruct(plane, nf) == L);
}

TEST_CASE("divergence normal form: random reconstruction and iff-characterization") {
    jbtest::Rng rng(26);
    jbtest::GenPool pool = jbtest::GenPool::extended(plane, 2, 1, 2);
    for (int i = 0; i < 80; ++i) {
        Expr L = jbtest::random_expr(rng, pool, 3, 3);
        std::vector<Term> kept;
        for (const Term& t : L.terms()) {
            if (term_grading(t).form_degree == 0) kept.push_back(t);
        }
        L = Expr::canonicalize(kept);
        DivergenceNormalForm nf = divergence_normal_form(plane, L);
        CHECK(reconstruct(plane, nf) == L);
        bool el_vanish = true;
        for (const Generator& z : L.dependent_bases()) {
            if (!euler_lagrange_raw(plane, L, z, Side::Left).is_zero()) el_vanish = false;
        }
        CHECK(nf.core.is_zero() == el_vanish);
    }
}

TEST_CASE("Euler-Lagrange annihilates random divergences") {
    jbtest::Rng rng(27);
    jbtest::GenPool pool = jbtest::GenPool::classical(plane, 2, 2, true, false);
    for (int i = 0; i < 80; ++i) {
        Expr k0 = jbtest::random_expr(rng, pool, 3, 3);
        Expr k1 = jbtest::random_expr(rng, pool, 3, 3);
        Expr L = total_derivative(plane, k0, 0) + total_derivative(plane, k1, 1);
        for (const Generator& z : L.dependent_bases()) {
            CHECK(euler_lagrange_raw(plane, L, z, Side::Left).is_zero());
        }
        DivergenceNormalForm nf = divergence_normal_form(plane, L);
        CHECK(nf.core.is_zero());
        CHECK(reconstruct(plane, nf) == L);
    }
}

TEST_CASE("functionals_equal identifies divergence-equivalent Lagrangians") {
    Expr L1 = rat(1, 2) * gen(q_t).pow(2);
    Expr L2 = L1 + total_derivative(mech, gen(q).pow(3), 0);
    CHECK(functionals_equal(mech, L1, L2));
    CHECK(!functionals_equal(mech, gen(q), Expr::zero()));
    CHECK(functionals_equal(mech, L1, L1));
}

TEST_CASE("commutator of prolongations is the prolongation of the bracket") {
    jbtest::Rng rng(28);
    jbtest::GenPool pool = jbtest::GenPool::classical(plane, 2, 2, true, false);
    for (int i = 0; i < 40; ++i) {
        EvolutionaryField Q1 = jbtest::random_evolutionary(rng, plane, 2, 1);
        EvolutionaryField Q2 = jbtest::random_evolutionary(rng, plane, 2, 1);
        std::map<Generator, Expr> chars;
        for (int f = 0; f < 2; ++f) {
            Generator base = Generator::field(f);
            Expr q2c = Q2.find(base) ? *Q2.find(base) : Expr::zero();
            Expr q1c = Q1.find(base) ? *Q1.find(base) : Expr::zero();
            Expr c = prolong_evolutionary(plane, Q1, q2c) - prolong_evolutionary(plane, Q2, q1c);
            if (!c.is_zero()) chars.emplace(base, c);
        }
        EvolutionaryField B = EvolutionaryField::make(Parity::Even, std::move(chars));
        Expr e = jbtest::random_expr(rng, pool, 3, 2);
        Expr lhs = prolong_evolutionary(plane, Q1, prolong_evolutionary(plane, Q2, e)) -
                   prolong_evolutionary(plane, Q2, prolong_evolutionary(plane, Q1, e));
        CHECK(lhs == prolong_evolutionary(plane, B, e));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetbrane/errors.hpp"
#include "jetbrane/expr.hpp"
#include "support/random_exprs.hpp"

using namespace jetbrane;

namespace {

// mechanics-style shorthands (dim 1, coordinate t = x^0)
const Generator q = Generator::field(0);
const Generator q_t = Generator::field(0, MultiIndex::single(0));
const Generator x0 = Generator::coordinate(0);

Expr gen(const Generator& g) {
    return Expr::from_generator(g);
}

}  // namespace

TEST_CASE("canonicalize: odd anticommutation kills symmetric ghost sums") {
    Generator c1 = Generator::ghost(0), c2 = Generator::ghost(1);
    Expr e = Expr::canonicalize({
        Term(rat(1), {{c1, 1}, {c2, 1}}),
        Term(rat(1), {{c2, 1}, {c1, 1}}),
    });
    CHECK(e.is_zero());
}

TEST_CASE("canonicalize: like-term merge") {
    Expr e = Expr::canonicalize({
        Term(rat(3), {{q_t, 1}}),
        Term(rat(2), {{q_t, 1}}),
    });
    CHECK(e == rat(5) * gen(q_t));
}

TEST_CASE("canonicalize: odd reordering sign for basis forms") {
    Generator d0 = Generator::basis_form(0), d1 = Generator::basis_form(1);
    Expr e = Expr::canonicalize({
        Term(rat(1), {{d0, 1}, {d1, 1}}),
        Term(rat(-1), {{d1, 1}, {d0, 1}}),
    });
    CHECK(e == rat(2) * (gen(d0) * gen(d1)));
}

TEST_CASE("canonicalize is idempotent on random input") {
    jbtest::Rng rng(11);
    SpaceSpec sp = SpaceSpec::make(2, {"x0", "x1"});
    jbtest::GenPool pool = jbtest::GenPool::extended(sp, 2, 1, 2);
    for (int i = 0; i < 200; ++i) {
        Expr e = jbtest::random_expr(rng, pool, 4, 4);
        CHECK(Expr::canonicalize(e.terms()) == e);
    }
}

TEST_CASE("graded product: odd square vanishes") {
    Generator d0 = Generator::basis_form(0);
    CHECK((gen(d0) * gen(d0)).is_zero());
}

TEST_CASE("graded product: plain field product") {
    Expr e = gen(q) * gen(q_t);
    REQUIRE(e.size() == 1);
    CHECK(e.terms().front().factors.size() == 2);
}

TEST_CASE("graded product: odd-odd factors anticommute") {
    Generator c = Generator::ghost(0);
    Generator af = Generator::field_antifield(0);
    CHECK(gen(c) * gen(af) == -(gen(af) * gen(c)));
}

TEST_CASE("graded product supercommutativity on random homogeneous pairs") {
    jbtest::Rng rng(12);
    SpaceSpec sp = SpaceSpec::make(2, {"x0", "x1"});
    jbtest::GenPool pool = jbtest::GenPool::extended(sp, 2, 2, 2);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        Parity pa = rng.flip() ? Parity::Odd : Parity::Even;
        Parity pb = rng.flip() ? Parity::Odd : Parity::Even;
        Expr a = jbtest::random_parity_expr(rng, pool, 3, 3, pa);
        Expr b = jbtest::random_parity_expr(rng, pool, 3, 3, pb);
        if (a.is_zero() || b.is_zero()) continue;
        Expr lhs = a * b;
        Expr rhs = b * a;
        if (pa == Parity::Odd && pb == Parity::Odd) rhs = -rhs;
        CHECK(lhs == rhs);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("graded product associativity on random triples") {
    jbtest::Rng rng(13);
    SpaceSpec sp = SpaceSpec::make(2, {"x0", "x1"});
    jbtest::GenPool pool = jbtest::GenPool::extended(sp, 2, 2, 2);
    for (int i = 0; i < 100; ++i) {
        Expr a = jbtest::random_expr(rng, pool, 3, 3);
        Expr b = jbtest::random_expr(rng, pool, 3, 3);
        Expr c = jbtest::random_expr(rng, pool, 3, 3);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("grading: antifield times ghost") {
    Expr e = gen(Generator::field_antifield(0)) * gen(Generator::ghost(0));
    Grading g = e.grading();
    CHECK(g.ghost == 1);
    CHECK(g.resolution == 1);
    CHECK(g.parity == Parity::Even);
    CHECK(g.total_ghost() == 0);
}

TEST_CASE("grading: constants are trivially graded") {
    Grading g = Expr::one().grading();
    CHECK(g == Grading{});
    CHECK(Expr::zero().grading() == Grading{});
}

TEST_CASE("grading: mixed ghost number raises") {
    Expr e = gen(q) + gen(Generator::ghost(0));
    CHECK_THROWS_AS(e.grading(), GradingError);
}

TEST_CASE("generator gradings match the fixed table") {
    CHECK(Generator::field(0).total_ghost() == 0);
    CHECK(Generator::ghost(0).total_ghost() == 1);
    CHECK(Generator::field_antifield(0).total_ghost() == -1);
    CHECK(Generator::ghost_antifield(0).total_ghost() == -2);
    CHECK(Generator::basis_form(0).total_ghost() == 0);
    CHECK(Generator::field_antifield(0).resolution() == 1);
    CHECK(Generator::ghost_antifield(0).resolution() == 2);
    CHECK(Generator::field(0).parity() == Parity::Even);
    CHECK(Generator::ghost(0).parity() == Parity::Odd);
    CHECK(Generator::field_antifield(0).parity() == Parity::Odd);
    CHECK(Generator::ghost_antifield(0).parity() == Parity::Even);
    CHECK(Generator::basis_form(0).parity() == Parity::Odd);
}

TEST_CASE("partial derivative: basic jet derivative") {
    Expr e = gen(q) * gen(q_t);
    CHECK(e.partial(q_t, Side::Left) == gen(q));
    CHECK(e.partial(q_t, Side::Right) == gen(q));
}

TEST_CASE("partial derivative: left/right sign on odd generators") {
    Generator c1 = Generator::ghost(0), c2 = Generator::ghost(1);
    Expr e = gen(c1) * gen(c2);
    CHECK(e.partial(c1, Side::Left) == gen(c2));
    CHECK(e.partial(c1, Side::Right) == -gen(c2));
}

TEST_CASE("partial derivative: unrelated generator gives zero") {
    CHECK(gen(x0).partial(q, Side::Left).is_zero());
}

TEST_CASE("partial derivative: powers") {
    Expr e = gen(q).pow(3);
    CHECK(e.partial(q, Side::Left) == rat(3) * gen(q).pow(2));
}

TEST_CASE("left and right partials coincide on even generators (random)") {
    jbtest::Rng rng(14);
    SpaceSpec sp = SpaceSpec::make(2, {"x0", "x1"});
    jbtest::GenPool pool = jbtest::GenPool::extended(sp, 2, 1, 2);
    for (int i = 0; i < 150; ++i) {
        Expr e = jbtest::random_expr(rng, pool, 4, 4);
        CHECK(e.partial(q, Side::Left) == e.partial(q, Side::Right));
        Generator caf = Generator::ghost_antifield(0);
        CHECK(e.partial(caf, Side::Left) == e.partial(caf, Side::Right));
    }
}

TEST_CASE("graded Leibniz rule for the left partial (random homogeneous)") {
    jbtest::Rng rng(15);
    SpaceSpec sp = SpaceSpec::make(2, {"x0", "x1"});
    jbtest::GenPool pool = jbtest::GenPool::extended(sp, 2, 2, 1);
    std::vector<Generator> wrt = {Generator::ghost(0), Generator::field(0),
                                  Generator::field_antifield(1)};
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        Parity pa = rng.flip() ? Parity::Odd : Parity::Even;
        Expr a = jbtest::random_parity_expr(rng, pool, 3, 3, pa);
        Expr b = jbtest::random_expr(rng, pool, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        for (const Generator& g : wrt) {
            Expr lhs = (a * b).partial(g, Side::Left);
            Expr rhs = a.partial(g, Side::Left) * b;
            Expr second = a * b.partial(g, Side::Left);
            if (g.parity() == Parity::Odd && pa == Parity::Odd) second = -second;
            rhs = rhs + second;
            CHECK(lhs == rhs);
        }
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("substitute: zero image deletes terms") {
    Expr e = gen(q) * gen(q_t) + gen(q_t).pow(2);
    std::map<Generator, Expr> sigma{{q, Expr::zero()}};
    CHECK(e.substitute(sigma) == gen(q_t).pow(2));
}

TEST_CASE("substitute: identity map") {
    Generator c = Generator::ghost(0);
    Expr e = gen(c) * gen(q) + rat(2) * gen(q);
    std::map<Generator, Expr> sigma{{c, gen(c)}};
    CHECK(e.substitute(sigma) == e);
}

TEST_CASE("substitute: direct replacement") {
    Expr e = gen(q_t).pow(2);
    std::map<Generator, Expr> sigma{{q_t, gen(q)}};
    CHECK(e.substitute(sigma) == gen(q).pow(2));
}

TEST_CASE("substitute: parity mismatch raises") {
    std::map<Generator, Expr> sigma{{q, gen(Generator::ghost(0))}};
    CHECK_THROWS_AS(gen(q).substitute(sigma), SubstitutionError);
}

TEST_CASE("expression equality ignores construction order") {
    Expr a = gen(q) + gen(q_t);
    Expr b = gen(q_t) + gen(q);
    CHECK(a == b);
}

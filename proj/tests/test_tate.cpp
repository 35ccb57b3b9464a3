#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drmf/tate.hpp"

using drmf::Field;
using drmf::Laurent;
using drmf::PoleSeparated;
using drmf::TatePoly;

namespace {

Laurent random_exact(const Field& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> lead(-5, 5);
    std::uniform_int_distribution<long> digit(0, F.size() - 1);
    Laurent x = Laurent::zero(F);
    long l = lead(rng);
    for (int i = 0; i < 4; ++i) {
        auto c = static_cast<Field::Elem>(digit(rng));
        if (c != 0) x = x + Laurent::monomial(F, c, l + i);
    }
    return x;
}

TatePoly random_poly(const Field& F, long D, std::mt19937_64& rng, long maxdeg = 3) {
    TatePoly f(F, D);
    for (long i = 0; i <= maxdeg; ++i) f.set_coeff(i, random_exact(F, rng));
    return f;
}

}  // namespace

TEST_CASE("additive identity and truncation semantics") {
    Field F({3, 1, 2, 60});
    std::mt19937_64 rng(1);
    auto f = random_poly(F, 8, rng);
    auto z = TatePoly::zero(F, 8);
    auto s = f + z;
    for (long i = 0; i <= 8; ++i)
        CHECK(Laurent::close(s.coeff(i), f.coeff(i), 100));

    auto t2 = TatePoly::t_monomial(F, 2, 1);
    auto sq = t2 * t2;
    CHECK(Laurent::close(sq.coeff(2), Laurent::one(F), 100));
    CHECK_FALSE(sq.truncated());

    auto t1 = TatePoly::t_monomial(F, 1, 1);
    auto trunc = t1 * t1;
    CHECK(trunc.is_zero());
    CHECK(trunc.truncated());
}

TEST_CASE("Gauss norm is multiplicative on exact inputs") {
    Field F({3, 1, 2, 60});
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(F, 10, rng);
        auto g = random_poly(F, 10, rng);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK((f * g).gauss_lead() == f.gauss_lead() + g.gauss_lead());
    }
}

TEST_CASE("tau acts coefficient-wise and fixes F_q[t]") {
    Field F({3, 1, 2, 60});
    auto t = TatePoly::t_monomial(F, 5, 1);
    auto tt = t.tau();
    CHECK(Laurent::close(tt.coeff(1), Laurent::one(F), 100));

    auto th = Laurent::theta(F);
    auto f = t.scaled(th);
    CHECK(Laurent::close(f.tau().coeff(1), th.pow(3), 100));

    std::mt19937_64 rng(9);
    auto a = random_poly(F, 5, rng);
    auto b = random_poly(F, 5, rng);
    auto lhs = (a + b).tau();
    auto rhs = a.tau() + b.tau();
    for (long i = 0; i <= 5; ++i) CHECK(Laurent::close(lhs.coeff(i), rhs.coeff(i), 60));
}

TEST_CASE("invert_unit") {
    Field F({3, 1, 2, 60});
    const long D = 8;
    auto thinv = Laurent::theta(F).inverse();

    // 1 - theta^{-1} t
    TatePoly f(F, D);
    f.set_coeff(0, Laurent::one(F));
    f.set_coeff(1, -thinv);
    auto g = f.invert_unit();
    Laurent p = Laurent::one(F);
    for (long i = 0; i <= D; ++i) {
        CHECK(Laurent::close(g.coeff(i), p, 50));
        p = p * thinv;
    }

    auto c = TatePoly::constant(Laurent::theta(F), D);
    CHECK(Laurent::close(c.invert_unit().coeff(0), thinv, 50));

    CHECK_THROWS_AS(TatePoly::t_monomial(F, D, 1).invert_unit(), drmf::domain_error);

    // f * invert_unit(f) = 1 mod t^{D+1} for random units
    std::mt19937_64 rng(13);
    for (int it = 0; it < 30; ++it) {
        TatePoly u(F, D);
        u.set_coeff(0, Laurent::one(F));
        for (long i = 1; i <= 3; ++i) u.set_coeff(i, random_exact(F, rng) * thinv.pow(6));
        auto prod = u * u.invert_unit();
        CHECK(Laurent::close(prod.coeff(0), Laurent::one(F), 40));
        for (long i = 1; i <= D; ++i) CHECK(prod.coeff(i).norm_le(40));
    }
}

TEST_CASE("pole-separated evaluation") {
    Field F({3, 1, 2, 60});
    PoleSeparated f(F, 6);
    f.add_term(0, Laurent::one(F));

    CHECK(Laurent::close(f.eval(Laurent::zero(F)), Laurent::theta(F).inverse(), 55));

    // 1/(theta - t0) = lambda at t0 = theta - lambda^{-1}
    auto t0 = Laurent::theta(F) - Laurent::lambda(F).inverse();
    CHECK(Laurent::close(f.eval(t0), Laurent::lambda(F), 55));

    CHECK_THROWS_AS(f.eval(Laurent::theta(F)), drmf::domain_error);
    // |t0| >= q^q rejected
    CHECK_THROWS_AS(f.eval(Laurent::theta_pow(F, 3)), drmf::domain_error);
}

TEST_CASE("expansion matches direct evaluation within the reported tail bound") {
    Field F({3, 1, 2, 60});
    PoleSeparated f(F, 6);
    f.add_term(0, Laurent::one(F));
    f.add_term(1, Laurent::theta(F));
    CHECK(f.expansion_tail_lead() == 8 * 1 * 2 + 0);  // j=0 term dominates

    auto one = Laurent::one(F);
    auto direct = f.eval(one);
    auto expanded = f.to_tatepoly().eval(one);
    CHECK(Laurent::close(direct, expanded, f.expansion_tail_lead()));

    // tau moves poles: tau(f)(t0) = f(t0)^q for tau-fixed t0
    auto lhs = f.tau().eval(one);
    CHECK(Laurent::close(lhs, direct.frobenius(), 50));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drmf/lattice.hpp"

using namespace drmf;

namespace {

OmegaPoint rank1_point(const Field& F) {
    OmegaPoint z;
    z.F = &F;
    z.r = 1;
    z.z = {Laurent::one(F)};
    z.floor_lead = 0;
    return z;
}

// Canonical rank-2 point (xi theta^s, 1); xi generates F_{q^m} over F_q, so
// the two coordinates live on distinct xi-lines and |z*a| >= max(|a_i|) >= 1.
OmegaPoint rank2_point(const Field& F, int s) {
    OmegaPoint z;
    z.F = &F;
    z.r = 2;
    z.z = {Laurent::monomial(F, F.gen(), 0) * Laurent::theta_pow(F, s), Laurent::one(F)};
    z.floor_lead = 0;
    return z;
}

}  // namespace

TEST_CASE("lattice enumeration counts and minimal norm") {
    Field F({3, 1, 2, 60});
    auto z1 = rank1_point(F);
    CHECK(enumerate_lattice(z1, 0).size() == 2);  // F_q^x

    auto z = rank2_point(F, 2);
    auto vals = enumerate_lattice(z, 1);
    CHECK(vals.size() == 80);  // q^4 - 1
    long maxlead = -Laurent::kInfExp;
    for (const auto& v : vals) maxlead = std::max(maxlead, v.lead());
    CHECK(maxlead == 0);  // min norm = 1, achieved by a = (0, c)
}

TEST_CASE("tower exponential matches the brute-force lattice product") {
    Field F({3, 1, 2, 60});
    auto z = rank2_point(F, 2);
    const int N = 1;
    auto vals = enumerate_lattice(z, N);
    LatticeTower tower(F, lattice_generators(z, N));

    auto brute = [&](const Laurent& w) {
        Laurent r = w;
        for (const auto& v : vals) r = r * (Laurent::one(F) - w / v);
        return r;
    };
    for (int k = 1; k <= 4; ++k) {
        Laurent w = Laurent::lambda(F).inverse().pow(k) + Laurent::theta_pow(F, -k);
        CHECK(Laurent::close(tower.exp(w), brute(w), 45));
    }
    // e vanishes exactly on available lattice points
    CHECK(tower.exp(vals[17]).is_zero());

    // alphas reproduce e as a q-power series (full tower: exact identity)
    auto al = tower.alphas(static_cast<long>(tower.size()));
    Laurent w = Laurent::theta_pow(F, -2).scaled(F.gen());
    Laurent s = Laurent::zero(F);
    for (std::size_t j = 0; j < al.size(); ++j) s = s + al[j] * w.frobenius(static_cast<int>(j));
    CHECK(Laurent::close(s, tower.exp(w), 60));
}

TEST_CASE("Carlitz case: alpha_1 = 1/(theta^q - theta), g_1 = 1") {
    Field F({3, 1, 2, 60});
    auto d = exp_coeffs(rank1_point(F), 9, 7);
    auto expect = (Laurent::theta_pow(F, 3) - Laurent::theta(F)).inverse();
    CHECK(Laurent::close(d.alphas[1], expect, 18));
    CHECK(Laurent::close(d.delta, Laurent::one(F), 15));
    CHECK(d.gs.empty());
}

TEST_CASE("alpha-extension consistency and functional equation") {
    Field F({3, 1, 2, 60});
    auto z = rank2_point(F, 1);
    auto d = exp_coeffs(z, 8, 5);

    // alpha_{r+1} from a larger product agrees with the recursion value
    LatticeTower big(F, lattice_generators(z, 10));
    auto al = big.alphas(3);
    CHECK(Laurent::close(al[3], d.alphas[3], 12));

    // d_theta(e(w)) = e(theta w) at random small arguments
    for (int k = 3; k <= 5; ++k) {
        Laurent w = Laurent::theta_pow(F, -k) + Laurent::lambda(F).inverse().pow(2 * k + 1);
        auto lhs = d.d_theta(exp_eval(d, w));
        auto rhs = exp_eval(d, Laurent::theta(F) * w);
        CHECK(Laurent::close(lhs, rhs, 14));
    }
    // F_q-linearity
    Laurent w1 = Laurent::theta_pow(F, -3);
    Laurent w2 = Laurent::lambda(F).inverse().pow(7);
    CHECK(Laurent::close(exp_eval(d, w1 + w2), exp_eval(d, w1) + exp_eval(d, w2), 20));
    CHECK(exp_eval(d, Laurent::zero(F)).is_zero());
}

TEST_CASE("Carlitz period") {
    Field F({3, 1, 2, 60});
    auto pi = carlitz_period(F);
    CHECK(pi.lead() == -3);  // |pi| = q^{q/(q-1)}
    CHECK(pi.lead_digit() == F.neg(F.one()));  // leading digit of lambda*theta
    // pi/(lambda theta) = 1 + theta^{-2} + ... : first correction at lambda-lead 4
    auto unit = pi / (Laurent::lambda(F) * Laurent::theta(F));
    auto corr = unit - Laurent::one(F);
    CHECK(corr.lead() == 4);

    Field F2({2, 1, 3, 60});
    CHECK(carlitz_period(F2).lead() == -2);
}

TEST_CASE("Anderson-Thakur omega") {
    Field F({3, 1, 2, 60});
    const long D = 10;
    auto w = anderson_thakur_omega(F, D);
    CHECK(Laurent::close(w.coeff(0), Laurent::lambda(F), 55));

    // tau(omega) = (t - theta) omega
    auto lhs = w.tau();
    TatePoly tmth(F, D);
    tmth.set_coeff(0, -Laurent::theta(F));
    tmth.set_coeff(1, Laurent::one(F));
    auto rhs = tmth * w;
    for (long i = 0; i + 1 <= D; ++i) CHECK(Laurent::close(lhs.coeff(i), rhs.coeff(i), 40));

    // polynomial model agrees with the product evaluator on |t| <= 1
    auto at1 = anderson_thakur_omega_at(F, Laurent::one(F));
    CHECK(Laurent::close(w.eval(Laurent::one(F)), at1, (D + 1) * 2 - 3));

    CHECK_THROWS_AS(anderson_thakur_omega_at(F, Laurent::theta(F)), drmf::domain_error);
}

TEST_CASE("parameter at infinity u") {
    Field F({3, 1, 2, 60});
    const int N = 9;
    auto z1 = rank2_point(F, 1);
    auto u1 = u_param(z1, N);
    CHECK(!u1.is_zero());

    // Gamma_alpha-invariance: shifting z_r by a lattice element of ztilde
    for (int deg = 0; deg <= 2; ++deg) {
        auto z1s = z1;
        z1s.z[0] = z1s.z[0] - PolyA::theta_pow(F, deg).eval_theta();
        CHECK(Laurent::close(u_param(z1s, N), u1, u1.lead() + 8));
    }

    // |u| strictly decreases as s_r grows
    auto u2 = u_param(rank2_point(F, 2), N);
    auto u3 = u_param(rank2_point(F, 3), N);
    CHECK(u2.lead() > u1.lead());
    CHECK(u3.lead() > u2.lead());
}

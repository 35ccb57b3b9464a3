#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drmf/finite_field.hpp"

using drmf::Field;
using drmf::FieldParams;

TEST_CASE("F_9 with xi^2 = xi + 1") {
    Field F({3, 1, 2, 60});
    CHECK(F.q() == 3);
    CHECK(F.size() == 9);
    // Defining polynomial x^2 + 2x + 2, i.e. xi^2 = xi + 1.
    CHECK(F.defining_poly() == std::vector<int>{2, 2, 1});
    auto xi = F.gen();
    auto xi2 = F.mul(xi, xi);
    CHECK(xi2 == F.add(xi, F.one()));
}

TEST_CASE("field axioms by exhaustion, q=3 m=2 and q=2 m=3") {
    for (FieldParams params : {FieldParams{3, 1, 2, 60}, FieldParams{2, 1, 3, 60}}) {
        Field F(params);
        const long n = F.size();
        for (long a = 0; a < n; ++a) {
            auto ea = static_cast<Field::Elem>(a);
            CHECK(F.add(ea, 0) == ea);
            CHECK(F.mul(ea, 1) == ea);
            CHECK(F.add(ea, F.neg(ea)) == 0);
            // x^{q^m} = x
            CHECK(F.pow(ea, F.size()) == ea);
            if (a != 0) {
                CHECK(F.mul(ea, F.inv(ea)) == 1);
                // Fermat: x * x^{q^m - 2} = 1
                CHECK(F.mul(ea, F.pow(ea, F.size() - 2)) == 1);
            }
            for (long b = 0; b < n; ++b) {
                auto eb = static_cast<Field::Elem>(b);
                CHECK(F.add(ea, eb) == F.add(eb, ea));
                CHECK(F.mul(ea, eb) == F.mul(eb, ea));
                // Frobenius is a homomorphism.
                CHECK(F.frob_q(F.mul(ea, eb)) == F.mul(F.frob_q(ea), F.frob_q(eb)));
                CHECK(F.frob_q(F.add(ea, eb)) == F.add(F.frob_q(ea), F.frob_q(eb)));
                for (long c = 0; c < n; ++c) {
                    auto ec = static_cast<Field::Elem>(c);
                    CHECK(F.mul(ea, F.add(eb, ec)) == F.add(F.mul(ea, eb), F.mul(ea, ec)));
                }
            }
        }
    }
}

TEST_CASE("subfield F_q has q elements closed under arithmetic") {
    Field F({2, 1, 3, 60});
    CHECK(F.subfield_fq().size() == 2);
    Field G({3, 1, 3, 60});
    CHECK(G.subfield_fq().size() == 3);
    for (auto a : G.subfield_fq())
        for (auto b : G.subfield_fq()) {
            CHECK(G.in_subfield_fq(G.add(a, b)));
            CHECK(G.in_subfield_fq(G.mul(a, b)));
        }
}

TEST_CASE("inversion of zero is a domain error") {
    Field F({3, 1, 2, 60});
    CHECK_THROWS_AS(F.inv(0), drmf::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qp/propagator.hpp"

using namespace qp;

namespace {
Rat rq(const char* s) { return parse_rat(s); }
}

TEST_CASE("normalization") {
    const QuadraticAction fr = free_particle(Rat(1), Rat(0), Rat(1));
    SUBCASE("modulus is the norm of b/h") {
        for (const Place& v : {Place::at_prime(2), Place::at_prime(5), Place::infinity()}) {
            for (const Rat& h : {Rat(1), rq("1/2"), Rat(3)}) {
                const ExactCircle n = normalization(KernelSpec{fr, v, h});
                CHECK(n.mag2() == norm(fr.b / h, v));
            }
        }
    }
    SUBCASE("phase comes from lambda at -b/2h") {
        const ExactCircle n = normalization(KernelSpec{fr, Place::infinity(), Rat(1)});
        CHECK(n.mag2() == 1);
        CHECK(n.phase() == rq("7/8"));  // lambda_inf(1/2)
        const ExactCircle n5 = normalization(KernelSpec{fr, Place::at_prime(5), Rat(1)});
        CHECK(n5 == ExactCircle());  // unit argument, even valuation
    }
    SUBCASE("guards") {
        QuadraticAction bad = fr;
        bad.b = 0;
        CHECK_THROWS_WITH_AS(normalization(KernelSpec{bad, Place::at_prime(3), Rat(1)}),
                             doctest::Contains("DegenerateAction"), Error);
        CHECK_THROWS_WITH_AS(normalization(KernelSpec{fr, Place::at_prime(3), Rat(0)}),
                             doctest::Contains("ZeroPlanck"), Error);
    }
}

TEST_CASE("kernel factorizes as N times a character") {
    const QuadraticAction s = constant_field(Rat(2), rq("1/3"), Rat(0), Rat(1));
    for (const Place& v : {Place::at_prime(3), Place::at_prime(7), Place::infinity()}) {
        const KernelSpec spec{s, v, rq("1/2")};
        const ExactCircle n = normalization(spec);
        const Rat x2 = rq("2/5"), x1 = Rat(-1);
        const ExactCircle k = kernel_at(spec, x2, x1);
        CHECK(k.mag2() == n.mag2());
        CHECK(k == n * character(-s.eval(x2, x1) / spec.h, v));
    }
    SUBCASE("time translation leaves the kernel unchanged") {
        const QuadraticAction a = free_particle(rq("3/2"), Rat(0), Rat(1));
        const QuadraticAction b = free_particle(rq("3/2"), Rat(5), Rat(6));
        const Place v = Place::at_prime(5);
        CHECK(kernel_at(KernelSpec{a, v, Rat(1)}, Rat(2), rq("1/5")) ==
              kernel_at(KernelSpec{b, v, Rat(1)}, Rat(2), rq("1/5")));
    }
}

TEST_CASE("group property") {
    const Rat h(1);
    SUBCASE("free particle, finite and infinite places") {
        const QuadraticAction s1 = free_particle(Rat(1), Rat(1), Rat(2));
        const QuadraticAction s2 = free_particle(Rat(1), Rat(0), Rat(1));
        const QuadraticAction direct = free_particle(Rat(1), Rat(0), Rat(2));
        for (const Place& v : {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5),
                               Place::infinity()}) {
            const VerificationReport rep =
                verify_group(KernelSpec{s1, v, h}, KernelSpec{s2, v, h}, direct);
            CAPTURE(rep.witness);
            CHECK(rep.pass);
        }
    }
    SUBCASE("constant field") {
        const Rat m = rq("3/2"), g = rq("2/7");
        const QuadraticAction s1 = constant_field(m, g, rq("1/2"), Rat(3));
        const QuadraticAction s2 = constant_field(m, g, Rat(0), rq("1/2"));
        const QuadraticAction direct = constant_field(m, g, Rat(0), Rat(3));
        const Place v = Place::at_prime(7);
        const VerificationReport rep =
            verify_group(KernelSpec{s1, v, h}, KernelSpec{s2, v, h}, direct);
        CAPTURE(rep.witness);
        CHECK(rep.pass);
    }
    SUBCASE("wrong direct action is caught") {
        const QuadraticAction s1 = free_particle(Rat(1), Rat(1), Rat(2));
        const QuadraticAction s2 = free_particle(Rat(1), Rat(0), Rat(1));
        const QuadraticAction wrong = free_particle(Rat(2), Rat(0), Rat(2));
        const VerificationReport rep =
            verify_group(KernelSpec{s1, Place::at_prime(5), h}, KernelSpec{s2, Place::at_prime(5), h},
                         wrong);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.witness.empty());
    }
}

TEST_CASE("time slicing") {
    const Rat h(1);
    const Rat x2 = rq("4/3"), x1 = Rat(-2);
    SUBCASE("single slice is the kernel itself") {
        const QuadraticAction s = constant_field(Rat(1), Rat(1), Rat(0), Rat(2));
        const Place v = Place::at_prime(3);
        CHECK(time_sliced({s}, v, h, x2, x1) == kernel_at(KernelSpec{s, v, h}, x2, x1));
    }
    SUBCASE("refining the slicing does not move the kernel") {
        const Rat m = rq("5/2");
        const QuadraticAction direct = free_particle(m, Rat(0), Rat(4));
        for (int n : {2, 4, 8}) {
            std::vector<QuadraticAction> slices;
            for (int i = 0; i < n; ++i) {
                slices.push_back(free_particle(m, Rat(4 * i, n), Rat(4 * (i + 1), n)));
            }
            for (const Place& v : {Place::at_prime(2), Place::at_prime(5), Place::infinity()}) {
                CAPTURE(n);
                CHECK(time_sliced(slices, v, h, x2, x1) ==
                      kernel_at(KernelSpec{direct, v, h}, x2, x1));
            }
        }
    }
    CHECK_THROWS_WITH_AS(time_sliced({}, Place::at_prime(3), h, Rat(0), Rat(0)),
                         doctest::Contains("EmptySlicing"), Error);
}

TEST_CASE("evolve") {
    const long p = 3;
    const Place v = Place::at_prime(p);
    const KernelSpec spec{free_particle(Rat(1), Rat(0), Rat(3)), v, Rat(1)};
    const std::vector<Rat> pts = {Rat(0), Rat(1), rq("1/3")};

    SUBCASE("splitting a ball into cosets gives the same integral") {
        const BallFunction whole = {{std::complex<double>{1.0, 0.0}, Rat(0), 0}};
        BallFunction split;
        for (int r = 0; r < p; ++r) {
            split.push_back({std::complex<double>{1.0, 0.0}, Rat(r), 1});
        }
        const auto a = evolve(spec, whole, pts);
        const auto b = evolve(spec, split, pts);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
    }
    SUBCASE("linearity in the ball function") {
        const BallTerm t1{std::complex<double>{0.5, -0.25}, Rat(1), 1};
        const BallTerm t2{std::complex<double>{-1.0, 2.0}, rq("1/3"), 0};
        const auto both = evolve(spec, {t1, t2}, pts);
        const auto a = evolve(spec, {t1}, pts);
        const auto b = evolve(spec, {t2}, pts);
        for (size_t i = 0; i < pts.size(); ++i) {
            CHECK(std::abs(both[i] - (a[i] + b[i])) < 1e-12);
        }
    }
}

TEST_CASE("off-diagonal unitarity") {
    const Place v = Place::at_prime(5);
    const KernelSpec spec{constant_field(Rat(2), Rat(1), Rat(0), Rat(1)), v, Rat(1)};
    SUBCASE("diagonal gives the squared modulus times the ball measure") {
        for (long g : {0L, 1L, 2L}) {
            const auto val = off_diagonal_unitarity(spec, Rat(1), Rat(1), g);
            const double expect =
                normalization(spec).mag2().get_d() * std::pow(5.0, static_cast<double>(g));
            CHECK(std::abs(val - std::complex<double>(expect, 0.0)) < 1e-9);
        }
    }
    SUBCASE("vanishes past the threshold") {
        const Rat x2(2), z = rq("1/5");
        const long g0 = off_diag_threshold(spec, x2, z);
        const auto val = off_diagonal_unitarity(spec, x2, z, g0 + 1);
        CHECK(std::abs(val) < 1e-9);
        const auto further = off_diagonal_unitarity(spec, x2, z, g0 + 2);
        CHECK(std::abs(further) < 1e-9);
    }
    SUBCASE("threshold tracks the valuation of the separation") {
        CHECK(off_diag_threshold(spec, Rat(1), Rat(1) + Rat(25)) >= 2);
        CHECK(off_diag_threshold(spec, Rat(0), Rat(0)) == 0);
    }
}

TEST_CASE("u and v relations") {
    SUBCASE("free and field splits sit at the identity") {
        const QuadraticAction s1 = free_particle(Rat(1), Rat(1), Rat(2));
        const QuadraticAction s2 = free_particle(Rat(1), Rat(0), Rat(1));
        for (const Place& v : {Place::at_prime(2), Place::at_prime(7), Place::infinity()}) {
            const UvRelations rel = relations_uv(s1, s2, v);
            CHECK(rel.u == 1);
            CHECK(rel.v == 1);
            CHECK(rel.u_unit);
            CHECK(rel.v_unit);
        }
        const QuadraticAction f1 = constant_field(Rat(2), Rat(3), rq("1/2"), Rat(1));
        const QuadraticAction f2 = constant_field(Rat(2), Rat(3), Rat(0), rq("1/2"));
        const UvRelations rel = relations_uv(f1, f2, Place::at_prime(3));
        CHECK(rel.u == 1);
        CHECK(rel.v == 1);
    }
    SUBCASE("u and v are reciprocal") {
        const QuadraticAction s1 = free_particle(rq("2/3"), Rat(1), Rat(4));
        const QuadraticAction s2 = free_particle(rq("2/3"), Rat(0), Rat(1));
        const UvRelations rel = relations_uv(s1, s2, Place::at_prime(3));
        CHECK(rel.u * rel.v == 1);
    }
    SUBCASE("oscillator split lands on p-adic units") {
        const long p = 3;
        const QuadraticAction s1 = harmonic_oscillator(Rat(1), Rat(3), Rat(1), Rat(2), p, 12);
        const QuadraticAction s2 = harmonic_oscillator(Rat(1), Rat(3), Rat(0), Rat(1), p, 12);
        const UvRelations rel = relations_uv(s1, s2, Place::at_prime(p));
        CHECK(rel.u_unit);
        CHECK(rel.v_unit);
        CHECK(rel.u != 1);  // cos wT bends it away from the identity
    }
    SUBCASE("mismatched intervals are rejected") {
        const QuadraticAction s1 = free_particle(Rat(1), Rat(1), Rat(2));
        const QuadraticAction s2 = free_particle(Rat(1), Rat(0), rq("1/2"));
        CHECK_THROWS_WITH_AS(relations_uv(s1, s2, Place::at_prime(5)),
                             doctest::Contains("TimeMismatch"), Error);
    }
}

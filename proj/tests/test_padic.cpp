#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qp/padic.hpp"

using namespace qp;

namespace {

Rat rq(const char* s) { return parse_rat(s); }

Rat random_rat(std::mt19937_64& eng, long p) {
    long s = 1 + static_cast<long>(eng() % 19);
    while (s % p == 0) s = 1 + static_cast<long>(eng() % 19);
    long t = 1 + static_cast<long>(eng() % 19);
    while (t % p == 0) t = 1 + static_cast<long>(eng() % 19);
    const long v = static_cast<long>(eng() % 9) - 4;
    Rat r(((eng() & 1) != 0) ? s : -s, t);
    r.canonicalize();
    return r * p_power(p, v);
}

}  // namespace

TEST_CASE("valuation") {
    CHECK(valuation(Rat(1), 5) == 0);
    CHECK(valuation(Rat(12), 2) == 2);
    CHECK(valuation(rq("3/4"), 2) == -2);
    CHECK(valuation(Rat(0), 7) == kValInfinity);
}

TEST_CASE("norm") {
    CHECK(norm(Rat(0), Place::at_prime(3)) == 0);
    CHECK(norm(rq("3/4"), Place::at_prime(2)) == 4);
    CHECK(norm(rq("-5/2"), Place::infinity()) == rq("5/2"));
    SUBCASE("ultrametric inequality") {
        std::mt19937_64 eng(7);
        for (long p : {2L, 3L, 5L}) {
            const Place v = Place::at_prime(p);
            for (int i = 0; i < 200; ++i) {
                const Rat x = random_rat(eng, p);
                const Rat y = random_rat(eng, p);
                const Rat nx = norm(x, v), ny = norm(y, v);
                const Rat nsum = norm(x + y, v);
                CHECK(nsum <= std::max(nx, ny));
                if (nx != ny) CHECK(nsum == std::max(nx, ny));
            }
        }
    }
}

TEST_CASE("digits") {
    const PadicDigits d = digits(rq("3/4"), 2, 3);
    CHECK(d.valuation == -2);
    CHECK(d.digit == std::vector<int>{1, 1, 0});

    const PadicDigits e = digits(Rat(5), 5, 1);
    CHECK(e.valuation == 1);
    CHECK(e.digit == std::vector<int>{1});

    const PadicDigits f = digits(Rat(-1), 3, 3);
    CHECK(f.valuation == 0);
    CHECK(f.digit == std::vector<int>{2, 2, 2});

    CHECK_THROWS_WITH_AS(digits(Rat(0), 3, 2), doctest::Contains("ZeroInput"), Error);

    SUBCASE("reconstruction error has high valuation") {
        std::mt19937_64 eng(3);
        for (int i = 0; i < 100; ++i) {
            const long p = 3;
            const Rat x = random_rat(eng, p);
            const PadicDigits g = digits(x, p, 4);
            Rat rec(0);
            for (int k = 0; k < 4; ++k) rec += Rat(g.digit[static_cast<size_t>(k)]) * p_power(p, k);
            rec *= p_power(p, g.valuation);
            const Rat diff = x - rec;
            if (diff != 0) CHECK(valuation(diff, p) >= g.valuation + 4);
        }
    }
}

TEST_CASE("frac_part") {
    CHECK(frac_part(Rat(7), 5) == 0);
    CHECK(frac_part(rq("1/2"), 2) == rq("1/2"));
    CHECK(frac_part(rq("-1/3"), 3) == rq("2/3"));
    SUBCASE("idempotence and integrality of the remainder") {
        std::mt19937_64 eng(11);
        for (long p : {2L, 3L, 7L}) {
            for (int i = 0; i < 100; ++i) {
                const Rat x = random_rat(eng, p);
                const Rat f = frac_part(x, p);
                CHECK(frac_part(x - f, p) == 0);
                CHECK(valuation(x - f, p) >= 0);
                CHECK(f >= 0);
                CHECK(f < 1);
            }
        }
    }
}

TEST_CASE("legendre") {
    CHECK(legendre(Int(1), 7) == 1);
    CHECK(legendre(Int(2), 7) == 1);
    CHECK(legendre(Int(2), 5) == -1);
    CHECK(legendre(Int(14), 7) == 0);
    CHECK_THROWS_WITH_AS(legendre(Int(3), 2), doctest::Contains("EvenPrime"), Error);
    SUBCASE("multiplicativity") {
        std::mt19937_64 eng(5);
        for (int i = 0; i < 200; ++i) {
            const long p = 13;
            const Int a(1 + static_cast<long>(eng() % 200));
            const Int b(1 + static_cast<long>(eng() % 200));
            if (mpz_divisible_ui_p(a.get_mpz_t(), p) || mpz_divisible_ui_p(b.get_mpz_t(), p))
                continue;
            CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
        }
    }
}

TEST_CASE("lambda") {
    CHECK(lambda_fn(Rat(0), Place::at_prime(3)) == ExactCircle());
    CHECK(lambda_fn(Rat(0), Place::infinity()) == ExactCircle());
    CHECK(lambda_fn(Rat(1), Place::at_prime(2)).phase() == rq("1/8"));
    CHECK(lambda_fn(Rat(3), Place::at_prime(3)).phase() == rq("1/4"));
    CHECK(lambda_fn(Rat(-2), Place::infinity()).phase() == rq("1/8"));
    CHECK(lambda_fn(Rat(2), Place::infinity()).phase() == rq("7/8"));
    SUBCASE("unit modulus everywhere") {
        std::mt19937_64 eng(23);
        for (long p : {2L, 3L, 5L, 13L}) {
            const Place v = Place::at_prime(p);
            for (int i = 0; i < 50; ++i) {
                CHECK(lambda_fn(random_rat(eng, p), v).mag2() == 1);
            }
        }
    }
}

TEST_CASE("character") {
    const Place p3 = Place::at_prime(3);
    CHECK(character(Rat(9), p3).phase() == 0);
    CHECK(character(rq("1/3"), p3).phase() == rq("1/3"));
    CHECK(character(rq("1/4"), Place::infinity()).phase() == rq("3/4"));
    SUBCASE("additivity") {
        std::mt19937_64 eng(29);
        for (const Place& v : {Place::at_prime(2), Place::at_prime(5), Place::infinity()}) {
            for (int i = 0; i < 100; ++i) {
                const long p = v.infinite() ? 7 : v.p();
                const Rat x = random_rat(eng, p);
                const Rat y = random_rat(eng, p);
                CHECK(character(x + y, v) == character(x, v) * character(y, v));
            }
        }
    }
}

TEST_CASE("exact circle") {
    CHECK(ExactCircle::unit(rq("1/8")) * ExactCircle::unit(rq("7/8")) == ExactCircle());
    CHECK(ExactCircle::unit(rq("1/3")).conj().phase() == rq("2/3"));
    const std::complex<double> z = ExactCircle(Rat(3), Rat(0)).to_complex();
    CHECK(std::abs(z - std::complex<double>(std::sqrt(3.0), 0.0)) < 1e-15);
    const std::complex<double> i1 = ExactCircle::unit(rq("1/4")).to_complex();
    CHECK(std::abs(i1 - std::complex<double>(0.0, 1.0)) < 1e-15);
    CHECK(ExactCircle::zero().phase() == 0);
}

TEST_CASE("place construction") {
    CHECK_THROWS_WITH_AS(Place::at_prime(4), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_WITH_AS(Place::at_prime(1), doctest::Contains("NotPrime"), Error);
    CHECK(Place::at_prime(101).p() == 101);
    CHECK(Place::infinity().infinite());
}

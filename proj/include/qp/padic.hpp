#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qp/rational.hpp"

namespace qp {

// Valuation of zero.
inline constexpr long kValInfinity = std::numeric_limits<long>::max();

// A place of Q: the archimedean one or a finite prime.
class Place {
public:
    static Place infinity() { return Place(0); }
    static Place at_prime(long p);

    bool infinite() const { return p_ == 0; }
    long p() const {
        if (infinite()) throw Error("NotPrime", "archimedean place has no prime");
        return p_;
    }
    std::string str() const { return infinite() ? "inf" : std::to_string(p_); }

    friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }

private:
    explicit Place(long p) : p_(p) {}
    long p_;  // 0 encodes the archimedean place
};

// Leading digits of the canonical expansion x = p^nu (x0 + x1 p + ...), x0 != 0.
struct PadicDigits {
    long valuation = 0;
    std::vector<int> digit;
};

// Exact point sqrt(mag2) * exp(2*pi*i*phase) with rational mag2 >= 0 and phase in [0,1).
class ExactCircle {
public:
    ExactCircle() : mag2_(1), phase_(0) {}
    ExactCircle(Rat mag2, Rat phase);

    static ExactCircle zero() { return ExactCircle(Rat(0), Rat(0)); }
    static ExactCircle unit(const Rat& phase) { return ExactCircle(Rat(1), phase); }

    const Rat& mag2() const { return mag2_; }
    const Rat& phase() const { return phase_; }

    ExactCircle conj() const;
    std::complex<double> to_complex() const;

    friend ExactCircle operator*(const ExactCircle& a, const ExactCircle& b);
    friend bool operator==(const ExactCircle& a, const ExactCircle& b) {
        return a.mag2_ == b.mag2_ && a.phase_ == b.phase_;
    }

private:
    Rat mag2_;
    Rat phase_;
};

// p-adic valuation of a rational; kValInfinity for x = 0.
long valuation(const Rat& x, long p);

// |x|_v as an exact rational.
Rat norm(const Rat& x, const Place& v);

// First `count` digits of the canonical expansion. Throws ZeroInput for x = 0.
PadicDigits digits(const Rat& x, long p, int count);

// {x}_p: the unique rational in [0,1) with p-power denominator, congruent to x mod Z_p.
Rat frac_part(const Rat& x, long p);

// Legendre symbol (a/p) for odd prime p. Throws EvenPrime for p = 2.
int legendre(const Int& a, long p);

// The arithmetic lambda factor of the Gauss integral; unit modulus everywhere.
ExactCircle lambda_fn(const Rat& x, const Place& v);

// Additive character: chi_p(x) = exp(2*pi*i*{x}_p), chi_inf(x) = exp(-2*pi*i*x).
ExactCircle character(const Rat& x, const Place& v);

}  // namespace qp

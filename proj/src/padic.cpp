#include "qp/padic.hpp"

#include <cmath>

namespace qp {

Place Place::at_prime(long p) {
    if (p < 2) throw Error("NotPrime", std::to_string(p) + " is not a prime");
    Int z(p);
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
        throw Error("NotPrime", std::to_string(p) + " is not a prime");
    }
    return Place(p);
}

ExactCircle::ExactCircle(Rat mag2, Rat phase) : mag2_(std::move(mag2)), phase_(mod1(phase)) {
    if (mag2_ < 0) throw Error("NegativeMag", "mag2 must be nonnegative");
    if (mag2_ == 0) phase_ = 0;
}

ExactCircle ExactCircle::conj() const { return ExactCircle(mag2_, -phase_); }

std::complex<double> ExactCircle::to_complex() const {
    const double r = std::sqrt(mag2_.get_d());
    const double a = 2.0 * M_PI * phase_.get_d();
    return std::polar(r, a);
}

ExactCircle operator*(const ExactCircle& a, const ExactCircle& b) {
    return ExactCircle(a.mag2_ * b.mag2_, a.phase_ + b.phase_);
}

long valuation(const Rat& x, long p) {
    if (x == 0) return kValInfinity;
    Int f(p), tmp;
    const long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_num_mpz_t(), f.get_mpz_t()));
    const long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_den_mpz_t(), f.get_mpz_t()));
    return vn - vd;
}

Rat norm(const Rat& x, const Place& v) {
    if (v.infinite()) return abs(x);
    if (x == 0) return Rat(0);
    return p_power(v.p(), -valuation(x, v.p()));
}

PadicDigits digits(const Rat& x, long p, int count) {
    if (x == 0) throw Error("ZeroInput", "digits of zero are not canonical");
    if (count < 1) throw Error("BadCount", "count must be >= 1");
    const long nu = valuation(x, p);

    // Unit part u = x * p^{-nu} = s/t with p coprime to s and t.
    Rat u = x * p_power(p, -nu);
    Int pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(count));
    Int tinv;
    if (mpz_invert(tinv.get_mpz_t(), u.get_den_mpz_t(), pm.get_mpz_t()) == 0) {
        throw Error("Internal", "denominator not invertible");  // cannot happen: p does not divide t
    }
    Int res = u.get_num() * tinv;
    mpz_mod(res.get_mpz_t(), res.get_mpz_t(), pm.get_mpz_t());

    PadicDigits out;
    out.valuation = nu;
    out.digit.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        Int q, r;
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), res.get_mpz_t(), static_cast<unsigned long>(p));
        out.digit.push_back(static_cast<int>(r.get_si()));
        res = q;
    }
    return out;
}

Rat frac_part(const Rat& x, long p) {
    const long nu = valuation(x, p);
    if (nu >= 0) return Rat(0);  // covers x = 0 via kValInfinity
    const long m = -nu;
    Int pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    // x = s / (t p^m) in lowest terms; {x}_p = ((s t^{-1}) mod p^m) / p^m.
    Int t = x.get_den() / pm;
    Int tinv;
    if (mpz_invert(tinv.get_mpz_t(), t.get_mpz_t(), pm.get_mpz_t()) == 0) {
        throw Error("Internal", "denominator not invertible");
    }
    Int r = x.get_num() * tinv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pm.get_mpz_t());
    Rat out(r, pm);
    out.canonicalize();
    return out;
}

int legendre(const Int& a, long p) {
    if (p == 2) throw Error("EvenPrime", "Legendre symbol is defined for odd primes only");
    Int pz(p);
    return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

ExactCircle lambda_fn(const Rat& x, const Place& v) {
    if (x == 0) return ExactCircle::unit(Rat(0));

    if (v.infinite()) {
        // (1 -+ i)/sqrt(2) for positive/negative argument.
        return ExactCircle::unit(x > 0 ? Rat(7, 8) : Rat(1, 8));
    }

    const long p = v.p();
    if (p == 2) {
        const PadicDigits d = digits(x, 2, 3);
        const int x1 = d.digit[1];
        const int x2 = d.digit[2];
        Rat phase = (x1 == 0) ? Rat(1, 8) : Rat(7, 8);
        if ((d.valuation % 2 != 0) && ((x1 + x2) % 2 != 0)) phase += Rat(1, 2);
        return ExactCircle::unit(phase);
    }

    const PadicDigits d = digits(x, p, 1);
    if (d.valuation % 2 == 0) return ExactCircle::unit(Rat(0));
    Rat phase = (legendre(Int(d.digit[0]), p) == 1) ? Rat(0) : Rat(1, 2);
    if (p % 4 == 3) phase += Rat(1, 4);
    return ExactCircle::unit(phase);
}

ExactCircle character(const Rat& x, const Place& v) {
    if (v.infinite()) return ExactCircle::unit(mod1(-x));
    return ExactCircle::unit(frac_part(x, v.p()));
}

}  // namespace qp

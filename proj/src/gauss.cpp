#include "qp/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qp {

namespace {

long ceil_div2(long a) { return (a >= 0) ? (a + 1) / 2 : -((-a) / 2); }

// Residue of q * p^shift modulo p^M, for a p-integral product. Residues of
// p-adic integers are computed through the modular inverse of the unit part
// of the denominator.
std::uint64_t shifted_residue(const Rat& q, long shift, long p, const Int& P, long M) {
    if (q == 0) return 0;
    Int f(p), num, den;
    const long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), q.get_num_mpz_t(), f.get_mpz_t()));
    const long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), q.get_den_mpz_t(), f.get_mpz_t()));
    const long v = vn - vd + shift;
    if (v < 0) throw Error("Internal", "non-integral residue");
    if (v >= M) return 0;
    Int inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    Int r = num * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
    Int pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(v));
    r *= pv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
    return static_cast<std::uint64_t>(r.get_ui());
}

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Number of terms p^{gamma+delta} as double, for budget checks.
double term_count(long p, long gamma, long delta) {
    return std::pow(static_cast<double>(p), static_cast<double>(gamma + delta));
}

}  // namespace

ExactCircle gauss_closed(const Rat& alpha, const Rat& beta, const Place& v) {
    if (alpha == 0) throw Error("ZeroAlpha", "degenerate quadratic form in Gauss integral");
    const Rat mag2 = Rat(1) / norm(2 * alpha, v);
    const Rat shift_arg = -(beta * beta) / (4 * alpha);
    const Rat phase = lambda_fn(alpha, v).phase() + character(shift_arg, v).phase();
    return ExactCircle(mag2, phase);
}

long min_mesh(const Rat& alpha, const Rat& beta, long p, long gamma) {
    long m = 0;
    if (alpha != 0) {
        const long a = -valuation(alpha, p);
        m = std::max({m, a + gamma, ceil_div2(a)});
    }
    if (beta != 0) {
        m = std::max(m, -valuation(beta, p));
    }
    return std::max(m + 2, -gamma);
}

std::complex<double> ball_char_sum(const Rat& alpha, const Rat& beta, long p, long gamma,
                                   long delta, long term_budget) {
    if (delta < -gamma) throw Error("MeshTooCoarse", "mesh coarser than the ball");
    const double count = term_count(p, gamma, delta);
    if (count > static_cast<double>(term_budget)) {
        throw Error("SumTooLarge", "character sum exceeds the term budget");
    }
    const long nterms = static_cast<long>(count + 0.5);
    const double measure = std::pow(static_cast<double>(p), static_cast<double>(-delta));

    long M = 0;
    if (alpha != 0) M = std::max(M, 2 * gamma - valuation(alpha, p));
    if (beta != 0) M = std::max(M, gamma - valuation(beta, p));
    if (M == 0) {
        // Integrand is identically 1 on the ball.
        return {std::pow(static_cast<double>(p), static_cast<double>(gamma)), 0.0};
    }
    Int P;
    mpz_ui_pow_ui(P.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(M));
    if (!P.fits_ulong_p() || mpz_sizeinbase(P.get_mpz_t(), 2) > 62) {
        throw Error("SumTooLarge", "modulus p^M does not fit machine arithmetic");
    }
    const std::uint64_t P64 = static_cast<std::uint64_t>(P.get_ui());
    const std::uint64_t A = shifted_residue(alpha, M - 2 * gamma, p, P, M);
    const std::uint64_t B = shifted_residue(beta, M - gamma, p, P, M);

    const double twopi_over_P = 2.0 * M_PI / static_cast<double>(P64);

    // Fixed chunking keeps the reduction order identical across runs.
    constexpr long kChunk = 4096;
    Kahan re_total, im_total;
    for (long base = 0; base < nterms; base += kChunk) {
        const long end = std::min(base + kChunk, nterms);
        Kahan re, im;
        for (long n = base; n < end; ++n) {
            const std::uint64_t un = static_cast<std::uint64_t>(n);
            const unsigned __int128 q =
                (static_cast<unsigned __int128>(A) * (un * un) +
                 static_cast<unsigned __int128>(B) * un) %
                P64;
            const double angle = twopi_over_P * static_cast<double>(static_cast<std::uint64_t>(q));
            re.add(std::cos(angle));
            im.add(std::sin(angle));
        }
        re_total.add(re.sum);
        im_total.add(im.sum);
    }
    return {re_total.sum * measure, im_total.sum * measure};
}

std::complex<double> gauss_brute(const Rat& alpha, const Rat& beta, const BallSpec& spec,
                                 long term_budget) {
    if (spec.delta < min_mesh(alpha, beta, spec.p, spec.gamma)) {
        throw Error("MeshTooCoarse", "delta below the local constancy mesh");
    }
    return ball_char_sum(alpha, beta, spec.p, spec.gamma, spec.delta, term_budget);
}

long stabilization_start(const Rat& alpha, const Rat& beta, long p) {
    const long a = -valuation(alpha, p);
    long g = std::max(0L, ceil_div2(1 - a) + (p == 2 ? 1 : 0));
    if (beta != 0) {
        // Ball must contain the critical point -beta/(2 alpha).
        const long b = -valuation(beta, p);
        g = std::max(g, b - a + (p == 2 ? 2 : 0));
    }
    return g;
}

std::complex<double> gauss_stabilized(const Rat& alpha, const Rat& beta, long p, double tol,
                                      long term_budget) {
    if (alpha == 0) throw Error("ZeroAlpha", "degenerate quadratic form in Gauss integral");
    const long start = stabilization_start(alpha, beta, p);
    const long limit = start + 24;

    std::complex<double> prev;
    bool have_prev = false;
    int agree_streak = 0;
    for (long gamma = start; gamma <= limit; ++gamma) {
        const long delta = min_mesh(alpha, beta, p, gamma);
        std::complex<double> value;
        try {
            value = ball_char_sum(alpha, beta, p, gamma, delta, term_budget);
        } catch (const Error& err) {
            if (err.code() == "SumTooLarge") {
                throw Error("NoStabilization", "term budget exhausted before stabilization");
            }
            throw;
        }
        if (have_prev && std::abs(value - prev) < tol) {
            if (++agree_streak >= 2) return value;
        } else {
            agree_streak = 0;
        }
        prev = value;
        have_prev = true;
    }
    throw Error("NoStabilization", "ball integrals did not settle within the radius budget");
}

}  // namespace qp

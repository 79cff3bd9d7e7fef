#pragma once

#include <string>
#include <tuple>

#include "qp/gauss.hpp"
#include "qp/padic.hpp"

namespace qp {

// Sentinel for an exact value (no truncation error).
inline constexpr long kExactErr = std::numeric_limits<long>::max();

// Truncated p-adic series value; true - value has valuation >= error_valuation,
// with the bound proven from the truncation rule.
struct SeriesApprox {
    Rat value;
    long error_valuation = kExactErr;
};

// Classical action on the endpoints, S(x2, t_end; x1, t_start) =
// a x2^2 + b x2 x1 + c x1^2 + d x2 + e x1 + f, with b != 0.
struct QuadraticAction {
    Rat a, b, c, d, e, f;
    Rat t_start, t_end;
    std::string label;

    // For series-backed systems: every coefficient differs from the true one
    // by a rational of p-adic valuation >= err (p = err_prime). Exact otherwise.
    long err = kExactErr;
    long err_prime = 0;

    Rat eval(const Rat& x2, const Rat& x1) const {
        return a * x2 * x2 + b * x2 * x1 + c * x1 * x1 + d * x2 + e * x1 + f;
    }
    bool exact() const { return err == kExactErr; }
};

// S = m (x2 - x1)^2 / (2T). Throws ZeroInterval / ZeroMass.
QuadraticAction free_particle(const Rat& m, const Rat& t_start, const Rat& t_end);

// L = m qdot^2/2 - g q: S = m (x2 - x1)^2 / (2T) - gT(x2 + x1)/2 - g^2 T^3 / (24 m).
QuadraticAction constant_field(const Rat& m, const Rat& g, const Rat& t_start, const Rat& t_end);

// p-adic analytic sine/cosine on the convergence disk (v(x) >= 1, or >= 2 at p = 2).
// Throws OutsideDisk beyond it.
SeriesApprox sin_p(const Rat& x, long p, long target_valuation);
SeriesApprox cos_p(const Rat& x, long p, long target_valuation);

// S = (m w / (2 sin wT)) [(x2^2 + x1^2) cos wT - 2 x2 x1], series-backed with the
// declared coefficient error valuation >= target_valuation.
QuadraticAction harmonic_oscillator(const Rat& m, const Rat& omega, const Rat& t_start,
                                    const Rat& t_end, long p, long target_valuation);

// (d2/dx2^2, d2/dx2 dx1, d2/dx1^2) = (2a, b, 2c).
std::tuple<Rat, Rat, Rat> second_derivatives(const QuadraticAction& s);

struct Composition {
    QuadraticAction total;   // induced action on the outer endpoints
    Rat alpha;               // -(S1.c + S2.a)/h, the Gauss coefficient in the midpoint
    ExactCircle gauss_factor;  // lambda_v(alpha) |2 alpha|_v^{-1/2}
};

// Integrates out the shared endpoint of S1 (later interval) and S2 (earlier
// interval) by completing the square; one code path for every catalog system.
// Throws TimeMismatch / DegenerateComposition.
Composition compose(const QuadraticAction& s1, const QuadraticAction& s2, const Place& v,
                    const Rat& h);

}  // namespace qp

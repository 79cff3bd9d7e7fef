#pragma once

#include <complex>

#include "qp/padic.hpp"

namespace qp {

inline constexpr long kDefaultTermBudget = 10'000'000;

// Ball B_gamma = p^{-gamma} Z_p sampled at mesh cosets x + p^{delta} Z_p.
struct BallSpec {
    long p = 2;
    long gamma = 0;
    long delta = 0;
};

// Closed form of the full-space Gauss integral of chi_v(alpha x^2 + beta x):
// lambda_v(alpha) |2 alpha|_v^{-1/2} chi_v(-beta^2 / 4 alpha). Throws ZeroAlpha.
ExactCircle gauss_closed(const Rat& alpha, const Rat& beta, const Place& v);

// Mesh exponent delta making x -> chi_p(alpha x^2 + beta x) constant on cosets
// x + p^delta Z_p throughout B_gamma (margin 2 covers the doubling at p = 2).
long min_mesh(const Rat& alpha, const Rat& beta, long p, long gamma);

// Exact ball integral of chi_p(alpha x^2 + beta x) over B_gamma, evaluated as a
// finite character sum in deterministic chunked order with compensated summation.
std::complex<double> gauss_brute(const Rat& alpha, const Rat& beta, const BallSpec& spec,
                                 long term_budget = kDefaultTermBudget);

// Full-space integral as the stabilized ball limit; agrees with gauss_closed.
std::complex<double> gauss_stabilized(const Rat& alpha, const Rat& beta, long p, double tol,
                                      long term_budget = kDefaultTermBudget);

// Starting radius exponent used by gauss_stabilized (the analytic threshold at
// which the ball integral already equals the full-space one, before detection).
long stabilization_start(const Rat& alpha, const Rat& beta, long p);

// Shared kernel of all brute-force sums: sum over coset representatives of
// B_gamma modulo p^delta Z_p of chi_p(alpha x^2 + beta x) * p^{-delta}.
// Preconditions: delta >= -gamma, p^{gamma+delta} <= budget, mesh fine enough.
std::complex<double> ball_char_sum(const Rat& alpha, const Rat& beta, long p, long gamma,
                                   long delta, long term_budget);

}  // namespace qp

#pragma once

#include <complex>
#include <vector>

#include "qp/actions.hpp"

namespace qp {

struct KernelSpec {
    QuadraticAction action;
    Place place = Place::infinity();
    Rat h = Rat(1);
};

// One coefficient * indicator of the ball center + p^gamma Z_p (radius p^{-gamma}).
struct BallTerm {
    std::complex<double> coeff{1.0, 0.0};
    Rat center;
    long gamma = 0;
};
using BallFunction = std::vector<BallTerm>;

struct VerificationReport {
    std::string name;
    bool pass = false;
    std::string witness;  // both sides of the failed comparison, or a summary
};

// N_v = lambda_v(-b/2h) |b/h|_v^{1/2}.
ExactCircle normalization(const KernelSpec& spec);

// K_v(x2, t_end; x1, t_start) = N_v * chi_v(-S(x2, x1)/h).
ExactCircle kernel_at(const KernelSpec& spec, const Rat& x2, const Rat& x1);

// Composes the two kernels through the Gauss integral and compares against the
// directly constructed action on the union interval: prefactor equality plus
// coefficientwise action equality (at the declared valuation when series-backed).
VerificationReport verify_group(const KernelSpec& spec1, const KernelSpec& spec2,
                                const QuadraticAction& direct);

// Kernel value from folding the given slices (ordered earliest to latest) by
// repeated composition; equals kernel_at of the direct action for every slicing.
ExactCircle time_sliced(const std::vector<QuadraticAction>& slices, const Place& v, const Rat& h,
                        const Rat& x2, const Rat& x1);

// U psi samples: brute-force integration of K(x2, .) against a ball function.
std::vector<std::complex<double>> evolve(const KernelSpec& spec, const BallFunction& psi,
                                         const std::vector<Rat>& sample_points,
                                         long term_budget = kDefaultTermBudget);

// Brute-force integral over B_gamma of conj(K(x2, .)) K(z, .); vanishes once
// gamma exceeds off_diag_threshold by one.
std::complex<double> off_diagonal_unitarity(const KernelSpec& spec, const Rat& x2, const Rat& z,
                                            long gamma, long term_budget = kDefaultTermBudget);

// gamma_0 = max(0, v_p((x2 - z) b / h)).
long off_diag_threshold(const KernelSpec& spec, const Rat& x2, const Rat& z);

struct UvRelations {
    Rat u;
    Rat v;
    bool u_unit = false;  // u == 1 + O(p) (1 + O(8) at p = 2); exact equality at infinity
    bool v_unit = false;
};

// Solves the two composition identities linking second derivatives of the split
// actions to those of the total one; the kernel derivation needs both factors
// to act trivially under lambda_p.
UvRelations relations_uv(const QuadraticAction& s1, const QuadraticAction& s2, const Place& place);

}  // namespace qp

#include "qp/propagator.hpp"

#include <algorithm>
#include <sstream>

namespace qp {

namespace {

void require_prime(const Place& v, const char* what) {
    if (v.infinite()) throw Error("PlaceNotPrime", std::string(what) + " needs a finite place");
}

bool coeff_close(const Rat& x, const Rat& y, long err, long p) {
    const Rat d = x - y;
    if (d == 0) return true;
    if (err == kExactErr) return false;
    return valuation(d, p) >= err;
}

std::string circle_str(const ExactCircle& c) {
    return "sqrt(" + to_string(c.mag2()) + ")*e(" + to_string(c.phase()) + ")";
}

}  // namespace

ExactCircle normalization(const KernelSpec& spec) {
    if (spec.h == 0) throw Error("ZeroPlanck", "h must be nonzero");
    if (spec.action.b == 0) throw Error("DegenerateAction", "mixed second derivative vanishes");
    const Rat ratio = spec.action.b / spec.h;
    return ExactCircle(norm(ratio, spec.place), lambda_fn(-ratio / 2, spec.place).phase());
}

ExactCircle kernel_at(const KernelSpec& spec, const Rat& x2, const Rat& x1) {
    const Rat arg = -spec.action.eval(x2, x1) / spec.h;
    return normalization(spec) * character(arg, spec.place);
}

VerificationReport verify_group(const KernelSpec& spec1, const KernelSpec& spec2,
                                const QuadraticAction& direct) {
    if (!(spec1.place == spec2.place) || spec1.h != spec2.h) {
        throw Error("SpecMismatch", "group check needs a shared place and h");
    }
    const Place& v = spec1.place;
    const Composition comp = compose(spec1.action, spec2.action, v, spec1.h);

    const ExactCircle lhs =
        normalization(spec1) * normalization(spec2) * comp.gauss_factor;
    const ExactCircle rhs = normalization(KernelSpec{direct, v, spec1.h});

    VerificationReport rep;
    rep.name = "group:" + direct.label + ":v=" + v.str();

    if (!(lhs == rhs)) {
        rep.pass = false;
        rep.witness = "prefactor " + circle_str(lhs) + " vs " + circle_str(rhs);
        return rep;
    }

    const long err = std::min(comp.total.err, direct.err);
    const long p = v.infinite() ? 2 : v.p();
    const std::pair<Rat, Rat> coeffs[] = {
        {comp.total.a, direct.a}, {comp.total.b, direct.b}, {comp.total.c, direct.c},
        {comp.total.d, direct.d}, {comp.total.e, direct.e}, {comp.total.f, direct.f},
    };
    const char* names = "abcdef";
    for (int i = 0; i < 6; ++i) {
        if (!coeff_close(coeffs[i].first, coeffs[i].second, err, p)) {
            rep.pass = false;
            std::ostringstream os;
            os << "coefficient " << names[i] << ": " << to_string(coeffs[i].first) << " vs "
               << to_string(coeffs[i].second);
            rep.witness = os.str();
            return rep;
        }
    }
    rep.pass = true;
    rep.witness = "prefactor " + circle_str(lhs);
    return rep;
}

ExactCircle time_sliced(const std::vector<QuadraticAction>& slices, const Place& v, const Rat& h,
                        const Rat& x2, const Rat& x1) {
    if (slices.empty()) throw Error("EmptySlicing", "at least one slice is required");
    QuadraticAction acc = slices.back();
    ExactCircle pref = normalization(KernelSpec{acc, v, h});
    for (auto it = slices.rbegin() + 1; it != slices.rend(); ++it) {
        Composition comp = compose(acc, *it, v, h);
        pref = pref * normalization(KernelSpec{*it, v, h}) * comp.gauss_factor;
        acc = std::move(comp.total);
    }
    return pref * character(-acc.eval(x2, x1) / h, v);
}

std::vector<std::complex<double>> evolve(const KernelSpec& spec, const BallFunction& psi,
                                         const std::vector<Rat>& sample_points,
                                         long term_budget) {
    require_prime(spec.place, "evolve");
    const long p = spec.place.p();
    const QuadraticAction& s = spec.action;
    const std::complex<double> nf = normalization(spec).to_complex();

    std::vector<std::complex<double>> out;
    out.reserve(sample_points.size());
    for (const Rat& x2 : sample_points) {
        const Rat qa = -s.c / spec.h;
        const Rat qb = -(s.b * x2 + s.e) / spec.h;
        const Rat qc = -(s.a * x2 * x2 + s.d * x2 + s.f) / spec.h;

        std::complex<double> acc{0.0, 0.0};
        for (const BallTerm& ball : psi) {
            // Center the ball: x1 = center + y with y in p^gamma Z_p.
            const Rat qb_shift = 2 * qa * ball.center + qb;
            const Rat phase0 = qa * ball.center * ball.center + qb * ball.center + qc;
            const long g = -ball.gamma;
            const long delta = std::max(min_mesh(qa, qb_shift, p, g), ball.gamma);
            const std::complex<double> sum =
                ball_char_sum(qa, qb_shift, p, g, delta, term_budget);
            acc += ball.coeff * character(phase0, spec.place).to_complex() * sum;
        }
        out.push_back(nf * acc);
    }
    return out;
}

long off_diag_threshold(const KernelSpec& spec, const Rat& x2, const Rat& z) {
    require_prime(spec.place, "unitarity check");
    const Rat lam = (x2 - z) * spec.action.b / spec.h;
    if (lam == 0) return 0;
    return std::max(0L, valuation(lam, spec.place.p()));
}

std::complex<double> off_diagonal_unitarity(const KernelSpec& spec, const Rat& x2, const Rat& z,
                                            long gamma, long term_budget) {
    require_prime(spec.place, "unitarity check");
    const long p = spec.place.p();
    const QuadraticAction& s = spec.action;
    // conj(K(x2,.)) K(z,.) = |N|^2 chi_p(mu + lam * x1), linear in x1.
    const Rat lam = (x2 - z) * s.b / spec.h;
    const Rat mu = (s.a * (x2 * x2 - z * z) + s.d * (x2 - z)) / spec.h;
    const long delta = min_mesh(Rat(0), lam, p, gamma);
    const std::complex<double> sum = ball_char_sum(Rat(0), lam, p, gamma, delta, term_budget);
    return normalization(spec).mag2().get_d() *
           character(mu, spec.place).to_complex() * sum;
}

UvRelations relations_uv(const QuadraticAction& s1, const QuadraticAction& s2, const Place& place) {
    if (s1.t_start != s2.t_end) {
        throw Error("TimeMismatch", "actions do not share the intermediate time");
    }
    const Rat mixed_sum = s1.b + s2.b;
    const Rat quad_sum = s1.c + s2.a;
    if (mixed_sum == 0 || quad_sum == 0 || s1.b == 0 || s2.b == 0) {
        throw Error("DegenerateRelation", "vanishing second derivative in the u/v relations");
    }
    UvRelations rel;
    rel.u = -2 * quad_sum / mixed_sum;
    rel.v = -mixed_sum / (2 * quad_sum);
    const auto is_unit = [&](const Rat& x) {
        if (place.infinite()) return x == 1;
        const long need = (place.p() == 2) ? 3 : 1;
        return x == 1 || valuation(x - 1, place.p()) >= need;
    };
    rel.u_unit = is_unit(rel.u);
    rel.v_unit = is_unit(rel.v);
    return rel;
}

}  // namespace qp

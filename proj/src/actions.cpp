#include "qp/actions.hpp"

#include <algorithm>
#include <cstdlib>

namespace qp {

namespace {

constexpr long kBig = std::numeric_limits<long>::max() / 4;

long sat_add(long a, long b) {
    if (a >= kBig || b >= kBig) return kExactErr;
    return a + b;
}

// Rational value with a proven lower bound on the valuation of its error.
struct Tr {
    Rat v;
    long e = kExactErr;
};

struct TrCtx {
    long p;

    long val(const Rat& x) const { return (x == 0) ? kValInfinity : valuation(x, p); }

    Tr exact(Rat x) const { return {std::move(x), kExactErr}; }
    Tr add(const Tr& a, const Tr& b) const { return {a.v + b.v, std::min(a.e, b.e)}; }
    Tr sub(const Tr& a, const Tr& b) const { return {a.v - b.v, std::min(a.e, b.e)}; }
    Tr neg(const Tr& a) const { return {-a.v, a.e}; }
    Tr mul(const Tr& a, const Tr& b) const {
        const long e = std::min({sat_add(val(a.v), b.e), sat_add(val(b.v), a.e), sat_add(a.e, b.e)});
        return {a.v * b.v, e};
    }
    Tr inv(const Tr& a) const {
        if (a.v == 0) throw Error("DegenerateComposition", "inverse of zero coefficient");
        if (a.e == kExactErr) return {Rat(1) / a.v, kExactErr};
        const long w = val(a.v);
        if (a.e <= w) throw Error("PrecisionLoss", "approximant too coarse for inversion");
        return {Rat(1) / a.v, a.e - 2 * w};
    }
    Tr div(const Tr& a, const Tr& b) const { return mul(a, inv(b)); }
};

void check_interval(const Rat& m, const Rat& t_start, const Rat& t_end) {
    if (t_end == t_start) throw Error("ZeroInterval", "t_end must differ from t_start");
    if (m == 0) throw Error("ZeroMass", "mass must be nonzero");
}

SeriesApprox analytic_series(const Rat& x, long p, long target, bool odd) {
    if (x == 0) return {odd ? Rat(0) : Rat(1), kExactErr};
    const long w = valuation(x, p);
    if (w < (p == 2 ? 2 : 1)) {
        throw Error("OutsideDisk", "argument outside the p-adic convergence disk");
    }
    const Rat x2 = x * x;
    Rat acc = odd ? x : Rat(1);
    Rat term = acc;
    int sign = 1;
    long k = odd ? 1 : 0;
    long tail_bound;
    for (;;) {
        const long next = k + 2;
        // v(x^n / n!) >= n*w - (n-1)/(p-1), increasing in n since w > 1/(p-1).
        const Rat lower = Rat(next) * w - Rat(std::max(next - 1, 0L), p - 1);
        if (lower > target) {
            Int c;
            mpz_cdiv_q(c.get_mpz_t(), lower.get_num_mpz_t(), lower.get_den_mpz_t());
            tail_bound = c.get_si();
            break;
        }
        term *= x2;
        term /= Rat(Int(k + 1) * Int(k + 2));
        sign = -sign;
        acc += sign > 0 ? term : -term;
        k = next;
    }
    return {acc, tail_bound};
}

}  // namespace

QuadraticAction free_particle(const Rat& m, const Rat& t_start, const Rat& t_end) {
    check_interval(m, t_start, t_end);
    const Rat T = t_end - t_start;
    QuadraticAction s;
    s.a = s.c = m / (2 * T);
    s.b = -m / T;
    s.d = s.e = s.f = 0;
    s.t_start = t_start;
    s.t_end = t_end;
    s.label = "free";
    return s;
}

QuadraticAction constant_field(const Rat& m, const Rat& g, const Rat& t_start, const Rat& t_end) {
    QuadraticAction s = free_particle(m, t_start, t_end);
    const Rat T = t_end - t_start;
    s.d = s.e = -g * T / 2;
    s.f = -g * g * T * T * T / (24 * m);
    s.label = "field";
    return s;
}

SeriesApprox sin_p(const Rat& x, long p, long target_valuation) {
    return analytic_series(x, p, target_valuation, true);
}

SeriesApprox cos_p(const Rat& x, long p, long target_valuation) {
    return analytic_series(x, p, target_valuation, false);
}

QuadraticAction harmonic_oscillator(const Rat& m, const Rat& omega, const Rat& t_start,
                                    const Rat& t_end, long p, long target_valuation) {
    check_interval(m, t_start, t_end);
    if (omega == 0) throw Error("ZeroFrequency", "oscillator frequency must be nonzero");
    const Rat x = omega * (t_end - t_start);
    const long w = valuation(x, p);

    TrCtx ctx{p};
    const Rat mw = m * omega;
    long series_target =
        target_valuation + 2 * std::labs(w) + std::labs(valuation(mw, p)) + 5;

    for (int attempt = 0; attempt < 6; ++attempt) {
        const SeriesApprox s = sin_p(x, p, series_target);
        const SeriesApprox c = cos_p(x, p, series_target);
        const Tr inv_sin = ctx.inv({s.value, s.error_valuation});
        const Tr diag = ctx.mul(ctx.mul(ctx.exact(mw / 2), {c.value, c.error_valuation}), inv_sin);
        const Tr mixed = ctx.mul(ctx.exact(-mw), inv_sin);
        const long achieved = std::min(diag.e, mixed.e);
        if (achieved >= target_valuation) {
            QuadraticAction out;
            out.a = out.c = diag.v;
            out.b = mixed.v;
            out.d = out.e = out.f = 0;
            out.t_start = t_start;
            out.t_end = t_end;
            out.label = "oscillator";
            out.err = achieved;
            out.err_prime = p;
            return out;
        }
        series_target += (target_valuation - achieved) + 2;
    }
    throw Error("PrecisionLoss", "could not reach the requested coefficient valuation");
}

std::tuple<Rat, Rat, Rat> second_derivatives(const QuadraticAction& s) {
    return {2 * s.a, s.b, 2 * s.c};
}

Composition compose(const QuadraticAction& s1, const QuadraticAction& s2, const Place& v,
                    const Rat& h) {
    if (s1.t_start != s2.t_end) {
        throw Error("TimeMismatch", "actions do not share the intermediate time");
    }
    if (h == 0) throw Error("ZeroPlanck", "h must be nonzero");

    long ctx_prime = 2;  // irrelevant when everything is exact
    const bool approx = !s1.exact() || !s2.exact();
    if (approx) {
        if (v.infinite()) {
            throw Error("PlaceMismatch", "series-backed actions require a finite place");
        }
        ctx_prime = v.p();
        for (const QuadraticAction* s : {&s1, &s2}) {
            if (!s->exact() && s->err_prime != ctx_prime) {
                throw Error("PlaceMismatch", "action approximated at a different prime");
            }
        }
    }
    TrCtx ctx{ctx_prime};
    const auto tr = [](const QuadraticAction& s, const Rat& x) { return Tr{x, s.err}; };

    const Tr D = ctx.add(tr(s1, s1.c), tr(s2, s2.a));
    if (D.v == 0) throw Error("DegenerateComposition", "quadratic midpoint term vanishes");
    const Rat alpha = -D.v / h;

    const Tr b1 = tr(s1, s1.b), b2 = tr(s2, s2.b);
    const Tr L = ctx.add(tr(s1, s1.e), tr(s2, s2.d));
    const Tr two_d = ctx.mul(ctx.exact(Rat(2)), D);
    const Tr four_d = ctx.mul(ctx.exact(Rat(4)), D);

    QuadraticAction out;
    const Tr oa = ctx.sub(tr(s1, s1.a), ctx.div(ctx.mul(b1, b1), four_d));
    const Tr ob = ctx.neg(ctx.div(ctx.mul(b1, b2), two_d));
    const Tr oc = ctx.sub(tr(s2, s2.c), ctx.div(ctx.mul(b2, b2), four_d));
    const Tr od = ctx.sub(tr(s1, s1.d), ctx.div(ctx.mul(b1, L), two_d));
    const Tr oe = ctx.sub(tr(s2, s2.e), ctx.div(ctx.mul(b2, L), two_d));
    const Tr of = ctx.sub(ctx.add(tr(s1, s1.f), tr(s2, s2.f)), ctx.div(ctx.mul(L, L), four_d));

    out.a = oa.v;
    out.b = ob.v;
    out.c = oc.v;
    out.d = od.v;
    out.e = oe.v;
    out.f = of.v;
    out.t_start = s2.t_start;
    out.t_end = s1.t_end;
    out.label = s2.label == s1.label ? s1.label : s2.label + "+" + s1.label;
    out.err = std::min({oa.e, ob.e, oc.e, od.e, oe.e, of.e});
    out.err_prime = (out.err == kExactErr) ? 0 : ctx_prime;
    if (out.b == 0) throw Error("DegenerateComposition", "composed mixed derivative vanishes");

    Composition result;
    result.alpha = alpha;
    result.gauss_factor =
        ExactCircle(Rat(1) / norm(2 * alpha, v), lambda_fn(alpha, v).phase());
    result.total = std::move(out);
    return result;
}

}  // namespace qp

#include "qp/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qp {

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}

    long range(long lo, long hi) {
        return lo + static_cast<long>(eng() % static_cast<unsigned long long>(hi - lo + 1));
    }
    bool coin() { return (eng() & 1) != 0; }

    // Nonzero rational with numerator and denominator coprime to p.
    Rat unit_rat(long p) {
        long s = range(1, 20);
        while (s % p == 0) s = range(1, 20);
        long t = range(1, 20);
        while (t % p == 0) t = range(1, 20);
        Rat r(coin() ? s : -s, t);
        r.canonicalize();
        return r;
    }
    // Nonzero rational with p-adic valuation uniform in [vlo, vhi].
    Rat p_rat(long p, long vlo, long vhi) { return unit_rat(p) * p_power(p, range(vlo, vhi)); }

    Rat real_rat(long maxn) {
        Rat r(coin() ? range(1, maxn) : -range(1, maxn), range(1, maxn));
        r.canonicalize();
        return r;
    }
    Rat rat_for(const Place& v, long vlo, long vhi) {
        return v.infinite() ? real_rat(12) : p_rat(v.p(), vlo, vhi);
    }
};

double suite_tol(const SuiteConfig& cfg, double fallback) {
    return cfg.tol > 0 ? cfg.tol : fallback;
}

std::vector<Place> filtered_places(const SuiteConfig& cfg, std::vector<Place> all) {
    if (!cfg.place_filter) return all;
    std::vector<Place> out;
    for (const Place& v : all) {
        if (v == *cfg.place_filter) out.push_back(v);
    }
    return out;
}

std::string fmt_inputs(const SuiteConfig& cfg, int cases) {
    std::ostringstream os;
    os << "seed=" << cfg.seed << " cases=" << cases;
    return os.str();
}

const Rat kHChoices[] = {Rat(1), Rat(1, 2), Rat(2), Rat(3)};

// One randomly drawn catalog system split across an intermediate time.
struct Split {
    std::string sys;
    Rat m, g, omega;
    Rat t0, tm, t1;
    Rat h;
    QuadraticAction early, late, direct;

    QuadraticAction on(const Rat& a, const Rat& b, const Place& v, long target) const {
        if (sys == "free") return free_particle(m, a, b);
        if (sys == "field") return constant_field(m, g, a, b);
        return harmonic_oscillator(m, omega, a, b, v.p(), target);
    }
};

Split random_split(Rng& rng, const std::string& sys, const Place& v, int idx, long target) {
    for (;;) {
        Split s;
        s.sys = sys;
        s.h = kHChoices[idx % 4];
        s.m = rng.rat_for(v, -2, 2);
        s.g = rng.rat_for(v, -2, 2);
        if (sys == "oscillator") {
            const long p = v.p();
            s.omega = rng.p_rat(p, p == 2 ? 2 : 1, p == 2 ? 3 : 2);
            s.t0 = rng.p_rat(p, 0, 2);
            s.tm = rng.p_rat(p, 0, 2);
            s.t1 = rng.p_rat(p, 0, 2);
        } else {
            s.t0 = rng.rat_for(v, -2, 2);
            s.tm = rng.rat_for(v, -2, 2);
            s.t1 = rng.rat_for(v, -2, 2);
        }
        if (s.t0 == s.tm || s.tm == s.t1 || s.t0 == s.t1) continue;
        try {
            s.early = s.on(s.t0, s.tm, v, target);
            s.late = s.on(s.tm, s.t1, v, target);
            s.direct = s.on(s.t0, s.t1, v, target);
            return s;
        } catch (const Error&) {
            continue;  // outside disk or degenerate draw; redraw
        }
    }
}

// ---------------------------------------------------------------- lambda ----

std::vector<CheckResult> suite_lambda(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int n = cfg.count > 0 ? cfg.count : 1000;
    std::vector<Place> places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7),
              Place::at_prime(13), Place::infinity()});
    for (const Place& v : places) {
        Rng rng(cfg.seed + (v.infinite() ? 1 : static_cast<unsigned>(v.p())));
        CheckResult scaling{"lambda.scaling:v=" + v.str(), fmt_inputs(cfg, n),
                            "lambda(a^2 x) = lambda(x)", "", 0.0, true};
        CheckResult mult{"lambda.product:v=" + v.str(), fmt_inputs(cfg, n),
                         "lambda(x)lambda(y) = lambda(x+y)lambda(1/x+1/y)", "", 0.0, true};
        CheckResult unimod{"lambda.unimodular:v=" + v.str(), fmt_inputs(cfg, n),
                           "conj(lambda(x)) lambda(x) = 1", "", 0.0, true};
        for (int i = 0; i < n; ++i) {
            const Rat x = v.infinite() ? rng.real_rat(30) : rng.p_rat(v.p(), -4, 4);
            const Rat y = v.infinite() ? rng.real_rat(30) : rng.p_rat(v.p(), -4, 4);
            const Rat a = v.infinite() ? rng.real_rat(30) : rng.p_rat(v.p(), -3, 3);

            if (!(lambda_fn(a * a * x, v) == lambda_fn(x, v))) {
                scaling.pass = false;
                scaling.got = "x=" + to_string(x) + " a=" + to_string(a);
            }
            if (x + y != 0) {
                const Rat xi = Rat(1) / x + Rat(1) / y;
                if (xi != 0 && !(lambda_fn(x, v) * lambda_fn(y, v) ==
                                 lambda_fn(x + y, v) * lambda_fn(xi, v))) {
                    mult.pass = false;
                    mult.got = "x=" + to_string(x) + " y=" + to_string(y);
                }
            }
            if (!(lambda_fn(x, v).conj() * lambda_fn(x, v) == ExactCircle())) {
                unimod.pass = false;
                unimod.got = "x=" + to_string(x);
            }
        }
        for (CheckResult* c : {&scaling, &mult, &unimod}) {
            if (c->pass) c->got = "all exact";
        }
        out.push_back(scaling);
        out.push_back(mult);
        out.push_back(unimod);
    }
    return out;
}

// ----------------------------------------------------------------- gauss ----

std::vector<CheckResult> suite_gauss(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int n = cfg.count > 0 ? cfg.count : 50;
    const double tol = suite_tol(cfg, 1e-9);
    std::vector<Place> places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7)});
    for (const Place& v : places) {
        const long p = v.p();
        Rng rng(cfg.seed * 31 + static_cast<unsigned>(p));
        CheckResult res{"gauss.oracle:p=" + std::to_string(p), fmt_inputs(cfg, n),
                        "|closed - brute| < tol", "", tol, true};
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Rat alpha, beta;
            long span = 3;
            for (int tries = 0;; ++tries) {
                alpha = rng.p_rat(p, -span, span);
                beta = (rng.range(0, 4) == 0) ? Rat(0) : rng.p_rat(p, -span, span);
                if (tries > 200) beta = 0;
                if (tries > 250) alpha = rng.unit_rat(p);
                // Keep the whole stabilization pass (two agreements past the
                // starting radius) inside the term budget.
                const long ghigh = stabilization_start(alpha, beta, p) + 2;
                const double cost =
                    std::pow(static_cast<double>(p),
                             static_cast<double>(ghigh + min_mesh(alpha, beta, p, ghigh)));
                if (cost <= static_cast<double>(cfg.term_budget)) break;
                if (tries > 50) span = std::max(1L, span - 1);
            }
            const std::complex<double> closed = gauss_closed(alpha, beta, v).to_complex();
            const std::complex<double> brute =
                gauss_stabilized(alpha, beta, p, tol, cfg.term_budget);
            const double diff = std::abs(closed - brute);
            worst = std::max(worst, diff);
            if (diff >= tol) {
                res.pass = false;
                res.got = "alpha=" + to_string(alpha) + " beta=" + to_string(beta) +
                          " diff=" + std::to_string(diff);
            }
        }
        if (res.pass) res.got = "max diff " + std::to_string(worst);
        out.push_back(res);
    }
    return out;
}

// ----------------------------------------------------------------- group ----

std::vector<CheckResult> suite_group(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int n = cfg.count > 0 ? cfg.count : 100;
    const int n_osc = cfg.count > 0 ? cfg.count : 25;
    const long target = 14;

    std::vector<Place> poly_places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7),
              Place::infinity()});
    std::vector<Place> osc_places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7)});

    const auto run = [&](const std::string& sys, const std::vector<Place>& places, int cases) {
        for (const Place& v : places) {
            Rng rng(cfg.seed * 131 + static_cast<unsigned>(v.infinite() ? 1 : v.p()) +
                    static_cast<unsigned>(sys.size()));
            CheckResult res{"group." + sys + ":v=" + v.str(), fmt_inputs(cfg, cases),
                            "composed kernel = direct kernel", "", 0.0, true};
            for (int i = 0; i < cases && res.pass; ++i) {
                for (;;) {
                    const Split s = random_split(rng, sys, v, i, target);
                    VerificationReport rep;
                    try {
                        rep = verify_group(KernelSpec{s.late, v, s.h},
                                           KernelSpec{s.early, v, s.h}, s.direct);
                    } catch (const Error& err) {
                        if (err.code() == "DegenerateComposition") continue;
                        throw;
                    }
                    if (!rep.pass) {
                        res.pass = false;
                        res.got = rep.witness;
                    }
                    break;
                }
            }
            if (res.pass) res.got = "all splits match";
            out.push_back(res);
        }
    };
    run("free", poly_places, n);
    run("field", poly_places, n);
    run("oscillator", osc_places, n_osc);
    return out;
}

// ----------------------------------------------------------------- norms ----

std::vector<CheckResult> suite_norms(const SuiteConfig& cfg) {
    const int n = cfg.count > 0 ? cfg.count : 50;
    std::vector<Place> places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7),
              Place::infinity()});
    CheckResult res{"norms.modulus", fmt_inputs(cfg, n),
                    "mag2(N) = |b/h|_v exactly, matching the float modulus", "", 0.0, true};
    Rng rng(cfg.seed * 977);
    for (int i = 0; i < n && res.pass; ++i) {
        const Place v =
            places[static_cast<size_t>(rng.range(0, static_cast<long>(places.size()) - 1))];
        std::string sys = rng.coin() ? "free" : "field";
        if (!v.infinite() && rng.range(0, 3) == 0) sys = "oscillator";
        const Split s = random_split(rng, sys, v, i, 14);
        const KernelSpec spec{s.direct, v, s.h};
        const ExactCircle nrm = normalization(spec);
        if (nrm.mag2() != norm(s.direct.b / s.h, v)) {
            res.pass = false;
            res.got = "mag2 " + to_string(nrm.mag2()) + " at v=" + v.str();
            break;
        }
        const double fl = std::norm(nrm.to_complex());
        if (std::abs(fl - nrm.mag2().get_d()) > 1e-9 * (1.0 + std::abs(fl))) {
            res.pass = false;
            res.got = "float modulus disagrees at v=" + v.str();
        }
    }
    if (res.pass) res.got = "all exact";
    return {res};
}

// -------------------------------------------------------------------- uv ----

std::vector<CheckResult> suite_uv(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int n = cfg.count > 0 ? cfg.count : 50;
    std::vector<Place> places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7),
              Place::infinity()});
    if (places.empty()) return out;

    for (const std::string sys : {"free", "field", "oscillator"}) {
        CheckResult res{"uv." + sys, fmt_inputs(cfg, n),
                        sys == "oscillator" ? "u, v = 1 + O(p) (1 + O(8) at p = 2)" : "u = v = 1",
                        "", 0.0, true};
        Rng rng(cfg.seed * 577 + static_cast<unsigned>(sys.size()));
        for (int i = 0; i < n && res.pass; ++i) {
            Place v =
                places[static_cast<size_t>(rng.range(0, static_cast<long>(places.size()) - 1))];
            if (sys == "oscillator" && v.infinite()) v = Place::at_prime(3);
            const Split s = random_split(rng, sys, v, i, 14);
            UvRelations rel;
            try {
                rel = relations_uv(s.late, s.early, v);
            } catch (const Error& err) {
                if (err.code() == "DegenerateRelation") {
                    --i;
                    continue;
                }
                throw;
            }
            const bool ok = (sys == "oscillator") ? (rel.u_unit && rel.v_unit)
                                                  : (rel.u == 1 && rel.v == 1);
            if (!ok) {
                res.pass = false;
                res.got = "u=" + to_string(rel.u) + " v=" + to_string(rel.v) + " at v=" + v.str();
            }
        }
        if (res.pass) res.got = "all as expected";
        out.push_back(res);
    }
    return out;
}

// ------------------------------------------------------------- unitarity ----

std::vector<CheckResult> suite_unitarity(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int n = cfg.count > 0 ? cfg.count : 25;
    const double tol = suite_tol(cfg, 1e-9);
    std::vector<Place> places = filtered_places(cfg, {Place::at_prime(3), Place::at_prime(5)});
    for (const Place& v : places) {
        Rng rng(cfg.seed * 313 + static_cast<unsigned>(v.p()));
        CheckResult res{"unitarity.offdiag:p=" + std::to_string(v.p()), fmt_inputs(cfg, n),
                        "|integral over B_gamma| < tol for gamma = gamma_0 + 1", "", tol, true};
        double worst = 0.0;
        for (int i = 0; i < n && res.pass; ++i) {
            const std::string sys = rng.coin() ? "free" : "field";
            const Split s = random_split(rng, sys, v, i, 14);
            const KernelSpec spec{s.direct, v, s.h};
            Rat x2 = rng.p_rat(v.p(), -2, 2);
            Rat z = rng.p_rat(v.p(), -2, 2);
            if (x2 == z) z = x2 + 1;
            const long g0 = off_diag_threshold(spec, x2, z);
            const double val =
                std::abs(off_diagonal_unitarity(spec, x2, z, g0 + 1, cfg.term_budget));
            worst = std::max(worst, val);
            if (val >= tol) {
                res.pass = false;
                res.got = "x2=" + to_string(x2) + " z=" + to_string(z) +
                          " |I|=" + std::to_string(val);
            }
        }
        if (res.pass) res.got = "max |I| " + std::to_string(worst);
        out.push_back(res);
    }
    return out;
}

// ----------------------------------------------------------------- slice ----

std::vector<CheckResult> suite_slice(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const int per_place = cfg.count > 0 ? cfg.count : 3;
    const long target = 18;

    std::vector<Place> poly_places = filtered_places(
        cfg, {Place::at_prime(2), Place::at_prime(3), Place::at_prime(5), Place::at_prime(7),
              Place::infinity()});
    std::vector<Place> osc_places = filtered_places(cfg, {Place::at_prime(3), Place::at_prime(5)});

    const auto run = [&](const std::string& sys, const std::vector<Place>& places,
                         const std::vector<long>& counts) {
        for (const Place& v : places) {
            Rng rng(cfg.seed * 739 + static_cast<unsigned>(v.infinite() ? 1 : v.p()) +
                    static_cast<unsigned>(sys.size()));
            CheckResult res{"slice." + sys + ":v=" + v.str(), fmt_inputs(cfg, per_place),
                            "time_sliced(n) = kernel_at", "", 0.0, true};
            for (int i = 0; i < per_place && res.pass; ++i) {
                const Split s = random_split(rng, sys, v, i, target);
                const Rat x2 = rng.rat_for(v, -2, 2);
                const Rat x1 = rng.rat_for(v, -2, 2);
                const ExactCircle direct = kernel_at(KernelSpec{s.direct, v, s.h}, x2, x1);
                for (long nsl : counts) {
                    std::vector<QuadraticAction> slices;
                    bool built = true;
                    try {
                        for (long k = 0; k < nsl; ++k) {
                            const Rat ta = s.t0 + (s.t1 - s.t0) * Rat(k, nsl);
                            const Rat tb = s.t0 + (s.t1 - s.t0) * Rat(k + 1, nsl);
                            slices.push_back(s.on(ta, tb, v, target));
                        }
                    } catch (const Error&) {
                        built = false;  // oscillator sub-interval left the disk
                    }
                    if (!built) continue;
                    ExactCircle sliced;
                    try {
                        sliced = time_sliced(slices, v, s.h, x2, x1);
                    } catch (const Error& err) {
                        if (err.code() == "DegenerateComposition") continue;
                        throw;
                    }
                    if (!(sliced == direct)) {
                        res.pass = false;
                        res.got = "n=" + std::to_string(nsl) + " mag2 " +
                                  to_string(sliced.mag2()) + " vs " + to_string(direct.mag2()) +
                                  ", phase " + to_string(sliced.phase()) + " vs " +
                                  to_string(direct.phase());
                        break;
                    }
                }
            }
            if (res.pass) res.got = "exact for all slicings";
            out.push_back(res);
        }
    };
    run("free", poly_places, {1, 2, 3, 4, 8, 16});
    run("field", poly_places, {1, 2, 3, 4, 8, 16});
    run("oscillator", osc_places, {2, 4});
    return out;
}

// ----------------------------------------------------------------- delta ----

std::vector<CheckResult> suite_delta(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const double tol = suite_tol(cfg, 1e-9);
    const long p = (cfg.place_filter && !cfg.place_filter->infinite()) ? cfg.place_filter->p() : 3;
    const Place v = Place::at_prime(p);

    const std::vector<Rat> inside = {Rat(0), Rat(1), Rat(2), Rat(p + 1), Rat(p * p)};
    const std::vector<Rat> outside = {Rat(1, p), Rat(2, p), Rat(1, p * p)};
    const BallFunction psi = {BallTerm{{1.0, 0.0}, Rat(0), 0}};  // indicator of Z_p

    for (long k = 1; k <= 3; ++k) {
        const Rat T = p_power(p, k);
        const KernelSpec spec{free_particle(Rat(1), Rat(0), T), v, Rat(1)};
        CheckResult res{"delta.free:p=" + std::to_string(p) + ":k=" + std::to_string(k),
                        fmt_inputs(cfg, static_cast<int>(inside.size() + outside.size())),
                        "|U psi| = 1 on Z_p, 0 outside", "", tol, true};
        const auto in_vals = evolve(spec, psi, inside, cfg.term_budget);
        const auto out_vals = evolve(spec, psi, outside, cfg.term_budget);
        double worst = 0.0;
        for (size_t i = 0; i < in_vals.size(); ++i) {
            const double dev = std::abs(std::abs(in_vals[i]) - 1.0);
            worst = std::max(worst, dev);
            if (dev >= tol) {
                res.pass = false;
                res.got = "x=" + to_string(inside[i]) + " |U psi|=" +
                          std::to_string(std::abs(in_vals[i]));
            }
        }
        for (size_t i = 0; i < out_vals.size(); ++i) {
            const double mag = std::abs(out_vals[i]);
            worst = std::max(worst, mag);
            if (mag >= tol) {
                res.pass = false;
                res.got = "x=" + to_string(outside[i]) + " |U psi|=" + std::to_string(mag);
            }
        }
        if (res.pass) res.got = "max deviation " + std::to_string(worst);
        out.push_back(res);
    }
    return out;
}

// ------------------------------------------------------------------ arch ----

std::vector<CheckResult> suite_arch(const SuiteConfig& cfg) {
    const int n = cfg.count > 0 ? cfg.count : 50;
    const double tol = suite_tol(cfg, 1e-12);
    const Place v = Place::infinity();
    CheckResult res{"arch.correspondence", fmt_inputs(cfg, n),
                    "kernel = sqrt(i b / h) exp(2 pi i S / h)", "", tol, true};
    Rng rng(cfg.seed * 67);
    double worst = 0.0;
    for (int i = 0; i < n && res.pass; ++i) {
        const std::string sys = rng.coin() ? "free" : "field";
        const Split s = random_split(rng, sys, v, i, 0);
        const Rat x2 = rng.real_rat(6);
        const Rat x1 = rng.real_rat(6);
        const KernelSpec spec{s.direct, v, s.h};

        const std::complex<double> got = kernel_at(spec, x2, x1).to_complex();
        // Textbook real-case propagator, evaluated independently in floats
        // (principal square root; exact rational phase reduction mod 1).
        const Rat bh = s.direct.b / s.h;
        const std::complex<double> pref = std::sqrt(std::complex<double>(0.0, bh.get_d()));
        const Rat phase = mod1(s.direct.eval(x2, x1) / s.h);
        const std::complex<double> ref = pref * std::polar(1.0, 2.0 * M_PI * phase.get_d());

        const double diff = std::abs(got - ref);
        worst = std::max(worst, diff);
        if (diff >= tol) {
            res.pass = false;
            res.got = "m=" + to_string(s.m) + " diff=" + std::to_string(diff);
        }
    }
    if (res.pass) res.got = "max diff " + std::to_string(worst);
    return {res};
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"lambda", "gauss", "group", "norms", "uv", "unitarity", "slice", "delta", "arch"};
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "lambda") return suite_lambda(cfg);
    if (name == "gauss") return suite_gauss(cfg);
    if (name == "group") return suite_group(cfg);
    if (name == "norms") return suite_norms(cfg);
    if (name == "uv") return suite_uv(cfg);
    if (name == "unitarity") return suite_unitarity(cfg);
    if (name == "slice") return suite_slice(cfg);
    if (name == "delta") return suite_delta(cfg);
    if (name == "arch") return suite_arch(cfg);
    throw Error("UnknownSuite", "no suite named '" + name + "'");
}

}  // namespace qp

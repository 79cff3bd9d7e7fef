#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qp/suites.hpp"

using json = nlohmann::ordered_json;
using namespace qp;

namespace {

struct Options {
    std::string output = "json";
    Rat h = Rat(1);
    std::string h_text = "1";
    double tol = 1e-9;
    long budget = kDefaultTermBudget;
    unsigned long long seed = 42;
};

Place parse_place(const std::string& text) {
    if (text == "inf") return Place::infinity();
    try {
        return Place::at_prime(std::stol(text));
    } catch (const std::invalid_argument&) {
        throw Error("ParseError", "place must be a prime or 'inf': '" + text + "'");
    } catch (const std::out_of_range&) {
        throw Error("ParseError", "place out of range: '" + text + "'");
    }
}

void emit(const json& obj, const std::string& mode) {
    if (mode == "table") {
        for (const auto& [k, v] : obj.items()) {
            std::printf("%-10s %s\n", k.c_str(), v.is_string() ? v.get<std::string>().c_str()
                                                               : v.dump().c_str());
        }
    } else {
        std::printf("%s\n", obj.dump().c_str());
    }
}

json circle_json(const ExactCircle& c) {
    const std::complex<double> z = c.to_complex();
    return json{{"mag2", to_string(c.mag2())},
                {"phase", to_string(c.phase())},
                {"re", z.real()},
                {"im", z.imag()}};
}

struct SystemArgs {
    std::string system = "free";
    std::string m = "1", g = "1", omega;
    std::string t0 = "0", t1 = "1";
    long target = 12;
};

void add_system_flags(CLI::App* cmd, SystemArgs& sys) {
    cmd->add_option("--system", sys.system, "free | field | oscillator")
        ->check(CLI::IsMember({"free", "field", "oscillator"}));
    cmd->add_option("--m", sys.m, "mass (num/den)");
    cmd->add_option("--g", sys.g, "field strength (num/den)");
    cmd->add_option("--omega", sys.omega, "oscillator frequency (num/den)");
    cmd->add_option("--t0", sys.t0, "start time (num/den)");
    cmd->add_option("--t1", sys.t1, "end time (num/den)");
    cmd->add_option("--target", sys.target, "oscillator coefficient precision (valuation)");
}

QuadraticAction build_action(const SystemArgs& sys, const Place& v, const Rat& t0, const Rat& t1) {
    if (sys.system == "free") return free_particle(parse_rat(sys.m), t0, t1);
    if (sys.system == "field") return constant_field(parse_rat(sys.m), parse_rat(sys.g), t0, t1);
    if (sys.omega.empty()) throw Error("ParseError", "oscillator needs --omega");
    return harmonic_oscillator(parse_rat(sys.m), parse_rat(sys.omega), t0, t1, v.p(), sys.target);
}

QuadraticAction build_action(const SystemArgs& sys, const Place& v) {
    return build_action(sys, v, parse_rat(sys.t0), parse_rat(sys.t1));
}

json action_json(const QuadraticAction& s) {
    json j{{"a", to_string(s.a)}, {"b", to_string(s.b)}, {"c", to_string(s.c)},
           {"d", to_string(s.d)}, {"e", to_string(s.e)}, {"f", to_string(s.f)}};
    if (!s.exact()) {
        j["err_valuation"] = s.err;
        j["err_prime"] = s.err_prime;
    }
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact p-adic and real propagators for quadratic actions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value defaults file");

    Options opt;
    app.add_option("--output", opt.output, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--hbar", opt.h_text, "Planck parameter h (num/den)");
    app.add_option("--tol", opt.tol, "float tolerance")->check(CLI::PositiveNumber);
    app.add_option("--budget", opt.budget, "brute-force term budget")
        ->envname("QP_TERM_BUDGET")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for randomized suites");

    std::string place_text = "inf", p_text, x_text = "0";
    std::string alpha_text, beta_text = "0";
    std::string x0_text = "0", x1_text = "0";
    int digit_count = 8;
    bool oracle = false;
    SystemArgs sys;
    std::string suite;
    int count = 0;
    std::vector<long> slice_counts = {1, 2, 4};
    std::vector<std::string> ball_args = {"0:0"};
    std::vector<std::string> at_args;

    CLI::App* c_norm = app.add_subcommand("norm", "|x|_v");
    c_norm->add_option("--place", place_text, "prime or 'inf'");
    c_norm->add_option("--p", place_text, "alias for --place");
    c_norm->add_option("--x", x_text)->required();

    CLI::App* c_frac = app.add_subcommand("frac", "fractional part {x}_p");
    c_frac->add_option("--p", p_text)->required();
    c_frac->add_option("--x", x_text)->required();

    CLI::App* c_digits = app.add_subcommand("digits", "canonical expansion digits");
    c_digits->add_option("--p", p_text)->required();
    c_digits->add_option("--x", x_text)->required();
    c_digits->add_option("--count", digit_count)->check(CLI::PositiveNumber);

    CLI::App* c_lambda = app.add_subcommand("lambda", "arithmetic lambda factor");
    c_lambda->add_option("--p", place_text, "prime or 'inf'")->required();
    c_lambda->add_option("--x", x_text)->required();

    CLI::App* c_char = app.add_subcommand("char", "additive character");
    c_char->add_option("--p", place_text, "prime or 'inf'")->required();
    c_char->add_option("--x", x_text)->required();

    CLI::App* c_gauss = app.add_subcommand("gauss", "Gauss integral of chi(alpha x^2 + beta x)");
    c_gauss->add_option("--p", place_text, "prime or 'inf'")->required();
    c_gauss->add_option("--alpha", alpha_text)->required();
    c_gauss->add_option("--beta", beta_text);
    c_gauss->add_flag("--oracle", oracle, "also run the brute-force oracle");

    CLI::App* c_kernel = app.add_subcommand("kernel", "propagator value K(x1, t1; x0, t0)");
    add_system_flags(c_kernel, sys);
    c_kernel->add_option("--place", place_text, "prime or 'inf'");
    c_kernel->add_option("--x0", x0_text);
    c_kernel->add_option("--x1", x1_text);

    CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    c_verify->add_option("--count", count, "cases per check (0 = suite default)");
    c_verify->add_option("--place", place_text, "restrict to one place");

    CLI::App* c_slice = app.add_subcommand("slice", "compare sliced and direct kernels");
    add_system_flags(c_slice, sys);
    c_slice->add_option("--place", place_text, "prime or 'inf'");
    c_slice->add_option("--x0", x0_text);
    c_slice->add_option("--x1", x1_text);
    c_slice->add_option("--n", slice_counts, "slice counts");

    CLI::App* c_evolve = app.add_subcommand("evolve", "apply the kernel to a ball function");
    add_system_flags(c_evolve, sys);
    c_evolve->add_option("--place", place_text, "finite prime");
    c_evolve->add_option("--ball", ball_args, "term 'center:gamma' of the initial state");
    c_evolve->add_option("--at", at_args, "sample points (num/den)")->required();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    opt.h = parse_rat(opt.h_text);

    if (c_norm->parsed()) {
        const Place v = parse_place(place_text);
        const Rat x = parse_rat(x_text);
        const Rat n = norm(x, v);
        emit(json{{"op", "norm"}, {"place", v.str()}, {"x", to_string(x)},
                  {"value", to_string(n)}, {"float", n.get_d()}},
             opt.output);
        return 0;
    }
    if (c_frac->parsed()) {
        const Place v = parse_place(p_text);
        const Rat f = frac_part(parse_rat(x_text), v.p());
        emit(json{{"op", "frac"}, {"p", v.p()}, {"x", x_text}, {"value", to_string(f)},
                  {"float", f.get_d()}},
             opt.output);
        return 0;
    }
    if (c_digits->parsed()) {
        const Place v = parse_place(p_text);
        const PadicDigits d = digits(parse_rat(x_text), v.p(), digit_count);
        emit(json{{"op", "digits"}, {"p", v.p()}, {"x", x_text}, {"valuation", d.valuation},
                  {"digits", d.digit}},
             opt.output);
        return 0;
    }
    if (c_lambda->parsed() || c_char->parsed()) {
        const Place v = parse_place(place_text);
        const Rat x = parse_rat(x_text);
        const bool is_lambda = c_lambda->parsed();
        const ExactCircle c = is_lambda ? lambda_fn(x, v) : character(x, v);
        json j{{"op", is_lambda ? "lambda" : "char"}, {"place", v.str()}, {"x", to_string(x)}};
        j.update(circle_json(c));
        emit(j, opt.output);
        return 0;
    }
    if (c_gauss->parsed()) {
        const Place v = parse_place(place_text);
        const Rat alpha = parse_rat(alpha_text);
        const Rat beta = parse_rat(beta_text);
        const ExactCircle closed = gauss_closed(alpha, beta, v);
        json j{{"op", "gauss"}, {"place", v.str()}, {"alpha", to_string(alpha)},
               {"beta", to_string(beta)}};
        j["closed"] = circle_json(closed);
        int rc = 0;
        if (oracle) {
            const std::complex<double> brute =
                gauss_stabilized(alpha, beta, v.p(), opt.tol, opt.budget);
            const double delta = std::abs(closed.to_complex() - brute);
            j["brute"] = json{{"re", brute.real()}, {"im", brute.imag()}};
            j["delta"] = delta;
            if (delta >= opt.tol) rc = 1;
        }
        emit(j, opt.output);
        return rc;
    }
    if (c_kernel->parsed()) {
        const Place v = parse_place(place_text);
        const QuadraticAction s = build_action(sys, v);
        const KernelSpec spec{s, v, opt.h};
        const Rat x0 = parse_rat(x0_text), x1 = parse_rat(x1_text);
        json j{{"op", "kernel"}, {"system", sys.system}, {"place", v.str()},
               {"h", to_string(opt.h)}, {"action", action_json(s)}};
        j["normalization"] = circle_json(normalization(spec));
        j["kernel"] = circle_json(kernel_at(spec, x1, x0));
        emit(j, opt.output);
        return 0;
    }
    if (c_verify->parsed()) {
        SuiteConfig cfg;
        cfg.seed = opt.seed;
        cfg.tol = app.count("--tol") > 0 ? opt.tol : 0.0;
        cfg.term_budget = opt.budget;
        cfg.count = count;
        if (c_verify->count("--place")) cfg.place_filter = parse_place(place_text);
        bool all_pass = true;
        for (const CheckResult& r : run_suite(suite, cfg)) {
            all_pass = all_pass && r.pass;
            emit(json{{"check", r.check}, {"inputs", r.inputs}, {"expected", r.expected},
                      {"got", r.got}, {"tol", r.tol}, {"status", r.pass ? "pass" : "fail"}},
                 opt.output);
        }
        return all_pass ? 0 : 1;
    }
    if (c_slice->parsed()) {
        const Place v = parse_place(place_text);
        const Rat t0 = parse_rat(sys.t0), t1 = parse_rat(sys.t1);
        const Rat x0 = parse_rat(x0_text), x1 = parse_rat(x1_text);
        const QuadraticAction direct = build_action(sys, v);
        const ExactCircle dk = kernel_at(KernelSpec{direct, v, opt.h}, x1, x0);
        int rc = 0;
        for (long n : slice_counts) {
            std::vector<QuadraticAction> slices;
            for (long k = 0; k < n; ++k) {
                slices.push_back(build_action(sys, v, t0 + (t1 - t0) * Rat(k, n),
                                              t0 + (t1 - t0) * Rat(k + 1, n)));
            }
            const ExactCircle sk = time_sliced(slices, v, opt.h, x1, x0);
            const bool equal = sk == dk;
            if (!equal) rc = 1;
            json j{{"op", "slice"}, {"n", n}, {"equal", equal}};
            j["sliced"] = circle_json(sk);
            j["direct"] = circle_json(dk);
            emit(j, opt.output);
        }
        return rc;
    }
    if (c_evolve->parsed()) {
        const Place v = parse_place(place_text);
        const KernelSpec spec{build_action(sys, v), v, opt.h};
        BallFunction psi;
        for (const std::string& b : ball_args) {
            const auto colon = b.find(':');
            if (colon == std::string::npos) {
                throw Error("ParseError", "ball term must be 'center:gamma': '" + b + "'");
            }
            psi.push_back(BallTerm{{1.0, 0.0}, parse_rat(b.substr(0, colon)),
                                   std::stol(b.substr(colon + 1))});
        }
        std::vector<Rat> pts;
        pts.reserve(at_args.size());
        for (const std::string& a : at_args) pts.push_back(parse_rat(a));
        const auto vals = evolve(spec, psi, pts, opt.budget);
        for (size_t i = 0; i < pts.size(); ++i) {
            emit(json{{"op", "evolve"}, {"x", to_string(pts[i])}, {"re", vals[i].real()},
                      {"im", vals[i].imag()}, {"abs", std::abs(vals[i])}},
                 opt.output);
        }
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        const std::string& code = e.code();
        if (code == "ParseError") return 2;
        if (code == "SumTooLarge" || code == "NoStabilization") return 4;
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

#pragma once

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace qp {

using Int = mpz_class;
using Rat = mpq_class;

// Domain error with a stable machine-readable code ("ZeroAlpha", "OutsideDisk", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// x reduced into [0, 1).
inline Rat mod1(const Rat& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rat r = x - Rat(fl);
    r.canonicalize();
    return r;
}

// p^e as a rational, e of either sign.
inline Rat p_power(long p, long e) {
    Int pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    Rat r = (e < 0) ? Rat(1, pw) : Rat(pw);
    r.canonicalize();
    return r;
}

// Accepts "num/den" or an integer literal; no floats.
inline Rat parse_rat(const std::string& text) {
    if (text.empty() || text.find_first_of(".eE") != std::string::npos) {
        throw Error("ParseError", "not a rational literal: '" + text + "'");
    }
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0) {
        throw Error("ParseError", "not a rational literal: '" + text + "'");
    }
    if (mpz_sgn(r.get_den_mpz_t()) == 0) {
        throw Error("ParseError", "zero denominator: '" + text + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace qp

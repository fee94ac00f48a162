#include "exc/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace exc {

Rational BigFloat::to_rational() const {
    if (mpfr_zero_p(v_)) return Rational(0);
    if (!mpfr_number_p(v_)) throw error("cannot convert non-finite BigFloat to rational");
    Integer mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
    Rational r(mant);
    if (e >= 0) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        r *= Rational(p);
    } else {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        r /= Rational(p);
    }
    return r;
}

std::string BigFloat::to_string(int digits) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
    return std::string(buf);
}

}  // namespace exc

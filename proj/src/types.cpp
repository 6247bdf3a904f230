#include "electctl/types.hpp"

namespace electctl {

std::string decimal_string(const Rational& value, int digits) {
    if (digits < 0) digits = 0;
    mpz_class num = value.get_num();
    mpz_class den = value.get_den();
    bool negative = num < 0;
    if (negative) num = -num;

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // Round half away from zero at the last digit.
    mpz_class scaled = (num * scale * 2 + den) / (den * 2);

    mpz_class whole = scaled / scale;
    mpz_class frac = scaled % scale;
    std::string out = whole.get_str();
    if (digits > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
    }
    return negative ? "-" + out : out;
}

}  // namespace electctl

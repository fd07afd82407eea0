#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace legdef {

using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0)
        throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const BigInt& num, const BigInt& den) {
    if (den == 0)
        throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/* Accepts "7", "-7", "10/3". */
inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return rat(BigInt(s), BigInt(1));
        return rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rat_parse: bad rational literal '" + s + "'");
    }
}

inline std::string rat_string(const Rat& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace legdef

#include "legdef/series.hpp"

#include <sstream>

namespace legdef {

TruncSeries divide_exact(const TruncSeries& num, const TruncSeries& den) {
    if (num.arity() != den.arity())
        fail(Errc::arity_mismatch, "divide_exact: parameter arity mismatch");
    if (den.is_zero())
        fail(Errc::domain_error, "divide_exact: denominator is identically zero");

    const int v = den.order().value;
    for (const auto& [e, c] : num.coeffs())
        if (e < v)
            fail(Errc::not_divisible, "divide_exact: quotient would have negative valuation");

    const int qtrunc = std::min(num.trunc(), den.trunc()) - v;
    if (qtrunc < 0)
        fail(Errc::domain_error, "divide_exact: truncation orders too small to report a quotient");

    const ParamPoly lead = den.coeff(v);
    TruncSeries q(num.arity(), qtrunc);
    for (int j = 0; j <= qtrunc; ++j) {
        ParamPoly rhs = num.coeff(j + v);
        for (const auto& [i, qi] : q.coeffs()) {
            if (i >= j)
                break;
            rhs -= qi * den.coeff(j + v - i);
        }
        if (rhs.is_zero())
            continue;
        auto qj = rhs.exact_div(lead);
        if (!qj)
            fail(Errc::not_divisible, "divide_exact: non-polynomial quotient coefficient at t^" +
                                          std::to_string(j));
        if (!qj->is_zero())
            q += TruncSeries::monomial(num.arity(), qtrunc, j, *qj);
    }
    return q;
}

std::string ParamPoly::str(const std::string& var) const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        bool has_vars = false;
        for (uint32_t k : e)
            has_vars = has_vars || k > 0;
        if (!has_vars) {
            os << rat_string(c);
            continue;
        }
        if (c != 1)
            os << rat_string(c) << "*";
        bool firstv = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!firstv)
                os << "*";
            firstv = false;
            os << var << i + 1;
            if (e[i] > 1)
                os << "^" << e[i];
        }
    }
    return os.str();
}

std::string TruncSeries::str(const std::string& var) const {
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first)
            os << " + ";
        first = false;
        std::string cs = c.str();
        bool plain = c.is_constant();
        if (e == 0) {
            os << (plain ? cs : "(" + cs + ")");
            continue;
        }
        if (!plain)
            os << "(" << cs << ")*";
        else if (cs != "1")
            os << (cs.find('/') == std::string::npos ? cs : "(" + cs + ")") << "*";
        os << var;
        if (e > 1)
            os << "^" << e;
    }
    return os.str();
}

}  // namespace legdef

#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "legdef/series.hpp"

namespace legdef {

/* Exponents of x, y, p. For a two-variable polynomial the p slot stays 0. */
using CoordExp = std::array<int, 3>;

/*
 * Sparse polynomial in the ambient coordinates (x, y) or (x, y, p) with
 * ParamPoly coefficients. Used for contact-map components, infinitesimal
 * data, and anything that gets pulled back along a parametrized branch.
 */
class CoordPoly {
  public:
    explicit CoordPoly(int vars = 3, int arity = 0) : vars_(vars), arity_(arity) {
        if (vars != 2 && vars != 3)
            fail(Errc::domain_error, "CoordPoly: coordinate arity must be 2 or 3");
    }

    static CoordPoly constant(int vars, int arity, const Rat& c) {
        CoordPoly f(vars, arity);
        if (c != 0)
            f.terms_[{0, 0, 0}] = ParamPoly::constant(arity, c);
        return f;
    }

    /* idx: 0 = x, 1 = y, 2 = p. */
    static CoordPoly variable(int vars, int arity, int idx) {
        if (idx < 0 || idx >= vars)
            fail(Errc::domain_error, "CoordPoly::variable: index out of range");
        CoordExp e{0, 0, 0};
        e[idx] = 1;
        CoordPoly f(vars, arity);
        f.terms_[e] = ParamPoly::constant(arity, Rat(1));
        return f;
    }

    static CoordPoly monomial(int vars, const CoordExp& e, const ParamPoly& c) {
        CoordPoly f(vars, c.arity());
        if (vars == 2 && e[2] != 0)
            fail(Errc::domain_error, "CoordPoly::monomial: p-exponent in a plane polynomial");
        if (e[0] < 0 || e[1] < 0 || e[2] < 0)
            fail(Errc::domain_error, "CoordPoly::monomial: negative exponent");
        if (!c.is_zero())
            f.terms_[e] = c;
        return f;
    }
    static CoordPoly monomial(int vars, const CoordExp& e, const Rat& c, int arity = 0) {
        return monomial(vars, e, ParamPoly::constant(arity, c));
    }

    int vars() const { return vars_; }
    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<CoordExp, ParamPoly>& terms() const { return terms_; }

    ParamPoly constant_term() const {
        auto it = terms_.find({0, 0, 0});
        return it == terms_.end() ? ParamPoly(arity_) : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[0] + e[1] + e[2]);
        return d;
    }

    CoordPoly& operator+=(const CoordPoly& o);
    CoordPoly& operator-=(const CoordPoly& o);
    friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
    friend CoordPoly operator-(CoordPoly a, const CoordPoly& b) { return a -= b; }
    CoordPoly operator-() const;
    friend CoordPoly operator*(const CoordPoly& a, const CoordPoly& b);
    CoordPoly scaled(const Rat& c) const;

    friend bool operator==(const CoordPoly& a, const CoordPoly& b) {
        return a.vars_ == b.vars_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    CoordPoly derivative(int idx) const;

    /* Drop every term of total degree above d. */
    CoordPoly truncated(int d) const;

    /* Coefficient of p^k, as a polynomial in (x, y). */
    CoordPoly p_coeff(int k) const;

    /* Widen from (x, y) to (x, y, p). */
    CoordPoly as_three_vars() const;

    std::string str() const;

  private:
    void check_compat(const CoordPoly& o) const {
        if (vars_ != o.vars_ || arity_ != o.arity_)
            fail(Errc::arity_mismatch, "CoordPoly: mixed coordinate or parameter arity");
    }
    void add_term(const CoordExp& e, const ParamPoly& c);

    int vars_;
    int arity_;
    std::map<CoordExp, ParamPoly> terms_;
};

/*
 * Exact substitution of branch coordinate series into a coordinate
 * polynomial, truncated at the pessimistic common order of the inputs.
 */
TruncSeries poly_eval_along(const CoordPoly& f, std::span<const TruncSeries> branch);

/* Substitute coordinate polynomials, keeping total degree <= degree. */
CoordPoly poly_compose(const CoordPoly& f, const std::vector<CoordPoly>& args, int degree);

}  // namespace legdef

#pragma once

#include <map>
#include <string>

#include "legdef/param_poly.hpp"

namespace legdef {

/* Vanishing order of a series; infinite when the series is 0 mod truncation. */
struct SeriesOrder {
    bool finite = false;
    int value = 0;

    static SeriesOrder inf() { return {}; }
    static SeriesOrder at(int k) { return {true, k}; }

    friend bool operator==(const SeriesOrder& a, const SeriesOrder& b) {
        return a.finite == b.finite && (!a.finite || a.value == b.value);
    }
    friend bool operator<(const SeriesOrder& a, const SeriesOrder& b) {
        if (a.finite && b.finite)
            return a.value < b.value;
        return a.finite && !b.finite;
    }
    friend bool operator>(const SeriesOrder& a, const SeriesOrder& b) { return b < a; }
    friend bool operator<=(const SeriesOrder& a, const SeriesOrder& b) { return !(b < a); }
    friend bool operator>=(const SeriesOrder& a, const SeriesOrder& b) { return !(a < b); }
};

/*
 * Truncated power series in one local parameter t. Coefficients are ParamPoly
 * values over a fixed parameter arity. Exponents above trunc() are unknown,
 * never assumed zero; arithmetic propagates truncation pessimistically
 * (min of the operands), except that multiplying by an exact monomial t^j
 * shifts the horizon up by j.
 */
class TruncSeries {
  public:
    explicit TruncSeries(int arity = 0, int trunc = 0) : arity_(arity), trunc_(trunc) {}

    static TruncSeries zero(int arity, int trunc) { return TruncSeries(arity, trunc); }

    static TruncSeries monomial(int arity, int trunc, int exp, const ParamPoly& c) {
        if (exp < 0)
            fail(Errc::domain_error, "TruncSeries: negative exponent");
        TruncSeries f(arity, trunc);
        if (exp <= trunc && !c.is_zero())
            f.coeffs_[exp] = c;
        return f;
    }
    static TruncSeries monomial(int arity, int trunc, int exp, const Rat& c) {
        return monomial(arity, trunc, exp, ParamPoly::constant(arity, c));
    }

    int arity() const { return arity_; }
    int trunc() const { return trunc_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<int, ParamPoly>& coeffs() const { return coeffs_; }

    ParamPoly coeff(int k) const {
        if (k > trunc_)
            fail(Errc::domain_error, "TruncSeries::coeff: exponent beyond truncation order");
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? ParamPoly(arity_) : it->second;
    }

    SeriesOrder order() const {
        if (coeffs_.empty())
            return SeriesOrder::inf();
        return SeriesOrder::at(coeffs_.begin()->first);
    }

    TruncSeries& operator+=(const TruncSeries& o) { return combine(o, false); }
    TruncSeries& operator-=(const TruncSeries& o) { return combine(o, true); }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    TruncSeries operator-() const {
        TruncSeries r(arity_, trunc_);
        for (const auto& [e, c] : coeffs_)
            r.coeffs_[e] = -c;
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_arity(b);
        TruncSeries r(a.arity_, std::min(a.trunc_, b.trunc_));
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) {
                if (ea + eb > r.trunc_)
                    continue;
                r.add_term(ea + eb, ca * cb);
            }
        return r;
    }

    TruncSeries scaled(const ParamPoly& c) const {
        if (c.arity() != arity_)
            fail(Errc::arity_mismatch, "TruncSeries::scaled: parameter arity mismatch");
        TruncSeries r(arity_, trunc_);
        for (const auto& [e, q] : coeffs_)
            r.add_term(e, q * c);
        return r;
    }
    TruncSeries scaled(const Rat& c) const { return scaled(ParamPoly::constant(arity_, c)); }

    /* Multiplication by the exact monomial t^j; the horizon moves up with it. */
    TruncSeries shifted(int j) const {
        TruncSeries r(arity_, trunc_ + j);
        for (const auto& [e, c] : coeffs_)
            r.coeffs_[e + j] = c;
        return r;
    }

    /* d/dt, known one order less far. */
    TruncSeries derivative() const {
        TruncSeries r(arity_, trunc_ > 0 ? trunc_ - 1 : 0);
        for (const auto& [e, c] : coeffs_)
            if (e >= 1)
                r.coeffs_[e - 1] = c * Rat(e);
        return r;
    }

    /* Antiderivative vanishing at 0, known one order further. */
    TruncSeries integrate() const {
        TruncSeries r(arity_, trunc_ + 1);
        for (const auto& [e, c] : coeffs_)
            r.coeffs_[e + 1] = c * rat(1, e + 1);
        return r;
    }

    TruncSeries with_trunc(int n) const {
        if (n > trunc_)
            fail(Errc::domain_error,
                 "TruncSeries::with_trunc: cannot raise truncation order (terms unknown)");
        TruncSeries r(arity_, n);
        for (const auto& [e, c] : coeffs_) {
            if (e > n)
                break;
            r.coeffs_[e] = c;
        }
        return r;
    }

    /* Specialize every parameter to 0 (arity drops to 0). */
    TruncSeries at_params_zero() const {
        TruncSeries r(0, trunc_);
        for (const auto& [e, c] : coeffs_) {
            Rat v = c.at_params_zero();
            if (v != 0)
                r.coeffs_[e] = ParamPoly::constant(0, v);
        }
        return r;
    }

    /* Re-embed with a larger parameter arity. */
    TruncSeries embedded(int arity) const {
        if (arity < arity_)
            fail(Errc::domain_error, "TruncSeries::embedded: arity may only grow");
        TruncSeries r(arity, trunc_);
        for (const auto& [e, c] : coeffs_) {
            ParamPoly lifted(arity);
            for (const auto& [pe, q] : c.terms()) {
                ParamExp w(arity, 0);
                for (size_t i = 0; i < pe.size(); ++i)
                    w[i] = pe[i];
                lifted += ParamPoly::monomial(w, q);
            }
            r.coeffs_[e] = lifted;
        }
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.arity_ == b.arity_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
    }

    /* Term-map equality, disregarding the truncation horizon. */
    bool same_terms(const TruncSeries& o) const {
        return arity_ == o.arity_ && coeffs_ == o.coeffs_;
    }

    std::string str(const std::string& var = "t") const;

  private:
    void check_arity(const TruncSeries& o) const {
        if (arity_ != o.arity_)
            fail(Errc::arity_mismatch, "series parameter arity mismatch");
    }
    void add_term(int e, const ParamPoly& c) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            if (!c.is_zero())
                coeffs_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            coeffs_.erase(it);
    }
    TruncSeries& combine(const TruncSeries& o, bool negate) {
        check_arity(o);
        int n = std::min(trunc_, o.trunc_);
        std::map<int, ParamPoly> kept;
        for (const auto& [e, c] : coeffs_)
            if (e <= n)
                kept.emplace(e, c);
        coeffs_ = std::move(kept);
        trunc_ = n;
        for (const auto& [e, c] : o.coeffs_)
            if (e <= n)
                add_term(e, negate ? -c : c);
        return *this;
    }

    int arity_;
    int trunc_;
    std::map<int, ParamPoly> coeffs_;
};

/*
 * Exact division over the fraction field of the parameter ring with a final
 * polynomiality check on every quotient coefficient. Fails with NotDivisible
 * when the quotient would need a negative t-exponent or a non-polynomial
 * coefficient. The result is reportable to min(trunc) - ord(den).
 */
TruncSeries divide_exact(const TruncSeries& num, const TruncSeries& den);

}  // namespace legdef

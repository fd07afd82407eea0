#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "legdef/errors.hpp"
#include "legdef/rational.hpp"

namespace legdef {

/* Exponent vector over the deformation parameters s_1..s_arity. */
using ParamExp = std::vector<uint32_t>;

/*
 * Sparse polynomial in the deformation parameters with exact rational
 * coefficients. Arity 0 degenerates to a plain rational. Terms are kept in
 * lexicographic key order, so iteration is deterministic; zero coefficients
 * are never stored.
 */
class ParamPoly {
  public:
    explicit ParamPoly(int arity = 0) : arity_(arity) {}

    static ParamPoly constant(int arity, const Rat& c) {
        ParamPoly p(arity);
        if (c != 0)
            p.terms_[ParamExp(arity, 0)] = c;
        return p;
    }

    /* s_{idx} (0-based). */
    static ParamPoly variable(int arity, int idx, const Rat& c = Rat(1)) {
        if (idx < 0 || idx >= arity)
            fail(Errc::domain_error, "ParamPoly::variable: index out of range");
        ParamExp e(arity, 0);
        e[idx] = 1;
        return monomial(e, c);
    }

    static ParamPoly monomial(const ParamExp& exps, const Rat& c) {
        ParamPoly p(static_cast<int>(exps.size()));
        if (c != 0)
            p.terms_[exps] = c;
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty())
            return true;
        return terms_.size() == 1 && terms_.begin()->first == ParamExp(arity_, 0);
    }
    const std::map<ParamExp, Rat>& terms() const { return terms_; }

    /* Value with every parameter set to 0. */
    Rat at_params_zero() const {
        auto it = terms_.find(ParamExp(arity_, 0));
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /* Constant-only value; fails if a genuine parameter term is present. */
    Rat as_rat() const {
        if (!is_constant())
            fail(Errc::domain_error, "ParamPoly::as_rat: polynomial is not constant");
        return at_params_zero();
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }

    ParamPoly operator-() const {
        ParamPoly r(arity_);
        for (const auto& [e, c] : terms_)
            r.terms_[e] = -c;
        return r;
    }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        a.check_arity(b);
        ParamPoly r(a.arity_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ParamExp e(a.arity_);
                for (int i = 0; i < a.arity_; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend ParamPoly operator*(const ParamPoly& a, const Rat& c) {
        ParamPoly r(a.arity_);
        if (c != 0)
            for (const auto& [e, q] : a.terms_)
                r.terms_[e] = q * c;
        return r;
    }
    friend ParamPoly operator*(const Rat& c, const ParamPoly& a) { return a * c; }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    /*
     * Exact division in the polynomial ring: returns q with q*d == *this, or
     * nullopt when no polynomial quotient exists. Trial division against the
     * lexicographically leading term of d.
     */
    std::optional<ParamPoly> exact_div(const ParamPoly& d) const {
        check_arity(d);
        if (d.is_zero())
            fail(Errc::domain_error, "ParamPoly::exact_div: division by zero");
        ParamPoly rem = *this;
        ParamPoly quot(arity_);
        const auto& dlead = *d.terms_.rbegin();
        while (!rem.is_zero()) {
            const auto& rlead = *rem.terms_.rbegin();
            ParamExp e(arity_);
            for (int i = 0; i < arity_; ++i) {
                if (rlead.first[i] < dlead.first[i])
                    return std::nullopt;
                e[i] = rlead.first[i] - dlead.first[i];
            }
            ParamPoly t = monomial(e, rlead.second / dlead.second);
            quot += t;
            rem -= t * d;
        }
        return quot;
    }

    std::string str(const std::string& var = "s") const;

  private:
    void check_arity(const ParamPoly& o) const {
        if (arity_ != o.arity_)
            fail(Errc::arity_mismatch, "parameter arity mismatch");
    }
    void add_term(const ParamExp& e, const Rat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0)
                terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    int arity_;
    std::map<ParamExp, Rat> terms_;
};

}  // namespace legdef

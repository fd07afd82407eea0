#include "legdef/coord_poly.hpp"

#include <sstream>

namespace legdef {

void CoordPoly::add_term(const CoordExp& e, const ParamPoly& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero())
            terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

CoordPoly& CoordPoly::operator+=(const CoordPoly& o) {
    check_compat(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

CoordPoly& CoordPoly::operator-=(const CoordPoly& o) {
    check_compat(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

CoordPoly CoordPoly::operator-() const {
    CoordPoly r(vars_, arity_);
    for (const auto& [e, c] : terms_)
        r.terms_[e] = -c;
    return r;
}

CoordPoly operator*(const CoordPoly& a, const CoordPoly& b) {
    a.check_compat(b);
    CoordPoly r(a.vars_, a.arity_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
}

CoordPoly CoordPoly::scaled(const Rat& c) const {
    CoordPoly r(vars_, arity_);
    if (c != 0)
        for (const auto& [e, q] : terms_)
            r.terms_[e] = q * c;
    return r;
}

CoordPoly CoordPoly::derivative(int idx) const {
    if (idx < 0 || idx >= 3)
        fail(Errc::domain_error, "CoordPoly::derivative: bad coordinate index");
    CoordPoly r(vars_, arity_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0)
            continue;
        CoordExp d = e;
        d[idx] -= 1;
        r.add_term(d, c * Rat(e[idx]));
    }
    return r;
}

CoordPoly CoordPoly::truncated(int d) const {
    CoordPoly r(vars_, arity_);
    for (const auto& [e, c] : terms_)
        if (e[0] + e[1] + e[2] <= d)
            r.terms_[e] = c;
    return r;
}

CoordPoly CoordPoly::p_coeff(int k) const {
    CoordPoly r(2, arity_);
    for (const auto& [e, c] : terms_)
        if (e[2] == k)
            r.terms_[{e[0], e[1], 0}] = c;
    return r;
}

CoordPoly CoordPoly::as_three_vars() const {
    CoordPoly r(3, arity_);
    r.terms_ = terms_;
    return r;
}

namespace {

/* Powers of one series, cached up to the largest exponent requested. */
class PowerCache {
  public:
    explicit PowerCache(const TruncSeries& base) : base_(base) {}

    const TruncSeries& pow(int k) {
        while (static_cast<int>(cache_.size()) <= k) {
            if (cache_.empty())
                cache_.push_back(TruncSeries::monomial(base_.arity(), base_.trunc(), 0, Rat(1)));
            else if (cache_.size() == 1)
                cache_.push_back(base_);
            else
                cache_.push_back(cache_.back() * base_);
        }
        return cache_[k];
    }

  private:
    TruncSeries base_;
    std::vector<TruncSeries> cache_;
};

}  // namespace

TruncSeries poly_eval_along(const CoordPoly& f, std::span<const TruncSeries> branch) {
    if (static_cast<int>(branch.size()) != f.vars())
        fail(Errc::arity_mismatch, "poly_eval_along: branch tuple length != coordinate arity");
    int trunc = branch.empty() ? 0 : branch[0].trunc();
    int parity = branch.empty() ? f.arity() : branch[0].arity();
    for (const auto& s : branch) {
        trunc = std::min(trunc, s.trunc());
        if (s.arity() != parity)
            fail(Errc::arity_mismatch, "poly_eval_along: mixed parameter arity in branch");
    }
    if (f.arity() != 0 && f.arity() != parity)
        fail(Errc::arity_mismatch, "poly_eval_along: coefficient arity != branch arity");

    std::vector<PowerCache> powers;
    powers.reserve(branch.size());
    for (const auto& s : branch)
        powers.emplace_back(s.with_trunc(trunc));

    TruncSeries acc(parity, trunc);
    for (const auto& [e, c] : f.terms()) {
        TruncSeries term = TruncSeries::monomial(parity, trunc, 0, Rat(1));
        for (int v = 0; v < f.vars(); ++v)
            if (e[v] > 0)
                term = term * powers[v].pow(e[v]);
        ParamPoly coeff = f.arity() == parity ? c : ParamPoly::constant(parity, c.as_rat());
        acc += term.scaled(coeff);
    }
    return acc;
}

CoordPoly poly_compose(const CoordPoly& f, const std::vector<CoordPoly>& args, int degree) {
    if (static_cast<int>(args.size()) != f.vars())
        fail(Errc::arity_mismatch, "poly_compose: argument count != coordinate arity");
    if (f.arity() != 0)
        fail(Errc::domain_error, "poly_compose: parameter-free polynomials only");
    int vars = args.empty() ? 3 : args[0].vars();
    int arity = args.empty() ? f.arity() : args[0].arity();

    std::vector<std::vector<CoordPoly>> powers(args.size());
    auto pow = [&](int v, int k) -> const CoordPoly& {
        auto& cache = powers[v];
        while (static_cast<int>(cache.size()) <= k) {
            if (cache.empty())
                cache.push_back(CoordPoly::constant(vars, arity, Rat(1)));
            else if (cache.size() == 1)
                cache.push_back(args[v].truncated(degree));
            else
                cache.push_back((cache.back() * args[v]).truncated(degree));
        }
        return cache[k];
    };

    CoordPoly acc(vars, arity);
    for (const auto& [e, c] : f.terms()) {
        CoordPoly term = CoordPoly::constant(vars, arity, Rat(1));
        for (int v = 0; v < f.vars(); ++v)
            if (e[v] > 0)
                term = (term * pow(v, e[v])).truncated(degree);
        acc += term.scaled(c.as_rat());
    }
    return acc;
}

std::string CoordPoly::str() const {
    if (terms_.empty())
        return "0";
    static const char* names[3] = {"x", "y", "p"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        bool is_const_term = e[0] == 0 && e[1] == 0 && e[2] == 0;
        std::string cs = c.str();
        if (is_const_term) {
            os << (c.is_constant() ? cs : "(" + cs + ")");
            continue;
        }
        if (!c.is_constant())
            os << "(" << cs << ")*";
        else if (cs != "1")
            os << (cs.find('/') == std::string::npos ? cs : "(" + cs + ")") << "*";
        bool firstv = true;
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0)
                continue;
            if (!firstv)
                os << "*";
            firstv = false;
            os << names[v];
            if (e[v] > 1)
                os << "^" << e[v];
        }
    }
    return os.str();
}

}  // namespace legdef

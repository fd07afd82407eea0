#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "legdef/contact.hpp"
#include "legdef/germs.hpp"
#include "legdef/modules.hpp"

namespace legdef::testing {

inline TruncSeries mono(int trunc, int exp, const Rat& c) {
    return TruncSeries::monomial(0, trunc, exp, c);
}

inline TruncSeries series_of(int trunc, std::initializer_list<std::pair<int, Rat>> terms) {
    TruncSeries s(0, trunc);
    for (const auto& [e, c] : terms)
        s += TruncSeries::monomial(0, trunc, e, c);
    return s;
}

inline Rat rand_rat(std::mt19937& rng, int span = 6) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, span);
    return rat(num(rng), den(rng));
}

inline Rat rand_nonzero_rat(std::mt19937& rng, int span = 6) {
    Rat q = rand_rat(rng, span);
    return q == 0 ? Rat(1) : q;
}

/* Random series in (t): a few monomials between lo and hi. */
inline TruncSeries rand_series(std::mt19937& rng, int trunc, int lo, int hi, int terms = 3) {
    std::uniform_int_distribution<int> exp(lo, hi);
    TruncSeries s(0, trunc);
    for (int i = 0; i < terms; ++i)
        s += TruncSeries::monomial(0, trunc, exp(rng), rand_rat(rng));
    return s;
}

/* gcd of the exponents with nonzero coefficient, over several series */
inline int support_gcd(std::initializer_list<const TruncSeries*> series) {
    int g = 0;
    for (const auto* s : series)
        for (const auto& [e, c] : s->coeffs())
            g = std::gcd(g, e);
    return g;
}

/* Random plane branch in the chart: ord x = m, ord y > ord x, primitive
   (a non-primitive exponent support doubles the parametrization and its
   modules genuinely diverge). */
inline PlaneBranch rand_chart_branch(std::mt19937& rng, int trunc, int max_mult = 3) {
    std::uniform_int_distribution<int> md(1, max_mult);
    int m = md(rng);
    std::uniform_int_distribution<int> yo(m + 1, 2 * m + 4);
    int oy = yo(rng);
    TruncSeries x = mono(trunc, m, rand_nonzero_rat(rng)) + rand_series(rng, trunc, m + 1, m + 4, 2);
    TruncSeries y = mono(trunc, oy, rand_nonzero_rat(rng)) + rand_series(rng, trunc, oy + 1, oy + 5, 2);
    int g = support_gcd({&x, &y});
    for (int e = oy + 1; g > 1; ++e)
        if (std::gcd(g, e) == 1) {
            y += mono(trunc, e, Rat(1));
            g = 1;
        }
    return {x, y};
}

inline PlaneGerm rand_chart_germ(std::mt19937& rng, int trunc, int max_branches = 2) {
    std::uniform_int_distribution<int> bd(1, max_branches);
    PlaneGerm g;
    int r = bd(rng);
    for (int i = 0; i < r; ++i)
        g.branches.push_back(rand_chart_branch(rng, trunc));
    return g;
}

/* Random Legendrian branch: x, p free in (t), y integrated from them. */
inline LegendrianBranch rand_legendrian_branch(std::mt19937& rng, int trunc) {
    std::uniform_int_distribution<int> ox(1, 3), op(1, 4);
    TruncSeries x = mono(trunc, ox(rng), rand_nonzero_rat(rng)) + rand_series(rng, trunc, 2, 6, 2);
    TruncSeries p = mono(trunc, op(rng), rand_nonzero_rat(rng)) + rand_series(rng, trunc, 2, 7, 2);
    int g = support_gcd({&x, &p});
    for (int e = p.order().value + 1; g > 1; ++e)
        if (std::gcd(g, e) == 1) {
            p += mono(trunc, e, Rat(1));
            g = 1;
        }
    TruncSeries y = (p * x.derivative()).integrate();
    return {x, y, p};
}

inline LegendrianGerm rand_legendrian_germ(std::mt19937& rng, int trunc, int max_branches = 2) {
    std::uniform_int_distribution<int> bd(1, max_branches);
    LegendrianGerm g;
    int r = bd(rng);
    for (int i = 0; i < r; ++i)
        g.branches.push_back(rand_legendrian_branch(rng, trunc));
    return g;
}

inline FakeGerm rand_fake_germ(std::mt19937& rng, int trunc, int max_branches = 2) {
    return fake_projection(rand_legendrian_germ(rng, trunc, max_branches));
}

/* (a, b, c, d) with ad - bc = 1. */
inline std::array<Rat, 4> rand_symplectic(std::mt19937& rng) {
    Rat a = rand_rat(rng, 4), b = rand_rat(rng, 4), c = rand_rat(rng, 4);
    if (a == 0 && b == 0)
        a = Rat(1);
    if (a != 0) {
        Rat d = (Rat(1) + b * c) / a;
        return {a, b, c, d};
    }
    /* a = 0: need -bc = 1 */
    c = Rat(-1) / b;
    return {a, b, c, rand_rat(rng, 4)};
}

/* Random polynomial in (x, y, p) vanishing at the origin. */
inline CoordPoly rand_alpha(std::mt19937& rng, int max_deg = 3) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    CoordPoly f(3, 0);
    for (int i = 0; i < 4; ++i) {
        int ex = deg(rng), ey = deg(rng), ep = deg(rng);
        if (ex + ey + ep == 0)
            ex = 1;
        f += CoordPoly::monomial(3, {ex, ey, ep}, rand_rat(rng));
    }
    return f;
}

/* Random beta0 in (x^2, y). */
inline CoordPoly rand_beta0(std::mt19937& rng, int max_deg = 3) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coin(0, 1);
    CoordPoly f(2, 0);
    for (int i = 0; i < 3; ++i) {
        int ex = deg(rng), ey = deg(rng);
        if (coin(rng))
            ey += 1;  /* lands in (y) */
        else
            ex += 2;  /* lands in (x^2) */
        f += CoordPoly::monomial(2, {ex, ey, 0}, rand_rat(rng));
    }
    return f;
}

}  // namespace legdef::testing

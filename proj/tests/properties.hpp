#pragma once

/*
 * The randomized property suites. Each returns the number of failed cases so
 * the acceptance runner can report them as one criterion; the doctest
 * wrapper asserts zero. Deterministic seeds throughout.
 */

#include <random>

#include "legdef/contact.hpp"
#include "legdef/modules.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace legdef::testing {

/* conormal/projection round trips */
inline int suite_roundtrips(int cases) {
    std::mt19937 rng(101);
    int failed = 0;
    for (int it = 0; it < cases; ++it) {
        PlaneGerm z = rand_chart_germ(rng, 16);
        if (!germ_equal(plane_projection(conormal(z)), z))
            ++failed;
        LegendrianGerm l = rand_legendrian_germ(rng, 16);
        if (!germ_equal(fake_conormal(fake_projection(l)), l))
            ++failed;
        FakeGerm s = rand_fake_germ(rng, 16);
        if (!germ_equal(fake_projection(fake_conormal(s)), s))
            ++failed;
    }
    return failed;
}

/* the Legendrian condition survives random paraboloidal maps */
inline int suite_paraboloidal(int cases) {
    std::mt19937 rng(102);
    int failed = 0;
    for (int it = 0; it < cases; ++it) {
        LegendrianGerm l = rand_legendrian_germ(rng, 14);
        auto [a, b, c, d] = rand_symplectic(rng);
        ContactMap chi = make_paraboloidal(a, b, c, d);
        try {
            LegendrianGerm im = apply_contact_map(chi, l);
            for (const auto& br : im.branches) {
                TruncSeries res = br.y.derivative() - br.p * br.x.derivative();
                if (!res.is_zero())
                    ++failed;
            }
            if (contact_check(chi, 5) != CoordPoly::constant(3, 0, Rat(1)))
                ++failed;
        } catch (const Error&) {
            ++failed;
        }
    }
    return failed;
}

/* infinitesimal contact data: defining equations and the mod-epsilon^2 identity */
inline int suite_infinitesimal(int cases) {
    std::mt19937 rng(103);
    int failed = 0;
    CoordPoly p = CoordPoly::variable(3, 0, 2);
    for (int it = 0; it < cases; ++it) {
        CoordPoly alpha = rand_alpha(rng);
        CoordPoly beta0 = rand_beta0(rng);
        const int deg = 9;
        InfinitesimalContact ic = infinitesimal_extend(alpha, beta0, deg);
        const int chk = deg - 2;

        bool ok = true;
        /* d beta / dp = p d alpha / dp */
        ok = ok && ic.beta.derivative(2).truncated(chk) ==
                       (p * ic.alpha.derivative(2)).truncated(chk);
        /* beta = beta0 + (p) */
        ok = ok && (ic.beta - ic.beta0.as_three_vars()).p_coeff(0).is_zero();

        /* gamma as dictated by the contact condition */
        CoordPoly gamma_expect = ic.beta.derivative(0) +
                                 p * (ic.beta.derivative(1) - ic.alpha.derivative(0)) -
                                 (p * p) * ic.alpha.derivative(1);
        ok = ok && ic.gamma.truncated(chk) == gamma_expect.truncated(chk);

        /*
         * d(y + eps beta) - (p + eps gamma) d(x + eps alpha)
         *   = (1 + eps (d_y beta - p d_y alpha)) (dy - p dx)    mod eps^2,
         * coefficientwise in dx, dy, dp.
         */
        CoordPoly f2 = ic.beta.derivative(1) - p * ic.alpha.derivative(1);
        ok = ok && (ic.beta.derivative(2) - p * ic.alpha.derivative(2)).truncated(chk).is_zero();
        ok = ok && (ic.beta.derivative(1) - p * ic.alpha.derivative(1) - f2).truncated(chk)
                       .is_zero();
        ok = ok &&
             (ic.beta.derivative(0) - ic.gamma - p * ic.alpha.derivative(0) + p * f2)
                 .truncated(chk)
                 .is_zero();

        /* the coefficient recursions for gamma, checked degree by degree */
        for (int k = 0; ok && k <= 4; ++k) {
            CoordPoly gk = ic.gamma.p_coeff(k);
            CoordPoly expect(2, 0);
            if (k == 0)
                expect = ic.beta0.derivative(0);
            else if (k == 1)
                expect = ic.beta0.derivative(1) - ic.alpha.p_coeff(0).derivative(0);
            else
                expect = ic.alpha.p_coeff(k - 1).derivative(0).scaled(rat(-1, k)) +
                         ic.alpha.p_coeff(k - 2).derivative(1).scaled(rat(-1, k - 1));
            ok = ok && gk.truncated(chk - k) == expect.truncated(chk - k);
        }
        if (!ok)
            ++failed;
    }
    return failed;
}

/* quotient dimension: stability and independence of the starting order */
inline int suite_module_stability(int cases) {
    std::mt19937 rng(104);
    int failed = 0;
    for (int it = 0; it < cases; ++it) {
        /* small primitive germs keep the thousand cases inside the budget */
        std::uniform_int_distribution<int> md(0, 9);
        int m = md(rng) < 7 ? 1 : 2;
        std::uniform_int_distribution<int> yo(m + 1, 2 * m + 3);
        int oy = yo(rng);
        PlaneGerm g;
        TruncSeries x = mono(48, m, rand_nonzero_rat(rng)) +
                        mono(48, m + 1, it % 2 ? rand_rat(rng) : Rat(0));
        TruncSeries y = mono(48, oy, rand_nonzero_rat(rng)) +
                        mono(48, oy + 1, it % 3 ? rand_rat(rng) : Rat(0));
        if (support_gcd({&x, &y}) > 1)
            y += mono(48, oy + 1, Rat(1));
        if (support_gcd({&x, &y}) > 1)
            y += mono(48, oy + 3, Rat(1));
        g.branches.push_back({x, y});
        ModulePreset preset =
            it % 3 == 0 ? ModulePreset::plain
                        : it % 3 == 1 ? ModulePreset::equimultiple : ModulePreset::fake;
        try {
            ModuleInput in = preset == ModulePreset::fake
                                 ? make_module_input(preset, conormal(g))
                                 : make_module_input(preset, g);
            auto [basis, space] = compute_module_space(in);
            auto later = quotient_basis(in, basis.trunc_order + 3, 0);
            if (later.first.dimension != basis.dimension || later.first.basis != basis.basis)
                ++failed;
        } catch (const Error&) {
            ++failed;
        }
    }
    return failed;
}

/* optimized quotient vs the dense brute-force oracle */
inline int suite_oracle(int cases) {
    std::mt19937 rng(105);
    int failed = 0;
    for (int it = 0; it < cases; ++it) {
        PlaneGerm g;
        int branches = it % 4 == 0 ? 2 : 1;
        for (int i = 0; i < branches; ++i)
            g.branches.push_back(rand_chart_branch(rng, 24, 2));
        ModulePreset preset = it % 2 == 0 ? ModulePreset::plain : ModulePreset::equimultiple;
        const int n = 8;
        try {
            ModuleInput in = make_module_input(preset, g);
            auto [basis, space] = quotient_basis(in, n, 0);
            if (oracle_module_dimension(in, n) != basis.dimension)
                ++failed;
        } catch (const Error&) {
            ++failed;
        }
    }
    return failed;
}

}  // namespace legdef::testing

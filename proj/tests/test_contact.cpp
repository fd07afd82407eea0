#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "legdef/contact.hpp"
#include "support.hpp"

using namespace legdef;
using namespace legdef::testing;

namespace {

CoordPoly xv() { return CoordPoly::variable(3, 0, 0); }
CoordPoly yv() { return CoordPoly::variable(3, 0, 1); }
CoordPoly pv() { return CoordPoly::variable(3, 0, 2); }

}  // namespace

TEST_CASE("paraboloidal maps") {
    ContactMap leg = make_paraboloidal(Rat(0), Rat(-1), Rat(1), Rat(0));
    CHECK(leg.x_out == pv());
    CHECK(leg.y_out == yv() - xv() * pv());
    CHECK(leg.p_out == -xv());

    ContactMap id = make_paraboloidal(Rat(1), Rat(0), Rat(0), Rat(1));
    CHECK(id.x_out == xv());
    CHECK(id.y_out == yv());
    CHECK(id.p_out == pv());

    ContactMap shear = make_paraboloidal(Rat(1), Rat(0), Rat(1), Rat(1));
    CHECK(shear.x_out == xv() + pv());
    CHECK(shear.y_out == yv() + (pv() * pv()).scaled(rat(1, 2)));
    CHECK(shear.p_out == pv());

    CHECK_THROWS_AS((void)make_paraboloidal(Rat(1), Rat(1), Rat(1), Rat(1)), Error);
}

TEST_CASE("lifting plane automorphisms") {
    CoordPoly ax = CoordPoly::variable(2, 0, 0);
    CoordPoly by = CoordPoly::variable(2, 0, 1);

    ContactMap id = lift_plane_automorphism(ax, by, 6);
    CHECK(id.p_out.truncated(5) == pv());

    /* (x, y + x^2) lifts with p-component p + 2x */
    ContactMap sh = lift_plane_automorphism(ax, by + ax * ax, 6);
    CHECK(sh.p_out.truncated(5) == pv() + xv().scaled(Rat(2)));

    /* (2x, 3y) has p-component (3/2) p and contact factor 3 */
    ContactMap lin = lift_plane_automorphism(ax.scaled(Rat(2)), by.scaled(Rat(3)), 6);
    CHECK(lin.p_out.truncated(5) == pv().scaled(rat(3, 2)));
    CoordPoly f = contact_check(lin, 4);
    CHECK(f == CoordPoly::constant(3, 0, Rat(3)));

    CHECK_THROWS_AS((void)lift_plane_automorphism(ax, ax, 5), Error);          /* singular */
    CHECK_THROWS_AS((void)lift_plane_automorphism(by, ax, 5), Error);          /* chart lost */
    CHECK_THROWS_AS(
        (void)lift_plane_automorphism(ax + CoordPoly::constant(2, 0, Rat(1)), by, 5), Error);
}

TEST_CASE("contact check") {
    CHECK(contact_check(legendre_map(), 6) == CoordPoly::constant(3, 0, Rat(1)));
    CHECK(contact_check(identity_map(), 6) == CoordPoly::constant(3, 0, Rat(1)));

    ContactMap swap;  /* (x, y, p) -> (x, p, y) is not contact */
    swap.x_out = xv();
    swap.y_out = pv();
    swap.p_out = yv();
    CHECK_THROWS_AS((void)contact_check(swap, 4), Error);

    std::mt19937 rng(501);
    for (int it = 0; it < 100; ++it) {
        auto [a, b, c, d] = rand_symplectic(rng);
        CHECK(contact_check(make_paraboloidal(a, b, c, d), 6) ==
              CoordPoly::constant(3, 0, Rat(1)));
    }
}

TEST_CASE("contact factor of a composition") {
    /* f = f1 * (f2 after the inner map), checked on lifted automorphisms */
    CoordPoly ax = CoordPoly::variable(2, 0, 0);
    CoordPoly by = CoordPoly::variable(2, 0, 1);
    const int deg = 7;

    ContactMap inner = lift_plane_automorphism(ax, by + ax * ax, deg);
    ContactMap outer =
        lift_plane_automorphism(ax.scaled(Rat(2)) + by * by, by.scaled(Rat(5)) + ax * ax, deg);
    ContactMap comp = compose_contact_maps(outer, inner, deg);

    CoordPoly f1 = contact_check(inner, deg - 2);
    CoordPoly f2 = contact_check(outer, deg - 2);
    CoordPoly f2_along =
        poly_compose(f2, {inner.x_out, inner.y_out, inner.p_out}, deg - 2);
    CoordPoly expect = (f1 * f2_along).truncated(deg - 2);
    CHECK(contact_check(comp, deg - 2).truncated(deg - 2) == expect);
}

TEST_CASE("applying a contact map to the double cusp conormal") {
    PlaneGerm z;
    z.branches.push_back({mono(16, 2, Rat(1)), mono(16, 3, Rat(1))});
    z.branches.push_back({mono(16, 2, Rat(1)), mono(16, 5, Rat(1))});
    LegendrianGerm l = conormal(z);

    ContactMap chi = make_paraboloidal(Rat(1), Rat(0), Rat(1), Rat(1));
    LegendrianGerm im = apply_contact_map(chi, l);

    CHECK(im.branches[0].x.same_terms(series_of(14, {{2, Rat(1)}, {1, rat(3, 2)}})));
    CHECK(im.branches[0].y.same_terms(series_of(14, {{3, Rat(1)}, {2, rat(9, 8)}})));
    CHECK(im.branches[0].p.same_terms(mono(14, 1, rat(3, 2))));
    CHECK(im.branches[1].x.same_terms(series_of(14, {{2, Rat(1)}, {3, rat(5, 2)}})));
    CHECK(im.branches[1].y.same_terms(series_of(14, {{5, Rat(1)}, {6, rat(25, 8)}})));
    CHECK(im.branches[1].p.same_terms(mono(14, 3, rat(5, 2))));

    LegendrianGerm same = apply_contact_map(identity_map(), l);
    CHECK(germ_equal(same, l));

    /* a contact map that moves the origin throws the germ out of the chart */
    ContactMap off = identity_map();
    off.x_out += CoordPoly::constant(3, 0, Rat(1));
    CHECK_THROWS_AS((void)apply_contact_map(off, l), Error);
}

TEST_CASE("first-order contact data") {
    InfinitesimalContact ic = infinitesimal_extend(pv(), CoordPoly(2, 0), 6);
    CHECK(ic.beta == (pv() * pv()).scaled(rat(1, 2)));
    CHECK(ic.gamma.is_zero());

    ic = infinitesimal_extend(CoordPoly(3, 0), CoordPoly::variable(2, 0, 1), 6);
    CHECK(ic.beta == yv());
    CHECK(ic.gamma == pv());

    ic = infinitesimal_extend(xv(), CoordPoly(2, 0), 6);
    CHECK(ic.beta.is_zero());
    CHECK(ic.gamma == -pv());

    CHECK_THROWS_AS((void)infinitesimal_extend(xv(), CoordPoly::variable(2, 0, 0), 6), Error);
}

TEST_CASE("first-order output satisfies the defining equations") {
    std::mt19937 rng(502);
    for (int it = 0; it < 100; ++it) {
        CoordPoly alpha = rand_alpha(rng);
        CoordPoly beta0 = rand_beta0(rng);
        const int deg = 8;
        InfinitesimalContact ic = infinitesimal_extend(alpha, beta0, deg);

        /* d beta / dp = p d alpha / dp */
        CHECK(ic.beta.derivative(2).truncated(deg - 2) ==
              (pv() * ic.alpha.derivative(2)).truncated(deg - 2));

        /* beta - beta0 lies in (p) */
        CHECK((ic.beta - ic.beta0.as_three_vars()).p_coeff(0).is_zero());

        /* the defining expression for gamma */
        CoordPoly g = ic.beta.derivative(0) + pv() * (ic.beta.derivative(1) - ic.alpha.derivative(0)) -
                      (pv() * pv()) * ic.alpha.derivative(1);
        CHECK(ic.gamma.truncated(deg - 2) == g.truncated(deg - 2));
    }
}

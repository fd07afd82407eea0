#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "legdef/modules.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace legdef;
using namespace legdef::testing;

namespace {

PlaneGerm standard_branch(int trunc) {
    return {{{mono(trunc, 3, Rat(1)), mono(trunc, 10, Rat(1))}}};
}

PlaneGerm double_branch(int trunc) {
    PlaneGerm g;
    g.branches.push_back({mono(trunc, 2, Rat(1)), mono(trunc, 5, Rat(1))});
    g.branches.push_back({mono(trunc, 2, Rat(1)), mono(trunc, 7, Rat(1))});
    return g;
}

std::vector<JetCoord> coords(std::initializer_list<JetCoord> cs) { return cs; }

}  // namespace

TEST_CASE("numerator floors per preset") {
    PlaneGerm g = standard_branch(40);
    auto f = numerator_floors(make_module_input(ModulePreset::hat, g));
    CHECK(f[0].slot1 == 3);
    CHECK(f[0].slot2 == 6);

    auto e = numerator_floors(make_module_input(ModulePreset::equimultiple, double_branch(40)));
    CHECK(e[0].slot1 == 2);
    CHECK(e[0].slot2 == 2);
    CHECK(e[1].slot1 == 2);
    CHECK(e[1].slot2 == 2);

    auto p = numerator_floors(make_module_input(ModulePreset::fake,
                                                conormal(standard_branch(40))));
    CHECK(p[0].slot1 == 1);
    CHECK(p[0].slot2 == 1);
}

TEST_CASE("denominator generators contain the expected jets") {
    PlaneGerm g = standard_branch(40);
    ModuleInput in = make_module_input(ModulePreset::hat, g);
    auto gens = denominator_generators(in, 15);

    /* t * (dx/dt, dy/dt) = (3t^3, 10t^10) */
    bool found_phidot = false;
    /* the k = 1 p-power vector: ((10/3)t^7, (50/9)t^14) */
    bool found_ppower = false;
    for (const auto& v : gens) {
        if (v.slot1[0].same_terms(mono(15, 3, Rat(3))) &&
            v.slot2[0].same_terms(mono(15, 10, Rat(10))))
            found_phidot = true;
        if (v.slot1[0].same_terms(mono(15, 7, rat(10, 3))) &&
            v.slot2[0].same_terms(mono(15, 14, rat(50, 9))))
            found_ppower = true;
    }
    CHECK(found_phidot);
    CHECK(found_ppower);

    /* fake preset: the beta0 = y generator is (0, p) */
    ModuleInput fin = make_module_input(ModulePreset::fake, conormal(standard_branch(40)));
    auto fgens = denominator_generators(fin, 15);
    bool found_beta = false;
    for (const auto& v : fgens)
        if (v.slot1[0].is_zero() && v.slot2[0].same_terms(mono(15, 7, rat(10, 3))))
            found_beta = true;
    CHECK(found_beta);
}

TEST_CASE("quotient basis on the standard branch") {
    PlaneGerm g = standard_branch(64);
    auto [basis, space] = quotient_basis(make_module_input(ModulePreset::hat, g), 28, 6);
    CHECK(basis.dimension == 3);
    CHECK(basis.basis == coords({{0, 1, 7}, {0, 1, 8}, {0, 1, 11}}));
    CHECK(basis.saturation_order == 11);

    /* adding any denominator generator must not raise the rank */
    auto gens = denominator_generators(make_module_input(ModulePreset::hat, g), 28);
    std::mt19937 rng(601);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    for (int it = 0; it < 10; ++it)
        CHECK(space.rank_with({gens[pick(rng)]}) == space.span.rank);

    /* a smooth branch has nothing left over */
    PlaneGerm smooth{{{mono(40, 1, Rat(1)), TruncSeries(0, 40)}}};
    auto [sb, ss] = quotient_basis(make_module_input(ModulePreset::equimultiple, smooth), 12, 2);
    CHECK(sb.dimension == 0);
    CHECK(sb.saturation_order == 0);

    CHECK_THROWS_AS((void)quotient_basis(make_module_input(ModulePreset::hat, g), 12, 6), Error);
}

TEST_CASE("computed modules for the standard branch") {
    PlaneGerm g = standard_branch(140);
    CHECK(compute_module(ModulePreset::plain, g).dimension == 10);

    ModuleBasis em = compute_module(ModulePreset::equimultiple, g);
    CHECK(em.dimension == 6);
    CHECK(em.basis ==
          coords({{0, 1, 4}, {0, 1, 5}, {0, 1, 7}, {0, 1, 8}, {0, 1, 11}, {0, 1, 14}}));

    ModuleBasis arrow = compute_module(ModulePreset::arrow, g);
    CHECK(arrow.dimension == 4);
    CHECK(arrow.basis == coords({{0, 1, 7}, {0, 1, 8}, {0, 1, 11}, {0, 1, 14}}));

    ModuleBasis fake = compute_module(ModulePreset::fake, conormal(g));
    CHECK(fake.dimension == 7);
    CHECK(fake.basis == coords({{0, 0, 1}, {0, 0, 2}, {0, 1, 1}, {0, 1, 2}, {0, 1, 4},
                                {0, 1, 5}, {0, 1, 8}}));
}

TEST_CASE("two-branch modules and the branch-2 support") {
    PlaneGerm g = double_branch(140);
    ModuleBasis hat = compute_module(ModulePreset::hat, g);
    for (const auto& c : hat.basis)
        CHECK(c.branch == 1);  /* everything lives on the second branch */
    CHECK(hat.dimension == 2);

    /* dense cross-check at matching truncation */
    ModuleInput in = make_module_input(ModulePreset::hat, g);
    auto [b, s] = quotient_basis(in, 16, 0);
    CHECK(oracle_module_dimension(in, 16) == b.dimension);
}

TEST_CASE("divergence is reported, not silently truncated") {
    /* (t^2, t^4) runs along y = x^2 twice; its jets never stabilize */
    PlaneGerm doubled{{{mono(600, 2, Rat(1)), mono(600, 4, Rat(1))}}};
    ModuleOptions opts;
    opts.max_order = 40;
    CHECK_THROWS_AS((void)compute_module(ModulePreset::plain, doubled, opts), Error);
    try {
        (void)compute_module(ModulePreset::plain, doubled, opts);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::diverging);
    }
}

TEST_CASE("emitting families from a basis") {
    PlaneGerm g = standard_branch(140);
    ModuleInput in = make_module_input(ModulePreset::hat, g);
    ModuleBasis basis = compute_module(in);
    DeformationFamily fam = emit_family(basis, in);
    CHECK(fam.kind == FamilyKind::plane);
    CHECK(fam.param_count == 3);
    CHECK(fam.branches[0].x.same_terms(TruncSeries::monomial(3, 140, 3, Rat(1))));
    CHECK(fam.branches[0].y.coeff(7) == ParamPoly::variable(3, 0));
    CHECK(fam.branches[0].y.coeff(8) == ParamPoly::variable(3, 1));
    CHECK(fam.branches[0].y.coeff(10) == ParamPoly::constant(3, Rat(1)));
    CHECK(fam.branches[0].y.coeff(11) == ParamPoly::variable(3, 2));

    DeformationFamily lifted = emit_versal_family(basis, in);
    CHECK(lifted.kind == FamilyKind::legendrian);
    CHECK(lifted.branches[0].p.coeff(4) == ParamPoly::variable(3, 0, rat(7, 3)));
    CHECK(lifted.branches[0].p.coeff(7) == ParamPoly::constant(3, rat(10, 3)));

    /* an empty basis gives the constant family */
    PlaneGerm smooth{{{mono(40, 1, Rat(1)), TruncSeries(0, 40)}}};
    ModuleInput sin = make_module_input(ModulePreset::equimultiple, smooth);
    ModuleBasis sb = compute_module(sin);
    CHECK(sb.dimension == 0);
    DeformationFamily constant = emit_family(sb, sin);
    CHECK(constant.param_count == 0);
    CHECK(family_equal(constant, constant_family(smooth)));
}

TEST_CASE("first-order contact action reduces to zero in the modules") {
    std::mt19937 rng(602);
    PlaneGerm g = standard_branch(120);
    ModuleInput hat_in = make_module_input(ModulePreset::hat, g);
    auto [hb, hspace] = compute_module_space(hat_in);
    LegendrianGerm psi = conormal(g);
    int n = hspace.trunc;

    for (int it = 0; it < 40; ++it) {
        /* alpha = monomial * p^k pairs with beta = (k/(k+1)) alpha p */
        std::uniform_int_distribution<int> kd(1, 3), ad(0, 2), bd(0, 1);
        int k = kd(rng), a = ad(rng), b = bd(rng);
        CoordPoly alpha = CoordPoly::monomial(3, {a, b, k}, rand_nonzero_rat(rng));
        InfinitesimalContact ic = infinitesimal_extend(alpha, CoordPoly(2, 0), 3 * n);

        const auto& br = psi.branches[0];
        TruncSeries coords3[3] = {br.x, br.y, br.p};
        std::span<const TruncSeries> sp(coords3, 3);
        VectorJet v;
        v.slot1 = {poly_eval_along(ic.alpha, sp)};
        v.slot2 = {poly_eval_along(ic.beta, sp)};
        CHECK(hspace.in_denominator_span(v));
    }

    ModuleInput fake_in = make_module_input(ModulePreset::fake, psi);
    auto [fb, fspace] = compute_module_space(fake_in);
    n = fspace.trunc;
    for (int it = 0; it < 40; ++it) {
        CoordPoly alpha = rand_alpha(rng);
        CoordPoly beta0 = rand_beta0(rng);
        InfinitesimalContact ic = infinitesimal_extend(alpha, beta0, 3 * n);
        const auto& br = psi.branches[0];
        TruncSeries coords3[3] = {br.x, br.y, br.p};
        std::span<const TruncSeries> sp(coords3, 3);
        VectorJet v;
        v.slot1 = {poly_eval_along(ic.alpha, sp)};
        v.slot2 = {poly_eval_along(ic.gamma, sp)};
        CHECK(fspace.in_denominator_span(v));
    }
}

#include "legdef/contact.hpp"

namespace legdef {

namespace {

CoordPoly var(int idx) { return CoordPoly::variable(3, 0, idx); }
CoordPoly cst(const Rat& c) { return CoordPoly::constant(3, 0, c); }

}  // namespace

ContactMap identity_map() { return {var(0), var(1), var(2)}; }

ContactMap make_paraboloidal(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    if (a * d - b * c != 1)
        fail(Errc::not_symplectic, "make_paraboloidal: ad - bc != 1");
    CoordPoly x = var(0), y = var(1), p = var(2);
    ContactMap chi;
    chi.x_out = p.scaled(c) + x.scaled(d);
    chi.y_out = y + (p * p).scaled(a * c / 2) + (x * p).scaled(b * c) + (x * x).scaled(b * d / 2);
    chi.p_out = p.scaled(a) + x.scaled(b);
    return chi;
}

ContactMap legendre_map() { return make_paraboloidal(Rat(0), Rat(-1), Rat(1), Rat(0)); }

ContactMap lift_plane_automorphism(const CoordPoly& a, const CoordPoly& b, int degree) {
    if (a.vars() != 2 || b.vars() != 2 || a.arity() != 0 || b.arity() != 0)
        fail(Errc::domain_error,
             "lift_plane_automorphism: components must be parameter-free plane polynomials");
    if (!a.constant_term().is_zero() || !b.constant_term().is_zero())
        fail(Errc::not_automorphism, "lift_plane_automorphism: map does not fix the origin");

    CoordPoly ax = a.derivative(0), ay = a.derivative(1);
    CoordPoly bx = b.derivative(0), by = b.derivative(1);
    Rat ax0 = ax.constant_term().as_rat(), ay0 = ay.constant_term().as_rat();
    Rat bx0 = bx.constant_term().as_rat(), by0 = by.constant_term().as_rat();
    if (ax0 * by0 - ay0 * bx0 == 0)
        fail(Errc::not_automorphism, "lift_plane_automorphism: Jacobian vanishes at the origin");
    if (bx0 != 0)
        fail(Errc::chart_lost, "lift_plane_automorphism: d_x b(0,0) != 0, image leaves the chart");

    CoordPoly p = var(2);
    CoordPoly num = by.as_three_vars() * p + bx.as_three_vars();
    CoordPoly den = ay.as_three_vars() * p + ax.as_three_vars();

    /* den = u (1 - e) with e in the maximal ideal; invert by geometric series. */
    Rat u = ax0;
    CoordPoly e = cst(Rat(1)) - den.scaled(1 / u);
    CoordPoly inv = cst(Rat(1));
    CoordPoly epow = cst(Rat(1));
    for (int k = 1; k <= degree; ++k) {
        epow = (epow * e).truncated(degree);
        if (epow.is_zero())
            break;
        inv += epow;
    }
    inv = inv.scaled(1 / u);

    ContactMap chi;
    chi.x_out = a.as_three_vars();
    chi.y_out = b.as_three_vars();
    chi.p_out = (num * inv).truncated(degree);
    chi.degree = degree;
    return chi;
}

CoordPoly contact_check(const ContactMap& chi, int degree) {
    const CoordPoly& X = chi.x_out;
    const CoordPoly& Y = chi.y_out;
    const CoordPoly& P = chi.p_out;
    /* a truncated map only pins the differentials one degree lower */
    if (!chi.exact())
        degree = std::min(degree, chi.degree - 1);
    auto trunc = [&](CoordPoly f) { return f.truncated(degree); };

    CoordPoly res_dx = trunc(Y.derivative(0) - P * X.derivative(0));
    CoordPoly res_dy = trunc(Y.derivative(1) - P * X.derivative(1));
    CoordPoly res_dp = trunc(Y.derivative(2) - P * X.derivative(2));

    if (!res_dp.is_zero())
        fail(Errc::not_contact, "contact_check: residual dp component");
    if (!trunc(res_dx + var(2) * res_dy).is_zero())
        fail(Errc::not_contact, "contact_check: dx component is not -p times the dy component");
    if (res_dy.constant_term().is_zero())
        fail(Errc::not_contact, "contact_check: multiplier vanishes at the origin");
    return res_dy;
}

ContactMap compose_contact_maps(const ContactMap& outer, const ContactMap& inner, int degree) {
    std::vector<CoordPoly> args = {inner.x_out, inner.y_out, inner.p_out};
    int d = std::min({degree, outer.degree, inner.degree});
    ContactMap chi;
    chi.x_out = poly_compose(outer.x_out, args, d);
    chi.y_out = poly_compose(outer.y_out, args, d);
    chi.p_out = poly_compose(outer.p_out, args, d);
    chi.degree = (outer.exact() && inner.exact()) ? ContactMap::kExactDegree : d;
    return chi;
}

LegendrianGerm apply_contact_map(const ContactMap& chi, const LegendrianGerm& l) {
    validate_legendrian_germ(l);
    LegendrianGerm out;
    for (const auto& b : l.branches) {
        int cap = b.x.trunc();
        if (!chi.exact()) {
            int m = branch_multiplicity(b);
            cap = std::min({cap, (chi.degree + 1) * m - 1});
        }
        TruncSeries coords[3] = {b.x.with_trunc(std::min(cap, b.x.trunc())),
                                 b.y.with_trunc(std::min(cap, b.y.trunc())),
                                 b.p.with_trunc(std::min(cap, b.p.trunc()))};
        std::span<const TruncSeries> br(coords, 3);
        TruncSeries X = poly_eval_along(chi.x_out, br);
        TruncSeries Y = poly_eval_along(chi.y_out, br);
        TruncSeries P = poly_eval_along(chi.p_out, br);
        if (!X.coeff(0).is_zero() || !Y.coeff(0).is_zero() || !P.coeff(0).is_zero())
            fail(Errc::leaves_chart,
                 "apply_contact_map: image branch is not a germ at the chart origin");
        out.branches.push_back({X, Y, P});
    }
    validate_legendrian_germ(out);
    return out;
}

InfinitesimalContact infinitesimal_extend(const CoordPoly& alpha, const CoordPoly& beta0,
                                          int degree) {
    if (beta0.vars() != 2 || beta0.arity() != 0)
        fail(Errc::beta0_not_admissible, "infinitesimal_extend: beta0 must be a plane polynomial");
    for (const auto& [e, c] : beta0.terms())
        if (e[1] == 0 && e[0] < 2)
            fail(Errc::beta0_not_admissible, "infinitesimal_extend: beta0 not in (x^2, y)");
    if (alpha.vars() != 3 || alpha.arity() != 0)
        fail(Errc::domain_error, "infinitesimal_extend: alpha must be a polynomial in (x, y, p)");
    if (!alpha.constant_term().is_zero())
        fail(Errc::invariant_violation, "infinitesimal_extend: alpha must vanish at the origin");

    InfinitesimalContact out;
    out.degree = degree;
    out.alpha = alpha.truncated(degree);
    out.beta0 = beta0.truncated(degree);

    /* beta = beta0 + sum_k ((k-1)/k) alpha_{k-1} p^k, from d beta/dp = p d alpha/dp. */
    CoordPoly beta = beta0.as_three_vars();
    for (const auto& [e, c] : out.alpha.terms()) {
        int k = e[2] + 1;
        if (k < 2)
            continue;  /* alpha_0 contributes nothing */
        beta += CoordPoly::monomial(3, {e[0], e[1], e[2] + 1}, c * rat(k - 1, k));
    }
    out.beta = beta.truncated(degree);

    CoordPoly p = var(2);
    CoordPoly gamma = out.beta.derivative(0) +
                      p * (out.beta.derivative(1) - out.alpha.derivative(0)) -
                      (p * p) * out.alpha.derivative(1);
    out.gamma = gamma.truncated(degree);
    return out;
}

}  // namespace legdef

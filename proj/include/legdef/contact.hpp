#pragma once

#include <limits>

#include "legdef/coord_poly.hpp"
#include "legdef/germs.hpp"

namespace legdef {

/*
 * A contact transformation of (x, y, p) given by its three component
 * polynomials. `degree` is the total degree the components are trusted to;
 * exact maps (polynomial components with no truncation) use kExactDegree.
 */
struct ContactMap {
    CoordPoly x_out, y_out, p_out;
    int degree = kExactDegree;

    static constexpr int kExactDegree = std::numeric_limits<int>::max();
    bool exact() const { return degree == kExactDegree; }
};

ContactMap identity_map();

/*
 * Contact lift of the linear symplectic map (p, x) -> (a p + b x, c p + d x):
 * (x, y, p) -> (c p + d x, y + (ac/2) p^2 + bc xp + (bd/2) x^2, a p + b x).
 * Requires ad - bc = 1.
 */
ContactMap make_paraboloidal(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

/* The paraboloidal map (x, y, p) -> (p, y - px, -x). */
ContactMap legendre_map();

/*
 * Lift of the plane automorphism (x, y) -> (a(x, y), b(x, y)); the p
 * component (d_y b p + d_x b) / (d_y a p + d_x a) is expanded as a polynomial
 * up to total degree `degree`. Requires a, b to fix the origin with
 * invertible Jacobian and d_x b(0,0) = 0 so the chart is preserved.
 */
ContactMap lift_plane_automorphism(const CoordPoly& a, const CoordPoly& b, int degree);

/*
 * Verify symbolically that dY - P dX = f (dy - p dx) up to total degree
 * `degree`, with f a unit; returns f. Fails with NotContact.
 */
CoordPoly contact_check(const ContactMap& chi, int degree);

/* outer after inner, components truncated at `degree` unless both exact. */
ContactMap compose_contact_maps(const ContactMap& outer, const ContactMap& inner, int degree);

/*
 * Image germ branch by branch; the result must stay a germ at the chart
 * origin (LeavesChart otherwise) and is re-validated as Legendrian.
 */
LegendrianGerm apply_contact_map(const ContactMap& chi, const LegendrianGerm& l);

/*
 * First-order contact data (epsilon^2 = 0): from alpha(x, y, p) and an
 * admissible beta0(x, y) in (x^2, y), the unique beta, gamma with
 *   d beta / d p = p d alpha / d p,  beta - beta0 in (p),
 *   gamma = d_x beta + p (d_y beta - d_x alpha) - p^2 d_y alpha,
 * everything truncated at the working total degree.
 */
struct InfinitesimalContact {
    CoordPoly alpha, beta, gamma;
    CoordPoly beta0;
    int degree;
};

InfinitesimalContact infinitesimal_extend(const CoordPoly& alpha, const CoordPoly& beta0,
                                          int degree);

}  // namespace legdef

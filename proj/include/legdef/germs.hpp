#pragma once

#include <vector>

#include "legdef/series.hpp"

namespace legdef {

/* One branch of a parametrized plane curve germ, t -> (x(t), y(t)). */
struct PlaneBranch {
    TruncSeries x, y;
};

/* One branch lying on the contact structure: dy/dt = p * dx/dt. */
struct LegendrianBranch {
    TruncSeries x, y, p;
};

/* The (x, p) shadow of a Legendrian branch. */
struct FakeBranch {
    TruncSeries x, p;
};

struct PlaneGerm {
    std::vector<PlaneBranch> branches;
};

struct LegendrianGerm {
    std::vector<LegendrianBranch> branches;
};

struct FakeGerm {
    std::vector<FakeBranch> branches;
};

enum class PositionCase {
    /* tangent cone {y = 0}, no finer information; not produced by
       position_classify, whose precondition always lands in II-IV */
    case_i,
    case_ii,   /* ord x < ord y < 2 ord x: conormal tangent to the fiber */
    case_iii,  /* ord y = 2 ord x: boundary, generic position */
    case_iv,   /* ord y > 2 ord x: conormal tangent {y = p = 0} */
};

struct PositionClass {
    PositionCase variant;
    bool tangent_cone_is_y0;
    bool generic_position;
    bool mult_equal;
};

const char* position_case_name(PositionCase c);

/* Structural checks: coordinates vanish at 0, branch not identically zero. */
void validate_plane_germ(const PlaneGerm& g);
void validate_legendrian_germ(const LegendrianGerm& g);
void validate_fake_germ(const FakeGerm& g);

int branch_multiplicity(const PlaneBranch& b);
int branch_multiplicity(const LegendrianBranch& b);
int branch_multiplicity(const FakeBranch& b);

/*
 * Classify the branch position after checking the chart condition
 * ord y > ord x; fails with TangentNotY0 otherwise.
 */
PositionClass position_classify(const PlaneBranch& b);

/* Legendrian lift (x, y, dy/dx); requires every branch in the chart. */
LegendrianGerm conormal(const PlaneGerm& z);

PlaneGerm plane_projection(const LegendrianGerm& l);
FakeGerm fake_projection(const LegendrianGerm& l);

/* Inverse of the fake projection: y = integral of p dx. */
LegendrianGerm fake_conormal(const FakeGerm& s);

enum class FamilyKind { plane, legendrian, fake };

struct FamilyBranch {
    TruncSeries x, y, p;  /* y unused for fake, p unused for plane */
};

/*
 * Multi-parameter deformation of a germ: coefficients are polynomials in the
 * parameters, the zero fiber is the original germ, and Legendrian families
 * satisfy dY/dt = P dX/dt identically in the parameters.
 */
struct DeformationFamily {
    FamilyKind kind;
    int param_count = 0;
    std::vector<FamilyBranch> branches;
};

void validate_family(const DeformationFamily& f);

DeformationFamily constant_family(const PlaneGerm& g, int param_count = 0);
DeformationFamily constant_family(const LegendrianGerm& g, int param_count = 0);
DeformationFamily constant_family(const FakeGerm& g, int param_count = 0);

PlaneGerm plane_special_fiber(const DeformationFamily& f);
LegendrianGerm legendrian_special_fiber(const DeformationFamily& f);
FakeGerm fake_special_fiber(const DeformationFamily& f);

/*
 * P = dY/dt / dX/dt computed exactly in the parameters; fails with
 * ConormalUndefined when some quotient coefficient is not polynomial.
 */
DeformationFamily family_conormal(const DeformationFamily& plane_family);

/* Y = integral of P dX/dt, exact in the parameters. */
DeformationFamily family_fake_conormal(const DeformationFamily& fake_family);

DeformationFamily family_plane_projection(const DeformationFamily& legendrian_family);
DeformationFamily family_fake_projection(const DeformationFamily& legendrian_family);

/*
 * Per-branch equimultiplicity with the parameters treated as unknowns: any
 * term below the multiplicity bound of the corresponding special-fiber
 * coordinate fails the branch. Plane families use the bound
 * (ord X = m, ord Y >= 2m); Legendrian families (m, 2m, m); fake families
 * (m, m).
 */
std::vector<bool> family_is_equimultiple(const DeformationFamily& f);

bool germ_equal(const PlaneGerm& a, const PlaneGerm& b);
bool germ_equal(const LegendrianGerm& a, const LegendrianGerm& b);
bool germ_equal(const FakeGerm& a, const FakeGerm& b);
bool family_equal(const DeformationFamily& a, const DeformationFamily& b);

}  // namespace legdef

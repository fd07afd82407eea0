#pragma once

#include <map>
#include <vector>

#include "legdef/germs.hpp"
#include "legdef/rref.hpp"

namespace legdef {

/*
 * The first-order deformation modules attached to a parametrized germ.
 *
 *   plain         deformations of a plane parametrization
 *   equimultiple  equimultiple deformations of a plane parametrization
 *   arrow         equimultiple with fixed tangent and conormal in generic
 *                 position (numerator floors (m, 2m))
 *   hat           Legendrian equimultiple deformations, computed on the
 *                 plane projection (arrow denominators plus the lifted
 *                 relations through the conormal)
 *   fake          Legendrian deformations, computed on the (x, p) shadow
 */
enum class ModulePreset { plain, equimultiple, arrow, hat, fake };

const char* preset_name(ModulePreset p);
ModulePreset preset_from_name(const std::string& name);

/* Lowest admissible t-exponent per branch and slot. */
struct SlotFloors {
    int slot1;
    int slot2;
};

/* One coordinate of the truncated jet space: branch (0-based), slot, exponent. */
struct JetCoord {
    int branch;
    int slot;  /* 0 = d/dx, 1 = d/dy (or d/dp for fake) */
    int exp;

    friend bool operator==(const JetCoord& a, const JetCoord& b) {
        return a.branch == b.branch && a.slot == b.slot && a.exp == b.exp;
    }
    /* graded order: exponent, then branch, then slot */
    friend bool operator<(const JetCoord& a, const JetCoord& b) {
        if (a.exp != b.exp)
            return a.exp < b.exp;
        if (a.branch != b.branch)
            return a.branch < b.branch;
        return a.slot < b.slot;
    }
};

/* A two-slot tuple of series, one pair per branch. */
struct VectorJet {
    std::vector<TruncSeries> slot1, slot2;
};

struct ModuleBasis {
    ModulePreset preset;
    int dimension = 0;
    std::vector<JetCoord> basis;  /* monomial representatives, family order */
    int trunc_order = 0;
    int saturation_order = 0;
    int branch_count = 0;
    std::vector<SlotFloors> floors;

    /* Materialize a basis element as a vector jet at the module truncation. */
    VectorJet basis_vector(int i, int arity = 0) const;
};

/*
 * The assembled quotient presentation at one truncation order: coordinates,
 * the echelonized span of the denominator generators, and reduction against
 * it. Exposed for consistency checks and golden-basis verification.
 */
struct QuotientSpace {
    int trunc = 0;
    std::vector<SlotFloors> floors;
    std::vector<JetCoord> coords;          /* graded order */
    std::map<JetCoord, int> coord_index;
    RrefResult span;

    std::vector<Rat> coordinates(const VectorJet& v) const;
    bool in_denominator_span(const VectorJet& v) const;
    /* Rank of the denominator span together with the given jets. */
    int rank_with(const std::vector<VectorJet>& extra) const;
};

struct ModuleOptions {
    int max_order = 256;  /* hard cap on the truncation order */
    int start_order = 0;  /* 0 = heuristic start */
    RrefMode rref_mode = RrefMode::automatic;
};

/* Either a plane germ (plain/equimultiple/arrow/hat) or a Legendrian one (fake). */
struct ModuleInput {
    ModulePreset preset;
    PlaneGerm plane;        /* valid unless preset == fake */
    LegendrianGerm lifted;  /* conormal for hat, the input germ for fake */
};

ModuleInput make_module_input(ModulePreset preset, const PlaneGerm& germ);
ModuleInput make_module_input(ModulePreset preset, const LegendrianGerm& germ);

std::vector<SlotFloors> numerator_floors(const ModuleInput& in);

/*
 * Finite truncated generating set of the denominator at order n:
 * branchwise multiples of the derivative of the parametrization, the
 * coordinate-ideal relations acting diagonally through the pullback, the
 * p-power relations along the conormal (hat), and the linearized contact
 * action along the Legendrian germ (fake).
 */
std::vector<VectorJet> denominator_generators(const ModuleInput& in, int n);

/*
 * Echelonize the generators and read off the quotient: dimension, monomial
 * basis (free columns), and the saturation order past which every pure
 * monomial jet falls into the span. Fails with NotSaturated when no
 * saturation order leaves a window of width `window` below n.
 */
std::pair<ModuleBasis, QuotientSpace> quotient_basis(const ModuleInput& in, int n, int window,
                                                     RrefMode mode = RrefMode::automatic);

/*
 * Full computation: picks a starting order, doubles until the dimension and
 * basis are stable across two increments with saturation, and returns the
 * canonical basis. Fails with Diverging at the cap.
 */
ModuleBasis compute_module(ModulePreset preset, const PlaneGerm& germ,
                           const ModuleOptions& opts = {});
ModuleBasis compute_module(ModulePreset preset, const LegendrianGerm& germ,
                           const ModuleOptions& opts = {});
ModuleBasis compute_module(const ModuleInput& in, const ModuleOptions& opts = {});

/* As compute_module but keeping the workspace for membership checks. */
std::pair<ModuleBasis, QuotientSpace> compute_module_space(const ModuleInput& in,
                                                           const ModuleOptions& opts = {});

/*
 * One fresh parameter per basis vector, added to the corresponding
 * coordinate of the germ: a plane family, or a fake family for the fake
 * preset. Parameters are ordered slot-major (all d/dx first), then by
 * branch, then by exponent.
 */
DeformationFamily emit_family(const ModuleBasis& basis, const ModuleInput& in);

/*
 * emit_family followed by the functor that makes it Legendrian: the conormal
 * for hat, the fake conormal for fake; plain/equimultiple/arrow families are
 * returned unchanged.
 */
DeformationFamily emit_versal_family(const ModuleBasis& basis, const ModuleInput& in);

}  // namespace legdef

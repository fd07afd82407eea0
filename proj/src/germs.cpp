#include "legdef/germs.hpp"

#include <string>

namespace legdef {

namespace {

void check_vanishes(const TruncSeries& s, const std::string& where) {
    if (s.trunc() >= 0 && !s.coeff(0).is_zero())
        fail(Errc::invariant_violation, where + ": coordinate series must vanish at t = 0");
}

int finite_min(std::initializer_list<SeriesOrder> orders, const std::string& where) {
    SeriesOrder m = SeriesOrder::inf();
    for (const auto& o : orders)
        if (o < m)
            m = o;
    if (!m.finite)
        fail(Errc::invariant_violation, where + ": branch is identically zero");
    return m.value;
}

/* dY/dt == P dX/dt up to the reportable order. */
bool legendrian_condition(const TruncSeries& x, const TruncSeries& y, const TruncSeries& p) {
    TruncSeries lhs = y.derivative();
    TruncSeries rhs = p * x.derivative();
    return (lhs - rhs).is_zero();
}

}  // namespace

const char* position_case_name(PositionCase c) {
    switch (c) {
        case PositionCase::case_i: return "I";
        case PositionCase::case_ii: return "II";
        case PositionCase::case_iii: return "III";
        case PositionCase::case_iv: return "IV";
    }
    return "?";
}

void validate_plane_germ(const PlaneGerm& g) {
    if (g.branches.empty())
        fail(Errc::invariant_violation, "plane germ: no branches");
    for (const auto& b : g.branches) {
        check_vanishes(b.x, "plane branch x");
        check_vanishes(b.y, "plane branch y");
        finite_min({b.x.order(), b.y.order()}, "plane branch");
    }
}

void validate_legendrian_germ(const LegendrianGerm& g) {
    if (g.branches.empty())
        fail(Errc::invariant_violation, "Legendrian germ: no branches");
    for (const auto& b : g.branches) {
        check_vanishes(b.x, "Legendrian branch x");
        check_vanishes(b.y, "Legendrian branch y");
        check_vanishes(b.p, "Legendrian branch p");
        finite_min({b.x.order(), b.y.order(), b.p.order()}, "Legendrian branch");
        if (!legendrian_condition(b.x, b.y, b.p))
            fail(Errc::invariant_violation,
                 "Legendrian branch: dy/dt != p dx/dt up to the shared truncation");
    }
}

void validate_fake_germ(const FakeGerm& g) {
    if (g.branches.empty())
        fail(Errc::invariant_violation, "fake germ: no branches");
    for (const auto& b : g.branches) {
        check_vanishes(b.x, "fake branch x");
        check_vanishes(b.p, "fake branch p");
        finite_min({b.x.order(), b.p.order()}, "fake branch");
    }
}

int branch_multiplicity(const PlaneBranch& b) {
    return finite_min({b.x.order(), b.y.order()}, "plane branch");
}
int branch_multiplicity(const LegendrianBranch& b) {
    return finite_min({b.x.order(), b.y.order(), b.p.order()}, "Legendrian branch");
}
int branch_multiplicity(const FakeBranch& b) {
    return finite_min({b.x.order(), b.p.order()}, "fake branch");
}

PositionClass position_classify(const PlaneBranch& b) {
    SeriesOrder ox = b.x.order();
    SeriesOrder oy = b.y.order();
    if (!(oy > ox))
        fail(Errc::tangent_not_y0, "position_classify: ord y <= ord x, tangent cone is not {y=0}");

    SeriesOrder twice = SeriesOrder::at(2 * ox.value);
    PositionClass r{};
    r.tangent_cone_is_y0 = true;
    r.generic_position = oy >= twice;
    r.mult_equal = r.generic_position;
    if (oy < twice)
        r.variant = PositionCase::case_ii;
    else if (oy == twice)
        r.variant = PositionCase::case_iii;
    else
        r.variant = PositionCase::case_iv;
    return r;
}

LegendrianGerm conormal(const PlaneGerm& z) {
    validate_plane_germ(z);
    LegendrianGerm l;
    for (const auto& b : z.branches) {
        if (!(b.y.order() > b.x.order()))
            fail(Errc::not_in_chart, "conormal: branch has ord y <= ord x");
        TruncSeries p;
        try {
            p = divide_exact(b.y.derivative(), b.x.derivative());
        } catch (const Error& e) {
            if (e.code() == Errc::not_divisible)
                fail(Errc::not_in_chart, std::string("conormal: dy/dx is not a power series: ") +
                                             e.what());
            throw;
        }
        l.branches.push_back({b.x, b.y, p});
    }
    validate_legendrian_germ(l);
    return l;
}

PlaneGerm plane_projection(const LegendrianGerm& l) {
    PlaneGerm z;
    for (const auto& b : l.branches)
        z.branches.push_back({b.x, b.y});
    return z;
}

FakeGerm fake_projection(const LegendrianGerm& l) {
    FakeGerm s;
    for (const auto& b : l.branches)
        s.branches.push_back({b.x, b.p});
    return s;
}

LegendrianGerm fake_conormal(const FakeGerm& s) {
    validate_fake_germ(s);
    LegendrianGerm l;
    for (const auto& b : s.branches) {
        TruncSeries y = (b.p * b.x.derivative()).integrate();
        l.branches.push_back({b.x, y, b.p});
    }
    return l;
}

void validate_family(const DeformationFamily& f) {
    if (f.branches.empty())
        fail(Errc::invariant_violation, "family: no branches");
    for (const auto& b : f.branches) {
        switch (f.kind) {
            case FamilyKind::plane:
                check_vanishes(b.x, "family X");
                check_vanishes(b.y, "family Y");
                break;
            case FamilyKind::legendrian:
                check_vanishes(b.x, "family X");
                check_vanishes(b.y, "family Y");
                check_vanishes(b.p, "family P");
                if (!legendrian_condition(b.x, b.y, b.p))
                    fail(Errc::invariant_violation,
                         "Legendrian family: dY/dt != P dX/dt identically in the parameters");
                break;
            case FamilyKind::fake:
                check_vanishes(b.x, "family X");
                check_vanishes(b.p, "family P");
                break;
        }
    }
    switch (f.kind) {
        case FamilyKind::plane: validate_plane_germ(plane_special_fiber(f)); break;
        case FamilyKind::legendrian: validate_legendrian_germ(legendrian_special_fiber(f)); break;
        case FamilyKind::fake: validate_fake_germ(fake_special_fiber(f)); break;
    }
}

namespace {

TruncSeries embed(const TruncSeries& s, int params) { return s.embedded(params); }

}  // namespace

DeformationFamily constant_family(const PlaneGerm& g, int param_count) {
    DeformationFamily f{FamilyKind::plane, param_count, {}};
    for (const auto& b : g.branches)
        f.branches.push_back({embed(b.x, param_count), embed(b.y, param_count),
                              TruncSeries(param_count, b.x.trunc())});
    return f;
}

DeformationFamily constant_family(const LegendrianGerm& g, int param_count) {
    DeformationFamily f{FamilyKind::legendrian, param_count, {}};
    for (const auto& b : g.branches)
        f.branches.push_back({embed(b.x, param_count), embed(b.y, param_count),
                              embed(b.p, param_count)});
    return f;
}

DeformationFamily constant_family(const FakeGerm& g, int param_count) {
    DeformationFamily f{FamilyKind::fake, param_count, {}};
    for (const auto& b : g.branches)
        f.branches.push_back({embed(b.x, param_count), TruncSeries(param_count, b.x.trunc()),
                              embed(b.p, param_count)});
    return f;
}

PlaneGerm plane_special_fiber(const DeformationFamily& f) {
    if (f.kind != FamilyKind::plane)
        fail(Errc::domain_error, "plane_special_fiber: family is not plane");
    PlaneGerm g;
    for (const auto& b : f.branches)
        g.branches.push_back({b.x.at_params_zero(), b.y.at_params_zero()});
    return g;
}

LegendrianGerm legendrian_special_fiber(const DeformationFamily& f) {
    if (f.kind != FamilyKind::legendrian)
        fail(Errc::domain_error, "legendrian_special_fiber: family is not Legendrian");
    LegendrianGerm g;
    for (const auto& b : f.branches)
        g.branches.push_back(
            {b.x.at_params_zero(), b.y.at_params_zero(), b.p.at_params_zero()});
    return g;
}

FakeGerm fake_special_fiber(const DeformationFamily& f) {
    if (f.kind != FamilyKind::fake)
        fail(Errc::domain_error, "fake_special_fiber: family is not fake");
    FakeGerm g;
    for (const auto& b : f.branches)
        g.branches.push_back({b.x.at_params_zero(), b.p.at_params_zero()});
    return g;
}

DeformationFamily family_conormal(const DeformationFamily& plane_family) {
    if (plane_family.kind != FamilyKind::plane)
        fail(Errc::domain_error, "family_conormal: expected a plane family");
    DeformationFamily out{FamilyKind::legendrian, plane_family.param_count, {}};
    for (size_t i = 0; i < plane_family.branches.size(); ++i) {
        const auto& b = plane_family.branches[i];
        TruncSeries p;
        try {
            p = divide_exact(b.y.derivative(), b.x.derivative());
        } catch (const Error& e) {
            if (e.code() == Errc::not_divisible)
                fail(Errc::conormal_undefined,
                     "family_conormal: branch " + std::to_string(i + 1) +
                         " has no polynomial dY/dX: " + e.what());
            throw;
        }
        out.branches.push_back({b.x, b.y, p});
    }
    return out;
}

DeformationFamily family_fake_conormal(const DeformationFamily& fake_family) {
    if (fake_family.kind != FamilyKind::fake)
        fail(Errc::domain_error, "family_fake_conormal: expected a fake family");
    DeformationFamily out{FamilyKind::legendrian, fake_family.param_count, {}};
    for (const auto& b : fake_family.branches)
        out.branches.push_back({b.x, (b.p * b.x.derivative()).integrate(), b.p});
    return out;
}

DeformationFamily family_plane_projection(const DeformationFamily& f) {
    if (f.kind != FamilyKind::legendrian)
        fail(Errc::domain_error, "family_plane_projection: expected a Legendrian family");
    DeformationFamily out{FamilyKind::plane, f.param_count, {}};
    for (const auto& b : f.branches)
        out.branches.push_back({b.x, b.y, TruncSeries(f.param_count, b.x.trunc())});
    return out;
}

DeformationFamily family_fake_projection(const DeformationFamily& f) {
    if (f.kind != FamilyKind::legendrian)
        fail(Errc::domain_error, "family_fake_projection: expected a Legendrian family");
    DeformationFamily out{FamilyKind::fake, f.param_count, {}};
    for (const auto& b : f.branches)
        out.branches.push_back({b.x, TruncSeries(f.param_count, b.x.trunc()), b.p});
    return out;
}

namespace {

bool order_at_least(const TruncSeries& s, int bound) {
    SeriesOrder o = s.order();
    return !o.finite || o.value >= bound;
}

}  // namespace

std::vector<bool> family_is_equimultiple(const DeformationFamily& f) {
    std::vector<bool> out;
    for (const auto& b : f.branches) {
        bool ok = true;
        switch (f.kind) {
            case FamilyKind::plane: {
                int m = branch_multiplicity(
                    PlaneBranch{b.x.at_params_zero(), b.y.at_params_zero()});
                ok = order_at_least(b.x, m) && order_at_least(b.y, 2 * m);
                break;
            }
            case FamilyKind::legendrian: {
                int m = branch_multiplicity(LegendrianBranch{
                    b.x.at_params_zero(), b.y.at_params_zero(), b.p.at_params_zero()});
                ok = order_at_least(b.x, m) && order_at_least(b.y, 2 * m) &&
                     order_at_least(b.p, m);
                break;
            }
            case FamilyKind::fake: {
                int m = branch_multiplicity(
                    FakeBranch{b.x.at_params_zero(), b.p.at_params_zero()});
                ok = order_at_least(b.x, m) && order_at_least(b.p, m);
                break;
            }
        }
        out.push_back(ok);
    }
    return out;
}

namespace {

bool series_terms_equal(const TruncSeries& a, const TruncSeries& b) { return a.same_terms(b); }

}  // namespace

bool germ_equal(const PlaneGerm& a, const PlaneGerm& b) {
    if (a.branches.size() != b.branches.size())
        return false;
    for (size_t i = 0; i < a.branches.size(); ++i)
        if (!series_terms_equal(a.branches[i].x, b.branches[i].x) ||
            !series_terms_equal(a.branches[i].y, b.branches[i].y))
            return false;
    return true;
}

bool germ_equal(const LegendrianGerm& a, const LegendrianGerm& b) {
    if (a.branches.size() != b.branches.size())
        return false;
    for (size_t i = 0; i < a.branches.size(); ++i)
        if (!series_terms_equal(a.branches[i].x, b.branches[i].x) ||
            !series_terms_equal(a.branches[i].y, b.branches[i].y) ||
            !series_terms_equal(a.branches[i].p, b.branches[i].p))
            return false;
    return true;
}

bool germ_equal(const FakeGerm& a, const FakeGerm& b) {
    if (a.branches.size() != b.branches.size())
        return false;
    for (size_t i = 0; i < a.branches.size(); ++i)
        if (!series_terms_equal(a.branches[i].x, b.branches[i].x) ||
            !series_terms_equal(a.branches[i].p, b.branches[i].p))
            return false;
    return true;
}

bool family_equal(const DeformationFamily& a, const DeformationFamily& b) {
    if (a.kind != b.kind || a.param_count != b.param_count ||
        a.branches.size() != b.branches.size())
        return false;
    for (size_t i = 0; i < a.branches.size(); ++i) {
        const auto& ba = a.branches[i];
        const auto& bb = b.branches[i];
        bool need_y = a.kind != FamilyKind::fake;
        bool need_p = a.kind != FamilyKind::plane;
        if (!series_terms_equal(ba.x, bb.x))
            return false;
        if (need_y && !series_terms_equal(ba.y, bb.y))
            return false;
        if (need_p && !series_terms_equal(ba.p, bb.p))
            return false;
    }
    return true;
}

}  // namespace legdef

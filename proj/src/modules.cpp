#include "legdef/modules.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace legdef {

namespace {

constexpr int64_t kInfOrder = INT64_MAX / 4;

/*
 * All generator assembly runs on dense coefficient vectors indexed by the
 * t-exponent (0..n); the sparse parameter-aware series are only unpacked
 * once per computation. This is the hot path of every module computation.
 */
using DSeries = std::vector<Rat>;

DSeries dense_of(const TruncSeries& s, int n) {
    DSeries d(n + 1, Rat(0));
    for (const auto& [e, c] : s.coeffs()) {
        if (e > n)
            break;
        d[e] = c.as_rat();
    }
    return d;
}

int64_t dorder(const DSeries& a) {
    for (size_t e = 0; e < a.size(); ++e)
        if (a[e] != 0)
            return static_cast<int64_t>(e);
    return kInfOrder;
}

bool dzero(const DSeries& a) { return dorder(a) == kInfOrder; }

DSeries dmul(const DSeries& a, const DSeries& b) {
    const int n = static_cast<int>(a.size()) - 1;
    DSeries r(n + 1, Rat(0));
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; i + j <= n; ++j)
            if (b[j] != 0)
                r[i + j] += a[i] * b[j];
    }
    return r;
}

DSeries dderiv(const DSeries& a) {
    const int n = static_cast<int>(a.size()) - 1;
    DSeries r(n + 1, Rat(0));
    for (int e = 1; e <= n; ++e)
        if (a[e] != 0)
            r[e - 1] = a[e] * Rat(e);
    return r;
}

DSeries dshift(const DSeries& a, int k) {
    const int n = static_cast<int>(a.size()) - 1;
    DSeries r(n + 1, Rat(0));
    for (int e = 0; e + k <= n; ++e)
        if (a[e] != 0)
            r[e + k] = a[e];
    return r;
}

void dacc(DSeries& dst, const DSeries& src, const Rat& scale) {
    for (size_t e = 0; e < dst.size(); ++e)
        if (src[e] != 0)
            dst[e] += src[e] * scale;
}

/* One denominator generator: per-branch dense slots. */
struct DenseJet {
    std::vector<DSeries> slot1, slot2;
};

/* Per-branch coordinate data of the working germ, plus power caches. */
struct Workspace {
    ModulePreset preset;
    int n = 0;
    int branches = 0;
    std::vector<DSeries> x, y, p;
    std::vector<int64_t> ox, oy, op;
    std::vector<int> mult;
    std::vector<std::vector<DSeries>> xpow, ypow, ppow;

    bool uses_p() const { return preset == ModulePreset::hat || preset == ModulePreset::fake; }

    const DSeries& pow(std::vector<std::vector<DSeries>>& cache, const std::vector<DSeries>& base,
                       int i, int k) {
        auto& c = cache[i];
        while (static_cast<int>(c.size()) <= k) {
            if (c.empty()) {
                DSeries one(n + 1, Rat(0));
                one[0] = Rat(1);
                c.push_back(std::move(one));
            } else if (c.size() == 1) {
                c.push_back(base[i]);
            } else {
                c.push_back(dmul(c.back(), base[i]));
            }
        }
        return c[k];
    }

    /* x^a y^b p^k along branch i */
    DSeries mono(int i, int a, int b, int k = 0) {
        DSeries r = pow(xpow, x, i, a);
        if (b > 0)
            r = dmul(r, pow(ypow, y, i, b));
        if (k > 0)
            r = dmul(r, pow(ppow, p, i, k));
        return r;
    }

    int64_t pull_order(int a, int b, int k = 0) const {
        int64_t best = kInfOrder;
        for (int i = 0; i < branches; ++i) {
            int64_t o = 0;
            bool inf = false;
            auto acc = [&](int64_t count, int64_t ord) {
                if (count == 0)
                    return;
                if (ord >= kInfOrder)
                    inf = true;
                else
                    o += count * ord;
            };
            acc(a, ox[i]);
            acc(b, oy[i]);
            if (k > 0)
                acc(k, uses_p() ? op[i] : kInfOrder);
            if (!inf)
                best = std::min(best, o);
        }
        return best;
    }
};

void require_depth(const ModuleInput& in, int n) {
    auto check = [&](const TruncSeries& s, size_t i) {
        if (s.trunc() < n + 1)
            fail(Errc::domain_error,
                 "module computation needs the germ materialized to truncation order >= " +
                     std::to_string(n + 1) + " (branch " + std::to_string(i + 1) + " has " +
                     std::to_string(s.trunc()) + "); rebuild the input with a higher truncation");
    };
    if (in.preset == ModulePreset::fake) {
        for (size_t i = 0; i < in.lifted.branches.size(); ++i) {
            check(in.lifted.branches[i].x, i);
            check(in.lifted.branches[i].y, i);
            check(in.lifted.branches[i].p, i);
        }
    } else {
        for (size_t i = 0; i < in.plane.branches.size(); ++i) {
            check(in.plane.branches[i].x, i);
            check(in.plane.branches[i].y, i);
            if (in.preset == ModulePreset::hat)
                check(in.lifted.branches[i].p, i);
        }
    }
}

Workspace make_workspace(const ModuleInput& in, int n) {
    require_depth(in, n);
    Workspace w;
    w.preset = in.preset;
    w.n = n;
    auto add_branch = [&](const TruncSeries& x, const TruncSeries& y, const TruncSeries* p,
                          int mult) {
        w.x.push_back(dense_of(x, n));
        w.y.push_back(dense_of(y, n));
        if (p)
            w.p.push_back(dense_of(*p, n));
        w.ox.push_back(dorder(w.x.back()));
        w.oy.push_back(dorder(w.y.back()));
        w.op.push_back(p ? dorder(w.p.back()) : kInfOrder);
        w.mult.push_back(mult);
    };
    if (in.preset == ModulePreset::fake) {
        w.branches = static_cast<int>(in.lifted.branches.size());
        for (const auto& b : in.lifted.branches)
            add_branch(b.x, b.y, &b.p, branch_multiplicity(FakeBranch{b.x, b.p}));
    } else {
        w.branches = static_cast<int>(in.plane.branches.size());
        for (size_t i = 0; i < in.plane.branches.size(); ++i) {
            const auto& b = in.plane.branches[i];
            const TruncSeries* p =
                in.preset == ModulePreset::hat ? &in.lifted.branches[i].p : nullptr;
            add_branch(b.x, b.y, p, branch_multiplicity(b));
        }
    }
    w.xpow.resize(w.branches);
    w.ypow.resize(w.branches);
    w.ppow.resize(w.branches);
    return w;
}

DenseJet zero_jet(const Workspace& w) {
    DenseJet v;
    v.slot1.assign(w.branches, DSeries(w.n + 1, Rat(0)));
    v.slot2.assign(w.branches, DSeries(w.n + 1, Rat(0)));
    return v;
}

bool jet_zero(const DenseJet& v) {
    for (const auto& s : v.slot1)
        if (!dzero(s))
            return false;
    for (const auto& s : v.slot2)
        if (!dzero(s))
            return false;
    return true;
}

/* m_param multiples of the derivative of the parametrization, per branch. */
void push_parametrization_multiples(Workspace& w, std::vector<DenseJet>& out) {
    for (int i = 0; i < w.branches; ++i) {
        DSeries dx = dderiv(w.x[i]);
        DSeries d2 = dderiv(w.preset == ModulePreset::fake ? w.p[i] : w.y[i]);
        int64_t base = std::min(dorder(dx), dorder(d2));
        for (int j = 1; j + base <= w.n; ++j) {
            DenseJet v = zero_jet(w);
            v.slot1[i] = dshift(dx, j);
            v.slot2[i] = dshift(d2, j);
            if (!jet_zero(v))
                out.push_back(std::move(v));
        }
    }
}

/* Diagonal vectors g . d/dslot for every monomial g of the ideal. */
void push_ideal_diagonals(Workspace& w, int slot, bool square_floor, std::vector<DenseJet>& out) {
    for (int a = 0; w.pull_order(a, 0) <= w.n; ++a) {
        for (int b = 0; w.pull_order(a, b) <= w.n; ++b) {
            bool in_ideal = square_floor ? (a >= 2 || b >= 1) : (a + b >= 1);
            if (!in_ideal)
                continue;
            DenseJet v = zero_jet(w);
            bool nonzero = false;
            for (int i = 0; i < w.branches; ++i) {
                DSeries g = w.mono(i, a, b);
                nonzero = nonzero || !dzero(g);
                (slot == 0 ? v.slot1[i] : v.slot2[i]) = std::move(g);
            }
            if (nonzero)
                out.push_back(std::move(v));
        }
    }
}

/* O_Z multiples of p^k d/dx + (k/(k+1)) p^(k+1) d/dy along the conormal. */
void push_p_power_relations(Workspace& w, std::vector<DenseJet>& out) {
    for (int k = 1; w.pull_order(0, 0, k) <= w.n; ++k) {
        for (int c = 0; w.pull_order(c, 0, k) <= w.n; ++c) {
            for (int d = 0; w.pull_order(c, d, k) <= w.n; ++d) {
                DenseJet v = zero_jet(w);
                bool nonzero = false;
                for (int i = 0; i < w.branches; ++i) {
                    DSeries h = w.mono(i, c, d);
                    v.slot1[i] = dmul(h, w.mono(i, 0, 0, k));
                    DSeries s2 = dmul(h, w.mono(i, 0, 0, k + 1));
                    for (auto& q : s2)
                        if (q != 0)
                            q *= rat(k, k + 1);
                    v.slot2[i] = std::move(s2);
                    nonzero = nonzero || !dzero(v.slot1[i]) || !dzero(v.slot2[i]);
                }
                if (nonzero)
                    out.push_back(std::move(v));
            }
        }
    }
}

/*
 * The linearized contact action along the Legendrian germ. A first-order
 * contact transformation is determined by alpha = sum_k alpha_k(x, y) p^k
 * (vanishing at the origin) and beta0 in (x^2, y); its effect on the fake
 * coordinates (x, p) is spanned by
 *   alpha_0 in (x, y):    (alpha_0, -(d_x alpha_0 + d_y alpha_0 p) p)
 *   beta_0 in (x^2, y):   (0, d_x beta_0 + d_y beta_0 p)
 *   alpha_k, k >= 1:      (alpha_k p^k,
 *                          -(d_x alpha_k p^(k+1) + d_y alpha_k p^(k+2)) / (k+1))
 * with alpha_k for k >= 1 ranging over all of C{x, y}, constants included:
 * alpha = c p^k is an admissible transformation and contributes (c p^k, 0).
 */
void push_contact_linearization(Workspace& w, std::vector<DenseJet>& out) {
    /*
     * The second slot of an alpha generator can dip below the pullback order
     * by at most max(ox - op, oy - 2op, 0); a beta generator by at most
     * max(ox, oy - op). Enumerating up to n plus those deficits is exhaustive.
     */
    int64_t alpha_slack = 0, beta_slack = 0;
    for (int i = 0; i < w.branches; ++i) {
        if (w.op[i] < kInfOrder) {
            alpha_slack = std::max({alpha_slack, w.ox[i] - w.op[i], w.oy[i] - 2 * w.op[i]});
            beta_slack = std::max(beta_slack, w.oy[i] - w.op[i]);
        }
        if (w.ox[i] < kInfOrder)
            beta_slack = std::max(beta_slack, w.ox[i]);
    }
    const int64_t lim_alpha = w.n + alpha_slack;
    const int64_t lim_beta = w.n + beta_slack;
    const int64_t lim = std::max(lim_alpha, lim_beta);

    for (int a = 0; w.pull_order(a, 0) <= lim; ++a) {
        for (int b = 0; w.pull_order(a, b) <= lim; ++b) {
            /* hoisted per-branch data: the pullback of x^a y^b, its gradient
               parts d_x p and d_y p^2, updated by one p-multiplication per k */
            std::vector<DSeries> base(w.branches), gx(w.branches), gy(w.branches);
            for (int i = 0; i < w.branches; ++i) {
                base[i] = w.mono(i, a, b);
                gx[i].assign(w.n + 1, Rat(0));
                gy[i].assign(w.n + 1, Rat(0));
                if (a > 0)
                    dacc(gx[i], dmul(w.mono(i, a - 1, b), w.p[i]), Rat(a));
                if (b > 0)
                    dacc(gy[i], dmul(dmul(w.mono(i, a, b - 1), w.p[i]), w.p[i]), Rat(b));
            }

            if (a + b >= 1 && w.pull_order(a, b) <= lim_alpha) { /* alpha_0 in (x, y) */
                DenseJet v = zero_jet(w);
                bool nonzero = false;
                for (int i = 0; i < w.branches; ++i) {
                    v.slot1[i] = base[i];
                    DSeries s2(w.n + 1, Rat(0));
                    dacc(s2, gx[i], Rat(-1));
                    dacc(s2, gy[i], Rat(-1));
                    v.slot2[i] = std::move(s2);
                    nonzero = nonzero || !dzero(v.slot1[i]) || !dzero(v.slot2[i]);
                }
                if (nonzero)
                    out.push_back(std::move(v));
            }
            if ((a >= 2 || b >= 1) && w.pull_order(a, b) <= lim_beta) { /* beta_0 */
                DenseJet v = zero_jet(w);
                bool nonzero = false;
                for (int i = 0; i < w.branches; ++i) {
                    /* d_x(x^a y^b) + d_y(x^a y^b) p */
                    DSeries s2(w.n + 1, Rat(0));
                    if (a > 0)
                        dacc(s2, w.mono(i, a - 1, b), Rat(a));
                    if (b > 0)
                        dacc(s2, dmul(w.mono(i, a, b - 1), w.p[i]), Rat(b));
                    v.slot2[i] = std::move(s2);
                    nonzero = nonzero || !dzero(v.slot2[i]);
                }
                if (nonzero)
                    out.push_back(std::move(v));
            }
            /* alpha_k p^k for k >= 1, alpha_k any monomial of C{x, y} */
            for (int k = 1; w.pull_order(a, b, k) <= lim_alpha; ++k) {
                DenseJet v = zero_jet(w);
                bool nonzero = false;
                for (int i = 0; i < w.branches; ++i) {
                    base[i] = dmul(base[i], w.p[i]);
                    gx[i] = dmul(gx[i], w.p[i]);
                    gy[i] = dmul(gy[i], w.p[i]);
                    v.slot1[i] = base[i];
                    DSeries s2(w.n + 1, Rat(0));
                    dacc(s2, gx[i], rat(-1, k + 1));
                    dacc(s2, gy[i], rat(-1, k + 1));
                    v.slot2[i] = std::move(s2);
                    nonzero = nonzero || !dzero(v.slot1[i]) || !dzero(v.slot2[i]);
                }
                if (nonzero)
                    out.push_back(std::move(v));
            }
        }
    }
}

std::vector<DenseJet> dense_generators(Workspace& w) {
    std::vector<DenseJet> out;
    push_parametrization_multiples(w, out);
    switch (w.preset) {
        case ModulePreset::plain:
        case ModulePreset::equimultiple:
            push_ideal_diagonals(w, 0, false, out);
            push_ideal_diagonals(w, 1, false, out);
            break;
        case ModulePreset::arrow:
            push_ideal_diagonals(w, 0, false, out);
            push_ideal_diagonals(w, 1, true, out);
            break;
        case ModulePreset::hat:
            push_ideal_diagonals(w, 0, false, out);
            push_ideal_diagonals(w, 1, true, out);
            push_p_power_relations(w, out);
            break;
        case ModulePreset::fake:
            push_contact_linearization(w, out);
            break;
    }
    return out;
}

std::vector<SlotFloors> floors_of(const Workspace& w) {
    std::vector<SlotFloors> floors;
    for (int i = 0; i < w.branches; ++i) {
        switch (w.preset) {
            case ModulePreset::plain:
            case ModulePreset::fake:
                floors.push_back({1, 1});
                break;
            case ModulePreset::equimultiple:
                floors.push_back({w.mult[i], w.mult[i]});
                break;
            case ModulePreset::arrow:
            case ModulePreset::hat:
                floors.push_back({w.mult[i], 2 * w.mult[i]});
                break;
        }
    }
    return floors;
}

int heuristic_start(const ModuleInput& in, int window) {
    int64_t m = 1;
    auto consider = [&](const TruncSeries& s) {
        SeriesOrder o = s.order();
        if (o.finite)
            m = std::max(m, static_cast<int64_t>(o.value));
    };
    if (in.preset == ModulePreset::fake) {
        for (const auto& b : in.lifted.branches) {
            consider(b.x);
            consider(b.y);
            consider(b.p);
        }
    } else {
        for (size_t i = 0; i < in.plane.branches.size(); ++i) {
            consider(in.plane.branches[i].x);
            consider(in.plane.branches[i].y);
            if (in.preset == ModulePreset::hat)
                consider(in.lifted.branches[i].p);
        }
    }
    /* the saturation window check retries with doubled order if this is shy */
    return static_cast<int>(m) + 2 * window + 2;
}

int saturation_window(const ModuleInput& in) {
    int window = 2;
    if (in.preset == ModulePreset::fake) {
        for (const auto& b : in.lifted.branches)
            window = std::max(window, 2 * branch_multiplicity(FakeBranch{b.x, b.p}));
    } else {
        for (const auto& b : in.plane.branches)
            window = std::max(window, 2 * branch_multiplicity(b));
    }
    return window;
}

}  // namespace

const char* preset_name(ModulePreset p) {
    switch (p) {
        case ModulePreset::plain: return "plain";
        case ModulePreset::equimultiple: return "em";
        case ModulePreset::arrow: return "arrow";
        case ModulePreset::hat: return "hat";
        case ModulePreset::fake: return "fake";
    }
    return "?";
}

ModulePreset preset_from_name(const std::string& name) {
    if (name == "plain")
        return ModulePreset::plain;
    if (name == "em" || name == "equimultiple")
        return ModulePreset::equimultiple;
    if (name == "arrow")
        return ModulePreset::arrow;
    if (name == "hat")
        return ModulePreset::hat;
    if (name == "fake")
        return ModulePreset::fake;
    fail(Errc::parse_error, "unknown module preset '" + name + "'");
}

ModuleInput make_module_input(ModulePreset preset, const PlaneGerm& germ) {
    if (preset == ModulePreset::fake)
        fail(Errc::domain_error, "fake module preset expects a Legendrian germ");
    validate_plane_germ(germ);
    for (const auto& b : germ.branches)
        if (b.x.arity() != 0 || b.y.arity() != 0)
            fail(Errc::domain_error, "module computation expects a parameter-free germ");
    ModuleInput in;
    in.preset = preset;
    in.plane = germ;
    if (preset == ModulePreset::arrow || preset == ModulePreset::hat) {
        for (const auto& b : germ.branches) {
            SeriesOrder ox = b.x.order(), oy = b.y.order();
            if (!(oy >= SeriesOrder::at(2 * ox.value)))
                fail(Errc::invariant_violation,
                     "arrow/hat module: branch not in generic position (needs ord y >= 2 ord x)");
        }
    }
    if (preset == ModulePreset::hat)
        in.lifted = conormal(germ);
    return in;
}

ModuleInput make_module_input(ModulePreset preset, const LegendrianGerm& germ) {
    if (preset != ModulePreset::fake)
        fail(Errc::domain_error,
             std::string(preset_name(preset)) + " module preset expects a plane germ");
    validate_legendrian_germ(germ);
    for (const auto& b : germ.branches)
        if (b.x.arity() != 0)
            fail(Errc::domain_error, "module computation expects a parameter-free germ");
    ModuleInput in;
    in.preset = preset;
    in.lifted = germ;
    return in;
}

std::vector<SlotFloors> numerator_floors(const ModuleInput& in) {
    std::vector<SlotFloors> floors;
    auto floor_for = [&](int mult) -> SlotFloors {
        switch (in.preset) {
            case ModulePreset::plain:
            case ModulePreset::fake: return {1, 1};
            case ModulePreset::equimultiple: return {mult, mult};
            default: return {mult, 2 * mult};
        }
    };
    if (in.preset == ModulePreset::fake) {
        for (const auto& b : in.lifted.branches)
            floors.push_back(floor_for(branch_multiplicity(FakeBranch{b.x, b.p})));
    } else {
        for (const auto& b : in.plane.branches)
            floors.push_back(floor_for(branch_multiplicity(b)));
    }
    return floors;
}

std::vector<VectorJet> denominator_generators(const ModuleInput& in, int n) {
    Workspace w = make_workspace(in, n);
    std::vector<DenseJet> dense = dense_generators(w);
    std::vector<VectorJet> out;
    out.reserve(dense.size());
    for (const auto& d : dense) {
        VectorJet v;
        for (int i = 0; i < w.branches; ++i) {
            TruncSeries s1(0, n), s2(0, n);
            for (int e = 0; e <= n; ++e) {
                if (d.slot1[i][e] != 0)
                    s1 += TruncSeries::monomial(0, n, e, d.slot1[i][e]);
                if (d.slot2[i][e] != 0)
                    s2 += TruncSeries::monomial(0, n, e, d.slot2[i][e]);
            }
            v.slot1.push_back(std::move(s1));
            v.slot2.push_back(std::move(s2));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Rat> QuotientSpace::coordinates(const VectorJet& v) const {
    std::vector<Rat> row(coords.size(), Rat(0));
    auto scan = [&](const std::vector<TruncSeries>& slots, int slot) {
        for (size_t i = 0; i < slots.size(); ++i) {
            for (const auto& [e, c] : slots[i].coeffs()) {
                if (e > trunc)
                    break;
                JetCoord jc{static_cast<int>(i), slot, e};
                auto it = coord_index.find(jc);
                if (it == coord_index.end())
                    fail(Errc::internal_error,
                         "QuotientSpace: vector has a term below the numerator floor (branch " +
                             std::to_string(i + 1) + ", slot " + std::to_string(slot + 1) +
                             ", t^" + std::to_string(e) + ")");
                row[it->second] = c.as_rat();
            }
        }
    };
    scan(v.slot1, 0);
    scan(v.slot2, 1);
    return row;
}

namespace {

VectorJet clip_jet(const VectorJet& v, int n) {
    VectorJet r;
    for (const auto& s : v.slot1)
        r.slot1.push_back(s.with_trunc(std::min(n, s.trunc())));
    for (const auto& s : v.slot2)
        r.slot2.push_back(s.with_trunc(std::min(n, s.trunc())));
    return r;
}

}  // namespace

bool QuotientSpace::in_denominator_span(const VectorJet& v) const {
    return span.in_span(coordinates(clip_jet(v, trunc)));
}

int QuotientSpace::rank_with(const std::vector<VectorJet>& extra) const {
    std::vector<std::vector<Rat>> rows = span.rows;
    for (const auto& v : extra)
        rows.push_back(coordinates(clip_jet(v, trunc)));
    return rref(rows, static_cast<int>(coords.size())).rank;
}

namespace {

/*
 * Assemble and echelonize the quotient at order n from a generating set
 * enumerated at order >= n: truncating a generating set still spans the
 * truncated denominator, so one enumeration serves several orders.
 */
std::pair<ModuleBasis, QuotientSpace> quotient_from_generators(
    ModulePreset preset, const std::vector<SlotFloors>& floors, const std::vector<DenseJet>& gens,
    int n, int window, RrefMode mode) {
    QuotientSpace q;
    q.trunc = n;
    q.floors = floors;
    for (size_t i = 0; i < floors.size(); ++i)
        for (int slot = 0; slot < 2; ++slot)
            for (int e = slot == 0 ? floors[i].slot1 : floors[i].slot2; e <= n; ++e)
                q.coords.push_back({static_cast<int>(i), slot, e});
    std::sort(q.coords.begin(), q.coords.end());
    for (size_t c = 0; c < q.coords.size(); ++c)
        q.coord_index[q.coords[c]] = static_cast<int>(c);

    const int branches = static_cast<int>(floors.size());
    std::vector<std::vector<Rat>> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) {
        std::vector<Rat> row(q.coords.size(), Rat(0));
        bool nonzero = false;
        for (int i = 0; i < branches; ++i)
            for (int e = 0; e <= n; ++e) {
                if (g.slot1[i][e] != 0) {
                    auto it = q.coord_index.find({i, 0, e});
                    if (it == q.coord_index.end())
                        fail(Errc::internal_error,
                             "module generator has a term below the numerator floor");
                    row[it->second] = g.slot1[i][e];
                    nonzero = true;
                }
                if (g.slot2[i][e] != 0) {
                    auto it = q.coord_index.find({i, 1, e});
                    if (it == q.coord_index.end())
                        fail(Errc::internal_error,
                             "module generator has a term below the numerator floor");
                    row[it->second] = g.slot2[i][e];
                    nonzero = true;
                }
            }
        if (nonzero)
            rows.push_back(std::move(row));
    }
    q.span = rref(rows, static_cast<int>(q.coords.size()), mode);

    ModuleBasis basis;
    basis.preset = preset;
    basis.trunc_order = n;
    basis.branch_count = static_cast<int>(floors.size());
    basis.floors = floors;
    basis.dimension = static_cast<int>(q.coords.size()) - q.span.rank;

    int n_sat = 0;
    for (size_t c = 0; c < q.coords.size(); ++c) {
        if (!q.span.unit_vector_in_span(static_cast<int>(c)))
            n_sat = std::max(n_sat, q.coords[c].exp);
        if (!q.span.is_pivot(static_cast<int>(c)))
            basis.basis.push_back(q.coords[c]);
    }
    basis.saturation_order = n_sat;
    if (n - n_sat < window)
        fail(Errc::not_saturated,
             "quotient_basis: no saturation window of width " + std::to_string(window) +
                 " below truncation order " + std::to_string(n) + " (last unabsorbed jet at t^" +
                 std::to_string(n_sat) + "); raise the truncation order");

    /* family order: slot-major, then branch, then exponent */
    std::sort(basis.basis.begin(), basis.basis.end(), [](const JetCoord& a, const JetCoord& b) {
        if (a.slot != b.slot)
            return a.slot < b.slot;
        if (a.branch != b.branch)
            return a.branch < b.branch;
        return a.exp < b.exp;
    });
    return {basis, q};
}

}  // namespace

std::pair<ModuleBasis, QuotientSpace> quotient_basis(const ModuleInput& in, int n, int window,
                                                     RrefMode mode) {
    Workspace w = make_workspace(in, n);
    return quotient_from_generators(in.preset, floors_of(w), dense_generators(w), n, window, mode);
}

std::pair<ModuleBasis, QuotientSpace> compute_module_space(const ModuleInput& in,
                                                           const ModuleOptions& opts) {
    const int window = saturation_window(in);
    int n = opts.start_order > 0 ? opts.start_order : heuristic_start(in, window);
    n = std::max(n, window + 2);

    std::string last_report = "no truncation order attempted";
    while (n <= opts.max_order) {
        try {
            /* one generator enumeration at n+2 serves all three orders */
            Workspace w = make_workspace(in, n + 2);
            std::vector<SlotFloors> floors = floors_of(w);
            std::vector<DenseJet> gens = dense_generators(w);
            auto r0 = quotient_from_generators(in.preset, floors, gens, n, window, opts.rref_mode);
            auto r1 =
                quotient_from_generators(in.preset, floors, gens, n + 1, window, opts.rref_mode);
            auto r2 =
                quotient_from_generators(in.preset, floors, gens, n + 2, window, opts.rref_mode);
            if (r0.first.dimension == r1.first.dimension &&
                r0.first.dimension == r2.first.dimension && r0.first.basis == r1.first.basis &&
                r0.first.basis == r2.first.basis)
                return r0;
            last_report = "dimension still moving at truncation order " + std::to_string(n) +
                          " (" + std::to_string(r0.first.dimension) + " -> " +
                          std::to_string(r2.first.dimension) + ")";
        } catch (const Error& e) {
            if (e.code() != Errc::not_saturated)
                throw;
            last_report = e.what();
        }
        n *= 2;
    }
    fail(Errc::diverging, "compute_module: not stable within the truncation cap " +
                              std::to_string(opts.max_order) + "; " + last_report);
}

ModuleBasis compute_module(const ModuleInput& in, const ModuleOptions& opts) {
    return compute_module_space(in, opts).first;
}

ModuleBasis compute_module(ModulePreset preset, const PlaneGerm& germ, const ModuleOptions& opts) {
    return compute_module(make_module_input(preset, germ), opts);
}

ModuleBasis compute_module(ModulePreset preset, const LegendrianGerm& germ,
                           const ModuleOptions& opts) {
    return compute_module(make_module_input(preset, germ), opts);
}

VectorJet ModuleBasis::basis_vector(int i, int arity) const {
    const JetCoord& c = basis.at(i);
    VectorJet v;
    v.slot1.assign(branch_count, TruncSeries(arity, trunc_order));
    v.slot2.assign(branch_count, TruncSeries(arity, trunc_order));
    auto& slot = c.slot == 0 ? v.slot1 : v.slot2;
    slot[c.branch] = TruncSeries::monomial(arity, trunc_order, c.exp, Rat(1));
    return v;
}

DeformationFamily emit_family(const ModuleBasis& basis, const ModuleInput& in) {
    const int params = basis.dimension;
    const bool fake = in.preset == ModulePreset::fake;
    const size_t branch_count =
        fake ? in.lifted.branches.size() : in.plane.branches.size();
    if (static_cast<int>(branch_count) != basis.branch_count)
        fail(Errc::domain_error, "emit_family: basis does not match the germ");

    DeformationFamily f;
    f.kind = fake ? FamilyKind::fake : FamilyKind::plane;
    f.param_count = params;
    for (int i = 0; i < basis.branch_count; ++i) {
        const TruncSeries& gx = fake ? in.lifted.branches[i].x : in.plane.branches[i].x;
        const TruncSeries& g2 = fake ? in.lifted.branches[i].p : in.plane.branches[i].y;
        TruncSeries first = gx.embedded(params);
        TruncSeries second = g2.embedded(params);
        for (int j = 0; j < params; ++j) {
            const JetCoord& c = basis.basis[j];
            if (c.branch != i)
                continue;
            TruncSeries& target = c.slot == 0 ? first : second;
            target += TruncSeries::monomial(params, target.trunc(), c.exp,
                                            ParamPoly::variable(params, j));
        }
        FamilyBranch b;
        b.x = first;
        if (fake) {
            b.p = second;
            b.y = TruncSeries(params, first.trunc());
        } else {
            b.y = second;
            b.p = TruncSeries(params, first.trunc());
        }
        f.branches.push_back(std::move(b));
    }
    return f;
}

DeformationFamily emit_versal_family(const ModuleBasis& basis, const ModuleInput& in) {
    DeformationFamily base = emit_family(basis, in);
    switch (in.preset) {
        case ModulePreset::hat:
            return family_conormal(base);
        case ModulePreset::fake:
            return family_fake_conormal(base);
        default:
            return base;
    }
}

}  // namespace legdef

#include "legdef/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace legdef {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    fail(Errc::parse_error, path + ": " + msg);
}

Json int_json(const BigInt& v) {
    if (v.fits_slong_p())
        return Json(static_cast<int64_t>(v.get_si()));
    return Json(v.get_str());
}

BigInt int_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer())
        return BigInt(static_cast<long>(j.get<int64_t>()));
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            bad(path, "bad integer literal '" + j.get<std::string>() + "'");
        }
    }
    if (j.is_number_float())
        bad(path, "floating point numbers are not permitted");
    bad(path, "expected an integer (number or decimal string)");
}

int small_int(const Json& j, const std::string& path, int lo, int hi) {
    if (!j.is_number_integer())
        bad(path, "expected a small integer");
    int64_t v = j.get<int64_t>();
    if (v < lo || v > hi)
        bad(path, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

}  // namespace

Json rat_json(const Rat& q) { return Json::array({int_json(q.get_num()), int_json(q.get_den())}); }

Rat rat_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        bad(path, "expected a rational [numerator, denominator]");
    BigInt num = int_from_json(j[0], path + "[0]");
    BigInt den = int_from_json(j[1], path + "[1]");
    if (den == 0)
        bad(path, "denominator is zero");
    return rat(num, den);
}

Json param_poly_json(const ParamPoly& p) {
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json ev = Json::array();
        for (uint32_t k : e)
            ev.push_back(k);
        out.push_back(Json::array({ev, rat_json(c)}));
    }
    return out;
}

namespace {

ParamPoly param_poly_from_json(const Json& j, int arity, const std::string& path) {
    if (!j.is_array())
        bad(path, "expected a coefficient polynomial [[exponents, [num, den]], ...]");
    ParamPoly p(arity);
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string tp = path + "[" + std::to_string(i) + "]";
        const Json& t = j[i];
        if (!t.is_array() || t.size() != 2 || !t[0].is_array())
            bad(tp, "expected [exponent-vector, [num, den]]");
        if (static_cast<int>(t[0].size()) != arity)
            bad(tp, "exponent vector length != declared parameter count");
        ParamExp e(arity);
        for (int k = 0; k < arity; ++k)
            e[k] = static_cast<uint32_t>(small_int(t[0][k], tp, 0, 1 << 20));
        p += ParamPoly::monomial(e, rat_from_json(t[1], tp));
    }
    return p;
}

TruncSeries series_from_json(const Json& j, int arity, int trunc, const std::string& path) {
    if (!j.is_array())
        bad(path, "expected a list of series terms");
    TruncSeries s(arity, trunc);
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string tp = path + "[" + std::to_string(i) + "]";
        const Json& t = j[i];
        int exp;
        ParamPoly coeff(arity);
        if (arity == 0) {
            if (!t.is_array() || t.size() != 3)
                bad(tp, "expected [num, den, exp]");
            BigInt num = int_from_json(t[0], tp + "[0]");
            BigInt den = int_from_json(t[1], tp + "[1]");
            if (den == 0)
                bad(tp, "denominator is zero");
            exp = small_int(t[2], tp + "[2]", 0, 1 << 20);
            coeff = ParamPoly::constant(0, rat(num, den));
        } else {
            if (!t.is_array() || t.size() != 2)
                bad(tp, "expected [coefficient, exp]");
            coeff = param_poly_from_json(t[0], arity, tp + "[0]");
            exp = small_int(t[1], tp + "[1]", 0, 1 << 20);
        }
        if (exp < 1)
            bad(tp, "coordinate series need strictly positive exponents");
        if (exp <= trunc && !coeff.is_zero())
            s += TruncSeries::monomial(arity, trunc, exp, coeff);
    }
    return s;
}

Json series_terms_json_impl(const TruncSeries& s) {
    Json out = Json::array();
    for (const auto& [e, c] : s.coeffs()) {
        if (s.arity() == 0) {
            Rat q = c.as_rat();
            out.push_back(Json::array({int_json(q.get_num()), int_json(q.get_den()), e}));
        } else {
            out.push_back(Json::array({param_poly_json(c), e}));
        }
    }
    return out;
}

Json branches_json(const std::vector<std::vector<const TruncSeries*>>& rows,
                   const std::vector<std::string>& keys) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json b = Json::object();
        for (size_t k = 0; k < keys.size(); ++k)
            b[keys[k]] = series_terms_json_impl(*row[k]);
        arr.push_back(b);
    }
    return arr;
}

int max_exponent(const Json& branches) {
    int m = 1;
    for (const auto& b : branches)
        for (const auto& [key, terms] : b.items()) {
            (void)key;
            if (!terms.is_array())
                continue;
            for (const auto& t : terms)
                if (t.is_array() && !t.empty() && t.back().is_number_integer())
                    m = std::max(m, static_cast<int>(t.back().get<int64_t>()));
        }
    return m;
}

/* A multiple cover of a coordinate axis is not a curve branch. */
void reject_degenerate_axis(const std::vector<const TruncSeries*>& coords,
                            const std::string& path) {
    int nonzero = 0;
    SeriesOrder only;
    for (const auto* s : coords)
        if (!s->is_zero()) {
            ++nonzero;
            only = s->order();
        }
    if (nonzero == 1 && only.finite && only.value != 1)
        fail(Errc::invariant_violation,
             path + ": a single nonvanishing coordinate must have order 1 "
                    "(zero coordinates are reserved for smooth axis germs)");
}

}  // namespace

Json series_terms_json(const TruncSeries& s) { return series_terms_json_impl(s); }

Json germ_document(const PlaneGerm& g) {
    Json doc = Json::object();
    doc["coordinate_system"] = "plane";
    std::vector<std::vector<const TruncSeries*>> rows;
    int trunc = 0;
    for (const auto& b : g.branches) {
        rows.push_back({&b.x, &b.y});
        trunc = std::max(trunc, b.x.trunc());
    }
    doc["branches"] = branches_json(rows, {"x", "y"});
    doc["trunc"] = trunc;
    return doc;
}

Json germ_document(const LegendrianGerm& g) {
    Json doc = Json::object();
    doc["coordinate_system"] = "legendrian";
    std::vector<std::vector<const TruncSeries*>> rows;
    int trunc = 0;
    for (const auto& b : g.branches) {
        rows.push_back({&b.x, &b.y, &b.p});
        trunc = std::max(trunc, b.x.trunc());
    }
    doc["branches"] = branches_json(rows, {"x", "y", "p"});
    doc["trunc"] = trunc;
    return doc;
}

Json germ_document(const FakeGerm& g) {
    Json doc = Json::object();
    doc["coordinate_system"] = "fake";
    std::vector<std::vector<const TruncSeries*>> rows;
    int trunc = 0;
    for (const auto& b : g.branches) {
        rows.push_back({&b.x, &b.p});
        trunc = std::max(trunc, b.x.trunc());
    }
    doc["branches"] = branches_json(rows, {"x", "p"});
    doc["trunc"] = trunc;
    return doc;
}

Json family_document(const DeformationFamily& f) {
    Json doc;
    std::vector<std::vector<const TruncSeries*>> rows;
    std::vector<std::string> keys;
    int trunc = 0;
    switch (f.kind) {
        case FamilyKind::plane: doc["coordinate_system"] = "plane"; keys = {"x", "y"}; break;
        case FamilyKind::legendrian:
            doc["coordinate_system"] = "legendrian";
            keys = {"x", "y", "p"};
            break;
        case FamilyKind::fake: doc["coordinate_system"] = "fake"; keys = {"x", "p"}; break;
    }
    for (const auto& b : f.branches) {
        std::vector<const TruncSeries*> row;
        for (const auto& k : keys)
            row.push_back(k == "x" ? &b.x : k == "y" ? &b.y : &b.p);
        rows.push_back(row);
        trunc = std::max(trunc, b.x.trunc());
    }
    doc["branches"] = branches_json(rows, keys);
    Json params = Json::array();
    for (int j = 1; j <= f.param_count; ++j)
        params.push_back("s" + std::to_string(j));
    doc["params"] = params;
    doc["trunc"] = trunc;
    return doc;
}

ParsedCurve parse_curve_document(const Json& doc, int trunc_override, int min_trunc) {
    if (!doc.is_object())
        bad("$", "document must be a JSON object");
    if (!doc.contains("coordinate_system") || !doc["coordinate_system"].is_string())
        bad("$.coordinate_system", "missing or not a string");
    const std::string cs = doc["coordinate_system"].get<std::string>();
    std::vector<std::string> keys;
    if (cs == "plane")
        keys = {"x", "y"};
    else if (cs == "legendrian")
        keys = {"x", "y", "p"};
    else if (cs == "fake")
        keys = {"x", "p"};
    else
        bad("$.coordinate_system", "expected plane, legendrian or fake");

    int arity = 0;
    if (doc.contains("params")) {
        if (!doc["params"].is_array())
            bad("$.params", "expected a list of parameter names");
        std::set<std::string> seen;
        for (const auto& p : doc["params"]) {
            if (!p.is_string())
                bad("$.params", "parameter names must be strings");
            if (!seen.insert(p.get<std::string>()).second)
                bad("$.params", "duplicate parameter name '" + p.get<std::string>() + "'");
        }
        arity = static_cast<int>(doc["params"].size());
    }

    if (!doc.contains("branches") || !doc["branches"].is_array() || doc["branches"].empty())
        bad("$.branches", "missing, not a list, or empty");

    int trunc = trunc_override;
    if (trunc <= 0) {
        int doc_trunc = 0;
        if (doc.contains("trunc"))
            doc_trunc = small_int(doc["trunc"], "$.trunc", 1, 1 << 16);
        trunc = doc_trunc > 0 ? doc_trunc : 2 * max_exponent(doc["branches"]) + 16;
        trunc = std::max(trunc, min_trunc);
    }

    std::vector<std::vector<TruncSeries>> branches;
    for (size_t i = 0; i < doc["branches"].size(); ++i) {
        const std::string bp = "$.branches[" + std::to_string(i) + "]";
        const Json& b = doc["branches"][i];
        if (!b.is_object())
            bad(bp, "expected an object with coordinate keys");
        for (const auto& [key, val] : b.items()) {
            (void)val;
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                bad(bp + "." + key, "unexpected coordinate for system '" + cs + "'");
        }
        std::vector<TruncSeries> row;
        for (const auto& k : keys) {
            if (!b.contains(k))
                row.push_back(TruncSeries(arity, trunc));
            else
                row.push_back(series_from_json(b[k], arity, trunc, bp + "." + k));
        }
        std::vector<const TruncSeries*> ptrs;
        for (const auto& s : row)
            ptrs.push_back(&s);
        reject_degenerate_axis(ptrs, bp);
        branches.push_back(std::move(row));
    }

    if (arity > 0) {
        DeformationFamily f;
        f.kind = cs == "plane" ? FamilyKind::plane
                               : cs == "legendrian" ? FamilyKind::legendrian : FamilyKind::fake;
        f.param_count = arity;
        for (auto& row : branches) {
            FamilyBranch fb;
            fb.x = row[0];
            if (cs == "plane") {
                fb.y = row[1];
                fb.p = TruncSeries(arity, trunc);
            } else if (cs == "legendrian") {
                fb.y = row[1];
                fb.p = row[2];
            } else {
                fb.p = row[1];
                fb.y = TruncSeries(arity, trunc);
            }
            f.branches.push_back(std::move(fb));
        }
        validate_family(f);
        return f;
    }

    if (cs == "plane") {
        PlaneGerm g;
        for (auto& row : branches)
            g.branches.push_back({row[0], row[1]});
        validate_plane_germ(g);
        return g;
    }
    if (cs == "legendrian") {
        LegendrianGerm g;
        for (auto& row : branches)
            g.branches.push_back({row[0], row[1], row[2]});
        validate_legendrian_germ(g);
        return g;
    }
    FakeGerm g;
    for (auto& row : branches)
        g.branches.push_back({row[0], row[1]});
    validate_fake_germ(g);
    return g;
}

ParsedCurve parse_curve_file(const std::string& path, int trunc_override, int min_trunc) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::parse_error, path + ": cannot open file");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(Errc::parse_error, path + ": " + e.what());
    }
    return parse_curve_document(doc, trunc_override, min_trunc);
}

}  // namespace legdef

#include "legdef/cli_runner.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "legdef/contact.hpp"
#include "legdef/json_io.hpp"
#include "legdef/modules.hpp"

namespace legdef {

namespace {

struct Ctx {
    std::string format = "text";
    int trunc = 0;
    std::ostringstream out;

    bool json() const { return format == "json"; }
    void emit(const Json& j) { out << j.dump(2) << "\n"; }
};

std::string series_text(const TruncSeries& s, int branch, int branches) {
    std::string var = branches > 1 ? "t" + std::to_string(branch + 1) : "t";
    return s.str(var);
}

void print_branches_text(Ctx& ctx, const std::vector<std::vector<const TruncSeries*>>& rows,
                         const std::vector<std::string>& keys) {
    for (size_t i = 0; i < rows.size(); ++i) {
        ctx.out << "branch " << i + 1 << ":";
        for (size_t k = 0; k < keys.size(); ++k)
            ctx.out << (k ? ", " : " ") << keys[k] << " = "
                    << series_text(*rows[i][k], static_cast<int>(i),
                                   static_cast<int>(rows.size()));
        ctx.out << "\n";
    }
}

void output_germ(Ctx& ctx, const ParsedCurve& value) {
    if (ctx.json()) {
        std::visit([&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DeformationFamily>)
                ctx.emit(family_document(v));
            else
                ctx.emit(germ_document(v));
        }, value);
        return;
    }
    std::visit([&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        std::vector<std::vector<const TruncSeries*>> rows;
        std::vector<std::string> keys;
        if constexpr (std::is_same_v<T, PlaneGerm>) {
            keys = {"x", "y"};
            for (const auto& b : v.branches)
                rows.push_back({&b.x, &b.y});
        } else if constexpr (std::is_same_v<T, LegendrianGerm>) {
            keys = {"x", "y", "p"};
            for (const auto& b : v.branches)
                rows.push_back({&b.x, &b.y, &b.p});
        } else if constexpr (std::is_same_v<T, FakeGerm>) {
            keys = {"x", "p"};
            for (const auto& b : v.branches)
                rows.push_back({&b.x, &b.p});
        } else {
            keys = v.kind == FamilyKind::plane
                       ? std::vector<std::string>{"x", "y"}
                       : v.kind == FamilyKind::legendrian
                             ? std::vector<std::string>{"x", "y", "p"}
                             : std::vector<std::string>{"x", "p"};
            ctx.out << "parameters: " << v.param_count << "\n";
            for (const auto& b : v.branches) {
                std::vector<const TruncSeries*> row;
                for (const auto& k : keys)
                    row.push_back(k == "x" ? &b.x : k == "y" ? &b.y : &b.p);
                rows.push_back(row);
            }
        }
        print_branches_text(ctx, rows, keys);
    }, value);
}

void cmd_classify(Ctx& ctx, const std::string& file) {
    ParsedCurve value = parse_curve_file(file, ctx.trunc);
    auto* germ = std::get_if<PlaneGerm>(&value);
    if (!germ)
        fail(Errc::domain_error, "classify expects a parameter-free plane germ");
    Json branches = Json::array();
    for (size_t i = 0; i < germ->branches.size(); ++i) {
        const auto& b = germ->branches[i];
        PositionClass pc = position_classify(b);
        int mult = branch_multiplicity(b);
        if (ctx.json()) {
            Json jb;
            jb["case"] = position_case_name(pc.variant);
            jb["tangent_cone_is_y0"] = pc.tangent_cone_is_y0;
            jb["generic_position"] = pc.generic_position;
            jb["mult_equal"] = pc.mult_equal;
            jb["multiplicity"] = mult;
            branches.push_back(jb);
        } else {
            ctx.out << "branch " << i + 1 << ": CASE_" << position_case_name(pc.variant)
                    << ", multiplicity " << mult
                    << ", generic_position=" << (pc.generic_position ? "true" : "false")
                    << ", mult_equal=" << (pc.mult_equal ? "true" : "false") << "\n";
        }
    }
    if (ctx.json())
        ctx.emit(Json{{"branches", branches}});
}

void cmd_conormal(Ctx& ctx, const std::string& file) {
    ParsedCurve value = parse_curve_file(file, ctx.trunc);
    if (auto* germ = std::get_if<PlaneGerm>(&value)) {
        output_germ(ctx, ParsedCurve(conormal(*germ)));
        return;
    }
    if (auto* fam = std::get_if<DeformationFamily>(&value)) {
        if (fam->kind != FamilyKind::plane)
            fail(Errc::domain_error, "conormal expects a plane germ or plane family");
        output_germ(ctx, ParsedCurve(family_conormal(*fam)));
        return;
    }
    fail(Errc::domain_error, "conormal expects a plane germ or plane family");
}

void cmd_project(Ctx& ctx, const std::string& file, bool fake) {
    ParsedCurve value = parse_curve_file(file, ctx.trunc);
    if (auto* germ = std::get_if<LegendrianGerm>(&value)) {
        if (fake)
            output_germ(ctx, ParsedCurve(fake_projection(*germ)));
        else
            output_germ(ctx, ParsedCurve(plane_projection(*germ)));
        return;
    }
    if (auto* fam = std::get_if<DeformationFamily>(&value)) {
        if (fam->kind != FamilyKind::legendrian)
            fail(Errc::domain_error, "project expects a Legendrian germ or family");
        output_germ(ctx, ParsedCurve(fake ? family_fake_projection(*fam)
                                          : family_plane_projection(*fam)));
        return;
    }
    fail(Errc::domain_error, "project expects a Legendrian germ or family");
}

void cmd_fake_conormal(Ctx& ctx, const std::string& file) {
    ParsedCurve value = parse_curve_file(file, ctx.trunc);
    if (auto* germ = std::get_if<FakeGerm>(&value)) {
        output_germ(ctx, ParsedCurve(fake_conormal(*germ)));
        return;
    }
    if (auto* fam = std::get_if<DeformationFamily>(&value)) {
        if (fam->kind != FamilyKind::fake)
            fail(Errc::domain_error, "fake-conormal expects a fake germ or fake family");
        output_germ(ctx, ParsedCurve(family_fake_conormal(*fam)));
        return;
    }
    fail(Errc::domain_error, "fake-conormal expects a fake germ or fake family");
}

CoordPoly plane_poly_from_json(const Json& j, const std::string& path) {
    if (!j.is_array())
        fail(Errc::parse_error, path + ": expected [[ [ex, ey], [num, den] ], ...]");
    CoordPoly f(2, 0);
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& t = j[i];
        const std::string tp = path + "[" + std::to_string(i) + "]";
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 2)
            fail(Errc::parse_error, tp + ": expected [[ex, ey], [num, den]]");
        int ex = t[0][0].get<int>(), ey = t[0][1].get<int>();
        f += CoordPoly::monomial(2, {ex, ey, 0}, rat_from_json(t[1], tp));
    }
    return f;
}

Json coord_poly_json(const CoordPoly& f) {
    Json out = Json::array();
    for (const auto& [e, c] : f.terms())
        out.push_back(Json::array({Json::array({e[0], e[1], e[2]}), rat_json(c.as_rat())}));
    return out;
}

void cmd_transform(Ctx& ctx, const std::string& file, const std::vector<std::string>& map_spec,
                   int degree) {
    ParsedCurve value = parse_curve_file(file, ctx.trunc);
    auto* germ = std::get_if<LegendrianGerm>(&value);
    if (!germ)
        fail(Errc::domain_error, "transform expects a parameter-free Legendrian germ");

    int max_trunc = 0;
    int min_mult = INT32_MAX;
    for (const auto& b : germ->branches) {
        max_trunc = std::max(max_trunc, b.x.trunc());
        min_mult = std::min(min_mult, branch_multiplicity(b));
    }

    ContactMap chi;
    if (map_spec.empty())
        fail(Errc::parse_error, "transform: --map is required");
    if (map_spec[0] == "legendre") {
        chi = legendre_map();
    } else if (map_spec[0] == "paraboloidal") {
        if (map_spec.size() != 5)
            fail(Errc::parse_error, "transform: --map paraboloidal needs four rationals a b c d");
        chi = make_paraboloidal(rat_parse(map_spec[1]), rat_parse(map_spec[2]),
                                rat_parse(map_spec[3]), rat_parse(map_spec[4]));
    } else if (map_spec[0] == "lift") {
        if (map_spec.size() != 2)
            fail(Errc::parse_error, "transform: --map lift needs a file with {\"a\":…, \"b\":…}");
        std::ifstream in(map_spec[1]);
        if (!in)
            fail(Errc::parse_error, map_spec[1] + ": cannot open file");
        Json doc = Json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("a") || !doc.contains("b"))
            fail(Errc::parse_error, map_spec[1] + ": expected {\"a\": poly, \"b\": poly}");
        if (degree <= 0)
            degree = max_trunc / std::max(1, min_mult) + 3;
        chi = lift_plane_automorphism(plane_poly_from_json(doc["a"], "$.a"),
                                      plane_poly_from_json(doc["b"], "$.b"), degree);
    } else {
        fail(Errc::parse_error, "transform: --map must be paraboloidal, legendre or lift");
    }

    int check_degree = chi.exact() ? std::max(2, chi.x_out.total_degree() +
                                                     chi.y_out.total_degree() + 2)
                                   : chi.degree - 1;
    CoordPoly factor = contact_check(chi, check_degree);
    LegendrianGerm image = apply_contact_map(chi, *germ);

    if (ctx.json()) {
        Json j;
        j["contact_factor"] = coord_poly_json(factor);
        j["germ"] = germ_document(image);
        ctx.emit(j);
    } else {
        ctx.out << "contact factor: " << factor.str() << "\n";
        output_germ(ctx, ParsedCurve(image));
    }
}

ModuleInput module_input_for(Ctx& ctx, const std::string& file, const std::string& preset_token,
                             int max_order) {
    ModulePreset preset = preset_from_name(preset_token);
    ParsedCurve value = parse_curve_file(file, ctx.trunc, max_order + 64);
    if (auto* plane = std::get_if<PlaneGerm>(&value))
        return make_module_input(preset, *plane);
    if (auto* leg = std::get_if<LegendrianGerm>(&value))
        return make_module_input(preset, *leg);
    fail(Errc::domain_error,
         "module computation expects a parameter-free plane or Legendrian germ");
}

Json basis_entry_json(const JetCoord& c, const ModuleBasis& basis, ModulePreset preset) {
    const char* slot = c.slot == 0 ? "x" : (preset == ModulePreset::fake ? "p" : "y");
    if (basis.branch_count == 1)
        return Json::array({slot, c.exp});
    return Json::array({slot, c.exp, c.branch + 1});
}

void cmd_module(Ctx& ctx, const std::string& file, const std::string& preset_token,
                int max_order) {
    ModuleInput in = module_input_for(ctx, file, preset_token, max_order);
    ModuleOptions opts;
    opts.max_order = max_order;
    ModuleBasis basis = compute_module(in, opts);

    if (ctx.json()) {
        Json j;
        j["preset"] = preset_name(basis.preset);
        j["dimension"] = basis.dimension;
        Json b = Json::array();
        for (const auto& c : basis.basis)
            b.push_back(basis_entry_json(c, basis, in.preset));
        j["basis"] = b;
        j["trunc_order"] = basis.trunc_order;
        j["saturation_order"] = basis.saturation_order;
        ctx.emit(j);
        return;
    }
    ctx.out << "preset: " << preset_name(basis.preset) << "\n";
    ctx.out << "dimension: " << basis.dimension << "\n";
    ctx.out << "basis:";
    for (const auto& c : basis.basis) {
        std::string var = basis.branch_count > 1 ? "t" + std::to_string(c.branch + 1) : "t";
        const char* slot = c.slot == 0 ? "x" : (in.preset == ModulePreset::fake ? "p" : "y");
        ctx.out << " " << var << "^" << c.exp << "*d/d" << slot;
    }
    ctx.out << "\n";
    ctx.out << "trunc_order: " << basis.trunc_order << "\n";
    ctx.out << "saturation_order: " << basis.saturation_order << "\n";
}

void cmd_family(Ctx& ctx, const std::string& file, const std::string& preset_token,
                int max_order) {
    ModuleInput in = module_input_for(ctx, file, preset_token, max_order);
    ModuleOptions opts;
    opts.max_order = max_order;
    ModuleBasis basis = compute_module(in, opts);
    DeformationFamily fam = emit_versal_family(basis, in);
    output_germ(ctx, ParsedCurve(fam));
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    Ctx ctx;

    CLI::App app{"exact computations with plane and Legendrian curve germs"};
    app.set_help_flag("--help", "print usage");
    app.fallthrough();
    app.add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--trunc", ctx.trunc, "series materialization order (0 = automatic)");
    app.require_subcommand(1);

    std::string file, preset, map_file;
    std::vector<std::string> map_spec;
    bool fake_flag = false;
    int max_order = 256, degree = 0;

    auto* classify = app.add_subcommand("classify", "per-branch position classification");
    classify->add_option("file", file)->required();

    auto* conormal_cmd = app.add_subcommand("conormal", "Legendrian lift of a plane germ/family");
    conormal_cmd->add_option("file", file)->required();

    auto* project = app.add_subcommand("project", "plane (or fake) projection");
    project->add_option("file", file)->required();
    project->add_flag("--fake", fake_flag, "drop y instead of p");

    auto* fakecon = app.add_subcommand("fake-conormal", "y = integral of p dx");
    fakecon->add_option("file", file)->required();

    auto* transform = app.add_subcommand("transform", "apply a contact transformation");
    transform->add_option("file", file)->required();
    transform->add_option("--map", map_spec, "paraboloidal a b c d | legendre | lift afile")
        ->required()
        ->expected(-1);
    transform->add_option("--degree", degree, "working degree for truncated lifts");

    auto* module_cmd = app.add_subcommand("module", "deformation module basis");
    module_cmd->add_option("file", file)->required();
    module_cmd->add_option("--preset", preset)
        ->required()
        ->check(CLI::IsMember({"plain", "em", "arrow", "hat", "fake"}));
    module_cmd->add_option("--max-order", max_order, "truncation cap");

    auto* family_cmd = app.add_subcommand("family", "emit the deformation family");
    family_cmd->add_option("file", file)->required();
    family_cmd->add_option("--preset", preset)
        ->required()
        ->check(CLI::IsMember({"plain", "em", "arrow", "hat", "fake"}));
    family_cmd->add_option("--max-order", max_order, "truncation cap");

    std::vector<const char*> argv;
    argv.push_back("legdef");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 2;
        if (ctx.format == "json")
            result.out = Json{{"error", {{"code", "UsageError"}, {"message", e.what()}}}}.dump(2) + "\n";
        else
            result.err = std::string("error[UsageError]: ") + e.what() + "\n";
        return result;
    }

    try {
        if (classify->parsed())
            cmd_classify(ctx, file);
        else if (conormal_cmd->parsed())
            cmd_conormal(ctx, file);
        else if (project->parsed())
            cmd_project(ctx, file, fake_flag);
        else if (fakecon->parsed())
            cmd_fake_conormal(ctx, file);
        else if (transform->parsed())
            cmd_transform(ctx, file, map_spec, degree);
        else if (module_cmd->parsed())
            cmd_module(ctx, file, preset, max_order);
        else if (family_cmd->parsed())
            cmd_family(ctx, file, preset, max_order);
        result.out = ctx.out.str();
    } catch (const Error& e) {
        result.exit_code = errc_exit_class(e.code());
        if (ctx.json())
            result.out =
                Json{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}}.dump(2) +
                "\n";
        else
            result.err = std::string("error[") + errc_name(e.code()) + "]: " + e.what() + "\n";
    } catch (const std::exception& e) {
        result.exit_code = 4;
        if (ctx.json())
            result.out =
                Json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}.dump(2) + "\n";
        else
            result.err = std::string("error[InternalError]: ") + e.what() + "\n";
    }
    return result;
}

}  // namespace legdef

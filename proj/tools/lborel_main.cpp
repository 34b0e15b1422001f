// Command-line surface for the equivariant L-class engine: exact
// L-polynomial tables, orientability verdicts, Borel-tower bookkeeping,
// circle-group homology tables, equivariant L-classes and certificate
// checks over the shipped catalogue.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lborel/check.hpp"
#include "lborel/tables.hpp"

using namespace lborel;

namespace {

struct GlobalOpts {
    std::string format = "md";
    std::string catalogue_root;
    std::vector<std::string> extra_catalogues;
    bool allow_shadow = false;
};

std::string resolve_root(const GlobalOpts& g) {
    if (!g.catalogue_root.empty())
        return g.catalogue_root;
    if (const char* env = std::getenv("LBOREL_CATALOGUE"))
        return env;
    return "data";
}

Catalogue load_catalogue(const GlobalOpts& g) {
    Catalogue cat = Catalogue::load(resolve_root(g));
    for (const auto& extra : g.extra_catalogues)
        cat.merge_from(extra, g.allow_shadow);
    cat.validate(); // every cross-check passes before any command runs
    return cat;
}

int run(int argc, char** argv) {
    CLI::App app{"exact equivariant L-class engine"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: md|json|csv")
        ->check(CLI::IsMember({"md", "json", "csv"}));
    app.add_option("--catalogue", g.catalogue_root,
                   "catalogue root (default: $LBOREL_CATALOGUE or ./data)");
    app.add_option("--extra-catalogue", g.extra_catalogues,
                   "additional catalogue roots merged by name");
    app.add_flag("--allow-shadow", g.allow_shadow,
                 "let merged catalogues shadow shipped entries");

    // lpoly
    auto* lpoly = app.add_subcommand("lpoly", "print L-polynomials L_0..L_j");
    int max_j = 3;
    lpoly->add_option("--max-j", max_j, "largest index")->check(CLI::NonNegativeNumber);
    lpoly->callback([&] {
        std::cout << render_lpoly(l_polynomials(max_j), parse_format(g.format));
    });

    // group orient
    auto* group = app.add_subcommand("group", "group-level queries");
    auto* orient = group->add_subcommand("orient", "bi-invariant orientability verdict");
    std::string group_name;
    orient->add_option("name", group_name, "group name")->required();
    orient->callback([&] {
        Catalogue cat = load_catalogue(g);
        OrientabilityVerdict v = check_biinvariant_orientable(*cat.group(group_name));
        if (parse_format(g.format) == OutputFormat::JsonFmt) {
            Json out{{"group", group_name}, {"orientable", v.orientable}};
            if (v.witness)
                out["witness"] = matrix_to_json(*v.witness);
            std::cout << out.dump(1) << "\n";
            return;
        }
        if (v.orientable)
            std::cout << group_name << ": bi-invariantly orientable\n";
        else
            std::cout << group_name << ": NOT bi-invariantly orientable; witness "
                      << render_matrix(*v.witness) << "\n";
    });

    // tower dims / orient
    auto* tower_cmd = app.add_subcommand("tower", "Borel-tower bookkeeping");
    auto* dims = tower_cmd->add_subcommand("dims", "dim EG_k and dim BG_k");
    auto* torient = tower_cmd->add_subcommand("orient", "stage orientability");
    std::string tower_name;
    int tower_k = 1;
    for (auto* sub : {dims, torient}) {
        sub->add_option("name", tower_name, "tower name")->required();
        sub->add_option("--k", tower_k, "stage index")->required();
    }
    dims->callback([&] {
        Catalogue cat = load_catalogue(g);
        auto [dim_eg, dim_bg] = tower_dims(*cat.tower(tower_name), tower_k);
        if (parse_format(g.format) == OutputFormat::JsonFmt)
            std::cout << Json{{"tower", tower_name},
                              {"k", tower_k},
                              {"dim_eg", dim_eg},
                              {"dim_bg", dim_bg}}
                             .dump(1)
                      << "\n";
        else
            std::cout << tower_name << " k=" << tower_k << ": dim EG_k = " << dim_eg
                      << ", dim BG_k = " << dim_bg << "\n";
    });
    torient->callback([&] {
        Catalogue cat = load_catalogue(g);
        bool ok = tower_orientable(*cat.tower(tower_name), tower_k);
        if (parse_format(g.format) == OutputFormat::JsonFmt)
            std::cout << Json{{"tower", tower_name}, {"k", tower_k}, {"orientable", ok}}.dump(1)
                      << "\n";
        else
            std::cout << tower_name << " k=" << tower_k << ": "
                      << (ok ? "orientable" : "not orientable") << "\n";
    });

    // point-homology
    auto* ph = app.add_subcommand("point-homology",
                                  "equivariant homology of the point over a tower");
    std::string ph_tower;
    int ph_jmin = -4, ph_jmax = 0;
    ph->add_option("tower", ph_tower, "tower name")->required();
    ph->add_option("--j-min", ph_jmin, "lowest equivariant degree");
    ph->add_option("--j-max", ph_jmax, "highest equivariant degree");
    ph->callback([&] {
        Catalogue cat = load_catalogue(g);
        auto table = build_point_homology_table(*cat.tower(ph_tower), ph_jmin, ph_jmax);
        std::cout << render_point_homology(table, parse_format(g.format));
    });

    // equiv-lclass
    auto* el = app.add_subcommand("equiv-lclass",
                                  "stable values of the equivariant L-class");
    std::string el_action;
    std::optional<int> el_jmin, el_jmax, el_klo, el_khi;
    el->add_option("action", el_action, "action name")->required();
    el->add_option("--j-min", el_jmin, "lowest equivariant degree");
    el->add_option("--j-max", el_jmax, "highest equivariant degree");
    el->add_option("--k-lo", el_klo, "first stage");
    el->add_option("--k-hi", el_khi, "last stage");
    el->callback([&] {
        Catalogue cat = load_catalogue(g);
        ActionPtr action = cat.action(el_action);
        int m = action->space->dimension;
        int jmax = el_jmax.value_or(m);
        int jmin = el_jmin.value_or(m - 8);
        auto [lo, hi] = default_k_range(*action, jmin);
        if (el_klo)
            lo = *el_klo;
        if (el_khi)
            hi = *el_khi;
        MultiplicativeSequence seq = MultiplicativeSequence::l_sequence();
        ResolvedAction ra = ResolvedAction::resolve(action, lo, hi);
        InverseLimitClass cls = equivariant_l_class(ra, seq);
        auto table = build_equiv_lclass_table(el_action, cls, jmin, jmax);
        std::cout << render_equiv_lclass(table, parse_format(g.format));
    });

    // check
    auto* check = app.add_subcommand("check", "run the certificate suite on an action");
    std::string check_action_name;
    std::optional<int> ck_klo, ck_khi, ck_pstage;
    std::string ck_pdual;
    check->add_option("action", check_action_name, "action name")->required();
    check->add_option("--k-lo", ck_klo, "first stage");
    check->add_option("--k-hi", ck_khi, "last stage");
    check->add_option("--perturb-stage", ck_pstage,
                      "mutate one stage before assembly (certificate must fail)");
    check->add_option("--perturb-dual", ck_pdual,
                      "dual basis element added by the mutation");
    check->callback([&] {
        Catalogue cat = load_catalogue(g);
        ActionPtr action = cat.action(check_action_name);
        auto [lo, hi] = default_k_range(*action, action->space->dimension - 8);
        if (ck_klo)
            lo = *ck_klo;
        if (ck_khi)
            hi = *ck_khi;
        std::optional<Perturbation> perturb;
        if (ck_pstage)
            perturb = Perturbation{*ck_pstage, ck_pdual.empty() ? "1" : ck_pdual};
        MultiplicativeSequence seq = MultiplicativeSequence::l_sequence();
        CheckReport report = check_action(action, lo, hi, seq, perturb);
        std::cout << report.render();
        if (!report.all_pass())
            throw EngineError(ErrorClass::Certificate, "certificate failed");
    });

    // catalogue validate
    auto* cat_cmd = app.add_subcommand("catalogue", "catalogue maintenance");
    auto* validate = cat_cmd->add_subcommand("validate", "load and cross-check everything");
    validate->callback([&] {
        Catalogue cat = load_catalogue(g);
        for (const auto& line : cat.validate())
            std::cout << line << "\n";
        std::cout << "catalogue OK: " << cat.groups.size() << " groups, "
                  << cat.spaces.size() << " spaces, " << cat.towers.size() << " towers, "
                  << cat.pairs.size() << " pairs, " << cat.actions.size() << " actions\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

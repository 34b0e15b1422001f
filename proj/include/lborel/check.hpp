#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lborel/action.hpp"
#include "lborel/catalogue.hpp"

namespace lborel {

// Optional mutation inserted before assembly: adds PD(dual_name) to one
// stage class, so a perturbed family must fail the certificate.
struct Perturbation {
    int stage = 0;
    std::string dual_name;
};

struct CheckReport {
    std::string action;
    int k_lo = 0;
    int k_hi = 0;
    struct Line {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Line> lines;

    bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass)
                return false;
        return true;
    }

    std::string render() const {
        std::ostringstream out;
        out << "check " << action << " (stages " << k_lo << ".." << k_hi << ")\n";
        for (const auto& l : lines)
            out << "  " << l.name << ": " << (l.pass ? "PASS" : "FAIL")
                << (l.detail.empty() ? "" : " (" + l.detail + ")") << "\n";
        return out.str();
    }
};

// Runs every certificate the engine knows for one action: stage
// compatibility, the vanishing bound, the top-degree law, and the route
// agreements that apply to the action's mode.
inline CheckReport check_action(const ActionPtr& action, int k_lo, int k_hi,
                                const MultiplicativeSequence& seq,
                                const std::optional<Perturbation>& perturb = std::nullopt) {
    CheckReport report;
    report.action = action->name;
    report.k_lo = k_lo;
    report.k_hi = k_hi;

    ResolvedAction ra = ResolvedAction::resolve(action, k_lo, k_hi);
    std::map<int, HomologyClass> stages;
    for (const auto& [k, st] : ra.stages())
        stages.emplace(k, stage_k_class(ra, k, seq));
    if (perturb) {
        auto it = stages.find(perturb->stage);
        if (it == stages.end())
            throw UnresolvableStage("perturbation stage k=" +
                                    std::to_string(perturb->stage) + " is out of range");
        const SpacePtr& model = it->second.space();
        if (model->kind != SpaceKind::Manifold)
            throw UnresolvableStage("perturbation requires a manifold stage model");
        it->second = it->second +
                     HomologyClass(model, GradedElement(model->ring, perturb->dual_name));
    }

    const BorelTower& tower = *action->tower;
    InverseLimitClass cls;
    try {
        cls = assemble_inverse_limit(stages, ra.links(), tower.n, tower.shift_a,
                                     action->space->dimension);
        report.lines.push_back({"compatibility", true,
                                "xi_k^! stage_(k+1) = stage_k for k=" +
                                    std::to_string(k_lo) + ".." + std::to_string(k_hi - 1)});
        report.lines.push_back({"degree-bound", true,
                                "no support above equivariant degree m=" +
                                    std::to_string(action->space->dimension)});
    } catch (const CompatibilityFailure& e) {
        report.lines.push_back({"compatibility", false,
                                "first failing stage k=" + std::to_string(e.stage())});
        report.lines.push_back({"degree-bound", true, "not reached"});
        return report;
    } catch (const DegreeBoundViolation& e) {
        report.lines.push_back({"compatibility", true, ""});
        report.lines.push_back({"degree-bound", false, e.what()});
        return report;
    }

    bool top_ok = true;
    std::string top_detail;
    for (const auto& [k, stage_class] : cls.stages()) {
        int top = action->space->dimension + tower.n * k + tower.shift_a;
        HomologyClass top_comp = stage_class.homogeneous_component(top);
        HomologyClass fundamental = fundamental_class(ra.stage(k).model);
        if (top_comp != fundamental) {
            top_ok = false;
            top_detail = "stage k=" + std::to_string(k);
            break;
        }
    }
    report.lines.push_back({"top-degree-law", top_ok,
                            top_ok ? "L^G_m equals the fundamental class family"
                                   : top_detail});

    if (action->mode == ActionMode::Trivial &&
        action->space->kind == SpaceKind::Manifold) {
        ResolvedAction re = ResolvedAction::resolve(as_explicit(ra), k_lo, k_hi);
        bool ok = true;
        std::string detail = "defining formula on product stages";
        for (const auto& [k, st] : re.stages()) {
            if (stage_k_class(re, k, seq) != cls.stages().at(k)) {
                ok = false;
                detail = "mismatch at k=" + std::to_string(k);
                break;
            }
        }
        report.lines.push_back({"route-agreement", ok, detail});
        try {
            manifold_equiv_l(re, seq);
            report.lines.push_back(
                {"manifold-route", true, "L^*((TM)_G(k)) cap [M_G(k)] matches"});
        } catch (const EngineError& e) {
            report.lines.push_back({"manifold-route", false, e.what()});
        }
    }
    if (action->mode == ActionMode::Explicit) {
        bool have_vertical = true;
        for (const auto& [k, st] : ra.stages())
            if (!st.vertical)
                have_vertical = false;
        if (have_vertical) {
            try {
                manifold_equiv_l(ra, seq);
                report.lines.push_back(
                    {"manifold-route", true, "L^*((TM)_G(k)) cap [M_G(k)] matches"});
            } catch (const EngineError& e) {
                report.lines.push_back({"manifold-route", false, e.what()});
            }
        }
    }
    return report;
}

} // namespace lborel

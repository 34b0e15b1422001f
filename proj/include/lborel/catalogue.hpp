#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lborel/action.hpp"
#include "lborel/json_io.hpp"

namespace lborel {

// The shipped catalogue: one JSON file per entity under
//   <root>/{groups,spaces,towers,pairs,actions}/<name>.json
// All cross-references are resolved and all load-time axiom checks run
// before any command touches the data. A user catalogue merges by name;
// shadowing shipped entries requires an explicit flag.
class Catalogue {
public:
    std::map<std::string, std::shared_ptr<const GroupData>> groups;
    std::map<std::string, SpacePtr> spaces;
    std::map<std::string, TowerPtr> towers;
    std::map<std::string, PairPtr> pairs;
    std::map<std::string, ActionPtr> actions;
    std::map<std::string, std::string> provenance; // "<kind>/<name>" -> tag

    static Catalogue load(const std::filesystem::path& root) {
        Catalogue cat;
        cat.merge_from(root, /*allow_shadow=*/false);
        return cat;
    }

    void merge_from(const std::filesystem::path& root, bool allow_shadow) {
        if (!std::filesystem::is_directory(root))
            throw MalformedDocument("catalogue root '" + root.string() +
                                    "' is not a directory");
        for (const auto& j : read_dir(root / "groups")) {
            auto g = group_from_json(j);
            insert(groups, g->name, g, "groups", j, allow_shadow);
        }
        for (const auto& j : read_dir(root / "spaces")) {
            auto s = space_from_json(j);
            insert(spaces, s->name, SpacePtr(s), "spaces", j, allow_shadow);
        }
        for (const auto& j : read_dir(root / "towers")) {
            auto t = tower_from_json(j);
            insert(towers, t->name, t, "towers", j, allow_shadow);
        }
        for (const auto& j : read_dir(root / "pairs")) {
            auto p = pair_from_json(j);
            insert(pairs, p->name, p, "pairs", j, allow_shadow);
        }
        for (const auto& j : read_dir(root / "actions")) {
            auto a = action_from_json(j);
            insert(actions, a->name, a, "actions", j, allow_shadow);
        }
    }

    SpacePtr space(const std::string& name) const {
        return find(spaces, name, "space");
    }
    TowerPtr tower(const std::string& name) const {
        return find(towers, name, "tower");
    }
    std::shared_ptr<const GroupData> group(const std::string& name) const {
        return find(groups, name, "group");
    }
    ActionPtr action(const std::string& name) const {
        return find(actions, name, "action");
    }
    PairPtr pair(const std::string& name) const {
        return find(pairs, name, "pair");
    }

    // Trivial-subgroup pair catalogued for a tower, keyed by tower name.
    PairPtr pair_for_tower(const std::string& tower_name) const {
        for (const auto& [n, p] : pairs)
            if (p->tower_name == tower_name)
                return p;
        throw UncataloguedPair("no subgroup pair catalogued for tower '" + tower_name + "'");
    }

    // Cross-entity consistency beyond the per-entity load checks. Returns
    // one line per verified property.
    std::vector<std::string> validate() const;

private:
    template <typename M, typename V>
    void insert(M& map, const std::string& name, V value, const char* kind, const Json& doc,
                bool allow_shadow) {
        if (map.count(name) && !allow_shadow)
            throw MalformedDocument(std::string(kind) + "/" + name +
                                    " already exists (use the shadow flag to override)");
        map[name] = std::move(value);
        provenance[std::string(kind) + "/" + name] = doc.value("provenance", "user");
    }

    template <typename M>
    typename M::mapped_type find(const M& map, const std::string& name, const char* kind) const {
        auto it = map.find(name);
        if (it == map.end())
            throw MalformedDocument(std::string("unknown ") + kind + " '" + name + "'");
        return it->second;
    }

    static std::vector<Json> read_dir(const std::filesystem::path& dir) {
        std::vector<Json> out;
        if (!std::filesystem::is_directory(dir))
            return out;
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::ifstream in(f);
            if (!in)
                throw MalformedDocument("cannot read '" + f.string() + "'");
            Json j;
            try {
                in >> j;
            } catch (const Json::exception& e) {
                throw MalformedDocument("'" + f.string() + "': " + e.what());
            }
            out.push_back(std::move(j));
        }
        return out;
    }

    RingMapPtr map_from_doc(const Json& j, const std::string& name) const {
        SpacePtr src = space(j.at("source").get<std::string>());
        SpacePtr tgt = space(j.at("target").get<std::string>());
        if (!src->ring || !tgt->ring)
            throw MalformedDocument("ring map '" + name + "' between ringless spaces");
        return ring_map_from_json(j, name, src->ring, tgt->ring);
    }

    TowerPtr tower_from_json(const Json& j) {
        auto t = std::make_shared<BorelTower>();
        try {
            t->name = j.at("name").get<std::string>();
            t->group = group(j.at("group").get<std::string>());
            t->n = j.at("n").get<int>();
            t->d = j.at("d").get<int>();
            t->shift_a = t->n * (t->n - 1) / 2 - t->d;
            if (t->n != t->group->embed_n || t->d != t->group->dim)
                throw MalformedDocument("tower '" + t->name +
                                        "': n, d disagree with the group data");
            for (const auto& [ks, st] : j.at("stages").items()) {
                int k = std::stoi(ks);
                TowerStage stage;
                stage.base = space(st.at("base").get<std::string>());
                if (st.contains("normal"))
                    stage.normal =
                        bundle_from_json(st.at("normal"), stage.base->name, stage.base->ring);
                if (st.contains("normal_l"))
                    stage.normal_l =
                        graded_element_from_json(st.at("normal_l"), stage.base->ring);
                t->stages.emplace(k, std::move(stage));
            }
            // restrictions reference the k+1 stage, resolve in a second pass
            for (const auto& [ks, st] : j.at("stages").items()) {
                int k = std::stoi(ks);
                if (!st.contains("restriction"))
                    continue;
                t->stages.at(k).restriction = map_from_doc(
                    st.at("restriction"), t->name + ".beta" + std::to_string(k) + "*");
            }
        } catch (const Json::exception& e) {
            throw MalformedDocument("tower document: " + std::string(e.what()));
        }
        t->check();
        return t;
    }

    PairPtr pair_from_json(const Json& j) {
        auto p = std::make_shared<SubgroupPair>();
        try {
            p->name = j.at("name").get<std::string>();
            p->tower_name = j.at("tower").get<std::string>();
            TowerPtr t = tower(p->tower_name);
            for (const auto& [ks, st] : j.at("stages").items()) {
                int k = std::stoi(ks);
                SubgroupPair::Stage stage;
                stage.e_model = space(st.at("e_model").get<std::string>());
                stage.p_pullback = map_from_doc(
                    st.at("p_pullback"), p->name + ".p" + std::to_string(k) + "*");
                if (st.contains("restriction"))
                    stage.restriction = map_from_doc(
                        st.at("restriction"), p->name + ".xi" + std::to_string(k) + "*");
                int dim_e = t->stage(k).base->dimension + t->d;
                if (stage.e_model->dimension != dim_e)
                    throw MalformedDocument("pair '" + p->name + "': dim E'_" +
                                            std::to_string(k) + " must be " +
                                            std::to_string(dim_e));
                p->stages.emplace(k, std::move(stage));
            }
        } catch (const Json::exception& e) {
            throw MalformedDocument("pair document: " + std::string(e.what()));
        }
        return p;
    }

    ActionPtr action_from_json(const Json& j) {
        auto a = std::make_shared<ActionSpec>();
        try {
            a->name = j.at("name").get<std::string>();
            a->tower = tower(j.at("tower").get<std::string>());
            a->space = space(j.at("space").get<std::string>());
            std::string mode = j.at("mode").get<std::string>();
            if (mode == "point")
                a->mode = ActionMode::Point;
            else if (mode == "trivial")
                a->mode = ActionMode::Trivial;
            else if (mode == "free")
                a->mode = ActionMode::Free;
            else if (mode == "explicit")
                a->mode = ActionMode::Explicit;
            else
                throw MalformedDocument("action '" + a->name + "': unknown mode '" + mode +
                                        "'");
            if (j.contains("quotient"))
                a->quotient = space(j.at("quotient").get<std::string>());
            const Json stage_docs = j.value("stages", Json::object());
            for (const auto& [ks, st] : stage_docs.items()) {
                int k = std::stoi(ks);
                ExplicitStageData data;
                data.model = space(st.at("model").get<std::string>());
                std::string tag = a->name + "." + ks;
                if (st.contains("q_pullback"))
                    data.q_pullback = map_from_doc(st.at("q_pullback"), tag + ".q*");
                if (st.contains("pi_pullback"))
                    data.pi_pullback = map_from_doc(st.at("pi_pullback"), tag + ".pi*");
                if (st.contains("restriction"))
                    data.restriction = map_from_doc(st.at("restriction"), tag + ".xi*");
                if (st.contains("vertical_bundle"))
                    data.vertical = bundle_from_json(st.at("vertical_bundle"),
                                                     data.model->name, data.model->ring);
                a->stages.emplace(k, std::move(data));
            }
        } catch (const Json::exception& e) {
            throw MalformedDocument("action document: " + std::string(e.what()));
        }
        return a;
    }
};

// Tower stage bundle consistency: the catalogued TBG_{k+1} restricts to
// TBG_k + nu_k, and normal_l (when present) equals L^*(nu_k).
inline std::vector<std::string> Catalogue::validate() const {
    std::vector<std::string> report;
    MultiplicativeSequence seq = MultiplicativeSequence::l_sequence();
    for (const auto& [name, t] : towers) {
        t->check();
        report.push_back("tower " + name + ": stage dimension formulas hold");
        for (const auto& [k, st] : t->stages) {
            if (!st.restriction || !t->has_stage(k + 1))
                continue;
            const TowerStage& next = t->stage(k + 1);
            if (st.normal && st.base->tangent && next.base->tangent) {
                GradedElement lhs =
                    st.restriction->apply(next.base->tangent->total_pontryagin);
                GradedElement rhs =
                    whitney_sum(*st.base->tangent, *st.normal).total_pontryagin;
                if (lhs != rhs)
                    throw FailedAxiomCheck("tower " + name + ": beta_" + std::to_string(k) +
                                           "^* TBG_" + std::to_string(k + 1) +
                                           " differs from TBG_k + nu_k");
            }
            if (st.normal_l && st.normal) {
                GradedElement computed =
                    l_class(*st.normal, st.base->ring->top_degree, seq);
                if (computed != *st.normal_l)
                    throw FailedAxiomCheck("tower " + name + ": catalogued L^*(nu_" +
                                           std::to_string(k) +
                                           ") differs from the computed value");
            }
        }
        report.push_back("tower " + name + ": stage bundle data is restriction-consistent");
    }
    for (const auto& [name, p] : pairs) {
        tower(p->tower_name);
        report.push_back("pair " + name + ": stages resolve over tower " + p->tower_name);
    }
    for (const auto& [name, a] : actions)
        report.push_back("action " + name + ": references resolve (mode " +
                         mode_name(a->mode) + ")");
    return report;
}

} // namespace lborel

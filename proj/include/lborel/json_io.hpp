#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "lborel/action.hpp"
#include "lborel/group.hpp"
#include "lborel/space.hpp"
#include "lborel/tower.hpp"

namespace lborel {

// Stable key ordering everywhere; rationals travel as "p/q" strings.
using Json = nlohmann::ordered_json;

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer())
        return Rational(static_cast<long long>(j.get<long long>()));
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    throw MalformedDocument("expected a rational, got " + j.dump());
}

inline Json rational_to_json(const Rational& r) { return Json(r.str()); }

inline GradedElement graded_element_from_json(const Json& j, const RingPtr& ring) {
    if (!j.is_object())
        throw MalformedDocument("graded element must be an object, got " + j.dump());
    GradedElement out(ring);
    for (const auto& [name, coeff] : j.items()) {
        ring->degree_of(name); // existence check
        out.add_term(name, rational_from_json(coeff));
    }
    return out;
}

inline Json graded_element_to_json(const GradedElement& e) {
    Json out = Json::object();
    for (const auto& [name, c] : e.coefficients())
        out[name] = rational_to_json(c);
    return out;
}

inline RatMatrix matrix_from_json(const Json& j) {
    RatMatrix out;
    for (const auto& row : j) {
        RatVector r;
        for (const auto& x : row)
            r.push_back(rational_from_json(x));
        out.push_back(std::move(r));
    }
    return out;
}

inline Json matrix_to_json(const RatMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row)
            r.push_back(rational_to_json(x));
        out.push_back(std::move(r));
    }
    return out;
}

// Ring presentation documents:
// {"name", "top_degree", "generators":[{"name","degree"}],
//  "basis":{"<degree>":["names"]}, "products":{"a*b":{"name":"p/q"}}}
inline RingPtr ring_from_json(const Json& j) {
    auto ring = std::make_shared<RingPresentation>();
    try {
        ring->name = j.at("name").get<std::string>();
        ring->top_degree = j.at("top_degree").get<int>();
        for (const auto& g : j.value("generators", Json::array()))
            ring->generators.emplace_back(g.at("name").get<std::string>(),
                                          g.at("degree").get<int>());
        for (const auto& [deg, names] : j.at("basis").items()) {
            int d = std::stoi(deg);
            for (const auto& n : names)
                ring->basis_by_degree[d].push_back(n.get<std::string>());
        }
        const Json products = j.value("products", Json::object());
        for (const auto& [key, val] : products.items()) {
            auto star = key.find('*');
            if (star == std::string::npos)
                throw MalformedDocument("product key '" + key + "' is not of the form a*b");
            std::map<std::string, Rational> entry;
            for (const auto& [n, c] : val.items())
                entry[n] = rational_from_json(c);
            ring->products[{key.substr(0, star), key.substr(star + 1)}] = std::move(entry);
        }
    } catch (const Json::exception& e) {
        throw MalformedDocument("ring document: " + std::string(e.what()));
    }
    ring->finalize_and_check();
    return ring;
}

inline Json ring_to_json(const RingPresentation& r) {
    Json out;
    out["name"] = r.name;
    out["top_degree"] = r.top_degree;
    Json gens = Json::array();
    for (const auto& [n, d] : r.generators)
        gens.push_back(Json{{"name", n}, {"degree", d}});
    out["generators"] = gens;
    Json basis = Json::object();
    for (const auto& [d, names] : r.basis_by_degree)
        basis[std::to_string(d)] = names;
    out["basis"] = basis;
    Json prods = Json::object();
    for (const auto& [key, entry] : r.products) {
        Json e = Json::object();
        for (const auto& [n, c] : entry)
            e[n] = rational_to_json(c);
        prods[key.first + "*" + key.second] = std::move(e);
    }
    out["products"] = prods;
    return out;
}

// Ring maps: {"source","target","images":{name: graded element}} where
// source/target are space names resolved by the caller.
inline RingMapPtr ring_map_from_json(const Json& j, const std::string& name,
                                     const RingPtr& source, const RingPtr& target) {
    auto map = std::make_shared<RingMap>();
    map->name = name;
    map->source = source;
    map->target = target;
    for (const auto& [n, img] : j.at("images").items())
        map->images.emplace(n, graded_element_from_json(img, target));
    map->check();
    return map;
}

// Bundle documents:
// {"base","rank","oriented","pontryagin":{degree: graded element},"euler"?}
inline BundleModel bundle_from_json(const Json& j, const std::string& base_name,
                                    const RingPtr& ring) {
    BundleModel b;
    b.base_space = j.value("base", base_name);
    b.ring = ring;
    const Json& rank = j.at("rank");
    if (rank.is_string()) {
        if (rank.get<std::string>() != "stable")
            throw MalformedDocument("bundle rank must be an integer or \"stable\"");
        b.rank = std::nullopt;
    } else {
        b.rank = rank.get<int>();
    }
    b.oriented = j.value("oriented", true);
    b.total_pontryagin = GradedElement::unit(ring);
    for (const auto& [deg, comp] : j.at("pontryagin").items()) {
        int d = std::stoi(deg);
        GradedElement e = graded_element_from_json(comp, ring);
        for (const auto& [n, c] : e.coefficients()) {
            if (ring->degree_of(n) != d)
                throw MalformedDocument("bundle over '" + b.base_space +
                                        "': component keyed " + deg + " has wrong degree");
            b.total_pontryagin.add_term(n, c);
        }
    }
    if (j.contains("euler"))
        b.euler = graded_element_from_json(j.at("euler"), ring);
    b.check();
    return b;
}

inline Json bundle_to_json(const BundleModel& b) {
    Json out;
    out["base"] = b.base_space;
    if (b.rank)
        out["rank"] = *b.rank;
    else
        out["rank"] = "stable";
    out["oriented"] = b.oriented;
    Json p = Json::object();
    for (int d = 4; d <= b.ring->top_degree; d += 4) {
        GradedElement comp = b.total_pontryagin.homogeneous_component(d);
        if (!comp.is_zero())
            p[std::to_string(d)] = graded_element_to_json(comp);
    }
    out["pontryagin"] = p;
    if (b.euler)
        out["euler"] = graded_element_to_json(*b.euler);
    return out;
}

// Space documents:
// {"name","dimension","kind","ring"?,"evaluation",
//  "tangent"?,"l_homology"?,"orientable"}
inline std::shared_ptr<SpaceModel> space_from_json(const Json& j) {
    auto s = std::make_shared<SpaceModel>();
    try {
        s->name = j.at("name").get<std::string>();
        s->dimension = j.at("dimension").get<int>();
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "manifold")
            s->kind = SpaceKind::Manifold;
        else if (kind == "singular")
            s->kind = SpaceKind::Singular;
        else
            throw MalformedDocument("space '" + s->name + "': unknown kind '" + kind + "'");
        s->orientable = j.at("orientable").get<bool>();
        if (j.contains("ring"))
            s->ring = ring_from_json(j.at("ring"));
        const Json evaluation = j.value("evaluation", Json::object());
        for (const auto& [n, c] : evaluation.items())
            s->evaluation[n] = rational_from_json(c);
        if (j.contains("tangent")) {
            if (!s->ring)
                throw MalformedDocument("space '" + s->name +
                                        "': tangent data without a ring");
            s->tangent = bundle_from_json(j.at("tangent"), s->name, s->ring);
        }
        if (j.contains("l_homology")) {
            const Json& lh = j.at("l_homology");
            LHomologyData data;
            for (const auto& [deg, names] : lh.at("basis").items())
                for (const auto& n : names)
                    data.basis_by_degree[std::stoi(deg)].push_back(n.get<std::string>());
            data.fundamental = lh.value("fundamental", "");
            const Json lcoeffs = lh.value("l_coefficients", Json::object());
            for (const auto& [n, c] : lcoeffs.items())
                data.l_coefficients[n] = rational_from_json(c);
            const Json cap_action = lh.value("cap_action", Json::object());
            for (const auto& [key, val] : cap_action.items()) {
                auto star = key.find('*');
                if (star == std::string::npos)
                    throw MalformedDocument("cap_action key '" + key + "' not of form a*x");
                std::map<std::string, Rational> entry;
                for (const auto& [n, c] : val.items())
                    entry[n] = rational_from_json(c);
                data.cap_action[{key.substr(0, star), key.substr(star + 1)}] =
                    std::move(entry);
            }
            data.finalize();
            s->l_homology = std::move(data);
        }
    } catch (const Json::exception& e) {
        throw MalformedDocument("space document: " + std::string(e.what()));
    }
    s->check();
    return s;
}

// Group documents:
// {"name","dim","embed_n","connected","lie_algebra_basis","component_reps"}
inline std::shared_ptr<GroupData> group_from_json(const Json& j) {
    auto g = std::make_shared<GroupData>();
    try {
        g->name = j.at("name").get<std::string>();
        g->dim = j.at("dim").get<int>();
        g->embed_n = j.at("embed_n").get<int>();
        g->connected = j.at("connected").get<bool>();
        for (const auto& m : j.value("lie_algebra_basis", Json::array()))
            g->lie_algebra_basis.push_back(matrix_from_json(m));
        for (const auto& m : j.value("component_reps", Json::array()))
            g->component_reps.push_back(matrix_from_json(m));
    } catch (const Json::exception& e) {
        throw MalformedDocument("group document: " + std::string(e.what()));
    }
    g->check();
    return g;
}

} // namespace lborel

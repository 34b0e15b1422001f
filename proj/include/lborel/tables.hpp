#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "lborel/catalogue.hpp"

namespace lborel {

enum class OutputFormat { Markdown, JsonFmt, Csv };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "md")
        return OutputFormat::Markdown;
    if (s == "json")
        return OutputFormat::JsonFmt;
    if (s == "csv")
        return OutputFormat::Csv;
    throw MalformedDocument("unknown format '" + s + "' (expected md|json|csv)");
}

// ---------------------------------------------------------------- lpoly ---

inline Json lpoly_to_json(const std::vector<PontryaginPolynomial>& polys) {
    Json rows = Json::array();
    for (std::size_t j = 0; j < polys.size(); ++j) {
        Json terms = Json::array();
        for (const auto& [mono, c] : polys[j].terms()) {
            Json m = Json::array();
            for (int part : mono)
                m.push_back(part);
            terms.push_back(Json{{"monomial", m}, {"coeff", c.str()}});
        }
        rows.push_back(Json{{"j", j}, {"terms", terms}});
    }
    return Json{{"l_polynomials", rows}};
}

inline std::vector<PontryaginPolynomial> lpoly_from_json(const Json& doc) {
    std::vector<PontryaginPolynomial> out;
    for (const auto& row : doc.at("l_polynomials")) {
        PontryaginPolynomial p;
        for (const auto& term : row.at("terms")) {
            Partition mono;
            for (const auto& part : term.at("monomial"))
                mono.push_back(part.get<int>());
            std::sort(mono.begin(), mono.end(), std::greater<int>());
            p.add_term(mono, Rational::parse(term.at("coeff").get<std::string>()));
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline std::string render_lpoly(const std::vector<PontryaginPolynomial>& polys,
                                OutputFormat fmt) {
    std::ostringstream out;
    switch (fmt) {
    case OutputFormat::Markdown:
        for (std::size_t j = 0; j < polys.size(); ++j)
            out << "L" << j << " = " << polys[j].str() << "\n";
        break;
    case OutputFormat::JsonFmt:
        out << lpoly_to_json(polys).dump(1) << "\n";
        break;
    case OutputFormat::Csv:
        out << "j,monomial,coeff\n";
        for (std::size_t j = 0; j < polys.size(); ++j)
            for (const auto& [mono, c] : polys[j].terms())
                out << j << "," << PontryaginPolynomial::monomial_str(mono) << ","
                    << c.str() << "\n";
        break;
    }
    return out.str();
}

// ------------------------------------------------------- point homology ---

struct PointHomologyTable {
    std::string tower;
    int j_min = 0;
    int j_max = 0;
    std::vector<int> stage_ks;
    struct Cell {
        int rank = 0;
        std::vector<std::string> generators; // homology generator labels
        bool stable = false;
    };
    std::map<int, std::map<int, Cell>> cells; // j -> k -> cell
    struct Row {
        int j = 0;
        int rank = 0;
        int stable_from = 0;
        bool verified = false;
        bool depth_exceeded = false; // stable stage beyond the catalogue
        std::vector<std::string> generators;
    };
    std::vector<Row> rows; // j descending
};

inline std::string homology_generator_label(const SpacePtr& base, const std::string& dual) {
    if (dual == "1")
        return "[" + base->name + "]";
    return "PD(" + dual + ")";
}

inline PointHomologyTable build_point_homology_table(const BorelTower& t, int j_min,
                                                     int j_max) {
    if (j_min > j_max)
        throw MalformedDocument("empty degree range");
    PointHomologyTable table;
    table.tower = t.name;
    table.j_min = j_min;
    table.j_max = j_max;
    for (const auto& [k, st] : t.stages)
        table.stage_ks.push_back(k);
    for (int j = j_max; j >= j_min; --j) {
        for (int k : table.stage_ks) {
            const TowerStage& st = t.stage(k);
            PointHomologyTable::Cell cell;
            int hom = j + t.n * k + t.shift_a;
            if (hom >= 0 && hom <= st.base->dimension && j <= 0) {
                const auto& names = st.base->ring->basis_at(st.base->dimension - hom);
                cell.rank = static_cast<int>(names.size());
                for (const auto& n : names)
                    cell.generators.push_back(homology_generator_label(st.base, n));
            }
            cell.stable = k >= stable_k(0, j);
            table.cells[j][k] = std::move(cell);
        }
        PointHomologyTable::Row row;
        row.j = j;
        row.stable_from = stable_k(0, j);
        if (t.has_stage(row.stable_from)) {
            PointHomology ph = point_equivariant_homology(t, j);
            row.rank = ph.rank;
            row.verified = ph.verified_against_next;
            for (const auto& n : ph.generator_duals)
                row.generators.push_back(
                    homology_generator_label(t.stage(row.stable_from).base, n));
        } else {
            row.depth_exceeded = true;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline Json point_homology_to_json(const PointHomologyTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json cells = Json::object();
        for (int k : t.stage_ks) {
            const auto& c = t.cells.at(r.j).at(k);
            cells[std::to_string(k)] = Json{{"rank", c.rank},
                                            {"generators", c.generators},
                                            {"stable", c.stable}};
        }
        rows.push_back(Json{{"j", r.j},
                            {"rank", r.rank},
                            {"stable_from", r.stable_from},
                            {"stabilization_verified", r.verified},
                            {"depth_exceeded", r.depth_exceeded},
                            {"generators", r.generators},
                            {"stages", cells}});
    }
    return Json{{"tower", t.tower}, {"j_min", t.j_min}, {"j_max", t.j_max}, {"rows", rows}};
}

inline PointHomologyTable point_homology_from_json(const Json& doc) {
    PointHomologyTable t;
    t.tower = doc.at("tower").get<std::string>();
    t.j_min = doc.at("j_min").get<int>();
    t.j_max = doc.at("j_max").get<int>();
    for (const auto& row : doc.at("rows")) {
        PointHomologyTable::Row r;
        r.j = row.at("j").get<int>();
        r.rank = row.at("rank").get<int>();
        r.stable_from = row.at("stable_from").get<int>();
        r.verified = row.at("stabilization_verified").get<bool>();
        r.depth_exceeded = row.at("depth_exceeded").get<bool>();
        for (const auto& g : row.at("generators"))
            r.generators.push_back(g.get<std::string>());
        for (const auto& [ks, cj] : row.at("stages").items()) {
            int k = std::stoi(ks);
            if (std::find(t.stage_ks.begin(), t.stage_ks.end(), k) == t.stage_ks.end())
                t.stage_ks.push_back(k);
            PointHomologyTable::Cell c;
            c.rank = cj.at("rank").get<int>();
            c.stable = cj.at("stable").get<bool>();
            for (const auto& g : cj.at("generators"))
                c.generators.push_back(g.get<std::string>());
            t.cells[r.j][k] = std::move(c);
        }
        t.rows.push_back(std::move(r));
    }
    std::sort(t.stage_ks.begin(), t.stage_ks.end());
    return t;
}

inline std::string render_point_homology(const PointHomologyTable& t, OutputFormat fmt) {
    std::ostringstream out;
    switch (fmt) {
    case OutputFormat::Markdown: {
        // degrees run down, stages across; '*' marks the stable range
        out << "| j |";
        for (int k : t.stage_ks)
            out << " k=" << k << " |";
        out << " rank | stable from | generators |\n";
        out << "|---|";
        for (std::size_t i = 0; i < t.stage_ks.size(); ++i)
            out << "---|";
        out << "---|---|---|\n";
        for (const auto& r : t.rows) {
            out << "| " << r.j << " |";
            for (int k : t.stage_ks) {
                const auto& c = t.cells.at(r.j).at(k);
                out << " ";
                if (c.rank == 0)
                    out << "-";
                else
                    for (std::size_t i = 0; i < c.generators.size(); ++i)
                        out << (i ? ", " : "") << c.generators[i];
                if (c.stable)
                    out << " *";
                out << " |";
            }
            if (r.depth_exceeded) {
                out << " ? | " << r.stable_from << " (beyond catalogue) | ? |\n";
                continue;
            }
            out << " " << r.rank << " | " << r.stable_from
                << (r.verified ? "" : " (unverified)") << " | ";
            if (r.generators.empty())
                out << "-";
            for (std::size_t i = 0; i < r.generators.size(); ++i)
                out << (i ? ", " : "") << r.generators[i];
            out << " |\n";
        }
        break;
    }
    case OutputFormat::JsonFmt:
        out << point_homology_to_json(t).dump(1) << "\n";
        break;
    case OutputFormat::Csv:
        out << "j,k,rank,stable,generators\n";
        for (const auto& r : t.rows)
            for (int k : t.stage_ks) {
                const auto& c = t.cells.at(r.j).at(k);
                out << r.j << "," << k << "," << c.rank << "," << (c.stable ? 1 : 0) << ",";
                for (std::size_t i = 0; i < c.generators.size(); ++i)
                    out << (i ? ";" : "") << c.generators[i];
                out << "\n";
            }
        break;
    }
    return out.str();
}

// -------------------------------------------------------- equivariant L ---

struct EquivLClassTable {
    std::string action;
    int j_min = 0;
    int j_max = 0;
    struct Row {
        int j = 0;
        int stage = 0;                 // 0 when depth exceeded
        std::string value;
        bool stabilization_verified = false;
        bool depth_exceeded = false;
    };
    std::vector<Row> rows;
};

inline EquivLClassTable build_equiv_lclass_table(const std::string& name,
                                                 const InverseLimitClass& cls, int j_min,
                                                 int j_max) {
    EquivLClassTable t;
    t.action = name;
    t.j_min = j_min;
    t.j_max = j_max;
    for (int j = j_max; j >= j_min; --j) {
        EquivLClassTable::Row row;
        row.j = j;
        try {
            auto v = cls.value_at(j);
            row.stage = v.stage;
            row.value = v.component.str();
            row.stabilization_verified = v.stabilization_verified;
        } catch (const CatalogueDepth&) {
            row.depth_exceeded = true;
            row.value = "(stable stage beyond assembled range)";
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Json equiv_lclass_to_json(const EquivLClassTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back(Json{{"j", r.j},
                            {"stage", r.stage},
                            {"value", r.value},
                            {"stabilization_verified", r.stabilization_verified},
                            {"depth_exceeded", r.depth_exceeded}});
    return Json{{"action", t.action}, {"j_min", t.j_min}, {"j_max", t.j_max}, {"rows", rows}};
}

inline EquivLClassTable equiv_lclass_from_json(const Json& doc) {
    EquivLClassTable t;
    t.action = doc.at("action").get<std::string>();
    t.j_min = doc.at("j_min").get<int>();
    t.j_max = doc.at("j_max").get<int>();
    for (const auto& row : doc.at("rows")) {
        EquivLClassTable::Row r;
        r.j = row.at("j").get<int>();
        r.stage = row.at("stage").get<int>();
        r.value = row.at("value").get<std::string>();
        r.stabilization_verified = row.at("stabilization_verified").get<bool>();
        r.depth_exceeded = row.at("depth_exceeded").get<bool>();
        t.rows.push_back(std::move(r));
    }
    return t;
}

inline std::string render_equiv_lclass(const EquivLClassTable& t, OutputFormat fmt) {
    std::ostringstream out;
    switch (fmt) {
    case OutputFormat::Markdown:
        out << "| j | stable stage | value | verified |\n|---|---|---|---|\n";
        for (const auto& r : t.rows) {
            out << "| " << r.j << " | ";
            if (r.depth_exceeded)
                out << "-";
            else
                out << r.stage;
            out << " | " << r.value << " | "
                << (r.depth_exceeded ? "-" : (r.stabilization_verified ? "yes" : "no"))
                << " |\n";
        }
        break;
    case OutputFormat::JsonFmt:
        out << equiv_lclass_to_json(t).dump(1) << "\n";
        break;
    case OutputFormat::Csv:
        out << "j,stage,value,verified\n";
        for (const auto& r : t.rows)
            out << r.j << "," << r.stage << "," << r.value << ","
                << (r.stabilization_verified ? 1 : 0) << "\n";
        break;
    }
    return out.str();
}

// ------------------------------------------------------------ matrices ---

inline std::string render_matrix(const RatMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += (i ? ",[" : "[");
        for (std::size_t j = 0; j < m[i].size(); ++j)
            out += (j ? "," : "") + m[i][j].str();
        out += "]";
    }
    return out + "]";
}

} // namespace lborel

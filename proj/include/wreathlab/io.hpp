#pragma once

#include <fstream>

#include "json.hpp"

#include "wreathlab/action.hpp"
#include "wreathlab/houghton.hpp"
#include "wreathlab/lhs.hpp"
#include "wreathlab/polyprod.hpp"
#include "wreathlab/presentation.hpp"
#include "wreathlab/verdict.hpp"

namespace wreathlab::io {

using nlohmann::json;
using nlohmann::ordered_json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("input files parse against the module schemas: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw domain_error("input files parse against the module schemas: " + path + ": " + e.what());
    }
    return j;
}

// ---------------------------------------------------------------------------
// graphs

inline SimpleGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw domain_error("input files parse against the module schemas: graph needs 'vertices' and 'edges'");
    std::vector<std::string> names = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (size_t i = 0; i < names.size(); ++i) {
        if (!index.emplace(names[i], static_cast<int>(i)).second)
            throw domain_error("input files parse against the module schemas: duplicate vertex name '" + names[i] + "'");
    }
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw domain_error("input files parse against the module schemas: each edge is a pair of vertex names");
        auto fa = index.find(e.at(0).get<std::string>());
        auto fb = index.find(e.at(1).get<std::string>());
        if (fa == index.end() || fb == index.end())
            throw domain_error("every edge endpoint is a listed vertex");
        int a = fa->second, b = fb->second;
        if (a == b) throw domain_error("no loops ({v,v} forbidden)");
        if (a > b) std::swap(a, b); // normalize to sorted order on load
        if (!seen.insert({a, b}).second)
            throw domain_error("no multi-edges (edges is a set): duplicate edge rejected");
        edges.push_back({a, b});
    }
    return SimpleGraph(std::move(names), edges);
}

inline ordered_json graph_to_json(const SimpleGraph& g) {
    ordered_json j;
    j["vertices"] = g.names();
    ordered_json edges = ordered_json::array();
    for (auto [a, b] : g.edges()) edges.push_back({g.name(a), g.name(b)});
    j["edges"] = std::move(edges);
    return j;
}

inline ordered_json clique_to_json(const SimpleGraph& g, const Clique& c) {
    ordered_json arr = ordered_json::array();
    for (int v : c.verts) arr.push_back(g.name(v));
    return arr;
}

// ---------------------------------------------------------------------------
// integers and matrices

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw domain_error("input files parse against the module schemas: integer entry expected");
}

inline ordered_json int_to_json(const Int& x) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (x >= lo && x <= hi) return ordered_json(static_cast<long long>(x));
    return ordered_json(x.str());
}

inline IntMatrix matrix_from_json(const json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw domain_error("dimensions consistent: boundary matrix row count mismatch");
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw domain_error("dimensions consistent: boundary matrix column count mismatch");
        for (int k = 0; k < cols; ++k) m(i, k) = int_from_json(row.at(static_cast<size_t>(k)));
    }
    return m;
}

inline ordered_json matrix_to_json(const IntMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// chain complexes and cell models

inline ChainComplex chain_complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ranks"))
        throw domain_error("input files parse against the module schemas: chain complex needs 'ranks'");
    std::vector<long> ranks = j.at("ranks").get<std::vector<long>>();
    for (long r : ranks)
        if (r < 0) throw domain_error("dimensions consistent: chain ranks must be non-negative");
    std::map<int, IntMatrix> boundaries;
    if (j.contains("boundaries")) {
        for (const auto& [key, val] : j.at("boundaries").items()) {
            int p = 0;
            try {
                p = std::stoi(key);
            } catch (...) {
                throw domain_error("input files parse against the module schemas: boundary keys are degrees");
            }
            if (p < 1 || p >= static_cast<int>(ranks.size()))
                throw domain_error("dimensions consistent: boundary degree out of range");
            boundaries.emplace(p, matrix_from_json(val, static_cast<int>(ranks[static_cast<size_t>(p - 1)]),
                                                   static_cast<int>(ranks[static_cast<size_t>(p)])));
        }
    }
    // user input: a dd != 0 complex is a schema violation, not an internal bug
    for (int p = 1; p + 1 < static_cast<int>(ranks.size()); ++p) {
        auto ita = boundaries.find(p);
        auto itb = boundaries.find(p + 1);
        if (ita == boundaries.end() || itb == boundaries.end()) continue;
        if (!(ita->second * itb->second).is_zero())
            throw domain_error("∂_p ∘ ∂_{p+1} = 0 for all p in range: the given boundaries do not compose to zero");
    }
    return ChainComplex(std::move(ranks), std::move(boundaries));
}

inline ordered_json chain_complex_to_json(const ChainComplex& c) {
    ordered_json j;
    j["ranks"] = c.ranks();
    ordered_json bd = ordered_json::object();
    for (const auto& [p, m] : c.stored_boundaries()) bd[std::to_string(p)] = matrix_to_json(m);
    j["boundaries"] = std::move(bd);
    return j;
}

inline CellModel cell_model_from_json(const json& j) {
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "circle") return CellModel::circle();
        if (name == "wedge2") return CellModel::wedge2();
        if (name == "projective_plane") return CellModel::projective_plane();
        if (name == "torus") return CellModel::torus();
        throw domain_error("input files parse against the module schemas: unknown built-in model '" + name + "'");
    }
    ChainComplex c = chain_complex_from_json(j);
    if (j.contains("basepoint") && j.at("basepoint").get<int>() != 0)
        throw domain_error("X with more than one 0-cell: the basepoint marker must be cell 0");
    std::map<int, IntMatrix> bd = c.stored_boundaries();
    return CellModel(c.ranks(), std::move(bd));
}

inline ordered_json cell_model_to_json(const CellModel& m) {
    ordered_json j = chain_complex_to_json(m.complex());
    j["basepoint"] = 0;
    return j;
}

/// Catalog of built-in model names, or a path to a JSON model file.
inline CellModel resolve_cell_model(const std::string& spec) {
    if (spec == "circle" || spec == "wedge2" || spec == "projective_plane" || spec == "torus")
        return cell_model_from_json(json(spec));
    return cell_model_from_json(load_json_file(spec));
}

// ---------------------------------------------------------------------------
// homology groups

inline ordered_json homology_to_json(const HomologyGroup& h) {
    ordered_json j;
    j["betti"] = h.betti;
    ordered_json t = ordered_json::array();
    for (const Int& d : h.torsion) t.push_back(int_to_json(d));
    j["torsion"] = std::move(t);
    return j;
}

// ---------------------------------------------------------------------------
// actions

inline Permutation permutation_from_json(const json& j, const SimpleGraph& g) {
    if (!j.is_object())
        throw domain_error("input files parse against the module schemas: a generator is a vertex-to-vertex map");
    Permutation perm = identity_permutation(g.num_vertices());
    for (const auto& [from, to] : j.items())
        perm[static_cast<size_t>(g.index_of(from))] = g.index_of(to.get<std::string>());
    return perm;
}

inline ordered_json permutation_to_json(const Permutation& p, const SimpleGraph& g) {
    ordered_json j = ordered_json::object();
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) j[g.name(static_cast<int>(i))] = g.name(p[i]);
    return j;
}

inline Action action_from_json(const json& j, long long element_cap = kDefaultElementCap) {
    if (!j.is_object() || !j.contains("kind"))
        throw domain_error("input files parse against the module schemas: action needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite_perm") {
        SimpleGraph g = graph_from_json(j.at("graph"));
        std::vector<Permutation> gens;
        for (const json& gj : j.at("generators")) gens.push_back(permutation_from_json(gj, g));
        return FinitePermAction(std::move(g), std::move(gens), element_cap);
    }
    if (kind == "periodic_shift") {
        std::vector<std::string> tmpl = j.at("template").get<std::vector<std::string>>();
        std::map<std::string, int> index;
        for (size_t i = 0; i < tmpl.size(); ++i)
            if (!index.emplace(tmpl[i], static_cast<int>(i)).second)
                throw domain_error("input files parse against the module schemas: duplicate template vertex");
        std::map<std::pair<int, int>, OffsetSet> offsets;
        if (j.contains("offsets")) {
            for (const auto& [key, val] : j.at("offsets").items()) {
                auto bar = key.find('|');
                if (bar == std::string::npos)
                    throw domain_error("offset keys use sorted \"x|y\" pair encoding");
                auto fa = index.find(key.substr(0, bar));
                auto fb = index.find(key.substr(bar + 1));
                if (fa == index.end() || fb == index.end())
                    throw domain_error("offset keys use sorted \"x|y\" pair encoding: unknown template vertex");
                int a = fa->second, b = fb->second;
                if (a > b) throw domain_error("offset keys use sorted \"x|y\" pair encoding: pair out of order");
                OffsetSet os;
                if (val.is_string() && val.get<std::string>() == "ALL_NONZERO") {
                    os.all_nonzero = true;
                } else if (val.is_array()) {
                    for (const json& d : val) os.offsets.insert(d.get<long long>());
                } else {
                    throw domain_error("input files parse against the module schemas: offsets are an integer list or \"ALL_NONZERO\"");
                }
                offsets.emplace(std::pair(a, b), std::move(os));
            }
        }
        return PeriodicShiftAction(std::move(tmpl), std::move(offsets));
    }
    if (kind == "houghton_rays") {
        int n = j.at("n").get<int>();
        if (n < 1) throw domain_error("input files parse against the module schemas: ray count must be positive");
        return CatalogRayAction{n};
    }
    throw domain_error("input files parse against the module schemas: unknown action kind '" + kind + "'");
}

inline ordered_json stabilizer_to_json(const StabilizerDesc& d, const SimpleGraph* graph) {
    ordered_json j;
    switch (d.kind) {
    case StabilizerDesc::Kind::Trivial:
        j["kind"] = "trivial";
        break;
    case StabilizerDesc::Kind::FiniteSubgroup: {
        j["kind"] = "finite";
        ordered_json gens = ordered_json::array();
        for (const Permutation& g : d.generators)
            gens.push_back(graph ? permutation_to_json(g, *graph) : ordered_json::object());
        j["generators"] = std::move(gens);
        break;
    }
    case StabilizerDesc::Kind::ShiftSubgroup:
        j["kind"] = "shift_subgroup";
        j["index"] = d.shift_index;
        break;
    case StabilizerDesc::Kind::CatalogRayStabilizer:
        j["kind"] = "catalog_ray_stabilizer";
        j["rays"] = d.rays;
        break;
    }
    return j;
}

inline ordered_json orbit_report_to_json(const CliqueOrbitReport& r, const SimpleGraph* graph) {
    ordered_json j;
    j["p"] = r.p;
    if (r.infinite)
        j["orbit_count"] = "INFINITE";
    else
        j["orbit_count"] = r.orbit_count;
    j["representatives"] = r.representatives;
    ordered_json stabs = ordered_json::array();
    for (const StabilizerDesc& d : r.stabilizers) stabs.push_back(stabilizer_to_json(d, graph));
    j["stabilizers"] = std::move(stabs);
    return j;
}

// ---------------------------------------------------------------------------
// presentations

inline Word word_from_json(const json& j, const Presentation& context_gens) {
    Word w;
    for (const json& s : j) {
        std::string sym = s.get<std::string>();
        int sign = 1;
        if (sym.size() > 3 && sym.substr(sym.size() - 3) == "^-1") {
            sign = -1;
            sym = sym.substr(0, sym.size() - 3);
        }
        w.push_back(sign * (context_gens.generator_index(sym) + 1));
    }
    return w;
}

inline Presentation presentation_from_json(const json& j) {
    if (!j.is_object() || !j.contains("generators"))
        throw domain_error("input files parse against the module schemas: presentation needs 'generators'");
    std::vector<std::string> gens = j.at("generators").get<std::vector<std::string>>();
    Presentation skeleton(gens, {});
    std::vector<Word> relators;
    if (j.contains("relators"))
        for (const json& r : j.at("relators")) relators.push_back(word_from_json(r, skeleton));
    return Presentation(std::move(gens), std::move(relators));
}

inline ordered_json word_to_json(const Word& w, const Presentation& p) {
    ordered_json arr = ordered_json::array();
    for (int letter : w) {
        std::string sym = p.generators().at(static_cast<size_t>(std::abs(letter) - 1));
        arr.push_back(letter > 0 ? sym : sym + "^-1");
    }
    return arr;
}

inline ordered_json presentation_to_json(const Presentation& p) {
    ordered_json j;
    j["generators"] = p.generators();
    ordered_json rels = ordered_json::array();
    for (const Word& w : p.relators()) rels.push_back(word_to_json(w, p));
    j["relators"] = std::move(rels);
    return j;
}

inline ordered_json presented_group_to_json(const PresentedGroup& g) {
    ordered_json j = presentation_to_json(g.presentation);
    ordered_json prov;
    prov["construction"] = g.provenance.construction;
    prov["vertex_orbit_reps"] = g.provenance.vertex_orbit_reps;
    prov["edge_orbit_reps"] = g.provenance.edge_orbit_reps;
    prov["assumptions"] = g.provenance.assumptions;
    j["provenance"] = std::move(prov);
    return j;
}

// ---------------------------------------------------------------------------
// automorphisms

inline GraphAutomorphism automorphism_from_json(const json& j, const SimpleGraph& g) {
    if (!j.is_object() || !j.contains("perm"))
        throw domain_error("input files parse against the module schemas: automorphism needs a 'perm' map");
    return GraphAutomorphism(g, permutation_from_json(j.at("perm"), g));
}

// ---------------------------------------------------------------------------
// Houghton elements

inline RayPoint ray_point_from_string(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw domain_error("input files parse against the module schemas: ray points are \"ray,position\"");
    try {
        return RayPoint{std::stoi(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (...) {
        throw domain_error("input files parse against the module schemas: ray points are \"ray,position\"");
    }
}

inline std::string ray_point_to_string(const RayPoint& p) {
    return std::to_string(p.ray) + "," + std::to_string(p.pos);
}

inline HoughtonElement houghton_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("t"))
        throw domain_error("input files parse against the module schemas: element needs 'n' and 't'");
    int n = j.at("n").get<int>();
    std::vector<long long> t = j.at("t").get<std::vector<long long>>();
    std::map<RayPoint, RayPoint> corr;
    if (j.contains("correction"))
        for (const auto& [from, to] : j.at("correction").items())
            corr[ray_point_from_string(from)] = ray_point_from_string(to.get<std::string>());
    return HoughtonElement(n, std::move(t), std::move(corr));
}

inline ordered_json houghton_to_json(const HoughtonElement& g) {
    ordered_json j;
    j["n"] = g.ray_count();
    j["t"] = g.translations();
    ordered_json corr = ordered_json::object();
    for (const auto& [from, to] : g.correction()) corr[ray_point_to_string(from)] = ray_point_to_string(to);
    j["correction"] = std::move(corr);
    return j;
}

// ---------------------------------------------------------------------------
// verdicts and group specs

inline ordered_json trace_entry_to_json(const TraceEntry& t) {
    ordered_json j;
    j["rule"] = t.rule;
    j["condition"] = t.condition;
    if (t.p) j["p"] = *t.p;
    if (t.level) j["level"] = *t.level;
    j["outcome"] = t.outcome;
    return j;
}

inline ordered_json finiteness_to_json(const FinitenessType& t) {
    ordered_json j;
    if (t.certified == FinitenessType::kInfinity)
        j["certified"] = "inf";
    else
        j["certified"] = t.certified;
    if (t.certified == FinitenessType::kInfinity)
        j["refuted"] = "never";
    else if (t.refuted)
        j["refuted"] = *t.refuted;
    else
        j["refuted"] = "unknown";
    return j;
}

inline ordered_json verdict_to_json(const FinitenessVerdict& v) {
    ordered_json j;
    j["subject"] = v.subject;
    ordered_json type = finiteness_to_json(v.type);
    j["certified"] = type["certified"];
    j["refuted"] = type["refuted"];
    ordered_json trace = ordered_json::array();
    for (const TraceEntry& t : v.trace) trace.push_back(trace_entry_to_json(t));
    j["trace"] = std::move(trace);
    j["assumptions"] = v.assumptions;
    return j;
}

/// Group specs accepted on the CLI: "catalog:<tag>" or a path to a
/// presentation file (optionally carrying an "asserted" type block).
inline GroupSpec group_spec_from_string(const std::string& spec) {
    if (spec.rfind("catalog:", 0) == 0) {
        std::string tag = spec.substr(8);
        if (tag == "trivial") return GroupSpec::trivial();
        if (tag == "finite") return GroupSpec::finite_group();
        if (tag == "Z") return GroupSpec::free_abelian(1);
        if (tag == "polycyclic") return GroupSpec::polycyclic();
        if (tag == "thompson_f") return GroupSpec::thompson_f();
        if (tag.rfind("free_abelian:", 0) == 0) return GroupSpec::free_abelian(std::stoi(tag.substr(13)));
        if (tag.rfind("houghton:", 0) == 0) return GroupSpec::houghton(std::stoi(tag.substr(9)));
        if (tag.rfind("raag:", 0) == 0) return GroupSpec::raag(graph_from_json(load_json_file(tag.substr(5))));
        throw domain_error("input files parse against the module schemas: unknown catalog tag '" + tag + "'");
    }
    json j = load_json_file(spec);
    Presentation p = presentation_from_json(j);
    std::optional<FinitenessType> asserted;
    if (j.contains("asserted")) {
        FinitenessType t;
        const json& a = j.at("asserted");
        if (a.contains("certified")) {
            if (a.at("certified").is_string() && a.at("certified").get<std::string>() == "inf")
                t.certified = FinitenessType::kInfinity;
            else
                t.certified = a.at("certified").get<int>();
        }
        if (a.contains("refuted") && a.at("refuted").is_number_integer())
            t.refuted = a.at("refuted").get<int>();
        asserted = t;
    }
    return GroupSpec::presented(std::move(p), asserted);
}

} // namespace wreathlab::io

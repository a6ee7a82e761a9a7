// wreathlab: batch CLI over graph-wreath product combinatorics, exact
// homology, presentations, and finiteness verdicts. All output is
// deterministic given the inputs; exit codes: 0 success, 1 domain or
// validation error, 2 resource-cap exhaustion, 3 internal invariant failure.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "wreathlab/wreathlab.hpp"

using namespace wreathlab;
using nlohmann::ordered_json;

namespace {

long long env_cap(long long fallback) {
    const char* v = std::getenv("WREATHLAB_CAP");
    if (!v) return fallback;
    try {
        long long cap = std::stoll(v);
        if (cap <= 0) throw domain_error("WREATHLAB_CAP must be positive");
        return cap;
    } catch (const domain_error&) {
        throw;
    } catch (...) {
        throw domain_error("WREATHLAB_CAP must be an integer");
    }
}

Action load_action(const std::string& spec, long long cap) {
    const std::string prefix = "catalog:houghton_rays:";
    if (spec.rfind(prefix, 0) == 0) {
        int n = std::stoi(spec.substr(prefix.size()));
        if (n < 1) throw domain_error("input files parse against the module schemas: ray count must be positive");
        return CatalogRayAction{n};
    }
    return io::action_from_json(io::load_json_file(spec), cap);
}

void emit(const ordered_json& j, const std::string& format, const std::string& table) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << table;
}

std::string homology_table(int dim, const HomologyGroup& h) {
    return "H_" + std::to_string(dim) + " = " + h.to_string() + "\n";
}

std::string finiteness_label(const FinitenessType& t) {
    std::string s;
    if (t.certified == FinitenessType::kInfinity)
        s = "certified: F_inf\nrefuted: never\n";
    else {
        s = "certified: F_" + std::to_string(t.certified) + "\n";
        if (t.refuted)
            s += "refuted: F_" + std::to_string(*t.refuted) + "\n";
        else
            s += "refuted: unknown\n";
    }
    return s;
}

std::vector<RayPoint> parse_ray_set(const std::string& s) {
    std::vector<RayPoint> pts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ';'))
        if (!item.empty()) pts.push_back(io::ray_point_from_string(item));
    return pts;
}

int run(int argc, char** argv) {
    CLI::App app{"graph-wreath product toolkit"};
    app.require_subcommand(1);

    std::string format = "table";
    app.add_option("--format", format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();

    const long long cap = env_cap(kDefaultElementCap);

    // ---- cliques ----------------------------------------------------------
    auto* cmd_cliques = app.add_subcommand("cliques", "enumerate the p-cliques of a graph");
    std::string cliques_graph;
    int cliques_p = 1;
    cmd_cliques->add_option("--graph", cliques_graph, "graph JSON file")->required();
    cmd_cliques->add_option("--p", cliques_p, "clique cardinality")->required();
    cmd_cliques->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(cliques_graph));
        auto cliques = enumerate_cliques(g, cliques_p);
        ordered_json arr = ordered_json::array();
        std::string table;
        for (const Clique& c : cliques) {
            arr.push_back(io::clique_to_json(g, c));
            std::string line;
            for (int v : c.verts) line += (line.empty() ? "" : " ") + g.name(v);
            table += "(" + line + ")\n";
        }
        table += "count " + std::to_string(cliques.size()) + "\n";
        ordered_json out;
        out["cliques"] = std::move(arr);
        out["count"] = cliques.size();
        emit(out, format, table);
    });

    // ---- flag -------------------------------------------------------------
    auto* cmd_flag = app.add_subcommand("flag", "build the flag complex of a graph");
    std::string flag_graph;
    int flag_cap = 3;
    cmd_flag->add_option("--graph", flag_graph, "graph JSON file")->required();
    cmd_flag->add_option("--cap", flag_cap, "dimension cap")->capture_default_str();
    cmd_flag->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(flag_graph));
        FlagComplex fc(g, flag_cap);
        ordered_json dims = ordered_json::object();
        std::string table;
        for (int m = -1; m <= flag_cap; ++m) {
            ordered_json simp = ordered_json::array();
            for (const Clique& c : fc.simplices(m)) simp.push_back(io::clique_to_json(g, c));
            dims[std::to_string(m)] = std::move(simp);
            table += "dim " + std::to_string(m) + ": " + std::to_string(fc.simplices(m).size()) + "\n";
        }
        ordered_json out;
        out["simplices"] = std::move(dims);
        emit(out, format, table);
    });

    // ---- orbits -----------------------------------------------------------
    auto* cmd_orbits = app.add_subcommand("orbits", "orbit decomposition of the p-cliques under an action");
    std::string orbits_action;
    int orbits_p = 1;
    cmd_orbits->add_option("--action", orbits_action, "action JSON file or catalog:houghton_rays:N")->required();
    cmd_orbits->add_option("--p", orbits_p, "clique cardinality")->required();
    cmd_orbits->callback([&] {
        Action a = load_action(orbits_action, cap);
        CliqueOrbitReport rep = clique_orbits(a, orbits_p);
        const SimpleGraph* graph = nullptr;
        if (const auto* fin = std::get_if<FinitePermAction>(&a)) graph = &fin->graph();
        std::string table;
        if (rep.infinite)
            table += "orbit count: INFINITE\n";
        else {
            table += "orbit count: " + std::to_string(rep.orbit_count) + "\n";
            for (size_t i = 0; i < rep.representatives.size(); ++i) {
                std::string line;
                for (const std::string& l : rep.representatives[i]) line += (line.empty() ? "" : " ") + l;
                std::string stab;
                switch (rep.stabilizers[i].kind) {
                case StabilizerDesc::Kind::Trivial: stab = "trivial"; break;
                case StabilizerDesc::Kind::FiniteSubgroup:
                    stab = "finite subgroup, " + std::to_string(rep.stabilizers[i].generators.size()) + " generator(s)";
                    break;
                case StabilizerDesc::Kind::ShiftSubgroup:
                    stab = std::to_string(rep.stabilizers[i].shift_index) + "Z";
                    break;
                case StabilizerDesc::Kind::CatalogRayStabilizer:
                    stab = "catalog ray stabilizer, type F_" + std::to_string(rep.stabilizers[i].rays - 1);
                    break;
                }
                table += "rep (" + line + ") stabilizer " + stab + "\n";
            }
        }
        emit(io::orbit_report_to_json(rep, graph), format, table);
    });

    // ---- stabilizer -------------------------------------------------------
    auto* cmd_stab = app.add_subcommand("stabilizer", "setwise stabilizer of a clique under an action");
    std::string stab_action, stab_clique;
    cmd_stab->add_option("--action", stab_action, "action JSON file")->required();
    cmd_stab->add_option("--clique", stab_clique, "comma-separated vertex labels")->required();
    cmd_stab->callback([&] {
        Action a = load_action(stab_action, cap);
        std::vector<std::string> labels;
        std::stringstream in(stab_clique);
        std::string item;
        while (std::getline(in, item, ',')) labels.push_back(item);
        StabilizerDesc d;
        const SimpleGraph* graph = nullptr;
        if (const auto* fin = std::get_if<FinitePermAction>(&a)) {
            std::vector<int> verts;
            for (const std::string& l : labels) verts.push_back(fin->graph().index_of(l));
            std::sort(verts.begin(), verts.end());
            d = fin->stabilizer_of(Clique(verts));
            graph = &fin->graph();
        } else if (const auto* shift = std::get_if<PeriodicShiftAction>(&a)) {
            std::vector<ShiftVertex> pts;
            for (const std::string& l : labels) {
                auto at = l.find('@');
                if (at == std::string::npos)
                    throw domain_error("clique is a clique of the action's graph: shift vertices are written name@coordinate");
                std::string tname = l.substr(0, at);
                int tmpl = -1;
                for (size_t t = 0; t < shift->template_vertices().size(); ++t)
                    if (shift->template_vertices()[t] == tname) tmpl = static_cast<int>(t);
                if (tmpl < 0) throw domain_error("clique is a clique of the action's graph: unknown template vertex");
                pts.push_back({tmpl, std::stoll(l.substr(at + 1))});
            }
            d = shift->stabilizer_of(pts);
        } else {
            d.kind = StabilizerDesc::Kind::CatalogRayStabilizer;
            d.rays = std::get<CatalogRayAction>(a).rays;
        }
        std::string table;
        switch (d.kind) {
        case StabilizerDesc::Kind::Trivial: table = "trivial\n"; break;
        case StabilizerDesc::Kind::FiniteSubgroup:
            table = "finite subgroup, " + std::to_string(d.generators.size()) + " generator(s)\n";
            break;
        case StabilizerDesc::Kind::ShiftSubgroup: table = std::to_string(d.shift_index) + "Z\n"; break;
        case StabilizerDesc::Kind::CatalogRayStabilizer:
            table = "catalog ray stabilizer, type F_" + std::to_string(d.rays - 1) + "\n";
            break;
        }
        emit(io::stabilizer_to_json(d, graph), format, table);
    });

    // ---- homology ---------------------------------------------------------
    auto* cmd_hom = app.add_subcommand("homology", "homology of a chain complex file");
    std::string hom_complex;
    int hom_dim = 0;
    cmd_hom->add_option("--complex", hom_complex, "chain complex JSON file")->required();
    cmd_hom->add_option("--dim", hom_dim, "homology degree")->required();
    cmd_hom->callback([&] {
        ChainComplex c = io::chain_complex_from_json(io::load_json_file(hom_complex));
        HomologyGroup h = homology_of(c, hom_dim);
        emit(io::homology_to_json(h), format, homology_table(hom_dim, h));
    });

    // ---- polyprod ---------------------------------------------------------
    auto* cmd_pp = app.add_subcommand("polyprod", "cellular chain complex of a polyhedral product");
    std::string pp_graph, pp_model = "circle";
    int pp_cap = -1;
    cmd_pp->add_option("--graph", pp_graph, "graph JSON file (its flag complex is L)")->required();
    cmd_pp->add_option("--model", pp_model, "built-in model name or model JSON file")->capture_default_str();
    cmd_pp->add_option("--cap", pp_cap, "dimension cap (default: derived from L and the model)");
    cmd_pp->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(pp_graph));
        CellModel x = io::resolve_cell_model(pp_model);
        FlagComplex L(g, std::max(0, g.num_vertices() - 1));
        int effective_cap = pp_cap >= 0 ? pp_cap : default_polyprod_cap(L, x);
        PolyProdComplex pp = build_polyprod_complex(L, x, effective_cap);
        std::string table = "ranks:";
        for (long r : pp.complex.ranks()) table += " " + std::to_string(r);
        table += "\n";
        emit(io::chain_complex_to_json(pp.complex), format, table);
    });

    // ---- raag -------------------------------------------------------------
    auto* cmd_raag = app.add_subcommand("raag", "graph-product-of-circles homology in one degree");
    std::string raag_graph;
    int raag_dim = 0;
    cmd_raag->add_option("--graph", raag_graph, "graph JSON file")->required();
    cmd_raag->add_option("--dim", raag_dim, "homology degree")->required();
    cmd_raag->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(raag_graph));
        HomologyGroup h = raag_homology(g, raag_dim);
        emit(io::homology_to_json(h), format, homology_table(raag_dim, h));
    });

    // ---- star-check -------------------------------------------------------
    auto* cmd_star = app.add_subcommand("star-check", "do all polyhedral-product differentials vanish?");
    std::string star_graph, star_model = "circle";
    int star_cap = -1;
    cmd_star->add_option("--graph", star_graph, "graph JSON file")->required();
    cmd_star->add_option("--model", star_model, "built-in model name or model JSON file")->capture_default_str();
    cmd_star->add_option("--cap", star_cap, "dimension cap");
    cmd_star->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(star_graph));
        CellModel x = io::resolve_cell_model(star_model);
        FlagComplex L(g, std::max(0, g.num_vertices() - 1));
        int effective_cap = star_cap >= 0 ? star_cap : default_polyprod_cap(L, x);
        bool ok = check_star_hypothesis(L, x, effective_cap);
        ordered_json out;
        out["vanishing_differentials"] = ok;
        emit(out, format, std::string(ok ? "true" : "false") + "\n");
    });

    // ---- induced-map ------------------------------------------------------
    auto* cmd_ind = app.add_subcommand("induced-map", "signed permutation matrix on the p-clique basis");
    std::string ind_graph, ind_phi;
    int ind_dim = 1;
    cmd_ind->add_option("--graph", ind_graph, "graph JSON file")->required();
    cmd_ind->add_option("--phi", ind_phi, "automorphism JSON file")->required();
    cmd_ind->add_option("--dim", ind_dim, "clique cardinality")->required();
    cmd_ind->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(ind_graph));
        GraphAutomorphism phi = io::automorphism_from_json(io::load_json_file(ind_phi), g);
        IntMatrix m = induced_clique_map(g, phi, ind_dim);
        std::string table;
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) table += (j ? " " : "") + m(i, j).str();
            table += "\n";
        }
        emit(io::matrix_to_json(m), format, table);
    });

    // ---- wang -------------------------------------------------------------
    auto* cmd_wang = app.add_subcommand("wang", "mapping-torus homology of the twisted graph product");
    std::string wang_graph, wang_phi;
    int wang_dim = 0;
    cmd_wang->add_option("--graph", wang_graph, "graph JSON file")->required();
    cmd_wang->add_option("--phi", wang_phi, "automorphism JSON file")->required();
    cmd_wang->add_option("--dim", wang_dim, "homology degree")->required();
    cmd_wang->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(wang_graph));
        GraphAutomorphism phi = io::automorphism_from_json(io::load_json_file(wang_phi), g);
        HomologyGroup h = mapping_torus_homology(g, phi, wang_dim);
        emit(io::homology_to_json(h), format, homology_table(wang_dim, h));
    });

    // ---- nakaoka ----------------------------------------------------------
    auto* cmd_nak = app.add_subcommand("nakaoka", "collapsed two-term decomposition of the twisted homology");
    std::string nak_graph, nak_phi;
    int nak_dim = 0;
    bool nak_check = false;
    cmd_nak->add_option("--graph", nak_graph, "graph JSON file")->required();
    cmd_nak->add_option("--phi", nak_phi, "automorphism JSON file")->required();
    cmd_nak->add_option("--dim", nak_dim, "homology degree")->required();
    cmd_nak->add_flag("--check", nak_check, "cross-check against the mapping-torus oracle");
    cmd_nak->callback([&] {
        SimpleGraph g = io::graph_from_json(io::load_json_file(nak_graph));
        GraphAutomorphism phi = io::automorphism_from_json(io::load_json_file(nak_phi), g);
        HomologyGroup h = nakaoka_decomposition(g, phi, nak_dim);
        ordered_json out = io::homology_to_json(h);
        std::string table;
        if (nak_check) {
            HomologyGroup oracle = mapping_torus_homology(g, phi, nak_dim);
            bool agree = h == oracle;
            out["oracle_agreement"] = agree;
            table = h.to_string() + ", oracle agreement: " + (agree ? "OK" : "MISMATCH") + "\n";
            if (!agree) throw internal_error("decomposition disagrees with the mapping-torus oracle");
        } else {
            table = homology_table(nak_dim, h);
        }
        emit(out, format, table);
    });

    // ---- present ----------------------------------------------------------
    auto* cmd_present = app.add_subcommand("present", "graph product or graph-wreath presentation");
    std::string present_A, present_graph, present_action, present_H, present_stab;
    cmd_present->add_option("--A", present_A, "presentation JSON file for the vertex group")->required();
    cmd_present->add_option("--graph", present_graph, "graph JSON file (graph product mode)");
    cmd_present->add_option("--action", present_action, "action JSON file (graph-wreath mode)");
    cmd_present->add_option("--H", present_H, "presentation JSON file for the head (graph-wreath mode)");
    cmd_present->add_option("--stab-words", present_stab, "JSON file of stabilizer words per representative");
    cmd_present->callback([&] {
        Presentation A = io::presentation_from_json(io::load_json_file(present_A));
        ordered_json out;
        Presentation result;
        if (!present_graph.empty()) {
            SimpleGraph g = io::graph_from_json(io::load_json_file(present_graph));
            result = graph_product_presentation(g, A);
            out = io::presentation_to_json(result);
            ordered_json prov;
            prov["construction"] = "graph_product";
            out["provenance"] = std::move(prov);
        } else {
            if (present_action.empty() || present_H.empty())
                throw domain_error("input files parse against the module schemas: provide --graph, or --action with --H");
            Action a = load_action(present_action, cap);
            Presentation H = io::presentation_from_json(io::load_json_file(present_H));
            std::map<std::string, std::vector<Word>> stab_words;
            if (!present_stab.empty()) {
                nlohmann::json sj = io::load_json_file(present_stab);
                for (const auto& [vertex, words] : sj.items()) {
                    std::vector<Word> ws;
                    for (const auto& w : words) ws.push_back(io::word_from_json(w, H));
                    stab_words[vertex] = std::move(ws);
                }
            }
            PresentedGroup pg = graph_wreath_presentation(a, A, H, stab_words);
            result = pg.presentation;
            out = io::presented_group_to_json(pg);
        }
        std::string table = "generators:";
        for (const std::string& s : result.generators()) table += " " + s;
        table += "\nrelators: " + std::to_string(result.relators().size()) + "\n";
        emit(out, format, table);
    });

    // ---- abelianize -------------------------------------------------------
    auto* cmd_ab = app.add_subcommand("abelianize", "abelianization of a presentation");
    std::string ab_pres;
    cmd_ab->add_option("--pres", ab_pres, "presentation JSON file")->required();
    cmd_ab->callback([&] {
        Presentation p = io::presentation_from_json(io::load_json_file(ab_pres));
        HomologyGroup h = abelianization(p);
        emit(io::homology_to_json(h), format, h.to_string() + "\n");
    });

    // ---- classify ---------------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify", "finiteness-type verdict for a graph-wreath product");
    std::string cl_A, cl_H, cl_action;
    int cl_n = 1;
    cmd_classify->add_option("--A", cl_A, "catalog:<tag> or presentation JSON file")->required();
    cmd_classify->add_option("--H", cl_H, "catalog:<tag> or presentation JSON file")->required();
    cmd_classify->add_option("--action", cl_action, "action JSON file or catalog:houghton_rays:N")->required();
    cmd_classify->add_option("--n", cl_n, "finiteness level to decide")->required();
    cmd_classify->callback([&] {
        GroupSpec A = io::group_spec_from_string(cl_A);
        GroupSpec H = io::group_spec_from_string(cl_H);
        Action a = load_action(cl_action, cap);
        FinitenessVerdict v = classify(A, H, a, cl_n);
        std::string table = "subject: " + v.subject + "\n" + finiteness_label(v.type);
        for (const std::string& s : v.assumptions) table += "assumption: " + s + "\n";
        for (const TraceEntry& t : v.trace) {
            table += "trace: " + t.rule;
            if (t.level) table += " [n=" + std::to_string(*t.level) + "]";
            if (t.p) table += " [p=" + std::to_string(*t.p) + "]";
            table += " " + t.condition + " -> " + t.outcome + "\n";
        }
        emit(io::verdict_to_json(v), format, table);
    });

    // ---- houghton ---------------------------------------------------------
    auto* cmd_h = app.add_subcommand("houghton", "evaluate or search eventually-translational permutations");
    std::string h_element, h_source, h_target;
    int h_window = 6, h_n = 2;
    long long h_cap = 100000;
    bool h_witness = false;
    cmd_h->add_option("--element", h_element, "element JSON file");
    cmd_h->add_option("--window", h_window, "print the action on positions 1..window")->capture_default_str();
    cmd_h->add_flag("--witness", h_witness, "search for an element mapping --source onto --target");
    cmd_h->add_option("--n", h_n, "ray count for the witness search")->capture_default_str();
    cmd_h->add_option("--source", h_source, "semicolon-separated ray points, e.g. \"1,1;1,2\"");
    cmd_h->add_option("--target", h_target, "semicolon-separated ray points");
    cmd_h->add_option("--cap", h_cap, "witness search cap")->capture_default_str();
    cmd_h->callback([&] {
        if (h_witness) {
            auto witness = transitivity_witness(h_n, parse_ray_set(h_source), parse_ray_set(h_target), h_cap);
            if (!witness) {
                std::cout << "NOT_FOUND\n";
                throw resource_error("witness search cap exhausted");
            }
            std::cout << io::houghton_to_json(*witness).dump(2) << "\n";
            return;
        }
        if (h_element.empty())
            throw domain_error("input files parse against the module schemas: provide --element or --witness");
        HoughtonElement g = io::houghton_from_json(io::load_json_file(h_element));
        std::string table;
        for (int ray = 1; ray <= g.ray_count(); ++ray) {
            for (long long k = 1; k <= h_window; ++k) {
                RayPoint y = g.act({ray, k});
                table += "(" + std::to_string(ray) + "," + std::to_string(k) + ") -> (" +
                         std::to_string(y.ray) + "," + std::to_string(y.pos) + ")\n";
            }
        }
        emit(io::houghton_to_json(g), format, table);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

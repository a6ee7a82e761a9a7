#pragma once

#include "wreathlab/action.hpp"
#include "wreathlab/homology.hpp"

namespace wreathlab {

/// Word in presentation generators; entry +(i+1) is generator i, -(i+1) its
/// inverse.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
    Word out;
    for (int letter : w) {
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

inline Word invert_word(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

/// A finite presentation: generator symbols plus relator words. Relators are
/// freely reduced on construction.
class Presentation {
public:
    Presentation() = default;
    Presentation(std::vector<std::string> generators, std::vector<Word> relators)
        : generators_(std::move(generators)) {
        std::set<std::string> seen;
        for (const std::string& g : generators_)
            if (!seen.insert(g).second)
                throw domain_error("relator symbols drawn from generators: duplicate generator symbol '" + g + "'");
        const int n = static_cast<int>(generators_.size());
        for (Word& w : relators) {
            for (int letter : w) {
                int idx = std::abs(letter) - 1;
                if (letter == 0 || idx >= n)
                    throw domain_error("relator symbols drawn from generators: unknown symbol in relator");
            }
            Word r = free_reduce(w);
            if (!r.empty()) relators_.push_back(std::move(r));
        }
    }

    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<Word>& relators() const { return relators_; }

    int generator_index(const std::string& name) const {
        for (size_t i = 0; i < generators_.size(); ++i)
            if (generators_[i] == name) return static_cast<int>(i);
        throw domain_error("relator symbols drawn from generators: unknown generator '" + name + "'");
    }

private:
    std::vector<std::string> generators_;
    std::vector<Word> relators_;
};

namespace detail {
inline Word commutator(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    Word ia = invert_word(a), ib = invert_word(b);
    w.insert(w.end(), ia.begin(), ia.end());
    w.insert(w.end(), ib.begin(), ib.end());
    return w;
}

inline Word shift_word(const Word& w, int offset) {
    Word out;
    for (int letter : w) out.push_back(letter > 0 ? letter + offset : letter - offset);
    return out;
}

// w * inner * w^-1
inline Word conjugate(const Word& inner, const Word& w) {
    Word out = w;
    out.insert(out.end(), inner.begin(), inner.end());
    Word iw = invert_word(w);
    out.insert(out.end(), iw.begin(), iw.end());
    return out;
}
} // namespace detail

/// Presentation of the graph product with the same group A over every
/// vertex: a copy of A's generators and relators per vertex, plus one
/// commutator relator per edge per pair of generators.
inline Presentation graph_product_presentation(const SimpleGraph& graph, const Presentation& A) {
    std::vector<std::string> gens;
    const int ag = static_cast<int>(A.generators().size());
    for (int v = 0; v < graph.num_vertices(); ++v)
        for (const std::string& g : A.generators()) gens.push_back(g + "_" + graph.name(v));
    std::vector<Word> rels;
    for (int v = 0; v < graph.num_vertices(); ++v)
        for (const Word& r : A.relators()) rels.push_back(detail::shift_word(r, v * ag));
    for (auto [u, v] : graph.edges())
        for (int i = 0; i < ag; ++i)
            for (int j = 0; j < ag; ++j)
                rels.push_back(detail::commutator({u * ag + i + 1}, {v * ag + j + 1}));
    return Presentation(std::move(gens), std::move(rels));
}

/// Provenance of a generated presentation: which construction produced it
/// and which facts it assumes rather than verifies.
struct PresentationProvenance {
    std::string construction; // "graph_product" or "graph_wreath"
    std::vector<std::string> vertex_orbit_reps;
    std::vector<std::vector<std::string>> edge_orbit_reps;
    std::vector<std::string> assumptions;
};

struct PresentedGroup {
    Presentation presentation;
    PresentationProvenance provenance;
};

/// Presentation of the graph-wreath product of A by (H, Gamma): A-generators
/// at one representative per vertex orbit plus H-generators; relators are
/// A-relators at representatives, H-relators, commutation of each
/// representative copy with its vertex stabilizer (given by generating
/// words, verified to fix the representative), and edge-orbit commutators
/// conjugated by connecting words chosen breadth-first in the orbit graph.
/// An infinite edge-orbit count is a refusal: no finite presentation of this
/// shape exists, matching the finite-presentability criterion.
inline PresentedGroup graph_wreath_presentation(
    const Action& action, const Presentation& A, const Presentation& H,
    const std::map<std::string, std::vector<Word>>& stabilizer_words = {}) {
    if (std::holds_alternative<CatalogRayAction>(action))
        throw domain_error("input files parse against the module schemas: catalog actions carry no presentation backend");

    PresentedGroup out;
    out.provenance.construction = "graph_wreath";
    const int ag = static_cast<int>(A.generators().size());
    const int hg = static_cast<int>(H.generators().size());

    // vertex orbit data: representative labels, and per edge-orbit
    // representative the pair (rep_u, word_u, rep_v, word_v)
    struct EdgeDatum {
        int orbit_u; // index into vertex orbit list
        int orbit_v;
        Word word_u; // connecting word: copy at the edge endpoint is w a w^-1
        Word word_v;
        std::vector<std::string> labels;
    };
    std::vector<std::string> rep_labels;
    std::vector<std::vector<Word>> rep_stab_words;
    std::vector<EdgeDatum> edge_data;

    if (const auto* fin = std::get_if<FinitePermAction>(&action)) {
        if (hg != static_cast<int>(fin->generators().size()))
            throw domain_error("stabilizer generating words provided (verified to fix the representative vertex): H presentation generators must correspond to the action generators");
        auto vo = fin->vertex_orbits();
        std::map<int, int> orbit_index;
        for (size_t i = 0; i < vo.reps.size(); ++i) {
            orbit_index[vo.reps[i]] = static_cast<int>(i);
            rep_labels.push_back(fin->graph().name(vo.reps[i]));
        }
        for (int rep : vo.reps) {
            std::string label = fin->graph().name(rep);
            std::vector<Word> words;
            auto it = stabilizer_words.find(label);
            if (it != stabilizer_words.end()) {
                for (const Word& w : it->second) {
                    if (fin->apply_word(w, rep) != rep)
                        throw domain_error("each word must fix the representative vertex under the action");
                    words.push_back(free_reduce(w));
                }
                out.provenance.assumptions.push_back(
                    "supplied words at vertex '" + label + "' are assumed to generate its full stabilizer");
            } else {
                words = fin->schreier_stabilizer_words(rep);
            }
            rep_stab_words.push_back(std::move(words));
        }
        for (auto [a, b] : fin->edge_orbit_reps()) {
            // translate the edge so its first endpoint sits at its orbit representative
            Word wa = vo.word_to[static_cast<size_t>(a)];
            Word inv_wa = invert_word(wa);
            int a0 = vo.rep_of[static_cast<size_t>(a)];
            int b0 = fin->apply_word(inv_wa, b);
            EdgeDatum d;
            d.orbit_u = orbit_index.at(a0);
            d.word_u = {};
            d.orbit_v = orbit_index.at(vo.rep_of[static_cast<size_t>(b0)]);
            d.word_v = free_reduce(vo.word_to[static_cast<size_t>(b0)]);
            d.labels = {fin->graph().name(a), fin->graph().name(b)};
            edge_data.push_back(std::move(d));
        }
    } else {
        const auto& shift = std::get<PeriodicShiftAction>(action);
        if (hg != 1)
            throw domain_error("stabilizer generating words provided (verified to fix the representative vertex): the shift backend takes a one-generator H presentation");
        for (int t = 0; t < shift.template_size(); ++t) {
            rep_labels.push_back(shift.label({t, 0}));
            rep_stab_words.push_back({}); // shift stabilizers are trivial
        }
        auto power_word = [](long long e) {
            Word w;
            for (long long i = 0; i < std::llabs(e); ++i) w.push_back(e > 0 ? 1 : -1);
            return w;
        };
        for (const auto& [key, os] : shift.offsets()) {
            if (os.all_nonzero)
                throw domain_error("infinite edge-orbit count reported by the action: finitely many orbits of vertices and edges are required for a finite presentation");
            auto [u, v] = key;
            for (long long d : os.offsets) {
                EdgeDatum datum;
                if (u == v) {
                    datum.orbit_u = u;
                    datum.orbit_v = v;
                    datum.word_u = {};
                    datum.word_v = power_word(d);
                    datum.labels = {shift.label({u, 0}), shift.label({v, d})};
                } else if (d >= 0) {
                    datum.orbit_u = u;
                    datum.orbit_v = v;
                    datum.word_u = {};
                    datum.word_v = power_word(d);
                    datum.labels = {shift.label({u, 0}), shift.label({v, d})};
                } else {
                    // normalize the representative so its least coordinate is 0
                    datum.orbit_u = u;
                    datum.orbit_v = v;
                    datum.word_u = power_word(-d);
                    datum.word_v = {};
                    datum.labels = {shift.label({u, -d}), shift.label({v, 0})};
                }
                edge_data.push_back(std::move(datum));
            }
        }
    }

    // generators: A-copies at representatives, then H-generators
    std::vector<std::string> gens;
    for (const std::string& label : rep_labels)
        for (const std::string& g : A.generators()) gens.push_back(g + "_" + label);
    for (const std::string& g : H.generators()) gens.push_back(g);
    {
        std::set<std::string> uniq(gens.begin(), gens.end());
        if (uniq.size() != gens.size())
            throw domain_error("relator symbols drawn from generators: generator name collision between A copies and H");
    }
    const int h_base = static_cast<int>(rep_labels.size()) * ag;
    auto a_gen = [&](int orbit, int i) { return orbit * ag + i + 1; };
    auto h_word = [&](const Word& w) { return detail::shift_word(w, h_base); };

    std::vector<Word> rels;
    for (size_t o = 0; o < rep_labels.size(); ++o)
        for (const Word& r : A.relators()) rels.push_back(detail::shift_word(r, static_cast<int>(o) * ag));
    for (const Word& r : H.relators()) rels.push_back(h_word(r));
    for (size_t o = 0; o < rep_labels.size(); ++o)
        for (const Word& w : rep_stab_words[o])
            for (int i = 0; i < ag; ++i)
                rels.push_back(detail::commutator({a_gen(static_cast<int>(o), i)}, h_word(w)));
    for (const EdgeDatum& d : edge_data)
        for (int i = 0; i < ag; ++i)
            for (int j = 0; j < ag; ++j)
                rels.push_back(detail::commutator(
                    detail::conjugate({a_gen(d.orbit_u, i)}, h_word(d.word_u)),
                    detail::conjugate({a_gen(d.orbit_v, j)}, h_word(d.word_v))));

    out.presentation = Presentation(std::move(gens), std::move(rels));
    out.provenance.vertex_orbit_reps = rep_labels;
    for (const EdgeDatum& d : edge_data) out.provenance.edge_orbit_reps.push_back(d.labels);
    return out;
}

/// Abelianization via the Smith normal form of the exponent-sum relation
/// matrix (relators as rows).
inline HomologyGroup abelianization(const Presentation& P) {
    const int g = static_cast<int>(P.generators().size());
    const int r = static_cast<int>(P.relators().size());
    IntMatrix m(r, g);
    for (int i = 0; i < r; ++i)
        for (int letter : P.relators()[static_cast<size_t>(i)]) {
            int idx = std::abs(letter) - 1;
            m(i, idx) += (letter > 0) ? 1 : -1;
        }
    SmithForm snf = smith_normal_form(m);
    HomologyGroup h;
    h.betti = g - snf.rank();
    for (const Int& d : snf.diagonal)
        if (d >= 2) h.torsion.push_back(d);
    return h;
}

} // namespace wreathlab

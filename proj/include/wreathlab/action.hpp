#pragma once

#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <variant>

#include "wreathlab/graph.hpp"

namespace wreathlab {

/// Vertex permutation, perm[v] = image of v.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
    Permutation p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

inline Permutation compose_perm(const Permutation& g, const Permutation& h) {
    // (g o h)(x) = g(h(x))
    Permutation r(h.size());
    for (size_t i = 0; i < h.size(); ++i) r[i] = g[static_cast<size_t>(h[i])];
    return r;
}

inline Permutation invert_perm(const Permutation& g) {
    Permutation r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[static_cast<size_t>(g[i])] = static_cast<int>(i);
    return r;
}

/// Word in action generators; entry +(i+1) is generator i, -(i+1) its inverse.
using GenWord = std::vector<int>;

/// How a clique stabilizer is described in an orbit report.
struct StabilizerDesc {
    enum class Kind { Trivial, FiniteSubgroup, ShiftSubgroup, CatalogRayStabilizer };
    Kind kind = Kind::Trivial;
    std::vector<Permutation> generators; // FiniteSubgroup: non-identity elements
    long long shift_index = 0;           // ShiftSubgroup: the subgroup dZ
    int rays = 0;                        // CatalogRayStabilizer: ambient ray count
};

/// Orbit decomposition of the p-cliques of an acted-on graph.
struct CliqueOrbitReport {
    int p = 0;
    bool infinite = false; // orbit count is INFINITE
    long orbit_count = 0;  // meaningful when !infinite
    std::vector<std::vector<std::string>> representatives; // labeled sorted tuples
    std::vector<StabilizerDesc> stabilizers;               // per representative
};

inline constexpr long long kDefaultElementCap = 10080;

/// A finite group acting on a finite graph by automorphisms, given by
/// generating permutations. The generated group is enumerated by
/// breadth-first closure at construction; exceeding `element_cap` is a
/// resource error, never silence.
class FinitePermAction {
public:
    FinitePermAction(SimpleGraph graph, std::vector<Permutation> generators,
                     long long element_cap = kDefaultElementCap)
        : graph_(std::move(graph)), generators_(std::move(generators)), element_cap_(element_cap) {
        const int n = graph_.num_vertices();
        for (const Permutation& g : generators_) {
            if (static_cast<int>(g.size()) != n)
                throw domain_error("each generator maps edges to edges: permutation size must match vertex count");
            std::vector<bool> seen(static_cast<size_t>(n), false);
            for (int v : g) {
                if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
                    throw domain_error("each generator maps edges to edges: not a bijection of the vertices");
                seen[static_cast<size_t>(v)] = true;
            }
            for (auto [a, b] : graph_.edges())
                if (!graph_.has_edge(g[static_cast<size_t>(a)], g[static_cast<size_t>(b)]))
                    throw domain_error("each generator maps edges to edges: image of an edge is a non-edge");
        }
        enumerate_elements();
    }

    const SimpleGraph& graph() const { return graph_; }
    const std::vector<Permutation>& generators() const { return generators_; }
    const std::vector<Permutation>& elements() const { return elements_; }
    long long element_cap() const { return element_cap_; }

    std::vector<int> apply_to_clique(const Permutation& g, const Clique& c) const {
        std::vector<int> img;
        img.reserve(c.verts.size());
        for (int v : c.verts) img.push_back(g[static_cast<size_t>(v)]);
        std::sort(img.begin(), img.end());
        return img;
    }

    /// Setwise stabilizer of a clique: all non-identity elements fixing it.
    StabilizerDesc stabilizer_of(const Clique& c) const {
        if (!graph_.is_clique(c.verts))
            throw domain_error("clique is a clique of the action's graph: some pair is a non-edge");
        StabilizerDesc d;
        for (const Permutation& g : elements_) {
            if (g == identity_permutation(graph_.num_vertices())) continue;
            if (apply_to_clique(g, c) == c.verts) d.generators.push_back(g);
        }
        d.kind = d.generators.empty() ? StabilizerDesc::Kind::Trivial : StabilizerDesc::Kind::FiniteSubgroup;
        return d;
    }

    CliqueOrbitReport clique_orbits(int p) const {
        if (p < 1) throw domain_error("p >= 1");
        CliqueOrbitReport rep;
        rep.p = p;
        std::vector<Clique> all = enumerate_cliques(graph_, p);
        std::set<std::vector<int>> visited;
        for (const Clique& c : all) {
            if (visited.count(c.verts)) continue;
            // lex iteration order makes c the lex-least member of its orbit
            for (const Permutation& g : elements_) visited.insert(apply_to_clique(g, c));
            rep.orbit_count += 1;
            std::vector<std::string> labels;
            for (int v : c.verts) labels.push_back(graph_.name(v));
            rep.representatives.push_back(std::move(labels));
            rep.stabilizers.push_back(stabilizer_of(c));
        }
        return rep;
    }

    /// Expand a set of orbit representatives back to the full set of images.
    std::set<std::vector<int>> orbit_of(const Clique& c) const {
        std::set<std::vector<int>> out;
        for (const Permutation& g : elements_) out.insert(apply_to_clique(g, c));
        return out;
    }

    struct VertexOrbits {
        std::vector<int> reps;                    // one per orbit, least vertex first
        std::vector<int> rep_of;                  // vertex -> its orbit's representative
        std::vector<GenWord> word_to;             // vertex -> word w with w(rep) = vertex
    };

    VertexOrbits vertex_orbits() const {
        const int n = graph_.num_vertices();
        VertexOrbits vo;
        vo.rep_of.assign(static_cast<size_t>(n), -1);
        vo.word_to.assign(static_cast<size_t>(n), {});
        for (int v = 0; v < n; ++v) {
            if (vo.rep_of[static_cast<size_t>(v)] >= 0) continue;
            vo.reps.push_back(v);
            std::deque<int> queue{v};
            vo.rep_of[static_cast<size_t>(v)] = v;
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                for (size_t gi = 0; gi < generators_.size(); ++gi) {
                    for (int sgn : {+1, -1}) {
                        const Permutation& g =
                            sgn > 0 ? generators_[gi] : invert_perm(generators_[gi]);
                        int y = g[static_cast<size_t>(x)];
                        if (vo.rep_of[static_cast<size_t>(y)] >= 0) continue;
                        vo.rep_of[static_cast<size_t>(y)] = v;
                        GenWord w;
                        w.push_back(sgn * (static_cast<int>(gi) + 1));
                        const GenWord& wx = vo.word_to[static_cast<size_t>(x)];
                        w.insert(w.end(), wx.begin(), wx.end());
                        vo.word_to[static_cast<size_t>(y)] = std::move(w);
                        queue.push_back(y);
                    }
                }
            }
        }
        return vo;
    }

    /// Lex-least representatives of the edge orbits.
    std::vector<std::pair<int, int>> edge_orbit_reps() const {
        std::vector<std::pair<int, int>> reps;
        std::set<std::vector<int>> visited;
        for (auto [a, b] : graph_.edges()) {
            std::vector<int> e{a, b};
            if (visited.count(e)) continue;
            Clique c(e);
            for (const Permutation& g : elements_) visited.insert(apply_to_clique(g, c));
            reps.push_back({a, b});
        }
        return reps;
    }

    /// Evaluate a generator word on a vertex.
    int apply_word(const GenWord& w, int v) const {
        // words act as compositions, leftmost letter applied last
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            int idx = std::abs(*it) - 1;
            const Permutation& g = (*it > 0) ? generators_[static_cast<size_t>(idx)]
                                             : invert_perm(generators_[static_cast<size_t>(idx)]);
            v = g[static_cast<size_t>(v)];
        }
        return v;
    }

    /// Schreier generating words for the stabilizer of a vertex-orbit
    /// representative: w_x g w_{g(x)}^{-1} over orbit points x and generators g.
    std::vector<GenWord> schreier_stabilizer_words(int rep) const {
        VertexOrbits vo = vertex_orbits();
        if (vo.rep_of[static_cast<size_t>(rep)] != rep)
            throw domain_error("stabilizer words are built at vertex-orbit representatives only");
        std::vector<GenWord> words;
        std::set<GenWord> seen;
        for (int x = 0; x < graph_.num_vertices(); ++x) {
            if (vo.rep_of[static_cast<size_t>(x)] != rep) continue;
            for (size_t gi = 0; gi < generators_.size(); ++gi) {
                int gx = generators_[gi][static_cast<size_t>(x)];
                // assemble w_{gx}^{-1} * g * w_x with leftmost letter applied last
                GenWord word;
                const GenWord& wgx = vo.word_to[static_cast<size_t>(gx)];
                for (auto it = wgx.rbegin(); it != wgx.rend(); ++it) word.push_back(-*it);
                word.push_back(static_cast<int>(gi) + 1);
                const GenWord& wx = vo.word_to[static_cast<size_t>(x)];
                word.insert(word.end(), wx.begin(), wx.end());
                // free-reduce and drop empties/duplicates
                GenWord reduced;
                for (int letter : word) {
                    if (!reduced.empty() && reduced.back() == -letter)
                        reduced.pop_back();
                    else
                        reduced.push_back(letter);
                }
                if (reduced.empty()) continue;
                if (apply_word(reduced, rep) != rep)
                    throw internal_error("Schreier word fails to fix its representative");
                if (seen.insert(reduced).second) words.push_back(reduced);
            }
        }
        return words;
    }

private:
    void enumerate_elements() {
        const int n = graph_.num_vertices();
        std::set<Permutation> visited;
        std::deque<Permutation> queue;
        Permutation id = identity_permutation(n);
        visited.insert(id);
        queue.push_back(id);
        elements_.push_back(id);
        while (!queue.empty()) {
            Permutation x = queue.front();
            queue.pop_front();
            for (const Permutation& g : generators_) {
                Permutation y = compose_perm(g, x);
                if (visited.insert(y).second) {
                    if (static_cast<long long>(visited.size()) > element_cap_)
                        throw resource_error("generated group exceeds element_cap");
                    elements_.push_back(y);
                    queue.push_back(y);
                }
            }
        }
    }

    SimpleGraph graph_;
    std::vector<Permutation> generators_;
    long long element_cap_;
    std::vector<Permutation> elements_;
};

/// Vertex of a periodic graph: (template index, integer coordinate).
struct ShiftVertex {
    int tmpl = 0;
    long long coord = 0;
    friend bool operator==(const ShiftVertex& a, const ShiftVertex& b) {
        return a.tmpl == b.tmpl && a.coord == b.coord;
    }
    friend bool operator<(const ShiftVertex& a, const ShiftVertex& b) {
        return std::pair(a.tmpl, a.coord) < std::pair(b.tmpl, b.coord);
    }
};

/// Offsets licensing edges between two template vertices. For distinct
/// template vertices ALL_NONZERO licenses every offset (the endpoints are
/// always distinct); for a self-pair it licenses every nonzero offset.
struct OffsetSet {
    bool all_nonzero = false;
    std::set<long long> offsets; // self-pairs: positive; mixed pairs: any sign
};

/// The shift group Z acting on the periodic graph with vertex set V0 x Z,
/// where (v,i) -> (v,i+1) is the generating automorphism. Edges between
/// (u,i) and (v,j) are licensed by the offset j-i (sign-normalized on
/// self-pairs).
class PeriodicShiftAction {
public:
    PeriodicShiftAction(std::vector<std::string> template_vertices,
                        std::map<std::pair<int, int>, OffsetSet> edge_offsets)
        : template_(std::move(template_vertices)), offsets_(std::move(edge_offsets)) {
        const int k = static_cast<int>(template_.size());
        if (k == 0) throw domain_error("template vertex list must be non-empty");
        for (const auto& [key, os] : offsets_) {
            auto [a, b] = key;
            if (a < 0 || b < 0 || a >= k || b >= k || a > b)
                throw domain_error("offset keys use sorted pair encoding over template vertices");
            if (a == b)
                for (long long d : os.offsets)
                    if (d <= 0) throw domain_error("self-pairs exclude offset 0 and are sign-normalized to positive offsets");
        }
    }

    const std::vector<std::string>& template_vertices() const { return template_; }
    int template_size() const { return static_cast<int>(template_.size()); }
    const std::map<std::pair<int, int>, OffsetSet>& offsets() const { return offsets_; }

    bool has_all_nonzero_pair() const {
        for (const auto& [key, os] : offsets_)
            if (os.all_nonzero) return true;
        return false;
    }

    long long max_finite_span() const {
        long long s = 0;
        for (const auto& [key, os] : offsets_)
            for (long long d : os.offsets) s = std::max(s, std::llabs(d));
        return s;
    }

    bool adjacent(ShiftVertex x, ShiftVertex y) const {
        if (x == y) return false;
        if (x.tmpl > y.tmpl) std::swap(x, y);
        auto it = offsets_.find({x.tmpl, y.tmpl});
        if (it == offsets_.end()) return false;
        const OffsetSet& os = it->second;
        if (x.tmpl == y.tmpl) {
            long long d = std::llabs(y.coord - x.coord);
            return os.all_nonzero ? d != 0 : os.offsets.count(d) > 0;
        }
        long long d = y.coord - x.coord; // coordinate of the larger template vertex minus the smaller
        return os.all_nonzero ? true : os.offsets.count(d) > 0;
    }

    std::string label(ShiftVertex v) const {
        return template_[static_cast<size_t>(v.tmpl)] + "@" + std::to_string(v.coord);
    }

    /// Finite cutout of the periodic graph on coordinates 0..window.
    SimpleGraph window_graph(long long window) const {
        const int k = template_size();
        std::vector<std::string> names;
        std::vector<ShiftVertex> verts;
        for (int t = 0; t < k; ++t)
            for (long long c = 0; c <= window; ++c) {
                verts.push_back({t, c});
                names.push_back(label({t, c}));
            }
        std::vector<std::pair<int, int>> edges;
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = i + 1; j < verts.size(); ++j)
                if (adjacent(verts[i], verts[j]))
                    edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        return SimpleGraph(std::move(names), edges);
    }

    /// Decode a window-graph vertex index back to a ShiftVertex.
    static ShiftVertex window_vertex(int index, long long window) {
        long long span = window + 1;
        return {static_cast<int>(index / span), static_cast<long long>(index % span)};
    }

    CliqueOrbitReport clique_orbits(int p) const {
        if (p < 1) throw domain_error("p >= 1");
        CliqueOrbitReport rep;
        rep.p = p;
        if (p == 1) {
            rep.orbit_count = template_size();
            for (int t = 0; t < template_size(); ++t) {
                rep.representatives.push_back({label({t, 0})});
                rep.stabilizers.push_back(StabilizerDesc{});
            }
            return rep;
        }
        const long long s = max_finite_span();
        if (has_all_nonzero_pair() && has_stretchable_clique(p)) {
            rep.infinite = true;
            return rep;
        }
        // all p-cliques now have rigidly connected slot graphs: the orbit
        // representative with least coordinate 0 lives in the window below
        const long long window = (p - 1) * s;
        SimpleGraph wg = window_graph(window);
        for (const Clique& c : enumerate_cliques(wg, p)) {
            std::vector<ShiftVertex> pts;
            long long mincoord = 0;
            bool first = true;
            for (int v : c.verts) {
                ShiftVertex sv = window_vertex(v, window);
                mincoord = first ? sv.coord : std::min(mincoord, sv.coord);
                first = false;
                pts.push_back(sv);
            }
            if (mincoord != 0) continue; // counted at its 0-based translate
            rep.orbit_count += 1;
            std::vector<std::string> labels;
            for (ShiftVertex sv : pts) labels.push_back(label(sv));
            rep.representatives.push_back(std::move(labels));
            rep.stabilizers.push_back(StabilizerDesc{});
        }
        return rep;
    }

    /// Setwise stabilizer of any clique is trivial: a nonzero shift moves
    /// every finite subset of V0 x Z.
    StabilizerDesc stabilizer_of(const std::vector<ShiftVertex>& clique) const {
        for (size_t i = 0; i < clique.size(); ++i)
            for (size_t j = i + 1; j < clique.size(); ++j)
                if (!adjacent(clique[i], clique[j]))
                    throw domain_error("clique is a clique of the action's graph: some pair is a non-edge");
        return StabilizerDesc{};
    }

private:
    /// Does some p-clique split into two rigid components that can be
    /// translated apart (every cross pair licensed ALL_NONZERO)? If so, the
    /// orbit count is infinite: sliding one component produces cliques of
    /// unbounded diameter.
    bool has_stretchable_clique(int p) const {
        const long long s = max_finite_span();
        const long long witness_window = static_cast<long long>(p) * ((p - 1) * s + 1);
        SimpleGraph wg = window_graph(witness_window);
        for (const Clique& c : enumerate_cliques(wg, p)) {
            std::vector<ShiftVertex> pts;
            for (int v : c.verts) pts.push_back(window_vertex(v, witness_window));
            // rigid slot graph: slots joined when their template pair has a
            // finite offset set
            std::vector<int> comp(pts.size());
            for (size_t i = 0; i < pts.size(); ++i) comp[i] = static_cast<int>(i);
            auto find = [&](int x) {
                while (comp[static_cast<size_t>(x)] != x) x = comp[static_cast<size_t>(x)];
                return x;
            };
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = i + 1; j < pts.size(); ++j) {
                    int a = std::min(pts[i].tmpl, pts[j].tmpl);
                    int b = std::max(pts[i].tmpl, pts[j].tmpl);
                    auto it = offsets_.find({a, b});
                    if (it != offsets_.end() && !it->second.all_nonzero)
                        comp[static_cast<size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
                }
            int root = find(0);
            for (size_t i = 1; i < pts.size(); ++i)
                if (find(static_cast<int>(i)) != root) return true;
        }
        return false;
    }

    std::vector<std::string> template_;
    std::map<std::pair<int, int>, OffsetSet> offsets_;
};

/// Catalog fact source: the complete graph on the n-ray set with its
/// standard eventually-translational head group, which is transitive on
/// finite subsets of every cardinality. Setwise stabilizers of finite
/// subsets have type F_{n-1} and not F_n.
struct CatalogRayAction {
    int rays = 2;

    CliqueOrbitReport clique_orbits(int p) const {
        if (p < 1) throw domain_error("p >= 1");
        CliqueOrbitReport rep;
        rep.p = p;
        rep.orbit_count = 1;
        std::vector<std::string> labels;
        for (int i = 1; i <= p; ++i) labels.push_back("1," + std::to_string(i));
        rep.representatives.push_back(std::move(labels));
        StabilizerDesc d;
        d.kind = StabilizerDesc::Kind::CatalogRayStabilizer;
        d.rays = rays;
        rep.stabilizers.push_back(d);
        return rep;
    }
};

/// Any of the supported action backends.
using Action = std::variant<FinitePermAction, PeriodicShiftAction, CatalogRayAction>;

inline CliqueOrbitReport clique_orbits(const Action& action, int p) {
    return std::visit([&](const auto& a) { return a.clique_orbits(p); }, action);
}

/// True iff the action has finitely many orbits of p-cliques for all
/// 1 <= p <= k+1, i.e. finitely many orbits of cells of the flag complex up
/// to dimension k.
inline bool cocompact_skeleton(const Action& action, int k) {
    for (int p = 1; p <= k + 1; ++p)
        if (clique_orbits(action, p).infinite) return false;
    return true;
}

} // namespace wreathlab

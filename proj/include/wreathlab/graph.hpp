#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wreathlab/errors.hpp"

namespace wreathlab {

/// A clique, stored as a strictly increasing tuple of vertex indices with
/// respect to the ambient graph's vertex order. The empty tuple is the empty
/// clique (the unique (-1)-simplex of a flag complex).
struct Clique {
    std::vector<int> verts;

    Clique() = default;
    explicit Clique(std::vector<int> v) : verts(std::move(v)) {}

    int size() const { return static_cast<int>(verts.size()); }
    bool empty() const { return verts.empty(); }

    friend bool operator==(const Clique& a, const Clique& b) { return a.verts == b.verts; }
    friend bool operator<(const Clique& a, const Clique& b) { return a.verts < b.verts; }
};

/// Simple undirected graph: ordered vertex list, no loops, no multi-edges.
/// Vertices are addressed by index into `names`; the index order is the
/// total order used for clique tuples and orientation conventions.
class SimpleGraph {
public:
    SimpleGraph() = default;

    SimpleGraph(std::vector<std::string> names, const std::vector<std::pair<int, int>>& edge_list)
        : names_(std::move(names)), adj_(names_.size()) {
        const int n = num_vertices();
        for (auto [a, b] : edge_list) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw domain_error("every edge endpoint is a listed vertex");
            if (a == b) throw domain_error("no loops ({v,v} forbidden)");
            if (a > b) std::swap(a, b);
            edges_.insert({a, b});
        }
        for (auto [a, b] : edges_) {
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int num_vertices() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(static_cast<size_t>(v)); }

    int index_of(const std::string& name) const {
        for (int i = 0; i < num_vertices(); ++i)
            if (names_[static_cast<size_t>(i)] == name) return i;
        throw domain_error("every edge endpoint is a listed vertex: unknown vertex '" + name + "'");
    }

    bool has_edge(int a, int b) const {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        return edges_.count({a, b}) > 0;
    }

    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<size_t>(v)); }

    bool is_clique(const std::vector<int>& vs) const {
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                if (!has_edge(vs[i], vs[j])) return false;
        return true;
    }

    friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
        return a.names_ == b.names_ && a.edges_ == b.edges_;
    }

private:
    std::vector<std::string> names_;
    std::set<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// All p-cliques of a finite graph, each sorted, in lexicographic order.
/// p = 0 yields the singleton list holding the empty clique. Enumeration is
/// by ordered extension: a clique is only ever extended by vertices greater
/// than its maximum, so the output is duplicate-free without a dedup pass.
inline std::vector<Clique> enumerate_cliques(const SimpleGraph& graph, int p) {
    if (p < 0) throw domain_error("p = 0 returns the singleton list containing the empty clique; p < 0 is invalid");
    std::vector<Clique> out;
    if (p == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    auto extend = [&](auto&& self, int from) -> void {
        if (static_cast<int>(cur.size()) == p) {
            out.emplace_back(cur);
            return;
        }
        for (int v = from; v < graph.num_vertices(); ++v) {
            bool ok = true;
            for (int u : cur)
                if (!graph.has_edge(u, v)) { ok = false; break; }
            if (!ok) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    extend(extend, 0);
    return out;
}

/// The flag complex spanned by the graph, truncated at dimension `dim_cap`.
/// Dimension m holds exactly the (m+1)-cliques; the empty clique is recorded
/// as the unique (-1)-simplex (it indexes the augmentation term).
class FlagComplex {
public:
    FlagComplex(SimpleGraph base, int dim_cap) : base_(std::move(base)), dim_cap_(dim_cap) {
        if (dim_cap < 0) throw domain_error("dim_cap must be non-negative");
        for (int m = -1; m <= dim_cap; ++m)
            simplices_.push_back(enumerate_cliques(base_, m + 1));
    }

    const SimpleGraph& base() const { return base_; }
    int dim_cap() const { return dim_cap_; }

    /// Simplices of dimension m, for -1 <= m <= dim_cap.
    const std::vector<Clique>& simplices(int m) const {
        if (m < -1 || m > dim_cap_) throw domain_error("dimension out of range of the flag complex");
        return simplices_[static_cast<size_t>(m + 1)];
    }

    bool contains(const Clique& s) const {
        int m = s.size() - 1;
        if (m > dim_cap_) return false;
        const auto& list = simplices(m);
        return std::binary_search(list.begin(), list.end(), s);
    }

    /// Top dimension with at least one simplex (-1 if the graph is empty).
    int top_dim() const {
        for (int m = dim_cap_; m >= -1; --m)
            if (!simplices(m).empty()) return m;
        return -1;
    }

private:
    SimpleGraph base_;
    int dim_cap_;
    std::vector<std::vector<Clique>> simplices_; // index m+1 <-> dimension m
};

/// One signed face term of a simplicial boundary.
struct SignedClique {
    int sign; // +1 or -1
    Clique face;
};

/// Alternating-sign sum of codimension-one faces, sign (-1)^i for omitting
/// the i-th vertex of the sorted tuple. A 0-simplex maps to the empty clique
/// with coefficient +1 (the augmentation); the empty clique maps to the zero
/// sum.
inline std::vector<SignedClique> simplex_boundary(const FlagComplex& complex, const Clique& simplex) {
    if (!complex.contains(simplex)) throw domain_error("simplex belongs to complex: it does not");
    std::vector<SignedClique> out;
    const int k = simplex.size();
    for (int i = 0; i < k; ++i) {
        Clique face;
        face.verts.reserve(static_cast<size_t>(k - 1));
        for (int j = 0; j < k; ++j)
            if (j != i) face.verts.push_back(simplex.verts[static_cast<size_t>(j)]);
        out.push_back({(i % 2 == 0) ? 1 : -1, std::move(face)});
    }
    return out;
}

} // namespace wreathlab

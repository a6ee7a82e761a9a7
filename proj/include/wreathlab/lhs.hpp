#pragma once

#include "wreathlab/action.hpp"
#include "wreathlab/polyprod.hpp"

namespace wreathlab {

/// A graph automorphism of a finite graph: a vertex permutation whose image
/// of every edge is an edge.
class GraphAutomorphism {
public:
    GraphAutomorphism(const SimpleGraph& graph, Permutation perm) : perm_(std::move(perm)) {
        const int n = graph.num_vertices();
        if (static_cast<int>(perm_.size()) != n)
            throw domain_error("image of every edge is an edge: permutation size must match vertex count");
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int v : perm_) {
            if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
                throw domain_error("image of every edge is an edge: not a bijection of the vertices");
            seen[static_cast<size_t>(v)] = true;
        }
        for (auto [a, b] : graph.edges())
            if (!graph.has_edge(perm_[static_cast<size_t>(a)], perm_[static_cast<size_t>(b)]))
                throw domain_error("image of every edge is an edge: some edge maps to a non-edge");
    }

    int operator()(int v) const { return perm_.at(static_cast<size_t>(v)); }
    const Permutation& perm() const { return perm_; }

    GraphAutomorphism composed_with(const SimpleGraph& graph, const GraphAutomorphism& other) const {
        return GraphAutomorphism(graph, compose_perm(perm_, other.perm_));
    }

private:
    Permutation perm_;
};

namespace detail {
// sign of the permutation sorting `tuple` ascending (tuple entries distinct)
inline int sorting_sign(std::vector<int> tuple) {
    int sign = 1;
    for (size_t i = 0; i < tuple.size(); ++i)
        for (size_t j = i + 1; j < tuple.size(); ++j)
            if (tuple[i] > tuple[j]) {
                std::swap(tuple[i], tuple[j]);
                sign = -sign;
            }
    return sign;
}
} // namespace detail

/// The signed permutation matrix describing the automorphism's action on the
/// free abelian group on the sorted p-cliques: a clique maps to its sorted
/// image with the sign of the sorting permutation.
inline IntMatrix induced_clique_map(const SimpleGraph& graph, const GraphAutomorphism& phi, int p) {
    std::vector<Clique> cliques = enumerate_cliques(graph, p);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < cliques.size(); ++i) index[cliques[i].verts] = static_cast<int>(i);
    IntMatrix m(static_cast<int>(cliques.size()), static_cast<int>(cliques.size()));
    for (size_t col = 0; col < cliques.size(); ++col) {
        std::vector<int> image;
        for (int v : cliques[col].verts) image.push_back(phi(v));
        int sign = detail::sorting_sign(image);
        std::sort(image.begin(), image.end());
        auto it = index.find(image);
        if (it == index.end()) throw internal_error("automorphism image of a clique is not a clique");
        m(it->second, static_cast<int>(col)) = sign;
    }
    return m;
}

/// The algebraic mapping torus of the chain self-map induced by `phi` on the
/// circle-model polyhedral product complex: chain groups C_p + C_{p-1} with
/// boundary (a, b) -> (da + (-1)^p (phi# - id) b, -db).
inline ChainComplex mapping_torus_complex(const SimpleGraph& graph, const GraphAutomorphism& phi, int top) {
    // circle-model chain group in degree j has the j-cliques as basis and
    // zero differentials, so phi# equals the induced signed clique map
    std::vector<long> base_ranks;
    std::vector<IntMatrix> phi_maps;
    for (int j = 0; j <= top; ++j) {
        IntMatrix m = induced_clique_map(graph, phi, j);
        base_ranks.push_back(m.rows());
        phi_maps.push_back(std::move(m));
    }
    std::vector<long> ranks;
    for (int pdeg = 0; pdeg <= top + 1; ++pdeg) {
        long r = (pdeg <= top ? base_ranks[static_cast<size_t>(pdeg)] : 0) +
                 (pdeg >= 1 ? base_ranks[static_cast<size_t>(pdeg - 1)] : 0);
        ranks.push_back(r);
    }
    std::map<int, IntMatrix> boundaries;
    for (int pdeg = 1; pdeg <= top + 1; ++pdeg) {
        const long ca = pdeg <= top ? base_ranks[static_cast<size_t>(pdeg)] : 0;     // C_p block
        const long cb = base_ranks[static_cast<size_t>(pdeg - 1)];                   // C_{p-1} block
        const long ra = base_ranks[static_cast<size_t>(pdeg - 1)];                   // C_{p-1} rows
        IntMatrix bd(static_cast<int>(ranks[static_cast<size_t>(pdeg - 1)]), static_cast<int>(ranks[static_cast<size_t>(pdeg)]));
        // base differentials vanish; only (-1)^p (phi - id) on the b block
        const IntMatrix& f = phi_maps[static_cast<size_t>(pdeg - 1)];
        const int sgn = (pdeg % 2 == 0) ? 1 : -1;
        for (long i = 0; i < ra; ++i)
            for (long j = 0; j < cb; ++j) {
                Int v = f(static_cast<int>(i), static_cast<int>(j)) - (i == j ? 1 : 0);
                bd(static_cast<int>(i), static_cast<int>(ca + j)) = sgn * v;
            }
        boundaries[pdeg] = std::move(bd);
    }
    return ChainComplex(std::move(ranks), std::move(boundaries));
}

/// Homology of the mapping torus in degree p, computed by Smith normal form
/// on the assembled two-row complex. Independent of (and cross-checked
/// against) the Tor decomposition below.
inline HomologyGroup mapping_torus_homology(const SimpleGraph& graph, const GraphAutomorphism& phi, int p) {
    if (p < 0) throw domain_error("homology degree must be non-negative");
    ChainComplex torus = mapping_torus_complex(graph, phi, p + 1);
    return homology_of(torus, p);
}

namespace detail {
inline HomologyGroup cokernel(const IntMatrix& m) {
    SmithForm snf = smith_normal_form(m);
    HomologyGroup h;
    h.betti = m.rows() - snf.rank();
    for (const Int& d : snf.diagonal)
        if (d >= 2) h.torsion.push_back(d);
    return h;
}
inline HomologyGroup kernel(const IntMatrix& m) {
    HomologyGroup h;
    h.betti = m.cols() - smith_normal_form(m).rank();
    return h;
}
} // namespace detail

/// The collapsed two-term decomposition of H_p of the extension of the graph
/// product base by the infinite cyclic group acting through `phi`: over the
/// Laurent ring of Z, Tor_0 is the cokernel and Tor_1 the kernel of
/// (phi_* - 1) on clique homology, and
/// H_p = coker(phi_* - 1 on H_p(B)) + ker(phi_* - 1 on H_{p-1}(B)).
inline HomologyGroup nakaoka_decomposition(const SimpleGraph& graph, const GraphAutomorphism& phi, int p) {
    if (p < 0) throw domain_error("homology degree must be non-negative");
    IntMatrix mp = induced_clique_map(graph, phi, p);
    IntMatrix fp = mp - IntMatrix::identity(mp.rows());
    HomologyGroup tor0 = detail::cokernel(fp);
    HomologyGroup tor1;
    if (p >= 1) {
        IntMatrix mq = induced_clique_map(graph, phi, p - 1);
        tor1 = detail::kernel(mq - IntMatrix::identity(mq.rows()));
    }
    return tor0 + tor1;
}

} // namespace wreathlab

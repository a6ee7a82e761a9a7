#pragma once

#include "wreathlab/graph.hpp"
#include "wreathlab/homology.hpp"

namespace wreathlab {

/// Cellular model of a pointed space: exactly one 0-cell (the basepoint) and
/// finitely many cells in each positive dimension, with integer boundary
/// matrices satisfying dd = 0.
class CellModel {
public:
    CellModel(std::vector<long> cells_per_dim, std::map<int, IntMatrix> boundaries)
        : complex_(std::move(cells_per_dim), std::move(boundaries)) {
        if (complex_.rank(0) != 1)
            throw domain_error("X with more than one 0-cell: the model must have a single 0-cell");
    }

    const ChainComplex& complex() const { return complex_; }
    int top_dim() const { return complex_.top_degree(); }
    long cells(int d) const { return complex_.rank(d); }

    /// Boundary coefficient of (d-1)-cell `row` in the boundary of d-cell `col`.
    Int boundary_coeff(int d, int row, int col) const {
        return complex_.boundary(d)(row, col);
    }

    // Built-in models.
    static CellModel circle() {
        return CellModel({1, 1}, {{1, IntMatrix(1, 1)}});
    }
    static CellModel wedge2() {
        return CellModel({1, 2}, {{1, IntMatrix(1, 2)}});
    }
    static CellModel projective_plane() {
        IntMatrix d2(1, 1);
        d2(0, 0) = 2;
        return CellModel({1, 1, 1}, {{1, IntMatrix(1, 1)}, {2, d2}});
    }
    static CellModel torus() {
        return CellModel({1, 2, 1}, {{1, IntMatrix(1, 2)}, {2, IntMatrix(2, 1)}});
    }

private:
    ChainComplex complex_;
};

/// A cell of the polyhedral product X^L: a support clique of L together with
/// a positive-dimension cell of X at each support vertex. The empty support
/// is the basepoint cell. Cells are compared lexicographically by
/// (support, assignment).
struct PolyCell {
    Clique support;
    std::vector<std::pair<int, int>> assignment; // (cell dimension, cell index) per support vertex

    int dimension() const {
        int d = 0;
        for (auto [dim, idx] : assignment) d += dim;
        return d;
    }

    friend bool operator==(const PolyCell& a, const PolyCell& b) {
        return a.support == b.support && a.assignment == b.assignment;
    }
    friend bool operator<(const PolyCell& a, const PolyCell& b) {
        if (a.support.verts != b.support.verts) return a.support.verts < b.support.verts;
        return a.assignment < b.assignment;
    }
};

/// Cellular chain complex of the polyhedral product X^L up to dimension
/// `dim_cap`, together with its cell lists.
struct PolyProdComplex {
    std::vector<std::vector<PolyCell>> cells; // per dimension 0..dim_cap
    ChainComplex complex;
};

inline int default_polyprod_cap(const FlagComplex& L, const CellModel& X) {
    int cap = std::max(0, L.top_dim()) + X.top_dim();
    return std::min(cap, 6);
}

/// Build the cellular chain complex of X^L. The boundary follows the graded
/// Leibniz rule: differentiate one coordinate at a time, with sign
/// (-1)^(sum of the dimensions of earlier coordinates); a boundary term that
/// lands on the 0-cell drops that vertex from the support (subsets of
/// cliques are cliques, so the support stays in L).
inline PolyProdComplex build_polyprod_complex(const FlagComplex& L, const CellModel& X, int dim_cap) {
    if (dim_cap < 0) throw domain_error("dim_cap must be non-negative");

    // enumerate positive-dimension cells of X once
    std::vector<std::pair<int, int>> pos_cells; // (dim, index)
    for (int d = 1; d <= X.top_dim(); ++d)
        for (int i = 0; i < X.cells(d); ++i) pos_cells.push_back({d, i});

    std::vector<std::vector<PolyCell>> cells(static_cast<size_t>(dim_cap) + 1);
    for (int m = -1; m <= L.dim_cap(); ++m) {
        for (const Clique& sigma : L.simplices(m)) {
            const int k = sigma.size();
            std::vector<std::pair<int, int>> assign;
            auto recurse = [&](auto&& self, int pos, int dim_so_far) -> void {
                if (dim_so_far > dim_cap) return;
                if (pos == k) {
                    PolyCell pc{sigma, assign};
                    cells[static_cast<size_t>(dim_so_far)].push_back(std::move(pc));
                    return;
                }
                for (auto cell : pos_cells) {
                    assign.push_back(cell);
                    self(self, pos + 1, dim_so_far + cell.first);
                    assign.pop_back();
                }
            };
            recurse(recurse, 0, 0);
        }
    }
    for (auto& level : cells) std::sort(level.begin(), level.end());

    std::vector<std::map<PolyCell, int>> index(static_cast<size_t>(dim_cap) + 1);
    for (int d = 0; d <= dim_cap; ++d)
        for (size_t i = 0; i < cells[static_cast<size_t>(d)].size(); ++i)
            index[static_cast<size_t>(d)][cells[static_cast<size_t>(d)][i]] = static_cast<int>(i);

    std::vector<long> ranks;
    for (int d = 0; d <= dim_cap; ++d) ranks.push_back(static_cast<long>(cells[static_cast<size_t>(d)].size()));

    std::map<int, IntMatrix> boundaries;
    for (int d = 1; d <= dim_cap; ++d) {
        IntMatrix bd(static_cast<int>(ranks[static_cast<size_t>(d - 1)]), static_cast<int>(ranks[static_cast<size_t>(d)]));
        for (size_t ci = 0; ci < cells[static_cast<size_t>(d)].size(); ++ci) {
            const PolyCell& pc = cells[static_cast<size_t>(d)][ci];
            int prefix_parity = 0;
            for (size_t slot = 0; slot < pc.assignment.size(); ++slot) {
                auto [cdim, cidx] = pc.assignment[slot];
                const int sign = (prefix_parity % 2 == 0) ? 1 : -1;
                if (cdim >= 2) {
                    // terms keep the support and replace the slot's cell
                    for (int e = 0; e < X.cells(cdim - 1); ++e) {
                        Int coeff = X.boundary_coeff(cdim, e, cidx);
                        if (coeff == 0) continue;
                        PolyCell face = pc;
                        face.assignment[slot] = {cdim - 1, e};
                        bd(index[static_cast<size_t>(d - 1)].at(face), static_cast<int>(ci)) += sign * coeff;
                    }
                } else {
                    // dimension-1 cell: its boundary is a multiple of the
                    // basepoint, so the vertex leaves the support
                    Int coeff = X.boundary_coeff(1, 0, cidx);
                    if (coeff != 0) {
                        PolyCell face;
                        face.support.verts = pc.support.verts;
                        face.support.verts.erase(face.support.verts.begin() + static_cast<long>(slot));
                        face.assignment = pc.assignment;
                        face.assignment.erase(face.assignment.begin() + static_cast<long>(slot));
                        bd(index[static_cast<size_t>(d - 1)].at(face), static_cast<int>(ci)) += sign * coeff;
                    }
                }
                prefix_parity += cdim;
            }
        }
        boundaries[d] = std::move(bd);
    }

    try {
        return PolyProdComplex{std::move(cells), ChainComplex(std::move(ranks), std::move(boundaries))};
    } catch (const domain_error& e) {
        throw internal_error(std::string("polyhedral product chain complex invalid: ") + e.what());
    }
}

/// Homology of the circle-model polyhedral product over the flag complex of
/// a finite graph. The result is always free abelian of rank equal to the
/// number of p-cliques (the empty clique counts in degree 0).
inline HomologyGroup raag_homology(const SimpleGraph& graph, int p) {
    if (p < 0) throw domain_error("homology degree must be non-negative");
    FlagComplex L(graph, p + 1);
    PolyProdComplex pp = build_polyprod_complex(L, CellModel::circle(), p + 1);
    return homology_of(pp.complex, p);
}

/// Chain-level witness of the vanishing-differential hypothesis: true iff
/// every boundary matrix of the polyhedral product complex is zero.
inline bool check_star_hypothesis(const FlagComplex& L, const CellModel& X, int dim_cap) {
    PolyProdComplex pp = build_polyprod_complex(L, X, dim_cap);
    for (const auto& [d, m] : pp.complex.stored_boundaries())
        if (!m.is_zero()) return false;
    return true;
}

} // namespace wreathlab

#pragma once

#include <map>
#include <sstream>
#include <string>

#include "wreathlab/snf.hpp"

namespace wreathlab {

/// A finitely generated abelian group in canonical form: free rank plus
/// torsion coefficients d >= 2 in divisibility order (d_i | d_{i+1}).
/// Equality of groups is literal structural equality.
struct HomologyGroup {
    long betti = 0;
    std::vector<Int> torsion;

    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.betti == b.betti && a.torsion == b.torsion;
    }

    bool is_zero() const { return betti == 0 && torsion.empty(); }

    /// Renormalize an arbitrary multiset of torsion coefficients into
    /// divisibility order (Smith form of the corresponding diagonal matrix).
    static std::vector<Int> canonical_torsion(const std::vector<Int>& coeffs) {
        std::vector<Int> kept;
        for (const Int& d : coeffs) {
            if (d < 0) throw domain_error("torsion entries in divisibility order: coefficients must be positive");
            if (d >= 2) kept.push_back(d);
            // d == 1 contributes nothing; d == 0 is a free summand, not torsion
            if (d == 0) throw domain_error("torsion entries must be nonzero");
        }
        const int n = static_cast<int>(kept.size());
        IntMatrix diag(n, n);
        for (int i = 0; i < n; ++i) diag(i, i) = kept[static_cast<size_t>(i)];
        std::vector<Int> out;
        for (const Int& d : smith_normal_form(diag).diagonal)
            if (d >= 2) out.push_back(d);
        return out;
    }

    /// Direct sum, renormalized to canonical form.
    friend HomologyGroup operator+(const HomologyGroup& a, const HomologyGroup& b) {
        HomologyGroup s;
        s.betti = a.betti + b.betti;
        std::vector<Int> all = a.torsion;
        all.insert(all.end(), b.torsion.begin(), b.torsion.end());
        s.torsion = canonical_torsion(all);
        return s;
    }

    /// "0", "Z", "Z^2", "Z + Z/2", ...
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        auto sep = [&] {
            if (!first) os << " + ";
            first = false;
        };
        if (betti == 1) {
            sep();
            os << "Z";
        } else if (betti > 1) {
            sep();
            os << "Z^" << betti;
        }
        for (const Int& d : torsion) {
            sep();
            os << "Z/" << d;
        }
        if (first) os << "0";
        return os.str();
    }
};

/// Chain complex of free abelian groups in degrees 0..top, given by the
/// boundary matrices d_p : C_p -> C_{p-1} (rows indexed by degree-(p-1)
/// cells). d_p o d_{p+1} = 0 is verified at construction.
class ChainComplex {
public:
    ChainComplex(std::vector<long> ranks, std::map<int, IntMatrix> boundaries)
        : ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {
        const int top = top_degree();
        for (int p = 1; p <= top; ++p) {
            const IntMatrix& d = boundary(p);
            if (d.rows() != rank(p - 1) || d.cols() != rank(p))
                throw domain_error("dimensions consistent: boundary matrix shape must match chain ranks");
        }
        for (const auto& [p, d] : boundaries_) {
            if (p < 1 || p > top) throw domain_error("dimensions consistent: boundary degree out of range");
            (void)d;
        }
        for (int p = 1; p + 1 <= top; ++p) {
            IntMatrix dd = boundary(p) * boundary(p + 1);
            if (!dd.is_zero()) throw internal_error("dd = 0 violated at construction of chain complex");
        }
    }

    int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }

    long rank(int p) const {
        if (p < 0 || p > top_degree()) return 0;
        return ranks_[static_cast<size_t>(p)];
    }
    const std::vector<long>& ranks() const { return ranks_; }

    /// Boundary d_p; degrees with no stored matrix (including p = 0 and
    /// p = top+1) are the zero map of the appropriate shape.
    IntMatrix boundary(int p) const {
        auto it = boundaries_.find(p);
        if (it != boundaries_.end()) return it->second;
        return IntMatrix(static_cast<int>(rank(p - 1)), static_cast<int>(rank(p)));
    }

    const std::map<int, IntMatrix>& stored_boundaries() const { return boundaries_; }

    long euler_characteristic() const {
        long chi = 0;
        for (int p = 0; p <= top_degree(); ++p) chi += (p % 2 == 0 ? 1 : -1) * rank(p);
        return chi;
    }

private:
    std::vector<long> ranks_;
    std::map<int, IntMatrix> boundaries_;
};

/// H_p = ker d_p / im d_{p+1}, in canonical form via Smith normal form:
/// the Betti number is rank C_p - rank d_p - rank d_{p+1}, and the torsion
/// coefficients are the invariant factors of d_{p+1} exceeding 1.
inline HomologyGroup homology_of(const ChainComplex& complex, int p) {
    if (p < 0 || p > complex.top_degree())
        throw domain_error("p and p+1 within complex range: degree out of range");
    SmithForm below = smith_normal_form(complex.boundary(p));
    SmithForm above = smith_normal_form(complex.boundary(p + 1));
    HomologyGroup h;
    h.betti = complex.rank(p) - below.rank() - above.rank();
    if (h.betti < 0) throw internal_error("negative Betti number: boundary maps do not compose to zero");
    for (const Int& d : above.diagonal)
        if (d >= 2) h.torsion.push_back(d);
    return h;
}

} // namespace wreathlab

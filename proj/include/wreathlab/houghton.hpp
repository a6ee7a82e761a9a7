#pragma once

#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wreathlab/errors.hpp"

namespace wreathlab {

/// A point of the n-ray set: ray in 1..n, position a positive integer.
struct RayPoint {
    int ray = 1;
    long long pos = 1;
    friend bool operator==(const RayPoint& a, const RayPoint& b) { return a.ray == b.ray && a.pos == b.pos; }
    friend bool operator<(const RayPoint& a, const RayPoint& b) {
        return std::pair(a.ray, a.pos) < std::pair(b.ray, b.pos);
    }
};

/// An eventually-translational permutation of the n-ray set: translation by
/// t_i far out on ray i (with sum t_i = 0) plus a finite correction table.
/// Global bijectivity is verified on a window derived from the element data;
/// given the translation structure, windowed bijectivity is equivalent to
/// global bijectivity.
class HoughtonElement {
public:
    HoughtonElement(int ray_count, std::vector<long long> translations,
                    std::map<RayPoint, RayPoint> correction)
        : n_(ray_count), t_(std::move(translations)), corr_(std::move(correction)) {
        if (n_ < 1) throw domain_error("within declared ray count: ray count must be at least 1");
        if (static_cast<int>(t_.size()) != n_)
            throw domain_error("translations: integer vector t of length n required");
        long long sum = 0;
        for (long long x : t_) sum += x;
        if (sum != 0) throw domain_error("sum of translations must be 0");
        std::set<RayPoint> images;
        for (const auto& [from, to] : corr_) {
            check_point(from);
            check_point(to);
            if (!images.insert(to).second)
                throw domain_error("correction must be a partial bijection: repeated image point");
        }
        verify_bijective_on_window();
    }

    static HoughtonElement identity(int ray_count) {
        return HoughtonElement(ray_count, std::vector<long long>(static_cast<size_t>(ray_count), 0), {});
    }

    /// The standard generator moving ray `from` down by one and ray `to` up
    /// by one, with the single correction (from,1) -> (to,1).
    static HoughtonElement generator(int ray_count, int from, int to) {
        if (from == to || from < 1 || to < 1 || from > ray_count || to > ray_count)
            throw domain_error("within declared ray count: generator rays must be distinct and in range");
        std::vector<long long> t(static_cast<size_t>(ray_count), 0);
        t[static_cast<size_t>(from - 1)] = -1;
        t[static_cast<size_t>(to - 1)] = 1;
        return HoughtonElement(ray_count, std::move(t), {{{from, 1}, {to, 1}}});
    }

    int ray_count() const { return n_; }
    const std::vector<long long>& translations() const { return t_; }
    const std::map<RayPoint, RayPoint>& correction() const { return corr_; }

    bool is_identity() const {
        for (long long x : t_)
            if (x != 0) return false;
        return corr_.empty();
    }

    RayPoint act(RayPoint x) const {
        check_point(x);
        auto it = corr_.find(x);
        if (it != corr_.end()) return it->second;
        long long shifted = x.pos + t_[static_cast<size_t>(x.ray - 1)];
        if (shifted < 1) throw internal_error("translation left the ray set outside the correction domain");
        return {x.ray, shifted};
    }

    long long correction_span() const {
        long long s = 0;
        for (const auto& [from, to] : corr_) s = std::max({s, from.pos, to.pos});
        return s;
    }

    long long max_translation() const {
        long long m = 0;
        for (long long x : t_) m = std::max(m, std::llabs(x));
        return m;
    }

    friend bool operator==(const HoughtonElement& a, const HoughtonElement& b) {
        return a.n_ == b.n_ && a.t_ == b.t_ && a.corr_ == b.corr_;
    }

    /// g.composed_with(h) applies h first: (g o h)(x) = g(h(x)).
    /// Translations add; the correction is recomputed on the union window
    /// and pruned to genuinely non-translational points.
    HoughtonElement composed_with(const HoughtonElement& h) const {
        if (n_ != h.n_) throw domain_error("equal ray_count required to compose");
        std::vector<long long> t_sum(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i)
            t_sum[static_cast<size_t>(i)] = t_[static_cast<size_t>(i)] + h.t_[static_cast<size_t>(i)];
        const long long window =
            std::max(h.correction_span(), correction_span() + h.max_translation()) + 2;
        std::map<RayPoint, RayPoint> corr;
        for (int ray = 1; ray <= n_; ++ray)
            for (long long k = 1; k <= window; ++k) {
                RayPoint x{ray, k};
                RayPoint y = act(h.act(x));
                long long translated = k + t_sum[static_cast<size_t>(ray - 1)];
                if (translated < 1 || y != RayPoint{ray, translated}) corr[x] = y;
            }
        try {
            return HoughtonElement(n_, std::move(t_sum), std::move(corr));
        } catch (const domain_error& e) {
            throw internal_error(std::string("composition of valid elements failed validation: ") + e.what());
        }
    }

    HoughtonElement inverse() const {
        std::vector<long long> t_inv(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) t_inv[static_cast<size_t>(i)] = -t_[static_cast<size_t>(i)];
        const long long window = correction_span() + max_translation() + 2;
        std::map<RayPoint, RayPoint> corr;
        for (int ray = 1; ray <= n_; ++ray)
            for (long long k = 1; k <= window; ++k) {
                RayPoint x{ray, k};
                RayPoint y = act(x);
                long long translated = y.pos + t_inv[static_cast<size_t>(y.ray - 1)];
                if (translated < 1 || RayPoint{y.ray, translated} != x) corr[y] = x;
            }
        try {
            return HoughtonElement(n_, std::move(t_inv), std::move(corr));
        } catch (const domain_error& e) {
            throw internal_error(std::string("inverse of a valid element failed validation: ") + e.what());
        }
    }

private:
    void check_point(const RayPoint& p) const {
        if (p.ray < 1 || p.ray > n_ || p.pos < 1)
            throw domain_error("within declared ray count: point outside the ray set");
    }

    void verify_bijective_on_window() const {
        const long long w = correction_span() + max_translation() + 2;
        const long long deep = w + max_translation();
        std::set<RayPoint> images;
        for (int ray = 1; ray <= n_; ++ray)
            for (long long k = 1; k <= deep; ++k) {
                RayPoint x{ray, k};
                RayPoint y;
                auto it = corr_.find(x);
                if (it != corr_.end()) {
                    y = it->second;
                } else {
                    long long shifted = k + t_[static_cast<size_t>(ray - 1)];
                    if (shifted < 1)
                        throw domain_error("the global map is a bijection of R_n: a point is translated off its ray without a correction entry");
                    y = {ray, shifted};
                }
                if (!images.insert(y).second)
                    throw domain_error("the global map is a bijection of R_n: two points share an image");
            }
        for (int ray = 1; ray <= n_; ++ray)
            for (long long k = 1; k <= w; ++k)
                if (!images.count({ray, k}))
                    throw domain_error("the global map is a bijection of R_n: a window point has no preimage");
    }

    int n_;
    std::vector<long long> t_;
    std::map<RayPoint, RayPoint> corr_;
};

/// Apply an element to a finite set, keeping the sorted-set normal form.
inline std::vector<RayPoint> apply_to_set(const HoughtonElement& g, const std::vector<RayPoint>& pts) {
    std::vector<RayPoint> out;
    out.reserve(pts.size());
    for (const RayPoint& p : pts) out.push_back(g.act(p));
    std::sort(out.begin(), out.end());
    return out;
}

/// Bounded breadth-first search over products of the standard generators for
/// an element mapping `source` onto `target` setwise. An empty result only
/// signals cap exhaustion, never nonexistence.
inline std::optional<HoughtonElement> transitivity_witness(int ray_count,
                                                           std::vector<RayPoint> source,
                                                           std::vector<RayPoint> target,
                                                           long long search_cap) {
    if (search_cap <= 0) throw domain_error("cap <= 0: search cap must be positive");
    if (source.size() != target.size()) throw domain_error("|source| = |target| required");
    if (ray_count < 2) throw domain_error("n >= 2 required for the generator search");
    std::sort(source.begin(), source.end());
    source.erase(std::unique(source.begin(), source.end()), source.end());
    std::sort(target.begin(), target.end());
    target.erase(std::unique(target.begin(), target.end()), target.end());
    if (source.size() != target.size()) throw domain_error("|source| = |target| required");

    std::vector<HoughtonElement> gens;
    for (int i = 1; i <= ray_count; ++i)
        for (int j = 1; j <= ray_count; ++j)
            if (i != j) gens.push_back(HoughtonElement::generator(ray_count, i, j));

    if (source == target) return HoughtonElement::identity(ray_count);

    std::map<std::vector<RayPoint>, std::pair<std::vector<RayPoint>, int>> parent; // state -> (prev, gen idx)
    std::deque<std::vector<RayPoint>> queue{source};
    parent[source] = {source, -1};
    long long explored = 0;
    while (!queue.empty()) {
        std::vector<RayPoint> state = queue.front();
        queue.pop_front();
        if (++explored > search_cap) return std::nullopt;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            std::vector<RayPoint> next = apply_to_set(gens[gi], state);
            if (parent.count(next)) continue;
            parent[next] = {state, static_cast<int>(gi)};
            if (next == target) {
                // rebuild the word, most recent generator applied last
                std::vector<int> word;
                std::vector<RayPoint> cur = next;
                while (parent.at(cur).second >= 0) {
                    word.push_back(parent.at(cur).second);
                    cur = parent.at(cur).first;
                }
                HoughtonElement g = HoughtonElement::identity(ray_count);
                for (int idx : word) g = g.composed_with(gens[static_cast<size_t>(idx)]);
                // word is most-recent-first, and (g o h) applies h first, so
                // folding left composes in application order
                return g;
            }
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

} // namespace wreathlab

#pragma once

#include <limits>
#include <optional>

#include "wreathlab/action.hpp"
#include "wreathlab/presentation.hpp"

namespace wreathlab {

/// A certified/refuted interval for the finiteness properties F_n: F_0
/// always holds, F_n implies F_{n-1}, so knowledge about a group is a pair
/// (max certified level, least refuted level).
struct FinitenessType {
    static constexpr int kInfinity = std::numeric_limits<int>::max();

    int certified = 0;          // kInfinity means type F_infinity
    std::optional<int> refuted; // least n with F_n disproved; disengaged = no refutation known

    void validate() const {
        if (certified < 0) throw domain_error("certified < refuted when both finite: certified level must be non-negative");
        if (refuted) {
            if (*refuted < 1) throw domain_error("certified < refuted when both finite: refuted level must be positive");
            if (certified != kInfinity && certified >= *refuted)
                throw domain_error("certified < refuted when both finite");
            if (certified == kInfinity)
                throw domain_error("certified < refuted when both finite: F_infinity excludes a refuted level");
        }
    }

    bool certifies(int n) const { return certified == kInfinity || certified >= n; }
    bool refutes(int n) const { return refuted && *refuted <= n; }

    friend bool operator==(const FinitenessType& a, const FinitenessType& b) {
        return a.certified == b.certified && a.refuted == b.refuted;
    }
};

enum class Tri { Yes, No, Unknown };

/// A group given either by a catalog tag with built-in finiteness facts or
/// by a finite presentation with a user-asserted finiteness type. Assertions
/// are flagged and propagate into every verdict trace as assumptions.
class GroupSpec {
public:
    enum class Kind { Trivial, Finite, FreeAbelian, Polycyclic, Houghton, ThompsonF, Raag, Presented };

    static GroupSpec trivial() { return GroupSpec(Kind::Trivial); }
    static GroupSpec finite_group() { return GroupSpec(Kind::Finite); }
    static GroupSpec free_abelian(int rank) {
        if (rank < 1) throw domain_error("catalog tags carry built-in FinitenessTypes: FREE_ABELIAN rank must be positive");
        GroupSpec s(Kind::FreeAbelian);
        s.param_ = rank;
        return s;
    }
    static GroupSpec polycyclic() { return GroupSpec(Kind::Polycyclic); }
    static GroupSpec houghton(int n) {
        if (n < 1) throw domain_error("catalog tags carry built-in FinitenessTypes: HOUGHTON index must be positive");
        GroupSpec s(Kind::Houghton);
        s.param_ = n;
        return s;
    }
    static GroupSpec thompson_f() { return GroupSpec(Kind::ThompsonF); }
    static GroupSpec raag(SimpleGraph graph) {
        if (graph.num_vertices() == 0)
            throw domain_error("catalog tags carry built-in FinitenessTypes: RAAG requires a non-empty graph (use TRIVIAL)");
        GroupSpec s(Kind::Raag);
        s.raag_graph_ = std::move(graph);
        return s;
    }
    static GroupSpec presented(Presentation p, std::optional<FinitenessType> asserted = std::nullopt) {
        GroupSpec s(Kind::Presented);
        s.presentation_ = std::move(p);
        if (asserted) {
            asserted->validate();
            if (asserted->refuted && *asserted->refuted <= 2)
                throw domain_error("certified < refuted when both finite: a finite presentation already certifies F_2");
            s.asserted_ = *asserted;
        }
        return s;
    }

    Kind kind() const { return kind_; }
    int param() const { return param_; }
    const std::optional<Presentation>& presentation() const { return presentation_; }

    FinitenessType type() const {
        FinitenessType t;
        switch (kind_) {
        case Kind::Trivial:
        case Kind::Finite:
        case Kind::FreeAbelian:
        case Kind::Polycyclic:
        case Kind::ThompsonF:
        case Kind::Raag:
            t.certified = FinitenessType::kInfinity;
            break;
        case Kind::Houghton:
            t.certified = param_ - 1;
            t.refuted = param_;
            break;
        case Kind::Presented:
            t.certified = 2; // the given finite presentation is the witness
            if (asserted_) {
                t.certified = std::max(t.certified, asserted_->certified);
                t.refuted = asserted_->refuted;
            }
            break;
        }
        t.validate();
        return t;
    }

    Tri nontrivial() const {
        switch (kind_) {
        case Kind::Trivial:
            return Tri::No;
        case Kind::Presented: {
            HomologyGroup ab = abelianization(*presentation_);
            return ab.is_zero() ? Tri::Unknown : Tri::Yes;
        }
        default:
            return Tri::Yes;
        }
    }

    Tri abelianization_infinite() const {
        switch (kind_) {
        case Kind::Trivial:
        case Kind::Finite:
            return Tri::No;
        case Kind::FreeAbelian:
        case Kind::ThompsonF:
        case Kind::Raag:
            return Tri::Yes;
        case Kind::Houghton:
            return param_ >= 2 ? Tri::Yes : Tri::No;
        case Kind::Polycyclic:
            return Tri::Unknown;
        case Kind::Presented:
            return abelianization(*presentation_).betti > 0 ? Tri::Yes : Tri::No;
        }
        return Tri::Unknown;
    }

    bool polycyclic_by_finite() const {
        switch (kind_) {
        case Kind::Trivial:
        case Kind::Finite:
        case Kind::FreeAbelian:
        case Kind::Polycyclic:
            return true;
        case Kind::Raag: {
            // a right-angled Artin group is polycyclic exactly when it is
            // free abelian, i.e. the graph is complete
            const SimpleGraph& g = *raag_graph_;
            long n = g.num_vertices();
            return static_cast<long>(g.edges().size()) == n * (n - 1) / 2;
        }
        default:
            return false;
        }
    }

    bool has_assertion() const { return asserted_.has_value(); }

    std::string describe() const {
        switch (kind_) {
        case Kind::Trivial: return "trivial";
        case Kind::Finite: return "finite";
        case Kind::FreeAbelian: return param_ == 1 ? "Z" : "Z^" + std::to_string(param_);
        case Kind::Polycyclic: return "polycyclic";
        case Kind::Houghton: return "Houghton(" + std::to_string(param_) + ")";
        case Kind::ThompsonF: return "Thompson F";
        case Kind::Raag: return "RAAG on " + std::to_string(raag_graph_->num_vertices()) + " vertices";
        case Kind::Presented: return "presented group on " + std::to_string(presentation_->generators().size()) + " generators";
        }
        return "?";
    }

private:
    explicit GroupSpec(Kind k) : kind_(k) {}

    Kind kind_;
    int param_ = 0;
    std::optional<SimpleGraph> raag_graph_;
    std::optional<Presentation> presentation_;
    std::optional<FinitenessType> asserted_;
};

/// One checked condition in a verdict trace.
struct TraceEntry {
    std::string rule;
    std::string condition;
    std::optional<int> p;     // module degree, when the condition is per-degree
    std::optional<int> level; // finiteness level n the condition was checked at
    std::string outcome;      // "YES" | "NO" | "UNKNOWN"
};

// Fixed condition templates; every trace entry uses one of these verbatim.
namespace conditions {
inline constexpr const char* kFinGen =
    "both A and H are finitely generated and Γ has finitely many orbits of vertices";
inline constexpr const char* kFinPres =
    "A and H are finitely presented, Γ has finitely many orbits of vertices and edges, and each vertex of Γ has finitely generated stabilizer";
inline constexpr const char* kHTypeFn = "H is of type F_n";
inline constexpr const char* kATypeFn = "A is of type F_n";
inline constexpr const char* kModule = "ZΔ_p is of type FP_{n-1-p}";
inline constexpr const char* kModuleAllLevels = "ZΔ_p is of type FP_{n-1-p} for all p";
inline constexpr const char* kAbelianizationInfinite = "A has infinite abelianization";
inline constexpr const char* kPolycyclicGate = "H is polycyclic-by-finite and A is non-trivial";
inline constexpr const char* kCocompact = "H acts cocompactly on the (n-1)-skeleton of L";
inline constexpr const char* kTrivialBase = "A is trivial and G coincides with H";
inline constexpr const char* kOrbitsFinite = "finitely many orbits of (m+1)-cliques";
inline constexpr const char* kStabilizerType = "the stabilizer of each (m+1)-clique has type FP_n";
} // namespace conditions

inline const char* tri_name(Tri t) {
    switch (t) {
    case Tri::Yes: return "YES";
    case Tri::No: return "NO";
    default: return "UNKNOWN";
    }
}

struct ModuleFpStatus {
    Tri status = Tri::Unknown;
    std::vector<TraceEntry> trace;
};

namespace detail {
inline Tri stabilizer_fp_at(const StabilizerDesc& d, int target) {
    switch (d.kind) {
    case StabilizerDesc::Kind::Trivial:
    case StabilizerDesc::Kind::FiniteSubgroup:
    case StabilizerDesc::Kind::ShiftSubgroup:
        return Tri::Yes; // finite groups, the trivial group, and dZ are FP_infinity
    case StabilizerDesc::Kind::CatalogRayStabilizer:
        return target <= d.rays - 1 ? Tri::Yes : Tri::No;
    }
    return Tri::Unknown;
}
} // namespace detail

/// FP status of the permutation module on the m-simplices (= (m+1)-cliques)
/// at level n: YES when the orbit count is finite and every stabilizer is of
/// catalog type FP_n, NO when the orbit count is infinite or a stabilizer is
/// refuted, UNKNOWN otherwise.
inline ModuleFpStatus module_fp_status(const Action& action, int m, int n) {
    if (m < 0) throw domain_error("simplex dimension must be non-negative");
    if (n < 0) throw domain_error("target FP level must be non-negative");
    ModuleFpStatus out;
    CliqueOrbitReport rep = clique_orbits(action, m + 1);
    if (rep.infinite) {
        out.status = Tri::No;
        out.trace.push_back({"CliqueModuleFP", conditions::kOrbitsFinite, m, n, "NO"});
        return out;
    }
    out.trace.push_back({"CliqueModuleFP", conditions::kOrbitsFinite, m, n, "YES"});
    Tri stab = Tri::Yes;
    for (const StabilizerDesc& d : rep.stabilizers) {
        Tri s = detail::stabilizer_fp_at(d, n);
        if (s == Tri::No) stab = Tri::No;
        if (s == Tri::Unknown && stab == Tri::Yes) stab = Tri::Unknown;
    }
    out.trace.push_back({"CliqueModuleFP", conditions::kStabilizerType, m, n, tri_name(stab)});
    out.status = stab;
    return out;
}

/// A finiteness verdict: the derived interval plus the justification trace.
struct FinitenessVerdict {
    std::string subject;
    FinitenessType type;
    std::vector<TraceEntry> trace;
    std::vector<std::string> assumptions;
};

namespace detail {
inline Tri certifies_tri(const GroupSpec& g, int n) {
    FinitenessType t = g.type();
    if (t.certifies(n)) return Tri::Yes;
    if (t.refutes(n)) return Tri::No;
    return Tri::Unknown;
}

inline Tri meet(std::initializer_list<Tri> ts) {
    Tri out = Tri::Yes;
    for (Tri t : ts) {
        if (t == Tri::No) return Tri::No;
        if (t == Tri::Unknown) out = Tri::Unknown;
    }
    return out;
}

/// Can the sufficient conditions be certified at every level at once? True
/// for the finite backend and for shift backends without ALL_NONZERO pairs:
/// orbit counts stay finite and all stabilizers are FP_infinity.
inline bool module_conditions_hold_at_all_levels(const Action& action) {
    if (std::holds_alternative<FinitePermAction>(action)) return true;
    if (const auto* shift = std::get_if<PeriodicShiftAction>(&action)) return !shift->has_all_nonzero_pair();
    return false;
}

/// The catalog ray action's stabilizer facts are facts about subgroups of
/// the matching Houghton head; any other pairing is meaningless input.
inline void validate_head_pairing(const GroupSpec& H, const Action& action) {
    if (const auto* rays = std::get_if<CatalogRayAction>(&action)) {
        if (H.kind() != GroupSpec::Kind::Houghton || H.param() != rays->rays)
            throw domain_error(
                "catalog tags carry built-in FinitenessTypes: the ray-set action pairs only with the Houghton head on the same number of rays");
    }
}
} // namespace detail

/// Sufficiency rule: F_n is certified when A and H are of type F_n and every
/// clique module ZΔ_p is of type FP_{n-1-p} for 0 <= p <= n-1. Never refutes.
inline FinitenessVerdict theorem_a_verdict(const GroupSpec& A, const GroupSpec& H, const Action& action, int n) {
    if (n < 1) throw domain_error("finiteness level n must be at least 1");
    detail::validate_head_pairing(H, action);
    FinitenessVerdict v;
    v.subject = "graph-wreath product of " + A.describe() + " by " + H.describe();
    if (A.has_assertion()) v.assumptions.push_back("finiteness type of A is user-asserted");
    if (H.has_assertion()) v.assumptions.push_back("finiteness type of H is user-asserted");

    if (A.nontrivial() == Tri::No) {
        v.type = H.type();
        v.trace.push_back({"TrivialBase", conditions::kTrivialBase, std::nullopt, n, "YES"});
        return v;
    }

    Tri h_ok = detail::certifies_tri(H, n);
    Tri a_ok = detail::certifies_tri(A, n);
    v.trace.push_back({"TheoremA", conditions::kHTypeFn, std::nullopt, n, tri_name(h_ok)});
    v.trace.push_back({"TheoremA", conditions::kATypeFn, std::nullopt, n, tri_name(a_ok)});
    Tri all = detail::meet({h_ok, a_ok});
    for (int p = 0; p <= n - 1; ++p) {
        ModuleFpStatus ms = module_fp_status(action, p, n - 1 - p);
        v.trace.push_back({"TheoremA", conditions::kModule, p, n, tri_name(ms.status)});
        all = detail::meet({all, ms.status});
    }
    v.type.certified = (all == Tri::Yes) ? n : 0;
    v.type.validate();
    return v;
}

/// Combined decision engine: finite-generation and finite-presentability
/// criteria at levels 1 and 2, the sufficiency rule, the polycyclic-head
/// equivalence, and the infinite-abelianization equivalence, aggregated into
/// the best derivable interval with a full trace. Contradictory outcomes
/// (certified >= refuted) are an internal consistency error.
inline FinitenessVerdict classify(const GroupSpec& A, const GroupSpec& H, const Action& action, int n) {
    if (n < 1) throw domain_error("finiteness level n must be at least 1");
    detail::validate_head_pairing(H, action);
    FinitenessVerdict v;
    v.subject = "graph-wreath product of " + A.describe() + " by " + H.describe();
    if (A.has_assertion()) v.assumptions.push_back("finiteness type of A is user-asserted");
    if (H.has_assertion()) v.assumptions.push_back("finiteness type of H is user-asserted");

    Tri a_nontrivial = A.nontrivial();
    if (a_nontrivial == Tri::No) {
        v.type = H.type();
        v.trace.push_back({"TrivialBase", conditions::kTrivialBase, std::nullopt, std::nullopt, "YES"});
        return v;
    }
    const bool necessity = (a_nontrivial == Tri::Yes);
    if (!necessity)
        v.assumptions.push_back("A could not be proven nontrivial; only sufficient conditions were applied");

    int certified = 0;
    std::optional<int> refuted;
    auto certify = [&](int k) { certified = std::max(certified, k); };
    auto refute = [&](int k) {
        if (!refuted || *refuted > k) refuted = k;
    };

    const bool vertices_finite = !clique_orbits(action, 1).infinite;
    const bool edges_finite = !clique_orbits(action, 2).infinite;
    CliqueOrbitReport vertex_report = clique_orbits(action, 1);
    Tri stabs_fg = Tri::Yes;
    for (const StabilizerDesc& d : vertex_report.stabilizers)
        stabs_fg = detail::meet({stabs_fg, detail::stabilizer_fp_at(d, 1) /* FP_1 over the head = finitely generated */});

    // finite generation criterion at level 1
    {
        Tri cond = detail::meet({detail::certifies_tri(A, 1), detail::certifies_tri(H, 1),
                                 vertices_finite ? Tri::Yes : Tri::No});
        v.trace.push_back({"FinGen", conditions::kFinGen, std::nullopt, 1, tri_name(cond)});
        if (cond == Tri::Yes) certify(1);
        if (cond == Tri::No && necessity) refute(1);
    }
    // finite presentability criterion at level 2
    if (n >= 2) {
        Tri cond = detail::meet({detail::certifies_tri(A, 2), detail::certifies_tri(H, 2),
                                 vertices_finite ? Tri::Yes : Tri::No, edges_finite ? Tri::Yes : Tri::No,
                                 stabs_fg});
        v.trace.push_back({"FinPres", conditions::kFinPres, std::nullopt, 2, tri_name(cond)});
        if (cond == Tri::Yes) certify(2);
        if (cond == Tri::No && necessity) refute(2);
    }

    const bool theorem_d_applies = necessity && H.polycyclic_by_finite();
    const Tri ab_infinite = A.abelianization_infinite();
    const bool theorem_c_applies = necessity && ab_infinite == Tri::Yes;

    for (int k = 1; k <= n; ++k) {
        // sufficiency
        Tri h_ok = detail::certifies_tri(H, k);
        Tri a_ok = detail::certifies_tri(A, k);
        v.trace.push_back({"TheoremA", conditions::kHTypeFn, std::nullopt, k, tri_name(h_ok)});
        v.trace.push_back({"TheoremA", conditions::kATypeFn, std::nullopt, k, tri_name(a_ok)});
        Tri all = detail::meet({h_ok, a_ok});
        bool some_module_no = false;
        for (int p = 0; p <= k - 1; ++p) {
            ModuleFpStatus ms = module_fp_status(action, p, k - 1 - p);
            v.trace.push_back({"TheoremA", conditions::kModule, p, k, tri_name(ms.status)});
            all = detail::meet({all, ms.status});
            if (ms.status == Tri::No) some_module_no = true;
        }
        if (all == Tri::Yes) certify(k);

        // polycyclic-head equivalence
        if (theorem_d_applies) {
            v.trace.push_back({"TheoremD", conditions::kPolycyclicGate, std::nullopt, k, "YES"});
            bool cocompact = cocompact_skeleton(action, k - 1);
            v.trace.push_back({"TheoremD", conditions::kCocompact, std::nullopt, k, cocompact ? "YES" : "NO"});
            Tri a_k = detail::certifies_tri(A, k);
            v.trace.push_back({"TheoremD", conditions::kATypeFn, std::nullopt, k, tri_name(a_k)});
            if (cocompact && a_k == Tri::Yes) certify(k);
            if (!cocompact || a_k == Tri::No) refute(k);
        }

        // infinite-abelianization equivalence
        if (theorem_c_applies) {
            v.trace.push_back({"TheoremC", conditions::kAbelianizationInfinite, std::nullopt, k, "YES"});
            if (h_ok == Tri::No || a_ok == Tri::No || some_module_no) refute(k);
            // the certification direction coincides with the sufficiency rule
        }
    }

    // level-independent upgrade: all conditions hold at every n at once
    if (certified >= n && !refuted && detail::module_conditions_hold_at_all_levels(action) &&
        A.type().certified == FinitenessType::kInfinity && H.type().certified == FinitenessType::kInfinity) {
        v.trace.push_back({"TheoremA", conditions::kModuleAllLevels, std::nullopt, std::nullopt, "YES"});
        certified = FinitenessType::kInfinity;
    }

    if (refuted && (certified == FinitenessType::kInfinity || certified >= *refuted))
        throw internal_error("contradictory outcome (certified >= refuted): engine rules disagree");

    v.type.certified = certified;
    v.type.refuted = refuted;
    v.type.validate();
    return v;
}

} // namespace wreathlab

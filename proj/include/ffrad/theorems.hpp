#pragma once

#include "ffrad/ambient.hpp"
#include "ffrad/grassmann.hpp"
#include "ffrad/numeric.hpp"
#include "ffrad/projections.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffrad {

enum class TheoremId {
    LargeESC,
    FullDimLargeESC,
    RadialConjecture,
    WeakProjBound,
    Lemma31,
    ExpectationIdentity,
    MarkovFraction,
};

std::string_view to_string(TheoremId id);

/// Accepts the canonical names above and the kebab-case CLI aliases
/// (large-esc, full-dim, radial-conjecture, weak-bound, lemma31,
/// expectation, markov).
std::optional<TheoremId> parse_theorem_id(std::string_view text);

struct InstanceDigest {
    std::uint32_t q = 0;
    int n = 0;
    std::optional<int> k;
    std::uint64_t set_size = 0;
    std::optional<std::uint64_t> second_set_size;
    std::string param_name;  // "M", "C" or empty
    std::optional<Rational> param;
    std::optional<std::uint64_t> seed;
    std::string family;
};

/// Outcome of checking one statement on one instance. holds is empty
/// exactly when the preconditions are not met.
struct BoundReport {
    TheoremId theorem_id = TheoremId::LargeESC;
    bool preconditions_met = false;
    std::string note;
    Rational lhs;
    Rational rhs;
    std::optional<bool> holds;
    InstanceDigest instance;
    std::optional<std::uint64_t> trials;

    bool violated() const noexcept { return holds.has_value() && !*holds; }
};

/// Centers y (all of F_q^n) with |pi^y(E)| <= threshold, or < threshold
/// when strict. The sweep may be split over jobs threads; the result does
/// not depend on jobs. Throws PreconditionViolated for empty E.
PointSet exceptional_set(const PointSet& E, const Rational& threshold, bool strict, unsigned jobs = 1);

/// |pi^y(E)| for every center, indexed by point index.
std::vector<std::uint64_t> radial_sizes(const PointSet& E, unsigned jobs = 1);

BoundReport check_weak_bound(const PointSet& E, const Rational& C, unsigned jobs = 1);
BoundReport check_largeESC(const PointSet& E, std::uint64_t M, unsigned jobs = 1);
BoundReport check_fullDim(const PointSet& E, std::uint64_t M, int k, unsigned jobs = 1);
BoundReport check_radial_conjecture(const PointSet& E, int k, unsigned jobs = 1);

/// Mean collision count over all (n-k-1)-subspaces:
/// (q^(n-k-1) - 1) / (q^n - 1) * C(m, 2).
Rational collision_expectation(int n, int k, std::uint64_t q, std::uint64_t m);

/// Quotient maps for every (n-k-1)-dimensional subspace, in enumeration order.
std::vector<QuotientMap> quotient_maps_for(const AmbientSpace& space, int k,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

BoundReport check_expectation_identity(const PointSet& X, int k, std::uint64_t budget = kDefaultEnumerationBudget);
/// Same check against precomputed maps (must be the full quotient_maps_for(space, k)).
BoundReport check_expectation_identity(const PointSet& X, int k, std::span<const QuotientMap> maps);

/// collision_count(qm, X) <= 4 * collision_expectation, compared exactly.
bool markov_condition(const QuotientMap& qm, const PointSet& X);

BoundReport check_markov_fraction(const PointSet& X, int k, std::uint64_t budget = kDefaultEnumerationBudget);
BoundReport check_markov_fraction(const PointSet& X, int k, std::span<const QuotientMap> maps);

inline constexpr std::uint64_t kDefaultMaxTrials = 64;

struct GoodSubspace {
    Subspace gamma;
    std::uint64_t trials = 0;
    std::uint64_t projected_a = 0;
    std::uint64_t projected_b = 0;
};

/// Samples (n-k-1)-subspaces until the collision condition holds for both
/// A and B, then asserts |pi(A)| >= |A|/5 and |pi(B)| >= |B|/5.
/// Requires |A|, |B| <= q^(k+1).
GoodSubspace find_good_subspace(const PointSet& A, const PointSet& B, int k, SeededRng& rng,
                                std::uint64_t max_trials = kDefaultMaxTrials);

/// find_good_subspace packaged as a report: lhs is min(|pi(A)|/|A|, |pi(B)|/|B|), rhs 1/5.
BoundReport check_lemma31(const PointSet& A, const PointSet& B, int k, SeededRng& rng,
                          std::uint64_t max_trials = kDefaultMaxTrials);

struct PipelineMode {
    enum class Kind { FullDim, Conjecture };
    Kind kind = Kind::FullDim;
    std::uint64_t M = 0;
    int k = 0;

    static PipelineMode full_dim(std::uint64_t M, int k) { return {Kind::FullDim, M, k}; }
    static PipelineMode conjecture(int k) { return {Kind::Conjecture, 0, k}; }
};

/// Every intermediate quantity of the projection argument, run on one set.
struct PipelineTrace {
    PipelineMode mode;
    std::uint32_t q = 0;
    int n = 0;
    std::uint64_t e_size = 0;
    std::uint64_t t_size = 0;
    std::string gamma;
    std::uint64_t trials = 0;
    std::uint64_t projected_e = 0;
    std::uint64_t projected_t = 0;
    std::uint64_t target_exceptional = 0;  // |{w : |pi^w(pi(E))| within threshold}|
    std::uint64_t containment_checked = 0;
    bool t_projection_ok = false;  // 5 |pi(T)| >= |T|
    bool e_projection_ok = false;  // 5 |pi(E)| >= |E|
    bool containment_ok = false;   // pi(T) inside the target exceptional set
    BoundReport source_report;     // the statement on E itself
    BoundReport terminal_report;   // the statement applied to pi(E) in F_q^(k+1)

    bool all_relations_hold() const noexcept
    {
        return t_projection_ok && e_projection_ok && containment_ok && projected_t <= target_exceptional;
    }
};

/// Runs the projection argument as a computation. Throws
/// PreconditionViolated (theorem preconditions, unless
/// require_theorem_preconditions is false; the subspace lemma's size
/// preconditions are always required), TrialsExhausted, or
/// ContainmentFailure.
PipelineTrace reduction_pipeline(const PointSet& E, const PipelineMode& mode, SeededRng& rng,
                                 std::uint64_t max_trials = kDefaultMaxTrials, unsigned jobs = 1,
                                 bool require_theorem_preconditions = true);

}  // namespace ffrad

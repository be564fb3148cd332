#include "ffrad/theorems.hpp"

#include "ffrad/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <thread>

namespace ffrad {

namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 7> kNames{{
    {TheoremId::LargeESC, "LargeESC"},
    {TheoremId::FullDimLargeESC, "FullDimLargeESC"},
    {TheoremId::RadialConjecture, "RadialConjecture"},
    {TheoremId::WeakProjBound, "WeakProjBound"},
    {TheoremId::Lemma31, "Lemma31"},
    {TheoremId::ExpectationIdentity, "ExpectationIdentity"},
    {TheoremId::MarkovFraction, "MarkovFraction"},
}};

constexpr std::array<std::pair<TheoremId, std::string_view>, 7> kAliases{{
    {TheoremId::LargeESC, "large-esc"},
    {TheoremId::FullDimLargeESC, "full-dim"},
    {TheoremId::RadialConjecture, "radial-conjecture"},
    {TheoremId::WeakProjBound, "weak-bound"},
    {TheoremId::Lemma31, "lemma31"},
    {TheoremId::ExpectationIdentity, "expectation"},
    {TheoremId::MarkovFraction, "markov"},
}};

InstanceDigest digest_of(const PointSet& E)
{
    InstanceDigest d;
    d.q = E.space().q();
    d.n = E.space().dim();
    d.set_size = E.size();
    return d;
}

/// Largest integer size s with s <= t (or s < t when strict); -1 if none.
long long size_cutoff(const Rational& t, bool strict)
{
    BigInt c = strict ? ceil_of(t) - 1 : floor_of(t);
    if (c < 0)
        return -1;
    if (c > BigInt(std::numeric_limits<long long>::max()))
        return std::numeric_limits<long long>::max();
    return c.convert_to<long long>();
}

void set_unmet(BoundReport& r, std::string why)
{
    r.preconditions_met = false;
    r.holds.reset();
    r.note = std::move(why);
}

}  // namespace

std::string_view to_string(TheoremId id)
{
    for (auto& [k, v] : kNames)
        if (k == id)
            return v;
    return "?";
}

std::optional<TheoremId> parse_theorem_id(std::string_view text)
{
    for (auto& [k, v] : kNames)
        if (v == text)
            return k;
    for (auto& [k, v] : kAliases)
        if (v == text)
            return k;
    return std::nullopt;
}

std::vector<std::uint64_t> radial_sizes(const PointSet& E, unsigned jobs)
{
    const std::uint64_t total = E.space().size();
    std::vector<std::uint64_t> sizes(total, 0);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        RadialCounter counter(E);
        for (std::uint64_t y = lo; y < hi; ++y)
            sizes[y] = counter.count(y);
    };
    if (jobs == 1) {
        work(0, total);
        return sizes;
    }
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
        const std::uint64_t lo = j * chunk, hi = std::min(total, lo + chunk);
        if (lo < hi)
            threads.emplace_back(work, lo, hi);
    }
    for (auto& t : threads)
        t.join();
    return sizes;
}

PointSet exceptional_set(const PointSet& E, const Rational& threshold, bool strict, unsigned jobs)
{
    if (E.empty())
        throw PreconditionViolated("exceptional_set needs a nonempty set");
    PointSet out(E.space());
    const long long cutoff = size_cutoff(threshold, strict);
    if (cutoff < 0)
        return out;
    const auto sizes = radial_sizes(E, jobs);
    for (std::uint64_t y = 0; y < sizes.size(); ++y)
        if (sizes[y] <= static_cast<unsigned long long>(cutoff))
            out.insert(y);
    return out;
}

BoundReport check_weak_bound(const PointSet& E, const Rational& C, unsigned jobs)
{
    BoundReport r;
    r.theorem_id = TheoremId::WeakProjBound;
    r.instance = digest_of(E);
    r.instance.param_name = "C";
    r.instance.param = C;
    const Rational size(E.size());
    if (!(C > 1 && C < size)) {
        set_unmet(r, "needs 1 < C < |E|");
        return r;
    }
    r.preconditions_met = true;
    r.rhs = Rational(E.space().q()) * size / (C - 1);
    r.lhs = Rational(exceptional_set(E, size / C, true, jobs).size());
    r.holds = r.lhs < r.rhs;
    return r;
}

BoundReport check_largeESC(const PointSet& E, std::uint64_t M, unsigned jobs)
{
    BoundReport r;
    r.theorem_id = TheoremId::LargeESC;
    r.instance = digest_of(E);
    r.instance.param_name = "M";
    r.instance.param = Rational(M);
    const int n = E.space().dim();
    if (n < 1) {
        set_unmet(r, "needs n >= 1");
        return r;
    }
    const BigInt qd1 = big_pow(E.space().q(), static_cast<unsigned>(n - 1));
    if (BigInt(E.size()) < 6 * qd1) {
        set_unmet(r, "needs |E| >= 6 q^(n-1) = " + BigInt(6 * qd1).str());
        return r;
    }
    if (4 * BigInt(M) > qd1) {
        set_unmet(r, "needs M <= q^(n-1)/4");
        return r;
    }
    r.preconditions_met = true;
    r.rhs = Rational(12 * qd1 * M, BigInt(E.size()));
    r.lhs = Rational(exceptional_set(E, Rational(M), false, jobs).size());
    if (M == 0) {
        r.note = "M = 0: bound degenerates, checked as an empty exceptional set";
        r.holds = r.lhs == 0;
    } else {
        r.holds = r.lhs < r.rhs;
    }
    return r;
}

BoundReport check_fullDim(const PointSet& E, std::uint64_t M, int k, unsigned jobs)
{
    BoundReport r;
    r.theorem_id = TheoremId::FullDimLargeESC;
    r.instance = digest_of(E);
    r.instance.k = k;
    r.instance.param_name = "M";
    r.instance.param = Rational(M);
    const int n = E.space().dim();
    if (k < 0 || k > n - 1) {
        set_unmet(r, "needs 0 <= k <= n-1");
        return r;
    }
    const BigInt qk = big_pow(E.space().q(), static_cast<unsigned>(k));
    const BigInt size(E.size());
    if (size < 30 * qk || size > qk * E.space().q()) {
        set_unmet(r, "needs 30 q^k = " + BigInt(30 * qk).str() + " <= |E| <= q^(k+1) = " +
                         BigInt(qk * E.space().q()).str());
        return r;
    }
    if (4 * BigInt(M) > qk) {
        set_unmet(r, "needs M <= q^k/4");
        return r;
    }
    r.preconditions_met = true;
    r.rhs = Rational(300 * qk * M, size);
    r.lhs = Rational(exceptional_set(E, Rational(M), false, jobs).size());
    if (M == 0) {
        r.note = "M = 0: bound degenerates, checked as an empty exceptional set";
        r.holds = r.lhs == 0;
    } else {
        r.holds = r.lhs < r.rhs;
    }
    return r;
}

BoundReport check_radial_conjecture(const PointSet& E, int k, unsigned jobs)
{
    BoundReport r;
    r.theorem_id = TheoremId::RadialConjecture;
    r.instance = digest_of(E);
    r.instance.k = k;
    const int n = E.space().dim();
    if (k < 1 || k > n - 1) {
        set_unmet(r, "needs 1 <= k <= n-1");
        return r;
    }
    const BigInt qk = big_pow(E.space().q(), static_cast<unsigned>(k));
    const BigInt qk1 = big_pow(E.space().q(), static_cast<unsigned>(k - 1));
    const BigInt size(E.size());
    r.rhs = Rational(10 * qk);
    if (!(size > qk1 && size <= qk)) {
        set_unmet(r, "needs q^(k-1) < |E| <= q^k");
        return r;
    }
    r.preconditions_met = true;
    r.lhs = Rational(exceptional_set(E, Rational(size, 50), true, jobs).size());
    r.holds = r.lhs <= r.rhs;
    return r;
}

Rational collision_expectation(int n, int k, std::uint64_t q, std::uint64_t m)
{
    if (n < 1 || k < 0 || k > n - 1)
        throw InvalidRange("collision_expectation needs 0 <= k <= n-1");
    const BigInt qn = big_pow(q, static_cast<unsigned>(n));
    if (BigInt(m) > qn)
        throw InvalidRange("collision_expectation needs m <= q^n");
    const BigInt num = big_pow(q, static_cast<unsigned>(n - k - 1)) - 1;
    return Rational(num, qn - 1) * Rational(pairs(m));
}

std::vector<QuotientMap> quotient_maps_for(const AmbientSpace& space, int k, std::uint64_t budget)
{
    const int n = space.dim();
    if (k < 0 || k > n - 1)
        throw InvalidRange("k must lie in [0, n-1]");
    GrassmannianStream stream(space, n - k - 1, budget);
    std::vector<QuotientMap> maps;
    maps.reserve(static_cast<std::size_t>(stream.total()));
    while (auto g = stream.next())
        maps.emplace_back(std::move(*g));
    return maps;
}

BoundReport check_expectation_identity(const PointSet& X, int k, std::span<const QuotientMap> maps)
{
    BoundReport r;
    r.theorem_id = TheoremId::ExpectationIdentity;
    r.instance = digest_of(X);
    r.instance.k = k;
    const AmbientSpace& space = X.space();
    r.rhs = collision_expectation(space.dim(), k, space.q(), X.size());
    if (BigInt(maps.size()) != gaussian_binomial(space.dim(), space.dim() - k - 1, space.q()))
        throw InvalidRange("expectation identity needs every subspace of dimension n-k-1");
    r.preconditions_met = true;
    BigInt sum = 0;
    for (const auto& qm : maps) {
        if (qm.gamma().dim() != space.dim() - k - 1)
            throw DimensionMismatch("quotient map has the wrong kernel dimension");
        sum += collision_count_u64(qm, X);
    }
    r.lhs = Rational(sum, BigInt(maps.size()));
    r.holds = r.lhs == r.rhs;
    return r;
}

BoundReport check_expectation_identity(const PointSet& X, int k, std::uint64_t budget)
{
    const auto maps = quotient_maps_for(X.space(), k, budget);
    return check_expectation_identity(X, k, maps);
}

bool markov_condition(const QuotientMap& qm, const PointSet& X)
{
    const AmbientSpace& space = qm.source();
    const int k = space.dim() - qm.gamma().dim() - 1;
    if (k < 0)
        throw DimensionMismatch("quotient kernel must have dimension at most n-1");
    const Rational bound = 4 * collision_expectation(space.dim(), k, space.q(), X.size());
    return Rational(collision_count_u64(qm, X)) <= bound;
}

BoundReport check_markov_fraction(const PointSet& X, int k, std::span<const QuotientMap> maps)
{
    BoundReport r;
    r.theorem_id = TheoremId::MarkovFraction;
    r.instance = digest_of(X);
    r.instance.k = k;
    const AmbientSpace& space = X.space();
    const BigInt total = gaussian_binomial(space.dim(), space.dim() - k - 1, space.q());
    if (BigInt(maps.size()) != total)
        throw InvalidRange("Markov fraction needs every subspace of dimension n-k-1");
    r.preconditions_met = true;
    std::uint64_t good = 0;
    for (const auto& qm : maps)
        if (markov_condition(qm, X))
            ++good;
    r.lhs = Rational(good);
    r.rhs = Rational(3 * total, 4);
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport check_markov_fraction(const PointSet& X, int k, std::uint64_t budget)
{
    const auto maps = quotient_maps_for(X.space(), k, budget);
    return check_markov_fraction(X, k, maps);
}

GoodSubspace find_good_subspace(const PointSet& A, const PointSet& B, int k, SeededRng& rng,
                                std::uint64_t max_trials)
{
    const AmbientSpace& space = A.space();
    if (!(B.space() == space))
        throw DimensionMismatch("A and B live in different spaces");
    const int n = space.dim();
    if (k < 0 || k > n - 1)
        throw PreconditionViolated("needs 0 <= k <= n-1");
    const BigInt cap = big_pow(space.q(), static_cast<unsigned>(k + 1));
    if (BigInt(A.size()) > cap || BigInt(B.size()) > cap)
        throw PreconditionViolated("needs |A|, |B| <= q^(k+1) = " + cap.str() + " (got " + std::to_string(A.size()) +
                                   ", " + std::to_string(B.size()) + ")");
    for (std::uint64_t trial = 1; trial <= max_trials; ++trial) {
        QuotientMap qm(sample_uniform_subspace(space, n - k - 1, rng));
        if (!markov_condition(qm, A) || !markov_condition(qm, B))
            continue;
        const std::uint64_t pa = project_set(qm, A).size();
        const std::uint64_t pb = project_set(qm, B).size();
        if (5 * pa < A.size() || 5 * pb < B.size())
            throw AssertionFailure("collision condition held but a projection shrank below 1/5: |pi(A)|=" +
                                   std::to_string(pa) + " |A|=" + std::to_string(A.size()) +
                                   " |pi(B)|=" + std::to_string(pb) + " |B|=" + std::to_string(B.size()) +
                                   " gamma " + qm.gamma().serialize());
        return GoodSubspace{qm.gamma(), trial, pa, pb};
    }
    throw TrialsExhausted("no good subspace in " + std::to_string(max_trials) + " trials");
}

BoundReport check_lemma31(const PointSet& A, const PointSet& B, int k, SeededRng& rng, std::uint64_t max_trials)
{
    BoundReport r;
    r.theorem_id = TheoremId::Lemma31;
    r.instance = digest_of(A);
    r.instance.k = k;
    r.instance.second_set_size = B.size();
    r.rhs = Rational(1, 5);
    try {
        auto good = find_good_subspace(A, B, k, rng, max_trials);
        r.preconditions_met = true;
        Rational ra = A.empty() ? Rational(1) : Rational(good.projected_a, A.size());
        Rational rb = B.empty() ? Rational(1) : Rational(good.projected_b, B.size());
        r.lhs = std::min(ra, rb);
        r.trials = good.trials;
        r.holds = r.lhs >= r.rhs;
        r.note = good.gamma.serialize();
    } catch (const PreconditionViolated& e) {
        set_unmet(r, e.what());
    } catch (const TrialsExhausted& e) {
        r.preconditions_met = true;
        r.trials = max_trials;
        r.holds = false;
        r.note = e.what();
    }
    return r;
}

PipelineTrace reduction_pipeline(const PointSet& E, const PipelineMode& mode, SeededRng& rng,
                                 std::uint64_t max_trials, unsigned jobs, bool require_theorem_preconditions)
{
    const AmbientSpace& space = E.space();
    PipelineTrace tr;
    tr.mode = mode;
    tr.q = space.q();
    tr.n = space.dim();
    tr.e_size = E.size();
    if (E.empty())
        throw PreconditionViolated("pipeline needs a nonempty set");

    const bool full_dim = mode.kind == PipelineMode::Kind::FullDim;
    tr.source_report = full_dim ? check_fullDim(E, mode.M, mode.k, jobs) : check_radial_conjecture(E, mode.k, jobs);
    if (!tr.source_report.preconditions_met && (require_theorem_preconditions || mode.k < 0 || mode.k > tr.n - 1))
        throw PreconditionViolated(tr.source_report.note);

    // T uses a strict threshold in both modes; the projected side is non-strict.
    const Rational threshold = full_dim ? Rational(mode.M) : Rational(E.size(), 50);
    const long long t_cut = size_cutoff(threshold, true);
    const long long w_cut = size_cutoff(threshold, false);

    const auto sizes = radial_sizes(E, jobs);
    PointSet T(space);
    for (std::uint64_t y = 0; y < sizes.size(); ++y)
        if (t_cut >= 0 && sizes[y] <= static_cast<unsigned long long>(t_cut))
            T.insert(y);
    tr.t_size = T.size();

    auto good = find_good_subspace(E, T, mode.k, rng, max_trials);
    tr.gamma = good.gamma.serialize();
    tr.trials = good.trials;
    QuotientMap qm(good.gamma);
    const PointSet piE = project_set(qm, E);
    const PointSet piT = project_set(qm, T);
    tr.projected_e = piE.size();
    tr.projected_t = piT.size();
    tr.t_projection_ok = 5 * tr.projected_t >= tr.t_size;
    tr.e_projection_ok = 5 * tr.projected_e >= tr.e_size;

    const auto target_sizes = radial_sizes(piE, jobs);
    for (auto s : target_sizes)
        if (w_cut >= 0 && s <= static_cast<unsigned long long>(w_cut))
            ++tr.target_exceptional;

    tr.containment_ok = true;
    for (auto y : T) {
        const std::uint64_t w = qm.apply_index(y);
        ++tr.containment_checked;
        const bool inside = w_cut >= 0 && target_sizes[w] <= static_cast<unsigned long long>(w_cut);
        if (!inside || target_sizes[w] > sizes[y]) {
            tr.containment_ok = false;
            throw ContainmentFailure("center " + to_string(space.point_at(y)) + " with |pi^y(E)|=" +
                                     std::to_string(sizes[y]) + " projects to " +
                                     to_string(qm.target().point_at(w)) + " with |pi^w(pi(E))|=" +
                                     std::to_string(target_sizes[w]) + " under " + tr.gamma);
        }
    }

    tr.terminal_report = full_dim ? check_largeESC(piE, mode.M, jobs) : check_radial_conjecture(piE, mode.k, jobs);
    return tr;
}

}  // namespace ffrad

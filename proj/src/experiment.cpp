#include "ffrad/experiment.hpp"

#include "ffrad/errors.hpp"
#include "ffrad/generators.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <ostream>
#include <thread>

namespace ffrad {

using nlohmann::json;

std::string_view to_string(Family f)
{
    switch (f) {
    case Family::Random: return "random";
    case Family::PlaneSubset: return "plane_subset";
    case Family::PlaneUnion: return "plane_union";
    case Family::FullPlane: return "full_plane";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view text)
{
    for (auto f : {Family::Random, Family::PlaneSubset, Family::PlaneUnion, Family::FullPlane})
        if (to_string(f) == text)
            return f;
    return std::nullopt;
}

std::string_view to_string(RowStatus s)
{
    switch (s) {
    case RowStatus::Checked: return "checked";
    case RowStatus::PreconditionSkip: return "precondition_skip";
    case RowStatus::BudgetSkip: return "budget_skip";
    case RowStatus::Error: return "error";
    }
    return "?";
}

bool ExperimentConfig::needs_param() const noexcept
{
    return theorem == TheoremId::LargeESC || theorem == TheoremId::FullDimLargeESC ||
           theorem == TheoremId::WeakProjBound;
}

void ExperimentConfig::validate() const
{
    if (q_values.empty() || n_values.empty())
        throw ConfigInvalid("q and n ranges must be nonempty");
    for (auto q : q_values) {
        if (!is_prime_power(q))
            throw ConfigInvalid("q=" + std::to_string(q) + " is not a prime power");
        if (q > max_q)
            throw ConfigInvalid("q=" + std::to_string(q) + " exceeds the field maximum " + std::to_string(max_q));
    }
    for (auto n : n_values) {
        if (n < 1)
            throw ConfigInvalid("n must be positive");
        for (auto q : q_values) {
            BigInt size = big_pow(q, static_cast<unsigned>(n));
            if (size > max_space_size)
                throw ConfigInvalid("q^n = " + size.str() + " exceeds the memory budget");
        }
    }
    for (auto k : k_values)
        if (k < 0)
            throw ConfigInvalid("k must be nonnegative");
    if (family != Family::FullPlane && sizes.empty())
        throw ConfigInvalid("set size range must be nonempty");
    if (needs_param() && params.empty())
        throw ConfigInvalid(std::string(to_string(theorem)) + " needs " +
                            (theorem == TheoremId::WeakProjBound ? "--C" : "--M") + " values");
    if (theorem == TheoremId::LargeESC || theorem == TheoremId::FullDimLargeESC)
        for (const auto& m : params)
            if (m < 0 || boost::multiprecision::denominator(m) != 1)
                throw ConfigInvalid("M must be a nonnegative integer");
    if (wall_clock_seconds < 0)
        throw ConfigInvalid("wall-clock budget must be nonnegative");
}

namespace {

struct Cell {
    std::uint32_t q;
    int n;
    int k;
    std::uint64_t size;
    std::optional<Rational> param;
};

std::vector<Cell> build_cells(const ExperimentConfig& c)
{
    std::vector<Cell> cells;
    std::vector<std::uint64_t> sizes = c.sizes;
    if (c.family == Family::FullPlane)
        sizes = {0};
    std::vector<std::optional<Rational>> params;
    if (c.needs_param())
        params.assign(c.params.begin(), c.params.end());
    else
        params.push_back(std::nullopt);
    for (auto q : c.q_values)
        for (auto n : c.n_values) {
            std::vector<int> ks = c.k_values;
            if (ks.empty())
                ks.push_back(n - 1);
            for (auto k : ks)
                for (auto s : sizes)
                    for (const auto& p : params)
                        cells.push_back(Cell{q, n, k, s, p});
        }
    return cells;
}

PointSet generate(const AmbientSpace& space, Family family, int k, std::uint64_t size, SeededRng& rng)
{
    if (family == Family::Random)
        return random_subset(space, size, rng);
    if (k < 0 || k > space.dim())
        throw SizeTooLarge("plane dimension k=" + std::to_string(k) + " outside [0, n]");
    Subspace gamma = sample_uniform_subspace(space, k, rng);
    switch (family) {
    case Family::PlaneSubset:
        return plane_subset(space, gamma, space.point_at(rng.below(space.size())), size, rng);
    case Family::FullPlane:
        return full_plane(gamma, space.point_at(rng.below(space.size())));
    case Family::PlaneUnion:
        return plane_union(space, gamma, size, rng);
    default:
        break;
    }
    throw ConfigInvalid("unknown family");
}

ReportRow run_one(const ExperimentConfig& config, const Cell& cell, std::uint64_t cell_index, std::uint64_t trial,
                  std::vector<QuotientMap>* maps_cache)
{
    ReportRow row;
    row.cell = cell_index;
    row.trial = trial;
    const std::uint64_t seed = SeededRng::derive(config.seed, cell_index, trial);
    auto& r = row.report;
    r.theorem_id = config.theorem;
    r.instance.q = cell.q;
    r.instance.n = cell.n;
    r.instance.k = cell.k;
    r.instance.set_size = cell.size;
    r.instance.seed = seed;
    r.instance.family = std::string(to_string(config.family));
    try {
        SeededRng rng(seed);
        AmbientSpace space(Field::create(cell.q, config.max_q), cell.n, config.max_space_size);
        PointSet E = generate(space, config.family, cell.k, cell.size, rng);
        switch (config.theorem) {
        case TheoremId::WeakProjBound:
            r = check_weak_bound(E, *cell.param);
            break;
        case TheoremId::LargeESC:
            r = check_largeESC(E, boost::multiprecision::numerator(*cell.param).convert_to<std::uint64_t>());
            break;
        case TheoremId::FullDimLargeESC:
            r = check_fullDim(E, boost::multiprecision::numerator(*cell.param).convert_to<std::uint64_t>(), cell.k);
            break;
        case TheoremId::RadialConjecture:
            r = check_radial_conjecture(E, cell.k);
            break;
        case TheoremId::ExpectationIdentity:
        case TheoremId::MarkovFraction: {
            if (maps_cache->empty())
                *maps_cache = quotient_maps_for(space, cell.k, config.enumeration_budget);
            r = config.theorem == TheoremId::ExpectationIdentity ? check_expectation_identity(E, cell.k, *maps_cache)
                                                                 : check_markov_fraction(E, cell.k, *maps_cache);
            break;
        }
        case TheoremId::Lemma31: {
            PointSet B = generate(space, config.family, cell.k, cell.size, rng);
            r = check_lemma31(E, B, cell.k, rng, config.max_trials);
            break;
        }
        }
        r.instance.k = cell.k;
        r.instance.seed = seed;
        r.instance.family = std::string(to_string(config.family));
        if (r.preconditions_met)
            row.status = RowStatus::Checked;
        else
            row.status = RowStatus::PreconditionSkip;
    } catch (const BudgetExceeded& e) {
        row.status = RowStatus::BudgetSkip;
        r.note = e.what();
    } catch (const SizeTooLarge& e) {
        row.status = RowStatus::PreconditionSkip;
        r.note = std::string("generation: ") + e.what();
    } catch (const InvalidRange& e) {
        row.status = RowStatus::PreconditionSkip;
        r.note = e.what();
    } catch (const Error& e) {
        row.status = RowStatus::Error;
        r.note = e.what();
    }
    return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto cells = build_cells(config);
    ExperimentResult result;
    const std::uint64_t total = cells.size() * config.trials;
    result.rows.resize(total);

    // Each cell gets one cache of quotient maps; cells are claimed whole so a
    // cache is only touched by one thread.
    std::atomic<std::uint64_t> next_cell{0};
    const auto start = std::chrono::steady_clock::now();
    auto worker = [&] {
        while (true) {
            const std::uint64_t c = next_cell.fetch_add(1);
            if (c >= cells.size())
                return;
            std::vector<QuotientMap> maps;
            for (std::uint64_t t = 0; t < config.trials; ++t) {
                auto& slot = result.rows[c * config.trials + t];
                const double elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (config.wall_clock_seconds > 0 && elapsed > config.wall_clock_seconds) {
                    slot.cell = c;
                    slot.trial = t;
                    slot.status = RowStatus::BudgetSkip;
                    slot.report.theorem_id = config.theorem;
                    slot.report.note = "wall-clock budget exhausted";
                    continue;
                }
                slot = run_one(config, cells[c], c, t, &maps);
            }
        }
    };
    const unsigned jobs = std::max(1u, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    auto& s = result.summary;
    s.rows = total;
    for (const auto& row : result.rows) {
        switch (row.status) {
        case RowStatus::Checked:
            ++s.checked;
            if (row.report.violated())
                ++s.violations;
            else
                ++s.holds;
            break;
        case RowStatus::PreconditionSkip: ++s.precondition_skips; break;
        case RowStatus::BudgetSkip: ++s.budget_skips; break;
        case RowStatus::Error: ++s.errors; break;
        }
    }
    return result;
}

namespace {

json rational_or_null(const std::optional<Rational>& r)
{
    return r ? json(to_fraction_string(*r)) : json(nullptr);
}

}  // namespace

json to_json(const BoundReport& r)
{
    const auto& d = r.instance;
    json j;
    j["theorem_id"] = std::string(to_string(r.theorem_id));
    j["q"] = d.q;
    j["n"] = d.n;
    j["k"] = d.k ? json(*d.k) : json(nullptr);
    j["set_size"] = d.set_size;
    j["second_set_size"] = d.second_set_size ? json(*d.second_set_size) : json(nullptr);
    j["M"] = d.param_name == "M" ? rational_or_null(d.param) : json(nullptr);
    j["C"] = d.param_name == "C" ? rational_or_null(d.param) : json(nullptr);
    j["family"] = d.family;
    j["preconditions_met"] = r.preconditions_met;
    j["lhs"] = r.preconditions_met ? json(to_fraction_string(r.lhs)) : json(nullptr);
    j["rhs"] = r.preconditions_met ? json(to_fraction_string(r.rhs)) : json(nullptr);
    j["holds"] = r.holds ? json(*r.holds) : json(nullptr);
    j["trials"] = r.trials ? json(*r.trials) : json(nullptr);
    j["seed"] = d.seed ? json(*d.seed) : json(nullptr);
    j["note"] = r.note;
    return j;
}

json to_json(const ReportRow& row)
{
    json j = to_json(row.report);
    j["cell"] = row.cell;
    j["trial"] = row.trial;
    j["status"] = std::string(to_string(row.status));
    return j;
}

json to_json(const ExperimentSummary& s)
{
    return json{{"rows", s.rows},
                {"checked", s.checked},
                {"holds", s.holds},
                {"violations", s.violations},
                {"precondition_skips", s.precondition_skips},
                {"budget_skips", s.budget_skips},
                {"errors", s.errors},
                {"success", s.success()}};
}

json to_json(const PipelineTrace& t)
{
    json j;
    j["mode"] = t.mode.kind == PipelineMode::Kind::FullDim ? "full_dim" : "conjecture";
    j["q"] = t.q;
    j["n"] = t.n;
    j["k"] = t.mode.k;
    j["M"] = t.mode.kind == PipelineMode::Kind::FullDim ? json(t.mode.M) : json(nullptr);
    j["e_size"] = t.e_size;
    j["t_size"] = t.t_size;
    j["gamma"] = t.gamma;
    j["trials"] = t.trials;
    j["projected_e"] = t.projected_e;
    j["projected_t"] = t.projected_t;
    j["target_exceptional"] = t.target_exceptional;
    j["containment_checked"] = t.containment_checked;
    j["t_projection_ok"] = t.t_projection_ok;
    j["e_projection_ok"] = t.e_projection_ok;
    j["containment_ok"] = t.containment_ok;
    j["all_relations_hold"] = t.all_relations_hold();
    j["source_report"] = to_json(t.source_report);
    j["terminal_report"] = to_json(t.terminal_report);
    return j;
}

void write_json(std::ostream& out, const ExperimentResult& result)
{
    json doc;
    doc["reports"] = json::array();
    for (const auto& row : result.rows)
        doc["reports"].push_back(to_json(row));
    doc["summary"] = to_json(result.summary);
    out << doc.dump(2) << '\n';
}

std::vector<std::string> csv_columns()
{
    return {"theorem_id", "cell", "trial", "status", "q", "n", "k", "set_size", "second_set_size", "M", "C",
            "family", "preconditions_met", "lhs", "rhs", "holds", "trials", "seed", "note"};
}

namespace {

std::string csv_field(const json& v)
{
    if (v.is_null())
        return "";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"')
                quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return s;
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentResult& result)
{
    const auto cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& row : result.rows) {
        const json j = to_json(row);
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << csv_field(j.at(cols[i]));
        out << '\n';
    }
    const auto& s = result.summary;
    out << "# summary rows=" << s.rows << " checked=" << s.checked << " holds=" << s.holds
        << " violations=" << s.violations << " precondition_skips=" << s.precondition_skips
        << " budget_skips=" << s.budget_skips << " errors=" << s.errors << '\n';
}

}  // namespace ffrad

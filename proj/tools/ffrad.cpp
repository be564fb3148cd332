// ffrad: command-line front end for the radial projection checkers.

#include "ffrad/errors.hpp"
#include "ffrad/experiment.hpp"
#include "ffrad/generators.hpp"
#include "ffrad/pointset_io.hpp"
#include "ffrad/theorems.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;
using namespace ffrad;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct Options {
    std::vector<std::string> q{"3"}, n{"2"}, k, size{"5"}, M, C;
    std::string family = "random";
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output;
    unsigned jobs = 1;
    std::string input;
    std::string gamma;
    std::string y;
    std::uint64_t budget = kDefaultEnumerationBudget;
    double wall_clock = 0;
    std::uint64_t max_trials = kDefaultMaxTrials;
    std::uint32_t max_q = kDefaultMaxFieldOrder;
    bool relaxed = false;
    std::string mode = "full-dim";
};

/// "a,b,c" arrives already split; each item may also be "lo..hi".
std::vector<std::int64_t> expand_ints(const std::vector<std::string>& items, const char* flag)
{
    std::vector<std::int64_t> out;
    for (const auto& item : items) {
        try {
            const auto dots = item.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stoll(item));
                continue;
            }
            const auto lo = std::stoll(item.substr(0, dots));
            const auto hi = std::stoll(item.substr(dots + 2));
            if (hi < lo || hi - lo > 1'000'000)
                throw ConfigInvalid("");
            for (auto v = lo; v <= hi; ++v)
                out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigInvalid(std::string("bad value '") + item + "' for " + flag);
        }
    }
    return out;
}

template <class T>
std::vector<T> expand_as(const std::vector<std::string>& items, const char* flag)
{
    std::vector<T> out;
    for (auto v : expand_ints(items, flag)) {
        if (v < 0)
            throw ConfigInvalid(std::string(flag) + " values must be nonnegative");
        out.push_back(static_cast<T>(v));
    }
    return out;
}

std::vector<Rational> expand_rationals(const std::vector<std::string>& items)
{
    std::vector<Rational> out;
    for (const auto& item : items)
        out.push_back(parse_rational(item));
    return out;
}

std::int64_t single(const std::vector<std::string>& items, const char* flag)
{
    auto v = expand_ints(items, flag);
    if (v.size() != 1)
        throw ConfigInvalid(std::string(flag) + " takes a single value here");
    return v.front();
}

/// Output goes to --output, resolved against FFRAD_OUTPUT_DIR when relative;
/// with no --output it goes to FFRAD_OUTPUT_DIR/<stem>.<ext> if that is set,
/// otherwise to stdout.
class Sink {
public:
    Sink(const Options& o, const std::string& stem, const std::string& ext)
    {
        const char* dir = std::getenv("FFRAD_OUTPUT_DIR");
        fs::path target;
        if (!o.output.empty() && o.output != "-") {
            target = o.output;
            if (target.is_relative() && dir && *dir)
                target = fs::path(dir) / target;
        } else if (o.output.empty() && dir && *dir) {
            target = fs::path(dir) / (stem + "." + ext);
        }
        if (!target.empty()) {
            if (target.has_parent_path())
                fs::create_directories(target.parent_path());
            file_ = std::make_unique<std::ofstream>(target);
            if (!*file_)
                throw ConfigInvalid("cannot open " + target.string() + " for writing");
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

PointSet load_input(const Options& o)
{
    return parse_pointset(fs::path(o.input), std::nullopt, o.max_q);
}

PointSet generate_single(const Options& o, SeededRng& rng)
{
    const auto q = static_cast<std::uint32_t>(single(o.q, "--q"));
    const auto n = static_cast<int>(single(o.n, "--n"));
    AmbientSpace space(Field::create(q, o.max_q), n);
    const auto family = parse_family(o.family);
    if (!family)
        throw ConfigInvalid("unknown family '" + o.family + "'");
    const int k = o.k.empty() ? n - 1 : static_cast<int>(single(o.k, "--k"));
    const std::uint64_t m = *family == Family::FullPlane ? 0 : static_cast<std::uint64_t>(single(o.size, "--size"));
    switch (*family) {
    case Family::Random: return random_subset(space, m, rng);
    case Family::PlaneSubset:
        return plane_subset(space, sample_uniform_subspace(space, k, rng), space.point_at(rng.below(space.size())), m,
                            rng);
    case Family::FullPlane:
        return full_plane(sample_uniform_subspace(space, k, rng), space.point_at(rng.below(space.size())));
    case Family::PlaneUnion: return plane_union(space, sample_uniform_subspace(space, k, rng), m, rng);
    }
    throw ConfigInvalid("unknown family");
}

Point parse_point(const std::string& text)
{
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        p.coords.push_back(static_cast<Elem>(single({item}, "--y")));
    return p;
}

void emit(const Options& o, const std::string& stem, const ExperimentResult& r)
{
    if (o.format != "json" && o.format != "csv")
        throw ConfigInvalid("format must be json or csv");
    Sink sink(o, stem, o.format);
    if (o.format == "json")
        write_json(sink.out(), r);
    else
        write_csv(sink.out(), r);
}

void emit_json(const Options& o, const std::string& stem, const nlohmann::json& j)
{
    Sink sink(o, stem, "json");
    sink.out() << j.dump(2) << '\n';
}

int exit_code(const ExperimentSummary& s)
{
    return s.success() ? 0 : kExitViolation;
}

// verify ---------------------------------------------------------------------

int cmd_verify(const Options& o, const std::string& theorem_text)
{
    const auto id = parse_theorem_id(theorem_text);
    if (!id)
        throw ConfigInvalid("unknown theorem id '" + theorem_text + "'");

    if (!o.input.empty()) {
        // One instance read from a file; the first parameter value is used.
        const PointSet E = load_input(o);
        SeededRng rng(o.seed);
        const int k = o.k.empty() ? E.space().dim() - 1 : static_cast<int>(single(o.k, "--k"));
        ReportRow row;
        auto& r = row.report;
        auto first_M = [&] {
            auto v = expand_as<std::uint64_t>(o.M, "--M");
            if (v.empty())
                throw ConfigInvalid("--M is required");
            return v.front();
        };
        switch (*id) {
        case TheoremId::WeakProjBound: {
            auto cs = expand_rationals(o.C);
            if (cs.empty())
                throw ConfigInvalid("--C is required");
            r = check_weak_bound(E, cs.front(), o.jobs);
            break;
        }
        case TheoremId::LargeESC: r = check_largeESC(E, first_M(), o.jobs); break;
        case TheoremId::FullDimLargeESC: r = check_fullDim(E, first_M(), k, o.jobs); break;
        case TheoremId::RadialConjecture: r = check_radial_conjecture(E, k, o.jobs); break;
        case TheoremId::ExpectationIdentity: r = check_expectation_identity(E, k, o.budget); break;
        case TheoremId::MarkovFraction: r = check_markov_fraction(E, k, o.budget); break;
        case TheoremId::Lemma31: r = check_lemma31(E, E, k, rng, o.max_trials); break;
        }
        r.instance.family = "file";
        row.status = r.preconditions_met ? RowStatus::Checked : RowStatus::PreconditionSkip;
        ExperimentResult result;
        result.rows.push_back(row);
        result.summary.rows = 1;
        if (r.preconditions_met) {
            result.summary.checked = 1;
            (r.violated() ? result.summary.violations : result.summary.holds) = 1;
        } else {
            result.summary.precondition_skips = 1;
        }
        emit(o, "verify", result);
        return exit_code(result.summary);
    }

    ExperimentConfig c;
    c.theorem = *id;
    c.q_values = expand_as<std::uint32_t>(o.q, "--q");
    c.n_values = expand_as<int>(o.n, "--n");
    c.k_values = expand_as<int>(o.k, "--k");
    c.sizes = expand_as<std::uint64_t>(o.size, "--size");
    c.params = expand_rationals(*id == TheoremId::WeakProjBound ? o.C : o.M);
    const auto family = parse_family(o.family);
    if (!family)
        throw ConfigInvalid("unknown family '" + o.family + "'");
    c.family = *family;
    c.trials = o.trials;
    c.seed = o.seed;
    c.max_q = o.max_q;
    c.enumeration_budget = o.budget;
    c.wall_clock_seconds = o.wall_clock;
    c.max_trials = o.max_trials;
    c.jobs = o.jobs;
    const auto result = run_experiment(c);
    emit(o, "verify", result);
    return exit_code(result.summary);
}

// pipeline -------------------------------------------------------------------

int cmd_pipeline(const Options& o)
{
    SeededRng rng(o.seed);
    const PointSet E = o.input.empty() ? generate_single(o, rng) : load_input(o);
    const int k = o.k.empty() ? E.space().dim() - 1 : static_cast<int>(single(o.k, "--k"));
    PipelineMode mode;
    if (o.mode == "full-dim") {
        mode = PipelineMode::full_dim(static_cast<std::uint64_t>(single(o.M, "--M")), k);
    } else if (o.mode == "conjecture") {
        mode = PipelineMode::conjecture(k);
    } else {
        throw ConfigInvalid("mode must be full-dim or conjecture");
    }
    const auto trace = reduction_pipeline(E, mode, rng, o.max_trials, o.jobs, !o.relaxed);
    emit_json(o, "pipeline", to_json(trace));
    return trace.all_relations_hold() && !trace.source_report.violated() && !trace.terminal_report.violated()
               ? 0
               : kExitViolation;
}

// expectation ----------------------------------------------------------------

int cmd_expectation(const Options& o)
{
    SeededRng rng(o.seed);
    const PointSet X = o.input.empty() ? random_subset(AmbientSpace(Field::create(static_cast<std::uint32_t>(
                                                                                     single(o.q, "--q")),
                                                                                 o.max_q),
                                                                   static_cast<int>(single(o.n, "--n"))),
                                                       static_cast<std::uint64_t>(single(o.size, "--size")), rng)
                                       : load_input(o);
    const int n = X.space().dim();
    nlohmann::json out;
    out["q"] = X.space().q();
    out["n"] = n;
    out["set_size"] = X.size();
    out["results"] = nlohmann::json::array();
    bool ok = true;
    const auto ks = o.k.empty() ? std::vector<int>{n - 1} : expand_as<int>(o.k, "--k");
    for (int k : ks) {
        const auto maps = quotient_maps_for(X.space(), k, o.budget);
        const auto id = check_expectation_identity(X, k, maps);
        const auto mk = check_markov_fraction(X, k, maps);
        ok = ok && !id.violated() && !mk.violated();
        out["results"].push_back({{"k", k},
                                  {"subspaces", maps.size()},
                                  {"average_collisions", to_fraction_string(id.lhs)},
                                  {"expected", to_fraction_string(id.rhs)},
                                  {"identity_holds", id.holds.value_or(false)},
                                  {"good_subspaces", to_fraction_string(mk.lhs)},
                                  {"three_quarters", to_fraction_string(mk.rhs)},
                                  {"markov_holds", mk.holds.value_or(false)}});
    }
    emit_json(o, "expectation", out);
    return ok ? 0 : kExitViolation;
}

// grassmannian ---------------------------------------------------------------

int cmd_grassmannian(const Options& o, const std::string& action)
{
    const auto q = static_cast<std::uint32_t>(single(o.q, "--q"));
    const auto n = static_cast<int>(single(o.n, "--n"));
    const auto k = static_cast<int>(single(o.k.empty() ? std::vector<std::string>{"1"} : o.k, "--k"));
    Sink sink(o, "grassmannian", "txt");
    if (action == "count") {
        if (!is_prime_power(q))
            throw NotPrimePower(std::to_string(q) + " is not a prime power");
        sink.out() << gaussian_binomial(n, k, q) << '\n';
        return 0;
    }
    AmbientSpace space(Field::create(q, o.max_q), n);
    if (action == "enum") {
        GrassmannianStream stream(space, k, o.budget);
        while (auto g = stream.next())
            sink.out() << g->serialize() << '\n';
        return 0;
    }
    if (action == "sample") {
        SeededRng rng(o.seed);
        for (std::uint64_t t = 0; t < o.trials; ++t)
            sink.out() << sample_uniform_subspace(space, k, rng).serialize() << '\n';
        return 0;
    }
    throw ConfigInvalid("grassmannian action must be count, enum or sample");
}

// project / radial / gen -----------------------------------------------------

int cmd_project(const Options& o)
{
    if (o.gamma.empty())
        throw ConfigInvalid("--gamma is required");
    const PointSet E = load_input(o);
    const auto gamma = Subspace::parse(o.gamma, o.max_q);
    if (!(gamma.space() == E.space()))
        throw DimensionMismatch("subspace and point set live in different spaces");
    Sink sink(o, "project", "txt");
    write_pointset(sink.out(), project_set(QuotientMap(gamma), E));
    return 0;
}

int cmd_radial(const Options& o)
{
    const PointSet E = load_input(o);
    nlohmann::json out;
    if (!o.y.empty()) {
        const auto image = radial_projection(E, parse_point(o.y));
        out["center"] = to_string(image.center);
        out["size"] = image.size();
        out["directions"] = nlohmann::json::array();
        for (const auto& d : image.directions)
            out["directions"].push_back(to_string(d));
    } else {
        // Histogram of |pi^y(E)| over every center.
        const auto sizes = radial_sizes(E, o.jobs);
        std::map<std::uint64_t, std::uint64_t> hist;
        for (auto s : sizes)
            ++hist[s];
        out["histogram"] = nlohmann::json::object();
        for (const auto& [s, c] : hist)
            out["histogram"][std::to_string(s)] = c;
    }
    emit_json(o, "radial", out);
    return 0;
}

int cmd_gen(const Options& o)
{
    SeededRng rng(o.seed);
    const PointSet E = generate_single(o, rng);
    Sink sink(o, "gen", "txt");
    write_pointset(sink.out(), E);
    return 0;
}

void add_common(CLI::App* app, Options& o)
{
    app->add_option("--q", o.q, "Field orders (list or lo..hi)")->delimiter(',');
    app->add_option("--n", o.n, "Ambient dimensions")->delimiter(',');
    app->add_option("--k", o.k, "Dimension parameter k")->delimiter(',');
    app->add_option("--size", o.size, "Set sizes")->delimiter(',');
    app->add_option("--M", o.M, "Threshold M values")->delimiter(',');
    app->add_option("--C", o.C, "Ratio C values (a/b or decimal)")->delimiter(',');
    app->add_option("--family", o.family, "random, plane_subset, plane_union or full_plane");
    app->add_option("--trials", o.trials, "Instances per cell or draws");
    app->add_option("--seed", o.seed, "Master seed");
    app->add_option("--format", o.format, "json or csv");
    app->add_option("--output", o.output, "Output file ('-' for stdout)");
    app->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    app->add_option("--input", o.input, "Point-set file");
    app->add_option("--budget", o.budget, "Grassmannian enumeration budget");
    app->add_option("--wall-clock", o.wall_clock, "Wall-clock budget in seconds (0: none)");
    app->add_option("--max-trials", o.max_trials, "Subspace draws allowed per lemma call");
    app->add_option("--max-q", o.max_q, "Largest field order accepted")->check(CLI::Range(2u, kHardMaxFieldOrder));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-field radial projection checks"};
    app.require_subcommand(1);
    Options o;
    std::string theorem, action;

    auto* verify = app.add_subcommand("verify", "Check a statement over a grid of generated instances or one file");
    verify->add_option("theorem", theorem, "large-esc, full-dim, radial-conjecture, weak-bound, lemma31, "
                                           "expectation or markov")
        ->required();
    add_common(verify, o);

    auto* pipeline = app.add_subcommand("pipeline", "Trace the projection argument on one set");
    add_common(pipeline, o);
    pipeline->add_option("--mode", o.mode, "full-dim or conjecture");
    pipeline->add_flag("--relaxed", o.relaxed, "Run even when the statement's size window is not met");

    auto* expectation = app.add_subcommand("expectation", "Average collisions over all subspaces");
    add_common(expectation, o);

    auto* grass = app.add_subcommand("grassmannian", "Count, list or sample subspaces");
    grass->add_option("action", action, "count, enum or sample")->required();
    add_common(grass, o);

    auto* project = app.add_subcommand("project", "Apply a quotient projection to a point set");
    add_common(project, o);
    project->add_option("--gamma", o.gamma, "Kernel subspace as G(q,n,k):rows");

    auto* radial = app.add_subcommand("radial", "Radial projection from a center, or a size histogram");
    add_common(radial, o);
    radial->add_option("--y", o.y, "Center as comma-separated coordinates");

    auto* gen = app.add_subcommand("gen", "Generate a point set");
    add_common(gen, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return cmd_verify(o, theorem);
        if (pipeline->parsed())
            return cmd_pipeline(o);
        if (expectation->parsed())
            return cmd_expectation(o);
        if (grass->parsed())
            return cmd_grassmannian(o, action);
        if (project->parsed())
            return cmd_project(o);
        if (radial->parsed())
            return cmd_radial(o);
        if (gen->parsed())
            return cmd_gen(o);
    } catch (const ParseError& e) {
        std::cerr << "ffrad: parse error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "ffrad: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

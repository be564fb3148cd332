// Python bindings. Points cross the boundary as tuples of ints; reports and
// traces cross as JSON text that the package turns into dicts with Fractions.

#include "ffrad/errors.hpp"
#include "ffrad/experiment.hpp"
#include "ffrad/generators.hpp"
#include "ffrad/pointset_io.hpp"
#include "ffrad/theorems.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ffrad;

namespace {

using Coords = std::vector<Elem>;

Point to_point(const Coords& c)
{
    return Point(c);
}

Coords to_coords(const Point& p)
{
    return p.coords;
}

AmbientSpace space_of(std::uint32_t q, int n)
{
    return AmbientSpace(Field::create(q, kHardMaxFieldOrder), n);
}

py::int_ to_py(const BigInt& v)
{
    return py::int_(py::str(v.str()));
}

std::vector<Coords> coords_of(const PointSet& s)
{
    std::vector<Coords> out;
    for (const auto& p : s.points())
        out.push_back(p.coords);
    return out;
}

ExperimentConfig config_from(const py::dict& d)
{
    ExperimentConfig c;
    auto get = [&](const char* key) -> py::object {
        if (!d.contains(key))
            return py::none();
        return d[key];
    };
    const auto theorem = get("theorem");
    if (theorem.is_none())
        throw ConfigInvalid("config needs a theorem");
    const auto id = parse_theorem_id(theorem.cast<std::string>());
    if (!id)
        throw ConfigInvalid("unknown theorem id");
    c.theorem = *id;
    if (!get("q").is_none()) c.q_values = get("q").cast<std::vector<std::uint32_t>>();
    if (!get("n").is_none()) c.n_values = get("n").cast<std::vector<int>>();
    if (!get("k").is_none()) c.k_values = get("k").cast<std::vector<int>>();
    if (!get("sizes").is_none()) c.sizes = get("sizes").cast<std::vector<std::uint64_t>>();
    if (!get("params").is_none())
        for (const auto& p : get("params").cast<std::vector<std::string>>())
            c.params.push_back(parse_rational(p));
    if (!get("family").is_none()) {
        const auto f = parse_family(get("family").cast<std::string>());
        if (!f)
            throw ConfigInvalid("unknown family");
        c.family = *f;
    }
    if (!get("trials").is_none()) c.trials = get("trials").cast<std::uint64_t>();
    if (!get("seed").is_none()) c.seed = get("seed").cast<std::uint64_t>();
    if (!get("jobs").is_none()) c.jobs = get("jobs").cast<unsigned>();
    if (!get("budget").is_none()) c.enumeration_budget = get("budget").cast<std::uint64_t>();
    if (!get("max_trials").is_none()) c.max_trials = get("max_trials").cast<std::uint64_t>();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Finite-field radial projection checks (compiled core)";

    static py::exception<Error> base(m, "FfradError", PyExc_ValueError);
    static py::exception<PreconditionViolated> precondition(m, "PreconditionViolated", base.ptr());
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    static py::exception<ConfigInvalid> config(m, "ConfigInvalid", base.ptr());
    static py::exception<BudgetExceeded> budget(m, "BudgetExceeded", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const PreconditionViolated& e) {
            precondition(e.what());
        } catch (const ParseError& e) {
            parse(e.what());
        } catch (const ConfigInvalid& e) {
            config(e.what());
        } catch (const BudgetExceeded& e) {
            budget(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    // Fields are immutable; the holder drops const only to satisfy pybind11.
    py::class_<Field, std::shared_ptr<Field>>(m, "Field")
        .def(py::init([](std::uint32_t q) { return std::const_pointer_cast<Field>(Field::create(q, kHardMaxFieldOrder)); }),
             py::arg("q"))
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("e", &Field::e)
        .def_property_readonly("q", &Field::q)
        .def_property_readonly("irreducible_poly", &Field::irreducible_poly)
        .def_property_readonly("generator", &Field::generator)
        .def("add", &Field::add)
        .def("sub", &Field::sub)
        .def("mul", &Field::mul)
        .def("neg", &Field::neg)
        .def("inv", &Field::inv)
        .def("div", &Field::div)
        .def("pow", &Field::pow);

    py::class_<PointSet>(m, "PointSet")
        .def(py::init([](std::uint32_t q, int n, const std::vector<Coords>& pts) {
                 PointSet s(space_of(q, n));
                 for (const auto& c : pts)
                     s.insert(to_point(c));
                 return s;
             }),
             py::arg("q"), py::arg("n"), py::arg("points") = std::vector<Coords>{})
        .def_property_readonly("q", [](const PointSet& s) { return s.space().q(); })
        .def_property_readonly("n", [](const PointSet& s) { return s.space().dim(); })
        .def("__len__", &PointSet::size)
        .def("__contains__", [](const PointSet& s, const Coords& c) { return s.contains(to_point(c)); })
        .def("add", [](PointSet& s, const Coords& c) { return s.insert(to_point(c)); })
        .def("points", &coords_of)
        .def("__eq__", &PointSet::operator==)
        .def("to_text", [](const PointSet& s) {
            std::ostringstream out;
            write_pointset(out, s);
            return out.str();
        })
        .def_static("from_text", [](const std::string& text) {
            std::istringstream in(text);
            return parse_pointset(in, std::nullopt, kHardMaxFieldOrder);
        });

    py::class_<Subspace>(m, "Subspace")
        .def_static(
            "span",
            [](std::uint32_t q, int n, const std::vector<Coords>& gens) {
                std::vector<Point> g;
                for (const auto& c : gens)
                    g.push_back(to_point(c));
                return Subspace::span(space_of(q, n), g);
            },
            py::arg("q"), py::arg("n"), py::arg("generators"))
        .def_static("parse", [](const std::string& t) { return Subspace::parse(t, kHardMaxFieldOrder); })
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("q", [](const Subspace& g) { return g.space().q(); })
        .def_property_readonly("n", [](const Subspace& g) { return g.space().dim(); })
        .def("basis", [](const Subspace& g) {
            std::vector<Coords> out;
            for (const auto& p : g.basis())
                out.push_back(p.coords);
            return out;
        })
        .def("__contains__", [](const Subspace& g, const Coords& c) { return g.contains(to_point(c)); })
        .def("serialize", &Subspace::serialize)
        .def("__str__", &Subspace::serialize)
        .def("__repr__", [](const Subspace& g) { return "Subspace('" + g.serialize() + "')"; })
        .def("__eq__", &Subspace::operator==);

    m.def("is_prime_power", &is_prime_power);
    m.def("random_subset", [](std::uint32_t q, int n, std::uint64_t size, std::uint64_t seed) {
        SeededRng rng(seed);
        return random_subset(space_of(q, n), size, rng);
    }, py::arg("q"), py::arg("n"), py::arg("size"), py::arg("seed") = 0);
    m.def("full_plane", [](const Subspace& gamma, const Coords& t) { return full_plane(gamma, to_point(t)); });

    m.def("gaussian_binomial", [](int n, int k, std::uint64_t q) { return to_py(gaussian_binomial(n, k, q)); });
    m.def("enumerate_grassmannian", [](std::uint32_t q, int n, int k, std::uint64_t budget) {
        return enumerate_grassmannian(space_of(q, n), k, budget);
    }, py::arg("q"), py::arg("n"), py::arg("k"), py::arg("budget") = kDefaultEnumerationBudget);
    m.def("sample_uniform_subspace", [](std::uint32_t q, int n, int k, std::uint64_t seed) {
        SeededRng rng(seed);
        return sample_uniform_subspace(space_of(q, n), k, rng);
    }, py::arg("q"), py::arg("n"), py::arg("k"), py::arg("seed") = 0);

    m.def("radial_projection", [](const PointSet& E, const Coords& y) {
        std::vector<Coords> out;
        for (const auto& d : radial_projection(E, to_point(y)).directions)
            out.push_back(d.coords);
        return out;
    });
    m.def("radial_sizes", &radial_sizes, py::arg("E"), py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("exceptional_set", [](const PointSet& E, const std::string& threshold, bool strict, unsigned jobs) {
        const auto t = parse_rational(threshold);
        py::gil_scoped_release release;
        return exceptional_set(E, t, strict, jobs);
    }, py::arg("E"), py::arg("threshold"), py::arg("strict") = false, py::arg("jobs") = 1);
    m.def("project", [](const PointSet& E, const Subspace& gamma) { return project_set(QuotientMap(gamma), E); });
    m.def("collision_count", [](const PointSet& X, const Subspace& gamma) {
        return to_py(collision_count(QuotientMap(gamma), X));
    });
    m.def("collision_expectation", [](int n, int k, std::uint64_t q, std::uint64_t size) {
        return to_fraction_string(collision_expectation(n, k, q, size));
    });

    auto report = [](const BoundReport& r) { return to_json(r).dump(); };
    m.def("check_weak_bound", [report](const PointSet& E, const std::string& C, unsigned jobs) {
        return report(check_weak_bound(E, parse_rational(C), jobs));
    }, py::arg("E"), py::arg("C"), py::arg("jobs") = 1);
    m.def("check_large_esc", [report](const PointSet& E, std::uint64_t M, unsigned jobs) {
        return report(check_largeESC(E, M, jobs));
    }, py::arg("E"), py::arg("M"), py::arg("jobs") = 1);
    m.def("check_full_dim", [report](const PointSet& E, std::uint64_t M, int k, unsigned jobs) {
        return report(check_fullDim(E, M, k, jobs));
    }, py::arg("E"), py::arg("M"), py::arg("k"), py::arg("jobs") = 1);
    m.def("check_radial_conjecture", [report](const PointSet& E, int k, unsigned jobs) {
        return report(check_radial_conjecture(E, k, jobs));
    }, py::arg("E"), py::arg("k"), py::arg("jobs") = 1);
    m.def("check_expectation_identity", [report](const PointSet& X, int k) {
        return report(check_expectation_identity(X, k));
    });
    m.def("check_markov_fraction", [report](const PointSet& X, int k) { return report(check_markov_fraction(X, k)); });
    m.def("check_lemma31", [report](const PointSet& A, const PointSet& B, int k, std::uint64_t seed) {
        SeededRng rng(seed);
        return report(check_lemma31(A, B, k, rng));
    }, py::arg("A"), py::arg("B"), py::arg("k"), py::arg("seed") = 0);

    m.def("reduction_pipeline", [](const PointSet& E, const std::string& mode, int k, std::uint64_t M,
                                   std::uint64_t seed, bool relaxed) {
        SeededRng rng(seed);
        PipelineMode pm;
        if (mode == "full-dim")
            pm = PipelineMode::full_dim(M, k);
        else if (mode == "conjecture")
            pm = PipelineMode::conjecture(k);
        else
            throw ConfigInvalid("mode must be full-dim or conjecture");
        return to_json(reduction_pipeline(E, pm, rng, kDefaultMaxTrials, 1, !relaxed)).dump();
    }, py::arg("E"), py::arg("mode"), py::arg("k"), py::arg("M") = 0, py::arg("seed") = 0,
       py::arg("relaxed") = false);

    m.def("run_experiment", [](const py::dict& d) {
        const auto c = config_from(d);
        std::ostringstream out;
        {
            py::gil_scoped_release release;
            write_json(out, run_experiment(c));
        }
        return out.str();
    });
}

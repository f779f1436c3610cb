#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lyapsft/errors.hpp"
#include "lyapsft/zeros.hpp"

namespace py = pybind11;
using namespace lyapsft;

namespace {

using Pairs = std::vector<std::pair<double, double>>;

Pairs to_pairs(const IntervalSet& set) {
    Pairs out;
    for (const auto& i : set.intervals()) out.emplace_back(i.lo, i.hi);
    return out;
}

Pairs to_pairs(const std::vector<Interval>& list) {
    Pairs out;
    for (const auto& i : list) out.emplace_back(i.lo, i.hi);
    return out;
}

IntervalSet from_pairs(const Pairs& pairs) {
    std::vector<Interval> parts;
    for (const auto& [lo, hi] : pairs) {
        if (!(lo < hi)) throw InputError("interval (" + std::to_string(lo) + ", " + std::to_string(hi) + ") is empty");
        parts.push_back({lo, hi});
    }
    return IntervalSet(parts);
}

py::dict jreport_dict(const JReport& r) {
    py::list pieces;
    for (const auto& p : r.pieces) {
        py::dict d;
        d["lo"] = p.lo;
        d["hi"] = p.hi;
        d["s_measure"] = p.s_measure;
        d["n_j"] = p.n_j;
        d["term"] = p.term;
        pieces.append(d);
    }
    py::dict d;
    d["j"] = r.j;
    d["n"] = r.n;
    d["lambda"] = r.lambda;
    d["e_lo"] = r.e_lo;
    d["e_hi"] = r.e_hi;
    d["complement"] = r.complement;
    d["pieces"] = pieces;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lyapunov exponents and periodic spectra of Schrodinger cocycles over subshifts of finite type";

    auto base = py::register_exception<Error>(m, "LyapsftError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<ErgodicityError>(m, "ErgodicityError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

    py::class_<TransitionSystem>(m, "TransitionSystem")
        .def(py::init<std::vector<std::string>, BoolMatrix>(), py::arg("labels"), py::arg("allowed"))
        .def_static("full_shift", &TransitionSystem::full_shift, py::arg("alphabet_size"))
        .def_static("golden_mean", &TransitionSystem::golden_mean)
        .def_property_readonly("labels", &TransitionSystem::labels)
        .def_property_readonly("alphabet_size", &TransitionSystem::alphabet_size)
        .def("allows", &TransitionSystem::allows)
        .def("parse_word", &TransitionSystem::parse_word)
        .def("format_word", [](const TransitionSystem& s, const Word& w) { return s.format_word(w); })
        .def("__repr__", [](const TransitionSystem& s) {
            return "<TransitionSystem on " + std::to_string(s.alphabet_size()) + " symbols>";
        });

    py::class_<Potential>(m, "Potential")
        .def_static("from_symbol_values", &Potential::from_symbol_values, py::arg("system"), py::arg("values"))
        .def_static("constant", &Potential::constant, py::arg("system"), py::arg("value"))
        .def(py::init<const TransitionSystem&, std::size_t, std::map<Word, double>>(), py::arg("system"),
             py::arg("radius"), py::arg("table"))
        .def_property_readonly("radius", &Potential::radius)
        .def_property_readonly("sup_norm", &Potential::sup_norm);

    py::class_<MarkovMeasure>(m, "MarkovMeasure")
        .def(py::init<Matrix, std::optional<std::vector<double>>>(), py::arg("transition"),
             py::arg("stationary") = py::none())
        .def_static("uniform", &MarkovMeasure::uniform, py::arg("system"))
        .def_static("bernoulli", &MarkovMeasure::bernoulli, py::arg("weights"))
        .def_property_readonly("transition", &MarkovMeasure::transition)
        .def_property_readonly("stationary", &MarkovMeasure::stationary)
        .def_property_readonly("ergodic", &MarkovMeasure::ergodic);

    m.def(
        "enumerate_periodic_orbits",
        [](const TransitionSystem& s, std::size_t max_period, std::size_t cap) {
            std::vector<Word> out;
            for (const auto& o : enumerate_periodic_orbits(s, max_period, cap)) out.push_back(o.word());
            return out;
        },
        py::arg("system"), py::arg("max_period"), py::arg("cap") = kDefaultOrbitCap,
        "Least rotations of the primitive admissible cycles, by period then lexicographically.");

    m.def(
        "estimate_lyapunov",
        [](double e, const Potential& v, const MarkovMeasure& mu, long long n_steps, int n_samples,
           std::uint64_t seed) {
            const auto est = estimate_lyapunov(e, v, mu, n_steps, n_samples, seed);
            return std::make_pair(est.value, est.std_error);
        },
        py::arg("energy"), py::arg("potential"), py::arg("measure"), py::arg("n_steps") = kDefaultSteps,
        py::arg("n_samples") = kDefaultSamples, py::arg("seed") = 1, "Returns (estimate, standard error).");

    m.def(
        "discriminant",
        [](const Word& cycle, const Potential& v) {
            return discriminant_poly(PeriodicOrbit::from_cycle(cycle), v).poly.coefficients();
        },
        py::arg("cycle"), py::arg("potential"), "Coefficients of the orbit discriminant, constant term first.");

    m.def(
        "bands",
        [](const Word& cycle, const Potential& v) {
            const auto bs = band_and_s_sets(discriminant_poly(PeriodicOrbit::from_cycle(cycle), v));
            return std::make_pair(to_pairs(bs.bands), to_pairs(bs.s_set));
        },
        py::arg("cycle"), py::arg("potential"), "Returns (closed bands, open s-set intervals).");

    m.def(
        "union_s",
        [](const TransitionSystem& s, const Potential& v, std::size_t max_period) {
            return to_pairs(union_S(s, v, max_period).set);
        },
        py::arg("system"), py::arg("potential"), py::arg("max_period"));

    m.def(
        "compute_j",
        [](const std::vector<double>& zeros, const Pairs& s_set, double sup_norm, long long n_floor) {
            return jreport_dict(compute_J(zeros, from_pairs(s_set), sup_norm, {n_floor, true, 0}));
        },
        py::arg("zeros"), py::arg("s_set"), py::arg("sup_norm"), py::arg("n_floor") = 0);

    m.def(
        "classify",
        [](double e, const TransitionSystem& s, const Potential& v, std::size_t max_period) {
            return std::string(to_string(classify_unremovable(e, enumerate_periodic_orbits(s, max_period), v).classification));
        },
        py::arg("energy"), py::arg("system"), py::arg("potential"), py::arg("max_period") = kDefaultMaxPeriod);

    m.def(
        "positivity_certificate",
        [](const TransitionSystem& s, const Potential& v) { return positivity_certificate(s, v).certified; },
        py::arg("system"), py::arg("potential"));
}

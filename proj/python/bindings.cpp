#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bqm/bell.hpp"
#include "bqm/dynamics.hpp"
#include "bqm/error.hpp"
#include "bqm/measurement.hpp"
#include "bqm/postulates.hpp"

namespace py = pybind11;
using namespace bqm;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a)
{
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw Error(ErrorKind::DimensionMismatch, "expected a square 2-D array");
    const auto d = static_cast<std::size_t>(a.shape(0));
    return ComplexMatrix(d, std::vector<Complex>(a.data(), a.data() + d * d));
}

CArray to_array(const ComplexMatrix& m)
{
    const auto d = static_cast<py::ssize_t>(m.dim());
    CArray out({d, d});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < d; ++i)
        for (py::ssize_t j = 0; j < d; ++j) v(i, j) = m(i, j);
    return out;
}

py::dict record_dict(const MeasurementRecord& r)
{
    py::dict d;
    d["branch_index"] = r.branch_index;
    d["outcome_value"] = r.outcome_value;
    d["detected"] = r.detected;
    d["phi_event_id"] = r.phi_event_id;
    d["post_state"] = to_array(r.post_state.rho());
    return d;
}

py::dict chsh_dict(const bell::ChshResult& r)
{
    py::dict d;
    d["S"] = r.s;
    d["terms"] = r.terms;
    d["std_errors"] = r.std_errors;
    d["combined_std_error"] = r.combined_std_error();
    d["n_per_setting"] = r.n_per_setting;
    d["mode"] = std::string(bell::to_string(r.mode));
    return d;
}

bell::ChshSettings settings_from(const std::array<double, 4>& deg)
{
    return {bell::SpinDirection::planar_degrees(deg[0]), bell::SpinDirection::planar_degrees(deg[1]),
            bell::SpinDirection::planar_degrees(deg[2]), bell::SpinDirection::planar_degrees(deg[3])};
}

} // namespace

PYBIND11_MODULE(_binary_qm, m)
{
    m.doc() = "Contextual valuations, measurement and Bell experiments on small Hilbert spaces";

    static py::exception<Error> error(m, "BqmError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<CounterRng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("split", &CounterRng::split, py::arg("stream"))
        .def("uniform", &CounterRng::uniform)
        .def("normal", &CounterRng::normal);

    py::class_<Observable>(m, "Observable")
        .def(py::init([](const CArray& a) { return Observable(to_matrix(a)); }), py::arg("matrix"))
        .def_property_readonly("matrix", [](const Observable& o) { return to_array(o.matrix()); })
        .def_property_readonly("dim", &Observable::dim)
        .def("norm", [](const Observable& o) { return operator_norm(o); })
        .def("eigenvalues", [](const Observable& o) { return spectral_decompose(o).eigenvalues; });

    py::class_<QuantumState>(m, "QuantumState")
        .def(py::init([](const CArray& a) { return QuantumState(to_matrix(a)); }), py::arg("rho"))
        .def_static("pure",
                    [](const std::vector<Complex>& psi) { return QuantumState::pure(psi); }, py::arg("psi"))
        .def_static("maximally_mixed", &QuantumState::maximally_mixed, py::arg("dim"))
        .def_property_readonly("rho", [](const QuantumState& s) { return to_array(s.rho()); })
        .def_property_readonly("dim", &QuantumState::dim)
        .def("purity", &QuantumState::purity);

    m.def("quantum_average", &quantum_average, py::arg("state"), py::arg("observable"));
    m.def(
        "monte_carlo_average",
        [](const QuantumState& s, const Observable& a, std::uint64_t n, CounterRng& rng) {
            const auto est = monte_carlo_average(s, joint_diagonalize({a}), a, n, rng);
            return py::make_tuple(est.mean, est.std_error);
        },
        py::arg("state"), py::arg("observable"), py::arg("n"), py::arg("rng"),
        "Mean and standard error of A over n sampled physical states.");
    m.def(
        "commuting", [](const Observable& a, const Observable& b) {
            const std::vector<Observable> obs{a, b};
            return is_commuting_family(obs, default_tolerances().commuting);
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "joint_basis",
        [](const std::vector<Observable>& obs) { return to_array(joint_diagonalize(obs)->basis_matrix()); },
        py::arg("observables"), "Columns form the shared eigenbasis.");

    m.def(
        "heisenberg_evolve",
        [](const Observable& a, const Observable& h, double t) {
            return Observable(heisenberg_evolve(a, Hamiltonian(h), t));
        },
        py::arg("a"), py::arg("h"), py::arg("t"));
    m.def(
        "evolve_state",
        [](const QuantumState& s, const Observable& h, double t) { return evolve_state(s, Hamiltonian(h), t); },
        py::arg("state"), py::arg("h"), py::arg("t"));

    py::class_<Analyzer>(m, "Analyzer")
        .def(py::init([](const Observable& a) { return Analyzer(a); }), py::arg("observable"))
        .def_property_readonly("branch_count", &Analyzer::branch_count)
        .def("branch_value", &Analyzer::branch_value, py::arg("branch"))
        .def("projector", [](const Analyzer& an, std::size_t i) { return to_array(an.projector(i)); },
             py::arg("branch"));
    m.def("branch_probabilities", &branch_probabilities, py::arg("state"), py::arg("analyzer"));
    m.def("measurement_average", &measurement_average, py::arg("state"), py::arg("analyzer"));
    m.def(
        "detect",
        [](const QuantumState& s, const Analyzer& an, CounterRng& rng) { return record_dict(detect(s, an, rng)); },
        py::arg("state"), py::arg("analyzer"), py::arg("rng"));
    m.def(
        "negative_measurement",
        [](const QuantumState& s, const Analyzer& an, std::size_t detector_branch, CounterRng& rng) {
            return record_dict(negative_measurement(s, an, detector_branch, rng));
        },
        py::arg("state"), py::arg("analyzer"), py::arg("detector_branch"), py::arg("rng"));
    m.def("nonselective_update", &nonselective_update, py::arg("state"), py::arg("analyzer"));
    m.def("reduced_state_second", &reduced_state_second, py::arg("state"), py::arg("dim_a"), py::arg("dim_b"),
          "Reduced state of the second subsystem (first traced out).");

    m.def("singlet_state", &bell::singlet_state);
    m.def(
        "correlation_exact",
        [](const QuantumState& s, double a_deg, double b_deg) {
            return bell::correlation_exact(s, bell::SpinDirection::planar_degrees(a_deg),
                                           bell::SpinDirection::planar_degrees(b_deg));
        },
        py::arg("state"), py::arg("a_degrees"), py::arg("b_degrees"));
    m.def(
        "correlation_contextual",
        [](const QuantumState& s, double a_deg, double b_deg, std::uint64_t n, CounterRng& rng) {
            const auto c = bell::correlation_contextual(s, bell::SpinDirection::planar_degrees(a_deg),
                                                        bell::SpinDirection::planar_degrees(b_deg), n, rng);
            return py::make_tuple(c.estimate.mean, c.estimate.std_error);
        },
        py::arg("state"), py::arg("a_degrees"), py::arg("b_degrees"), py::arg("n"), py::arg("rng"));
    m.def(
        "chsh_contextual",
        [](const QuantumState& s, const std::array<double, 4>& angles, std::uint64_t n, CounterRng& rng) {
            return chsh_dict(bell::chsh_contextual(s, settings_from(angles), n, rng));
        },
        py::arg("state"), py::arg("angles_degrees"), py::arg("n"), py::arg("rng"));
    m.def(
        "chsh_exact",
        [](const QuantumState& s, const std::array<double, 4>& angles) {
            return chsh_dict(bell::chsh_exact(s, settings_from(angles)));
        },
        py::arg("state"), py::arg("angles_degrees"));
    m.def("lhv_max_s", &bell::lhv_max_s_exhaustive, "Best CHSH value over all deterministic strategies.");

    m.def(
        "check_postulates",
        [](const std::vector<std::size_t>& dims, std::size_t n_states, CounterRng& rng) {
            const auto report = check_postulates(dims, n_states, rng);
            py::dict out;
            for (const auto& c : report.checks) out[py::str(c.name)] = py::make_tuple(c.passed, c.worst);
            return out;
        },
        py::arg("dims"), py::arg("n_states"), py::arg("rng"));
}

#include "bqm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "bqm/error.hpp"

namespace bqm::io {

namespace {

using nlohmann::json;

const std::map<std::string, QuantumState (*)()>& state_presets()
{
    static const std::map<std::string, QuantumState (*)()> presets = {
        {"singlet", [] { return bell::singlet_state(); }},
        {"mixed_qubit", [] { return QuantumState::maximally_mixed(2); }},
        {"mixed_two_qubit", [] { return QuantumState::maximally_mixed(4); }},
        {"up_z", [] { return QuantumState::pure(ComplexVector{1.0, 0.0}); }},
        {"down_z", [] { return QuantumState::pure(ComplexVector{0.0, 1.0}); }},
        {"plus_x", [] { return QuantumState::pure(ComplexVector{1.0, 1.0}); }},
        {"minus_x", [] { return QuantumState::pure(ComplexVector{1.0, -1.0}); }},
        {"plus_y", [] { return QuantumState::pure(ComplexVector{1.0, Complex(0.0, 1.0)}); }},
    };
    return presets;
}

const std::map<std::string, ComplexMatrix (*)()>& observable_presets()
{
    static const std::map<std::string, ComplexMatrix (*)()> presets = {
        {"pauli_x", [] { return pauli::x(); }},
        {"pauli_y", [] { return pauli::y(); }},
        {"pauli_z", [] { return pauli::z(); }},
        {"identity_2", [] { return ComplexMatrix::identity(2); }},
        {"z_a", [] { return kron(pauli::z(), ComplexMatrix::identity(2)); }},
        {"z_b", [] { return kron(ComplexMatrix::identity(2), pauli::z()); }},
        {"x_a", [] { return kron(pauli::x(), ComplexMatrix::identity(2)); }},
        {"x_b", [] { return kron(ComplexMatrix::identity(2), pauli::x()); }},
        {"zz", [] { return kron(pauli::z(), pauli::z()); }},
    };
    return presets;
}

[[noreturn]] void structure_error(std::string_view where, const std::string& what)
{
    throw Error(ErrorKind::ParseError, std::string(where) + ": " + what);
}

Complex complex_from_json(const json& j, std::string_view where)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    structure_error(where, "expected a number or [re, im]");
}

ComplexVector vector_from_json(const json& j, std::string_view where)
{
    if (!j.is_array() || j.empty()) structure_error(where, "expected a non-empty array");
    ComplexVector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(complex_from_json(j[i], std::string(where) + "/" + std::to_string(i)));
    }
    return v;
}

// Preset name, inline JSON, or file path.
json resolve_document(const std::string& spec)
{
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (spec[first] == '{' || spec[first] == '[')) return parse_json(spec, "<inline>");
    std::ifstream in(spec);
    if (!in) throw Error(ErrorKind::ParseError, "'" + spec + "' is neither a preset, inline JSON, nor a readable file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), spec);
}

} // namespace

std::vector<std::string> state_preset_names()
{
    std::vector<std::string> out;
    for (const auto& [k, _] : state_presets()) out.push_back(k);
    return out;
}

std::vector<std::string> observable_preset_names()
{
    std::vector<std::string> out;
    for (const auto& [k, _] : observable_presets()) out.push_back(k);
    return out;
}

json parse_json(std::string_view text, std::string_view origin)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        std::size_t line = 1, column = 1;
        const std::size_t stop = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorKind::ParseError, std::string(origin) + ":" + std::to_string(line) + ":" +
                                               std::to_string(column) + ": invalid JSON");
    }
}

ComplexMatrix matrix_from_json(const json& j, std::string_view where)
{
    if (!j.is_array() || j.empty()) structure_error(where, "expected a non-empty array of rows");
    const std::size_t n = j.size();
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string row_where = std::string(where) + "/" + std::to_string(r);
        if (!j[r].is_array() || j[r].size() != n) {
            structure_error(row_where, "row must have " + std::to_string(n) + " entries");
        }
        for (std::size_t c = 0; c < n; ++c) entries.push_back(complex_from_json(j[r][c], row_where + "/" + std::to_string(c)));
    }
    return ComplexMatrix(n, std::move(entries));
}

QuantumState load_state(const std::string& spec, const Tolerances& tol)
{
    if (auto it = state_presets().find(spec); it != state_presets().end()) return it->second();
    const json doc = resolve_document(spec);
    if (doc.is_array()) return QuantumState(matrix_from_json(doc), tol);
    if (!doc.is_object()) structure_error("state", "expected an object or a matrix");
    if (doc.contains("preset")) {
        const auto name = doc["preset"].get<std::string>();
        auto it = state_presets().find(name);
        if (it == state_presets().end()) structure_error("state/preset", "unknown state preset '" + name + "'");
        return it->second();
    }
    if (doc.contains("matrix")) return QuantumState(matrix_from_json(doc["matrix"], "state/matrix"), tol);
    if (doc.contains("vector")) return QuantumState::pure(vector_from_json(doc["vector"], "state/vector"), tol);
    structure_error("state", "needs one of 'preset', 'matrix', 'vector'");
}

Observable load_observable(const std::string& spec, const Tolerances& tol)
{
    if (auto it = observable_presets().find(spec); it != observable_presets().end()) return Observable(it->second(), tol);
    const json doc = resolve_document(spec);
    if (doc.is_array()) return Observable(matrix_from_json(doc), tol);
    if (!doc.is_object()) structure_error("observable", "expected an object or a matrix");
    if (doc.contains("preset")) {
        const auto name = doc["preset"].get<std::string>();
        auto it = observable_presets().find(name);
        if (it == observable_presets().end()) structure_error("observable/preset", "unknown observable preset '" + name + "'");
        return Observable(it->second(), tol);
    }
    if (doc.contains("matrix")) return Observable(matrix_from_json(doc["matrix"], "observable/matrix"), tol);
    structure_error("observable", "needs one of 'preset', 'matrix'");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json record_to_json(const MeasurementRecord& rec, std::uint64_t seed)
{
    json j;
    j["branch_index"] = rec.branch_index;
    j["outcome_value"] = rec.outcome_value;
    j["detected"] = rec.detected;
    j["phi_event_id"] = rec.phi_event_id;
    j["seed"] = seed;
    return j;
}

json chsh_to_json(const bell::ChshResult& r, std::uint64_t seed)
{
    json j;
    j["schema"] = kSchema;
    j["command"] = "chsh";
    j["mode"] = bell::to_string(r.mode);
    j["seed"] = seed;
    j["S"] = r.s;
    j["terms"] = {{"E_ab", r.terms[0]}, {"E_ab_prime", r.terms[1]}, {"E_a_prime_b", r.terms[2]},
                  {"E_a_prime_b_prime", r.terms[3]}};
    j["std_errors"] = r.std_errors;
    j["combined_std_error"] = r.combined_std_error();
    j["n_per_setting"] = r.n_per_setting;
    return j;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace bqm::io

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bqm/algebra.hpp"
#include "bqm/bell.hpp"
#include "bqm/config.hpp"
#include "bqm/measurement.hpp"
#include "bqm/states.hpp"

namespace bqm::io {

inline constexpr std::string_view kSchema = "binary-qm/1";

/// Named states: singlet, mixed_qubit, mixed_two_qubit, up_z, down_z, plus_x, minus_x, plus_y.
std::vector<std::string> state_preset_names();
/// Named observables: pauli_x, pauli_y, pauli_z, identity_2, z_a, z_b, x_a, x_b, zz.
std::vector<std::string> observable_preset_names();

/// Parses JSON text; syntax errors become ParseError with line and column.
nlohmann::json parse_json(std::string_view text, std::string_view origin = "<input>");

/// Dense complex matrix from [[ [re, im] | re, ... ], ...].
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::string_view where = "matrix");

/// A spec is a preset name, an inline JSON document, or a path to one.
/// State documents: {"matrix": ...}, {"vector": [...]}, {"preset": name} or a bare matrix.
/// Observable documents: {"matrix": ...}, {"preset": name} or a bare matrix.
QuantumState load_state(const std::string& spec, const Tolerances& tol = default_tolerances());
Observable load_observable(const std::string& spec, const Tolerances& tol = default_tolerances());

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// branch_index, outcome_value, detected, phi_event_id, seed.
nlohmann::json record_to_json(const MeasurementRecord& rec, std::uint64_t seed);

nlohmann::json chsh_to_json(const bell::ChshResult& r, std::uint64_t seed);

/// Shortest round-trip decimal, '.' separator regardless of locale.
std::string format_double(double v);

} // namespace bqm::io

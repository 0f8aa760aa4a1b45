#pragma once

// JSON exchange documents.
//
//   series:   {"kind": "legendre" | "bessel", "coeffs": [[re, im], ...]}
//   operator: {"op": [[re, im], ...]}            a_0 ... a_K
//
// Doubles are written in shortest round-trip form, so text round trips are exact.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "bandlim/odesolve.hpp"
#include "bandlim/transform.hpp"

namespace bandlim {

using AnySeries = std::variant<LegendreSeries, BesselSeries>;

/// ValidationError on malformed documents.
AnySeries parse_series(std::string_view json_text);
std::string to_json(const LegendreSeries& series);
std::string to_json(const BesselSeries& series);

DifferentialOperator parse_operator(std::string_view json_text);
std::string to_json(const DifferentialOperator& op);

/// Whole file as text; IoError if it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bandlim

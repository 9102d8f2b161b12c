#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pathhj/delay_control.hpp"
#include "pathhj/hj_model.hpp"
#include "pathhj/path.hpp"

namespace pathhj {

using Json = nlohmann::json;

/// Thrown on schema violations; `pointer` holds a JSON-pointer-style path
/// to the offending field.
struct SchemaError : std::runtime_error {
    std::string pointer;
    SchemaError(std::string ptr, const std::string& what)
        : std::runtime_error(ptr + ": " + what), pointer(std::move(ptr)) {}
};

GridSpec parse_grid(const Json& j, const std::string& where = "/grid");

/// {"h":, "T":, "dt":, "n":, "t":, "values": [[...], ...]} (row per node).
SampledPath parse_path(const Json& j, const std::string& where = "");
Json path_to_json(const SampledPath& p);

/// {"points": [path, ...]} or a bare array of paths.
std::vector<SampledPath> parse_points(const Json& j);

/// Problem file: {"grid":, "U": [[...],...], "f": {"kind": ...}, "chi":
/// {"kind": ...}, "sigma": {"kind": ...}, "c_fchi":}. Builtin kinds:
///   f: "integrator" | "linear_delay" (fields A0, A1, B, row-major)
///   chi: "zero" | "one" | "quadratic"
///   sigma: "norm_terminal" | "quadratic_terminal" | "indicator_midpoint"
DelayControlProblem parse_problem(const Json& j);

/// Hamiltonian spec by name: "linear" (field b), "norm_scaled" (field c),
/// "bellman" (field problem: inline problem object).
HamiltonianSpec parse_hamiltonian(const Json& j, const std::string& where = "/H");

/// CSV emission of a path: header time,x_1..x_n.
std::string path_to_csv(const SampledPath& p);

/// Loads and parses a whole JSON file; IO errors surface as SchemaError at
/// the root pointer.
Json load_json_file(const std::string& filename);

}  // namespace pathhj

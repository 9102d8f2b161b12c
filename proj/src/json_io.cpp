#include "pathhj/json_io.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace pathhj {

namespace {

double need_number(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw SchemaError(where + "/" + key, "expected a number");
    return j[key].get<double>();
}

int need_int(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw SchemaError(where + "/" + key, "expected an integer");
    return j[key].get<int>();
}

std::string need_string(const Json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError(where + "/" + key, "expected a string");
    return j[key].get<std::string>();
}

std::vector<double> need_matrix(const Json& j, const std::string& where,
                                const char* key, int rows, int cols) {
    if (!j.contains(key) || !j[key].is_array())
        throw SchemaError(where + "/" + key, "expected an array");
    const Json& m = j[key];
    std::vector<double> out;
    if (rows >= 0 && static_cast<int>(m.size()) != rows)
        throw SchemaError(where + "/" + key, "wrong row count");
    for (size_t r = 0; r < m.size(); ++r) {
        if (!m[r].is_array() || (cols >= 0 && static_cast<int>(m[r].size()) != cols))
            throw SchemaError(where + "/" + key + "/" + std::to_string(r),
                              "wrong column count");
        for (const auto& x : m[r]) {
            if (!x.is_number())
                throw SchemaError(where + "/" + key + "/" + std::to_string(r),
                                  "expected numbers");
            out.push_back(x.get<double>());
        }
    }
    return out;
}

}  // namespace

GridSpec parse_grid(const Json& j, const std::string& where) {
    const double h = need_number(j, where, "h");
    const double T = need_number(j, where, "T");
    const double dt = need_number(j, where, "dt");
    const int n = need_int(j, where, "n");
    try {
        return GridSpec::make(h, T, dt, n);
    } catch (const std::invalid_argument& e) {
        // GridSpec::make already formats "/grid/field: reason"
        std::string msg = e.what();
        const auto colon = msg.find(':');
        throw SchemaError(where + msg.substr(5, colon - 5),
                          colon == std::string::npos ? msg : msg.substr(colon + 2));
    }
}

SampledPath parse_path(const Json& j, const std::string& where) {
    const GridSpec grid = parse_grid(j, where.empty() ? "" : where);
    const double t = need_number(j, where, "t");
    int t_index = 0;
    try {
        t_index = grid.index_of(t);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(where + "/t", e.what());
    }
    const std::vector<double> vals =
        need_matrix(j, where, "values", grid.nodes_at(t_index), grid.n);
    return SampledPath::from_values(grid, t_index, vals);
}

Json path_to_json(const SampledPath& p) {
    Json j;
    const GridSpec& g = p.grid();
    j["h"] = g.h;
    j["T"] = g.T;
    j["dt"] = g.dt;
    j["n"] = g.n;
    j["t"] = p.t();
    Json rows = Json::array();
    for (int k = 0; k < p.node_count(); ++k) {
        Json row = Json::array();
        for (double x : p.node(k)) row.push_back(x);
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

std::vector<SampledPath> parse_points(const Json& j) {
    if (j.is_object() && j.contains("values")) return {parse_path(j)};
    const Json& arr = j.is_array() ? j : j.contains("points") ? j["points"] : Json();
    if (!arr.is_array()) throw SchemaError("/points", "expected an array of paths");
    std::vector<SampledPath> out;
    for (size_t i = 0; i < arr.size(); ++i)
        out.push_back(parse_path(arr[i], "/points/" + std::to_string(i)));
    return out;
}

DelayControlProblem parse_problem(const Json& j) {
    if (!j.contains("grid")) throw SchemaError("/grid", "missing");
    const GridSpec grid = parse_grid(j["grid"], "/grid");
    if (!j.contains("U") || !j["U"].is_array() || j["U"].empty())
        throw SchemaError("/U", "expected a non-empty array of control vectors");
    std::vector<std::vector<double>> U;
    const int m = static_cast<int>(j["U"][0].size());
    for (size_t r = 0; r < j["U"].size(); ++r) {
        const auto& row = j["U"][r];
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw SchemaError("/U/" + std::to_string(r), "ragged control vector");
        U.emplace_back();
        for (const auto& x : row) U.back().push_back(x.get<double>());
    }
    if (!j.contains("f")) throw SchemaError("/f", "missing");
    const std::string fkind = need_string(j["f"], "/f", "kind");
    DelayControlProblem prob;
    if (fkind == "integrator") {
        if (m != grid.n) throw SchemaError("/U", "integrator needs m == n");
        prob = make_integrator_problem(grid, std::move(U));
    } else if (fkind == "linear_delay") {
        auto A0 = need_matrix(j["f"], "/f", "A0", grid.n, grid.n);
        auto A1 = need_matrix(j["f"], "/f", "A1", grid.n, grid.n);
        auto B = need_matrix(j["f"], "/f", "B", grid.n, m);
        const std::string sigma_kind =
            j.contains("sigma") ? need_string(j["sigma"], "/sigma", "kind")
                                : "norm_terminal";
        const std::string chi_kind =
            j.contains("chi") ? need_string(j["chi"], "/chi", "kind") : "zero";
        try {
            prob = make_linear_delay_problem(grid, std::move(U), std::move(A0),
                                             std::move(A1), std::move(B), sigma_kind,
                                             chi_kind);
        } catch (const std::invalid_argument& e) {
            throw SchemaError("/f", e.what());
        }
        if (j.contains("c_fchi")) prob.c_fchi = need_number(j, "", "c_fchi");
        return prob;
    } else {
        throw SchemaError("/f/kind", "unknown builtin '" + fkind + "'");
    }
    // integrator path: optional overrides
    if (j.contains("sigma")) {
        const std::string kind = need_string(j["sigma"], "/sigma", "kind");
        if (kind == "norm_terminal") {
        } else if (kind == "quadratic_terminal") {
            prob.sigma = [](const SampledPath& z) {
                const double v = current_norm(z);
                return v * v;
            };
        } else if (kind == "indicator_midpoint") {
            prob.sigma = [](const SampledPath& z) {
                const int mid = z.grid().steps_h + z.grid().steps_T / 2;
                return z.node(mid)[0] > 0.0 ? 1.0 : 0.0;
            };
            prob.sigma_rho1_lipschitz = false;
        } else {
            throw SchemaError("/sigma/kind", "unknown builtin '" + kind + "'");
        }
    }
    if (j.contains("chi")) {
        const std::string kind = need_string(j["chi"], "/chi", "kind");
        if (kind == "zero") {
        } else if (kind == "one") {
            prob.chi = [](const PathPoint&, std::span<const double>) { return 1.0; };
        } else if (kind == "quadratic") {
            prob.chi = [](const PathPoint& p, std::span<const double> u) {
                double s = 0.0;
                for (double x : p.current()) s += x * x;
                for (double x : u) s += x * x;
                return s;
            };
        } else {
            throw SchemaError("/chi/kind", "unknown builtin '" + kind + "'");
        }
    }
    if (j.contains("c_fchi")) prob.c_fchi = need_number(j, "", "c_fchi");
    return prob;
}

HamiltonianSpec parse_hamiltonian(const Json& j, const std::string& where) {
    const std::string kind = need_string(j, where, "kind");
    HamiltonianSpec H;
    H.name = kind;
    if (kind == "linear") {
        if (!j.contains("b") || !j["b"].is_array())
            throw SchemaError(where + "/b", "expected a drift vector");
        std::vector<double> b;
        for (const auto& x : j["b"]) b.push_back(x.get<double>());
        double nb = 0.0;
        for (double x : b) nb += x * x;
        H.c_H = std::max(1.0, std::sqrt(nb));
        H.eval = [b = std::move(b)](const PathPoint&, std::span<const double> s) {
            double v = 0.0;
            for (size_t i = 0; i < b.size(); ++i) v += b[i] * s[i];
            return v;
        };
    } else if (kind == "norm_scaled") {
        const double c = need_number(j, where, "c");
        H.c_H = c;
        H.eval = [c](const PathPoint& p, std::span<const double> s) {
            double ns = 0.0;
            for (double x : s) ns += x * x;
            return c * (1.0 + sup_norm(p)) * std::sqrt(ns);
        };
    } else if (kind == "bellman") {
        if (!j.contains("problem"))
            throw SchemaError(where + "/problem", "bellman needs an inline problem");
        auto prob = std::make_shared<DelayControlProblem>(parse_problem(j["problem"]));
        H.c_H = prob->c_fchi;
        H.eval = [prob](const PathPoint& p, std::span<const double> s) {
            return bellman_hamiltonian(*prob, p, s);
        };
    } else {
        throw SchemaError(where + "/kind", "unknown builtin '" + kind + "'");
    }
    return H;
}

std::string path_to_csv(const SampledPath& p) {
    std::ostringstream os;
    os.precision(17);
    os << "time";
    for (int i = 1; i <= p.grid().n; ++i) os << ",x_" << i;
    os << "\n";
    for (int k = 0; k < p.node_count(); ++k) {
        os << p.grid().node_time(k);
        for (double x : p.node(k)) os << "," << x;
        os << "\n";
    }
    return os.str();
}

Json load_json_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw SchemaError("/", "cannot open '" + filename + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("/", std::string("invalid JSON: ") + e.what());
    }
    return j;
}

}  // namespace pathhj

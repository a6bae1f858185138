#pragma once

// JSON run configuration for the CLI and the serialization helpers shared by
// report files. Matrices are arrays of row arrays of complex-literal strings;
// antilinear operators carry an explicit "antilinear": true tag next to their
// matrix part.

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "nhqm/antilinear.hpp"
#include "nhqm/complex_format.hpp"
#include "nhqm/core.hpp"
#include "nhqm/dynamics.hpp"
#include "nhqm/two_level.hpp"

namespace nhqm {

using Json = nlohmann::json;

inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw ConfigError("expected a number or complex literal string");
}

inline Json complex_to_json(Complex z) { return format_complex(z); }

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
    if (cols == 0) throw ConfigError("matrix rows must be non-empty arrays");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || row.size() != cols)
            throw ConfigError("matrix rows must all have the same length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(row.at(k));
    }
    return m;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json antilinear_to_json(const AntilinearOp& v) {
    return Json{{"matrix", matrix_to_json(v.m)}, {"antilinear", true}};
}

inline AntilinearOp antilinear_from_json(const Json& j) {
    if (!j.contains("antilinear") || !j.at("antilinear").get<bool>())
        throw ConfigError("antilinear operator requires \"antilinear\": true");
    return {matrix_from_json(j.at("matrix"))};
}

inline Vector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("vector must be a non-empty array");
    Vector v(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) v[k] = complex_from_json(j.at(k));
    return v;
}

enum class InputKind { RawMatrix, TwoLevel, DasGreenwood };

struct ScanSpec {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

struct RunConfig {
    InputKind kind = InputKind::RawMatrix;
    Matrix matrix;                     // RawMatrix
    TwoLevelParams two_level;          // TwoLevel
    DasGreenwoodParams das_greenwood;  // DasGreenwood
    int branch = +1;
    std::optional<Matrix> psi_override;  // verify negative-control hook
    std::optional<EvolutionSpec> evolution;
    std::optional<ScanSpec> scan;
    Tolerances tol;
    std::string output_path;
};

inline RunConfig parse_config(const Json& j) {
    RunConfig cfg;
    int inputs = 0;
    if (j.contains("matrix")) ++inputs;
    if (j.contains("model")) ++inputs;
    if (inputs != 1)
        throw ConfigError("config must contain exactly one input: \"matrix\" or \"model\"");

    if (j.contains("tolerances")) {
        const Json& t = j.at("tolerances");
        if (t.contains("eig")) cfg.tol.eig = t.at("eig").get<double>();
        if (t.contains("sym")) cfg.tol.sym = t.at("sym").get<double>();
        if (t.contains("gap")) cfg.tol.gap = t.at("gap").get<double>();
        if (t.contains("pd")) cfg.tol.pd = t.at("pd").get<double>();
        if (t.contains("cond_max")) cfg.tol.cond_max = t.at("cond_max").get<double>();
    }

    if (j.contains("matrix")) {
        cfg.kind = InputKind::RawMatrix;
        cfg.matrix = matrix_from_json(j.at("matrix"));
        if (!cfg.matrix.square()) throw ConfigError("input matrix must be square");
    } else {
        const std::string model = j.at("model").get<std::string>();
        if (model == "two_level") {
            cfg.kind = InputKind::TwoLevel;
            cfg.two_level.alpha = j.at("alpha").get<double>();
            cfg.two_level.beta = j.at("beta").get<double>();
            cfg.two_level.e1 = complex_from_json(j.at("e1"));
            cfg.two_level.e2 = complex_from_json(j.at("e2"));
        } else if (model == "das_greenwood") {
            cfg.kind = InputKind::DasGreenwood;
            cfg.das_greenwood.r = j.at("r").get<double>();
            cfg.das_greenwood.s = j.at("s").get<double>();
            cfg.das_greenwood.t = j.at("t").get<double>();
            cfg.das_greenwood.theta = j.at("theta").get<double>();
            if (j.contains("phi_phase"))
                cfg.das_greenwood.phi_phase = j.at("phi_phase").get<double>();
            if (j.contains("branch")) {
                const std::string b = j.at("branch").get<std::string>();
                if (b == "+") cfg.branch = +1;
                else if (b == "-") cfg.branch = -1;
                else throw ConfigError("branch must be \"+\" or \"-\"");
            }
        } else {
            throw ConfigError("unknown model: '" + model + "'");
        }
    }

    if (j.contains("psi_override")) cfg.psi_override = matrix_from_json(j.at("psi_override"));

    if (j.contains("evolution")) {
        const Json& e = j.at("evolution");
        EvolutionSpec spec;
        spec.c = vector_from_json(e.at("c"));
        spec.d = vector_from_json(e.at("d"));
        spec.t_start = e.at("t_start").get<double>();
        spec.t_end = e.at("t_end").get<double>();
        spec.n_steps = e.at("n_steps").get<std::size_t>();
        spec.validate();
        cfg.evolution = std::move(spec);
    }

    if (j.contains("scan")) {
        const Json& s = j.at("scan");
        ScanSpec sc;
        sc.param = s.at("param").get<std::string>();
        sc.min = s.at("min").get<double>();
        sc.max = s.at("max").get<double>();
        sc.count = s.at("count").get<std::size_t>();
        if (sc.count < 1) throw ConfigError("scan count must be >= 1");
        cfg.scan = std::move(sc);
    }

    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        return parse_config(j);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

// The Hamiltonian named by the config input.
inline Matrix config_hamiltonian(const RunConfig& cfg) {
    switch (cfg.kind) {
        case InputKind::RawMatrix: return cfg.matrix;
        case InputKind::TwoLevel: return build_h(cfg.two_level, cfg.tol);
        default: return build_das_greenwood_h(cfg.das_greenwood);
    }
}

}  // namespace nhqm

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trc/mask.hpp"
#include "trc/solver.hpp"
#include "trc/tensor.hpp"

namespace trc {

namespace detail {

/// Shortest exact decimal form; %.17g round-trips doubles and keeps the CSV
/// byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Per-iteration trace: header `iter,rel_change,primal_residual,objective`,
/// one row per iteration.
inline void write_trace_csv(const std::string& path, const SolverReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
    out << "iter,rel_change,primal_residual,objective\n";
    for (const auto& row : report.trace) {
        out << row.iter << ',' << detail::format_double(row.rel_change) << ','
            << detail::format_double(row.primal_residual) << ','
            << detail::format_double(row.objective) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

struct RunSummary {
    double rse = 0.0;
    std::int64_t iterations = 0;
    bool converged = false;
    double seconds = 0.0;
};

inline void write_summary_json(const std::string& path, const RunSummary& summary) {
    nlohmann::json j{{"rse", summary.rse},
                     {"iterations", summary.iterations},
                     {"converged", summary.converged},
                     {"seconds", summary.seconds}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open summary file for writing: " + path);
    out << j.dump(2) << '\n';
}

inline RunSummary read_summary_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open summary file: " + path);
    nlohmann::json j;
    in >> j;
    RunSummary s;
    s.rse = j.at("rse").get<double>();
    s.iterations = j.at("iterations").get<std::int64_t>();
    s.converged = j.at("converged").get<bool>();
    s.seconds = j.at("seconds").get<double>();
    return s;
}

/// Everything needed to reproduce a run, serialized next to its outputs.
/// `seconds` is informational; all other fields determine the outputs byte
/// for byte.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    Shape tensor_shape;
    Shape ranks;  // synth only
    MaskSpec mask;
    SolverConfig solver;
    std::uint64_t seed = 0;
    std::string out_dir;
    double seconds = 0.0;
};

inline void write_manifest_json(const std::string& path, const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["tensor_shape"] = m.tensor_shape;
    if (!m.ranks.empty()) j["ranks"] = m.ranks;
    j["mask"] = {{"kind", m.mask.kind == MaskKind::Stripes ? "stripes" : "random"},
                 {"missing_ratio", m.mask.missing_ratio},
                 {"seed", m.mask.seed},
                 {"stripe_axis", m.mask.stripe_axis == StripeAxis::Columns ? "columns" : "rows"},
                 {"per_frame_stripes", m.mask.per_frame_stripes}};
    j["solver"] = {{"d", m.solver.step},          {"alphas", m.solver.alphas},
                   {"rho", m.solver.rho},         {"tol", m.solver.tol},
                   {"max_iters", m.solver.max_iters}, {"rho_growth", m.solver.rho_growth}};
    j["seed"] = m.seed;
    j["out_dir"] = m.out_dir;
    j["seconds"] = m.seconds;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open manifest file for writing: " + path);
    out << j.dump(2) << '\n';
}

/// Raw tensor file: text header "TEN1\n<space-separated shape>\n" followed by
/// the flat float64 payload in storage order, little-endian.
inline void write_tensor(const std::string& path, const DenseTensor& x) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open tensor file for writing: " + path);
    out << "TEN1\n";
    const auto& shape = x.shape();
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) out << ' ';
        out << shape[i];
    }
    out << '\n';
    out.write(reinterpret_cast<const char*>(x.data().data()),
              static_cast<std::streamsize>(x.data().size() * sizeof(double)));
    if (!out) throw std::runtime_error("failed writing tensor file: " + path);
}

inline DenseTensor read_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open tensor file: " + path);
    std::string magic;
    if (!std::getline(in, magic) || magic != "TEN1") {
        throw std::runtime_error("bad tensor file magic in " + path);
    }
    std::string shape_line;
    if (!std::getline(in, shape_line)) {
        throw std::runtime_error("missing shape line in " + path);
    }
    Shape shape;
    std::istringstream ss(shape_line);
    std::int64_t d = 0;
    while (ss >> d) shape.push_back(d);
    const std::int64_t count = shape_product(shape);
    if (shape.size() < 2 || count <= 0) {
        throw std::runtime_error("bad tensor shape in " + path);
    }
    std::vector<double> data(static_cast<std::size_t>(count));
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(data.size() * sizeof(double))) {
        throw std::runtime_error("truncated tensor payload in " + path);
    }
    return DenseTensor(std::move(shape), std::move(data));
}

}  // namespace trc

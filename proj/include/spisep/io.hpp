#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"

namespace spisep::io {

using nlohmann::json;

// Matrices: {"order": n, "entries": [[...], ...]} or Matrix Market coordinate.

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return {{"order", m.rows()}, {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries")) throw parse_error("matrix JSON needs an \"entries\" array");
    const json& rows = j.at("entries");
    if (!rows.is_array() || rows.empty()) throw parse_error("matrix JSON: \"entries\" must be a nonempty array");
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (j.contains("order") && (!j.at("order").is_number_integer() || j.at("order").get<long>() != n))
        throw parse_error("matrix JSON: \"order\" does not match the number of rows");
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw parse_error("matrix JSON: row " + std::to_string(i + 1) + " has the wrong length");
        for (Eigen::Index k = 0; k < n; ++k) {
            const json& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) throw parse_error("matrix JSON: non-numeric entry");
            m(i, k) = v.get<double>();
        }
    }
    return m;
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Coordinate real symmetric, lower triangle, 1-based.
inline std::string matrix_to_market(const Matrix& m) {
    std::vector<std::pair<std::pair<int, int>, double>> entries;
    for (int j = 0; j < m.cols(); ++j)
        for (int i = j; i < m.rows(); ++i)
            if (m(i, j) != 0.0) entries.push_back({{i + 1, j + 1}, m(i, j)});
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << m.rows() << ' ' << m.cols() << ' ' << entries.size() << '\n';
    for (const auto& [ij, v] : entries) out << ij.first << ' ' << ij.second << ' ' << format_double(v) << '\n';
    return out.str();
}

inline Matrix matrix_from_market(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0) throw parse_error("Matrix Market: missing header");
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    for (auto* s : {&object, &format, &field, &symmetry})
        for (auto& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (object != "matrix" || format != "coordinate") throw parse_error("Matrix Market: only coordinate matrices are supported");
    if (field != "real" && field != "integer") throw parse_error("Matrix Market: field must be real or integer");
    if (symmetry != "symmetric" && symmetry != "general") throw parse_error("Matrix Market: symmetry must be symmetric or general");

    while (std::getline(in, line) && (line.empty() || line[0] == '%')) {
    }
    long rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream size(line);
        if (!(size >> rows >> cols >> nnz) || rows <= 0 || rows != cols || nnz < 0)
            throw parse_error("Matrix Market: bad size line");
    }
    Matrix m = Matrix::Zero(rows, cols);
    for (long k = 0; k < nnz; ++k) {
        long i = 0, j = 0;
        std::string token;
        if (!(in >> i >> j >> token)) throw parse_error("Matrix Market: truncated entry list");
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end); // accepts subnormals, unlike operator>>
        if (end == token.c_str() || *end != '\0') throw parse_error("Matrix Market: bad value '" + token + "'");
        if (i < 1 || j < 1 || i > rows || j > cols) throw parse_error("Matrix Market: index out of range");
        m(i - 1, j - 1) = v;
        if (symmetry == "symmetric") m(j - 1, i - 1) = v;
    }
    return m;
}

inline std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot write " + path);
    f << text;
}

/// Matrix Market when the text starts with the banner, JSON otherwise.
inline Matrix parse_matrix(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text.compare(first, 14, "%%MatrixMarket") == 0)
        return matrix_from_market(text.substr(first));
    try {
        return matrix_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw parse_error(std::string("matrix JSON: ") + e.what());
    }
}

inline Matrix read_matrix(const std::string& path) { return parse_matrix(read_text(path)); }

// Graphs: {"order": n, "edges": [[1, 2], ...], "coupling": [[1, 3], ...]}, labels 1-based.

inline json graph_to_json(const CoupledGraph& cg) {
    json edges = json::array(), pairs = json::array();
    for (auto [u, v] : cg.graph.edges()) edges.push_back({u + 1, v + 1});
    for (auto [a, b] : cg.coupling.pairs()) pairs.push_back({a + 1, b + 1});
    return {{"order", cg.graph.order()}, {"edges", std::move(edges)}, {"coupling", std::move(pairs)}};
}

namespace detail {
inline std::vector<Edge> pairs_from_json(const json& arr, const char* what) {
    if (!arr.is_array()) throw parse_error(std::string("graph JSON: \"") + what + "\" must be an array");
    std::vector<Edge> out;
    for (const json& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw parse_error(std::string("graph JSON: each entry of \"") + what + "\" must be a pair of integers");
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}
} // namespace detail

/// Without a "coupling" field the order must be even and the coupling is {i, i+p}.
inline CoupledGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.at("order").is_number_integer())
        throw parse_error("graph JSON needs an integer \"order\"");
    const int n = j.at("order").get<int>();
    const auto edges = j.contains("edges") ? detail::pairs_from_json(j.at("edges"), "edges") : std::vector<Edge>{};
    for (auto [u, v] : edges)
        if (u < 1 || v < 1 || u > n || v > n) throw parse_error("graph JSON: edge label out of range");
    LabeledGraph g = LabeledGraph::from_labels(n, edges);
    if (j.contains("coupling")) return {g, Coupling::from_labels(detail::pairs_from_json(j.at("coupling"), "coupling"))};
    return CoupledGraph::from_labeled(g);
}

inline CoupledGraph parse_graph(const std::string& text) {
    try {
        return graph_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw parse_error(std::string("graph JSON: ") + e.what());
    }
}

inline CoupledGraph read_graph(const std::string& path) { return parse_graph(read_text(path)); }

} // namespace spisep::io

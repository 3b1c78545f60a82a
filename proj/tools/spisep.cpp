// Command-line front end for the spisep library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spisep/io.hpp"
#include "spisep/spisep.hpp"

namespace {

using nlohmann::json;
using namespace spisep;

enum Exit { ok = 0, parse = 2, precondition = 3, numerical = 4 };

struct Options {
    double tol_cluster = 1e-6;
    double tol_rank = 1e-9;
    double tol_zero = 1e-10;
    std::uint64_t seed = 1;
    bool json = false;
};

json tolerances(const Options& o) {
    return {{"cluster_tol", o.tol_cluster}, {"rank_tol", o.tol_rank}, {"zero_tol", o.tol_zero}};
}

void emit(const Options& o, const json& report, const std::string& text) {
    if (o.json)
        std::cout << report.dump(2) << '\n';
    else
        std::cout << text;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw parse_error("cannot read number '" + item + "'");
        }
    }
    return out;
}

/// "1-2,3-4" with 1-based labels.
std::vector<Edge> parse_pairs(const std::string& s) {
    std::vector<Edge> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw parse_error("coupling pair '" + item + "' must look like a-b");
        try {
            out.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        } catch (const std::exception&) {
            throw parse_error("coupling pair '" + item + "' must look like a-b");
        }
    }
    return out;
}

json labels_json(VertexSet s) {
    json out = json::array();
    for (; s; s &= s - 1) out.push_back(std::countr_zero(s) + 1);
    return out;
}

json edges_json(const LabeledGraph& g) {
    json out = json::array();
    for (auto [u, v] : g.edges()) out.push_back({u + 1, v + 1});
    return out;
}

std::string join(const std::vector<double>& v) {
    std::ostringstream s;
    s.precision(12);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    return s.str();
}

DenseSymmetric load(const std::string& path) { return DenseSymmetric(io::read_matrix(path)); }

int cmd_spectrum(const Options& o, const std::string& path) {
    const auto n = load(path);
    const auto spec = symplectic_spectrum(n, o.tol_cluster);
    json clusters = json::array();
    std::ostringstream text;
    text.precision(12);
    text << "symplectic eigenvalues: " << join(spec.values) << "\n";
    for (const auto& c : spec.clusters) {
        clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
        text << "  " << c.value << " x" << c.multiplicity << "\n";
    }
    emit(o, {{"order", n.order()}, {"values", spec.values}, {"clusters", clusters}, {"tolerances", tolerances(o)}},
         text.str());
    return ok;
}

int cmd_williamson(const Options& o, const std::string& path) {
    const auto n = load(path);
    const auto w = williamson_decompose(n);
    std::ostringstream text;
    text.precision(12);
    text << "D = " << join(w.d) << "\nS =\n" << w.s << "\nresiduals: reconstruction " << w.reconstruction_residual
         << ", symplectic " << w.symplectic_residual << "\n";
    emit(o,
         {{"d", w.d},
          {"s", io::matrix_to_json(w.s)["entries"]},
          {"reconstruction_residual", w.reconstruction_residual},
          {"symplectic_residual", w.symplectic_residual},
          {"tolerances", tolerances(o)}},
         text.str());
    return ok;
}

int cmd_sssp(const Options& o, const std::string& path, const std::string& direction) {
    const auto n = load(path);
    const bool rank = has_sssp_rank(n, o.tol_rank, o.tol_zero);
    const auto null = has_sssp_nullspace(n, o.tol_rank, o.tol_zero);
    const auto v = xi(n, o.tol_zero);
    json report{{"rank_test", rank},
                {"nullspace_test", null.sssp},
                {"agree", rank == null.sssp},
                {"xi_rows", v.reduced.rows()},
                {"xi_cols", v.reduced.cols()},
                {"nullity", null.nullity},
                {"tolerances", tolerances(o)}};
    std::ostringstream text;
    text << "SSSP (rank of Xi): " << (rank ? "yes" : "no") << "\nSSSP (nullspace): " << (null.sssp ? "yes" : "no")
         << "\n";
    if (null.witness) {
        report["witness"] = io::matrix_to_json(*null.witness)["entries"];
        text << "witness Y =\n" << *null.witness << "\n";
    }
    if (!direction.empty()) {
        const DenseSymmetric r(io::read_matrix(direction));
        const auto d = sssp_in_direction(n, r, o.tol_rank, o.tol_zero);
        const auto g = direction_graph(graph_of_matrix(n, o.tol_zero), r.matrix(), o.tol_zero);
        report["direction"] = {{"sssp", d.sssp}, {"graph_edges", edges_json(g)}};
        text << "SSSP in direction R: " << (d.sssp ? "yes" : "no") << "\n";
    }
    emit(o, report, text.str());
    return rank == null.sssp ? ok : numerical;
}

DenseSymmetric construct(const std::string& family, int p, std::vector<double> targets, std::uint64_t seed,
                         const std::string& mode, const std::string& graph_path) {
    if (p < 1) throw invalid_input("--p must be positive");
    const bool given = !targets.empty();
    if (!given) targets.assign(static_cast<std::size_t>(p), 1.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    if (family == "identity") {
        Vector d(2 * p);
        for (int i = 0; i < p; ++i) d(i) = d(i + p) = targets.at(static_cast<std::size_t>(i));
        return DenseSymmetric(Matrix(d.asDiagonal()));
    }
    if (family == "eq2" || family == "join")
        return given ? realize_nonneg_symplectic(shear(all_ones(p)), targets) : ones_shear_matrix(p);
    if (family == "tripath") return realize_shear(path_b(p), targets);
    if (family == "kpp") return realize_shear(householder_b(p), targets);
    if (family == "dopico-johnson") {
        Matrix a(p, p), w(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) a(i, j) = u(rng);
        for (int i = 0; i < p; ++i)
            for (int j = i; j < p; ++j) w(i, j) = w(j, i) = u(rng);
        return dopico_johnson(a.transpose() * a + 0.5 * Matrix::Identity(p, p), w);
    }
    if (family == "smear") {
        if (mode != "complete" && mode != "two-cliques") throw invalid_input("--mode must be complete or two-cliques");
        return random_smear(targets, seed, mode == "complete" ? SmearMode::complete : SmearMode::two_cliques);
    }
    if (family == "all-simple") {
        if (graph_path.empty()) throw invalid_input("all-simple needs --graph");
        return realize_distinct_on_graph(targets, io::read_graph(graph_path).graph, seed);
    }
    throw invalid_input("unknown family '" + family + "'");
}

int cmd_construct(const Options& o, const std::string& family, int p, const std::string& targets,
                  const std::string& mode, const std::string& graph_path, const std::string& out) {
    const auto n = construct(family, p, targets.empty() ? std::vector<double>{} : parse_list(targets), o.seed, mode,
                             graph_path);
    const bool market = out.size() >= 4 && out.compare(out.size() - 4, 4, ".mtx") == 0;
    const std::string text = market ? io::matrix_to_market(n.matrix()) : io::matrix_to_json(n.matrix()).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else {
        io::write_text(out, text);
        std::cout << "wrote " << out << " (order " << n.order() << ")\n";
    }
    return ok;
}

int cmd_zc(const Options& o, const std::string& path, const std::string& coupling) {
    auto cg = io::read_graph(path);
    if (!coupling.empty()) cg = CoupledGraph(cg.graph, Coupling::from_labels(parse_pairs(coupling)));
    const auto best = minimum_coupled_forcing_set(cg);
    const bool one = zc_equals_one(cg);
    const LabeledGraph closure = coupling_closure_graph(cg);
    json report{{"zc", best.number},
                {"minimum_set", labels_json(best.set)},
                {"loop_zf_of_closure", loop_zf_number(closure)},
                {"zc_equals_one", one},
                {"closure_is_caterpillar", is_caterpillar(closure)}};
    std::ostringstream text;
    text << "Z_C = " << best.number << "\nminimum set: " << labels_json(best.set).dump() << "\n";
    emit(o, report, text.str());
    return ok;
}

int cmd_catalogue(const Options& o, int samples) {
    const auto entries = catalogue_order4(o.seed, samples);
    json rows = json::array();
    std::ostringstream text;
    for (const auto& e : entries) {
        json row{{"graph", e.graph}, {"coupling", e.coupling_id}, {"verdict", to_string(e.verdict)},
                 {"reason", e.reason}};
        if (!e.labeling.empty()) {
            json lab = json::array();
            for (int l : e.labeling) lab.push_back(l + 1);
            row["labeling"] = lab;
        }
        if (e.witness) {
            row["witness"] = io::matrix_to_json(e.witness->matrix())["entries"];
            row["witness_source"] = e.witness_source;
            row["witness_sssp"] = e.witness_sssp;
            row["witness_value"] = e.witness_value;
            row["witness_residual"] = e.witness_residual;
        }
        if (e.evidence_samples > 0) {
            row["evidence_samples"] = e.evidence_samples;
            row["evidence_min_ratio"] = e.evidence_min_ratio;
        }
        rows.push_back(std::move(row));
        text << e.graph << "\tC" << e.coupling_id << "\t" << to_string(e.verdict);
        if (e.witness) text << "\t(" << e.witness_source << ")";
        text << "\n";
    }
    emit(o, {{"entries", rows}, {"seed", o.seed}, {"tolerances", tolerances(o)}}, text.str());
    for (const auto& e : entries)
        if (e.verdict == Verdict::unresolved) return numerical;
    return ok;
}

int cmd_audit(const Options& o, const std::string& path) {
    const auto r = sparsity_audit(load(path), o.tol_zero);
    json report{{"order", r.order},
                {"nnz", r.nnz},
                {"nnz_inverse", r.nnz_inverse},
                {"irreducible", r.irreducible},
                {"symp_pd", r.symp_pd},
                {"pair_bound", r.pair_bound},
                {"pair_bound_holds", r.pair_bound_holds},
                {"symp_pd_bound", r.symp_pd_bound},
                {"symp_pd_bound_holds", r.symp_pd_bound_holds},
                {"tolerances", tolerances(o)}};
    std::ostringstream text;
    text << "nnz(N) = " << r.nnz << ", nnz(N^-1) = " << r.nnz_inverse << ", irreducible: " << (r.irreducible ? "yes" : "no")
         << "\n";
    if (r.irreducible) text << "bound 8n-8 = " << r.pair_bound << (r.pair_bound_holds ? " holds" : " VIOLATED") << "\n";
    if (r.irreducible && r.symp_pd)
        text << "sympPD bound 4n-4 = " << r.symp_pd_bound << (r.symp_pd_bound_holds ? " holds" : " VIOLATED") << "\n";
    emit(o, report, text.str());
    return r.violated() ? numerical : ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symplectic eigenvalues, SSSP and coupled zero forcing for labeled graphs"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--tol-cluster", o.tol_cluster, "relative gap for multiplicity clustering");
    app.add_option("--tol-rank", o.tol_rank, "relative singular value cutoff for rank tests");
    app.add_option("--tol-zero", o.tol_zero, "relative cutoff for zero entries");
    app.add_option("--seed", o.seed, "seed for randomized constructions (SPISEP_SEED overrides)");
    app.add_flag("--json", o.json, "print JSON reports");

    std::string matrix, direction, graph, coupling, family, targets, mode = "complete", out;
    int p = 2, samples = 1000;

    auto* spectrum = app.add_subcommand("spectrum", "symplectic eigenvalues with multiplicities");
    spectrum->add_option("matrix", matrix, "matrix file (JSON or Matrix Market)")->required();
    auto* williamson = app.add_subcommand("williamson", "Williamson normal form S^T N S = D (+) D");
    williamson->add_option("matrix", matrix)->required();
    auto* sssp = app.add_subcommand("sssp", "strong symplectic spectral property");
    sssp->add_option("matrix", matrix)->required();
    sssp->add_option("--direction", direction, "tangent direction R (matrix file)");
    auto* cons = app.add_subcommand("construct", "build a matrix from a named family");
    cons->add_option("--family", family,
                     "identity | eq2 | join | tripath | kpp | dopico-johnson | smear | all-simple")
        ->required();
    cons->add_option("--p", p, "half order");
    cons->add_option("--targets", targets, "comma separated symplectic eigenvalues");
    cons->add_option("--mode", mode, "smear mode: complete | two-cliques");
    cons->add_option("--graph", graph, "graph file for all-simple");
    cons->add_option("--out", out, "output file (.mtx for Matrix Market, JSON otherwise)");
    auto* zc = app.add_subcommand("zc", "coupled zero forcing number");
    zc->add_option("graph", graph, "graph JSON file")->required();
    zc->add_option("--coupling", coupling, "pairs such as 1-2,3-4 (1-based)");
    auto* cat = app.add_subcommand("catalogue-order4", "verdicts for all graphs of order four");
    cat->add_option("--samples", samples, "random samples for evidence-based verdicts");
    auto* audit = app.add_subcommand("audit-sparsity", "nonzero counts against the sparsity bounds");
    audit->add_option("matrix", matrix)->required();
    for (auto* sub : {spectrum, williamson, sssp, cons, zc, cat, audit}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : parse;
    }
    if (const char* env = std::getenv("SPISEP_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: SPISEP_SEED is not an unsigned integer\n";
            return parse;
        }
    }

    try {
        if (*spectrum) return cmd_spectrum(o, matrix);
        if (*williamson) return cmd_williamson(o, matrix);
        if (*sssp) return cmd_sssp(o, matrix, direction);
        if (*cons) return cmd_construct(o, family, p, targets, mode, graph, out);
        if (*zc) return cmd_zc(o, graph, coupling);
        if (*cat) return cmd_catalogue(o, samples);
        if (*audit) return cmd_audit(o, matrix);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse;
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return precondition;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
    return ok;
}

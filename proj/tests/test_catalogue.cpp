#include <catch_amalgamated.hpp>

#include <map>

#include "spisep/catalogue.hpp"
#include "support.hpp"

using namespace spisep;
using namespace testing;

namespace {

// 'a' arbitrary, 's' arbitrary with an SSSP witness required, '1' simple only; one letter per coupling.
const std::map<std::string, std::string> kExpected{
    {"4K1", "aaa"},  {"2K1+K2", "1a1"}, {"2K2", "aaa"}, {"K1+P3", "111"}, {"K1+K3", "111"}, {"P4", "111"},
    {"K1,3", "111"}, {"C4", "sss"},     {"paw", "1ss"}, {"K4-e", "sss"},  {"K4", "sss"},
};

} // namespace

TEST_CASE("order-4 catalogue") {
    const auto entries = catalogue_order4(1, 1000);
    REQUIRE(entries.size() == 33);
    for (const auto& e : entries) {
        INFO(e.graph << " C" << e.coupling_id << ": " << to_string(e.verdict) << " (" << e.reason << ")");
        const char want = kExpected.at(e.graph)[static_cast<std::size_t>(e.coupling_id - 1)];
        CHECK(e.verdict != Verdict::unresolved);
        if (want == '1') {
            CHECK(e.verdict == Verdict::simple_only);
            CHECK_FALSE(e.witness.has_value());
            continue;
        }
        REQUIRE(is_arbitrary(e.verdict));
        if (want == 's') CHECK(e.verdict == Verdict::arbitrary_with_sssp_witness);
        REQUIRE(e.witness.has_value());

        // independent re-check of the witness
        const auto& n = *e.witness;
        LabeledGraph g(4);
        for (const auto& ng : order4_graphs())
            if (ng.name == e.graph) g = ng.graph;
        CHECK(graph_of_matrix(n) == apply_permutation(g, e.labeling));
        CHECK(find_representative_labeling(
                  CoupledGraph(g, order4_couplings()[static_cast<std::size_t>(e.coupling_id - 1)]), graph_of_matrix(n))
                  .has_value());
        const auto spec = spectrum_oracle(n.matrix());
        CHECK(std::abs(spec[0] - spec[1]) < 1e-9 * spec[1]);
        const DenseSymmetric unit(Matrix(n.matrix() / e.witness_value));
        CHECK(is_symp_pd(unit));
        const Matrix wn = omega(2) * unit.matrix();
        CHECK(max_abs(wn * wn + Matrix::Identity(4, 4)) < 1e-9);
        if (e.verdict == Verdict::arbitrary_with_sssp_witness) {
            CHECK(has_sssp_rank(n));
            CHECK(has_sssp_nullspace(n).sssp);
        }
    }
}

TEST_CASE("named witnesses") {
    const auto entries = catalogue_order4(1, 200);
    auto find = [&](const std::string& g, int c) {
        for (const auto& e : entries)
            if (e.graph == g && e.coupling_id == c) return e;
        FAIL("missing entry");
        return entries.front();
    };
    const auto paw = find("paw", 2);
    CHECK(paw.witness_source == "paw");
    CHECK(paw.witness_residual <= 1e-10);
    CHECK(paw.witness_value == Catch::Approx(1.0));

    const auto c4 = find("C4", 1);
    CHECK(c4.witness_source == "c4_cycle");
    CHECK(c4.witness_residual <= 1e-10);
    CHECK(c4.witness_value == Catch::Approx(std::sqrt(2.0)));

    const auto paw1 = find("paw", 1);
    CHECK(paw1.evidence_samples == 200);
    CHECK(paw1.evidence_min_ratio > 1e-6);

    CHECK(find("P4", 3).reason.find("3p-2") != std::string::npos);
    CHECK(find("K1+P3", 2).reason.find("isolated") != std::string::npos);
}

TEST_CASE("evidence statistic") {
    // For p = 1 every (Omega N)^2 is a multiple of I.
    CHECK(equal_spectrum_evidence(LabeledGraph(2), 20, 1) < 1e-12);
    CHECK(equal_spectrum_evidence(complete_graph(2), 20, 1) < 1e-12);
    Rng rng(3);
    const auto n = random_pd_on(rng, path_graph(4));
    const Matrix wn = omega(2) * n.matrix();
    const Matrix x = wn * wn;
    CHECK((x - x.trace() / 4 * Matrix::Identity(4, 4)).norm() > 1e-6 * x.norm());
}

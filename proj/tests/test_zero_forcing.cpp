#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace spisep;
using namespace testing;

namespace {

/// Closure with the two rules applied one force at a time in random order.
VertexSet shuffled_closure(const CoupledGraph& cg, VertexSet blue, Rng& rng) {
    const int n = cg.graph.order();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        std::shuffle(order.begin(), order.end(), rng);
        for (int v : order) {
            const VertexSet nb = cg.graph.neighbors(v) | bit(cg.coupling.partner(v));
            const VertexSet white = nb & ~blue;
            if (((blue >> v) & 1U) && popcount(white) == 1) {
                blue |= white;
                changed = true;
                break;
            }
            if (!((blue >> v) & 1U) && white == 0) {
                blue |= bit(v);
                changed = true;
                break;
            }
        }
    }
    return blue;
}

CoupledGraph random_coupled(Rng& rng, int n, double density) {
    const auto couplings = enumerate_couplings(n);
    return {random_graph(rng, n, density), couplings[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(couplings.size()) - 1))]};
}

} // namespace

TEST_CASE("coupled closure on small cases") {
    const CoupledGraph p6(path_graph(6), Coupling::consecutive(6));
    CHECK(coupled_closure(p6, bit(0)) == all_vertices(6));
    CHECK(coupled_closure(p6, all_vertices(6)) == all_vertices(6));
    const CoupledGraph k2(complete_graph(2), Coupling::standard(2));
    CHECK(coupled_closure(k2, 0) == 0);
    CHECK(coupled_closure(k2, 1) == 3);
}

TEST_CASE("coupled closure is monotone, idempotent and order independent") {
    Rng rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 * uniform_int(rng, 1, 5);
        const auto cg = random_coupled(rng, n, uniform(rng, 0.0, 0.8));
        const VertexSet a = std::uniform_int_distribution<VertexSet>(0, all_vertices(n))(rng);
        const VertexSet b = a | std::uniform_int_distribution<VertexSet>(0, all_vertices(n))(rng);
        const VertexSet ca = coupled_closure(cg, a);
        REQUIRE((ca & a) == a);
        REQUIRE((ca & ~coupled_closure(cg, b)) == 0);
        REQUIRE(coupled_closure(cg, ca) == ca);
        REQUIRE(shuffled_closure(cg, a, rng) == ca);
        REQUIRE(coupled_closure(cg, a) == loop_closure(coupling_closure_graph(cg), a));
    }
}

TEST_CASE("coupled zero forcing numbers of named families") {
    for (int p = 1; p <= 6; ++p) {
        const CoupledGraph path(path_graph(2 * p), Coupling::consecutive(2 * p));
        CHECK(zc_number(path) == 1);
        CHECK(zc_equals_one(path));
        if (p >= 2) {
            const CoupledGraph cyc(cycle_graph(2 * p), Coupling::consecutive(2 * p));
            CHECK(zc_number(cyc) == 2);
            CHECK_FALSE(zc_equals_one(cyc));
        }
    }
    for (int p = 1; p <= 4; ++p)
        for (const auto& c : enumerate_couplings(2 * p)) CHECK(zc_number({complete_graph(2 * p), c}) == 2 * p - 1);
    CHECK(zc_number(matched_caterpillar_example()) == 1);
    CHECK(zc_equals_one(matched_caterpillar_example()));
    CHECK(minimum_coupled_forcing_set(CoupledGraph(path_graph(6), Coupling::consecutive(6))).set == bit(0));
}

TEST_CASE("loop and standard zero forcing numbers") {
    for (int n = 1; n <= 10; ++n) {
        CHECK(loop_zf_number(path_graph(n)) == 1);
        CHECK(standard_zf_number(path_graph(n)) == 1);
        CHECK(standard_zf_number(complete_graph(n)) == std::max(1, n - 1));
        if (n >= 2) CHECK(loop_zf_number(complete_graph(n)) == n - 1);
        if (n >= 3) {
            CHECK(loop_zf_number(cycle_graph(n)) == 2);
            CHECK(standard_zf_number(cycle_graph(n)) == 2);
        }
    }
    CHECK(loop_zf_number(LabeledGraph(1)) == 1); // an isolated vertex must start blue
    CHECK(loop_zf_number(star_graph(6)) == 1);
}

TEST_CASE("Z_C equals Z_ell of the closure graph") {
    Rng rng(2);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 * uniform_int(rng, 1, 6);
        const auto cg = random_coupled(rng, n, uniform(rng, 0.0, 0.7));
        REQUIRE(zc_number(cg) == loop_zf_number(coupling_closure_graph(cg)));
    }
}

TEST_CASE("min degree <= Z_ell <= Z") {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = uniform_int(rng, 1, 10);
        const auto g = random_graph(rng, n, uniform(rng, 0.0, 1.0));
        const int zl = loop_zf_number(g);
        REQUIRE(g.min_degree() <= zl);
        REQUIRE(zl <= standard_zf_number(g));
    }
}

TEST_CASE("Z_C = 1 exactly for caterpillars matched by the coupling") {
    int positive = 0;
    for (const auto& [n, trees] : trees_up_to(10)) {
        if (n % 2 != 0) continue;
        for (const auto& t : trees) {
            for (const auto& c : enumerate_couplings(n)) {
                const CoupledGraph cg(t, c);
                bool brute = false;
                for (int v = 0; v < n && !brute; ++v) brute = coupled_closure(cg, bit(v)) == all_vertices(n);
                REQUIRE(zc_equals_one(cg) == brute);
                positive += brute ? 1 : 0;
            }
        }
    }
    CHECK(positive > 0);
}

TEST_CASE("symplectic multiplicity never exceeds Z_C") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 * uniform_int(rng, 1, 4);
        const auto cg = random_coupled(rng, n, uniform(rng, 0.0, 0.8));
        const auto lab = representative_labelings(cg)[static_cast<std::size_t>(trial) % representative_labelings(cg).size()];
        const auto g = apply_permutation(cg.graph, lab);
        const auto m = random_pd_on(rng, g);
        const auto r = msp_upper_bound(m, cg);
        REQUIRE(r.holds);
        REQUIRE(apply_permutation(cg.graph, r.labeling) == g);
    }
    // a path in path order forces simple eigenvalues
    const CoupledGraph path(path_graph(6), Coupling::consecutive(6));
    const auto sample = random_pd_on(rng, apply_permutation(path.graph, representative_labelings(path).front()));
    CHECK(msp_upper_bound(sample, path).max_multiplicity == 1);
    // identity: multiplicity 2 on the empty graph, which has Z_C = 2
    const auto id = msp_upper_bound(DenseSymmetric(Matrix::Identity(4, 4)), CoupledGraph::from_labeled(LabeledGraph(4)));
    CHECK(id.max_multiplicity == 2);
    CHECK(id.zc == 2);
    CHECK_THROWS_AS(msp_upper_bound(DenseSymmetric(Matrix::Identity(4, 4)), CoupledGraph::from_labeled(complete_graph(4))),
                    invalid_input);
}

TEST_CASE("coronas: Z_C = Z_ell(H o K1) <= Z(H)") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int p = uniform_int(rng, 1, 7);
        const auto h = random_graph(rng, p, uniform(rng, 0.0, 1.0));
        const auto cg = corona(h);
        const int zc = zc_number(cg);
        REQUIRE(zc == loop_zf_number(cg.graph));
        REQUIRE(zc <= standard_zf_number(h));
    }
    CHECK(zc_equals_one(corona(path_graph(6))));
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(zc_number(CoupledGraph::from_labeled(path_graph(22))), size_guard_error);
    CHECK_THROWS_AS(loop_zf_number(path_graph(21)), size_guard_error);
    CHECK_NOTHROW(standard_zf_number(path_graph(20)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_support.hpp"

using namespace flagspec;
using namespace flagspec::testing;

namespace {

// X = interval, Z_1, Z_2 its endpoints, entries Z_I = intersection over the
// complement: K_empty = 0, K_{1} = K_{2} = point, K_{12} = interval.
CubeOfComplexes interval_cube() {
    BoundedComplex empty = zero_complex();
    BoundedComplex point = make_complex(0, {1}, {});
    BoundedComplex interval = make_complex(0, {2, 1}, {IntegerMatrix::from_rows({{-1}, {1}})});
    std::vector<BoundedComplex> entries{empty, point, point, interval};
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    maps[{0u, 1u}] = {IntegerMatrix(1, 0)};
    maps[{0u, 2u}] = {IntegerMatrix(1, 0)};
    maps[{1u, 3u}] = {IntegerMatrix::from_rows({{0}, {1}})};  // point {1} is the vertex v1
    maps[{2u, 3u}] = {IntegerMatrix::from_rows({{1}, {0}})};  // point {2} is the vertex v0
    return make_cube(2, std::move(entries), std::move(maps));
}

AbelianPresentation group_at(const SpectralSequencePage& page, int p, int q) {
    auto it = page.groups.find({p, q});
    return it == page.groups.end() ? AbelianPresentation() : it->second;
}

}  // namespace

TEST_CASE("epsilon sign rule") {
    CHECK(epsilon_sign(0b110u, 0b111u) == 1);   // I = {2,3} inside J = {1,2,3}
    CHECK(epsilon_sign(0b101u, 0b111u) == -1);  // I = {1,3}
    CHECK(epsilon_sign(0b011u, 0b111u) == 1);   // I = {1,2}
    CHECK(epsilon_sign(0b001u, 0b110u) == 0);   // I = {1} not inside {2,3}
    CHECK_THROWS_AS(epsilon_sign(0b001u, 0b111u), invariant_error);
}

TEST_CASE("subset order is lexicographic on element lists") {
    auto subs = subsets_of_size(4, 2);
    REQUIRE(subs.size() == 6);
    CHECK(subs[0] == 0b0011u);  // {1,2}
    CHECK(subs[1] == 0b0101u);  // {1,3}
    CHECK(subs[2] == 0b1001u);  // {1,4}
    CHECK(subs[3] == 0b0110u);  // {2,3}
    CHECK(subs[4] == 0b1010u);  // {2,4}
    CHECK(subs[5] == 0b1100u);  // {3,4}
}

TEST_CASE("make_cube validates functoriality") {
    Rng rng(3);
    CHECK_NOTHROW(random_cube(rng, 1, 0, 2, 2, 3));

    // square with identity covers but a bad diagonal map
    BoundedComplex z = make_complex(0, {1}, {});
    std::vector<BoundedComplex> entries{z, z, z, z};
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    IntegerMatrix one = IntegerMatrix::identity(1);
    maps[{0u, 1u}] = {one};
    maps[{0u, 2u}] = {one};
    maps[{1u, 3u}] = {one};
    maps[{2u, 3u}] = {one};
    maps[{0u, 3u}] = {IntegerMatrix::from_rows({{2}})};
    CHECK_THROWS_AS(make_cube(2, entries, maps), invariant_error);

    maps.erase({0u, 3u});
    CHECK_NOTHROW(make_cube(2, entries, maps));
    CHECK_NOTHROW(interval_cube());
}

TEST_CASE("epsilon composites vanish on random cubes") {
    Rng rng(11);
    for (int it = 0; it < 10; ++it) {
        int m = static_cast<int>(rand_range(rng, 1, 3));
        CubeOfComplexes k = random_cube(rng, m, 0, 2, 2, 3);
        CHECK(epsilon_composites_vanish(k));
    }
}

TEST_CASE("cfb boundary cases") {
    Rng rng(13);
    CubeOfComplexes k = random_cube(rng, 2, 0, 3, 3, 3);
    CHECK(cfb_geq(k, k.m + 5).is_zero());
    BoundedComplex top = cfb_geq(k, k.m);
    const BoundedComplex& full = k.entry(k.full_subset());
    for (int i = full.lo - 1; i <= full.hi() + 1; ++i) {
        CHECK(top.dim(i) == full.dim(i));
        CHECK(top.diff(i) == full.diff(i));
    }
    CHECK(cfb_geq(k, -4).dims == cofiber(k).dims);
}

TEST_CASE("cofiber of a 1-cube is the cone of the structure map") {
    Rng rng(19);
    for (int it = 0; it < 10; ++it) {
        CubeOfComplexes k = random_cube(rng, 1, 0, 3, 3, 3);
        BoundedComplex c = cofiber(k);
        BoundedComplex cc = cone(k.structure_map(0u, 1u));
        for (int i = std::min(c.lo, cc.lo) - 1; i <= std::max(c.hi(), cc.hi()) + 1; ++i) {
            CHECK(c.dim(i) == cc.dim(i));
            CHECK(c.diff(i) == cc.diff(i));
        }
    }
}

TEST_CASE("interval cube: cofiber computes the relative homology of (I, dI)") {
    CubeOfComplexes k = interval_cube();
    BoundedComplex c = cofiber(k);
    CHECK(homology(c, 1) == AbelianPresentation(1, {}));
    CHECK(homology(c, 0) == AbelianPresentation(0, {}));
    for (int i = -2; i <= 4; ++i) {
        if (i == 1) continue;
        CHECK(homology(c, i) == AbelianPresentation(0, {}));
    }
}

TEST_CASE("interval cube: pages and convergence") {
    CubeOfComplexes k = interval_cube();
    SpectralSequencePage e1 = e1_page(k);
    CHECK(group_at(e1, 1, -2) == AbelianPresentation(2, {}));
    CHECK(group_at(e1, 2, -2) == AbelianPresentation(1, {}));
    CHECK(e1.groups.size() == 2);

    SpectralSequencePage e2 = turn_page(e1);
    CHECK(group_at(e2, 1, -2) == AbelianPresentation(1, {}));
    CHECK(group_at(e2, 2, -2) == AbelianPresentation(0, {}));
    CHECK(e2.groups.size() == 1);

    SpectralSequencePage e3 = turn_page(e2);
    CHECK(e3.same_groups(e2));

    ConvergenceReport report = e_infinity_compare(k);
    CHECK(report.pass);
    bool found = false;
    for (const auto& row : report.rows)
        if (row.homological_degree == 1) {
            found = true;
            CHECK(row.e_rank_sum == 1);
            CHECK(row.h_rank == 1);
        }
    CHECK(found);
}

TEST_CASE("m = 1 degeneration matches the cone kernel and cokernel") {
    BoundedComplex z = make_complex(0, {1}, {});
    std::vector<BoundedComplex> entries{z, z};
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    maps[{0u, 1u}] = {IntegerMatrix::from_rows({{2}})};
    CubeOfComplexes k = make_cube(1, std::move(entries), std::move(maps));

    SpectralSequencePage e1 = e1_page(k);
    CHECK(group_at(e1, 0, -1) == AbelianPresentation(1, {}));
    CHECK(group_at(e1, 1, -1) == AbelianPresentation(1, {}));
    SpectralSequencePage e2 = turn_page(e1);
    CHECK(group_at(e2, 0, -1) == AbelianPresentation(0, {}));
    CHECK(group_at(e2, 1, -1) == AbelianPresentation(0, {2}));
    CHECK(homology(cofiber(k), 0) == AbelianPresentation(0, {2}));
    CHECK(e_infinity_compare(k).pass);
}

TEST_CASE("zero cube yields an empty page and trivially passes") {
    std::vector<BoundedComplex> entries{zero_complex(), zero_complex()};
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    maps[{0u, 1u}] = {IntegerMatrix(0, 0)};
    CubeOfComplexes k = make_cube(1, std::move(entries), std::move(maps));
    CHECK(e1_page(k).groups.empty());
    CHECK(cofiber(k).is_zero());
    CHECK(e_infinity_compare(k).pass);
}

TEST_CASE("pages with zero differentials repeat and stabilize") {
    // direct-sum cube: all structure maps zero
    BoundedComplex a = make_complex(0, {1, 1}, {IntegerMatrix::from_rows({{2}})});
    BoundedComplex b = make_complex(0, {1, 1}, {IntegerMatrix(1, 1)});
    std::vector<BoundedComplex> entries{a, b, b, a};
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    for (auto [i, j] : std::vector<std::pair<Subset, Subset>>{{0u, 1u}, {0u, 2u}, {1u, 3u}, {2u, 3u}})
        maps[{i, j}] = {IntegerMatrix(1, 1), IntegerMatrix(1, 1)};
    CubeOfComplexes k = make_cube(2, std::move(entries), std::move(maps));

    SpectralSequencePage page = e1_page(k);
    for (const auto& [key, d] : page.differentials) CHECK(d.is_zero());
    SpectralSequencePage next = turn_page(page);
    CHECK(next.same_groups(page));
    SpectralSequencePage after = turn_page(next);
    CHECK(after.same_groups(page));
    CHECK(e_infinity_compare(k).pass);
}

TEST_CASE("sub-cube bookkeeping") {
    CubeOfComplexes k = interval_cube();
    auto [rest, trans] = sub_cubes(k);
    // restriction keeps K_empty, K_{1}; translate keeps K_{2}, K_{12}
    CHECK(rest.m == 1);
    CHECK(rest.entry(0u).is_zero());
    CHECK(rest.entry(1u).dim(0) == 1);
    CHECK(trans.entry(0u).dim(0) == 1);
    CHECK(trans.entry(1u).dim(0) == 2);
    CHECK(trans.entry(1u).dim(1) == 1);

    Rng rng(29);
    CubeOfComplexes k2 = random_cube(rng, 2, 0, 2, 2, 3);
    CHECK_NOTHROW(sub_cubes(k2));
    CubeOfComplexes k1 = random_cube(rng, 1, 0, 2, 2, 3);
    CHECK_THROWS_AS(sub_cubes(k1), validation_error);
}

TEST_CASE("exact triangle of the cfb filtration on random cubes") {
    Rng rng(37);
    for (int it = 0; it < 6; ++it) {
        int m = static_cast<int>(rand_range(rng, 1, 2));
        CubeOfComplexes k = random_cube(rng, m, 0, 2, 2, 2);
        for (int p = 0; p < m; ++p) {
            BoundedComplex c = cfb_geq(k, p);
            if (c.is_zero()) continue;
            auto layout = cfb_block_layout(k, p, c);
            std::vector<std::vector<std::size_t>> sub;
            for (std::size_t dn = 0; dn < layout.size(); ++dn) {
                std::vector<std::size_t> coords;
                for (const CfbBlock& blk : layout[dn])
                    if (subset_size(blk.subset) > p)
                        for (std::size_t x = 0; x < blk.len; ++x) coords.push_back(blk.start + x);
                sub.push_back(std::move(coords));
            }
            CHECK(les_exact(coordinate_ses(c, std::move(sub))));
        }
    }
}

TEST_CASE("cofiber triangle of the sub-cubes on random 2-cubes") {
    Rng rng(41);
    for (int it = 0; it < 6; ++it) {
        CubeOfComplexes k = random_cube(rng, 2, 0, 2, 2, 2);
        BoundedComplex c = cofiber(k);
        if (c.is_zero()) continue;
        // the subsets containing m form a subcomplex isomorphic to cfb K'
        auto layout = cfb_block_layout(k, 0, c);
        Subset top = 1u << (k.m - 1);
        std::vector<std::vector<std::size_t>> sub;
        for (std::size_t dn = 0; dn < layout.size(); ++dn) {
            std::vector<std::size_t> coords;
            for (const CfbBlock& blk : layout[dn])
                if (blk.subset & top)
                    for (std::size_t x = 0; x < blk.len; ++x) coords.push_back(blk.start + x);
            sub.push_back(std::move(coords));
        }
        CHECK(les_exact(coordinate_ses(c, std::move(sub))));
    }
}

TEST_CASE("convergence on random cubes") {
    Rng rng(43);
    for (int it = 0; it < 20; ++it) {
        int m = static_cast<int>(rand_range(rng, 1, 2));
        CubeOfComplexes k = random_cube(rng, m, -1, 3, 3, 3);
        ConvergenceReport r = e_infinity_compare(k);
        if (!r.pass) MESSAGE(r.to_string());
        CHECK(r.pass);
    }
}

TEST_CASE("koszul cube of a nilpotent multiplication operator") {
    GradedModule mod{0, {1, 1}};
    IntegerMatrix op = IntegerMatrix::from_rows({{0, 0}, {1, 0}});
    CubeOfComplexes k = koszul_cube(mod, {op});
    BoundedComplex c = cofiber(k);
    CHECK(homology(c, 0) == AbelianPresentation(1, {}));
    CHECK(homology(c, 1) == AbelianPresentation(1, {}));
    CHECK(e_infinity_compare(k).pass);
}

TEST_CASE("koszul cube with zero operators is an exterior pattern") {
    GradedModule mod{0, {1, 1}};
    IntegerMatrix z(2, 2);
    CubeOfComplexes k = koszul_cube(mod, {z, z});
    SpectralSequencePage e1 = e1_page(k);
    // E_1^{p,q} has binom(2,p) copies of the graded piece M_{p+q+2}
    CHECK(group_at(e1, 0, -2) == AbelianPresentation(1, {}));  // M_0
    CHECK(group_at(e1, 0, -1) == AbelianPresentation(1, {}));  // M_1
    CHECK(group_at(e1, 1, -2) == AbelianPresentation(2, {}));  // M_1 twice
    CHECK(group_at(e1, 1, -3) == AbelianPresentation(2, {}));  // M_0 twice
    CHECK(group_at(e1, 2, -4) == AbelianPresentation(1, {}));
    SpectralSequencePage e2 = turn_page(e1);
    CHECK(e2.same_groups(e1));
}

TEST_CASE("koszul cube rejects non-commuting operators") {
    GradedModule mod{0, {1, 1, 1}};
    IntegerMatrix a(3, 3), b(3, 3);
    a.at(1, 0) = 1;  // M_0 -> M_1
    b.at(2, 1) = 1;  // M_1 -> M_2
    CHECK_THROWS_AS(koszul_cube(mod, {a, b}), invariant_error);
    IntegerMatrix bad = IntegerMatrix::identity(3);
    CHECK_THROWS_AS(koszul_cube(mod, {bad}), validation_error);
    // commuting pair passes the validation
    IntegerMatrix c = a;
    CHECK_NOTHROW(koszul_cube(mod, {a, c}));
}

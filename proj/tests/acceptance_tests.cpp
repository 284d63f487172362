// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line.  Every tolerance is exact; the random families use fixed
// seeds so the run is reproducible.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "flagspec/flag_ring.hpp"
#include "support/test_support.hpp"

using namespace flagspec;
using namespace flagspec::testing;

namespace {

void report(int criterion, bool ok, const char* what) {
    std::printf("[criterion %02d] %s : %s\n", criterion, ok ? "PASS" : "FAIL", what);
    std::fflush(stdout);
}

const std::vector<CubeOfComplexes>& criterion_cubes() {
    static std::vector<CubeOfComplexes> cubes = [] {
        Rng rng(0x5eed5eedULL);
        std::vector<CubeOfComplexes> out;
        for (int it = 0; it < 102; ++it) {
            int m = 1 + it % 3;
            int len = static_cast<int>(rand_range(rng, 1, 3));
            int lo = static_cast<int>(rand_range(rng, -1, 1));
            out.push_back(random_cube(rng, m, lo, len, 3, 3));
        }
        return out;
    }();
    return cubes;
}

AbelianPresentation group_at(const SpectralSequencePage& page, int p, int q) {
    auto it = page.groups.find({p, q});
    return it == page.groups.end() ? AbelianPresentation() : it->second;
}

AbelianPresentation kernel_presentation(const IntegerMatrix& map, const IntegerMatrix& src_rel,
                                        const IntegerMatrix& dst_rel) {
    IntegerMatrix pre = preimage_lattice(map, lattice_basis(dst_rel));
    return cokernel(solve_exact(pre, lattice_basis(src_rel)));
}

AbelianPresentation cokernel_presentation(const IntegerMatrix& map, const IntegerMatrix& dst_rel) {
    return cokernel(hstack(dst_rel, map));
}

ChowFlagRing chow(DynkinType t, int rank, LatticeKind kind) {
    return chow_flag_ring(build_root_datum(t, rank, kind));
}

}  // namespace

TEST_CASE("criterion 1: spectral sequence converges to the cofiber homology") {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (const CubeOfComplexes& k : criterion_cubes()) {
        ConvergenceReport r = e_infinity_compare(k);
        if (!r.pass) {
            MESSAGE(r.to_string());
            ok = false;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < 60.0;
    report(1, ok && in_time, "E-infinity matches the cofiber homology on 102 random cubes");
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 2: eps and Theta composites vanish, d_r d_r = 0 on every page") {
    bool ok = true;
    for (const CubeOfComplexes& k : criterion_cubes()) {
        if (!epsilon_composites_vanish(k)) ok = false;
        // every cfb_{>=p} must be a valid complex (the Theta composites feed
        // its differential, and construction verifies d*d = 0)
        for (int p = 0; p <= k.m + 1; ++p) {
            BoundedComplex c = cfb_geq(k, p);
            for (int i = c.lo; i <= c.hi(); ++i)
                if (!(c.diff(i) * c.diff(i + 1)).is_zero()) ok = false;
        }
        SpectralSequencePage page = e1_page(k);
        for (int r = 1; r <= k.m + 2; ++r) {
            for (const auto& [key, y] : page.differentials) {
                auto it = page.differentials.find({key.p + page.r, key.q - page.r + 1});
                if (it == page.differentials.end()) continue;
                // exact vanishing modulo the relations of the far position
                const IntegerMatrix& far_rel =
                    page.rels.at({key.p + 2 * page.r, -key.p - key.q - 2});
                if (!reduce_columns_mod_lattice(it->second * y, far_rel).is_zero()) ok = false;
            }
            page = turn_page(page);
        }
    }
    report(2, ok, "exact vanishing of the sign-calculus composites on every generated cube");
    CHECK(ok);
}

TEST_CASE("criterion 3: m = 1 reproduces the cone long exact sequence") {
    Rng rng(0xc0071e5ULL);
    bool ok = true;
    for (int it = 0; it < 50; ++it) {
        BoundedComplex k = random_complex(rng, 0, static_cast<int>(rand_range(rng, 1, 3)), 3, 3);
        BoundedComplex l = random_complex(rng, 0, static_cast<int>(rand_range(rng, 1, 3)), 3, 3);
        ChainMap f = random_chain_map(rng, k, l);

        std::vector<BoundedComplex> entries{k, l};
        std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
        maps[{0u, 1u}] = f.parts;
        CubeOfComplexes cube = make_cube(1, std::move(entries), std::move(maps));

        // exactness at every node of the long exact sequence of the cone
        BoundedComplex c = cofiber(cube);
        std::vector<std::vector<std::size_t>> sub;
        for (int j = c.lo; j <= c.hi(); ++j) {
            std::vector<std::size_t> coords;
            for (long x = k.dim(j - 1); x < c.dim(j); ++x)
                coords.push_back(static_cast<std::size_t>(x));
            sub.push_back(std::move(coords));
        }
        if (!les_exact(coordinate_ses(c, std::move(sub)))) ok = false;

        // the stable page consists of the kernels and cokernels of H(f)
        SpectralSequencePage stable = turn_page(e1_page(cube));
        int lo = std::min(k.lo, l.lo) - 1, hi = std::max(k.hi(), l.hi()) + 1;
        for (int n = lo; n <= hi; ++n) {
            HomologyData hk = homology_data(k, n);
            HomologyData hl = homology_data(l, n);
            IntegerMatrix induced = homology_induced(f, n, hk, hl);
            AbelianPresentation coker =
                cokernel_presentation(induced, hl.boundaries_in_cycles);
            AbelianPresentation ker =
                kernel_presentation(induced, hk.boundaries_in_cycles, hl.boundaries_in_cycles);
            if (group_at(stable, 1, -n - 1) != coker) ok = false;
            if (group_at(stable, 0, -(n + 1)) != ker) ok = false;
        }
        if (!e_infinity_compare(cube).pass) ok = false;
    }
    report(3, ok, "cone long exact sequence recovered for 50 random chain maps");
    CHECK(ok);
}

TEST_CASE("criterion 4: interval with endpoint subspaces computes H(I, dI)") {
    BoundedComplex empty = zero_complex();
    BoundedComplex point = make_complex(0, {1}, {});
    BoundedComplex interval = make_complex(0, {2, 1}, {IntegerMatrix::from_rows({{-1}, {1}})});
    std::vector<BoundedComplex> entries{empty, point, point, interval};
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;
    maps[{0u, 1u}] = {IntegerMatrix(1, 0)};
    maps[{0u, 2u}] = {IntegerMatrix(1, 0)};
    maps[{1u, 3u}] = {IntegerMatrix::from_rows({{0}, {1}})};
    maps[{2u, 3u}] = {IntegerMatrix::from_rows({{1}, {0}})};
    CubeOfComplexes cube = make_cube(2, std::move(entries), std::move(maps));

    // cellular relative chain complex of (I, dI): one cell in degree 1
    BoundedComplex relative = make_complex(0, {0, 1}, {IntegerMatrix(0, 1)});

    bool ok = true;
    BoundedComplex c = cofiber(cube);
    for (int i = -2; i <= 4; ++i)
        if (homology(c, i) != homology(relative, i)) ok = false;

    SpectralSequencePage e2 = turn_page(e1_page(cube));
    SpectralSequencePage e3 = turn_page(e2);
    SpectralSequencePage e4 = turn_page(e3);
    if (!e2.same_groups(e3) || !e2.same_groups(e4)) ok = false;
    if (group_at(e2, 1, -2) != AbelianPresentation(1, {})) ok = false;
    if (homology(c, 1) != AbelianPresentation(1, {})) ok = false;
    if (homology(c, 0) != AbelianPresentation(0, {})) ok = false;
    if (!e_infinity_compare(cube).pass) ok = false;
    report(4, ok, "E_2 = E_infinity recovers H_1(I, dI) = Z and H_0(I, dI) = 0");
    CHECK(ok);
}

TEST_CASE("criterion 5: CH(G/B) graded ranks equal the Poincare polynomials") {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    ok &= chow(DynkinType::A, 1, LatticeKind::simply_connected).rank_by_degree ==
          std::vector<long>{1, 1};
    ok &= chow(DynkinType::A, 2, LatticeKind::simply_connected).rank_by_degree ==
          std::vector<long>{1, 2, 2, 1};
    ok &= chow(DynkinType::B, 2, LatticeKind::simply_connected).rank_by_degree ==
          std::vector<long>{1, 2, 2, 2, 1};
    ok &= chow(DynkinType::G, 2, LatticeKind::simply_connected).rank_by_degree ==
          std::vector<long>{1, 2, 2, 2, 2, 2, 1};
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < 5.0;
    report(5, ok && in_time, "Schubert ranks for A1, A2, B2, G2");
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 6: quotient rings of Prop. Giso") {
    bool ok = true;
    GradedQuotient sl2 = group_ring_quotient(chow(DynkinType::A, 1, LatticeKind::simply_connected));
    ok &= sl2.degrees[0] == AbelianPresentation(1, {});
    ok &= sl2.degrees[1] == AbelianPresentation(0, {});

    GradedQuotient pgl2 = group_ring_quotient(chow(DynkinType::A, 1, LatticeKind::adjoint));
    ok &= pgl2.degrees[0] == AbelianPresentation(1, {});
    ok &= pgl2.degrees[1] == AbelianPresentation(0, {2});

    GradedQuotient sl3 = group_ring_quotient(chow(DynkinType::A, 2, LatticeKind::simply_connected));
    ok &= sl3.degrees[0] == AbelianPresentation(1, {});
    for (std::size_t d = 1; d < sl3.degrees.size(); ++d)
        ok &= sl3.degrees[d] == AbelianPresentation(0, {});
    report(6, ok, "CH(SL2) = Z, CH(PGL2) = Z + Z/2, CH(SL3) = Z");
    CHECK(ok);
}

TEST_CASE("criterion 7: torsion indexes") {
    bool ok = true;
    ok &= torsion_index(chow(DynkinType::A, 1, LatticeKind::simply_connected)).tau == 1;
    ok &= torsion_index(chow(DynkinType::A, 1, LatticeKind::adjoint)).tau == 2;
    ok &= torsion_index(chow(DynkinType::A, 2, LatticeKind::simply_connected)).tau == 1;
    report(7, ok, "tau(SL2) = 1, tau(PGL2) = 2, tau(SL3) = 1");
    CHECK(ok);
}

TEST_CASE("criterion 8: J-invariant in the generic case") {
    bool ok = true;
    ChowFlagRing pgl2 = chow(DynkinType::A, 1, LatticeKind::adjoint);
    JInvariantResult j2 = j_invariant(pgl2, 2);
    ok &= j2.success && j2.r == 1 && j2.exponents == std::vector<int>{1} &&
          j2.degrees == std::vector<int>{1};
    JInvariantResult j3 = j_invariant(pgl2, 3);
    ok &= j3.success && j3.r == 0;
    ChowFlagRing sl2 = chow(DynkinType::A, 1, LatticeKind::simply_connected);
    for (long p : {2L, 3L, 5L, 7L}) {
        JInvariantResult j = j_invariant(sl2, Int(p));
        ok &= j.success && j.r == 0;
    }
    report(8, ok, "PGL2: r=1, j=(1) at p=2 and r=0 at p=3; SL2: r=0 for p <= 7");
    CHECK(ok);
}

TEST_CASE("criterion 9: Steinberg basis and maximal Tits indexes") {
    bool ok = true;
    // construction verifies the unimodular change of basis against the
    // window model of Z[weights]/(augmented invariants); failure throws
    try {
        K0FlagRing a1 = k0_flag_ring(build_root_datum(DynkinType::A, 1, LatticeKind::simply_connected));
        K0FlagRing a2 = k0_flag_ring(build_root_datum(DynkinType::A, 2, LatticeKind::simply_connected));
        ok &= a1.rank() == 2 && a2.rank() == 6;

        TitsIndexes t1 = maximal_tits_indexes(a1);
        ok &= t1.diagonal && t1.m == std::vector<Int>{1, 1};

        K0FlagRing pgl2 = k0_flag_ring(build_root_datum(DynkinType::A, 1, LatticeKind::adjoint));
        TitsIndexes t2 = maximal_tits_indexes(pgl2);
        ok &= t2.diagonal && t2.m == std::vector<Int>{1, 2};

        TitsIndexes t3 = maximal_tits_indexes(a2);
        ok &= t3.diagonal;
        for (const Int& x : t3.m) ok &= x == 1;
    } catch (const std::exception& e) {
        MESSAGE(e.what());
        ok = false;
    }
    report(9, ok, "unimodular Steinberg basis; m = (1,1) SL2, (1,2) PGL2, all 1 SL3");
    CHECK(ok);
}

TEST_CASE("criterion 10: hat ring with the characteristic image equals the group quotient") {
    bool ok = true;
    std::vector<std::pair<DynkinType, std::pair<int, LatticeKind>>> data{
        {DynkinType::A, {1, LatticeKind::simply_connected}},
        {DynkinType::A, {1, LatticeKind::adjoint}},
        {DynkinType::A, {2, LatticeKind::simply_connected}},
        {DynkinType::B, {2, LatticeKind::simply_connected}},
    };
    for (auto [t, rk] : data) {
        auto [rank, kind] = rk;
        ChowFlagRing cr = chow(t, rank, kind);
        if (!(hat_ring(cr, chow_char_image(cr)) == group_ring_quotient(cr))) ok = false;
        K0FlagRing kr = k0_flag_ring(build_root_datum(t, rank, kind));
        if (!(hat_ring(kr, k0_char_image(kr)) == group_ring_quotient(kr))) ok = false;
    }
    report(10, ok, "both code paths agree on 4 rank <= 2 data x 2 theories");
    CHECK(ok);
}

TEST_CASE("criterion 11: the Koszul cube ties the operator spectral sequence to the quotient") {
    ChowFlagRing sl2 = chow(DynkinType::A, 1, LatticeKind::simply_connected);
    // multiplication by sigma_s as a grade-raising operator on CH(SL2/B)
    std::size_t n = sl2.weyl.size();
    IntegerMatrix op(n, n);
    for (std::size_t w = 0; w < n; ++w) {
        std::vector<Int> unit(n);
        unit[w] = 1;
        std::vector<Int> prod = chow_mult_c1(sl2, {Int(1)}, unit);
        for (std::size_t x = 0; x < n; ++x) op.at(x, w) = prod[x];
    }
    GradedModule mod{0, sl2.rank_by_degree};
    CubeOfComplexes cube = koszul_cube(mod, {op});
    BoundedComplex c = cofiber(cube);

    GradedQuotient q = group_ring_quotient(sl2);
    AbelianPresentation total(q.total_rank(), {});
    for (const auto& d : q.degrees)
        for (const Int& t : d.torsion) total.torsion.push_back(t);

    bool ok = homology(c, 0) == total && total == AbelianPresentation(1, {});
    ok = ok && e_infinity_compare(cube).pass;
    report(11, ok, "m = 1 Koszul cofiber H_0 equals the SL2 quotient total Z");
    CHECK(ok);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagspec/root_datum.hpp"

using namespace flagspec;

namespace {

RootDatum sc(DynkinType t, int rank) { return build_root_datum(t, rank, LatticeKind::simply_connected); }

}  // namespace

TEST_CASE("cartan matrices follow the classification") {
    CHECK(sc(DynkinType::A, 1).cartan == IntegerMatrix::from_rows({{2}}));
    CHECK(sc(DynkinType::A, 2).cartan == IntegerMatrix::from_rows({{2, -1}, {-1, 2}}));
    CHECK(sc(DynkinType::B, 2).cartan == IntegerMatrix::from_rows({{2, -1}, {-2, 2}}));
    CHECK(sc(DynkinType::G, 2).cartan == IntegerMatrix::from_rows({{2, -3}, {-1, 2}}));
    CHECK(sc(DynkinType::A, 3).cartan ==
          IntegerMatrix::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
}

TEST_CASE("type and rank legality") {
    CHECK_THROWS_AS(build_root_datum(DynkinType::B, 1, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(build_root_datum(DynkinType::C, 2, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(build_root_datum(DynkinType::D, 3, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(build_root_datum(DynkinType::E, 5, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(build_root_datum(DynkinType::F, 3, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(build_root_datum(DynkinType::G, 3, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(build_root_datum(DynkinType::A, 9, LatticeKind::adjoint), validation_error);
    CHECK_THROWS_AS(dynkin_type_from_char('Z'), validation_error);
}

TEST_CASE("character lattices between Q and the weight lattice") {
    RootDatum ad = build_root_datum(DynkinType::A, 1, LatticeKind::adjoint);
    CHECK(ad.char_lattice == IntegerMatrix::from_rows({{2}}));  // alpha = 2 omega
    RootDatum s = sc(DynkinType::A, 1);
    CHECK(s.char_lattice == IntegerMatrix::identity(1));

    // a custom lattice must contain every simple root
    CHECK_THROWS_AS(build_root_datum(DynkinType::A, 1, IntegerMatrix::from_rows({{3}})),
                    validation_error);
    CHECK_NOTHROW(build_root_datum(DynkinType::A, 2, IntegerMatrix::identity(2)));
}

TEST_CASE("weyl enumeration sizes and reduced words") {
    CHECK(weyl_enumerate(sc(DynkinType::A, 1)).size() == 2);
    CHECK(weyl_enumerate(sc(DynkinType::A, 2)).size() == 6);
    CHECK(weyl_enumerate(sc(DynkinType::B, 2)).size() == 8);
    CHECK(weyl_enumerate(sc(DynkinType::G, 2)).size() == 12);
    CHECK(weyl_enumerate(sc(DynkinType::A, 3)).size() == 24);

    auto w = weyl_enumerate(sc(DynkinType::A, 2));
    CHECK(w[0].word.empty());
    CHECK(w[0].matrix.is_identity());
    // words are reduced: the matrix of a word of length l never appears earlier
    for (const auto& e : w) {
        IntegerMatrix m = IntegerMatrix::identity(2);
        RootDatum rd = sc(DynkinType::A, 2);
        for (int i : e.word) m = m * rd.simple_reflection(i);
        CHECK(m == e.matrix);
    }

    CHECK_THROWS_AS(weyl_enumerate(sc(DynkinType::A, 2), 5), bound_error);
}

TEST_CASE("poincare polynomials") {
    CHECK(poincare_polynomial(sc(DynkinType::A, 1)) == std::vector<long>{1, 1});
    CHECK(poincare_polynomial(sc(DynkinType::A, 2)) == std::vector<long>{1, 2, 2, 1});
    CHECK(poincare_polynomial(sc(DynkinType::B, 2)) == std::vector<long>{1, 2, 2, 2, 1});
    CHECK(poincare_polynomial(sc(DynkinType::G, 2)) == std::vector<long>{1, 2, 2, 2, 2, 2, 1});

    for (DynkinType t : {DynkinType::A, DynkinType::B, DynkinType::G}) {
        int rank = t == DynkinType::A ? 2 : 2;
        auto p = poincare_polynomial(sc(t, rank));
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == p[p.size() - 1 - i]);
    }
}

TEST_CASE("weyl group orders match the invariant degrees") {
    auto order = [](const RootDatum& rd) { return weyl_enumerate(rd).size(); };
    CHECK(order(sc(DynkinType::A, 1)) == 2);       // degrees (2)
    CHECK(order(sc(DynkinType::A, 2)) == 2 * 3);   // degrees (2,3)
    CHECK(order(sc(DynkinType::B, 2)) == 2 * 4);   // degrees (2,4)
    CHECK(order(sc(DynkinType::G, 2)) == 2 * 6);   // degrees (2,6)
    CHECK(order(sc(DynkinType::A, 3)) == 2 * 3 * 4);
}

TEST_CASE("simple reflections are involutions and satisfy the braid relations") {
    for (auto [t, n] : std::vector<std::pair<DynkinType, int>>{
             {DynkinType::A, 2}, {DynkinType::B, 2}, {DynkinType::G, 2}, {DynkinType::A, 3}}) {
        RootDatum rd = sc(t, n);
        for (int i = 1; i <= n; ++i) {
            IntegerMatrix s = rd.simple_reflection(i);
            CHECK((s * s).is_identity());
        }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                Int prod = rd.cartan.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) *
                           rd.cartan.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1));
                int order = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
                IntegerMatrix m = IntegerMatrix::identity(static_cast<std::size_t>(n));
                for (int k = 0; k < order; ++k)
                    m = m * rd.simple_reflection(i) * rd.simple_reflection(j);
                CHECK(m.is_identity());
            }
    }
}

TEST_CASE("weyl action on characters") {
    RootDatum s = sc(DynkinType::A, 1);
    auto w = weyl_enumerate(s);
    CHECK(weyl_action(s, w[0], {Int(1)}) == std::vector<Int>{1});
    CHECK(weyl_action(s, w[1], {Int(1)}) == std::vector<Int>{-1});  // s(omega) = -omega

    RootDatum ad = build_root_datum(DynkinType::A, 1, LatticeKind::adjoint);
    auto wa = weyl_enumerate(ad);
    CHECK(weyl_action(ad, wa[1], {Int(2)}) == std::vector<Int>{-2});  // s(alpha) = -alpha
    CHECK_THROWS_AS(weyl_action(ad, wa[1], {Int(1)}), validation_error);
}

TEST_CASE("weyl matrices preserve the character lattice") {
    for (auto rd : {build_root_datum(DynkinType::A, 2, LatticeKind::adjoint),
                    build_root_datum(DynkinType::B, 2, LatticeKind::adjoint),
                    build_root_datum(DynkinType::G, 2, LatticeKind::adjoint)}) {
        for (const auto& w : weyl_enumerate(rd))
            CHECK(lattice_contains(rd.char_lattice, w.matrix * rd.char_lattice));
    }
}

TEST_CASE("positive roots") {
    RootDatum a2 = sc(DynkinType::A, 2);
    auto w = weyl_enumerate(a2);
    CHECK(positive_roots(a2, w).size() == 3);
    CHECK(positive_roots(sc(DynkinType::B, 2), weyl_enumerate(sc(DynkinType::B, 2))).size() == 4);
    CHECK(positive_roots(sc(DynkinType::G, 2), weyl_enumerate(sc(DynkinType::G, 2))).size() == 6);

    // each reflection has odd length and pairing <alpha, alpha^vee> = 2
    for (const auto& root : positive_roots(a2, w)) {
        CHECK(w[root.reflection].word.size() % 2 == 1);
        Int pairing = 0;
        for (std::size_t i = 0; i < root.weight_coords.size(); ++i)
            pairing += root.coroot_pairing[i] * root.weight_coords[i];
        CHECK(pairing == 2);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_support.hpp"

using namespace flagspec;
using namespace flagspec::testing;

namespace {

bool is_unimodular(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (const Int& d : smith_diagonal(m))
        if (d != 1) return false;
    return true;
}

void check_snf_contract(const IntegerMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    std::size_t lim = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < lim; ++t) {
        CHECK(s.d.at(t, t) >= 0);
        if (t + 1 < lim && s.d.at(t, t) != 0) CHECK(s.d.at(t + 1, t + 1) % s.d.at(t, t) == 0);
        if (t + 1 < lim && s.d.at(t, t) == 0) CHECK(s.d.at(t + 1, t + 1) == 0);
    }
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form on the stated examples") {
    SmithDecomposition s = smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(s.d == IntegerMatrix::from_rows({{1, 0}, {0, 6}}));
    check_snf_contract(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));

    SmithDecomposition id = smith_normal_form(IntegerMatrix::identity(4));
    CHECK(id.d == IntegerMatrix::identity(4));
    CHECK(id.u == IntegerMatrix::identity(4));
    CHECK(id.v == IntegerMatrix::identity(4));

    SmithDecomposition row = smith_normal_form(IntegerMatrix::from_rows({{4, 6}}));
    CHECK(row.d == IntegerMatrix::from_rows({{2, 0}}));
}

TEST_CASE("smith normal form contract on random matrices") {
    Rng rng(20240811);
    for (int it = 0; it < 60; ++it) {
        std::size_t r = static_cast<std::size_t>(rand_range(rng, 0, 6));
        std::size_t c = static_cast<std::size_t>(rand_range(rng, 0, 6));
        check_snf_contract(random_matrix(rng, r, c, 5));
    }
}

TEST_CASE("cokernel examples") {
    CHECK(cokernel(IntegerMatrix::from_rows({{2}})) == AbelianPresentation(0, {2}));
    CHECK(cokernel(IntegerMatrix(2, 0)) == AbelianPresentation(2, {}));
    CHECK(cokernel(IntegerMatrix::from_rows({{4, 0}, {0, 6}})) == AbelianPresentation(0, {2, 12}));
}

TEST_CASE("cokernel is invariant under unimodular multiplication") {
    Rng rng(7);
    for (int it = 0; it < 30; ++it) {
        std::size_t r = static_cast<std::size_t>(rand_range(rng, 1, 5));
        std::size_t c = static_cast<std::size_t>(rand_range(rng, 1, 5));
        IntegerMatrix a = random_matrix(rng, r, c, 5);
        auto [u, uinv] = random_unimodular(rng, r);
        auto [v, vinv] = random_unimodular(rng, c);
        CHECK(u * uinv == IntegerMatrix::identity(r));
        CHECK(cokernel(a) == cokernel(u * a));
        CHECK(cokernel(a) == cokernel(a * v));
    }
}

TEST_CASE("homology of a composable pair") {
    CHECK(homology_of_pair(IntegerMatrix::from_rows({{2}}), IntegerMatrix(1, 1)) ==
          AbelianPresentation(0, {2}));
    // injective boundary map out, zero in
    CHECK(homology_of_pair(IntegerMatrix(1, 0), IntegerMatrix::from_rows({{1}, {0}})) ==
          AbelianPresentation(0, {}));
    CHECK(homology_of_pair(IntegerMatrix::identity(3), IntegerMatrix(0, 3)) ==
          AbelianPresentation(0, {}));

    CHECK_THROWS_AS(homology_of_pair(IntegerMatrix::from_rows({{1}}),
                                     IntegerMatrix::from_rows({{1}})),
                    invariant_error);
    CHECK_THROWS_AS(homology_of_pair(IntegerMatrix(2, 1), IntegerMatrix(1, 3)), invariant_error);
}

TEST_CASE("homology matches the Hermite-form oracle on random pairs") {
    Rng rng(99);
    int done = 0;
    while (done < 60) {
        std::size_t n = static_cast<std::size_t>(rand_range(rng, 0, 6));
        std::size_t m = static_cast<std::size_t>(rand_range(rng, 0, 6));
        std::size_t k = static_cast<std::size_t>(rand_range(rng, 0, 6));
        IntegerMatrix d_out = random_matrix(rng, k, n, 5);
        // choose d_in inside ker(d_out) so the pair composes to zero
        IntegerMatrix ker = kernel_basis(d_out);
        IntegerMatrix combo = random_matrix(rng, ker.cols(), m, 2);
        IntegerMatrix d_in = ker * combo;
        CHECK(homology_of_pair(d_in, d_out) == homology_oracle(d_in, d_out));
        ++done;
    }
}

TEST_CASE("sublattice divisors") {
    SublatticeDivisors two = sublattice_divisors(IntegerMatrix::from_rows({{2, 0}, {0, 2}}), 2);
    CHECK(two.divisors == std::vector<Int>{2, 2});
    CHECK(two.finite_index);
    CHECK(two.index == 4);

    SublatticeDivisors full = sublattice_divisors(IntegerMatrix::identity(3), 3);
    CHECK(full.divisors == std::vector<Int>{1, 1, 1});
    CHECK(full.index == 1);

    SublatticeDivisors mixed = sublattice_divisors(IntegerMatrix::from_rows({{1, 0}, {1, 2}}), 2);
    CHECK(mixed.divisors == std::vector<Int>{1, 2});
    CHECK(mixed.index == 2);

    SublatticeDivisors thin = sublattice_divisors(IntegerMatrix::from_rows({{3}, {0}}), 2);
    CHECK_FALSE(thin.finite_index);
}

TEST_CASE("sublattice divisors are invariant under column operations") {
    Rng rng(1234);
    for (int it = 0; it < 30; ++it) {
        std::size_t r = static_cast<std::size_t>(rand_range(rng, 1, 5));
        std::size_t c = static_cast<std::size_t>(rand_range(rng, 1, 5));
        IntegerMatrix b = random_matrix(rng, r, c, 4);
        auto [v, vinv] = random_unimodular(rng, c);
        SublatticeDivisors lhs = sublattice_divisors(b, r);
        SublatticeDivisors rhs = sublattice_divisors(b * v, r);
        CHECK(lhs.divisors == rhs.divisors);
        CHECK(lhs.finite_index == rhs.finite_index);
    }
}

TEST_CASE("lattice utilities") {
    IntegerMatrix gens = IntegerMatrix::from_rows({{2, 4}, {0, 6}});
    CHECK(lattice_contains(gens, IntegerMatrix::from_rows({{6}, {6}})));
    CHECK_FALSE(lattice_contains(gens, IntegerMatrix::from_rows({{1}, {0}})));
    CHECK(lattice_equal(gens, IntegerMatrix::from_rows({{2, 0}, {0, 6}})));

    IntegerMatrix f = IntegerMatrix::from_rows({{1, 1}});
    IntegerMatrix target = IntegerMatrix::from_rows({{3}});
    IntegerMatrix pre = preimage_lattice(f, target);
    // {(a, b) : a + b in 3Z}
    CHECK(lattice_contains(pre, IntegerMatrix::from_rows({{1}, {2}})));
    CHECK(lattice_contains(pre, IntegerMatrix::from_rows({{1}, {-1}})));
    CHECK_FALSE(lattice_contains(pre, IntegerMatrix::from_rows({{1}, {0}})));
}

TEST_CASE("presentation invariants") {
    CHECK_THROWS_AS(AbelianPresentation(0, {3, 4}), invariant_error);
    CHECK_THROWS_AS(AbelianPresentation(0, {1}), invariant_error);
    CHECK(AbelianPresentation(1, {2, 4}).torsion_order() == 8);
    CHECK(AbelianPresentation(0, {}).is_trivial());
}

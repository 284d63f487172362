#pragma once

#include <cstddef>
#include <gmpxx.h>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

// Exact linear algebra over the integers: Smith and Hermite normal forms,
// kernels, cokernels, lattice arithmetic and presentations of finitely
// generated abelian groups.  All entries are arbitrary-precision integers;
// intermediate entries of a normal-form computation can exceed any fixed
// width even for small inputs.

namespace flagspec {

using Int = mpz_class;

// Error taxonomy.  validation_error: malformed user input (CLI exit 1).
// invariant_error: a mathematical precondition or internal invariant failed
// (CLI exit 2).  bound_error: a configured resource bound was exceeded
// (CLI exit 3).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct bound_error : std::runtime_error {
    explicit bound_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense integer matrix.  0xn and nx0 matrices are legal and represent zero
// maps; they occur throughout the cube machinery (empty subsets, degrees
// outside a window).
class IntegerMatrix {
  public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix zero(std::size_t rows, std::size_t cols) { return IntegerMatrix(rows, cols); }
    static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);
    static IntegerMatrix diagonal(const std::vector<Int>& d);
    static IntegerMatrix column(const std::vector<Int>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntegerMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;

    IntegerMatrix transpose() const;
    IntegerMatrix operator*(const IntegerMatrix& o) const;
    IntegerMatrix operator+(const IntegerMatrix& o) const;
    IntegerMatrix operator-(const IntegerMatrix& o) const;
    IntegerMatrix operator-() const;
    IntegerMatrix scaled(const Int& c) const;

    std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * vector

    IntegerMatrix submatrix(std::size_t row0, std::size_t nrows, std::size_t col0,
                            std::size_t ncols) const;
    IntegerMatrix column_at(std::size_t j) const;
    void set_column(std::size_t j, const IntegerMatrix& col);

    std::string to_string() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix hstack(const std::vector<IntegerMatrix>& blocks);
IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks);

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , all
// diagonal entries nonnegative.
struct SmithDecomposition {
    IntegerMatrix u, d, v;
};
SmithDecomposition smith_normal_form(const IntegerMatrix& a);

// Diagonal of the Smith form only (cheaper when U, V are not needed).
std::vector<Int> smith_diagonal(const IntegerMatrix& a);

// Canonical row Hermite form of the row lattice of A: row echelon, positive
// pivots, entries above a pivot reduced into [0, pivot); zero rows dropped.
IntegerMatrix row_hermite_form(const IntegerMatrix& a);

// Canonical basis of the column lattice spanned by the columns of G
// (transpose of the row Hermite form of G^T).  Two generating sets span the
// same lattice iff their lattice_basis results are identical.
IntegerMatrix lattice_basis(const IntegerMatrix& gens);

// Basis of { x : A x = 0 } as matrix columns.
IntegerMatrix kernel_basis(const IntegerMatrix& a);

// X with B X = C, where the columns of C lie in the column span of B and B
// has full column rank (so X is unique).  Throws invariant_error otherwise.
IntegerMatrix solve_exact(const IntegerMatrix& b, const IntegerMatrix& c);

// Does every column of vecs lie in the column lattice spanned by gens?
bool lattice_contains(const IntegerMatrix& gens, const IntegerMatrix& vecs);
bool lattice_equal(const IntegerMatrix& gens_a, const IntegerMatrix& gens_b);

// Basis of { v : f v in column span of target_gens }.
IntegerMatrix preimage_lattice(const IntegerMatrix& f, const IntegerMatrix& target_gens);

// Basis of the sublattice of span(inside) whose first `ncoords` coordinates
// vanish.  Columns of `inside` must be a basis.
IntegerMatrix sublattice_with_zero_prefix(const IntegerMatrix& inside, std::size_t ncoords);

// Canonical representatives of the columns of v modulo the column lattice of
// gens; members of the lattice reduce to zero.
IntegerMatrix reduce_columns_mod_lattice(const IntegerMatrix& v, const IntegerMatrix& gens);

// A finitely generated abelian group as (rank, torsion coefficients), the
// torsion coefficients >= 2 and forming a divisibility chain.  This is a
// complete isomorphism invariant, so structural equality is group
// isomorphism.
struct AbelianPresentation {
    long rank = 0;
    std::vector<Int> torsion;

    AbelianPresentation() = default;
    AbelianPresentation(long r, std::vector<Int> t);

    bool operator==(const AbelianPresentation& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianPresentation& o) const { return !(*this == o); }

    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    Int torsion_order() const;
    std::string to_string() const;
};

// Cokernel of Z^cols -> Z^rows.
AbelianPresentation cokernel(const IntegerMatrix& a);

// ker(d_out) / im(d_in) for a composable pair with d_out * d_in = 0.
AbelianPresentation homology_of_pair(const IntegerMatrix& d_in, const IntegerMatrix& d_out);

// Elementary divisors of the sublattice spanned by the columns of B inside
// Z^ambient_rank, and the index [Z^ambient_rank : sublattice] when the
// sublattice has full rank.
struct SublatticeDivisors {
    std::vector<Int> divisors;
    bool finite_index = false;
    Int index = 0;  // meaningful only when finite_index

    std::string to_string() const;
};
SublatticeDivisors sublattice_divisors(const IntegerMatrix& b, std::size_t ambient_rank);

}  // namespace flagspec

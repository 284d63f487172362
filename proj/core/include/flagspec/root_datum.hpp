#pragma once

#include <string>
#include <vector>

#include "flagspec/intlin.hpp"

// Root systems, character lattices and Weyl groups for split semisimple
// groups of rank <= 8.  Characters are stored in the fundamental-weight
// basis, so the simple roots are the columns of the Cartan matrix and the
// pairing <chi, alpha_i^vee> is the i-th coordinate.  The character lattice
// T* sits between the root lattice Q and the weight lattice and is carried
// as an explicit basis matrix; the characteristic maps of the flag module
// depend on it.

namespace flagspec {

enum class DynkinType : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

enum class LatticeKind { simply_connected, adjoint, custom };

struct WeylElement {
    std::vector<int> word;  // reduced expression in simple reflection indices (1-based)
    IntegerMatrix matrix;   // action on the weight basis

    int length() const { return static_cast<int>(word.size()); }
};

struct PositiveRoot {
    std::vector<Int> weight_coords;   // the root in the fundamental-weight basis
    std::vector<Int> coroot_pairing;  // row vector: chi |-> <chi, alpha^vee>
    std::size_t reflection;           // index of s_alpha in the Weyl enumeration
};

struct RootDatum {
    DynkinType type = DynkinType::A;
    int rank = 1;
    IntegerMatrix cartan;               // column j = simple root alpha_j in the weight basis
    IntegerMatrix simple_roots;         // equal to cartan, kept for direct access
    IntegerMatrix fundamental_weights;  // identity in the weight basis
    IntegerMatrix char_lattice;         // columns = basis of T* in the weight basis
    LatticeKind lattice_kind = LatticeKind::simply_connected;

    IntegerMatrix simple_reflection(int i) const;  // 1-based
    bool in_char_lattice(const std::vector<Int>& chi) const;
    std::string name() const;  // e.g. "A2"
};

inline constexpr std::size_t default_weyl_bound = 51840;

DynkinType dynkin_type_from_char(char c);

RootDatum build_root_datum(DynkinType type, int rank, LatticeKind kind);
RootDatum build_root_datum(DynkinType type, int rank, const IntegerMatrix& lattice_basis_matrix);

// Complete duplicate-free enumeration with reduced words, ordered by
// (length, lexicographic word).  Throws bound_error when |W| exceeds the
// bound.
std::vector<WeylElement> weyl_enumerate(const RootDatum& rd,
                                        std::size_t bound = default_weyl_bound);

// Coefficient of t^l = number of Weyl elements of length l.
std::vector<long> poincare_polynomial(const RootDatum& rd,
                                      std::size_t bound = default_weyl_bound);

// s_alpha(chi) = chi - <chi, alpha^vee> alpha, extended along the word.
// Requires chi in T*.
std::vector<Int> weyl_action(const RootDatum& rd, const WeylElement& w, const std::vector<Int>& chi);

// All positive roots with coroot pairings and reflection indexes into the
// given enumeration.
std::vector<PositiveRoot> positive_roots(const RootDatum& rd, const std::vector<WeylElement>& weyl);

}  // namespace flagspec

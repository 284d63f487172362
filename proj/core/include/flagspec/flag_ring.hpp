#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flagspec/root_datum.hpp"

// Models of CH*(G/B) in the Schubert basis and K_0(G/B) in the Steinberg
// basis, with the characteristic maps for the additive and multiplicative
// first Chern class, the quotient ring of G, torsion indexes, J-invariant
// shapes, maximal Tits indexes, and the quotient by a caller-supplied image
// sublattice.
//
// Chow multiplication is implemented as (degree-1 class) x (anything) via
// the Chevalley formula; the ideals that occur here are generated in degree
// one, so no further Schubert calculus is needed.

namespace flagspec {

struct ChowFlagRing {
    RootDatum rd;
    std::vector<WeylElement> weyl;  // ordered by (length, word); sigma_w basis
    std::vector<PositiveRoot> roots;
    std::vector<long> rank_by_degree;                       // Poincare coefficients
    std::vector<std::vector<std::size_t>> basis_by_degree;  // weyl indexes per degree
    std::vector<long> position_in_degree;                   // weyl index -> offset inside its degree
    // chevalley[w] = (positive root index, index of w s_alpha) over the
    // covers l(w s_alpha) = l(w) + 1
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> chevalley;

    int top_degree() const { return static_cast<int>(rank_by_degree.size()) - 1; }
    long total_rank() const { return static_cast<long>(weyl.size()); }
    int degree_of(std::size_t w) const { return static_cast<int>(weyl[w].word.size()); }

    // coefficient vector of a class concentrated in one degree
    std::vector<Int> degree_slice(const std::vector<Int>& full, int d) const;
    std::vector<Int> embed_degree(const std::vector<Int>& slice, int d) const;
};

ChowFlagRing chow_flag_ring(const RootDatum& rd, std::size_t bound = default_weyl_bound);

// c_1(L(chi)) in the Schubert basis; requires chi in T*.
std::vector<Int> char_map_chow(const ChowFlagRing& r, const std::vector<Int>& chi);

// Multiplication by the degree-1 class c_1(L(chi)) for chi in the full
// weight lattice (every degree-1 class arises this way).
std::vector<Int> chow_mult_c1(const ChowFlagRing& r, const std::vector<Int>& chi_weight,
                              const std::vector<Int>& cls);

// Degreewise lattices of the image of the characteristic map: piece d is
// spanned by the d-fold products of the c_1 of a T*-basis.
std::vector<IntegerMatrix> char_image_lattices(const ChowFlagRing& r);

struct GradedQuotient {
    std::vector<AbelianPresentation> degrees;
    std::vector<std::vector<std::string>> generator_words;  // Schubert labels per degree

    bool operator==(const GradedQuotient& o) const { return degrees == o.degrees; }
    long total_rank() const;
    std::string to_string() const;
};

// hh(G) = hh(G/B) / (c_1 of a T*-basis), computed degreewise.
GradedQuotient group_ring_quotient(const ChowFlagRing& r);

struct TorsionIndexResult {
    std::vector<Int> per_degree;   // index of the image lattice in CH^d
    std::vector<bool> finite;      // per-degree finiteness flags
    Int tau = 1;                   // index in the top degree
};
TorsionIndexResult torsion_index(const ChowFlagRing& r);

// A sublattice of a flag ring, e.g. the image of the restriction map of a
// torsor.  For Chow the generators are graded; for K_0 they are columns in
// the Steinberg basis.  The augmentation is the degree-0 projection (Chow)
// or the rank at the base point, i.e. the coefficient sum (K_0).
struct ImageSublattice {
    enum class Carrier { chow, k0 };
    Carrier carrier = Carrier::chow;
    std::map<int, IntegerMatrix> graded_generators;  // chow: degree -> column block
    IntegerMatrix k0_generators;                     // k0: |W| x k columns
};

ImageSublattice chow_char_image(const ChowFlagRing& r);
ImageSublattice chow_full_image(const ChowFlagRing& r);

struct JInvariantResult {
    bool success = false;
    int r = 0;
    std::vector<int> degrees;    // generator degrees
    std::vector<int> exponents;  // j_i, sorted by (degree, exponent)
    std::vector<long> dim_table; // dim_{Z/p} A_d per degree
    std::string failure_reason;  // set when !success

    std::string to_string() const;
};

// Shape of A = (CH(G/B)/ideal(image+)) tensor Z/p as a truncated p-power
// polynomial algebra.  Succeeds iff A is generated by its degree-1 part,
// every generator's nilpotency order is a p-power, and the monomials below
// the truncation orders form a basis of A.  image = nullptr means the
// characteristic-map image (the generic torsor case).
JInvariantResult j_invariant(const ChowFlagRing& r, const Int& p,
                             const ImageSublattice* image = nullptr);

// Quotient of the flag ring by the ideal generated by the augmentation-kernel
// part of the image, computed degreewise.
GradedQuotient hat_ring(const ChowFlagRing& r, const ImageSublattice& image);

// ---------------------------------------------------------------------------
// K_0(G/B) in the Steinberg basis.

struct K0FlagRing {
    RootDatum rd;
    std::vector<WeylElement> weyl;
    std::vector<std::vector<Int>> steinberg_weights;  // lambda_w in the weight basis
    // multiplication by e^{+omega_i} / e^{-omega_i} in the Steinberg basis
    std::vector<IntegerMatrix> mult_up, mult_down;
    bool has_table = false;                         // full table only for |W| <= 48
    std::vector<std::vector<std::vector<Int>>> table;  // table[u][v] = g_u g_v

    long rank() const { return static_cast<long>(weyl.size()); }
};

inline constexpr std::size_t k0_table_bound = 48;

// Builds the ring and verifies that the Steinberg classes are a Z-basis
// against a bounded-window model of Z[weights]/(augmented invariants);
// failure is a hard invariant violation.
K0FlagRing k0_flag_ring(const RootDatum& rd, std::size_t bound = default_weyl_bound);

// [L(chi)] in the Steinberg basis for chi in the weight lattice.
std::vector<Int> k0_line_class(const K0FlagRing& r, const std::vector<Int>& chi_weight);

struct LaurentTerm {
    std::vector<Int> character;
    Int coeff;
};
using LaurentElement = std::vector<LaurentTerm>;

// The characteristic map on Z[T*]: e^chi |-> [L(chi)], extended linearly.
// Requires every character in T*.
std::vector<Int> char_map_k0(const K0FlagRing& r, const LaurentElement& laurent);

// K-theoretic first Chern class c_1(L(chi)) = 1 - [L(-chi)], chi in T*.
std::vector<Int> k0_c1(const K0FlagRing& r, const std::vector<Int>& chi);

std::vector<Int> k0_mult(const K0FlagRing& r, const std::vector<Int>& a, const std::vector<Int>& b);

struct TitsIndexes {
    bool diagonal = false;
    std::vector<Int> m;      // m_w per Weyl element when diagonal
    IntegerMatrix hermite;   // Hermite form of the image lattice in the basis
};

// Image lattice of the characteristic map over all of Z[T*] in the Steinberg
// basis; the diagonal entries are the maximal Tits indexes.
TitsIndexes maximal_tits_indexes(const K0FlagRing& r);

ImageSublattice k0_char_image(const K0FlagRing& r);
ImageSublattice k0_image_from_tits(const K0FlagRing& r, const std::vector<Int>& m);

struct K0Quotient {
    AbelianPresentation total;
    std::vector<AbelianPresentation> gamma_graded;  // augmentation filtration quotients

    bool operator==(const K0Quotient& o) const {
        return total == o.total && gamma_graded == o.gamma_graded;
    }
    std::string to_string() const;
};

K0Quotient group_ring_quotient(const K0FlagRing& r);
K0Quotient hat_ring(const K0FlagRing& r, const ImageSublattice& image);

std::string word_string(const WeylElement& w);

}  // namespace flagspec

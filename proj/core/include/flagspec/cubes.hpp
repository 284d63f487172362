#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "flagspec/complexes.hpp"

// m-cubes of bounded complexes: functors from subsets of {1..m} to
// complexes, their iterated-cone cofiber, and the convergent spectral
// sequence of the filtration by the cofibers cfb_{>=p}.

namespace flagspec {

// Subsets of {1..m} as bitmasks; element i is bit i-1.  Where a summand
// order matters (direct sums over |I| = p), subsets are ordered
// lexicographically on their sorted element lists.
using Subset = unsigned;

int subset_size(Subset s);
std::vector<int> subset_elements(Subset s);
std::string subset_to_string(Subset s);
std::vector<Subset> subsets_of_size(int m, int p);  // lex order

// Sign of the map eps_IJ for |J| = |I| + 1: zero when I is not contained in
// J, and (-1)^(d-1) when J = {i_1 < ... < i_l} and I = J \ {i_d}.
// Throws invariant_error when |J| != |I| + 1.
int epsilon_sign(Subset i, Subset j);

struct CubeOfComplexes {
    int m = 1;
    std::vector<BoundedComplex> entries;  // indexed by subset mask, size 2^m
    // Structure maps r_IJ for I strictly contained in J, components aligned
    // to the source window as in ChainMap.
    std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps;

    Subset full_subset() const { return (1u << m) - 1u; }
    const BoundedComplex& entry(Subset s) const { return entries[s]; }

    // Component of r_IJ in a given degree; identity when I = J, zero when I
    // is not a subset of J.
    IntegerMatrix map_part(Subset i, Subset j, int degree) const;
    ChainMap structure_map(Subset i, Subset j) const;
};

// Validates entries, shapes, chain-map conditions, presence of all covering
// maps, and functoriality r_JL r_IJ = r_IL over every chain I < J < L.
// Maps for non-covering pairs may be omitted; they are filled in by
// composition.
CubeOfComplexes make_cube(int m, std::vector<BoundedComplex> entries,
                          std::map<std::pair<Subset, Subset>, std::vector<IntegerMatrix>> maps);

// eps_IJ as (sign, chain map of the cube).
std::pair<int, ChainMap> epsilon(const CubeOfComplexes& k, Subset i, Subset j);

// The block matrix (eps_IJ) over |I| = p, |J| = p + 1 in a fixed entry
// degree, rows and columns in lex subset order.
IntegerMatrix epsilon_block(const CubeOfComplexes& k, int p, int degree);

// The iterated-cone complex cfb_{>=p}: zero for p >= m+1, the top entry for
// p = m, and the cone of Theta_{p+1} below, with Theta given degreewise by
// the eps block into the leading cone factor.  For p <= 0 this is the
// cofiber.
BoundedComplex cfb_geq(const CubeOfComplexes& k, int p);
BoundedComplex cofiber(const CubeOfComplexes& k);

// Restriction to subsets of {1..m-1} and the translate J |-> K_{J u {m}}.
std::pair<CubeOfComplexes, CubeOfComplexes> sub_cubes(const CubeOfComplexes& k);

// A graded free module, pieces M_g for g = lo_grade .. lo_grade+ranks.size()-1.
struct GradedModule {
    int lo_grade = 0;
    std::vector<long> ranks;
    long total_rank() const;
};

// The cube of a family of commuting grade-raising operators acting on M:
// entry K_I is M with the graded piece M_g placed in homological degree
// |I| - g and zero differentials, and r_IJ acts by the operator indexed by
// the element added to I.  Realizes the operator form of the equivariant
// spectral sequence, with the operators playing the first Chern classes.
CubeOfComplexes koszul_cube(const GradedModule& mod, const std::vector<IntegerMatrix>& ops);

struct PageKey {
    int p = 0;
    int q = 0;
    bool operator<(const PageKey& o) const { return p != o.p ? p < o.p : q < o.q; }
    bool operator==(const PageKey& o) const = default;
};

struct PageEngine;  // internal filtration data

// One page of the spectral sequence.  groups holds the nonzero E_r^{p,q};
// differentials holds d_r : E_r^{p,q} -> E_r^{p+r,q-r+1} as integer matrices
// on the chosen free presentations (generator representatives are cycles of
// the filtered total complex, lifted through the exact couple).
struct SpectralSequencePage {
    int r = 1;
    int m = 1;
    std::map<PageKey, AbelianPresentation> groups;
    std::map<PageKey, IntegerMatrix> differentials;

    std::shared_ptr<const PageEngine> engine;  // internal
    std::map<std::pair<int, int>, IntegerMatrix> gens;  // internal: (p, n) -> representative basis
    std::map<std::pair<int, int>, IntegerMatrix> rels;  // internal: relations in the gens basis

    bool same_groups(const SpectralSequencePage& o) const {
        return groups == o.groups;
    }
};

// E_1^{p,q} = (+)_{|I|=p} H_{-q-m}(K_I), d_1 assembled blockwise from
// H(eps_IJ).
SpectralSequencePage e1_page(const CubeOfComplexes& k);

// Derived page: E_{r+1} = ker d_r / im d_r with d_{r+1} induced on lifted
// representatives.  Verifies d_r d_r = 0 on the stored matrices.
SpectralSequencePage turn_page(const SpectralSequencePage& page);

// Comparison of the stable page against the homology of the cofiber.  For
// each total degree the report carries the rank sum and torsion order of the
// E_infinity terms, the same statistics for H_{-n}(cfb K), and the torsion
// order of the associated graded of the filtration induced on homology.
// PASS means every E_infinity term matches the corresponding graded piece
// of H and the rank sums agree.  (The graded torsion order can exceed the
// torsion order of H itself when the filtration extensions do not split;
// both numbers are reported.)
struct ConvergenceRow {
    int total_degree = 0;        // p + q
    int homological_degree = 0;  // -(p+q)
    long e_rank_sum = 0;
    Int e_torsion_order = 1;
    long h_rank = 0;
    Int h_torsion_order = 1;
    Int graded_torsion_order = 1;
    bool match = true;
};

struct ConvergenceReport {
    bool pass = true;
    std::vector<ConvergenceRow> rows;
    std::string to_string() const;
};

ConvergenceReport e_infinity_compare(const CubeOfComplexes& k);

// Exact vanishing checks used by the invariants: all consecutive eps block
// products and all Theta composites of the cfb recursion.
bool epsilon_composites_vanish(const CubeOfComplexes& k);

}  // namespace flagspec

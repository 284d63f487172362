#pragma once

#include <string>

#include "flagspec/cubes.hpp"
#include "flagspec/flag_ring.hpp"

// JSON encodings of the external formats.  Integers that do not fit a
// 64-bit value are written as decimal strings; parsers accept both forms.
// Malformed documents raise validation_error.

namespace flagspec {

// {"lo": int, "hi": int, "dims": [int], "differentials": [[[int]]]}
std::string complex_to_json(const BoundedComplex& c, bool pretty = false);
BoundedComplex complex_from_json(const std::string& text);

// {"m": int, "entries": {"[1,3]": <complex>, ...}, "maps": {"[1]->[1,3]": [[[int]]], ...}}
// Subsets are serialized as sorted integer arrays; map values hold one
// component matrix per source degree.
std::string cube_to_json(const CubeOfComplexes& k, bool pretty = false);
CubeOfComplexes cube_from_json(const std::string& text);

// {"type": "A", "rank": 2, "lattice": "adjoint"} or {..., "lattice_basis": [[int]]}
RootDatum root_datum_from_json(const std::string& text);

// {"degrees": [{"d": int, "rank": int, "torsion": [int]}], "generators": [...]}
std::string graded_quotient_to_json(const GradedQuotient& q, bool pretty = false);
std::string k0_quotient_to_json(const K0Quotient& q, bool pretty = false);

std::string page_to_json(const SpectralSequencePage& page, bool pretty = false);
std::string convergence_to_json(const ConvergenceReport& report, bool pretty = false);

std::string torsion_index_to_json(const TorsionIndexResult& t, bool pretty = false);
std::string j_invariant_to_json(const JInvariantResult& j, bool pretty = false);
std::string tits_indexes_to_json(const K0FlagRing& r, const TitsIndexes& t, bool pretty = false);

// {"carrier": "chow", "generators": [{"degree": d, "classes": [[int]]}]}
// or {"carrier": "k0", "classes": [[int]]} or {"carrier": "k0", "m": {"word": int}}
ImageSublattice image_from_json(const std::string& text, const ChowFlagRing* chow,
                                const K0FlagRing* k0);

std::string chow_ring_summary_json(const ChowFlagRing& r, bool pretty = false);
std::string k0_ring_summary_json(const K0FlagRing& r, bool pretty = false);

}  // namespace flagspec

// SPDX-License-Identifier: Apache-2.0
//
// SMILES front end: tokenizer, graph parser, valence model and the 78-column
// atom featurization used by the drug encoder.

#ifndef GIG_CHEM_SMILES_HPP_
#define GIG_CHEM_SMILES_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gig/matrix.hpp"

namespace gig::chem {

enum class BondOrder { kSingle, kDouble, kTriple, kAromatic };

// Contribution toward an atom's bond-order sum (aromatic counts 1.5).
double bond_valence(BondOrder order) noexcept;

struct AtomSpec {
  std::string symbol;  // canonical capitalization, e.g. "C", "Cl", "Se"
  bool aromatic = false;
  bool bracket = false;
  std::optional<int> explicit_h;
  int charge = 0;
};

enum class TokenKind {
  kAtom,
  kBond,
  kBranchOpen,
  kBranchClose,
  kRingClosure,
  kDot,
};

struct Token {
  TokenKind kind;
  std::size_t offset = 0;  // byte offset of the first character
  std::string text;
  AtomSpec atom;                        // kAtom
  BondOrder bond = BondOrder::kSingle;  // kBond
  int ring_label = 0;                   // kRingClosure
};

// Splits a SMILES string into tokens covering the whole input. Throws
// ParseError (with byte offset) on unknown characters, bad ring labels and
// unterminated or malformed bracket atoms.
std::vector<Token> tokenize(std::string_view smiles);

struct Atom {
  std::string symbol;
  bool aromatic = false;
  bool bracket = false;
  std::optional<int> explicit_h;
  int charge = 0;
  int degree = 0;
  int implicit_h = 0;
  int implicit_valence = 0;

  // Hydrogens attached to the atom. Bracket atoms store their explicit count
  // in implicit_h, so this never counts a hydrogen twice.
  int total_hydrogens() const noexcept { return implicit_h; }
};

struct Bond {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  BondOrder order = BondOrder::kSingle;
};

struct MolecularSkeleton {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::size_t ring_closures = 0;
  std::size_t components = 0;
};

// Builds the atom/bond skeleton. Degrees are filled in; hydrogens are not.
MolecularSkeleton parse(std::string_view smiles);

// Fills implicit_h and implicit_valence from the default-valence model.
void assign_implicit_hydrogens(MolecularSkeleton& skeleton);

inline constexpr std::size_t kSymbolSlots = 44;
inline constexpr std::size_t kCountSlots = 11;
inline constexpr std::size_t kAtomFeatureDim = kSymbolSlots + 3 * kCountSlots + 1;

inline constexpr std::size_t kDegreeOffset = kSymbolSlots;
inline constexpr std::size_t kHydrogenOffset = kDegreeOffset + kCountSlots;
inline constexpr std::size_t kValenceOffset = kHydrogenOffset + kCountSlots;
inline constexpr std::size_t kAromaticOffset = kValenceOffset + kCountSlots;

// Ordered element vocabulary; the last slot collects everything else.
const std::array<std::string_view, kSymbolSlots>& symbol_vocabulary();
std::size_t symbol_slot(std::string_view symbol) noexcept;

struct DrugGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  Matrix features;  // atoms.size() x kAtomFeatureDim
};

DrugGraph featurize(MolecularSkeleton skeleton);

// tokenize -> parse -> assign_implicit_hydrogens -> featurize.
DrugGraph build_drug_graph(std::string_view smiles);

}  // namespace gig::chem

#endif  // GIG_CHEM_SMILES_HPP_

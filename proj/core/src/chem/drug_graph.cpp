// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "gig/chem/smiles.hpp"

namespace gig::chem {
namespace {

std::size_t bucket(int value) {
  return static_cast<std::size_t>(std::clamp(value, 0, static_cast<int>(kCountSlots) - 1));
}

}  // namespace

DrugGraph featurize(MolecularSkeleton skeleton) {
  DrugGraph g;
  g.features = Matrix(skeleton.atoms.size(), kAtomFeatureDim);
  for (std::size_t i = 0; i < skeleton.atoms.size(); ++i) {
    const Atom& atom = skeleton.atoms[i];
    auto row = g.features.row(i);
    row[symbol_slot(atom.symbol)] = 1.0;
    row[kDegreeOffset + bucket(atom.degree)] = 1.0;
    row[kHydrogenOffset + bucket(atom.total_hydrogens())] = 1.0;
    row[kValenceOffset + bucket(atom.implicit_valence)] = 1.0;
    row[kAromaticOffset] = atom.aromatic ? 1.0 : 0.0;
  }
  g.atoms = std::move(skeleton.atoms);
  g.bonds = std::move(skeleton.bonds);
  return g;
}

DrugGraph build_drug_graph(std::string_view smiles) {
  MolecularSkeleton skeleton = parse(smiles);
  assign_implicit_hydrogens(skeleton);
  return featurize(std::move(skeleton));
}

}  // namespace gig::chem

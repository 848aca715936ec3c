// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "gig/chem/smiles.hpp"
#include "gig/error.hpp"
#include "test_support.hpp"

namespace gig::chem {
namespace {

std::vector<int> hydrogens(const DrugGraph& g) {
  std::vector<int> h;
  for (const auto& a : g.atoms) h.push_back(a.total_hydrogens());
  return h;
}

std::size_t count_kind(const std::vector<Token>& tokens, TokenKind kind) {
  std::size_t n = 0;
  for (const auto& t : tokens) n += t.kind == kind ? 1 : 0;
  return n;
}

TEST(Tokenize, LinearChainIsThreeAtoms) {
  const auto tokens = tokenize("CCO");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0].text, "C");
  EXPECT_EQ(tokens[2].text, "O");
  EXPECT_EQ(count_kind(tokens, TokenKind::kAtom), 3u);
}

TEST(Tokenize, AromaticRingHasTwoClosureTokens) {
  const auto tokens = tokenize("c1ccccc1");
  EXPECT_EQ(count_kind(tokens, TokenKind::kAtom), 6u);
  EXPECT_EQ(count_kind(tokens, TokenKind::kRingClosure), 2u);
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::kRingClosure) {
      EXPECT_EQ(t.ring_label, 1);
    }
  }
}

TEST(Tokenize, PercentRingLabel) {
  const auto tokens = tokenize("C%12CC%12");
  std::vector<int> labels;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::kRingClosure) labels.push_back(t.ring_label);
  }
  EXPECT_EQ(labels, (std::vector<int>{12, 12}));
  const auto g = build_drug_graph("C%12CC%12");
  EXPECT_EQ(g.atoms.size(), 3u);
  EXPECT_EQ(g.bonds.size(), 3u);
}

TEST(Tokenize, TokensCoverInput) {
  const std::string s = "CC(=O)[C@@H](N)c1ccc(Cl)cc1.[Na+]";
  std::string joined;
  for (const auto& t : tokenize(s)) joined += t.text;
  EXPECT_EQ(joined, s);
}

TEST(Tokenize, UnknownCharacterReportsOffset) {
  try {
    tokenize("CC?C");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Tokenize, UnterminatedBracket) { EXPECT_THROW(tokenize("C[NH4+"), ParseError); }

TEST(Parse, LinearChain) {
  const auto s = parse("CCO");
  EXPECT_EQ(s.atoms.size(), 3u);
  ASSERT_EQ(s.bonds.size(), 2u);
  for (const auto& b : s.bonds) EXPECT_EQ(b.order, BondOrder::kSingle);
}

TEST(Parse, BenzeneIsAromatic) {
  const auto s = parse("c1ccccc1");
  EXPECT_EQ(s.atoms.size(), 6u);
  ASSERT_EQ(s.bonds.size(), 6u);
  for (const auto& b : s.bonds) EXPECT_EQ(b.order, BondOrder::kAromatic);
  for (const auto& a : s.atoms) EXPECT_TRUE(a.aromatic);
}

TEST(Parse, KekuleAspirin) {
  const auto s = parse("CC(=O)OC1=CC=CC=C1C(=O)O");
  EXPECT_EQ(s.atoms.size(), 13u);
  EXPECT_EQ(s.bonds.size(), 13u);
  for (const auto& a : s.atoms) EXPECT_FALSE(a.aromatic);
}

TEST(Parse, DotMakesComponents) {
  const auto s = parse("CC.O");
  EXPECT_EQ(s.atoms.size(), 3u);
  EXPECT_EQ(s.bonds.size(), 1u);
  EXPECT_EQ(s.components, 2u);
}

TEST(Parse, StructuralErrors) {
  EXPECT_THROW(parse("C1CC"), ParseError);     // unmatched ring closure
  EXPECT_THROW(parse("CC(C"), ParseError);     // unclosed branch
  EXPECT_THROW(parse("CC)C"), ParseError);     // stray close
  EXPECT_THROW(parse("C=1CC#1"), ParseError);  // bond-order conflict
}

TEST(Parse, RingClosureBondOrderFromEitherSide) {
  const auto s = parse("C=1CCCC1");
  bool found = false;
  for (const auto& b : s.bonds) {
    if (b.a == 0 && b.b == 4) {
      found = true;
      EXPECT_EQ(b.order, BondOrder::kDouble);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Hydrogens, ValenceRuleExamples) {
  EXPECT_EQ(hydrogens(build_drug_graph("CCO")), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(hydrogens(build_drug_graph("C#N")), (std::vector<int>{1, 0}));
  EXPECT_EQ(hydrogens(build_drug_graph("C")), (std::vector<int>{4}));
  EXPECT_EQ(hydrogens(build_drug_graph("c1ccccc1")), (std::vector<int>(6, 1)));
  EXPECT_EQ(hydrogens(build_drug_graph("O=C=O")), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(hydrogens(build_drug_graph("CS(=O)(=O)C")), (std::vector<int>{3, 0, 0, 0, 3}));
}

TEST(Hydrogens, BracketAtomsAreExplicit) {
  const auto g = build_drug_graph("[NH4+]");
  ASSERT_EQ(g.atoms.size(), 1u);
  EXPECT_EQ(g.atoms[0].total_hydrogens(), 4);
  EXPECT_EQ(g.atoms[0].charge, 1);
  EXPECT_EQ(build_drug_graph("[Fe]").atoms[0].total_hydrogens(), 0);
}

TEST(Featurize, FirstAtomOfEthanol) {
  const auto g = build_drug_graph("CCO");
  const auto row = g.features.row(0);
  ASSERT_EQ(row.size(), kAtomFeatureDim);
  EXPECT_EQ(row[symbol_slot("C")], 1.0);
  EXPECT_EQ(row[kDegreeOffset + 1], 1.0);
  EXPECT_EQ(row[kHydrogenOffset + 3], 1.0);
  EXPECT_EQ(row[kValenceOffset + 3], 1.0);
  EXPECT_EQ(row[kAromaticOffset], 0.0);
}

TEST(Featurize, BenzeneAtoms) {
  const auto g = build_drug_graph("c1ccccc1");
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(g.features(i, kAromaticOffset), 1.0);
    EXPECT_EQ(g.features(i, kDegreeOffset + 2), 1.0);
  }
}

TEST(Featurize, UnknownElementUsesOtherSlot) {
  EXPECT_EQ(symbol_slot("Og"), kSymbolSlots - 1);
  const auto g = build_drug_graph("[Og]");
  EXPECT_EQ(g.features(0, kSymbolSlots - 1), 1.0);
}

TEST(Featurize, VocabularyIsDistinct) {
  const auto& v = symbol_vocabulary();
  std::set<std::string_view> seen(v.begin(), v.end());
  EXPECT_EQ(seen.size(), kSymbolSlots);
}

// Properties over the checked-in corpus.
class CorpusTest : public ::testing::Test {
 protected:
  static std::vector<std::string> smiles() {
    std::ifstream in(test::data_dir() / "smiles" / "corpus.smi");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
      const auto tab = line.find('\t');
      if (!line.empty()) out.push_back(line.substr(tab + 1));
    }
    return out;
  }
};

TEST_F(CorpusTest, EulerRelation) {
  const auto corpus = smiles();
  ASSERT_EQ(corpus.size(), 100u);
  for (const auto& s : corpus) {
    const auto sk = parse(s);
    EXPECT_EQ(sk.atoms.size() + sk.ring_closures, sk.bonds.size() + sk.components) << s;
  }
}

TEST_F(CorpusTest, GraphInvariants) {
  for (const auto& s : smiles()) {
    const auto g = build_drug_graph(s);
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<int> degree(g.atoms.size(), 0);
    for (const auto& b : g.bonds) {
      EXPECT_LT(b.a, b.b) << s;
      EXPECT_LT(b.b, g.atoms.size()) << s;
      EXPECT_TRUE(pairs.emplace(b.a, b.b).second) << "duplicate bond in " << s;
      ++degree[b.a];
      ++degree[b.b];
    }
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
      EXPECT_EQ(g.atoms[i].degree, degree[i]) << s;
      EXPECT_GE(g.atoms[i].implicit_h, 0) << s;
      const auto row = g.features.row(i);
      auto block_sum = [&](std::size_t begin, std::size_t len) {
        double sum = 0;
        for (std::size_t k = begin; k < begin + len; ++k) sum += row[k];
        return sum;
      };
      EXPECT_EQ(block_sum(0, kSymbolSlots), 1.0);
      EXPECT_EQ(block_sum(kDegreeOffset, kCountSlots), 1.0);
      EXPECT_EQ(block_sum(kHydrogenOffset, kCountSlots), 1.0);
      EXPECT_EQ(block_sum(kValenceOffset, kCountSlots), 1.0);
      EXPECT_EQ(row[kDegreeOffset + std::min(degree[i], 10)], 1.0);
    }
  }
}

TEST_F(CorpusTest, FeaturizationIsDeterministic) {
  for (const auto& s : smiles()) {
    EXPECT_EQ(build_drug_graph(s).features, build_drug_graph(s).features) << s;
  }
}

}  // namespace
}  // namespace gig::chem

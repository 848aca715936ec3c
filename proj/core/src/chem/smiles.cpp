// SPDX-License-Identifier: Apache-2.0

#include "gig/chem/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "gig/error.hpp"

namespace gig::chem {
namespace {

constexpr std::string_view kElements[] = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

bool is_element(std::string_view s) {
  return std::find(std::begin(kElements), std::end(kElements), s) != std::end(kElements);
}

// Aromatic symbols accepted inside brackets (lowercase form).
constexpr std::string_view kBracketAromatic[] = {"se", "as", "te", "b", "c",
                                                 "n",  "o",  "p",  "s"};

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
  return out;
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < s_.size()) {
      const std::size_t start = pos_;
      const char c = s_[pos_];
      if (static_cast<unsigned char>(c) > 127) {
        throw ParseError("non-ASCII byte in SMILES", start);
      }
      Token tok{};
      tok.offset = start;
      switch (c) {
        case '(':
          tok.kind = TokenKind::kBranchOpen;
          ++pos_;
          break;
        case ')':
          tok.kind = TokenKind::kBranchClose;
          ++pos_;
          break;
        case '.':
          tok.kind = TokenKind::kDot;
          ++pos_;
          break;
        case '-':
        case '/':
        case '\\':
          tok.kind = TokenKind::kBond;
          tok.bond = BondOrder::kSingle;
          ++pos_;
          break;
        case '=':
          tok.kind = TokenKind::kBond;
          tok.bond = BondOrder::kDouble;
          ++pos_;
          break;
        case '#':
          tok.kind = TokenKind::kBond;
          tok.bond = BondOrder::kTriple;
          ++pos_;
          break;
        case ':':
          tok.kind = TokenKind::kBond;
          tok.bond = BondOrder::kAromatic;
          ++pos_;
          break;
        case '%':
          tok.kind = TokenKind::kRingClosure;
          tok.ring_label = ring_percent();
          break;
        case '[':
          tok.kind = TokenKind::kAtom;
          tok.atom = bracket_atom();
          break;
        default:
          if (std::isdigit(static_cast<unsigned char>(c))) {
            tok.kind = TokenKind::kRingClosure;
            tok.ring_label = c - '0';
            ++pos_;
          } else {
            tok.kind = TokenKind::kAtom;
            tok.atom = organic_atom();
          }
      }
      tok.text = std::string(s_.substr(start, pos_ - start));
      out.push_back(std::move(tok));
    }
    return out;
  }

 private:
  int ring_percent() {
    const std::size_t start = pos_;
    ++pos_;
    if (pos_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
        !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      throw ParseError("'%' ring closure needs two digits", start);
    }
    const int label = (s_[pos_] - '0') * 10 + (s_[pos_ + 1] - '0');
    pos_ += 2;
    return label;
  }

  AtomSpec organic_atom() {
    const std::size_t start = pos_;
    const char c = s_[pos_];
    AtomSpec a;
    auto next_is = [&](char n) { return pos_ + 1 < s_.size() && s_[pos_ + 1] == n; };
    switch (c) {
      case 'B':
        if (next_is('r')) {
          a.symbol = "Br";
          pos_ += 2;
          return a;
        }
        a.symbol = "B";
        break;
      case 'C':
        if (next_is('l')) {
          a.symbol = "Cl";
          pos_ += 2;
          return a;
        }
        a.symbol = "C";
        break;
      case 'N':
      case 'O':
      case 'P':
      case 'S':
      case 'F':
      case 'I':
        a.symbol = std::string(1, c);
        break;
      case 'b':
      case 'c':
      case 'n':
      case 'o':
      case 'p':
      case 's':
        a.symbol = std::string(1, static_cast<char>(std::toupper(c)));
        a.aromatic = true;
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++pos_;
    return a;
  }

  char peek() const { return s_[pos_]; }

  AtomSpec bracket_atom() {
    const std::size_t open = pos_;
    const std::size_t close = s_.find(']', pos_);
    if (close == std::string_view::npos) {
      throw ParseError("unterminated bracket atom", open);
    }
    ++pos_;
    AtomSpec a;
    a.bracket = true;
    // isotope
    while (pos_ < close && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ >= close) throw ParseError("bracket atom without element symbol", open);

    // element symbol
    const char c = peek();
    if (c == '*') {
      a.symbol = "*";
      ++pos_;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      bool matched = false;
      for (std::string_view arom : kBracketAromatic) {
        if (s_.substr(pos_, arom.size()) == arom && pos_ + arom.size() <= close) {
          a.symbol = capitalize(arom);
          a.aromatic = true;
          pos_ += arom.size();
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError("unknown aromatic symbol in bracket atom", pos_);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::string two(s_.substr(pos_, 2));
      if (pos_ + 1 < close && std::islower(static_cast<unsigned char>(two[1])) &&
          is_element(two)) {
        a.symbol = two;
        pos_ += 2;
      } else if (is_element(std::string_view(&s_[pos_], 1))) {
        a.symbol = std::string(1, c);
        ++pos_;
      } else {
        throw ParseError("unknown element in bracket atom", pos_);
      }
    } else {
      throw ParseError("bracket atom without element symbol", pos_);
    }

    // chirality (discarded)
    if (pos_ < close && peek() == '@') {
      ++pos_;
      if (pos_ < close && peek() == '@') {
        ++pos_;
      } else {
        for (std::string_view cls : {"TH", "AL", "SP", "TB", "OH"}) {
          if (pos_ + 2 < close && s_.substr(pos_, 2) == cls &&
              std::isdigit(static_cast<unsigned char>(s_[pos_ + 2]))) {
            pos_ += 2;
            while (pos_ < close && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            break;
          }
        }
      }
    }

    // hydrogen count
    if (pos_ < close && peek() == 'H') {
      ++pos_;
      int h = 1;
      if (pos_ < close && std::isdigit(static_cast<unsigned char>(peek()))) {
        h = peek() - '0';
        ++pos_;
      }
      a.explicit_h = h;
    }

    // charge
    if (pos_ < close && (peek() == '+' || peek() == '-')) {
      const char sign = peek();
      const int unit = sign == '+' ? 1 : -1;
      ++pos_;
      if (pos_ < close && std::isdigit(static_cast<unsigned char>(peek()))) {
        int mag = 0;
        while (pos_ < close && std::isdigit(static_cast<unsigned char>(peek()))) {
          mag = mag * 10 + (peek() - '0');
          ++pos_;
        }
        a.charge = unit * mag;
      } else {
        int mag = 1;
        while (pos_ < close && peek() == sign) {
          ++mag;
          ++pos_;
        }
        a.charge = unit * mag;
      }
    }

    // atom class
    if (pos_ < close && peek() == ':') {
      ++pos_;
      if (pos_ >= close || !std::isdigit(static_cast<unsigned char>(peek()))) {
        throw ParseError("atom class needs digits", pos_);
      }
      while (pos_ < close && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }

    if (pos_ != close) throw ParseError("unexpected character in bracket atom", pos_);
    pos_ = close + 1;
    return a;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct OpenRing {
  std::size_t atom;
  std::optional<BondOrder> order;
  std::size_t offset;
};

}  // namespace

double bond_valence(BondOrder order) noexcept {
  switch (order) {
    case BondOrder::kSingle:
      return 1.0;
    case BondOrder::kDouble:
      return 2.0;
    case BondOrder::kTriple:
      return 3.0;
    case BondOrder::kAromatic:
      return 1.5;
  }
  return 1.0;
}

std::vector<Token> tokenize(std::string_view smiles) { return Tokenizer(smiles).run(); }

MolecularSkeleton parse(std::string_view smiles) {
  const std::vector<Token> tokens = tokenize(smiles);
  MolecularSkeleton mol;
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  constexpr std::size_t kNoAtom = static_cast<std::size_t>(-1);
  std::size_t prev = kNoAtom;
  std::optional<BondOrder> pending;
  std::size_t pending_offset = 0;
  std::vector<std::pair<std::size_t, std::size_t>> branches;  // atom, offset
  std::map<int, OpenRing> rings;

  auto add_bond = [&](std::size_t a, std::size_t b, std::optional<BondOrder> order,
                      std::size_t offset) {
    if (a == b) throw ParseError("ring closure bonds an atom to itself", offset);
    const auto key = std::minmax(a, b);
    if (!edge_set.insert(key).second) {
      throw ParseError("duplicate bond between the same atoms", offset);
    }
    BondOrder o = BondOrder::kSingle;
    if (order) {
      o = *order;
    } else if (mol.atoms[a].aromatic && mol.atoms[b].aromatic) {
      o = BondOrder::kAromatic;
    }
    mol.bonds.push_back(Bond{key.first, key.second, o});
    ++mol.atoms[a].degree;
    ++mol.atoms[b].degree;
  };

  for (const Token& tok : tokens) {
    switch (tok.kind) {
      case TokenKind::kAtom: {
        Atom atom;
        atom.symbol = tok.atom.symbol;
        atom.aromatic = tok.atom.aromatic;
        atom.bracket = tok.atom.bracket;
        atom.explicit_h = tok.atom.explicit_h;
        atom.charge = tok.atom.charge;
        mol.atoms.push_back(std::move(atom));
        const std::size_t idx = mol.atoms.size() - 1;
        if (prev != kNoAtom) {
          add_bond(prev, idx, pending, tok.offset);
        } else {
          if (pending) throw ParseError("bond symbol without a preceding atom", pending_offset);
          ++mol.components;
        }
        pending.reset();
        prev = idx;
        break;
      }
      case TokenKind::kBond:
        if (prev == kNoAtom || pending) throw ParseError("misplaced bond symbol", tok.offset);
        pending = tok.bond;
        pending_offset = tok.offset;
        break;
      case TokenKind::kBranchOpen:
        if (prev == kNoAtom || pending) throw ParseError("branch without a preceding atom", tok.offset);
        branches.emplace_back(prev, tok.offset);
        break;
      case TokenKind::kBranchClose:
        if (branches.empty()) throw ParseError("unmatched ')'", tok.offset);
        if (pending) throw ParseError("dangling bond before ')'", pending_offset);
        prev = branches.back().first;
        branches.pop_back();
        break;
      case TokenKind::kRingClosure: {
        if (prev == kNoAtom) throw ParseError("ring closure without a preceding atom", tok.offset);
        auto it = rings.find(tok.ring_label);
        if (it == rings.end()) {
          rings.emplace(tok.ring_label, OpenRing{prev, pending, tok.offset});
        } else {
          std::optional<BondOrder> order = it->second.order;
          if (pending) {
            if (order && *order != *pending) {
              throw ParseError("conflicting bond orders at ring closure " +
                                   std::to_string(tok.ring_label),
                               tok.offset);
            }
            order = pending;
          }
          add_bond(it->second.atom, prev, order, tok.offset);
          rings.erase(it);
          ++mol.ring_closures;
        }
        pending.reset();
        break;
      }
      case TokenKind::kDot:
        if (pending) throw ParseError("dangling bond before '.'", pending_offset);
        if (!branches.empty()) throw ParseError("'.' inside a branch", tok.offset);
        prev = kNoAtom;
        break;
    }
  }
  if (pending) throw ParseError("dangling bond at end of input", pending_offset);
  if (!branches.empty()) throw ParseError("unmatched '('", branches.back().second);
  if (!rings.empty()) {
    throw ParseError("unmatched ring closure " + std::to_string(rings.begin()->first),
                     rings.begin()->second.offset);
  }
  if (mol.atoms.empty()) throw ParseError("empty SMILES", 0);
  return mol;
}

namespace {

std::vector<int> default_valences(std::string_view symbol) {
  if (symbol == "B") return {3};
  if (symbol == "C") return {4};
  if (symbol == "N") return {3};
  if (symbol == "O") return {2};
  if (symbol == "P") return {3, 5};
  if (symbol == "S") return {2, 4, 6};
  if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I") return {1};
  return {};
}

}  // namespace

void assign_implicit_hydrogens(MolecularSkeleton& skeleton) {
  std::vector<double> bond_sum(skeleton.atoms.size(), 0.0);
  for (const Bond& b : skeleton.bonds) {
    bond_sum[b.a] += bond_valence(b.order);
    bond_sum[b.b] += bond_valence(b.order);
  }
  for (std::size_t i = 0; i < skeleton.atoms.size(); ++i) {
    Atom& atom = skeleton.atoms[i];
    if (atom.bracket) {
      atom.implicit_h = atom.explicit_h.value_or(0);
    } else {
      const std::vector<int> valences = default_valences(atom.symbol);
      const int used = static_cast<int>(bond_sum[i]);  // floor, sums are >= 0
      int target = valences.empty() ? 0 : valences.front();
      // Aromatic atoms keep their lowest valence: thiophene sulfur has no H.
      if (!atom.aromatic) {
        for (int v : valences) {
          target = v;
          if (v >= used) break;
        }
      }
      atom.implicit_h = std::max(0, target - used);
    }
    atom.implicit_valence = atom.implicit_h;
  }
}

const std::array<std::string_view, kSymbolSlots>& symbol_vocabulary() {
  static constexpr std::array<std::string_view, kSymbolSlots> kVocab = {
      "C",  "N",  "O",  "S",  "F",  "Si", "P",  "Cl", "Br", "Mg", "Na",
      "Ca", "Fe", "As", "Al", "I",  "B",  "V",  "K",  "Tl", "Yb", "Sb",
      "Sn", "Ag", "Pd", "Co", "Se", "Ti", "Zn", "H",  "Li", "Ge", "Cu",
      "Au", "Ni", "Cd", "In", "Mn", "Zr", "Cr", "Pt", "Hg", "Pb", "Unknown"};
  return kVocab;
}

std::size_t symbol_slot(std::string_view symbol) noexcept {
  const auto& vocab = symbol_vocabulary();
  for (std::size_t i = 0; i + 1 < vocab.size(); ++i) {
    if (vocab[i] == symbol) return i;
  }
  return vocab.size() - 1;
}

}  // namespace gig::chem

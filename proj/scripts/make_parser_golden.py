#!/usr/bin/env python3
"""Regenerate the SMILES parser golden file with RDKit.

Run once when data/smiles/corpus.smi changes; the output is committed.
Columns: name, atoms, bonds, total_h (comma list), aromatic (0/1 string).
"""
import sys
from pathlib import Path

from rdkit import Chem

root = Path(__file__).resolve().parent.parent
corpus = root / "data" / "smiles" / "corpus.smi"
golden = root / "data" / "smiles" / "corpus_golden.tsv"

with corpus.open() as src, golden.open("w") as dst:
    dst.write("name\tatoms\tbonds\ttotal_h\taromatic\n")
    for line in src:
        name, smiles = line.rstrip("\n").split("\t")
        mol = Chem.MolFromSmiles(smiles)
        if mol is None:
            sys.exit(f"rdkit rejected {name}: {smiles}")
        hs = ",".join(str(a.GetTotalNumHs()) for a in mol.GetAtoms())
        arom = "".join("1" if a.GetIsAromatic() else "0" for a in mol.GetAtoms())
        dst.write(f"{name}\t{mol.GetNumAtoms()}\t{mol.GetNumBonds()}\t{hs}\t{arom}\n")

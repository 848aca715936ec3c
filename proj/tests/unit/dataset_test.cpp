// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>

#include "gig/data/cache.hpp"
#include "gig/data/dataset.hpp"
#include "gig/data/fetch.hpp"
#include "gig/data/hash.hpp"
#include "gig/data/synthetic.hpp"
#include "gig/error.hpp"
#include "test_support.hpp"

namespace gig::data {
namespace {

using model::Pair;

SyntheticConfig small_synthetic() {
  SyntheticConfig c;
  c.num_drugs = 8;
  c.num_targets = 8;
  c.num_classes = 4;
  c.min_residues = 10;
  c.max_residues = 14;
  return c;
}

void flip_byte(const std::filesystem::path& p, std::size_t offset) {
  std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
  f.seekg(static_cast<std::streamoff>(offset));
  char c = 0;
  f.get(c);
  f.seekp(static_cast<std::streamoff>(offset));
  f.put(static_cast<char>(c ^ 0x5a));
}

TEST(Hash, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(SplitRatio, Parses) {
  const auto r = parse_split_ratio("8:1:1");
  EXPECT_EQ(r.train, 8u);
  EXPECT_EQ(r.str(), "8:1:1");
  for (const char* bad : {"7:1:1", "7-1-2", "7:1", "a:b:c", "11:0:-1"}) {
    EXPECT_THROW(parse_split_ratio(bad), FormatError) << bad;
  }
}

TEST(Split, ExactPartitionOverManySeeds) {
  Rng rng(0);
  std::vector<Pair> edges;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 15; ++j)
      if (rng.uniform() < 0.2) edges.emplace_back(i, j);
  const auto all = model::DtiGraph::make(20, 15, edges);
  const std::size_t p = edges.size();
  for (const char* ratio : {"7:1:2", "6:2:2", "8:1:1"}) {
    const auto r = parse_split_ratio(ratio);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Split s = make_splits(all, r, seed);
      ASSERT_EQ(s.val.size(), p * r.val / 10);
      ASSERT_EQ(s.test.size(), p * r.test / 10);
      ASSERT_EQ(s.train.size() + s.val.size() + s.test.size(), p);
      std::vector<Pair> merged = s.train;
      merged.insert(merged.end(), s.val.begin(), s.val.end());
      merged.insert(merged.end(), s.test.begin(), s.test.end());
      std::sort(merged.begin(), merged.end());
      ASSERT_EQ(merged, all.positive_edges) << ratio << " seed " << seed;

      ASSERT_EQ(s.val_negatives.size(), s.val.size());
      ASSERT_EQ(s.test_negatives.size(), s.test.size());
      std::set<Pair> negs(s.val_negatives.begin(), s.val_negatives.end());
      negs.insert(s.test_negatives.begin(), s.test_negatives.end());
      ASSERT_EQ(negs.size(), s.val_negatives.size() + s.test_negatives.size());
      for (const Pair& n : negs) ASSERT_FALSE(all.contains(n));
    }
  }
  EXPECT_EQ(make_splits(all, {}, 5).test, make_splits(all, {}, 5).test);
  EXPECT_NE(make_splits(all, {}, 5).test, make_splits(all, {}, 6).test);
}

TEST(Split, NeedsTenInteractions) {
  const auto all = model::DtiGraph::make(3, 3, {{0, 0}, {1, 1}});
  EXPECT_THROW(make_splits(all, {}, 0), DataError);
}

TEST(Split, TrainingDataLabels) {
  std::vector<Pair> edges;
  for (std::size_t i = 0; i < 10; ++i) edges.emplace_back(i, i);
  const auto split = make_splits(model::DtiGraph::make(10, 10, edges), {}, 1);
  const auto td = to_training_data(split, 10, 10);
  EXPECT_EQ(td.train.positive_edges.size(), 7u);
  EXPECT_EQ(td.test.pairs.size(), 4u);
  EXPECT_EQ(std::count(td.test.labels.begin(), td.test.labels.end(), 1.0), 2);
}

TEST(Synthetic, InteractionsFollowClasses) {
  const auto d = make_synthetic(SyntheticConfig{});
  EXPECT_EQ(d.drug_ids.size(), 60u);
  EXPECT_EQ(d.interactions, 120u);
  const auto again = make_synthetic(SyntheticConfig{});
  EXPECT_EQ(d.smiles, again.smiles);
  EXPECT_EQ(d.sequences, again.sequences);
  SyntheticConfig bad;
  bad.num_classes = kMaxSyntheticClasses + 1;
  EXPECT_THROW(make_synthetic(bad), ContractViolation);
}

TEST(RawDataset, LoadsSyntheticLayout) {
  test::TempDir dir;
  const auto d = write_synthetic_raw(dir.path(), small_synthetic());
  const auto raw = load_raw(dir.path());
  EXPECT_EQ(raw.drug_ids, d.drug_ids);
  EXPECT_EQ(raw.num_interactions(), d.interactions);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(raw.interactions[i][j], d.drug_class[i] == d.target_class[j]);
}

TEST(RawDataset, ReportsProblems) {
  test::TempDir dir;
  write_synthetic_raw(dir.path(), small_synthetic());
  std::filesystem::remove(dir / std::string(kDrugsFile));
  EXPECT_THROW(load_raw(dir.path()), DataError);

  test::TempDir bad;
  write_synthetic_raw(bad.path(), small_synthetic());
  test::write_text(bad / std::string(kMatrixFile), "0 1\n1 x\n");
  EXPECT_THROW(load_raw(bad.path()), FormatError);
  test::write_text(bad / std::string(kMatrixFile), "0 1\n1 0\n");
  EXPECT_THROW(load_raw(bad.path()), DataError);
}

TEST(Cache, RebuildsOnlyStaleSide) {
  test::TempDir dir;
  write_synthetic_raw(dir / "raw", small_synthetic());
  const auto first = prepare_cache(dir / "raw", dir / "cache", 0.5);
  EXPECT_TRUE(first.drugs_rebuilt && first.targets_rebuilt);
  EXPECT_EQ(first.summary.interactions, 16u);

  const auto same = prepare_cache(dir / "raw", dir / "cache", 0.5);
  EXPECT_FALSE(same.drugs_rebuilt || same.targets_rebuilt);

  const auto before = load_cache(dir / "cache");
  const auto tau = prepare_cache(dir / "raw", dir / "cache", 0.75);
  EXPECT_FALSE(tau.drugs_rebuilt);
  EXPECT_TRUE(tau.targets_rebuilt);
  const auto after = load_cache(dir / "cache");
  std::size_t edges_before = 0, edges_after = 0;
  for (const auto& g : before.targets.graphs) edges_before += g.edges.size();
  for (const auto& g : after.targets.graphs) edges_after += g.edges.size();
  EXPECT_LT(edges_after, edges_before);
  EXPECT_EQ(after.interactions.positive_edges, before.interactions.positive_edges);
}

TEST(Cache, DetectsAndRepairsCorruption) {
  test::TempDir dir;
  write_synthetic_raw(dir / "raw", small_synthetic());
  prepare_cache(dir / "raw", dir / "cache", 0.5);
  const auto key = cache_key(dir / "cache");
  flip_byte(dir / "cache/drugs.gckpt", 40);
  EXPECT_THROW(load_cache(dir / "cache"), DataError);
  const auto repaired = prepare_cache(dir / "raw", dir / "cache", 0.5);
  EXPECT_TRUE(repaired.drugs_rebuilt);
  EXPECT_NO_THROW(load_cache(dir / "cache"));
  EXPECT_EQ(cache_key(dir / "cache"), key);
  EXPECT_THROW(load_cache(dir / "missing"), DataError);
}

TEST(Cache, DropsTargetsWithoutContactMap) {
  test::TempDir dir;
  const auto d = write_synthetic_raw(dir / "raw", small_synthetic());
  std::filesystem::remove(dir / "raw" / std::string(kContactDir) / (d.target_ids[3] + ".txt"));
  const auto status = prepare_cache(dir / "raw", dir / "cache", 0.5);
  EXPECT_EQ(status.summary.targets, 7u);
  EXPECT_EQ(status.summary.dropped, 1u);
  EXPECT_EQ(status.summary.interactions, 14u);
  const auto data = load_cache(dir / "cache");
  EXPECT_EQ(std::count(data.targets.ids.begin(), data.targets.ids.end(), d.target_ids[3]), 0);
}

TEST(Fetch, CopiesFromFileUrlsAndVerifies) {
  test::TempDir dir;
  test::write_text(dir / "src.txt", "1 0\n0 1\n");
  const std::string url = "file://" + (dir / "src.txt").string();
  test::write_text(dir / "manifest.json",
                   R"({"files": {"mat_drug_protein.txt": {"url": ")" + url + R"(", "sha256": ")" +
                       sha256_file(dir / "src.txt") + R"("}, "extra/notes.txt": {"url": ")" + url +
                       R"("}}})");
  const auto entries = load_fetch_manifest(dir / "manifest.json");
  ASSERT_EQ(entries.size(), 2u);
  const auto report = fetch(entries, dir / "raw");
  EXPECT_EQ(report.downloaded.size(), 2u);
  EXPECT_EQ(read_file(dir / "raw/mat_drug_protein.txt"), "1 0\n0 1\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "raw/extra/notes.txt"));
  EXPECT_EQ(fetch(entries, dir / "raw").skipped.size(), 2u);

  // Present files without a checksum count as verified.
  auto wrong = entries;
  for (auto& e : wrong) {
    if (e.key == "mat_drug_protein.txt") e.sha256 = std::string(64, '0');
  }
  std::filesystem::remove(dir / "raw/mat_drug_protein.txt");
  try {
    fetch(wrong, dir / "raw", {.attempts = 1});
    ADD_FAILURE();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("mat_drug_protein.txt"), std::string::npos) << e.what();
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "raw/mat_drug_protein.txt"));

  const std::vector<FetchEntry> unset{{"a.txt", "", ""}};
  EXPECT_THROW(fetch(unset, dir / "raw"), DataError);
  const std::vector<FetchEntry> missing{{"b.txt", "file://" + (dir / "nope").string(), ""}};
  EXPECT_THROW(fetch(missing, dir / "raw", {.attempts = 1}), DataError);
}

}  // namespace
}  // namespace gig::data

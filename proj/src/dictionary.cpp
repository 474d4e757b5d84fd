#include "bilex/dictionary.hpp"

#include <algorithm>
#include <sstream>

#include "internal.hpp"

namespace bilex {

namespace {

void sort_unique(std::vector<WordId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

}  // namespace

std::size_t SeedDictionary::num_candidates(WordId source) const {
  auto it = entries.find(source);
  return it == entries.end() ? 0 : it->second.size();
}

SeedDictionary SeedDictionary::transpose() const {
  SeedDictionary out;
  out.from = other(from);
  for (const auto& [source, targets] : entries) {
    for (WordId t : targets) out.entries[t].push_back(source);
  }
  for (auto& [_, candidates] : out.entries) sort_unique(candidates);
  return out;
}

SeedDictionary PairedDictionary::as_seed() const {
  SeedDictionary out;
  for (const auto& [source, target] : pairs) out.entries[source] = {target};
  return out;
}

std::size_t TestSet::count(Split split) const {
  if (split == Split::kFull) return gold.size();
  return static_cast<std::size_t>(
      std::count_if(gold.begin(), gold.end(), [](const auto& kv) { return kv.second.is_new; }));
}

bool TestSet::accepts(WordId source, WordId target) const {
  auto it = gold.find(source);
  if (it == gold.end()) return false;
  return std::binary_search(it->second.targets.begin(), it->second.targets.end(), target);
}

StringPairs read_pair_file(const std::filesystem::path& path) {
  StringPairs pairs;
  auto lines = detail::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!detail::is_valid_utf8(line)) {
      throw Error(path.string() + ":" + std::to_string(i + 1) + ": invalid UTF-8");
    }
    auto fields = detail::split_fields(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw Error(path.string() + ":" + std::to_string(i + 1) + ": malformed line, expected source<TAB>target");
    }
    pairs.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  return pairs;
}

void write_pair_file(const StringPairs& pairs, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& [source, target] : pairs) out << source << '\t' << target << '\n';
  detail::write_file(path, out.str());
}

SeedDictionary make_dictionary(const StringPairs& pairs, const Vocabulary& src_vocab,
                               const Vocabulary& tgt_vocab) {
  SeedDictionary dict;
  for (const auto& [source, target] : pairs) {
    if (!src_vocab.contains(source) || !tgt_vocab.contains(target)) continue;
    dict.entries[src_vocab.id(source)].push_back(tgt_vocab.id(target));
  }
  for (auto& [_, candidates] : dict.entries) sort_unique(candidates);
  if (dict.entries.empty()) throw Error("seed dictionary is empty after dropping out-of-vocabulary pairs");
  return dict;
}

SeedDictionary load_dictionary(const std::filesystem::path& path, const Vocabulary& src_vocab,
                               const Vocabulary& tgt_vocab) {
  try {
    return make_dictionary(read_pair_file(path), src_vocab, tgt_vocab);
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw Error(path.string() + ": " + msg);
  }
}

PairedDictionary most_frequent_pairing(const SeedDictionary& dict, const Vocabulary& tgt_vocab) {
  return most_frequent_pairing(dict, tgt_vocab.frequencies());
}

PairedDictionary most_frequent_pairing(const SeedDictionary& dict, std::span<const std::size_t> tgt_frequency) {
  PairedDictionary paired;
  for (const auto& [source, candidates] : dict.entries) {
    // candidates are ascending, so strict '>' keeps the smallest id on ties
    WordId best = candidates.front();
    for (WordId c : candidates) {
      if (tgt_frequency[c] > tgt_frequency[best]) best = c;
    }
    paired.pairs.emplace(source, best);
  }
  return paired;
}

TestSet make_test_set(const StringPairs& pairs, const SeedDictionary& seed, const Vocabulary& src_vocab,
                      const Vocabulary& tgt_vocab, std::vector<std::string>* warnings) {
  TestSet test;
  for (const auto& [source, target] : pairs) {
    if (!src_vocab.contains(source)) {
      if (warnings) warnings->push_back("test pair (" + source + ", " + target + ") dropped: source word not in corpus");
      continue;
    }
    if (!tgt_vocab.contains(target)) {
      if (warnings) warnings->push_back("test pair (" + source + ", " + target + ") dropped: target word not in corpus");
      continue;
    }
    test.gold[src_vocab.id(source)].targets.push_back(tgt_vocab.id(target));
  }
  for (auto& [source, entry] : test.gold) {
    sort_unique(entry.targets);
    entry.is_new = !seed.contains(source);
  }
  if (test.gold.empty()) throw Error("test set is empty");
  return test;
}

TestSet load_test_set(const std::filesystem::path& path, const SeedDictionary& seed,
                      const Vocabulary& src_vocab, const Vocabulary& tgt_vocab,
                      std::vector<std::string>* warnings) {
  try {
    return make_test_set(read_pair_file(path), seed, src_vocab, tgt_vocab, warnings);
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw Error(path.string() + ": " + msg);
  }
}

}  // namespace bilex

#include "support/tfidf_fixture.hpp"

#include <sstream>

#include "bilex/tfidf.hpp"

namespace bilex::testing {

std::string rank_tfidf_fixture(const std::filesystem::path& dir) {
  const auto src = load_corpus(dir / "source.txt", "source");
  const auto tgt = load_corpus(dir / "target.txt", "target");
  const auto sv = build_vocabulary(src);
  const auto tv = build_vocabulary(tgt);
  const auto pairs = most_frequent_pairing(load_dictionary(dir / "seed_dict.tsv", sv, tv), tv);
  const auto qvecs = build_context_vectors(src, sv, pairs, Side::kSource);
  const auto cvecs = build_context_vectors(tgt, tv, pairs, Side::kTarget);
  std::ostringstream out;
  for (WordId q = 0; q < sv.size(); ++q) {
    auto r = rank_tfidf(q, Side::kSource, qvecs, cvecs);
    if (!r) {
      out << "# " << sv.word(q) << "\tno context\n";
      continue;
    }
    write_ranking_rows(out, *r, sv, tv);
  }
  return out.str();
}

}  // namespace bilex::testing

#pragma once

#include <filesystem>
#include <string>

namespace bilex::testing {

// Ranks every source word of the toy corpus in `dir` and renders the rows the
// way expected_ranking.tsv stores them.
std::string rank_tfidf_fixture(const std::filesystem::path& dir);

}  // namespace bilex::testing

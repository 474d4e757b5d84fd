#include <doctest.h>

#include "bilex/corpus.hpp"
#include "temp_dir.hpp"

using namespace bilex;
using bilex::testing::TempDir;

TEST_CASE("short documents are filtered") {
  TempDir dir;
  auto c = load_corpus(dir.write("c.txt", "a b c d e\na b\n"), "x");
  REQUIRE(c.num_docs() == 1);
  CHECK(c.documents[0] == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(c.language_tag == "x");
}

TEST_CASE("empty corpus is an error") {
  TempDir dir;
  CHECK_THROWS_WITH_AS(load_corpus(dir.write("e.txt", ""), "x"), doctest::Contains("empty corpus"), Error);
  CHECK_THROWS_AS(load_corpus(dir.write("s.txt", "a b\n\n"), "x"), Error);
  CHECK_THROWS_AS(load_corpus(dir.path() / "missing.txt", "x"), Error);
}

TEST_CASE("documents keep line order") {
  TempDir dir;
  auto c = load_corpus(dir.write("c.txt", "a a a a a\nb b b b b\nc c c c c\n"), "x");
  REQUIRE(c.num_docs() == 3);
  CHECK(c.documents[2][0] == "c");
  CHECK(c.num_tokens() == 15);
}

TEST_CASE("invalid UTF-8 names the line") {
  TempDir dir;
  CHECK_THROWS_WITH_AS(load_corpus(dir.write("bad.txt", "a b c d e\na b \xff d e\n"), "x"), doctest::Contains("line 2"),
                       Error);
}

TEST_CASE("multibyte tokens and tabs") {
  std::vector<std::string> lines{"犬\t猫 犬  鳥 魚 牛"};
  auto c = make_corpus(lines, "ja");
  REQUIRE(c.num_docs() == 1);
  CHECK(c.documents[0].size() == 6);
  CHECK(c.documents[0][1] == "猫");
}

TEST_CASE("vocabulary frequencies") {
  Corpus c{"x", {{"a", "a", "b"}, {"a", "c", "d", "e", "f"}}};
  auto v = build_vocabulary(c);
  CHECK(v.frequency(v.id("a")) == 3);
  CHECK(v.frequency(v.id("b")) == 1);
  CHECK(v.id("a") == 0);
  CHECK(v.id("f") == 5);
  CHECK_THROWS_AS(v.id("zz"), Error);
  CHECK(v.find_word(99) == nullptr);

  Corpus single{"x", {{"x", "x", "x", "x", "x"}}};
  auto sv = build_vocabulary(single);
  CHECK(sv.size() == 1);
  CHECK(sv.frequency(0) == 5);

  Corpus disjoint{"x", {{"a", "b"}, {"c", "d", "e"}}};
  CHECK(build_vocabulary(disjoint).size() == 5);
}

TEST_CASE("pseudo-documents repeat document ids per occurrence") {
  Corpus c{"x", {{"u", "u"}, {"w", "w", "u"}, {"u", "v"}, {"w", "v"}}};
  auto v = build_vocabulary(c);
  auto p = invert_index(c, v);
  CHECK(p.num_docs == 4);
  CHECK(p.tokens(v.id("w")) == std::vector<DocId>{1, 1, 3});
  CHECK(p.tokens(v.id("u")) == std::vector<DocId>{0, 0, 1, 2});
  CHECK(p.num_tokens() == c.num_tokens());
  for (WordId w = 0; w < v.size(); ++w) CHECK(p.tokens(w).size() == v.frequency(w));
}

TEST_CASE("pseudo-document of a single occurrence") {
  Corpus c{"x", {{"a", "b", "b"}}};
  auto v = build_vocabulary(c);
  CHECK(invert_index(c, v).tokens(v.id("a")) == std::vector<DocId>{0});
}

TEST_CASE("corpus write and reload") {
  TempDir dir;
  Corpus c{"x", {{"a", "b", "c", "d", "e"}, {"f", "g", "h", "i", "j", "k"}}};
  write_corpus(c, dir.path() / "c.txt");
  auto back = load_corpus(dir.path() / "c.txt", "x");
  CHECK(back.documents == c.documents);
}

TEST_CASE("encoded documents follow vocabulary ids") {
  Corpus c{"x", {{"b", "a", "b"}}};
  auto v = build_vocabulary(c);
  CHECK(encode_documents(c, v)[0] == std::vector<WordId>{0, 1, 0});
}

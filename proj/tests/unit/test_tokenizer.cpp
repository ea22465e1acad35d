#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_support.hpp"
#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/error.hpp"
#include "transformcode/tokenizer/vocabulary.hpp"

using namespace tcode;

namespace {

TokenSequence seq(std::vector<std::string> t) { return {std::move(t), "s", false}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Usage;
}

TokenSequence bubble_sequence() {
  auto n = normalize({"b", Language::Java, test::read_data("snippets/BubbleSortExample.java"), {}});
  return extract_path(parse(n.as_snippet()), "b", true);
}

}  // namespace

TEST(Tokenizer, SingleSymbolCorpusMergesUpToWholeWord) {
  VocabConfig cfg;
  cfg.min_frequency = 1;
  auto v = train_vocab({seq({"aaaa"})}, cfg);
  EXPECT_TRUE(v.contains("a"));
  EXPECT_TRUE(v.contains("aaaa"));
  EXPECT_EQ(encode_token("aaaa", v), std::vector<std::uint32_t>{static_cast<std::uint32_t>(v.find("aaaa"))});
}

TEST(Tokenizer, MinFrequencyBlocksRareMerges) {
  auto v = train_vocab({seq({"aaaa"})});
  // Only ##a ##a occurs twice.
  EXPECT_EQ(v.pieces(), (std::vector<std::string>{"a", "##a", "##aa"}));
}

TEST(Tokenizer, MergeScorePrefersRarePartners) {
  // "xy" pairs two symbols that never occur elsewhere; "ab" pairs frequent ones.
  std::vector<TokenSequence> corpus;
  for (int i = 0; i < 3; ++i) corpus.push_back(seq({"xy", "ab", "ac", "db", "ab"}));
  VocabConfig cfg;
  cfg.max_size = 12;  // alphabet of 6 chars x2 = 12 would not fit
  EXPECT_EQ(code_of([&] { train_vocab(corpus, cfg); }), ErrorCode::InvalidConfig);
  cfg.max_size = 14;
  auto v = train_vocab(corpus, cfg);
  ASSERT_EQ(v.size(), 13u);
  EXPECT_EQ(v.piece(12), "xy");
}

TEST(Tokenizer, SegmentsUnknownWholeTokenIntoPieces) {
  Vocabulary v(100, "##");
  for (const char* p : {"v", "a", "r", "1", "2", "##v", "##a", "##r", "##1", "##2", "var", "##1"})
    v.add(p);
  auto ids = encode_token("var12", v);
  std::vector<std::string> pieces;
  for (auto id : ids) pieces.push_back(v.piece(id));
  EXPECT_EQ(pieces, (std::vector<std::string>{"var", "##1", "##2"}));
  EXPECT_EQ(decode(ids, v), (std::vector<std::string>{"var12"}));
}

TEST(Tokenizer, ExactHitIsSingleId) {
  auto v = train_vocab({seq({"return", "return", "return"})});
  ASSERT_TRUE(v.contains("return"));
  EXPECT_EQ(encode_token("return", v).size(), 1u);
}

TEST(Tokenizer, RoundTripOnNormalizedBubbleSort) {
  auto s = bubble_sequence();
  auto v = train_vocab({s});
  auto ids = encode(s, v);
  EXPECT_EQ(decode(ids, v), s.tokens);
  EXPECT_GT(ids.size(), s.tokens.size() - 1);
}

TEST(Tokenizer, DecodeEmptyAndSingle) {
  auto v = train_vocab({seq({"ab", "ab"})});
  EXPECT_TRUE(decode({}, v).empty());
  EXPECT_EQ(decode({0}, v), std::vector<std::string>{v.piece(0)});
  EXPECT_EQ(code_of([&] { decode({static_cast<std::uint32_t>(v.size())}, v); }),
            ErrorCode::IdOutOfRange);
}

TEST(Tokenizer, UnknownCharacterIsAnError) {
  auto v = train_vocab({seq({"abc"})});
  EXPECT_EQ(code_of([&] { encode_token("abz", v); }), ErrorCode::UnknownCharacter);
  EXPECT_EQ(code_of([&] { encode_token("z", v); }), ErrorCode::UnknownCharacter);
  // Seen characters compose freely, in either position.
  EXPECT_EQ(decode(encode_token("cba", v), v), std::vector<std::string>{"cba"});
}

TEST(Tokenizer, EmptyCorpus) {
  EXPECT_EQ(code_of([] { train_vocab({}); }), ErrorCode::EmptyCorpus);
  EXPECT_EQ(code_of([] { train_vocab({seq({})}); }), ErrorCode::EmptyCorpus);
}

TEST(Tokenizer, NoReservedEntries) {
  auto v = train_vocab({bubble_sequence()});
  for (const char* reserved : {"[UNK]", "[CLS]", "[SEP]", "[PAD]", "[MASK]", "<s>", "</s>", "<unk>",
                               "<pad>", "<bos>", "<eos>"})
    EXPECT_FALSE(v.contains(reserved)) << reserved;
}

TEST(Tokenizer, SizeStrictlyBelowCap) {
  std::mt19937 rng(7);
  std::vector<TokenSequence> corpus;
  for (int s = 0; s < 40; ++s) {
    TokenSequence t;
    for (int i = 0; i < 30; ++i) {
      std::string w;
      int len = 1 + static_cast<int>(rng() % 8);
      for (int k = 0; k < len; ++k) w += static_cast<char>('a' + rng() % 6);
      t.tokens.push_back(w);
    }
    corpus.push_back(t);
  }
  for (std::size_t cap : {13u, 20u, 40u, 200u}) {
    VocabConfig cfg;
    cfg.max_size = cap;
    cfg.min_frequency = 1;
    auto v = train_vocab(corpus, cfg);
    EXPECT_LT(v.size(), cap);
    for (const auto& t : corpus) EXPECT_EQ(decode(encode(t, v), v), t.tokens);
  }
}

TEST(Tokenizer, DeterministicTraining) {
  std::vector<TokenSequence> corpus = {bubble_sequence(), seq({"foo", "bar", "foobar", "bar"})};
  auto a = train_vocab(corpus);
  auto b = train_vocab(corpus);
  EXPECT_EQ(a, b);
}

TEST(Tokenizer, FileRoundTripIsExact) {
  auto v = train_vocab({bubble_sequence(), seq({"\"a\tb\"", "x\\y", "\"a\tb\"", "x\\y", "é", "é"})});
  std::stringstream ss;
  v.write(ss);
  std::string first = ss.str();
  auto back = Vocabulary::read(ss);
  EXPECT_EQ(back, v);
  std::stringstream again;
  back.write(again);
  EXPECT_EQ(again.str(), first);
  EXPECT_TRUE(v.contains("é"));
}

TEST(Tokenizer, RejectsBadFiles) {
  std::stringstream bad_version("tcvocab\t9\t100\t##\n");
  EXPECT_EQ(code_of([&] { Vocabulary::read(bad_version); }), ErrorCode::UnsupportedVersion);
  std::stringstream gap("tcvocab\t1\t100\t##\na\t0\nb\t2\n");
  EXPECT_EQ(code_of([&] { Vocabulary::read(gap); }), ErrorCode::MalformedRecord);
}

TEST(Tokenizer, MarkerPrefixedTokenRejected) {
  EXPECT_EQ(code_of([] { train_vocab({seq({"##x"})}); }), ErrorCode::InvalidConfig);
  VocabConfig cfg;
  cfg.continuation_marker = "@@";
  auto v = train_vocab({seq({"##x", "##x"})}, cfg);
  EXPECT_EQ(decode(encode_token("##x", v), v), std::vector<std::string>{"##x"});
}

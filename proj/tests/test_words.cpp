#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "xmodkit/construct.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"
#include "xmodkit/words.hpp"

using namespace xmodkit;

namespace {

// Oracle: all letter sequences (not necessarily reduced) of length <= L,
// reduced afterwards and deduplicated.
std::vector<Word> all_reduced_naive(const FactorSignature& sig, std::size_t max_len) {
  std::vector<Letter> alphabet;
  for (std::size_t s = 0; s < sig.size(); ++s)
    for (std::size_t e = 0; e < sig[s].order(); ++e)
      if (e != sig[s].identity())
        alphabet.push_back({static_cast<std::uint8_t>(s), static_cast<Elem>(e)});
  std::vector<std::vector<Letter>> layer{{}};
  std::vector<Word> out{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (auto& w : layer)
      for (Letter l : alphabet)
        if (w.empty() || w.back().slot != l.slot) {
          auto v = w;
          v.push_back(l);
          next.push_back(v);
        }
    for (auto& v : next) out.push_back(Word{v});
    layer = std::move(next);
  }
  return out;
}

bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

std::vector<Word> random_words(const FactorSignature& sig, std::size_t count, std::size_t max_len,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Word> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Letter> raw(rng() % (max_len + 1));
    for (auto& l : raw) {
      l.slot = static_cast<std::uint8_t>(rng() % sig.size());
      l.elem = static_cast<Elem>(rng() % sig[l.slot].order());
    }
    out.push_back(Word{raw});
  }
  return out;
}

// Naive evaluation of a raw sequence, independent of normalize.
Elem eval_raw(const std::vector<Letter>& raw, const WordHom& h) {
  Elem acc = h.target.identity();
  for (Letter l : raw) acc = h.target.mul(acc, h.slot_maps[l.slot](l.elem));
  return acc;
}

}  // namespace

TEST(Normalize, Examples) {
  const auto z3 = cyclic_group(3), s3 = symmetric_group(3);
  FactorSignature sig{z3, s3};
  EXPECT_TRUE(normalize(sig, {Letter{0, 1}, Letter{0, 2}}).empty());
  const Elem x = *s3.find("(1 2)"), y = *s3.find("(1 3)");
  auto w = normalize(sig, {Letter{0, 1}, Letter{1, x}, Letter{1, y}});
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w.letters[1].elem, s3.mul(x, y));
  EXPECT_EQ(normalize(sig, {Letter{0, 1}, Letter{1, x}, Letter{1, x}}).size(), 1u);
  EXPECT_TRUE(normalize(sig, std::span<const Letter>{}).empty());
  EXPECT_THROW(normalize(sig, {Letter{2, 0}}), AlgebraError);
}

TEST(Normalize, IdempotentAndEvaluationInvariant) {
  const auto s3 = symmetric_group(3), z4 = cyclic_group(4);
  FactorSignature sig{s3, z4};
  const auto d4 = dihedral_group(4);
  auto homs_a = enumerate_homs(s3, d4).homs;
  auto homs_b = enumerate_homs(z4, d4).homs;
  for (const auto& raw : random_words(sig, 400, 6, 7)) {
    const Word n = normalize(sig, raw.letters);
    EXPECT_EQ(normalize(sig, n.letters), n);
    for (std::size_t i = 0; i + 1 < n.size(); ++i) EXPECT_NE(n.letters[i].slot, n.letters[i + 1].slot);
    for (auto l : n.letters) EXPECT_NE(l.elem, sig[l.slot].identity());
    for (std::size_t a = 0; a < homs_a.size(); a += 3)
      for (std::size_t b = 0; b < homs_b.size(); ++b) {
        WordHom h(sig, d4, {homs_a[a], homs_b[b]});
        EXPECT_EQ(evaluate(n, h), eval_raw(raw.letters, h));
      }
  }
}

TEST(Evaluate, Multiplicative) {
  const auto s3 = symmetric_group(3);
  FactorSignature sig{s3, s3};
  WordHom h(sig, s3, {GroupHom::identity(s3), GroupHom::identity(s3)});
  auto ws = random_words(sig, 60, 5, 11);
  for (auto& u : ws)
    for (auto& v : ws) {
      const Word nu = normalize(sig, u.letters), nv = normalize(sig, v.letters);
      EXPECT_EQ(evaluate(concat(sig, nu, nv), h), s3.mul(evaluate(nu, h), evaluate(nv, h)));
    }
}

TEST(Evaluate, CommutatorIntoAbelianTarget) {
  const auto z4 = cyclic_group(4), z6 = cyclic_group(6);
  FactorSignature sig{z4, z4};
  WordHom h(sig, z6, {GroupHom::trivial(z4, z6), GroupHom::trivial(z4, z6)});
  EXPECT_EQ(evaluate(Word{}, h), z6.identity());
  for (auto& f : enumerate_homs(z4, z6).homs) {
    WordHom hf(sig, z6, {f, f});
    EXPECT_EQ(evaluate(commutator(sig, Letter{0, 1}, Letter{1, 3}), hf), 0);
  }
}

TEST(BinaryCosmash, Membership) {
  const auto z3 = cyclic_group(3), z2 = cyclic_group(2);
  FactorSignature sig{z3, z2};
  EXPECT_TRUE(in_binary_cosmash(sig, commutator(sig, Letter{0, 1}, Letter{1, 1})));
  EXPECT_FALSE(in_binary_cosmash(sig, letter_word(sig, 1, 1)));
  EXPECT_TRUE(in_binary_cosmash(sig, Word{}));
}

TEST(TernaryCosmash, Membership) {
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3);
  FactorSignature sig{z2, z3, z2};
  const Word ab = commutator(sig, Letter{0, 1}, Letter{1, 1});
  const Word abc = commutator(sig, ab, letter_word(sig, 2, 1));
  EXPECT_EQ(abc.size(), 10u);
  EXPECT_TRUE(in_ternary_cosmash(sig, abc));
  EXPECT_FALSE(in_ternary_cosmash(sig, ab));
  EXPECT_TRUE(in_ternary_cosmash(sig, Word{}));
}

TEST(Enumeration, MatchesNaiveFilterInLengthLexOrder) {
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3);
  struct Case {
    FactorSignature sig;
    Membership m;
    std::size_t len;
  };
  std::vector<Case> cases = {
      {FactorSignature{z2, z3}, Membership::kAll, 5},
      {FactorSignature{z2, z3}, Membership::kBinaryCosmash, 8},
      {FactorSignature{z3, z3}, Membership::kBinaryCosmash, 6},
      {FactorSignature{z3, z2}, Membership::kFlat, 6},
      {FactorSignature{z2, z2, z2}, Membership::kTernaryCosmash, 12},
      {FactorSignature{z2, z3, z2}, Membership::kTernaryCosmash, 10},
  };
  for (auto& c : cases) {
    std::vector<Word> expected;
    for (auto& w : all_reduced_naive(c.sig, c.len)) {
      bool keep = true;
      if (c.m == Membership::kBinaryCosmash) keep = in_binary_cosmash(c.sig, w);
      if (c.m == Membership::kFlat) keep = in_flat(c.sig, w);
      if (c.m == Membership::kTernaryCosmash) keep = in_ternary_cosmash(c.sig, w);
      if (keep) expected.push_back(w);
    }
    std::sort(expected.begin(), expected.end(), length_lex_less);
    std::vector<Word> got;
    for_each_word(c.sig, c.len, c.m, [&](const Word& w) {
      got.push_back(w);
      return true;
    });
    EXPECT_EQ(got, expected);
  }
}

TEST(Enumeration, ShortBinaryMembers) {
  const auto z2 = cyclic_group(2);
  FactorSignature sig{z2, z2};
  EXPECT_EQ(enumerate_cosmash_words(sig, 0), std::vector<Word>{Word{}});
  EXPECT_EQ(enumerate_cosmash_words(sig, 3), std::vector<Word>{Word{}});
  auto four = enumerate_cosmash_words(sig, 4);
  // [a,x] and its inverse [x,a] are distinct reduced words of length 4.
  const Word ax = commutator(sig, Letter{0, 1}, Letter{1, 1});
  EXPECT_EQ(four, (std::vector<Word>{Word{}, ax, inverse(sig, ax)}));
}

TEST(Enumeration, NoShortTernaryMembers) {
  // Deleting any one slot must cancel the rest; the shortest nonempty
  // members have length 10.
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3);
  FactorSignature sig{z3, z2, z2};
  EXPECT_EQ(enumerate_cosmash_words(sig, 9).size(), 1u);
  EXPECT_GT(enumerate_cosmash_words(sig, 10).size(), 1u);
}

TEST(Folds, RelabelSlots) {
  const auto z3 = cyclic_group(3), z2 = cyclic_group(2);
  FactorSignature aab{z3, z3, z2};
  const Word w = commutator(aab, commutator(aab, Letter{0, 1}, Letter{1, 2}), letter_word(aab, 2, 1));
  const Word f = fold_S21(aab, w);
  std::vector<Letter> raw;
  for (auto l : w.letters) raw.push_back({static_cast<std::uint8_t>(l.slot == 2 ? 1 : 0), l.elem});
  EXPECT_EQ(f, normalize(FactorSignature{z3, z2}, raw));
  EXPECT_TRUE(in_binary_cosmash(FactorSignature{z3, z2}, f));

  FactorSignature abb{z3, z2, z2};
  const Word v = commutator(abb, commutator(abb, Letter{0, 1}, Letter{1, 1}), letter_word(abb, 2, 1));
  EXPECT_TRUE(in_binary_cosmash(FactorSignature{z3, z2}, fold_S12(abb, v)));
  EXPECT_THROW(fold_S21(abb, v), AlgebraError);
}

TEST(Folds, RegroupThenFoldEqualsS21) {
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3);
  for (const auto& [a, b] : {std::pair{z2, z2}, std::pair{z3, z2}, std::pair{z2, z3}}) {
    FactorSignature sig{a, a, b};
    FactorSignature out{a, b};
    const auto id_a = GroupHom::identity(a), id_b = GroupHom::identity(b);
    for (const Word& w : enumerate_cosmash_words(sig, 12))
      EXPECT_EQ(apply_regrouped(embed_j(sig, w), out, id_a, id_a, id_b), fold_S21(sig, w));
  }
}

TEST(Serialization, RoundTrip) {
  const auto s3 = symmetric_group(3), z4 = cyclic_group(4);
  FactorSignature sig{s3, z4};
  for (const auto& raw : random_words(sig, 100, 7, 3)) {
    const Word n = normalize(sig, raw.letters);
    EXPECT_EQ(parse_word(sig, format_word(sig, n)), n);
  }
  const Word w = parse_word(sig, "(0:(1 2) 1:1 0:(1 2)^-1 1:1^-1)");
  EXPECT_EQ(w, commutator(sig, Letter{0, *s3.find("(1 2)")}, Letter{1, 1}));
  EXPECT_THROW(parse_word(sig, "(0:zz)"), AlgebraError);
  EXPECT_THROW(parse_word(sig, "0:1"), AlgebraError);
}

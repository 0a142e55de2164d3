#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"

namespace xmodkit {

/// Ordered factor slots of a free product A_0 + A_1 + ... + A_{k-1}.
struct FactorSignature {
  std::vector<FiniteGroup> slots;

  FactorSignature() = default;
  explicit FactorSignature(std::vector<FiniteGroup> s) : slots(std::move(s)) {
    if (slots.empty()) throw AlgebraError("factor signature must have at least one slot");
  }
  FactorSignature(std::initializer_list<FiniteGroup> s) : FactorSignature(std::vector(s)) {}

  std::size_t size() const { return slots.size(); }
  const FiniteGroup& operator[](std::size_t i) const { return slots[i]; }

  friend bool operator==(const FactorSignature& a, const FactorSignature& b) {
    return a.slots == b.slots;
  }
};

struct Letter {
  std::uint8_t slot = 0;
  Elem elem = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A reduced word in a free product: no identity letters and no two adjacent
/// letters from the same slot. Equality of words is equality in the free
/// product.
struct Word {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend auto operator<=>(const Word&, const Word&) = default;
};

namespace detail {

inline void check_letter(const FactorSignature& sig, Letter l) {
  if (l.slot >= sig.size()) throw AlgebraError("letter refers to slot " + std::to_string(l.slot) +
                                               " of a " + std::to_string(sig.size()) + "-slot signature");
  if (l.elem >= sig[l.slot].order()) throw AlgebraError("letter element out of range");
}

/// Appends a letter to an already reduced sequence, merging with the last
/// letter when slots agree.
inline void push_reduced(const FactorSignature& sig, std::vector<Letter>& out, Letter l) {
  const FiniteGroup& g = sig[l.slot];
  if (l.elem == g.identity()) return;
  if (!out.empty() && out.back().slot == l.slot) {
    const Elem m = g.mul(out.back().elem, l.elem);
    if (m == g.identity())
      out.pop_back();
    else
      out.back().elem = m;
  } else {
    out.push_back(l);
  }
}

}  // namespace detail

/// Reduces an arbitrary letter sequence to normal form. Idempotent.
inline Word normalize(const FactorSignature& sig, std::span<const Letter> raw) {
  Word w;
  for (Letter l : raw) {
    detail::check_letter(sig, l);
    detail::push_reduced(sig, w.letters, l);
  }
  return w;
}

inline Word normalize(const FactorSignature& sig, std::initializer_list<Letter> raw) {
  return normalize(sig, std::span<const Letter>(raw.begin(), raw.size()));
}

inline Word concat(const FactorSignature& sig, const Word& a, const Word& b) {
  std::vector<Letter> raw = a.letters;
  raw.insert(raw.end(), b.letters.begin(), b.letters.end());
  return normalize(sig, raw);
}

inline Word inverse(const FactorSignature& sig, const Word& w) {
  Word r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back({it->slot, sig[it->slot].inv(it->elem)});
  return r;
}

inline Word letter_word(const FactorSignature& sig, std::uint8_t slot, Elem e) {
  return normalize(sig, {Letter{slot, e}});
}

/// [u, v] = u v u^-1 v^-1
inline Word commutator(const FactorSignature& sig, const Word& u, const Word& v) {
  return concat(sig, concat(sig, u, v), concat(sig, inverse(sig, u), inverse(sig, v)));
}

/// [(s,a), (t,b)] for single letters.
inline Word commutator(const FactorSignature& sig, Letter a, Letter b) {
  return commutator(sig, normalize(sig, {a}), normalize(sig, {b}));
}

/// A copairing [f_0, ..., f_{k-1}] out of a free product into one group.
struct WordHom {
  FactorSignature signature;
  FiniteGroup target;
  std::vector<GroupHom> slot_maps;

  WordHom(FactorSignature sig, FiniteGroup tgt, std::vector<GroupHom> maps)
      : signature(std::move(sig)), target(std::move(tgt)), slot_maps(std::move(maps)) {
    if (slot_maps.size() != signature.size())
      throw AlgebraError("word hom needs one map per slot");
    for (std::size_t i = 0; i < slot_maps.size(); ++i) {
      if (!(slot_maps[i].source() == signature[i]))
        throw AlgebraError("word hom: slot " + std::to_string(i) + " map has the wrong source");
      if (!(slot_maps[i].target() == target))
        throw AlgebraError("word hom: slot " + std::to_string(i) + " map has the wrong target");
    }
  }
};

/// Product of the images of the letters; the empty word goes to the identity.
template <class LetterMap>
Elem evaluate_with(const Word& w, const FiniteGroup& target, LetterMap&& image) {
  Elem acc = target.identity();
  for (Letter l : w.letters) acc = target.mul(acc, image(l));
  return acc;
}

inline Elem evaluate(const Word& w, const WordHom& h) {
  for (Letter l : w.letters) detail::check_letter(h.signature, l);
  return evaluate_with(w, h.target, [&](Letter l) { return h.slot_maps[l.slot](l.elem); });
}

/// Product of the slot-s letters in order (the fold sending every other slot
/// to the identity).
inline Elem fold_to_slot(const FactorSignature& sig, const Word& w, std::size_t s) {
  const FiniteGroup& g = sig[s];
  Elem acc = g.identity();
  for (Letter l : w.letters)
    if (l.slot == s) acc = g.mul(acc, l.elem);
  return acc;
}

/// Membership in the binary cosmash A ⋄ B: both folds are trivial.
inline bool in_binary_cosmash(const FactorSignature& sig, const Word& w) {
  if (sig.size() != 2) throw AlgebraError("binary cosmash needs a 2-slot signature");
  return fold_to_slot(sig, w, 0) == sig[0].identity() && fold_to_slot(sig, w, 1) == sig[1].identity();
}

/// Membership in the flat kernel A ♭ X of [1, 0] : A + X -> A.
inline bool in_flat(const FactorSignature& sig, const Word& w) {
  if (sig.size() != 2) throw AlgebraError("flat kernel needs a 2-slot signature");
  return fold_to_slot(sig, w, 0) == sig[0].identity();
}

/// The word with every letter of `slot` removed, renormalized over the
/// remaining slots (renumbered in order).
inline std::pair<FactorSignature, Word> delete_slot(const FactorSignature& sig, const Word& w,
                                                    std::size_t slot) {
  std::vector<FiniteGroup> rest;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (i != slot) rest.push_back(sig[i]);
  FactorSignature out(std::move(rest));
  std::vector<Letter> raw;
  for (Letter l : w.letters)
    if (l.slot != slot)
      raw.push_back({static_cast<std::uint8_t>(l.slot > slot ? l.slot - 1 : l.slot), l.elem});
  return {out, normalize(out, raw)};
}

/// Membership in the ternary cosmash A ⋄ B ⋄ C: each of the three
/// components of the comparison into (A+B) × (A+C) × (B+C) is the empty word.
inline bool in_ternary_cosmash(const FactorSignature& sig, const Word& w) {
  if (sig.size() != 3) throw AlgebraError("ternary cosmash needs a 3-slot signature");
  for (std::size_t d = 0; d < 3; ++d)
    if (!delete_slot(sig, w, d).second.empty()) return false;
  return true;
}

/// Relabels slot i to slot_map[i] of `target` and normalizes. The groups must
/// agree slot by slot.
inline Word relabel_slots(const FactorSignature& src, const FactorSignature& target, const Word& w,
                          std::span<const std::size_t> slot_map) {
  if (slot_map.size() != src.size()) throw AlgebraError("slot map size mismatch");
  for (std::size_t i = 0; i < src.size(); ++i)
    if (slot_map[i] >= target.size() || !(src[i] == target[slot_map[i]]))
      throw AlgebraError("slot relabeling between different groups");
  std::vector<Letter> raw;
  raw.reserve(w.size());
  for (Letter l : w.letters) raw.push_back({static_cast<std::uint8_t>(slot_map[l.slot]), l.elem});
  return normalize(target, raw);
}

/// S_{2,1} : A ⋄ A ⋄ B -> A ⋄ B, merging slots 0 and 1.
inline Word fold_S21(const FactorSignature& sig, const Word& w) {
  if (sig.size() != 3) throw AlgebraError("fold_S21 needs a 3-slot signature");
  if (!(sig[0] == sig[1])) throw AlgebraError("fold_S21: first two slots must be the same group");
  const std::size_t m[] = {0, 0, 1};
  return relabel_slots(sig, FactorSignature{sig[0], sig[2]}, w, m);
}

/// S_{1,2} : A ⋄ B ⋄ B -> A ⋄ B, merging slots 1 and 2.
inline Word fold_S12(const FactorSignature& sig, const Word& w) {
  if (sig.size() != 3) throw AlgebraError("fold_S12 needs a 3-slot signature");
  if (!(sig[1] == sig[2])) throw AlgebraError("fold_S12: last two slots must be the same group");
  const std::size_t m[] = {0, 1, 1};
  return relabel_slots(sig, FactorSignature{sig[0], sig[1]}, w, m);
}

/// Applies one homomorphism per slot (f_0 ⋄ f_1 ⋄ ...) and normalizes.
inline Word map_slots(const FactorSignature& src, const FactorSignature& target, const Word& w,
                      std::span<const GroupHom> maps) {
  if (maps.size() != src.size() || target.size() != src.size())
    throw AlgebraError("map_slots: one map per slot required");
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (!(maps[i].source() == src[i]) || !(maps[i].target() == target[i]))
      throw AlgebraError("map_slots: slot " + std::to_string(i) + " map has the wrong type");
  std::vector<Letter> raw;
  raw.reserve(w.size());
  for (Letter l : w.letters) raw.push_back({l.slot, maps[l.slot](l.elem)});
  return normalize(target, raw);
}

/// A word over (A + B, C): maximal runs of A/B letters become one block.
struct RegroupedWord {
  struct Block {
    bool inner = false;  // true: a nonempty word over (A, B); false: a C-letter
    Word word;
    Elem c = 0;
  };
  std::vector<Block> blocks;
};

/// j_{A,B,C} : A ⋄ B ⋄ C -> (A + B) ⋄ C, as a regrouping of letters.
inline RegroupedWord embed_j(const FactorSignature& sig, const Word& w) {
  if (sig.size() != 3) throw AlgebraError("embed_j needs a 3-slot signature");
  RegroupedWord r;
  for (Letter l : w.letters) {
    if (l.slot == 2) {
      r.blocks.push_back({false, {}, l.elem});
    } else {
      if (r.blocks.empty() || !r.blocks.back().inner) r.blocks.push_back({true, {}, 0});
      r.blocks.back().word.letters.push_back(l);
    }
  }
  return r;
}

/// ([f, g] ⋄ l) on a regrouped word: each (A + B)-block is evaluated by the
/// copairing into A', each C-letter is mapped by l into B'. The result is a
/// normalized word over (A', B').
inline Word apply_regrouped(const RegroupedWord& r, const FactorSignature& target,
                            const GroupHom& f, const GroupHom& g, const GroupHom& l) {
  if (target.size() != 2 || !(f.target() == target[0]) || !(g.target() == target[0]) ||
      !(l.target() == target[1]))
    throw AlgebraError("apply_regrouped: maps do not land in the target signature");
  std::vector<Letter> raw;
  for (const auto& b : r.blocks) {
    if (b.inner) {
      const Elem v = evaluate_with(b.word, target[0],
                                   [&](Letter x) { return x.slot == 0 ? f(x.elem) : g(x.elem); });
      raw.push_back({0, v});
    } else {
      raw.push_back({1, l(b.c)});
    }
  }
  return normalize(target, raw);
}

// ---------------------------------------------------------------------------
// Enumeration

enum class Membership { kAll, kBinaryCosmash, kTernaryCosmash, kFlat };

namespace detail {

/// Depth-first enumeration of reduced words of one exact length with
/// membership pruning.
class WordEnumerator {
 public:
  WordEnumerator(const FactorSignature& sig, Membership m,
                 const std::function<bool(const Word&)>& visit)
      : sig_(sig), mode_(m), visit_(visit) {
    const std::size_t k = sig.size();
    if (k > 255) throw AlgebraError("too many slots");
    if ((m == Membership::kBinaryCosmash || m == Membership::kFlat) && k != 2)
      throw AlgebraError("binary membership needs a 2-slot signature");
    if (m == Membership::kTernaryCosmash && k != 3)
      throw AlgebraError("ternary membership needs a 3-slot signature");
    prod_.resize(k);
    stacks_.resize(k);
  }

  /// Returns false when the visitor asked to stop.
  bool run(std::size_t length) {
    length_ = length;
    for (std::size_t s = 0; s < sig_.size(); ++s) prod_[s] = sig_[s].identity();
    for (auto& st : stacks_) st.clear();
    word_.letters.clear();
    return rec();
  }

  std::size_t nodes() const { return nodes_; }

 private:
  bool group_constrained(std::size_t s) const {
    return mode_ == Membership::kBinaryCosmash || (mode_ == Membership::kFlat && s == 0);
  }

  // Remaining letters of slot s in a 2-slot alternating word, given the
  // number r of letters still to place and the next slot.
  static std::size_t remaining_of(std::size_t s, std::size_t next, std::size_t r) {
    return s == next ? (r + 1) / 2 : r / 2;
  }

  bool feasible_two_slot(std::size_t next, std::size_t r) const {
    for (std::size_t s = 0; s < 2; ++s) {
      if (!group_constrained(s)) continue;
      const std::size_t c = remaining_of(s, next, r);
      if (c == 0 && prod_[s] != sig_[s].identity()) return false;
      if (c == 1 && prod_[s] == sig_[s].identity()) return false;
    }
    return true;
  }

  bool feasible_ternary(std::size_t r) const {
    std::size_t sum = 0;
    for (const auto& st : stacks_) {
      if (st.size() > r) return false;
      sum += st.size();
    }
    return sum <= 2 * r;
  }

  struct Undo {
    std::uint8_t kind;  // 0 pushed, 1 popped, 2 replaced, 3 skipped
    Letter old;
  };

  Undo push_stack(std::vector<Letter>& st, Letter l) {
    const FiniteGroup& g = sig_[l.slot];
    if (!st.empty() && st.back().slot == l.slot) {
      const Letter old = st.back();
      const Elem m = g.mul(old.elem, l.elem);
      if (m == g.identity()) {
        st.pop_back();
        return {1, old};
      }
      st.back().elem = m;
      return {2, old};
    }
    st.push_back(l);
    return {0, {}};
  }

  static void undo_stack(std::vector<Letter>& st, Undo u) {
    switch (u.kind) {
      case 0: st.pop_back(); break;
      case 1: st.push_back(u.old); break;
      case 2: st.back() = u.old; break;
      default: break;
    }
  }

  bool accept_final() const {
    switch (mode_) {
      case Membership::kAll: return true;
      case Membership::kBinaryCosmash:
        return prod_[0] == sig_[0].identity() && prod_[1] == sig_[1].identity();
      case Membership::kFlat: return prod_[0] == sig_[0].identity();
      case Membership::kTernaryCosmash:
        return stacks_[0].empty() && stacks_[1].empty() && stacks_[2].empty();
    }
    return false;
  }

  bool rec() {
    const std::size_t depth = word_.letters.size();
    if (depth == length_) {
      if (!accept_final()) return true;
      return visit_(word_);
    }
    const std::size_t r = length_ - depth;  // letters still to place, including this one
    for (std::size_t s = 0; s < sig_.size(); ++s) {
      if (depth > 0 && word_.letters.back().slot == s) continue;
      const FiniteGroup& g = sig_[s];
      const bool two = mode_ == Membership::kBinaryCosmash || mode_ == Membership::kFlat;
      if (two && !feasible_two_slot(s, r)) continue;
      // With group-level constraints, the last letter of a constrained slot is forced.
      const bool forced = two && group_constrained(s) && remaining_of(s, s, r) == 1;
      for (std::size_t e = 0; e < g.order(); ++e) {
        const auto x = static_cast<Elem>(e);
        if (x == g.identity()) continue;
        if (forced && x != g.inv(prod_[s])) continue;
        ++nodes_;
        const Letter l{static_cast<std::uint8_t>(s), x};
        word_.letters.push_back(l);
        const Elem saved = prod_[s];
        prod_[s] = g.mul(prod_[s], x);
        bool cont = true;
        if (mode_ == Membership::kTernaryCosmash) {
          Undo u[3];
          for (std::size_t d = 0; d < 3; ++d)
            u[d] = d == s ? Undo{3, {}} : push_stack(stacks_[d], l);
          if (feasible_ternary(r - 1)) cont = rec();
          for (std::size_t d = 0; d < 3; ++d) undo_stack(stacks_[d], u[d]);
        } else {
          cont = rec();
        }
        prod_[s] = saved;
        word_.letters.pop_back();
        if (!cont) return false;
      }
    }
    return true;
  }

  const FactorSignature& sig_;
  Membership mode_;
  const std::function<bool(const Word&)>& visit_;
  std::size_t length_ = 0;
  std::size_t nodes_ = 0;
  Word word_;
  std::vector<Elem> prod_;
  // For ternary membership: stacks_[d] is the reduced form of the prefix
  // with slot d deleted.
  std::vector<std::vector<Letter>> stacks_;
};

}  // namespace detail

/// Visits every reduced word of length <= max_len passing the membership
/// test, in length-lexicographic order (letters ordered by slot, then
/// element). The visitor returns false to stop early. Returns the number of
/// words visited.
inline std::size_t for_each_word(const FactorSignature& sig, std::size_t max_len, Membership m,
                                 const std::function<bool(const Word&)>& visit) {
  std::size_t count = 0;
  std::function<bool(const Word&)> counting = [&](const Word& w) {
    ++count;
    return visit(w);
  };
  detail::WordEnumerator en(sig, m, counting);
  for (std::size_t len = 0; len <= max_len; ++len)
    if (!en.run(len)) break;
  return count;
}

/// Cosmash members of length <= max_len: binary for 2-slot signatures,
/// ternary for 3-slot ones.
inline std::vector<Word> enumerate_cosmash_words(const FactorSignature& sig, std::size_t max_len) {
  const Membership m = sig.size() == 2   ? Membership::kBinaryCosmash
                       : sig.size() == 3 ? Membership::kTernaryCosmash
                                         : throw AlgebraError("cosmash words need 2 or 3 slots");
  std::vector<Word> out;
  for_each_word(sig, max_len, m, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

/// Bounded preimage search for f_0 ⋄ f_1: a binary cosmash word over `src` of
/// length <= max_len whose image under the slot maps is `w`.
inline std::optional<Word> find_cosmash_preimage(const FactorSignature& src, const FactorSignature& target,
                                                 std::span<const GroupHom> maps, const Word& w, std::size_t max_len) {
  std::optional<Word> found;
  for_each_word(src, max_len, Membership::kBinaryCosmash, [&](const Word& u) {
    if (map_slots(src, target, u, maps) == w) found = u;
    return !found;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Text form: (0:a 1:x 0:a^-1 1:x^-1)

inline std::string format_word(const FactorSignature& sig, const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    const Letter l = w.letters[i];
    s += std::to_string(l.slot) + ":" + sig[l.slot].name(l.elem);
  }
  return s + ")";
}

/// Parses the text form; "name^k" (k possibly negative) denotes a power.
/// The result is normalized.
inline Word parse_word(const FactorSignature& sig, std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw AlgebraError("word must be written as (slot:element ...)");
  text = text.substr(1, text.size() - 2);
  std::vector<Letter> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    // Element names may contain spaces inside parentheses, e.g. "(1 2 3)".
    int depth = 0;
    while (j < text.size() && (depth > 0 || text[j] != ' ')) {
      if (text[j] == '(') ++depth;
      if (text[j] == ')') --depth;
      ++j;
    }
    std::string_view tok = text.substr(i, j - i);
    i = j;
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw AlgebraError("letter '" + std::string(tok) + "' lacks a slot");
    const std::string slot_s(tok.substr(0, colon));
    std::string_view el = tok.substr(colon + 1);
    std::size_t slot = 0;
    try {
      slot = std::stoul(slot_s);
    } catch (const std::exception&) {
      throw AlgebraError("bad slot index '" + slot_s + "'");
    }
    if (slot >= sig.size()) throw AlgebraError("slot " + slot_s + " out of range");
    long long power = 1;
    std::string_view base = el;
    if (auto caret = el.rfind('^'); caret != std::string_view::npos) {
      base = el.substr(0, caret);
      try {
        power = std::stoll(std::string(el.substr(caret + 1)));
      } catch (const std::exception&) {
        throw AlgebraError("bad exponent in '" + std::string(tok) + "'");
      }
    }
    const auto e = sig[slot].find(base);
    if (!e) throw AlgebraError("unknown element '" + std::string(base) + "' in slot " + slot_s);
    raw.push_back({static_cast<std::uint8_t>(slot), sig[slot].pow(*e, power)});
  }
  return normalize(sig, raw);
}

}  // namespace xmodkit

#pragma once

// Input-erased pushdown systems with push strings of length at most two.
//
// A real-time PDA becomes a system with an explicit bottom symbol: runs start
// in (initial, [bottom]); transitions guarded by the empty stack rewrite the
// bottom symbol to bottom+push; every final state may pop the bottom symbol
// into a dedicated accepting control. The PDA accepts a word iff the system
// reaches (accept, empty) while reading it.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pdaed/automata.hpp"

namespace pdaed::detail {

using Control = std::uint32_t;
using Symbol = std::uint32_t;

struct PdsRule {
  Control from = 0;
  Symbol top = 0;
  Control to = 0;
  std::uint8_t push_length = 0;  ///< 0 pop, 1 swap, 2 push
  Symbol push[2] = {0, 0};       ///< push[0] lies below push[1]
  std::optional<Letter> letter;  ///< nullopt for silent rules
};

struct PushdownSystem {
  Control num_controls = 0;
  Symbol num_symbols = 0;
  Symbol bottom = 0;
  Control accept = 0;
  std::vector<Control> initials;
  std::vector<PdsRule> rules;
};

/// Normalized system for `pda`. Controls 0..|Q|-1 are the PDA states, control
/// |Q| is the accepting control, higher controls are fresh intermediate
/// locations. Symbols 0..|Gamma|-1 follow the stack alphabet order; the bottom
/// symbol is |Gamma|.
struct PdaEncoding {
  PushdownSystem system;
  std::vector<StackSymbol> symbols;  ///< index -> stack symbol (without bottom)
  /// Rule indices produced by each PDA transition, first rule first.
  std::vector<std::vector<std::uint32_t>> rules_of_transition;
};

PdaEncoding encode_pda(const Pda& pda);

/// Appends the normalized rules of a single transition. `fresh` is the next
/// unused control and is advanced past the intermediate locations.
void append_normalized_rule(std::vector<PdsRule>& rules, Control from, Symbol top, Control to,
                            const std::vector<Symbol>& push, std::optional<Letter> letter, Control& fresh);

struct SaturationResult {
  bool reachable = false;
  std::optional<Word> witness;
  std::size_t items = 0;
};

/// Shortest-word saturation: computes, for every (control, symbol, control)
/// summary, the length of a shortest word that pops the symbol, in
/// nondecreasing order of length. Returns whether some initial control pops
/// the bottom symbol into the accepting control, with the shortest such word.
SaturationResult saturate(const PushdownSystem& system);

}  // namespace pdaed::detail

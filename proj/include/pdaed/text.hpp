#pragma once

#include <string>
#include <string_view>

#include "pdaed/automata.hpp"

namespace pdaed {

/// Decodes UTF-8. Throws ValidationError on malformed input.
Word from_utf8(std::string_view text);

std::string to_utf8(const Word& word);
std::string to_utf8(Letter letter);

}  // namespace pdaed

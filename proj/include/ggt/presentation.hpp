#pragma once

#include <string>
#include <vector>

#include "ggt/words.hpp"

namespace ggt {

// Parsed presentation file:
//   generators: a b
//   relators: aa abAB
// Lowercase letters are generators, uppercase their inverses. An empty or
// absent relator list presents a free group.
struct Presentation {
  std::vector<char> generator_names;
  std::vector<Word> relators;

  unsigned rank() const { return static_cast<unsigned>(generator_names.size()); }

  Word parse_word(const std::string& text) const;
  std::string print_word(const Word& w) const;
};

Presentation parse_presentation_text(const std::string& text);
Presentation load_presentation_file(const std::string& path);

}  // namespace ggt

#include "ggt/presentation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ggt/errors.hpp"

namespace ggt {

Word Presentation::parse_word(const std::string& text) const {
  std::vector<Letter> ls;
  ls.reserve(text.size());
  for (char c : text) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
    unsigned idx = 0;
    bool found = false;
    for (; idx < generator_names.size(); ++idx) {
      if (generator_names[idx] == lower) {
        found = true;
        break;
      }
    }
    if (!found) fail(ErrorCode::usage, std::string("letter '") + c + "' is not a declared generator");
    ls.push_back(letter_code(Gen{idx, inv}));
  }
  return Word(std::move(ls));
}

std::string Presentation::print_word(const Word& w) const {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    Gen g = letter_gen(l);
    char c = generator_names.at(g.index);
    out.push_back(g.inverse ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return out;
}

Presentation parse_presentation_text(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  bool have_generators = false;
  std::vector<std::string> relator_tokens;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head.empty() || head[0] == '#') continue;
    if (head == "generators:") {
      std::string tok;
      while (ls >> tok) {
        if (tok.size() != 1 || !std::islower(static_cast<unsigned char>(tok[0]))) {
          fail(ErrorCode::usage, "generator names must be single lowercase letters, got '" + tok + "'");
        }
        p.generator_names.push_back(tok[0]);
      }
      have_generators = true;
    } else if (head == "relators:") {
      std::string tok;
      while (ls >> tok) relator_tokens.push_back(tok);
    } else {
      fail(ErrorCode::usage, "unexpected line '" + line + "' in presentation");
    }
  }
  if (!have_generators || p.generator_names.empty()) {
    fail(ErrorCode::usage, "presentation must declare at least one generator");
  }
  for (const auto& tok : relator_tokens) p.relators.push_back(free_reduce(p.parse_word(tok)));
  return p;
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open presentation file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation_text(buf.str());
}

}  // namespace ggt

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "odg/lexicon.hpp"
#include "odg/serialize.hpp"

namespace odg::test {

inline std::string data_path(const std::string& rel) { return std::string(ODG_DATA_DIR) + "/" + rel; }
inline std::string fixture_path(const std::string& rel) { return std::string(ODG_FIXTURE_DIR) + "/" + rel; }
inline std::string golden_path(const std::string& rel) { return std::string(ODG_GOLDEN_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Lexicon& reference_lexicon() {
  static const Lexicon lex = load_lexicon_file(data_path("de.lex"));
  return lex;
}

inline DependencyStructure fixture(const std::string& name) {
  return parse_structure_text(read_file(fixture_path(name)));
}

inline DependencyTree corpus_tree(const std::string& name) {
  return parse_tree_text(read_file(data_path("corpus/trees/" + name)));
}

/// Non-blank, non-comment lines.
inline std::vector<std::string> lines_of(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

inline std::vector<std::string> corpus_sentences() { return lines_of(data_path("corpus/sentences.txt")); }

inline std::vector<std::string> corpus_tree_names() {
  return lines_of(data_path("corpus/trees/INDEX"));
}

/// `count<TAB>key` records.
inline std::vector<std::pair<std::size_t, std::string>> golden_counts(const std::string& name) {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (const auto& line : lines_of(golden_path(name))) {
    const auto tab = line.find('\t');
    out.emplace_back(std::stoul(line.substr(0, tab)), line.substr(tab + 1));
  }
  return out;
}

}  // namespace odg::test

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "odg/engine.hpp"
#include "odg/error.hpp"
#include "odg/lexicon.hpp"
#include "odg/oracle.hpp"
#include "odg/serialize.hpp"
#include "odg/validate.hpp"

namespace odg::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  std::string lexicon;
  std::string format = "human";
  bool no_prune = false;
  std::uint64_t max_candidates = SearchOptions{}.max_candidates;
  bool timing = false;
  std::string file;
  std::vector<std::string> inline_input;
  bool diff = false;
  bool tree_mode = false;
  std::size_t max_tokens = OracleConfig{}.max_tokens;
};

// Raised for problems with the invocation or its input (exit status 2).
struct InputError : Error {
  using Error::Error;
};

bool machine(const Settings& s) { return s.format == "machine"; }

SearchOptions search_options(const Settings& s) {
  SearchOptions o;
  o.prune = !s.no_prune;
  o.max_candidates = s.max_candidates;
  return o;
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// Inline arguments, else --file, else standard input.
std::string read_input(const Settings& s, std::istream& in) {
  if (!s.inline_input.empty()) return join(s.inline_input);
  if (!s.file.empty()) {
    std::ifstream f(s.file);
    if (!f) throw InputError("cannot open " + s.file);
    return read_all(f);
  }
  return read_all(in);
}

// One sentence per non-blank line; '#' starts a comment line.
std::vector<std::string> sentences(const Settings& s, std::istream& in) {
  if (!s.inline_input.empty()) return {join(s.inline_input)};
  std::istringstream text(read_input(s, in));
  std::vector<std::string> out;
  for (std::string line; std::getline(text, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line);
  }
  return out;
}

Lexicon load(const Settings& s) {
  std::string path = s.lexicon;
  if (path.empty()) {
    if (const char* env = std::getenv("ODG_LEXICON")) path = env;
  }
  if (path.empty()) throw InputError("no lexicon given (use --lexicon or ODG_LEXICON)");
  try {
    return load_lexicon_file(path);
  } catch (const LexiconError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + e.what());
  }
}

DependencyStructure read_structure(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_structure_json(text);
  return parse_structure_text(text);
}

Json structure_json(const DependencyStructure& ds) { return Json::parse(render_json(ds)); }

Json report_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations()) {
    Json domains = Json::array();
    for (const auto& d : v.domains) domains.push_back(d);
    Json words = Json::array();
    for (WordIndex w : v.words) words.push_back(word_label(w));
    out.push_back({{"condition", v.condition}, {"words", words}, {"domains", domains}, {"message", v.message}});
  }
  return out;
}

class Timer {
 public:
  Timer(const Settings& s, std::ostream& err, std::string what)
      : on_(s.timing), err_(err), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    if (!on_) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
    err_ << "time " << what_ << ": " << ms.count() << " ms\n";
  }

 private:
  bool on_;
  std::ostream& err_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

void print_structures(std::ostream& out, const std::vector<DependencyStructure>& structures) {
  for (std::size_t i = 0; i < structures.size(); ++i) {
    out << "== structure " << i + 1 << "\n" << render_text(structures[i]);
  }
}

int cmd_parse(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const Lexicon lex = load(s);
  int status = kOk;
  for (const auto& sentence : sentences(s, in)) {
    const auto tokens = tokenize(sentence);
    if (tokens.empty()) continue;
    ParseResult result;
    try {
      Timer timer(s, err, "parse '" + sentence + "'");
      result = parse(tokens, lex, search_options(s));
    } catch (const UnknownToken& e) {
      err << "error: unknown token '" << e.token() << "' in: " << sentence << "\n";
      status = std::max<int>(status, kUsage);
      continue;
    }
    if (result.structures.empty()) status = std::max<int>(status, kEmpty);
    if (machine(s)) {
      Json j;
      j["sentence"] = join(tokens);
      j["structures"] = Json::array();
      for (const auto& ds : result.structures) j["structures"].push_back(structure_json(ds));
      j["diagnostics"] = result.diagnostics;
      out << j.dump() << "\n";
    } else {
      out << "sentence: " << join(tokens) << "\nstructures: " << result.structures.size() << "\n";
      print_structures(out, result.structures);
      for (const auto& d : result.diagnostics) out << "  ! " << d << "\n";
    }
  }
  return status;
}

int cmd_generate(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const Lexicon lex = load(s);
  const DependencyTree tree = read_structure(read_input(s, in)).tree;
  GenerationResult result;
  {
    Timer timer(s, err, "generate");
    result = generate(tree, lex, search_options(s));
  }
  if (machine(s)) {
    Json j;
    j["orders"] = Json::array();
    for (const auto& o : result.orders)
      j["orders"].push_back({{"surface", o.surface}, {"structure", structure_json(o.structure)}});
    out << j.dump() << "\n";
  } else {
    out << "orders: " << result.orders.size() << "\n";
    for (std::size_t i = 0; i < result.orders.size(); ++i)
      out << "== order " << i + 1 << ": " << result.orders[i].surface << "\n"
          << render_text(result.orders[i].structure);
  }
  return result.orders.empty() ? kEmpty : kOk;
}

int cmd_validate(const Settings& s, std::istream& in, std::ostream& out, std::ostream&) {
  const Lexicon lex = load(s);
  const DependencyStructure ds = read_structure(read_input(s, in));
  const ValidationReport report = validate_structure(ds, lex);
  if (machine(s)) {
    out << Json{{"valid", report.ok()}, {"violations", report_json(report)}}.dump() << "\n";
  } else if (report.ok()) {
    out << "valid\n";
  } else {
    out << "invalid: " << report.violations().size() << " violation(s)\n" << report.render();
  }
  return report.ok() ? kOk : kEmpty;
}

std::vector<std::string> canonical_set(const std::vector<DependencyStructure>& v) {
  std::vector<std::string> out;
  for (const auto& ds : v) out.push_back(canonical_form(ds));
  std::sort(out.begin(), out.end());
  return out;
}

// Entries of a but not of b; both sorted.
std::vector<std::string> minus(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Oracle results next to engine results, or just the oracle's when diff is off.
int report_oracle(const Settings& s, std::ostream& out, const std::string& label,
                  const std::vector<std::string>& oracle_keys,
                  const std::optional<std::vector<std::string>>& engine_keys) {
  if (!engine_keys) {
    if (machine(s)) {
      Json j{{"input", label}, {"results", oracle_keys}};
      out << j.dump() << "\n";
    } else {
      out << "input: " << label << "\noracle results: " << oracle_keys.size() << "\n";
      for (const auto& k : oracle_keys) out << "== result\n" << k;
    }
    return oracle_keys.empty() ? kEmpty : kOk;
  }
  const auto only_oracle = minus(oracle_keys, *engine_keys);
  const auto only_engine = minus(*engine_keys, oracle_keys);
  if (machine(s)) {
    Json j{{"input", label},
           {"oracle", oracle_keys.size()},
           {"engine", engine_keys->size()},
           {"only_oracle", only_oracle},
           {"only_engine", only_engine}};
    out << j.dump() << "\n";
  } else {
    out << "input: " << label << "\noracle: " << oracle_keys.size() << ", engine: " << engine_keys->size()
        << ", diff: " << only_oracle.size() + only_engine.size() << "\n";
    for (const auto& k : only_oracle) out << "-- only in oracle\n" << k;
    for (const auto& k : only_engine) out << "-- only in engine\n" << k;
  }
  return only_oracle.empty() && only_engine.empty() ? kOk : kEmpty;
}

int cmd_oracle(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const Lexicon lex = load(s);
  OracleConfig config;
  config.max_tokens = s.max_tokens;
  int status = kOk;
  if (s.tree_mode) {
    config.enumerate = OracleConfig::Enumerate::Permutations;
    const DependencyTree tree = read_structure(read_input(s, in)).tree;
    std::vector<std::string> keys;
    {
      Timer timer(s, err, "oracle orders");
      for (const auto& [surface, ds] : oracle_linearizations(tree, lex, config))
        keys.push_back(surface + "\n" + canonical_form(ds));
    }
    std::sort(keys.begin(), keys.end());
    std::optional<std::vector<std::string>> engine;
    if (s.diff) {
      engine.emplace();
      for (const auto& o : generate(tree, lex, search_options(s)).orders)
        engine->push_back(o.surface + "\n" + canonical_form(o.structure));
      std::sort(engine->begin(), engine->end());
    }
    return report_oracle(s, out, surface_string(tree), keys, engine);
  }
  for (const auto& sentence : sentences(s, in)) {
    const auto tokens = tokenize(sentence);
    if (tokens.empty()) continue;
    std::vector<std::string> keys;
    {
      Timer timer(s, err, "oracle '" + sentence + "'");
      keys = canonical_set(oracle_parse(tokens, lex, config));
    }
    std::optional<std::vector<std::string>> engine;
    if (s.diff) engine = canonical_set(parse(tokens, lex, search_options(s)).structures);
    status = std::max(status, report_oracle(s, out, join(tokens), keys, engine));
  }
  return status;
}

int cmd_check_lexicon(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string path = s.inline_input.empty() ? s.lexicon : s.inline_input.front();
  if (path.empty()) {
    if (const char* env = std::getenv("ODG_LEXICON")) path = env;
  }
  try {
    const Lexicon lex = path.empty() ? load_lexicon(read_all(in)) : load_lexicon_file(path);
    out << summarize(lex);
    return kOk;
  } catch (const LexiconError& e) {
    err << (path.empty() ? "<stdin>" : path) << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kEmpty;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Order-domain dependency grammar: parse, generate, validate, cross-check", "odg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-l,--lexicon", s.lexicon, "Lexicon file (default: $ODG_LEXICON)");
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
  app.add_flag("--no-prune", s.no_prune, "Naive search: enumerate everything, filter by validation only");
  app.add_option("--max-candidates", s.max_candidates, "Search candidate cap (exit 3 when exceeded)")
      ->capture_default_str();
  app.add_flag("--timing", s.timing, "Report elapsed time on standard error");

  auto add_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", s.inline_input, what);
    sub->add_option("-f,--file", s.file, "Read input from a file instead of standard input");
  };
  auto* parse_cmd = app.add_subcommand("parse", "Parse sentences (one per line when read from a file)");
  add_input(parse_cmd, "Sentence");
  auto* gen_cmd = app.add_subcommand("generate", "All orders and structures of a dependency tree");
  add_input(gen_cmd, "Tree text");
  auto* val_cmd = app.add_subcommand("validate", "Validate a dependency structure");
  add_input(val_cmd, "Structure text");
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference results");
  add_input(oracle_cmd, "Sentence, or tree text with --tree");
  oracle_cmd->add_flag("--diff", s.diff, "Compare against the engine; exit 1 on any difference");
  oracle_cmd->add_flag("--tree", s.tree_mode, "Input is a tree; enumerate its orders");
  oracle_cmd->add_option("--max-tokens", s.max_tokens, "Largest input the oracle accepts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* check_cmd = app.add_subcommand("check-lexicon", "Check a lexicon and summarize its inventory");
  check_cmd->add_option("path", s.inline_input, "Lexicon file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(s, in, out, err);
    if (gen_cmd->parsed()) return cmd_generate(s, in, out, err);
    if (val_cmd->parsed()) return cmd_validate(s, in, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(s, in, out, err);
    return cmd_check_lexicon(s, in, out, err);
  } catch (const ResourceExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const TokenLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace odg::cli

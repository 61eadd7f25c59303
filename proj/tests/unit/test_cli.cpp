#include <doctest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using odg::test::data_path;
using odg::test::fixture_path;
using odg::test::read_file;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::vector<std::string> full{"--lexicon", data_path("de.lex")};
  full.insert(full.end(), args.begin(), args.end());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = odg::cli::run(full, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse of the topicalized object sentence") {
  const auto r = invoke({"parse", "den Mann hat der Junge gesehen"});
  CHECK(r.code == odg::cli::kOk);
  CHECK(r.out.find("structures: 1") != std::string::npos);
  CHECK(r.out.find("positional 1: 2") != std::string::npos);
}

TEST_CASE("parse reads one sentence per line from stdin") {
  const auto r = invoke({"--format", "machine", "parse"},
                        "# comment\nden Mann hat der Junge gesehen\nder Junge schläft\n");
  CHECK(r.code == odg::cli::kOk);
  std::istringstream lines(r.out);
  std::vector<nlohmann::json> records;
  for (std::string line; std::getline(lines, line);) records.push_back(nlohmann::json::parse(line));
  REQUIRE(records.size() == 2);
  CHECK(records[0]["structures"].size() == 1);
  CHECK(records[1]["sentence"] == "der Junge schläft");
}

TEST_CASE("ungrammatical input exits 1 with diagnostics") {
  const auto r = invoke({"--format", "machine", "parse", "der Jungen"});
  CHECK(r.code == odg::cli::kEmpty);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["structures"].empty());
  CHECK_FALSE(j["diagnostics"].empty());
}

TEST_CASE("unknown token and missing lexicon are input errors") {
  CHECK(invoke({"parse", "den Katze"}).code == odg::cli::kUsage);
  std::istringstream in;
  std::ostringstream out, err;
  CHECK(odg::cli::run({"--lexicon", "/nonexistent.lex", "parse", "x"}, in, out, err) == odg::cli::kUsage);
  CHECK(err.str().find("/nonexistent.lex") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == odg::cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == odg::cli::kUsage);
  CHECK(invoke({"--format", "xml", "parse", "der Junge schläft"}).code == odg::cli::kUsage);
}

TEST_CASE("validate") {
  SUBCASE("valid fixture") {
    const auto r = invoke({"validate", "-f", fixture_path("topicalized.txt")});
    CHECK(r.code == odg::cli::kOk);
    CHECK(r.out == "valid\n");
  }
  SUBCASE("overlapping sibling domains name the disjointness condition") {
    std::string text = read_file(fixture_path("topicalized.txt"));
    const std::string from = "domain 2.mf: 2 3 4 5";
    text.replace(text.find(from), from.size(), "domain 2.mf: 1 2 3 4 5");
    const auto r = invoke({"validate"}, text);
    CHECK(r.code == odg::cli::kEmpty);
    CHECK(r.out.find("pairwise disjoint") != std::string::npos);
  }
  SUBCASE("machine output lists violations") {
    const auto r = invoke({"--format", "machine", "validate", "-f", fixture_path("verb_first.txt")});
    CHECK(r.code == odg::cli::kEmpty);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["valid"] == false);
    REQUIRE(j["violations"].size() == 1);
    CHECK(j["violations"][0]["condition"] == "card");
  }
  SUBCASE("malformed structure text") {
    CHECK(invoke({"validate"}, "token zero\n").code == odg::cli::kUsage);
  }
}

TEST_CASE("generate") {
  const auto r = invoke({"generate", "-f", data_path("corpus/trees/topicalized.txt")});
  CHECK(r.code == odg::cli::kOk);
  CHECK(r.out.find("den Mann hat der Junge gesehen") != std::string::npos);
  CHECK(invoke({"generate", "-f", data_path("corpus/trees/np_only.txt")}).code == odg::cli::kEmpty);
}

TEST_CASE("oracle diff agrees with the engine") {
  CHECK(invoke({"oracle", "--diff", "-f", data_path("corpus/sentences.txt")}).code == odg::cli::kOk);
  CHECK(invoke({"--no-prune", "oracle", "--diff", "--tree", "-f", data_path("corpus/trees/topicalized.txt")}).code ==
        odg::cli::kOk);
}

TEST_CASE("oracle token limit") {
  const auto r = invoke({"oracle", "--max-tokens", "3", "den Mann hat der Junge gesehen"});
  CHECK(r.code == odg::cli::kResource);
}

TEST_CASE("candidate cap exits 3") {
  const auto r = invoke({"--max-candidates", "5", "parse", "den Mann hat der Junge gesehen"});
  CHECK(r.code == odg::cli::kResource);
  CHECK(r.err.find("resource exceeded") != std::string::npos);
}

TEST_CASE("machine output is byte-identical across runs") {
  const std::vector<std::string> args{"--format", "machine", "generate", "-f",
                                      data_path("corpus/trees/hat_gestern.txt")};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == odg::cli::kOk);
  CHECK(a.out == b.out);
  CHECK(invoke({"--no-prune", "--format", "machine", "generate", "-f",
                data_path("corpus/trees/hat_gestern.txt")}).out == a.out);
}

TEST_CASE("timing goes to stderr only when asked") {
  const auto quiet = invoke({"parse", "der Junge schläft"});
  CHECK(quiet.err.empty());
  const auto timed = invoke({"--timing", "parse", "der Junge schläft"});
  CHECK_FALSE(timed.err.empty());
  CHECK(timed.out == quiet.out);
}

TEST_CASE("check-lexicon") {
  std::istringstream in;
  std::ostringstream out, err;
  CHECK(odg::cli::run({"check-lexicon", data_path("de.lex")}, in, out, err) == odg::cli::kOk);
  CHECK(out.str().find("dtypes (6)") != std::string::npos);

  unsetenv("ODG_LEXICON");
  std::istringstream bad("dtypes: a\nclasses: X\nentry \"x\" class=Y {}\n");
  std::ostringstream out2, err2;
  CHECK(odg::cli::run({"check-lexicon"}, bad, out2, err2) == odg::cli::kEmpty);
  CHECK_FALSE(err2.str().empty());
}

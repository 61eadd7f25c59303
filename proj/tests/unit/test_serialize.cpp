#include <doctest.h>

#include "odg/error.hpp"
#include "odg/serialize.hpp"
#include "support.hpp"

using namespace odg;
using odg::test::fixture;

TEST_CASE("text round trip") {
  for (const char* name : {"topicalized.txt", "verb_first.txt", "mann_after_participle.txt"}) {
    const auto ds = fixture(name);
    const std::string text = render_text(ds);
    CHECK(parse_structure_text(text) == ds);
    CHECK(render_text(parse_structure_text(text)) == text);
  }
}

TEST_CASE("JSON round trip") {
  const auto ds = fixture("topicalized.txt");
  const std::string json = render_json(ds);
  CHECK(parse_structure_json(json) == ds);
  CHECK(render_json(parse_structure_json(json)) == json);
  CHECK(parse_structure_json(render_json(ds, 2)) == ds);
}

TEST_CASE("JSON layout") {
  const auto ds = fixture("topicalized.txt");
  const std::string json = render_json(ds);
  CHECK(json.rfind(R"({"tokens":[{"index":0,"form":"den","class":"Det","entry":0,"features":{"case":"acc"}})", 0) == 0);
  CHECK(json.find(R"("edges":[[1,"det",0],[5,"obj",1])") != std::string::npos);
  CHECK(json.find(R"("domains":{"ROOT.s":[0,1,2,3,4,5])") != std::string::npos);
  CHECK(json.find(R"("assoc":{"ROOT":[["s","ROOT.s"]])") != std::string::npos);
  CHECK(json.find(R"("positional":{"0":1,"1":2)") != std::string::npos);
}

TEST_CASE("tree text") {
  const auto ds = fixture("topicalized.txt");
  const std::string text = render_tree_text(ds.tree);
  CHECK(parse_tree_text(text) == ds.tree);
  CHECK(text.find("domain") == std::string::npos);
  CHECK_THROWS_AS(parse_tree_text(render_text(ds)), FormatError);
}

TEST_CASE("canonical form ignores domain names and record order") {
  auto ds = fixture("topicalized.txt");
  auto renamed = ds;
  for (auto& d : renamed.domains.domains) d.id = "x" + d.id;
  for (auto& [w, seq] : renamed.domains.assoc)
    for (auto& ref : seq) ref.id = "x" + ref.id;
  std::reverse(renamed.domains.domains.begin(), renamed.domains.domains.end());
  std::reverse(renamed.tree.edges.begin(), renamed.tree.edges.end());
  CHECK(renamed != ds);
  CHECK(canonical_form(renamed) == canonical_form(ds));
  CHECK(canonicalize(renamed) == canonicalize(ds));
  CHECK(canonicalize(ds) == ds);  // engine output is already canonical
}

TEST_CASE("format errors") {
  CHECK_THROWS_AS(parse_structure_text("token 0 hat\n"), FormatError);
  CHECK_THROWS_AS(parse_structure_text("token 0 hat Vfin 0\nbogus 1\n"), FormatError);
  CHECK_THROWS_AS(parse_structure_text("token 0 hat Vfin 0\nedge 0 subj\n"), FormatError);
  CHECK_THROWS_AS(parse_structure_text("token 0 hat Vfin 0 case\n"), FormatError);
  CHECK_THROWS_AS(parse_structure_json("{"), FormatError);
  CHECK_THROWS_AS(parse_structure_json(R"({"tokens":[]})"), FormatError);
  try {
    parse_structure_text("token 0 hat Vfin 0\n\nedge x subj 0\n");
    FAIL("no error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const auto ds = fixture("topicalized.txt");
  CHECK(parse_structure_text("# header\n\n" + render_text(ds) + "\n# trailer\n") == ds);
}

#include <doctest.h>

#include "odg/constraints.hpp"
#include "odg/validate.hpp"
#include "support.hpp"

using namespace odg;
using odg::test::fixture;
using odg::test::reference_lexicon;

namespace {

const LexicalEntry& hat() { return reference_lexicon().entries.at("hat").front(); }

const PrecedencePredicate& hat_self_first() { return hat().predicates.at(0); }
const PrecedencePredicate& hat_vpart_last() { return hat().predicates.at(1); }

ValidationReport hat_precedence(const DependencyStructure& ds, const Lexicon& lex = reference_lexicon()) {
  const StructureView view(ds, lex);
  const WordIndex h = ds.tree.root;
  ValidationReport r = check_precedence(hat_self_first(), h, view);
  r.merge(check_precedence(hat_vpart_last(), h, view));
  return r;
}

}  // namespace

TEST_CASE("the reference entry for hat carries both predicate types") {
  CHECK(hat_self_first().kind == PrecedencePredicate::Kind::SelfVsAll);
  CHECK(hat_self_first().direction == Direction::Precedes);
  CHECK(hat_vpart_last().kind == PrecedencePredicate::Kind::LabeledPair);
  CHECK(hat_vpart_last().direction == Direction::Follows);
  CHECK(hat_vpart_last().left == SymbolSet{"vpart"});
  CHECK(hat_vpart_last().right == SymbolSet{"obj", "subj"});
}

TEST_CASE("check_precedence: topicalized object is outside the Mittelfeld") {
  const auto report = hat_precedence(fixture("topicalized.txt"));
  CHECK_MESSAGE(report.ok(), report.render());
}

TEST_CASE("check_precedence: object before the participle inside the Mittelfeld") {
  const auto report = hat_precedence(fixture("verb_first.txt"));
  CHECK_MESSAGE(report.ok(), report.render());
}

TEST_CASE("check_precedence: subject and object after the participle") {
  const auto report = hat_precedence(fixture("subject_after_participle.txt"));
  CHECK(report.count("order") == 2);
}

TEST_CASE("check_precedence: a label matches transitive dependents") {
  // Mann is obj of gesehen, not of hat, yet ">_{subject,object}" reaches it.
  const auto report = hat_precedence(fixture("mann_after_participle.txt"));
  REQUIRE(report.count("order") == 1);
  CHECK(report.violations().front().words == std::vector<WordIndex>{0, 3, 5});
}

TEST_CASE("check_precedence: self predicate on a word alone in its domain") {
  const auto ds = fixture("topicalized.txt");
  const StructureView view(ds, reference_lexicon());
  PrecedencePredicate p;
  // The determiner der (3) is the only member of its own domain.
  CHECK(check_precedence(p, 3, view).ok());
  p.direction = Direction::Follows;
  CHECK(check_precedence(p, 3, view).ok());
}

TEST_CASE("check_precedence: self predicates violated by members on the wrong side") {
  const auto ds = fixture("topicalized.txt");
  const StructureView view(ds, reference_lexicon());
  PrecedencePredicate p;
  p.direction = Direction::Follows;
  // hat (2) precedes Junge and gesehen in its Mittelfeld.
  CHECK(check_precedence(p, 2, view).count("order") == 2);
}

TEST_CASE("check_precedence: unknown label is an inventory error") {
  const auto ds = fixture("topicalized.txt");
  const StructureView view(ds, reference_lexicon());
  PrecedencePredicate p;
  p.kind = PrecedencePredicate::Kind::LabeledPair;
  p.left = {"iobj"};
  p.right = {"subj"};
  CHECK(check_precedence(p, 2, view).has("inventory"));
}

TEST_CASE("check_cardinality") {
  const auto& vf = hat().domains.cardinalities.at(0);
  REQUIRE(vf.min == 1);
  REQUIRE(vf.max == 1u);

  SUBCASE("Vorfeld with one multi-word member") {
    const auto ds = fixture("topicalized.txt");
    CHECK(check_cardinality(vf, 2, StructureView(ds, reference_lexicon())).ok());
  }
  SUBCASE("empty Vorfeld") {
    const auto ds = fixture("verb_first.txt");
    CHECK(check_cardinality(vf, 0, StructureView(ds, reference_lexicon())).has("card"));
  }
  SUBCASE("unconstrained slot") {
    const auto ds = fixture("topicalized.txt");
    CardinalityConstraint any{1, 0, std::nullopt};
    CHECK(check_cardinality(any, 2, StructureView(ds, reference_lexicon())).ok());
  }
  SUBCASE("Mittelfeld counts sub-domains once") {
    const auto ds = fixture("topicalized.txt");
    const StructureView view(ds, reference_lexicon());
    // Members of 2.mf: hat, domain of Junge, domain of gesehen.
    CHECK(check_cardinality(CardinalityConstraint::at_most_one(1), 2, view).has("card"));
    CHECK(check_cardinality(CardinalityConstraint::at_least_one(1), 2, view).ok());
    CHECK(check_cardinality(CardinalityConstraint::at_least_one(2), 2, view).has("card"));
    CHECK(check_cardinality(CardinalityConstraint::at_most_one(2), 2, view).ok());
  }
  SUBCASE("slot out of range") {
    const auto ds = fixture("topicalized.txt");
    CHECK(check_cardinality(CardinalityConstraint::at_most_one(7), 2, StructureView(ds, reference_lexicon()))
              .has("card.slot"));
  }
}

TEST_CASE("check_domain_features") {
  const auto ds = fixture("topicalized.txt");
  const StructureView view(ds, reference_lexicon());
  SUBCASE("empty requirement") { CHECK(check_domain_features({1, {}}, 2, view).ok()); }
  SUBCASE("Mittelfeld requiring case=nom, member Junge") {
    // Members of 2.mf besides hat: Junge (case=nom) and gesehen (no case).
    const auto report = check_domain_features({1, {{"case", "nom"}}}, 2, view);
    REQUIRE(report.count("feat") == 1);
    CHECK(report.violations().front().words == std::vector<WordIndex>{2, 5});
  }
  SUBCASE("Vorfeld requiring case=nom, member Mann with case=acc") {
    const auto report = check_domain_features({0, {{"case", "nom"}}}, 2, view);
    REQUIRE(report.count("feat") == 1);
    CHECK(report.violations().front().words == std::vector<WordIndex>{2, 1});
  }
}

TEST_CASE("check_extraction") {
  const auto ds = fixture("topicalized.txt");
  const StructureView view(ds, reference_lexicon());
  ValencySlot obj = reference_lexicon().entries.at("gesehen").front().valency.front();
  REQUIRE(obj.dtype == "obj");

  SUBCASE("object climbing over vpart with E={vpart}") { CHECK(check_extraction(obj, 1, view).ok()); }
  SUBCASE("E={subj} with the path labeled vpart") {
    obj.extraction = {"subj"};
    CHECK(check_extraction(obj, 1, view).count("extraction") == 1);
  }
  SUBCASE("E empty and positional = direct head") {
    ValencySlot subj = hat().valency.front();
    REQUIRE(subj.extraction.empty());
    CHECK(check_extraction(subj, 4, view).ok());
  }
  SUBCASE("path crossing propo") {
    auto moved = ds;
    moved.positional[1] = kRoot;
    const StructureView v2(moved, reference_lexicon());
    const auto report = check_extraction(obj, 1, v2);
    REQUIRE(report.count("extraction") == 1);
    CHECK(report.violations().front().message.find("propo") != std::string::npos);
    obj.extraction = {"vpart", "propo"};
    CHECK(check_extraction(obj, 1, v2).ok());
  }
  SUBCASE("positional head that is not a transitive head") {
    auto moved = ds;
    moved.positional[1] = 4;
    CHECK(check_extraction(obj, 1, StructureView(moved, reference_lexicon())).has("positional"));
  }
}

TEST_CASE("E empty accepts exactly positional = direct head") {
  const auto ds = fixture("topicalized.txt");
  ValencySlot obj = reference_lexicon().entries.at("gesehen").front().valency.front();
  obj.extraction.clear();
  for (WordIndex p : {kRoot, 2, 5}) {
    auto moved = ds;
    moved.positional[1] = p;
    CHECK(check_extraction(obj, 1, StructureView(moved, reference_lexicon())).ok() == (p == 5));
  }
}

TEST_CASE("removing a lexical constraint never invalidates a valid structure") {
  const auto ds = fixture("topicalized.txt");
  REQUIRE(is_valid(ds, reference_lexicon()));
  Lexicon lex = reference_lexicon();
  auto& e = lex.entries.at("hat").front();
  while (!e.predicates.empty()) {
    e.predicates.pop_back();
    CHECK(is_valid(ds, lex));
  }
  e.domains.cardinalities.clear();
  e.domains.requirements.clear();
  CHECK(is_valid(ds, lex));
}

// Randomized checks of the validator against direct recomputation.

#include <doctest.h>

#include <functional>
#include <numeric>

#include "property_checks.hpp"

using namespace odg;
using namespace odg::test;

TEST_CASE("domain structure checks agree with set-theoretic recomputation") {
  const auto run = check_domain_structures(20261018, 20000);
  INFO(run.failure);
  CHECK(run.failure.empty());
  CHECK(run.instances == 20000);
  CHECK(run.valid > 1000);
}

TEST_CASE("valid domain structures nest under the top domain") {
  Rng rng(31);
  int valid = 0;
  for (int iter = 0; iter < 5000; ++iter) {
    const int n = uniform(rng, 1, 6);
    OrderDomainStructure ods;
    for (int i = uniform(rng, 0, 5); i > 0; --i)
      ods.domains.push_back({"d" + std::to_string(i), i == 1 ? all_words(n) : random_members(rng, n, false)});
    if (!validate_domain_structure(ods, static_cast<std::size_t>(n)).ok()) continue;
    ++valid;
    // The strict supersets of each domain are totally ordered by inclusion.
    for (const auto& d : ods.domains) {
      std::vector<const Members*> ups;
      for (const auto& e : ods.domains)
        if (&e != &d && std::includes(e.members.begin(), e.members.end(), d.members.begin(), d.members.end()))
          ups.push_back(&e.members);
      for (auto* x : ups)
        for (auto* y : ups)
          REQUIRE((std::includes(x->begin(), x->end(), y->begin(), y->end()) ||
                   std::includes(y->begin(), y->end(), x->begin(), x->end())));
      REQUIRE(*d.members.rbegin() - *d.members.begin() + 1 == static_cast<int>(d.members.size()));
    }
  }
  CHECK(valid > 200);
}

TEST_CASE("conditions (1)-(4) agree with independent re-implementations") {
  const int instances = 20000;
  int clean[4] = {0, 0, 0, 0};
  const auto run = check_linking_conditions(4242, instances, clean);
  INFO(run.failure);
  CHECK(run.failure.empty());
  // Both verdicts occur often enough for the comparison to mean something.
  for (int c : clean) {
    CHECK(c > instances / 20);
    CHECK(c < instances - instances / 20);
  }
}

TEST_CASE("condition (4) equals depth-first flattening on engine-valid structures") {
  // On valid structures, reading domains outermost-first and sequences
  // left to right reproduces index order.
  Rng rng(7);
  int checked = 0;
  for (int iter = 0; iter < 20000 && checked < 200; ++iter) {
    const auto ds = random_structure(rng);
    if (!validate_structure(ds, plain_lexicon()).has_prefix("cond") &&
        validate_domain_structure(ds.domains, ds.tree.size()).ok()) {
      ++checked;
      std::vector<WordIndex> flat;
      std::function<void(const Members&)> walk = [&](const Members& dom) {
        // Immediate parts of dom: maximal proper sub-domains and bare words, by first index.
        std::vector<std::pair<WordIndex, const Members*>> parts;
        for (const auto& d : ds.domains.domains) {
          if (d.members == dom || !std::includes(dom.begin(), dom.end(), d.members.begin(), d.members.end()))
            continue;
          bool maximal = true;
          for (const auto& e : ds.domains.domains)
            maximal = maximal && !(e.members != dom && e.members != d.members &&
                                   std::includes(dom.begin(), dom.end(), e.members.begin(), e.members.end()) &&
                                   std::includes(e.members.begin(), e.members.end(), d.members.begin(), d.members.end()));
          if (maximal && std::none_of(parts.begin(), parts.end(), [&](auto& p) { return p.second && *p.second == d.members; }))
            parts.push_back({*d.members.begin(), &d.members});
        }
        for (WordIndex w : dom) {
          bool covered = false;
          for (auto& p : parts) covered = covered || (p.second && member(*p.second, w));
          if (!covered) parts.push_back({w, nullptr});
        }
        std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (auto& [first, sub] : parts) {
          if (sub) walk(*sub);
          else flat.push_back(first);
        }
      };
      walk(all_words(static_cast<int>(ds.tree.size())));
      std::vector<WordIndex> expected(ds.tree.size());
      std::iota(expected.begin(), expected.end(), 0);
      REQUIRE(flat == expected);
      REQUIRE(surface_order(ds) == expected);
    }
  }
  CHECK(checked == 200);
}


TEST_CASE("random structures round-trip through text and JSON") {
  const auto run = check_structure_roundtrips(99, 2000);
  INFO(run.failure);
  CHECK(run.failure.empty());
}

TEST_CASE("random lexica round-trip through the file format") {
  const auto run = check_lexicon_roundtrips(1234, 1000);
  INFO(run.failure);
  CHECK(run.failure.empty());
}

#include <gtest/gtest.h>

#include <functional>

#include <rfm/construct.hpp>
#include <rfm/descriptor.hpp>
#include <rfm/invariants.hpp>

#include "support/generators.hpp"

namespace rfm {
namespace {

RoundFoldDescriptor pants_page() {
  return descriptor_from_morse(make_page(3, {MorseEvent::merge("0", "1", "a"), MorseEvent::merge("a", "2", "b"), MorseEvent::death("b")}));
}

RoundFoldDescriptor minimal() { return descriptor_from_morse(make_page(1, {MorseEvent::death("0")})); }

TEST(Directions, FromCounts) {
  EXPECT_EQ(compute_directions(std::vector<int>{1, 2, 1, 0}),
            (std::vector<Direction>{Direction::outward, Direction::inward, Direction::inward}));
  EXPECT_THROW(compute_directions(std::vector<int>{3, 1, 0}), PreconditionError);
}

TEST(Directions, DirectedIffInnermostCountEqualsLevels) {
  EXPECT_TRUE(is_directed(pants_page()));
  EXPECT_TRUE(is_directed(minimal()));
  const auto g1 = descriptor_from_morse(make_page(1, {MorseEvent::split("0", "a", "b"), MorseEvent::merge("a", "b", "c"), MorseEvent::death("c")}));
  EXPECT_FALSE(is_directed(g1));
}

TEST(Verify, ConstructedDescriptorsAreClean) {
  EXPECT_TRUE(verify_descriptor(pants_page()).empty());
  EXPECT_TRUE(verify_descriptor(minimal()).empty());
}

TEST(Serialize, RoundTrip) {
  const auto d = pants_page();
  const auto text = serialize_descriptor(d);
  EXPECT_EQ(text,
            "levels 3\n"
            "binding 3\n"
            "counts 3 2 1 0\n"
            "block 1 pants 2in1out\n"
            "block 1 annulus 1\n"
            "block 2 pants 2in1out\n"
            "block 3 disk inner\n"
            "torus 0.5 mu 1 0:0.0 1:0.0\n"
            "torus 0.5 mu 1 0:1.0 1:0.1\n"
            "torus 0.5 mu 1 0:2.0 1:1.0\n"
            "torus 1.5 mu 1 1:0.2 2:0.0\n"
            "torus 1.5 mu 1 1:1.1 2:0.1\n"
            "torus 2.5 mu 1 2:0.2 3:0.0\n");
  const auto back = parse_descriptor(text);
  EXPECT_EQ(serialize_descriptor(back), text);
  EXPECT_TRUE(verify_descriptor(back).empty());
}

TEST(Parse, DescriptorSyntaxErrors) {
  EXPECT_THROW(parse_descriptor("binding 1\n"), ParseError);
  EXPECT_THROW(parse_descriptor("levels 1\nblock 2 disk inner\n"), ParseError);
  EXPECT_THROW(parse_descriptor("levels 1\nblock 1 disk sideways\n"), ParseError);
  EXPECT_THROW(parse_descriptor("levels 1\ntorus 0 mu 1 0:0.0 1:0.0\n"), ParseError);
  EXPECT_THROW(parse_descriptor("levels 1\ntorus 0.5 mu 1 0:0 1:0.0\n"), ParseError);
  EXPECT_THROW(parse_descriptor(""), ParseError);
}

TEST(Parse, StructuralProblemsAreLeftToTheVerifier) {
  const auto d = parse_descriptor("levels 2\nbinding 1\ncounts 1 3 0\nblock 1 disk inner\nblock 2 disk inner\n");
  const auto vs = verify_descriptor(d);
  EXPECT_TRUE(has_violation(vs, ViolationKind::count_jump));
  EXPECT_TRUE(d.directions.empty());
}

// One mutation per violation class, applied to a valid directed descriptor.
struct Mutation {
  const char* name;
  ViolationKind expected;
  std::function<void(RoundFoldDescriptor&)> apply;
};

std::vector<Mutation> mutations() {
  return {
      {"count jump", ViolationKind::count_jump, [](RoundFoldDescriptor& d) { d.counts[0] += 2; }},
      {"missing singular block", ViolationKind::missing_singular_block,
       [](RoundFoldDescriptor& d) {
         auto& level = d.blocks[0];
         for (auto& b : level) {
           if (is_singular(b)) b = AnnulusBlock{1};
         }
       }},
      {"two singular blocks", ViolationKind::multiple_singular_blocks,
       [](RoundFoldDescriptor& d) { d.blocks[0].push_back(DiskBlock{Side::outer}); }},
      {"non-disk outermost level", ViolationKind::outermost_level,
       [](RoundFoldDescriptor& d) { d.blocks.back().front() = PantsBlock{PantsOrientation::two_in_one_out, false}; }},
      {"twisted pants in directed map", ViolationKind::twisted_pants_in_directed,
       [](RoundFoldDescriptor& d) {
         for (auto& level : d.blocks) {
           for (auto& b : level) {
             if (auto* p = std::get_if<PantsBlock>(&b)) {
               p->twisted = true;
               return;
             }
           }
         }
       }},
      {"interface multiplicity mismatch", ViolationKind::multiplicity_mismatch,
       [](RoundFoldDescriptor& d) { d.tori.front().multiplicity += 1; }},
  };
}

TEST(Verify, EachMutationClassIsNamed) {
  for (const auto& m : mutations()) {
    auto d = pants_page();
    m.apply(d);
    const auto vs = verify_descriptor(d);
    EXPECT_TRUE(has_violation(vs, m.expected)) << m.name;
  }
}

TEST(Verify, MutationsOfConstructedMapsAreAllDetected) {
  testing::Rng rng(3);
  int applied = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_tree(rng, 30);
    const auto base = construct_directed(g, label_tree(g));
    bool has_pants = false;
    for (const auto& level : base.blocks) {
      for (const auto& b : level) has_pants = has_pants || std::holds_alternative<PantsBlock>(b);
    }
    for (const auto& m : mutations()) {
      if (m.expected == ViolationKind::twisted_pants_in_directed && !has_pants) continue;
      auto d = base;
      m.apply(d);
      ++applied;
      EXPECT_TRUE(has_violation(verify_descriptor(d), m.expected)) << m.name << "\n" << serialize_descriptor(base);
    }
  }
  EXPECT_GT(applied, 500);
}

TEST(Verify, TwistedMessageText) {
  auto d = pants_page();
  std::get<PantsBlock>(d.blocks[1][0]).twisted = true;
  bool found = false;
  for (const auto& v : verify_descriptor(d)) {
    if (v.kind == ViolationKind::twisted_pants_in_directed) {
      EXPECT_EQ(v.message, "level 2: twisted pants block in a directed map");
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Verify, OtherViolations) {
  auto d = pants_page();
  d.tori.pop_back();
  EXPECT_TRUE(has_violation(verify_descriptor(d), ViolationKind::port_matching));
  EXPECT_TRUE(has_violation(verify_descriptor(d), ViolationKind::region_count_mismatch));

  d = pants_page();
  d.binding[0] = 2;
  EXPECT_TRUE(has_violation(verify_descriptor(d), ViolationKind::binding_multiplicity));

  d = pants_page();
  d.directions[0] = Direction::outward;
  EXPECT_TRUE(has_violation(verify_descriptor(d), ViolationKind::stale_directions));

  d = pants_page();
  d.counts.pop_back();
  EXPECT_TRUE(has_violation(verify_descriptor(d), ViolationKind::malformed));
}

TEST(Verify, DisconnectedBlockGraph) {
  RoundFoldDescriptor e;
  e.levels = 1;
  e.blocks = {{DiskBlock{Side::inner}}};
  e.binding = {1, 1};
  e.counts = {1, 0};
  e.tori = {{0, 1, {0, 0, 0}, {1, 0, 0}}};
  EXPECT_TRUE(has_violation(verify_descriptor(e), ViolationKind::disconnected));
}

TEST(Extract, DiskPageGivesSphere) {
  const auto g = extract_decomposition_graph(minimal());
  EXPECT_EQ(serialize_graph(g), "piece 0 solidtorus\npiece 1 solidtorus\nglue 0.0 1.0 0 1 1 0\n");
  EXPECT_TRUE(first_homology(g).is_trivial());
}

TEST(Extract, TwistedBlocksAreNotRepresentable) {
  MorsePage m = make_page(1, {MorseEvent::split("0", "a", "b"), MorseEvent::merge("a", "b", "c"), MorseEvent::death("c")});
  m.monodromy[1] = {{"a", "b"}, {"b", "a"}};
  EXPECT_THROW(extract_decomposition_graph(descriptor_from_morse(m)), PreconditionError);
}

}  // namespace
}  // namespace rfm

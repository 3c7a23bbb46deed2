// Acceptance suite: one PASS/FAIL line per criterion.
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <rfm/rfm.hpp>

#include "support/generators.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"
#include "support/pages.hpp"

namespace {

using namespace rfm;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string read_sample(const std::string& name) { return testing::read_text(std::string(RFM_SAMPLES_DIR) + "/" + name); }

Outcome criterion_1() {
  Outcome o;
  const auto g1 = parse_morse(read_sample("g1.mf"));
  const auto d1 = descriptor_from_morse(g1);
  o.require(d1.levels == 3, "g1: t != 3");
  o.require(d1.counts == std::vector<int>{1, 2, 1, 0}, "g1: counts differ from (1,2,1,0)");
  o.require(compute_directions(d1) == std::vector<Direction>{Direction::outward, Direction::inward, Direction::inward},
            "g1: directions differ from (outward, inward, inward)");
  o.require(identify_trivial_monodromy(g1) == "#_2(S1xS2)", "g1: identify is not #_2(S1xS2)");

  const auto g2 = parse_morse(read_sample("g2.mf"));
  const auto d2 = descriptor_from_morse(g2);
  o.require(d2.counts == std::vector<int>{3, 2, 1, 0}, "g2: counts differ from (3,2,1,0)");
  o.require(is_directed(d2), "g2: not directed");
  o.require(identify_trivial_monodromy(g2) == "#_2(S1xS2)", "g2: identify is not #_2(S1xS2)");
  if (o.ok) o.detail = "g1 counts 1 2 1 0 outward inward inward, g2 counts 3 2 1 0 directed, both #_2(S1xS2)";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  o.require(identify_trivial_monodromy(parse_morse(read_sample("disk.mf"))) == "S3", "disk page is not S3");
  testing::Rng rng(2);
  int pages = 0;
  for (int chi = 1; chi >= -10; --chi) {
    for (int rep = 0; rep < 10; ++rep) {
      const int saddles = 1 - chi;
      const int pairs = testing::uniform(rng, 0, saddles / 2);
      const auto m = testing::connected_page(rng, saddles - 2 * pairs + 1, pairs);
      const int n = 1 - chi;
      o.require(page_euler_characteristic(m) == chi, "generated page has the wrong Euler characteristic");
      o.require(identify_trivial_monodromy(m) == (n == 0 ? std::string("S3") : "#_" + std::to_string(n) + "(S1xS2)"),
                "identify disagrees with n = 1 - chi at chi = " + std::to_string(chi));
      const auto h = first_homology(extract_decomposition_graph(descriptor_from_morse(m)));
      o.require(h.free_rank == static_cast<std::size_t>(n) && h.torsion.empty(),
                "H1 of the source is not Z^n at chi = " + std::to_string(chi));
      ++pages;
    }
  }
  if (o.ok) o.detail = "disk -> S3; " + std::to_string(pages) + " pages with chi in 1..-10, name and H1 agree";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  testing::Rng rng(3);
  const int trials = 250;
  for (int i = 0; i < trials && o.ok; ++i) {
    const auto g = testing::random_tree(rng, 50);
    const auto d = construct_directed(g, label_tree(g));
    int pants = 0;
    for (const auto& [id, kind] : g.pieces) pants += kind.type == PieceType::pants;
    o.require(verify_descriptor(d).empty(), "verifier violations on tree " + std::to_string(i));
    o.require(is_directed(d), "not directed on tree " + std::to_string(i));
    o.require(d.counts.front() == d.levels && d.levels == pants + 1, "n_0 = t = #pants + 1 fails on tree " + std::to_string(i));
    o.require(testing::tree_canonical_form(smooth_buffers(extract_decomposition_graph(d))) ==
                  testing::tree_canonical_form(smooth_buffers(g)),
              "extracted graph not isomorphic on tree " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(trials) + " random trees, all contracts hold";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  using Mutate = std::function<void(RoundFoldDescriptor&)>;
  const std::vector<std::pair<ViolationKind, Mutate>> classes = {
      {ViolationKind::count_jump, [](RoundFoldDescriptor& d) { d.counts[0] += 2; }},
      {ViolationKind::missing_singular_block,
       [](RoundFoldDescriptor& d) {
         for (auto& b : d.blocks[0]) {
           if (is_singular(b)) b = AnnulusBlock{1};
         }
       }},
      {ViolationKind::multiple_singular_blocks, [](RoundFoldDescriptor& d) { d.blocks[0].push_back(DiskBlock{Side::outer}); }},
      {ViolationKind::outermost_level,
       [](RoundFoldDescriptor& d) { d.blocks.back().front() = PantsBlock{PantsOrientation::two_in_one_out, false}; }},
      {ViolationKind::twisted_pants_in_directed,
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
      {ViolationKind::multiplicity_mismatch, [](RoundFoldDescriptor& d) { d.tori.front().multiplicity += 1; }},
  };
  std::vector<RoundFoldDescriptor> bases{descriptor_from_morse(parse_morse(read_sample("g2.mf")))};
  testing::Rng rng(4);
  while (bases.size() < 50) {
    const auto g = testing::random_tree(rng, 30);
    bool has_pants = false;
    for (const auto& [id, kind] : g.pieces) has_pants = has_pants || kind.type == PieceType::pants;
    if (has_pants) bases.push_back(construct_directed(g, label_tree(g)));
  }
  int detected = 0, applied = 0;
  for (const auto& base : bases) {
    for (const auto& [kind, mutate] : classes) {
      auto d = base;
      mutate(d);
      ++applied;
      if (has_violation(verify_descriptor(d), kind)) {
        ++detected;
      } else {
        o.require(false, "undetected " + to_string(kind));
      }
    }
  }
  if (o.ok) o.detail = std::to_string(detected) + "/" + std::to_string(applied) + " mutations named correctly across 6 classes";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  testing::Rng rng(5);
  const int trials = 250;
  for (int i = 0; i < trials; ++i) {
    const auto g = testing::random_tree(rng, 50);
    o.require(testing::brute_labeling_ok(g, label_tree(g).labels), "labeling conditions fail on tree " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(trials) + " random trees pass the brute-force checker";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  o.require(first_homology(parse_graph(read_sample("s3.gm"))).is_trivial(), "S3 graph: H1 not trivial");
  o.require(to_string(first_homology(parse_graph(read_sample("lens5.gm")))) == "Z/5", "lens fixture: H1 != Z/5");
  const auto tb = first_homology(parse_graph(read_sample("torus_bundle.gm")));
  o.require(tb.free_rank == 1 && tb.torsion.empty(), "torus bundle: H1 != Z");
  testing::Rng rng(6);
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const auto g = testing::random_graph(rng, 10);
    const auto h = first_homology(g);
    const auto b = graph_betti(g);
    o.require(h.free_rank >= b, "rank H1 < Betti on random graph " + std::to_string(i));
    o.require(h.free_rank != 0 || b == 0, "free rank 0 on a non-tree, graph " + std::to_string(i));
  }
  if (o.ok) o.detail = "S3 -> 0, L(5,2) -> Z/5, trace-3 bundle -> Z; " + std::to_string(trials) + " random graphs satisfy rank >= Betti";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  testing::Rng rng(7);
  const int trials = 600;
  for (int i = 0; i < trials; ++i) {
    IntMatrix a(static_cast<std::size_t>(testing::uniform(rng, 1, 8)), static_cast<std::size_t>(testing::uniform(rng, 1, 8)));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = testing::uniform(rng, -9, 9);
    }
    const auto s = smith_normal_form(a);
    o.require(s.left * a * s.right == s.diagonal, "U A V != D on matrix " + std::to_string(i));
    o.require(abs(determinant(s.left)) == 1 && abs(determinant(s.right)) == 1, "transform not unimodular on matrix " + std::to_string(i));
    const auto f = s.invariant_factors();
    for (std::size_t k = 0; k + 1 < f.size(); ++k) o.require(f[k + 1] % f[k] == 0, "divisibility chain broken on matrix " + std::to_string(i));
    testing::Dense dense(a.rows(), std::vector<testing::Int>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) dense[r][c] = a(r, c);
    }
    o.require(f == testing::oracle_invariant_factors(dense), "disagrees with the reduction oracle on matrix " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(trials) + " random matrices up to 8x8 agree with the oracle";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  for (const char* name : {"s3.gm", "lens5.gm", "seifert_star.gm", "path_tree.gm", "bundle4.gm"}) {
    const auto dec = admits_directed(parse_graph(read_sample(name)));
    const bool has_witness = dec.verdict == Verdict::yes && dec.witness && dec.witness_graph;
    o.require(has_witness, std::string(name) + ": not YES with a witness");
    if (!has_witness) continue;
    o.require(testing::brute_labeling_ok(*dec.witness_graph, dec.witness->labels), std::string(name) + ": witness labeling fails");
    const auto d = construct_directed(*dec.witness_graph, *dec.witness);
    o.require(verify_descriptor(d).empty() && is_directed(d), std::string(name) + ": witness does not build a directed map");
  }
  const auto tb = admits_directed(parse_graph(read_sample("torus_bundle.gm")));
  o.require(tb.verdict == Verdict::no && tb.reason.rfind("torus-bundle trace", 0) == 0, "trace-3 torus bundle is not NO");
  const auto tbi = admits_directed(TorusBundleInput{{2, 1, 1, 1}});
  o.require(tbi.verdict == Verdict::no, "trace-3 torus bundle input is not NO");
  const auto t3 = admits_directed(parse_graph(read_sample("t3.gm")));
  o.require(t3.verdict == Verdict::no && t3.reason.rfind("known product family", 0) == 0, "Sigma_1 x S1 is not NO");
  const auto theta = admits_directed(parse_graph(read_sample("theta.gm")));
  o.require(theta.verdict == Verdict::unknown && theta.reason.find("graph Betti number 2") != std::string::npos,
            "theta graph is not UNKNOWN with a Betti report");
  if (o.ok) o.detail = "5 tree fixtures YES with witnesses, trace-3 NO, T3 NO, theta UNKNOWN";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const auto cases = testing::load_golden_cases(RFM_GOLDEN_DIR);
  o.require(!cases.empty(), "no golden cases");
  for (const auto& c : cases) {
    const auto expected = testing::read_text(std::string(RFM_GOLDEN_DIR) + "/" + c.name + ".golden");
    for (int run = 0; run < 3; ++run) {
      o.require(testing::run_golden_case(c, RFM_SAMPLES_DIR) == expected, c.name + ": run " + std::to_string(run + 1) + " differs");
    }
  }
  if (o.ok) o.detail = std::to_string(cases.size()) + " golden cases byte-identical over 3 runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"directions and identification of the two genus examples", criterion_1},
      {"disk page and the n = 1 - chi law", criterion_2},
      {"directed constructor contract on random trees", criterion_3},
      {"verifier negative suite", criterion_4},
      {"labeling properties on random trees", criterion_5},
      {"first homology", criterion_6},
      {"Smith normal form", criterion_7},
      {"admits-directed verdicts", criterion_8},
      {"CLI determinism", criterion_9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail << ")\n";
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

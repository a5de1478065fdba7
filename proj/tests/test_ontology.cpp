#include "doctest.h"
#include "semrec/common.hpp"
#include "semrec/ontology.hpp"
#include "support.hpp"

using namespace semrec;
using testsupport::make_corpus;
using testsupport::TempDir;
using testsupport::write_text;

namespace {

Lexicon mini(const std::string& body) {
  TempDir tmp;
  write_text(tmp.file("lex.tsv"), body);
  return Lexicon::load(tmp.file("lex.tsv"), "mini-tsv");
}

Vocabulary vocab_with(
    const std::vector<std::tuple<std::string, std::uint64_t>>& terms) {
  Vocabulary vocab;
  vocab.n_discussions = 10;
  std::uint32_t id = 0;
  for (const auto& [stem, freq] : terms)
    vocab.terms[stem] = TermInfo{id++, freq, 1};
  return vocab;
}

}  // namespace

TEST_CASE("top_keywords ranks by centroid weight with lexicographic ties") {
  std::map<std::string, double> row1{{"a", 5.0}, {"b", 1.0}};
  CHECK(top_keywords({&row1}, 1) == std::vector<std::string>{"a"});

  std::map<std::string, double> tie{{"a", 2.0}, {"b", 2.0}};
  CHECK(top_keywords({&tie}, 1) == std::vector<std::string>{"a"});

  std::map<std::string, double> small{{"x", 1.0}};
  CHECK(top_keywords({&small}, 3) == std::vector<std::string>{"x"});

  CHECK_THROWS_AS(top_keywords({}, 3), data_error);
}

TEST_CASE("dedupe_levels removes a childless shallow duplicate's deep copy") {
  // "sport" at level 1 with children, duplicated childless at level 2
  ConceptTree tree;
  tree.nodes.push_back({"sport", 1, -1});     // 0
  tree.nodes.push_back({"music", 1, -1});     // 1
  tree.nodes.push_back({"football", 2, 0});   // 2
  tree.nodes.push_back({"sport", 2, 1});      // 3, childless duplicate
  ConceptTree out = dedupe_levels(tree);
  int count = 0;
  for (const auto& n : out.nodes)
    if (n.label == "sport") {
      ++count;
      CHECK(n.level == 1);
    }
  CHECK(count == 1);
  CHECK(out.find("football") >= 0);
}

TEST_CASE("dedupe_levels keeps the deeper copy when the shallow one is childless") {
  ConceptTree tree;
  tree.nodes.push_back({"top", 1, -1});    // 0
  tree.nodes.push_back({"word", 1, -1});   // 1, childless duplicate at level 1
  tree.nodes.push_back({"word", 2, 0});    // 2
  ConceptTree out = dedupe_levels(tree);
  const int idx = out.find("word");
  REQUIRE(idx >= 0);
  CHECK(out.nodes[static_cast<std::size_t>(idx)].level == 2);
}

TEST_CASE("dedupe_levels leaves duplicate-free trees unchanged") {
  ConceptTree tree;
  tree.nodes.push_back({"a", 1, -1});
  tree.nodes.push_back({"b", 2, 0});
  tree.nodes.push_back({"c", 3, 1});
  ConceptTree out = dedupe_levels(tree);
  REQUIRE(out.nodes.size() == 3);
  CHECK(out.nodes[0].label == "a");
  CHECK(out.nodes[2].parent == 1);
}

TEST_CASE("dedupe_levels collapses an all-duplicate ancestry chain to one node") {
  ConceptTree tree;
  tree.nodes.push_back({"x", 1, -1});
  tree.nodes.push_back({"x", 2, 0});
  tree.nodes.push_back({"x", 3, 1});
  ConceptTree out = dedupe_levels(tree);
  REQUIRE(out.nodes.size() == 1);
  CHECK(out.nodes[0].label == "x");
}

TEST_CASE("dedupe_levels merges same-level duplicates and re-parents children") {
  ConceptTree tree;
  tree.nodes.push_back({"alpha", 1, -1});  // 0
  tree.nodes.push_back({"beta", 1, -1});   // 1
  tree.nodes.push_back({"kid", 2, 0});     // 2  under alpha
  tree.nodes.push_back({"kid", 2, 1});     // 3  duplicate under beta
  tree.nodes.push_back({"leaf", 3, 3});    // 4  child of the duplicate
  ConceptTree out = dedupe_levels(tree);
  int kid_count = 0, kid_index = -1;
  for (std::size_t i = 0; i < out.nodes.size(); ++i)
    if (out.nodes[i].label == "kid") {
      ++kid_count;
      kid_index = static_cast<int>(i);
    }
  CHECK(kid_count == 1);
  const int leaf = out.find("leaf");
  REQUIRE(leaf >= 0);
  CHECK(out.nodes[static_cast<std::size_t>(leaf)].parent == kid_index);
  // survivor keeps the lexicographically smaller parent
  const int parent = out.nodes[static_cast<std::size_t>(kid_index)].parent;
  CHECK(out.nodes[static_cast<std::size_t>(parent)].label == "alpha");
}

TEST_CASE("relations_from_tree derives brothers fathers grandfathers") {
  ConceptTree tree;
  tree.nodes.push_back({"sport", 1, -1});     // 0
  tree.nodes.push_back({"football", 2, 0});   // 1
  tree.nodes.push_back({"basketball", 2, 0}); // 2
  tree.nodes.push_back({"striker", 3, 1});    // 3
  RelationMap rel = relations_from_tree(tree);

  CHECK(rel.at("football").fathers == std::set<std::string>{"sport"});
  CHECK(rel.at("football").brothers == std::set<std::string>{"basketball"});
  CHECK(rel.at("football").grandfathers.empty());
  CHECK(rel.at("striker").fathers == std::set<std::string>{"football"});
  CHECK(rel.at("striker").grandfathers == std::set<std::string>{"sport"});
  // top-level nodes with no relations are omitted
  CHECK(rel.count("sport") == 0);
}

TEST_CASE("relations never contain the term itself") {
  Corpus corpus = make_corpus({{"d1", "u1", "rock rock jazz"},
                               {"d2", "u2", "rock blues"},
                               {"d3", "u3", "polka"}});
  Vocabulary vocab = build_vocabulary(corpus, {}, 1.0);
  // a synset listing the term as its own synonym must not yield a self-brother
  Lexicon lex = mini("rock\tsyn\trock\nrock\tsyn\tjazz\n");
  Ontology ont = build_direct_ontology(vocab, lex, 0, true);
  REQUIRE(ont.relations.count("rock") == 1);
  CHECK(ont.relations.at("rock").brothers == std::set<std::string>{"jazz"});
  // a self-referential hypernym line is a cycle and rejected at load
  CHECK_THROWS_AS(mini("rock\thyper\trock\n"), data_error);
}

TEST_CASE("build_direct_ontology applies the frequency floor") {
  Vocabulary vocab =
      vocab_with({{"dog", 12}, {"canine", 12}, {"puppy", 3}});
  Lexicon lex = mini("dog\tsyn\tpuppy\ndog\thyper\tcanine\n");
  Ontology ont = build_direct_ontology(vocab, lex, 10, true);

  REQUIRE(ont.relations.count("dog") == 1);
  CHECK(ont.relations.at("dog").brothers.empty());  // puppy is below the floor
  CHECK(ont.relations.at("dog").fathers == std::set<std::string>{"canine"});
  CHECK(ont.tree.empty());
  CHECK(ont.kind == OntologyKind::DirectRelations);
}

TEST_CASE("build_direct_ontology with min_freq 0 keeps mutual brothers") {
  Vocabulary vocab = vocab_with({{"film", 5}, {"movi", 5}});
  Lexicon lex = mini("film\tsyn\tmovi\n");
  Ontology ont = build_direct_ontology(vocab, lex, 0, true);
  CHECK(ont.relations.at("film").brothers == std::set<std::string>{"movi"});
  CHECK(ont.relations.at("movi").brothers == std::set<std::string>{"film"});
}

TEST_CASE("build_direct_ontology on an empty lexicon is empty") {
  Vocabulary vocab = vocab_with({{"alpha", 20}});
  TempDir tmp;
  write_text(tmp.file("none.tsv"), "");
  Lexicon lex = Lexicon::load(tmp.file("none.tsv"), "mini-tsv");
  Ontology ont = build_direct_ontology(vocab, lex, 10, true);
  CHECK(ont.relations.empty());
}

TEST_CASE("build_direct_ontology out-of-vocabulary handling") {
  Vocabulary vocab = vocab_with({{"dog", 50}});
  Lexicon lex = mini("dog\thyper\tcanine\ncanine\thyper\tcarnivore\n");

  Ontology with_oov = build_direct_ontology(vocab, lex, 10, true);
  CHECK(with_oov.relations.at("dog").fathers == std::set<std::string>{"canine"});
  CHECK(with_oov.relations.at("dog").grandfathers ==
        std::set<std::string>{"carnivore"});

  Ontology without = build_direct_ontology(vocab, lex, 10, false);
  CHECK(without.relations.count("dog") == 0);
}

TEST_CASE("every in-vocabulary relation target meets min_freq") {
  Corpus corpus = load_corpus(testsupport::data_path("fixture/corpus.jsonl"));
  Vocabulary vocab =
      build_vocabulary(corpus, testsupport::default_filters(), 0.5);
  Lexicon lex = Lexicon::load(testsupport::data_path("fixture/lexicon.tsv"),
                              "mini-tsv");
  const std::uint64_t min_freq = 10;
  Ontology ont = build_direct_ontology(vocab, lex, min_freq, true);
  REQUIRE(!ont.relations.empty());
  for (const auto& [term, rel] : ont.relations) {
    for (const auto* set : {&rel.brothers, &rel.fathers, &rel.grandfathers}) {
      for (const std::string& related : *set) {
        const TermInfo* info = vocab.find(related);
        if (info) CHECK(info->corpus_frequency >= min_freq);
      }
    }
    for (const std::string& b : rel.brothers)
      CHECK(vocab.contains(b));  // brothers are always in-vocabulary
  }
}

TEST_CASE("build_cluster_ontology finds dominant topic stems") {
  // two unmistakable topics
  std::vector<std::array<std::string, 3>> posts;
  for (int i = 0; i < 4; ++i) {
    posts.push_back({"cook" + std::to_string(i), "u1",
                     "soup soup soup recipe recipe"});
    posts.push_back({"code" + std::to_string(i), "u2",
                     "compiler compiler compiler bug bug"});
  }
  Corpus corpus = make_corpus(posts);
  Vocabulary vocab = build_vocabulary(corpus, {}, 1.0);
  std::vector<Profile> items;
  for (const auto& [id, d] : corpus.discussions)
    items.push_back(build_item_profile(d, vocab, {}));
  IdfTable idf = IdfTable::build(items);
  Lexicon lex = mini("soup\thyper\tfood\n");

  ClusterOntologyParams params{2, 2, 1, 99};
  Ontology ont = build_cluster_ontology(items, idf, lex, params,
                                        Enrichment::Hypernym, {});
  CHECK(ont.kind == OntologyKind::ClusterHypernym);
  std::set<std::string> level1;
  for (const auto& n : ont.tree.nodes)
    if (n.level == 1) level1.insert(n.label);
  CHECK(level1.count("soup") == 1);
  CHECK(level1.count("compil") == 1);

  // derived relations equal a brute-force recomputation from the tree
  CHECK(ont.relations == relations_from_tree(ont.tree));

  // parent levels are consistent
  for (const auto& n : ont.tree.nodes) {
    if (n.parent >= 0)
      CHECK(ont.tree.nodes[static_cast<std::size_t>(n.parent)].level ==
            n.level - 1);
    CHECK(n.level >= 1);
    CHECK(n.level <= 3);
  }
}

TEST_CASE("build_cluster_ontology with an empty lexicon has no level 3") {
  Corpus corpus = make_corpus({{"d1", "u1", "alpha alpha beta"},
                               {"d2", "u2", "gamma gamma delta"},
                               {"d3", "u3", "alpha beta beta"},
                               {"d4", "u4", "gamma delta delta"}});
  Vocabulary vocab = build_vocabulary(corpus, {}, 1.0);
  std::vector<Profile> items;
  for (const auto& [id, d] : corpus.discussions)
    items.push_back(build_item_profile(d, vocab, {}));
  IdfTable idf = IdfTable::build(items);
  TempDir tmp;
  write_text(tmp.file("none.tsv"), "");
  Lexicon lex = Lexicon::load(tmp.file("none.tsv"), "mini-tsv");

  Ontology ont = build_cluster_ontology(items, idf, lex,
                                        ClusterOntologyParams{2, 2, 2, 5},
                                        Enrichment::GlossNoun, {});
  for (const auto& n : ont.tree.nodes) CHECK(n.level != 3);
  CHECK(ont.relations == relations_from_tree(ont.tree));
}

TEST_CASE("fixture ontology reproduces the committed golden file") {
  Corpus corpus = load_corpus(testsupport::data_path("fixture/corpus.jsonl"));
  Vocabulary vocab =
      build_vocabulary(corpus, testsupport::default_filters(), 0.5);
  std::vector<Profile> items;
  for (const auto& [id, d] : corpus.discussions) {
    try {
      items.push_back(build_item_profile(d, vocab, testsupport::default_filters()));
    } catch (const data_error&) {
    }
  }
  IdfTable idf = IdfTable::build(items);
  Lexicon lex = Lexicon::load(testsupport::data_path("fixture/lexicon.tsv"),
                              "mini-tsv");
  Ontology ont = build_cluster_ontology(items, idf, lex,
                                        ClusterOntologyParams{6, 3, 2, 7},
                                        Enrichment::Hypernym,
                                        testsupport::default_filters().stopwords);
  CHECK(ont.to_json() ==
        read_file(testsupport::data_path("golden/ontology1.json")));
  // the planted synonym stems hang under their topic markers
  CHECK(ont.relations.at("flick").fathers == std::set<std::string>{"movi"});
  CHECK(ont.relations.at("tune").fathers == std::set<std::string>{"song"});
  CHECK(ont.relations.at("soccer").fathers == std::set<std::string>{"footbal"});
}

TEST_CASE("ontology serialization is deterministic and round-trips") {
  Corpus corpus = load_corpus(testsupport::data_path("fixture/corpus.jsonl"));
  Vocabulary vocab =
      build_vocabulary(corpus, testsupport::default_filters(), 0.5);
  std::vector<Profile> items;
  for (const auto& [id, d] : corpus.discussions) {
    try {
      items.push_back(build_item_profile(d, vocab, testsupport::default_filters()));
    } catch (const data_error&) {
    }
  }
  IdfTable idf = IdfTable::build(items);
  Lexicon lex = Lexicon::load(testsupport::data_path("fixture/lexicon.tsv"),
                              "mini-tsv");
  ClusterOntologyParams params{6, 3, 2, 7};

  Ontology a = build_cluster_ontology(items, idf, lex, params,
                                      Enrichment::Hypernym,
                                      testsupport::default_filters().stopwords);
  Ontology b = build_cluster_ontology(items, idf, lex, params,
                                      Enrichment::Hypernym,
                                      testsupport::default_filters().stopwords);
  CHECK(a.to_json() == b.to_json());

  Ontology loaded = Ontology::from_json(a.to_json());
  CHECK(loaded.to_json() == a.to_json());
  CHECK(loaded.relations == a.relations);
}

TEST_CASE("scan_cluster_counts reports separation without choosing a k") {
  // two crisp direction bundles: k=2 separates them almost orthogonally,
  // larger k splits bundles and drags the mean inter-centroid distance down
  std::vector<std::vector<double>> coords = {
      {1.0, 0.01}, {0.99, 0.02}, {0.98, 0.03},
      {0.02, 1.0}, {0.01, 0.99}, {0.03, 0.97},
  };
  auto rows = scan_cluster_counts(coords, 1, 4, 3);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].k == 1);
  CHECK(rows[0].mean_intercentroid_distance == 0.0);
  CHECK(rows[1].k == 2);
  CHECK(rows[1].mean_intercentroid_distance > 0.9);
  CHECK(rows[2].mean_intercentroid_distance <
        rows[1].mean_intercentroid_distance);
  // ks beyond the distinct-row count are skipped
  CHECK(scan_cluster_counts(coords, 5, 9, 3).size() == 2);
  CHECK_THROWS_AS(scan_cluster_counts(coords, 3, 2, 3), config_error);
}

TEST_CASE("ontology json loader validates relations against the tree") {
  Ontology ont;
  ont.kind = OntologyKind::ClusterHypernym;
  ont.tree.nodes.push_back({"sport", 1, -1});
  ont.tree.nodes.push_back({"football", 2, 0});
  ont.relations = relations_from_tree(ont.tree);
  std::string good = ont.to_json();
  CHECK(Ontology::from_json(good).relations == ont.relations);

  // tamper with the relations block
  std::string bad = good;
  auto pos = bad.find("\"fathers\": [");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 12, "\"fathers\": [\"music\",");
  CHECK_THROWS_AS(Ontology::from_json(bad), data_error);
}

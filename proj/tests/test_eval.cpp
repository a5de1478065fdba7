#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "semrec/common.hpp"
#include "semrec/eval.hpp"
#include "support.hpp"

using namespace semrec;
using testsupport::make_corpus;

namespace {

RecommendationList fixed_list(const std::vector<std::string>& ids) {
  RecommendationList list;
  list.user_id = "u";
  double score = 1.0;
  for (const std::string& id : ids) {
    list.ranked.push_back({id, score});
    score -= 0.01;
  }
  return list;
}

}  // namespace

TEST_CASE("relevant_items are the user's discussions") {
  Corpus corpus = make_corpus({{"d1", "u1", "x"},
                               {"d3", "u1", "y"},
                               {"d2", "u2", "z"}});
  CHECK(relevant_items("u1", corpus) == std::set<std::string>{"d1", "d3"});
  CHECK(relevant_items("ghost", corpus).empty());
}

TEST_CASE("precision recall f1 worked example") {
  RecommendationList recs = fixed_list({"d1", "d2", "d3", "d9"});
  MetricRow row = precision_recall_f1(recs, {"d2", "d4"}, 3);
  CHECK(row.precision == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(row.recall == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(row.f1 == 0.4);  // exact: 2*1/(3+2)
}

TEST_CASE("perfect top-N gives all ones") {
  RecommendationList recs = fixed_list({"d1", "d2", "d3"});
  MetricRow row = precision_recall_f1(recs, {"d1", "d2"}, 2);
  CHECK(row.precision == 1.0);
  CHECK(row.recall == 1.0);
  CHECK(row.f1 == 1.0);
}

TEST_CASE("no overlap gives all zeros") {
  RecommendationList recs = fixed_list({"d1", "d2"});
  MetricRow row = precision_recall_f1(recs, {"d9"}, 2);
  CHECK(row.precision == 0.0);
  CHECK(row.recall == 0.0);
  CHECK(row.f1 == 0.0);
}

TEST_CASE("empty relevant set pins recall to zero") {
  RecommendationList recs = fixed_list({"d1"});
  MetricRow row = precision_recall_f1(recs, {}, 1);
  CHECK(row.recall == 0.0);
  CHECK(row.f1 == 0.0);
}

TEST_CASE("N out of range is rejected") {
  RecommendationList recs = fixed_list({"d1", "d2"});
  CHECK_THROWS_AS(precision_recall_f1(recs, {"d1"}, 0), config_error);
  CHECK_THROWS_AS(precision_recall_f1(recs, {"d1"}, 3), config_error);
}

TEST_CASE("sampled N values are unique, in range, and reproducible") {
  auto a = sample_topn_values(35, 100, 42);
  auto b = sample_topn_values(35, 100, 42);
  CHECK(a == b);
  CHECK(a.size() == 35);
  std::set<std::size_t> uniq(a.begin(), a.end());
  CHECK(uniq.size() == a.size());
  for (std::size_t n : a) {
    CHECK(n >= 1);
    CHECK(n <= 100);
  }
  auto c = sample_topn_values(35, 100, 43);
  CHECK(a != c);
}

TEST_CASE("oversampling degenerates to the full sweep") {
  auto all = sample_topn_values(10, 10, 1);
  REQUIRE(all.size() == 10);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i + 1);
  CHECK(sample_topn_values(50, 10, 1) == all);
}

TEST_CASE("run_experiment matches a closed-form oracle ranking") {
  // one qualifying user; the recommender returns d1..d8 in order and exactly
  // d1..d3 are relevant, so hits(N) = min(N, 3)
  std::vector<std::array<std::string, 3>> posts;
  for (int i = 1; i <= 3; ++i)
    for (int p = 0; p < 4; ++p)
      posts.push_back({"d" + std::to_string(i), "u1", "text"});
  posts.push_back({"d4", "other", "x"});
  Corpus corpus = make_corpus(posts);

  const std::vector<std::string> order = {"d1", "d2", "d3", "d4",
                                          "d5", "d6", "d7", "d8"};
  ExperimentConfig config;
  config.experiment_id = "oracle";
  config.min_user_posts = 10;
  config.n_samples = 5;
  config.rng_seed = 77;
  ExperimentResult result = run_experiment(
      config, corpus, 8, [&](const std::string&) { return fixed_list(order); });

  REQUIRE(result.users == std::vector<std::string>{"u1"});
  const auto sampled = sample_topn_values(5, 8, 77);
  REQUIRE(result.sampled_n == sampled);

  double expected_sum = 0.0;
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const double hits = std::min<std::size_t>(sampled[i], 3);
    const double f1 = 2.0 * hits / static_cast<double>(sampled[i] + 3);
    CHECK(result.rows[i].f1 == doctest::Approx(f1).epsilon(1e-12));
    expected_sum += f1;
  }
  CHECK(result.avg_f1 ==
        doctest::Approx(expected_sum / sampled.size()).epsilon(1e-12));
}

TEST_CASE("run_experiment filters users below the post floor") {
  std::vector<std::array<std::string, 3>> posts;
  for (int p = 0; p < 10; ++p) posts.push_back({"d1", "busy", "x"});
  posts.push_back({"d1", "quiet", "x"});
  Corpus corpus = make_corpus(posts);

  ExperimentConfig config;
  config.experiment_id = "floor";
  config.min_user_posts = 10;
  config.n_samples = 1;
  ExperimentResult result = run_experiment(
      config, corpus, 3, [&](const std::string&) {
        return fixed_list({"d1", "d2", "d3"});
      });
  CHECK(result.users == std::vector<std::string>{"busy"});

  config.min_user_posts = 100;
  CHECK_THROWS_WITH_AS(
      run_experiment(config, corpus, 3,
                     [&](const std::string&) { return fixed_list({"d1"}); }),
      doctest::Contains("no qualifying users"), data_error);
}

TEST_CASE("exclude_seen removes the user's own discussions from the list") {
  std::vector<std::array<std::string, 3>> posts;
  for (int p = 0; p < 10; ++p) posts.push_back({"d1", "u1", "x"});
  Corpus corpus = make_corpus(posts);

  ExperimentConfig config;
  config.experiment_id = "excl";
  config.min_user_posts = 10;
  config.n_samples = 2;
  config.exclude_seen = true;
  ExperimentResult result = run_experiment(
      config, corpus, 3, [&](const std::string&) {
        return fixed_list({"d1", "d2", "d3"});
      });
  // d1 is the only relevant item and it was removed before scoring
  for (const MetricRow& row : result.rows) CHECK(row.f1 == 0.0);
}

TEST_CASE("serial and threaded runs agree bit for bit") {
  std::vector<std::array<std::string, 3>> posts;
  for (int u = 0; u < 6; ++u)
    for (int p = 0; p < 12; ++p)
      posts.push_back({"d" + std::to_string(1 + (u + p) % 7),
                       "user" + std::to_string(u), "x"});
  Corpus corpus = make_corpus(posts);

  auto recommender = [&](const std::string& user) {
    std::vector<std::string> ids;
    for (int i = 1; i <= 7; ++i) ids.push_back("d" + std::to_string(i));
    // user-dependent rotation keeps the lists distinct
    std::rotate(ids.begin(), ids.begin() + (user.back() - '0') % 7, ids.end());
    return fixed_list(ids);
  };

  ExperimentConfig config;
  config.experiment_id = "threads";
  config.min_user_posts = 10;
  config.n_samples = 4;
  config.rng_seed = 5;
  ExperimentResult serial = run_experiment(config, corpus, 7, recommender);
  config.threads = 4;
  ExperimentResult threaded = run_experiment(config, corpus, 7, recommender);

  CHECK(serial.avg_f1 == threaded.avg_f1);
  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].precision == threaded.rows[i].precision);
    CHECK(serial.rows[i].recall == threaded.rows[i].recall);
    CHECK(serial.rows[i].f1 == threaded.rows[i].f1);
  }
  CHECK(metrics_to_tsv(serial.rows) == metrics_to_tsv(threaded.rows));
}

TEST_CASE("per-user mean equals the flat mean on a complete grid") {
  std::vector<std::array<std::string, 3>> posts;
  for (int u = 0; u < 3; ++u)
    for (int p = 0; p < 10; ++p)
      posts.push_back({"d" + std::to_string(1 + p % 4),
                       "user" + std::to_string(u), "x"});
  Corpus corpus = make_corpus(posts);
  auto recommender = [&](const std::string&) {
    return fixed_list({"d1", "d2", "d3", "d4"});
  };
  ExperimentConfig config;
  config.experiment_id = "agg";
  config.min_user_posts = 10;
  config.n_samples = 3;
  ExperimentResult flat = run_experiment(config, corpus, 4, recommender);
  config.per_user_mean = true;
  ExperimentResult nested = run_experiment(config, corpus, 4, recommender);
  CHECK(flat.avg_f1 == doctest::Approx(nested.avg_f1).epsilon(1e-15));
}

TEST_CASE("pipeline metrics equal metrics recomputed from the output file") {
  // qualifying users posting across seven discussions
  std::vector<std::array<std::string, 3>> posts;
  for (int u = 0; u < 4; ++u)
    for (int p = 0; p < 11; ++p)
      posts.push_back({"d" + std::to_string(1 + (u * 3 + p) % 7),
                       "user" + std::to_string(u), "x"});
  Corpus corpus = make_corpus(posts);

  auto recommender = [&](const std::string& user) {
    std::vector<std::string> ids;
    for (int i = 1; i <= 7; ++i) ids.push_back("d" + std::to_string(i));
    std::rotate(ids.begin(), ids.begin() + (user.back() - '0') % 7, ids.end());
    RecommendationList list = fixed_list(ids);
    list.user_id = user;
    return list;
  };

  ExperimentConfig config;
  config.experiment_id = "file-oracle";
  config.min_user_posts = 10;
  config.n_samples = 5;
  config.rng_seed = 21;
  ExperimentResult pipeline = run_experiment(config, corpus, 7, recommender);

  // write the recommendation lists the way the CLI does, parse them back,
  // and recompute every metric from the file alone
  std::vector<RecommendationList> lists;
  for (const std::string& user : pipeline.users) lists.push_back(recommender(user));
  const std::string tsv = recommendations_to_tsv(lists);

  std::map<std::string, std::vector<std::string>> parsed;
  {
    std::istringstream in(tsv);
    std::string line;
    while (std::getline(in, line)) {
      const auto fields = split(line, '\t');
      REQUIRE(fields.size() == 4);
      parsed[fields[0]].push_back(fields[2]);
    }
  }

  const auto sampled = sample_topn_values(5, 7, 21);
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    double f1_sum = 0.0, p_sum = 0.0, r_sum = 0.0;
    for (const std::string& user : pipeline.users) {
      const auto& order = parsed.at(user);
      const std::set<std::string> relevant = relevant_items(user, corpus);
      std::size_t hits = 0;
      for (std::size_t j = 0; j < sampled[i]; ++j)
        if (relevant.count(order[j])) ++hits;
      const double p = double(hits) / double(sampled[i]);
      const double r = relevant.empty() ? 0.0 : double(hits) / double(relevant.size());
      p_sum += p;
      r_sum += r;
      f1_sum += hits ? 2.0 * double(hits) / double(sampled[i] + relevant.size()) : 0.0;
    }
    const double n_users = double(pipeline.users.size());
    CHECK(pipeline.rows[i].precision == doctest::Approx(p_sum / n_users).epsilon(1e-15));
    CHECK(pipeline.rows[i].recall == doctest::Approx(r_sum / n_users).epsilon(1e-15));
    CHECK(pipeline.rows[i].f1 == doctest::Approx(f1_sum / n_users).epsilon(1e-15));
  }
}

TEST_CASE("summary rows sort by descending f1") {
  ExperimentResult a{"worst", 0.1, {}, {}, {}};
  ExperimentResult b{"best", 0.9, {}, {}, {}};
  ExperimentResult c{"middle", 0.5, {}, {}, {}};
  const std::string tsv = summary_to_tsv({a, b, c});
  CHECK(tsv ==
        "experiment\tavg_f1\n"
        "best\t0.900000000\n"
        "middle\t0.500000000\n"
        "worst\t0.100000000\n");
}

TEST_CASE("metrics tsv has the documented header") {
  MetricRow row{"exp", 3, 0.25, 0.5, 1.0 / 3.0};
  const std::string tsv = metrics_to_tsv({row});
  CHECK(tsv.rfind("experiment\tN\tprecision\trecall\tf1\n", 0) == 0);
  CHECK(tsv.find("exp\t3\t0.250000000\t0.500000000\t0.333333333\n") !=
        std::string::npos);
}

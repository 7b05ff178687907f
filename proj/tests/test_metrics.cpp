// Copyright (c) 2026 shobdosetu-forge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "shobdosetu/errors.hpp"
#include "shobdosetu/metrics.hpp"
#include "shobdosetu/rng.hpp"
#include "shobdosetu/rttm.hpp"

using namespace shobdosetu;

TEST_CASE("align_tokens fixtures") {
  SUBCASE("identical sequences") {
    metrics::TokenAlignment a = metrics::align_tokens({"x", "y"}, {"x", "y"});
    CHECK(a.substitutions == 0);
    CHECK(a.deletions == 0);
    CHECK(a.insertions == 0);
    CHECK(a.correct == 2);
    CHECK(a.ref_count == 2);
  }
  SUBCASE("one substitution, one deletion") {
    metrics::TokenAlignment a =
        metrics::align_tokens({"k1", "k2", "k3", "k4"}, {"k1", "kX", "k3"});
    CHECK(a.substitutions == 1);
    CHECK(a.deletions == 1);
    CHECK(a.insertions == 0);
    CHECK(a.total_errors() == 2);
  }
  SUBCASE("pure insertions") {
    metrics::TokenAlignment a = metrics::align_tokens({"a"}, {"a", "b", "c"});
    CHECK(a.insertions == 2);
    CHECK(a.substitutions == 0);
    CHECK(a.deletions == 0);
  }
  SUBCASE("invariant C + S + D = N") {
    Rng rng(55);
    for (int trial = 0; trial < 500; ++trial) {
      const auto ref = oracles::random_tokens(rng, 8, 4);
      const auto hyp = oracles::random_tokens(rng, 8, 4);
      metrics::TokenAlignment a = metrics::align_tokens(ref, hyp);
      CHECK(a.correct + a.substitutions + a.deletions == a.ref_count);
      CHECK(static_cast<std::size_t>(a.ops.size()) ==
            static_cast<std::size_t>(a.correct + a.substitutions + a.deletions +
                                     a.insertions));
    }
  }
}

TEST_CASE("align_tokens total errors equal the recursive oracle") {
  Rng rng(56);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto ref = oracles::random_tokens(rng, 8, 4);
    const auto hyp = oracles::random_tokens(rng, 8, 4);
    CHECK(metrics::align_tokens(ref, hyp).total_errors() ==
          oracles::edit_distance(ref, hyp));
  }
}

TEST_CASE("wer fixtures") {
  CHECK(metrics::wer("same words here", "same words here").wer_percent == 0.0);
  CHECK(metrics::wer("k1 k2 k3 k4", "k1 kX k3").wer_percent == doctest::Approx(50.0));
  CHECK(metrics::wer("a b c", "").wer_percent == doctest::Approx(100.0));
  CHECK(metrics::wer("", "").wer_percent == 0.0);

  SUBCASE("empty reference with non-empty hypothesis throws") {
    try {
      metrics::wer("", "something");
      FAIL("expected EmptyReference");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptyReference);
    }
  }
  SUBCASE("punctuation stripping is opt-in") {
    CHECK(metrics::wer("word.", "word").wer_percent == doctest::Approx(100.0));
    CHECK(metrics::wer("word.", "word", true).wer_percent == 0.0);
  }
}

TEST_CASE("wer is invariant under injective token renaming") {
  Rng rng(57);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ref = oracles::random_tokens(rng, 8, 4);
    const auto hyp = oracles::random_tokens(rng, 8, 4);
    auto rename = [](const std::vector<std::string>& v) {
      std::string joined, renamed;
      for (const auto& t : v) {
        joined += t + " ";
        renamed += "tok_" + t + "_x ";
      }
      return std::make_pair(joined, renamed);
    };
    const auto [ref_raw, ref_ren] = rename(ref);
    const auto [hyp_raw, hyp_ren] = rename(hyp);
    if (ref.empty() && !hyp.empty()) continue;
    const auto before = metrics::wer(ref_raw, hyp_raw);
    const auto after = metrics::wer(ref_ren, hyp_ren);
    CHECK(before.wer_percent == after.wer_percent);
    CHECK(before.alignment.substitutions == after.alignment.substitutions);
    CHECK(before.alignment.deletions == after.alignment.deletions);
    CHECK(before.alignment.insertions == after.alignment.insertions);
  }
}

TEST_CASE("corpus_wer pools errors over reference tokens") {
  SUBCASE("a single pair matches wer()") {
    const auto pooled = metrics::corpus_wer({{"k1 k2 k3 k4", "k1 kX k3"}});
    CHECK(pooled.wer_percent == doctest::Approx(50.0));
  }
  SUBCASE("(1 err / 10) + (3 err / 10) pools to 20%") {
    const auto pooled = metrics::corpus_wer({
        {"a b c d e f g h i j", "a b c d e f g h i X"},
        {"a b c d e f g h i j", "a b c d e f g X Y Z"},
    });
    CHECK(pooled.wer_percent == doctest::Approx(20.0));
  }
  SUBCASE("pooled differs from the mean of per-pair WERs in general") {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"a", "x"},            // 100% on 1 token
        {"a b c d", "a b c d"} // 0% on 4 tokens
    };
    const auto pooled = metrics::corpus_wer(pairs);
    CHECK(pooled.wer_percent == doctest::Approx(20.0));  // 1 / 5, not 50
  }
  SUBCASE("empty corpus throws") {
    try {
      metrics::corpus_wer({{"", ""}});
      FAIL("expected EmptyCorpus");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptyCorpus);
    }
  }
}

TEST_CASE("rttm parse/write") {
  SUBCASE("field mapping") {
    std::istringstream in("SPEAKER f1 1 0.000 2.500 <NA> <NA> A <NA> <NA>\n");
    auto anns = metrics::parse_rttm(in);
    REQUIRE(anns.size() == 1);
    CHECK(anns[0].uri == "f1");
    REQUIRE(anns[0].segments.size() == 1);
    CHECK(anns[0].segments[0].start_s == doctest::Approx(0.0));
    CHECK(anns[0].segments[0].end_s == doctest::Approx(2.5));
    CHECK(anns[0].segments[0].speaker == "A");
  }
  SUBCASE("write(parse(x)) == x for canonical input") {
    const std::string canonical =
        "SPEAKER f1 1 0.000 2.500 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER f1 1 3.250 1.750 <NA> <NA> B <NA> <NA>\n"
        "SPEAKER f2 1 0.500 4.000 <NA> <NA> A <NA> <NA>\n";
    std::istringstream in(canonical);
    std::ostringstream out;
    metrics::write_rttm(out, metrics::parse_rttm(in));
    CHECK(out.str() == canonical);
  }
  SUBCASE("wrong field count is malformed") {
    std::istringstream in("SPEAKER f1 1 0.000 2.500 <NA> <NA> A <NA>\n");
    CHECK_THROWS_AS(metrics::parse_rttm(in), Error);
  }
  SUBCASE("negative duration is malformed") {
    std::istringstream in("SPEAKER f1 1 0.000 -2.500 <NA> <NA> A <NA> <NA>\n");
    try {
      metrics::parse_rttm(in);
      FAIL("expected MalformedLine");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MalformedLine);
    }
  }
  SUBCASE("comments and other record types are skipped") {
    std::istringstream in(
        ";; generated\n"
        "NON-SPEECH f1 1 0.0 1.0 <NA> <NA> x <NA> <NA>\n"
        "SPEAKER f1 1 1.000 1.000 <NA> <NA> A <NA> <NA>\n");
    CHECK(metrics::parse_rttm(in).size() == 1);
  }
}

TEST_CASE("canonicalized merges same-speaker overlap and sorts") {
  metrics::Annotation ann;
  ann.uri = "u";
  ann.segments = {{5.0, 6.0, "B"}, {0.0, 2.0, "A"}, {1.5, 3.0, "A"}, {3.0, 4.0, "A"}};
  metrics::Annotation c = metrics::canonicalized(ann);
  REQUIRE(c.segments.size() == 2);
  CHECK(c.segments[0].speaker == "A");
  CHECK(c.segments[0].start_s == doctest::Approx(0.0));
  CHECK(c.segments[0].end_s == doctest::Approx(4.0));  // touching runs merge
  CHECK(c.segments[1].speaker == "B");
}

// Copyright 2026 The noisebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "json.hpp"
#include "noisebench/augment.h"
#include "noisebench/error.h"
#include "noisebench/manifest.h"
#include "noisebench/random.h"
#include "noisebench/wav.h"
#include "test_util.h"

namespace noisebench {
namespace {

using testing::sine;
using testing::TempDir;

// Mixture rebuilt in long double from the same noise draw; the oracle shares
// only the generator with the code under test.
struct MixOracle {
  std::vector<long double> out;
  long double gain;
  long double renorm;
  long double achieved_db;
  long double ratio_before;
  long double ratio_after;
};

MixOracle mix_oracle(const AudioBuffer& signal, double snr_db, std::uint64_t seed) {
  const AudioBuffer noise = white_noise(signal.size(), signal.sample_rate(), seed);
  const auto n = static_cast<long double>(signal.size());
  long double ps = 0, pn = 0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    ps += static_cast<long double>(signal[i]) * signal[i];
    pn += static_cast<long double>(noise[i]) * noise[i];
  }
  ps /= n;
  pn /= n;
  MixOracle o;
  o.gain = std::sqrt(ps / (pn * std::pow(10.0L, static_cast<long double>(snr_db) / 10.0L)));
  long double pm = 0, sc = 0, nc = 0;
  std::vector<long double> mix(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    mix[i] = signal[i] + o.gain * noise[i];
    pm += mix[i] * mix[i];
    sc += static_cast<long double>(signal[i]) * signal[i];
    nc += (o.gain * noise[i]) * (o.gain * noise[i]);
  }
  pm /= n;
  o.ratio_before = sc / nc;
  o.renorm = std::sqrt(ps / pm);
  long double sa = 0, na = 0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    mix[i] *= o.renorm;
    sa += (o.renorm * signal[i]) * (o.renorm * signal[i]);
    na += (o.renorm * o.gain * noise[i]) * (o.renorm * o.gain * noise[i]);
  }
  o.ratio_after = sa / na;
  o.achieved_db = 10.0L * std::log10(sa / na);
  o.out = std::move(mix);
  return o;
}

TEST(SnrGrid, DefaultHasEighteenLevels) {
  const auto levels = snr_levels(SnrGrid{});
  ASSERT_EQ(levels.size(), 18u);
  EXPECT_EQ(levels.front(), -6.0);
  EXPECT_EQ(levels.back(), 45.0);
  for (std::size_t i = 1; i < levels.size(); ++i) EXPECT_EQ(levels[i] - levels[i - 1], 3.0);
}

TEST(SnrGrid, EdgeCases) {
  EXPECT_EQ(snr_levels(SnrGrid{0, 0, 3}), std::vector<double>{0.0});
  EXPECT_EQ(snr_levels(SnrGrid{0, 24, 3}).size(), 9u);
  // Fractional steps reach hi despite binary rounding.
  EXPECT_EQ(snr_levels(SnrGrid{0, 1, 0.1}).size(), 11u);
  EXPECT_EQ(snr_levels(SnrGrid{0, 10, 4}), (std::vector<double>{0, 4, 8}));
  EXPECT_THROW(snr_levels(SnrGrid{5, 0, 1}), DomainError);
  EXPECT_THROW(snr_levels(SnrGrid{0, 5, 0}), DomainError);
  EXPECT_THROW(snr_levels(SnrGrid{0, 5, -1}), DomainError);
}

TEST(SnrGrid, ParseAndFormat) {
  EXPECT_EQ(parse_grid("-6:45:3"), SnrGrid{});
  EXPECT_EQ(parse_grid(" 0 : 24 : 1.5 "), (SnrGrid{0, 24, 1.5}));
  EXPECT_EQ(format_grid(SnrGrid{}), "-6:45:3");
  EXPECT_THROW(parse_grid("0:24"), Error);
  EXPECT_THROW(parse_grid("a:b:c"), Error);
  EXPECT_THROW(parse_grid("10:0:1"), Error);
}

TEST(SnrLevel, Formatting) {
  EXPECT_EQ(format_snr_level(-6.0), "-6");
  EXPECT_EQ(format_snr_level(45.0), "45");
  EXPECT_EQ(format_snr_level(0.0), "0");
  EXPECT_EQ(format_snr_level(-0.0), "0");
  EXPECT_EQ(format_snr_level(1.5), "1.5");
  EXPECT_EQ(augmented_stem("rec01", -6.0), "rec01__snr-6");
  EXPECT_EQ(augmented_stem("rec01", 45.0), "rec01__snr45");
}

TEST(WhiteNoise, DeterministicAndSeedSensitive) {
  EXPECT_EQ(white_noise(1000, 16000, 5), white_noise(1000, 16000, 5));
  EXPECT_NE(white_noise(1000, 16000, 5), white_noise(1000, 16000, 6));
  EXPECT_THROW(white_noise(0, 16000, 5), DomainError);
  // Odd lengths are a prefix of the next even length.
  const auto a = white_noise(7, 100, 3);
  const auto b = white_noise(8, 100, 3);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(WhiteNoise, LargeSampleMomentsMatchStandardNormal) {
  for (std::uint64_t seed : {0ull, 1ull, 0xDEADBEEFull}) {
    const AudioBuffer n = white_noise(1000000, 16000, seed);
    double sum = 0.0;
    for (double x : n.samples()) sum += x;
    EXPECT_NEAR(sum / 1e6, 0.0, 0.005);
    EXPECT_NEAR(power(n), 1.0, 0.01);
  }
}

TEST(NoiseGain, Examples) {
  EXPECT_NEAR(noise_gain_for_snr(0.5, 1.0, 0.0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(noise_gain_for_snr(1.0, 1.0, 10.0), 0.31622776601683794, 1e-15);
  EXPECT_THROW(noise_gain_for_snr(0.0, 1.0, 0.0), SilentSignalError);
  EXPECT_THROW(noise_gain_for_snr(1.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(noise_gain_for_snr(-1.0, 1.0, 0.0), DomainError);
}

TEST(NoiseGain, InversionRecoversSnrProperty) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> logp(-8.0, 2.0), snr(-20.0, 80.0);
  for (int i = 0; i < 1000; ++i) {
    const double ps = std::pow(10.0, logp(rng));
    const double pn = std::pow(10.0, logp(rng));
    const double target = snr(rng);
    const double g = noise_gain_for_snr(ps, pn, target);
    EXPECT_NEAR(10.0 * std::log10(ps / (g * g * pn)), target, 1e-9);
  }
}

TEST(InjectNoise, SineAtSixDbMatchesOracle) {
  const AudioBuffer s = sine(0.5, 440.0, 1.0, 16000);
  const auto mixed = inject_noise(s, 6.0, 1234);
  const MixOracle o = mix_oracle(s, 6.0, 1234);
  EXPECT_NEAR(mixed.metadata.achieved_snr_db, 6.0, 0.05);
  EXPECT_NEAR(mixed.metadata.achieved_snr_db, static_cast<double>(o.achieved_db), 1e-9);
  EXPECT_NEAR(mixed.metadata.noise_gain, static_cast<double>(o.gain), 1e-12 * static_cast<double>(o.gain));
  EXPECT_NEAR(mixed.metadata.renorm_gain, static_cast<double>(o.renorm), 1e-12);
  EXPECT_EQ(mixed.metadata.clip.clipped_sample_count, 0u);
  EXPECT_EQ(mixed.metadata.noise_seed, 1234u);
  EXPECT_EQ(mixed.metadata.target_snr_db, 6.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(mixed.audio[i], static_cast<double>(o.out[i]), 1e-12);
  }
  EXPECT_LE(std::fabs(rms(mixed.audio) - rms(s)) / rms(s), 1e-6);
}

TEST(InjectNoise, RenormalizationPreservesComponentRatio) {
  for (double snr : {-6.0, 0.0, 17.0, 45.0}) {
    const MixOracle o = mix_oracle(sine(0.3, 330.0, 0.5), snr, 77);
    EXPECT_NEAR(o.ratio_after / o.ratio_before, 1.0L, 1e-12L) << snr;
  }
}

TEST(InjectNoise, VanishingNoiseLimit) {
  const AudioBuffer s = sine(0.5, 440.0, 1.0);
  const auto mixed = inject_noise(s, 200.0, 9);
  EXPECT_EQ(mixed.metadata.clip.clipped_sample_count, 0u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(mixed.audio[i], s[i], 1e-6);
}

TEST(InjectNoise, ClippingAtMinusSixDb) {
  const AudioBuffer s = sine(0.9, 440.0, 1.0);
  const auto mixed = inject_noise(s, -6.0, 42, 1.0);
  // Scan oracle: rebuild the pre-clip mixture and count out-of-range samples.
  const MixOracle o = mix_oracle(s, -6.0, 42);
  std::size_t expected = 0;
  for (long double x : o.out) expected += std::fabs(static_cast<double>(x)) > 1.0;
  EXPECT_GT(mixed.metadata.clip.clipped_sample_count, 0u);
  EXPECT_EQ(mixed.metadata.clip.clipped_sample_count, expected);
  EXPECT_EQ(mixed.metadata.clip.total_sample_count, s.size());
  for (double x : mixed.audio.samples()) EXPECT_LE(std::fabs(x), 1.0);
}

TEST(InjectNoise, SilentSignalRejected) {
  EXPECT_THROW(inject_noise(AudioBuffer(std::vector<double>(100, 0.0), 8000), 6.0, 1), SilentSignalError);
  EXPECT_THROW(inject_noise(AudioBuffer({}, 8000), 6.0, 1), DomainError);
}

TEST(InjectNoise, SnrAndRmsPropertiesOverRandomSignals) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> snr(-6.0, 45.0), amp(0.001, 0.9), freq(50.0, 4000.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t len = 16 + rng() % 20000;
    std::vector<double> x(len);
    const double a = amp(rng), f = freq(rng);
    for (std::size_t i = 0; i < len; ++i) x[i] = a * std::sin(f * static_cast<double>(i) / 8000.0) + 0.01 * a;
    const AudioBuffer s(std::move(x), 8000);
    const double target = snr(rng);
    const auto mixed = inject_noise(s, target, rng());
    EXPECT_NEAR(mixed.metadata.achieved_snr_db, target, 0.05);
    if (mixed.metadata.clip.clipped_sample_count == 0) {
      EXPECT_LE(std::fabs(rms(mixed.audio) - rms(s)) / rms(s), 1e-6);
    }
  }
}

TEST(Cnr, ParseFormatAndProbability) {
  const auto p = [](std::string_view text) { return clean_probability(CnrPolicy{parse_cnr(text), 0, 24, 1}); };
  EXPECT_EQ(p("3"), 0.75);
  EXPECT_EQ(p("0"), 0.0);
  EXPECT_EQ(p("inf"), 1.0);
  EXPECT_EQ(p("infinity"), 1.0);
  EXPECT_EQ(p("1/3"), 0.25);
  EXPECT_EQ(p("1"), 0.5);
  EXPECT_THROW(parse_cnr("-1"), Error);
  EXPECT_TRUE(parse_cnr("1/0").is_infinite());
  EXPECT_THROW(parse_cnr("0/0"), Error);
  EXPECT_THROW(parse_cnr("x"), Error);
  EXPECT_EQ(format_cnr(parse_cnr("1/3")), "1/3");
  EXPECT_EQ(format_cnr(Cnr::infinity()), "inf");
}

TEST(Cnr, PolicyValidation) {
  EXPECT_THROW(clean_probability(CnrPolicy{Cnr{1, 1}, 10, 0, 1}), DomainError);
}

TEST(SampleDecision, ExtremesAndPurity) {
  const CnrPolicy clean_only{Cnr::infinity(), 0, 24, 5};
  const CnrPolicy noisy_only{Cnr{0, 1}, 0, 24, 5};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_decision(clean_only, i).kind, AugmentationDecision::Kind::kClean);
    EXPECT_FALSE(sample_decision(clean_only, i).snr_db.has_value());
    const auto d = sample_decision(noisy_only, i);
    ASSERT_EQ(d.kind, AugmentationDecision::Kind::kNoisy);
    ASSERT_TRUE(d.snr_db.has_value());
    EXPECT_GE(*d.snr_db, 0.0);
    EXPECT_LE(*d.snr_db, 24.0);
    EXPECT_EQ(sample_decision(noisy_only, i), d);
  }
}

TEST(SampleDecision, MonteCarloMatchesPolicy) {
  for (const auto& [text, p] : std::vector<std::pair<std::string, double>>{
           {"0", 0.0}, {"1/3", 0.25}, {"1", 0.5}, {"3", 0.75}, {"inf", 1.0}}) {
    const CnrPolicy policy{parse_cnr(text), 0, 24, 0xC0FFEE};
    const int n = 100000;
    int clean = 0, noisy = 0;
    double snr_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto d = sample_decision(policy, static_cast<std::uint64_t>(i));
      if (d.kind == AugmentationDecision::Kind::kClean) {
        ++clean;
      } else {
        ++noisy;
        snr_sum += *d.snr_db;
      }
    }
    const double frac = static_cast<double>(clean) / n;
    EXPECT_NEAR(frac, p, 0.005) << text;
    EXPECT_LE(std::fabs(frac - p), 4.0 * std::sqrt(p * (1 - p) / n) + 1e-12) << text;
    if (noisy > 0) EXPECT_NEAR(snr_sum / noisy, 12.0, 0.1) << text;
  }
}

TEST(DeriveNoiseSeed, MatchesIndependentFnv) {
  // Reference FNV-1a vector: "a" -> 0xaf63dc4c8601ec8c.
  EXPECT_EQ(Fnv1a64().bytes("a", 1).digest(), 0xaf63dc4c8601ec8cull);
  // Oracle: byte string master_seed (LE) | len(id) (LE u64) | id | len(level) | level.
  const auto oracle = [](std::uint64_t seed, const std::string& id, const std::string& level) {
    std::vector<unsigned char> bytes;
    const auto le = [&](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<unsigned char>(v >> (8 * i)));
    };
    le(seed);
    le(id.size());
    bytes.insert(bytes.end(), id.begin(), id.end());
    le(level.size());
    bytes.insert(bytes.end(), level.begin(), level.end());
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  };
  EXPECT_EQ(derive_noise_seed(7, "rec01", -6.0), oracle(7, "rec01", "-6"));
  EXPECT_EQ(derive_noise_seed(0, "", 45.0), oracle(0, "", "45"));
  EXPECT_NE(derive_noise_seed(7, "rec01", -6.0), derive_noise_seed(7, "rec01", -3.0));
  EXPECT_NE(derive_noise_seed(7, "rec01", -6.0), derive_noise_seed(8, "rec01", -6.0));
}

class AugmentCorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    write_wav(sine(0.5, 440.0, 0.25, 8000), dir_ / "a.wav");
    write_wav(sine(0.3, 220.0, 0.25, 8000), dir_ / "b.wav");
    manifest_.records = {{"a", dir_ / "a.wav", dir_ / "a.mid", Split::kTest},
                         {"b", dir_ / "b.wav", dir_ / "b.mid", Split::kTest}};
  }
  TempDir dir_;
  Manifest manifest_;
};

TEST_F(AugmentCorpusTest, WritesOneWavAndSidecarPerCell) {
  const auto report = augment_corpus(manifest_, SnrGrid{}, 3, dir_ / "out");
  EXPECT_EQ(report.files.size(), 36u);
  EXPECT_TRUE(report.errors.empty());
  std::size_t wavs = 0, jsons = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir_ / "out")) {
    wavs += e.path().extension() == ".wav";
    jsons += e.path().extension() == ".json";
  }
  EXPECT_EQ(wavs, 36u);
  EXPECT_EQ(jsons, 36u);
  ASSERT_TRUE(std::filesystem::exists(dir_ / "out" / "a__snr-6.wav"));
  ASSERT_TRUE(std::filesystem::exists(dir_ / "out" / "b__snr45.json"));

  const auto doc = nlohmann::json::parse(testing::read_text_file(dir_ / "out" / "a__snr-6.json"));
  for (const char* key : {"source_id", "target_snr_db", "achieved_snr_db", "noise_seed", "noise_gain", "renorm_gain",
                          "clipped_sample_count", "total_sample_count"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["source_id"], "a");
  EXPECT_EQ(doc["target_snr_db"], -6.0);
  EXPECT_EQ(doc["noise_seed"].get<std::uint64_t>(), derive_noise_seed(3, "a", -6.0));
  EXPECT_NEAR(doc["achieved_snr_db"].get<double>(), -6.0, 0.05);
}

TEST_F(AugmentCorpusTest, DeterministicAcrossRunsOrderAndWorkers) {
  const SnrGrid grid{0, 9, 3};
  augment_corpus(manifest_, grid, 3, dir_ / "one");
  Manifest reversed = manifest_;
  std::reverse(reversed.records.begin(), reversed.records.end());
  augment_corpus(reversed, grid, 3, dir_ / "two", AugmentOptions{WavEncoding::kFloat32, 1.0, 4});
  for (const auto& e : std::filesystem::directory_iterator(dir_ / "one")) {
    EXPECT_EQ(testing::read_text_file(e.path()),
              testing::read_text_file(dir_ / "two" / e.path().filename()))
        << e.path();
  }
  augment_corpus(manifest_, grid, 4, dir_ / "three");
  EXPECT_NE(testing::read_text_file(dir_ / "one" / "a__snr0.wav"),
            testing::read_text_file(dir_ / "three" / "a__snr0.wav"));
}

TEST_F(AugmentCorpusTest, UnreadableRecordIsReportedAndRunContinues) {
  manifest_.records.push_back({"c", dir_ / "missing.wav", dir_ / "c.mid", Split::kTest});
  write_wav(AudioBuffer(std::vector<double>(100, 0.0), 8000), dir_ / "silent.wav");
  manifest_.records.push_back({"d", dir_ / "silent.wav", dir_ / "d.mid", Split::kTest});
  const auto report = augment_corpus(manifest_, SnrGrid{0, 3, 3}, 1, dir_ / "out");
  EXPECT_EQ(report.files.size(), 4u);
  ASSERT_EQ(report.errors.size(), 2u);
  EXPECT_EQ(report.errors[0].id, "c");
  EXPECT_EQ(report.errors[1].id, "d");
}

TEST_F(AugmentCorpusTest, UnwritableOutputIsFatal) {
  testing::write_text_file(dir_ / "file", "x");
  EXPECT_THROW(augment_corpus(manifest_, SnrGrid{0, 3, 3}, 1, dir_ / "file" / "out"), IoError);
}

TEST_F(AugmentCorpusTest, CnrDrawsFollowThePolicy) {
  const CnrPolicy policy{parse_cnr("1"), 0, 24, 11};
  const auto report = augment_corpus_cnr(manifest_, policy, 5, dir_ / "cnr");
  ASSERT_EQ(report.files.size(), 10u);
  for (std::size_t i = 0; i < report.files.size(); ++i) {
    const auto& f = report.files[i];
    EXPECT_EQ(f.decision, sample_decision(policy, i));
    EXPECT_EQ(f.metadata.has_value(), f.decision.kind == AugmentationDecision::Kind::kNoisy);
    EXPECT_TRUE(std::filesystem::exists(f.wav_path));
    const auto doc = nlohmann::json::parse(testing::read_text_file(std::filesystem::path(f.wav_path).replace_extension(".json")));
    EXPECT_EQ(doc["draw_index"].get<std::size_t>(), i);
    if (f.metadata) EXPECT_NEAR(f.metadata->achieved_snr_db, *f.decision.snr_db, 0.05);
  }
}

}  // namespace
}  // namespace noisebench

// Copyright 2026 The RCLC Authors.
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

#include <cmath>
#include <random>

#include "bd_oracle.hpp"
#include "rclc/error.hpp"
#include "rclc/metrics.hpp"
#include "rclc/pipeline.hpp"
#include "rclc/synth.hpp"
#include "test_support.hpp"

using rclc::BoundingBox;
using rclc::ColorLayout;
using rclc::ErrorCode;
using rclc::Raster;
using rclc::RdCurve;
using rclc::RdPoint;
using rclc::testing::random_int;
using rclc::testing::random_raster;

namespace {

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const rclc::Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kIo;
}

RdCurve Scaled(const RdCurve& c, double factor) {
  RdCurve out = c;
  for (RdPoint& p : out.points) p.bitrate_kbps *= factor;
  return out;
}

const RdCurve kAnchor{{{100, 30}, {180, 33}, {350, 36.5}, {700, 39}}};

}  // namespace

TEST_CASE("psnr examples") {
  std::mt19937 rng(24);
  const Raster a = random_raster(rng, 16, 16, ColorLayout::kI420);
  CHECK(rclc::psnr(a, a) == rclc::kPsnrCap);
  Raster b(16, 16, ColorLayout::kI420);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) b.luma().at(x, y) = static_cast<std::uint8_t>((x + y) % 200 + 1);
  }
  Raster c = b;
  for (auto& v : c.luma().samples()) v = static_cast<std::uint8_t>(v - 1);
  CHECK(rclc::psnr(b, c) == doctest::Approx(20 * std::log10(255.0)).epsilon(1e-12));
  CHECK(rclc::psnr(b, c) == doctest::Approx(48.1308).epsilon(1e-5));

  Raster d = b;
  for (int y = 8; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) d.luma().at(x, y) = 0;
  }
  CHECK(rclc::psnr(b, d, BoundingBox{0, 0, 16, 8}) == rclc::kPsnrCap);
  CHECK(rclc::psnr(b, d) < 40);
  CHECK_THROWS_AS(rclc::psnr(b, Raster(16, 8, ColorLayout::kI420)), rclc::Error);
}

TEST_CASE("psnr symmetry and locality") {
  std::mt19937 rng(25);
  for (int i = 0; i < 100; ++i) {
    const Raster a = random_raster(rng, 12, 10, ColorLayout::kI420);
    Raster b = random_raster(rng, 12, 10, ColorLayout::kI420);
    const BoundingBox r{2, 2, 8, 6};
    CHECK(rclc::psnr(a, b, r) == rclc::psnr(b, a, r));
    const double before = rclc::psnr(a, b, r);
    b.luma().at(10, 8) ^= 0x55;  // outside r
    CHECK(rclc::psnr(a, b, r) == before);
    const double yuv = rclc::psnr(a, b, r, rclc::PsnrWeighting::kYuv611);
    CHECK(std::isfinite(yuv));
  }
}

TEST_CASE("yuv weighting") {
  Raster a(8, 8, ColorLayout::kI420, 100, 100);
  Raster b = a;
  for (auto& v : b.plane(1).samples()) v = 101;
  CHECK(rclc::psnr(a, b) == rclc::kPsnrCap);
  const double expect = (6 * 99.0 + 20 * std::log10(255.0) + 99.0) / 8;
  CHECK(rclc::psnr(a, b, std::nullopt, rclc::PsnrWeighting::kYuv611) == doctest::Approx(expect));
}

TEST_CASE("roi_psnr averages per frame") {
  auto ref = rclc::VideoSequence::make(8, 8, {30, 1}, ColorLayout::kLumaOnly);
  ref.frames = {Raster(8, 8, ColorLayout::kLumaOnly, 10), Raster(8, 8, ColorLayout::kLumaOnly, 10)};
  auto dist = ref;
  for (auto& v : dist.frames[1].luma().samples()) v = 11;
  const std::vector<BoundingBox> boxes(2, BoundingBox::full(8, 8));
  const auto q = rclc::roi_psnr(ref, dist, boxes);
  CHECK(q.per_frame[0] == 99.0);
  CHECK(q.mean == doctest::Approx((99.0 + 20 * std::log10(255.0)) / 2));
  CHECK(CodeOf([&] { rclc::roi_psnr(ref, dist, std::vector<BoundingBox>(1)); }) ==
        ErrorCode::kMismatchedLengths);
  auto shorter = ref;
  shorter.frames.pop_back();
  CHECK(CodeOf([&] { rclc::roi_psnr(shorter, dist, boxes); }) == ErrorCode::kMismatchedLengths);
}

TEST_CASE("bitrate") {
  CHECK(rclc::bitrate_kbps(30000, {30, 1}, 30) == doctest::Approx(30.0));
  CHECK(rclc::bitrate_kbps(1001, {30000, 1001}, 1) == doctest::Approx(30.0));
}

TEST_CASE("bd_rate examples") {
  CHECK(std::abs(rclc::bd_rate(kAnchor, kAnchor)) <= 1e-9);
  CHECK(rclc::bd_rate(kAnchor, Scaled(kAnchor, 0.9)) == doctest::Approx(-10.0).epsilon(1e-9));
  CHECK(std::abs(rclc::bd_rate(kAnchor, Scaled(kAnchor, 0.9)) + 10.0) <= 1e-6);
  RdCurve far{{{100, 50}, {200, 52}, {300, 54}, {400, 56}}};
  CHECK(CodeOf([&] { rclc::bd_rate(kAnchor, far); }) == ErrorCode::kNoOverlap);
  RdCurve single{{{100, 30}}};
  CHECK(CodeOf([&] { rclc::bd_rate(kAnchor, single); }) == ErrorCode::kDegenerateFit);
  RdCurve bent{{{100, 30}, {200, 29}, {300, 34}, {400, 38}}};
  CHECK(CodeOf([&] { rclc::bd_rate(kAnchor, bent); }) == ErrorCode::kDegenerateFit);
}

TEST_CASE("bd_rate reciprocity for constant offsets") {
  std::mt19937 rng(26);
  for (int i = 0; i < 200; ++i) {
    const RdCurve a{rclc::testing::random_monotone_curve(rng, 30)};
    const double f = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
    const RdCurve b = Scaled(a, f);
    const double ab = rclc::bd_rate(a, b), ba = rclc::bd_rate(b, a);
    CHECK(ab == doctest::Approx((f - 1) * 100).epsilon(1e-8));
    CHECK(std::abs((1 + ab / 100) * (1 + ba / 100) - 1) <= 1e-6);
  }
}

TEST_CASE("bd_rate agrees with the dense oracle") {
  std::mt19937 rng(27);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = i % 3 == 0 ? 6 : 4;
    const auto a = rclc::testing::random_monotone_curve(rng, 30, n);
    const auto t = rclc::testing::random_monotone_curve(
        rng, std::uniform_real_distribution<double>(28, 32)(rng), n);
    const double got = rclc::bd_rate(RdCurve{a}, RdCurve{t});
    const double want = rclc::testing::dense_bd_rate(a, t, 20000);
    CHECK(std::abs(got - want) <= 0.1);
  }
}

TEST_CASE("fit is exact through four points") {
  const auto pts = kAnchor.sorted_validated();
  const auto fit = rclc::fit_log_rate(pts, 34.0);
  for (const RdPoint& p : pts) CHECK(fit(p.psnr_db) == doctest::Approx(std::log10(p.bitrate_kbps)).epsilon(1e-12));
}

TEST_CASE("rd csv") {
  const std::vector<RdPoint> pts = {{123.456, 33.3}, {0.1, 99}};
  const std::string text = rclc::write_rd_csv(pts);
  CHECK(rclc::parse_rd_csv(text) == pts);
  CHECK(rclc::parse_rd_csv("# comment\nbitrate_kbps,psnr_db\n1,2\n 3 , 4 \r\n") ==
        std::vector<RdPoint>{{1, 2}, {3, 4}});
  try {
    rclc::parse_rd_csv("1,2\n3;4\n");
    FAIL("accepted");
  } catch (const rclc::Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("build_rd_curve on the mock ladder") {
  const auto synth = rclc::generate(rclc::synth_preset("fixed-camera"));
  rclc::SidecarDetector det(synth.sidecar());
  const rclc::MockCodec codec;
  std::vector<std::vector<std::uint8_t>> streams;
  for (int qp : {22, 27, 32, 37}) {
    rclc::EncoderOptions o;
    o.gof = {2, rclc::BlendMode::kBuBlending, qp, qp + 10};
    streams.push_back(rclc::encode_video(synth.sequence, o, det, codec).bytes);
  }
  rclc::EnhancerClient none = rclc::EnhancerClient::none();
  const RdCurve curve = rclc::build_rd_curve(streams, synth.sequence, synth.boxes, codec, none);
  REQUIRE(curve.points.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(curve.points[i].bitrate_kbps < curve.points[i - 1].bitrate_kbps);
    CHECK(curve.points[i].psnr_db < curve.points[i - 1].psnr_db);
  }
  CHECK_NOTHROW(curve.sorted_validated());
  const RdCurve one = rclc::build_rd_curve(std::span(streams).first(1), synth.sequence, synth.boxes, codec, none);
  CHECK(CodeOf([&] { rclc::bd_rate(one, curve); }) == ErrorCode::kDegenerateFit);
  auto shorter = synth.sequence;
  shorter.frames.pop_back();
  CHECK(CodeOf([&] {
          rclc::build_rd_curve(streams, shorter, std::span(synth.boxes).first(shorter.frames.size()), codec, none);
        }) == ErrorCode::kMismatchedLengths);
}

TEST_CASE("rd_sweep ladders") {
  CHECK(rclc::rclc_ladder().size() == 4);
  CHECK(rclc::rclc_ladder()[0].qp_bg == 32);
  CHECK(rclc::anchor_ladder()[3].qp_bg == 47);
  const auto synth = rclc::generate(rclc::synth_preset("moving-box"));
  rclc::SidecarDetector det(synth.sidecar());
  const rclc::MockCodec codec;
  rclc::EnhancerClient none = rclc::EnhancerClient::none();
  const auto ladder = rclc::rclc_ladder();
  const auto sweep = rclc::rd_sweep(synth.sequence, {}, ladder, det, codec, none, synth.boxes);
  REQUIRE(sweep.size() == 4);
  CHECK(sweep[0].qps.qp_roi == 22);
  CHECK(sweep[0].point.bitrate_kbps >= sweep[3].point.bitrate_kbps);
}

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

#include <cstdlib>
#include <random>
#include <vector>

#include "rclc/error.hpp"
#include "rclc/geometry.hpp"
#include "test_support.hpp"

using rclc::BoundingBox;
using rclc::testing::random_int;

namespace {

BoundingBox RandomBox(std::mt19937& rng, int limit = 200) {
  const int x0 = random_int(rng, 0, limit - 2);
  const int y0 = random_int(rng, 0, limit - 2);
  return {x0, y0, random_int(rng, x0 + 1, limit), random_int(rng, y0 + 1, limit)};
}

// Area of the rasterized bbox union, counted pixel by pixel.
std::int64_t RasterizedUnionArea(const BoundingBox& a, const BoundingBox& b) {
  int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
  for (const BoundingBox& box : {a, b}) {
    for (int y = box.y0; y < box.y1; ++y) {
      for (int x = box.x0; x < box.x1; ++x) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x + 1);
        y1 = std::max(y1, y + 1);
      }
    }
  }
  return static_cast<std::int64_t>(x1 - x0) * (y1 - y0);
}

}  // namespace

TEST_CASE("union_box examples") {
  CHECK(rclc::union_box({10, 10, 50, 50}, {30, 30, 70, 70}) == BoundingBox{10, 10, 70, 70});
  const BoundingBox a{3, 4, 9, 12};
  CHECK(rclc::union_box(a, a) == a);
  CHECK(rclc::union_box({0, 0, 2, 2}, {100, 100, 102, 102}) == BoundingBox{0, 0, 102, 102});
}

TEST_CASE("union_box algebra") {
  std::mt19937 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const BoundingBox a = RandomBox(rng), b = RandomBox(rng), c = RandomBox(rng);
    const BoundingBox u = rclc::union_box(a, b);
    CHECK(u == rclc::union_box(b, a));
    CHECK(rclc::union_box(u, c) == rclc::union_box(a, rclc::union_box(b, c)));
    CHECK(u.contains(a));
    CHECK(u.contains(b));
    // Minimality: each edge is pinned by one of the inputs.
    CHECK((u.x0 == a.x0 || u.x0 == b.x0));
    CHECK((u.y0 == a.y0 || u.y0 == b.y0));
    CHECK((u.x1 == a.x1 || u.x1 == b.x1));
    CHECK((u.y1 == a.y1 || u.y1 == b.y1));
  }
}

TEST_CASE("compressed_area examples") {
  CHECK(rclc::compressed_area({100, 100, 200, 200}, {150, 150, 250, 250}) ==
        BoundingBox{100, 100, 250, 250});
  const BoundingBox c{5, 6, 40, 50};
  CHECK(rclc::compressed_area(c, c) == c);
  const BoundingBox cur{130, 50, 230, 150};
  const BoundingBox ref{100, 50, 200, 150};
  CHECK(rclc::compressed_area(cur, ref).area() == 13000);
  CHECK(RasterizedUnionArea(cur, ref) == 13000);
}

TEST_CASE("compressed_area closed form for translated boxes") {
  std::mt19937 rng(2);
  for (int i = 0; i < 300; ++i) {
    const int w = random_int(rng, 1, 40), h = random_int(rng, 1, 40);
    const int dx = random_int(rng, -30, 30), dy = random_int(rng, -30, 30);
    const BoundingBox ref{40, 40, 40 + w, 40 + h};
    const BoundingBox cur{40 + dx, 40 + dy, 40 + dx + w, 40 + dy + h};
    const BoundingBox area = rclc::compressed_area(cur, ref);
    const std::int64_t closed = static_cast<std::int64_t>(w + std::abs(dx)) * (h + std::abs(dy));
    CHECK(area.area() == closed);
    CHECK(RasterizedUnionArea(cur, ref) == closed);
    CHECK(area.contains(cur));
    CHECK(area.contains(ref));
  }
  // Strictly increasing in |dx|.
  std::int64_t prev = 0;
  for (int dx = 0; dx < 20; ++dx) {
    const auto a = rclc::compressed_area({dx, 0, dx + 10, 10}, {0, 0, 10, 10}).area();
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("align_box examples") {
  CHECK(rclc::align_box({13, 9, 61, 43}, 16, 1920, 1080) == BoundingBox{0, 0, 64, 48});
  CHECK(rclc::align_box({16, 32, 64, 80}, 16, 1920, 1080) == BoundingBox{16, 32, 64, 80});
  CHECK(rclc::align_box({1910, 1070, 1930, 1090}, 16, 1920, 1080) ==
        BoundingBox{1904, 1056, 1920, 1080});
}

TEST_CASE("align_box errors") {
  CHECK_THROWS_AS(rclc::align_box({100, 100, 120, 120}, 16, 64, 64), rclc::Error);
  try {
    rclc::align_box({100, 100, 120, 120}, 16, 64, 64);
  } catch (const rclc::Error& e) {
    CHECK(e.code() == rclc::ErrorCode::kEmptyIntersection);
  }
  try {
    rclc::align_box({0, 0, 4, 4}, 3, 64, 64);
    FAIL("grid 3 accepted");
  } catch (const rclc::Error& e) {
    CHECK(e.code() == rclc::ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("align_box properties") {
  std::mt19937 rng(3);
  for (int grid : {2, 4, 8, 16}) {
    for (int i = 0; i < 500; ++i) {
      const int fw = random_int(rng, 2, 150), fh = random_int(rng, 2, 150);
      BoundingBox b = RandomBox(rng, 200);
      const auto clipped = rclc::intersect(b, BoundingBox::full(fw, fh));
      if (!clipped) continue;
      const BoundingBox a = rclc::align_box(b, grid, fw, fh);
      CHECK(a.contains(*clipped));
      CHECK(a.within(fw, fh));
      CHECK(a.x0 % grid == 0);
      CHECK(a.y0 % grid == 0);
      CHECK((a.x1 % grid == 0 || a.x1 == fw));
      CHECK((a.y1 % grid == 0 || a.y1 == fh));
    }
  }
}

TEST_CASE("intersect") {
  CHECK(rclc::intersect({0, 0, 10, 10}, {5, 5, 20, 20}) == BoundingBox{5, 5, 10, 10});
  CHECK_FALSE(rclc::intersect({0, 0, 10, 10}, {10, 0, 20, 10}).has_value());
}

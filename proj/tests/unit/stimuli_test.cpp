// Copyright 2026 The stgabor Authors.
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

#include "stgabor/stimuli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stgabor/error.hpp"
#include "stgabor/features.hpp"

namespace stgabor {
namespace {

constexpr double kPi = std::numbers::pi;

struct Centroid {
  double x, y;
};

Centroid centroid(const Volume& v, std::size_t t) {
  double sx = 0, sy = 0, m = 0;
  for (std::size_t y = 0; y < v.height(); ++y)
    for (std::size_t x = 0; x < v.width(); ++x) {
      const double w = v.at(x, y, t);
      sx += w * static_cast<double>(x);
      sy += w * static_cast<double>(y);
      m += w;
    }
  return {sx / m, sy / m};
}

TEST(Render, StaticBarFramesAreIdentical) {
  StimulusSpec spec;
  spec.speed = 0;
  spec.direction = kPi / 3;
  const auto v = render(spec);
  for (std::size_t t = 1; t < v.frames(); ++t) {
    const auto a = v.frame(0);
    const auto b = v.frame(t);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin())) << t;
  }
}

// A stimulus of direction theta is a function of x cos(theta) + y sin(theta)
// + v t, so its pattern travels by -v (cos theta, sin theta) per frame, the
// motion the filter of the same direction prefers.
TEST(Render, BarTranslatesBySpeedPerFrame) {
  StimulusSpec spec;
  spec.extent = {32, 32, 9};
  spec.speed = 1;
  const auto v = render(spec);
  const auto c0 = centroid(v, 0);
  for (std::size_t t = 1; t < 9; ++t) {
    const auto c = centroid(v, t);
    EXPECT_NEAR(c.x - c0.x, -static_cast<double>(t), 1e-9);
    EXPECT_NEAR(c.y, c0.y, 1e-9);
  }
  for (std::size_t t = 0; t < 9; ++t) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < 32; ++x)
      if (v.at(x, 16, t) > v.at(best, 16, t)) best = x;
    EXPECT_EQ(static_cast<long>(best), static_cast<long>(v.width() / 2) + 3 -
                                           static_cast<long>(t))
        << t;
  }
}

TEST(Render, SubPixelBarKeepsItsMass) {
  StimulusSpec spec;
  spec.direction = kPi / 2;
  spec.speed = 0.5;
  spec.bar_width = 3;
  spec.extent = {16, 40, 7};
  const auto v = render(spec);
  const auto c0 = centroid(v, 0);
  for (std::size_t t = 0; t < 7; ++t) {
    double mass = 0;
    for (double x : v.frame(t)) mass += x;
    EXPECT_NEAR(mass, 3.0 * 16, 1e-9);
    const auto c = centroid(v, t);
    EXPECT_NEAR(c.y - c0.y, -0.5 * static_cast<double>(t), 1e-9);
  }
}

TEST(Render, EdgePolarityAndContrast) {
  StimulusSpec spec;
  spec.kind = StimulusKind::kEdge;
  spec.speed = 0;
  spec.extent = {10, 3, 1};
  spec.foreground = 3;
  spec.background = 1;
  const auto neg = render(spec);
  EXPECT_EQ(neg.at(0, 0, 0), 3.0);
  EXPECT_EQ(neg.at(9, 0, 0), 1.0);
  spec.polarity = EdgePolarity::kPositiveSide;
  const auto pos = render(spec);
  EXPECT_EQ(pos.at(0, 0, 0), 1.0);
  EXPECT_EQ(pos.at(9, 0, 0), 3.0);
  for (std::size_t x = 0; x < 10; ++x)
    EXPECT_DOUBLE_EQ(neg.at(x, 1, 0) + pos.at(x, 1, 0), 4.0);
}

TEST(Render, GratingFormula) {
  StimulusSpec spec;
  spec.kind = StimulusKind::kGrating;
  spec.direction = kPi / 6;
  spec.speed = 2;
  spec.grating_phase = 0.3;
  spec.extent = {5, 4, 3};
  const auto v = render(spec);
  const double k = 2 * kPi / std::sqrt(20.0);
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t x = 0; x < 5; ++x) {
        const double xr = static_cast<double>(x) * std::cos(kPi / 6) +
                          static_cast<double>(y) * std::sin(kPi / 6);
        EXPECT_NEAR(v.at(x, y, t),
                    std::cos(k * (xr + 2.0 * static_cast<double>(t)) + 0.3),
                    1e-12);
      }
}

TEST(Render, Deterministic) {
  for (auto kind : {StimulusKind::kBar, StimulusKind::kEdge, StimulusKind::kGrating}) {
    StimulusSpec spec;
    spec.kind = kind;
    spec.direction = 1.1;
    spec.speed = 1.3;
    const auto a = render(spec);
    const auto b = render(spec);
    EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
  }
}

TEST(Render, Validation) {
  StimulusSpec spec;
  spec.extent = {0, 4, 4};
  EXPECT_THROW(render(spec), InvalidParameter);
  spec = {};
  spec.speed = -1;
  EXPECT_THROW(render(spec), InvalidParameter);
  spec = {};
  spec.bar_width = 0;
  EXPECT_THROW(render(spec), InvalidParameter);
  spec = {};
  spec.kind = StimulusKind::kGrating;
  spec.grating_wavelength = 1.5;
  EXPECT_THROW(render(spec), InvalidParameter);
  spec = {};
  spec.direction = std::nan("");
  EXPECT_THROW(render(spec), InvalidParameter);
}

double interior_mean_response(const Volume& video, const FilterParams& p) {
  const auto s = default_support(p);
  const auto r = quadrature_response(video, p);
  const auto h = static_cast<std::size_t>(s.spatial_halfwidth);
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t t = static_cast<std::size_t>(s.temporal_length - 1);
       t < r.frames(); ++t)
    for (std::size_t y = h; y + h < r.height(); ++y)
      for (std::size_t x = h; x + h < r.width(); ++x) {
        sum += r.at(x, y, t);
        ++n;
      }
  return sum / static_cast<double>(n);
}

TEST(Render, MatchedGratingMaximizesTheFilter) {
  const double v = 2.0, theta = kPi / 4;
  const auto p = derive_params(v, theta, 0, EnvelopeMode::kMoving);
  StimulusSpec spec;
  spec.kind = StimulusKind::kGrating;
  spec.speed = v;
  spec.direction = theta;
  const double matched = interior_mean_response(render(spec), p);
  for (double gv : {0.5, 1.0, 2.0, 4.0})
    for (double gd : {0.0, kPi / 4, kPi / 2, kPi}) {
      for (double lambda : {3.0, std::sqrt(20.0), 6.0}) {
        if (gv == v && gd == theta && lambda == std::sqrt(20.0)) continue;
        spec.speed = gv;
        spec.direction = gd;
        spec.grating_wavelength = lambda;
        EXPECT_LT(interior_mean_response(render(spec), p), matched)
            << gv << " " << gd << " " << lambda;
      }
    }
}

TEST(Tuning, DirectionTuningPeaksAtStimulusDirection) {
  const auto dirs = evenly_spaced_directions(8);
  for (double theta : {0.0, kPi / 2}) {
    StimulusSpec spec;
    spec.direction = theta;
    const auto curve = direction_tuning(1.0, dirs, spec);
    EXPECT_EQ(curve.axis, TuningAxis::kDirection);
    ASSERT_EQ(curve.samples.size(), 8u);
    EXPECT_DOUBLE_EQ(curve.peak_parameter(), theta);
    for (const auto& s : curve.samples) EXPECT_GE(s.energy, 0.0);
  }
}

TEST(Tuning, MovingEnvelopeIsMoreSelective) {
  const auto dirs = evenly_spaced_directions(8);
  const StimulusSpec spec;
  const auto moving = direction_tuning(1.0, dirs, spec, EnvelopeMode::kMoving);
  const auto stationary =
      direction_tuning(1.0, dirs, spec, EnvelopeMode::kStationary);
  EXPECT_GT(moving.peak_to_mean(), stationary.peak_to_mean());
}

TEST(Tuning, SpeedTuningPeaksAtEdgeSpeed) {
  const std::vector<double> speeds{0.5, 1, 1.5, 2, 2.5, 3, 4};
  for (double v : {1.0, 2.0, 4.0}) {
    StimulusSpec spec;
    spec.kind = StimulusKind::kEdge;
    spec.speed = v;
    const auto curve = speed_tuning(0.0, speeds, spec);
    EXPECT_EQ(curve.axis, TuningAxis::kSpeed);
    EXPECT_DOUBLE_EQ(curve.peak_parameter(), v);
  }
}

TEST(Tuning, RejectsWrongStimulusOrAxis) {
  StimulusSpec bar;
  StimulusSpec edge;
  edge.kind = StimulusKind::kEdge;
  const std::vector<double> good{0.0, 1.0};
  const std::vector<double> unsorted{1.0, 0.0};
  EXPECT_THROW(direction_tuning(1, good, edge), InvalidParameter);
  EXPECT_THROW(speed_tuning(0, good, bar), InvalidParameter);
  EXPECT_THROW(direction_tuning(1, unsorted, bar), InvalidParameter);
  EXPECT_THROW(speed_tuning(0, std::vector<double>{}, edge), InvalidParameter);
}

TEST(Tuning, ArgmaxTakesFirstOnTies) {
  TuningCurve c{TuningAxis::kSpeed, {{1, 2.0}, {2, 5.0}, {3, 5.0}}};
  EXPECT_EQ(c.argmax(), 1u);
  EXPECT_DOUBLE_EQ(c.peak_to_mean(), 5.0 / 4.0);
  EXPECT_THROW(TuningCurve{}.argmax(), InvalidInput);
}

}  // namespace
}  // namespace stgabor

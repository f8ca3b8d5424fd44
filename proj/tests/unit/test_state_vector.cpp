// Copyright 2026 The qnetcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnc/error.hpp"
#include "qnc/state_vector.hpp"
#include "test_support.hpp"

namespace qnc {
namespace {

using Amp = StateVector::Amplitude;
using qnc::testing::random_superposition;

constexpr double kEps = 1e-12;

std::vector<RegisterId> regs(std::initializer_list<int> ids) {
  std::vector<RegisterId> out;
  for (int i : ids) out.push_back(reg(i));
  return out;
}

StateVector basis(const RingPtr& r, std::size_t q, std::vector<RegisterId> rs,
                  std::vector<std::uint64_t> labels) {
  return StateVector::basis(r, q, std::move(rs), labels);
}

void expect_amps(const StateVector& s, const std::vector<Amp>& want, double eps = kEps) {
  ASSERT_EQ(s.amplitudes().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(std::abs(s.amplitudes()[i] - want[i]), 0.0, eps) << "index " << i;
  }
}

std::vector<std::vector<RingMatrix>> scalar_coeffs(const Ring& r,
                                                   std::vector<std::vector<std::uint32_t>> rows) {
  std::vector<std::vector<RingMatrix>> out;
  for (const auto& row : rows) {
    std::vector<RingMatrix> m;
    for (auto c : row) m.emplace_back(r, 1, std::vector<std::uint32_t>{c});
    out.push_back(m);
  }
  return out;
}

TEST(InitState, Examples) {
  const auto z2 = Ring::parse("Z(2)");
  const std::uint64_t lab[] = {1, 0};
  const auto b = StateVector::basis(z2, 1, regs({0, 1}), lab);
  expect_amps(b, {0, 0, 1, 0});
  const auto u = init_state(z2, 1, 2, {0.5, 0.5, 0.5, 0.5});
  EXPECT_FALSE(u.renormalized());
  EXPECT_NEAR(u.norm_squared(), 1.0, kEps);

  const auto gf4 = Ring::parse("GF(4)");
  const double h = 1.0 / std::sqrt(2.0);
  const auto g = init_state(gf4, 1, 1, {0, h, 0, h});
  EXPECT_NEAR(g.norm_squared(), 1.0, 1e-9);
  const std::uint32_t t[] = {0, 1}, t1[] = {1, 1};
  EXPECT_EQ(gf4->index_of(t), 1u);
  EXPECT_EQ(gf4->index_of(t1), 3u);
}

TEST(InitState, RenormalizesAndRejects) {
  const auto z2 = Ring::parse("Z(2)");
  const auto s = init_state(z2, 1, 1, {1.0, 1.0});
  EXPECT_TRUE(s.renormalized());
  EXPECT_NEAR(s.norm_squared(), 1.0, kEps);
  EXPECT_THROW(init_state(z2, 1, 1, {0.0, 0.0}), StateError);
  EXPECT_THROW(init_state(z2, 1, 2, {1.0, 0.0}), StateError);
}

TEST(CodingUnitary, FanOutCopy) {
  const auto z2 = Ring::parse("Z(2)");
  for (std::uint64_t y = 0; y < 2; ++y) {
    auto s = basis(z2, 1, regs({0}), {y});
    s.apply_coding_unitary(regs({0}), regs({1, 2}), scalar_coeffs(*z2, {{1}, {1}}));
    EXPECT_EQ(s.register_count(), 3u);
    const std::uint64_t want[] = {y, y, y};
    EXPECT_NEAR(std::abs(s.amplitude(want)), 1.0, kEps);
  }
}

TEST(CodingUnitary, XorAndZero) {
  const auto z2 = Ring::parse("Z(2)");
  for (std::uint64_t y1 = 0; y1 < 2; ++y1) {
    for (std::uint64_t y2 = 0; y2 < 2; ++y2) {
      auto s = basis(z2, 1, regs({0, 1}), {y1, y2});
      s.apply_coding_unitary(regs({0, 1}), regs({2}), scalar_coeffs(*z2, {{1, 1}}));
      const std::uint64_t want[] = {y1, y2, y1 ^ y2};
      EXPECT_NEAR(std::abs(s.amplitude(want)), 1.0, kEps);

      auto z = basis(z2, 1, regs({0, 1}), {y1, y2});
      z.apply_coding_unitary(regs({0, 1}), regs({2}), scalar_coeffs(*z2, {{0, 0}}));
      const std::uint64_t zero[] = {y1, y2, 0};
      EXPECT_NEAR(std::abs(z.amplitude(zero)), 1.0, kEps);
    }
  }
}

TEST(CodingUnitary, PermutesAmplitudesOverZ4) {
  const auto z4 = Ring::parse("Z(4)");
  auto s = random_superposition(z4, 1, 2, 5);
  std::vector<double> before;
  for (auto a : s.amplitudes()) before.push_back(std::abs(a));
  s.apply_coding_unitary(regs({0, 1}), regs({2}), scalar_coeffs(*z4, {{3, 2}}));
  std::vector<double> after;
  for (auto a : s.amplitudes()) {
    if (std::abs(a) > 0) after.push_back(std::abs(a));
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(before[i], after[i], kEps);
  // content check: z = 3 y1 + 2 y2
  for (std::uint64_t y1 = 0; y1 < 4; ++y1) {
    for (std::uint64_t y2 = 0; y2 < 4; ++y2) {
      const std::uint64_t lab[] = {y1, y2, (3 * y1 + 2 * y2) % 4};
      const std::uint64_t in[] = {y1, y2};
      auto orig = random_superposition(z4, 1, 2, 5);
      EXPECT_NEAR(std::abs(s.amplitude(lab) - orig.amplitude(in)), 0.0, kEps);
    }
  }
}

TEST(CodingUnitary, Errors) {
  const auto z2 = Ring::parse("Z(2)");
  auto s = basis(z2, 1, regs({0, 1}), {0, 0});
  EXPECT_THROW(s.apply_coding_unitary(regs({0}), regs({1}), scalar_coeffs(*z2, {{1}})), StateError);
  EXPECT_THROW(s.apply_coding_unitary(regs({0}), regs({2}), scalar_coeffs(*z2, {{1}, {1}})),
               StateError);
  EXPECT_THROW(s.apply_coding_unitary(regs({7}), regs({2}), scalar_coeffs(*z2, {{1}})), StateError);
}

TEST(CodingUnitary, DimensionCap) {
  const auto z2 = Ring::parse("Z(2)");
  auto s = StateVector::basis(z2, 1, regs({0}), std::vector<std::uint64_t>{1}, 4);
  s.apply_coding_unitary(regs({0}), regs({1}), scalar_coeffs(*z2, {{1}}));
  try {
    s.apply_coding_unitary(regs({0}), regs({2}), scalar_coeffs(*z2, {{1}}));
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.override_hint(), "--max-dim");
  }
}

TEST(Fourier, HadamardOnF2) {
  const auto z2 = Ring::parse("Z(2)");
  auto s = basis(z2, 1, regs({0}), {0});
  s.apply_fourier(reg(0));
  const double h = 1.0 / std::sqrt(2.0);
  expect_amps(s, {h, h});
  auto t = basis(z2, 1, regs({0}), {1});
  t.apply_fourier(reg(0));
  expect_amps(t, {h, -h});
}

TEST(Fourier, Z3MatchesDefinition) {
  const auto z3 = Ring::parse("Z(3)");
  auto s = basis(z3, 1, regs({0}), {1});
  s.apply_fourier(reg(0));
  const double n = 1.0 / std::sqrt(3.0);
  const auto w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  expect_amps(s, {n, n * w, n * w * w});
}

// Oracle: W' entries from canonical coordinates, exp(2 pi i sum c_i d_i / r_i).
TEST(Fourier, MatchesCoordinateOracle) {
  for (const char* d : {"Z(4)", "GF(4)", "Z(2)xZ(4)", "GF(9)"}) {
    const auto r = Ring::parse(d);
    for (std::size_t q : {1u, 2u}) {
      std::uint64_t dim = 1;
      for (std::size_t i = 0; i < q; ++i) dim *= r->size();
      if (dim > 81) continue;
      for (std::uint64_t y = 0; y < dim; ++y) {
        auto s = basis(r, q, regs({0}), {y});
        s.apply_fourier(reg(0));
        const auto vy = RingVector::from_label(*r, q, y).flat_coords();
        const auto m = r->moduli();
        for (std::uint64_t z = 0; z < dim; ++z) {
          const auto vz = RingVector::from_label(*r, q, z).flat_coords();
          double angle = 0.0;
          for (std::size_t i = 0; i < vy.size(); ++i) {
            angle += 2.0 * std::numbers::pi * static_cast<double>(vy[i] * vz[i] % m[i % m.size()]) /
                     m[i % m.size()];
          }
          const Amp want = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), angle);
          ASSERT_NEAR(std::abs(s.amplitudes()[z] - want), 0.0, kEps) << d << " q=" << q;
        }
      }
    }
  }
}

TEST(Fourier, UnitaryRoundTrip) {
  std::uint64_t seed = 40;
  for (const char* d : {"Z(2)", "Z(3)", "Z(4)", "GF(4)", "Z(6)", "GF(8)", "GF(9)", "Z(2)xZ(4)"}) {
    for (auto phi : {PhiChoice::kCanonical, PhiChoice::kAlternate}) {
      const auto r = Ring::parse(d, phi);
      const auto orig = random_superposition(r, 1, 2, ++seed);
      auto s = orig;
      s.apply_fourier(reg(1));
      EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
      s.apply_fourier(reg(1), true);
      for (std::size_t i = 0; i < orig.amplitudes().size(); ++i) {
        ASSERT_NEAR(std::abs(s.amplitudes()[i] - orig.amplitudes()[i]), 0.0, kEps) << d;
      }
    }
  }
}

TEST(Measure, UniformHalf) {
  const auto z2 = Ring::parse("Z(2)");
  auto s = basis(z2, 1, regs({0, 1}), {0, 1});
  s.apply_fourier(reg(0));
  const auto p = s.marginal(reg(0));
  EXPECT_NEAR(p[0], 0.5, kEps);
  EXPECT_NEAR(p[1], 0.5, kEps);
  const auto o = s.measure(reg(0), Forced{1});
  EXPECT_NEAR(o.probability, 0.5, kEps);
  EXPECT_EQ(s.register_count(), 1u);
  EXPECT_FALSE(s.has_register(reg(0)));
  expect_amps(s, {0, 1});
}

TEST(Measure, BasisIsDeterministic) {
  const auto z3 = Ring::parse("Z(3)");
  auto s = basis(z3, 1, regs({0, 1}), {2, 1});
  std::mt19937_64 rng(1);
  const auto o = s.measure(reg(0), Sampled{&rng});
  EXPECT_EQ(o.outcome.label(), 2u);
  EXPECT_NEAR(o.probability, 1.0, kEps);
  EXPECT_THROW(s.measure(reg(1), Forced{0}), ZeroProbabilityOutcome);
  EXPECT_THROW(s.measure(reg(5), Forced{0}), StateError);
}

TEST(Measure, FourierOfBasisIsUniform) {
  for (const char* d : {"Z(2)", "Z(3)", "Z(4)", "GF(4)", "Z(5)", "Z(6)", "GF(8)", "GF(9)", "Z(3)xZ(3)"}) {
    const auto r = Ring::parse(d);
    for (std::uint64_t y = 0; y < r->size(); ++y) {
      auto s = basis(r, 1, regs({0}), {y});
      s.apply_fourier(reg(0));
      for (double p : s.marginal(reg(0))) ASSERT_NEAR(p, 1.0 / r->size(), kEps) << d;
    }
  }
}

TEST(Measure, SampledIsReproducible) {
  const auto z4 = Ring::parse("Z(4)");
  std::vector<std::uint64_t> first, second;
  for (auto* out : {&first, &second}) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
      auto s = random_superposition(z4, 1, 2, 3);
      out->push_back(s.measure(reg(0), Sampled{&rng}).outcome.label());
    }
  }
  EXPECT_EQ(first, second);
}

TEST(Phase, Examples) {
  const auto z2 = Ring::parse("Z(2)");
  const double h = 1.0 / std::sqrt(2.0);
  auto s = init_state(z2, 1, 1, {h, h});
  auto same = s;
  same.apply_phase(reg(0), [](std::uint64_t) { return Phase(); }, 1);
  expect_amps(same, {h, h});
  s.apply_phase(reg(0), [](std::uint64_t z) { return Phase::fraction(static_cast<std::int64_t>(z), 2); }, -1);
  expect_amps(s, {h, -h});

  const auto z3 = Ring::parse("Z(3)");
  const auto orig = random_superposition(z3, 1, 2, 8);
  auto t = orig;
  auto fn = [](std::uint64_t x) { return Phase::fraction(static_cast<std::int64_t>(x), 3); };
  t.apply_phase(reg(1), fn, 1);
  t.apply_phase(reg(1), fn, -1);
  expect_amps(t, std::vector<Amp>(orig.amplitudes().begin(), orig.amplitudes().end()));
}

TEST(Fidelity, Examples) {
  const auto z2 = Ring::parse("Z(2)");
  const auto psi = random_superposition(z2, 1, 2, 4);
  EXPECT_NEAR(fidelity(psi, psi), 1.0, kEps);
  EXPECT_NEAR(fidelity(basis(z2, 1, regs({0}), {0}), basis(z2, 1, regs({0}), {1})), 0.0, kEps);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(fidelity(init_state(z2, 1, 1, {h, h}), basis(z2, 1, regs({0}), {0})), 0.5, kEps);
  EXPECT_THROW(fidelity(basis(z2, 1, regs({0}), {0}), basis(z2, 1, regs({1}), {0})), StateError);
}

TEST(Registers, RelabelAndReorder) {
  const auto z3 = Ring::parse("Z(3)");
  auto s = basis(z3, 1, regs({0, 1}), {2, 1});
  s.relabel(reg(0), reg(9));
  s.reorder(regs({1, 9}));
  const std::uint64_t lab[] = {1, 2};
  EXPECT_NEAR(std::abs(s.amplitude(lab)), 1.0, kEps);
  EXPECT_THROW(s.relabel(reg(1), reg(9)), StateError);
}

TEST(InputState, ParsesFlattenedLabels) {
  const auto z2 = Ring::parse("Z(2)");
  const auto s = load_input_state(qnc::testing::instance_path("superpos.json"), z2, 1, 2);
  expect_amps(s, {0.5, 0.5, 0.5, 0.5});
  const auto z2z4 = Ring::parse("Z(2)xZ(4)");
  const auto t = parse_input_state("[[[[1,3]],1,0]]", z2z4, 1, 1);
  const std::uint32_t c[] = {1, 3};
  EXPECT_NEAR(std::abs(t.amplitudes()[z2z4->index_of(c)]), 1.0, kEps);
  EXPECT_THROW(parse_input_state("[[[0,2],1,0]]", z2, 1, 2), ParseError);
  EXPECT_THROW(parse_input_state("[[[0],1,0]]", z2, 1, 2), ParseError);
  EXPECT_THROW(parse_input_state("{}", z2, 1, 2), ParseError);
  EXPECT_THROW(parse_input_state("[[[0,0],0,0]]", z2, 1, 2), StateError);
  EXPECT_TRUE(parse_input_state("[[[0,0],1,0],[[1,1],1,0]]", z2, 1, 2).renormalized());
}

}  // namespace
}  // namespace qnc

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

#include <numeric>
#include <set>
#include <random>

#include "qnc/error.hpp"
#include "qnc/ring.hpp"

namespace qnc {
namespace {

std::vector<std::string> small_rings() {
  return {"Z(2)", "Z(3)", "Z(4)", "Z(6)", "Z(9)", "GF(4)", "GF(8)", "GF(9)",
          "GF(16)", "Z(2)xZ(4)", "Z(2)xGF(4)", "Z(3)xZ(3)", "Z(2)xZ(2)xZ(2)"};
}

// Polynomial product mod (p, poly), coefficients low to high.
std::vector<std::uint32_t> poly_mulmod(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                       const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  const std::size_t k = poly.size() - 1;
  std::vector<std::uint32_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) {
      prod[d - k + i] = (prod[d - k + i] + (p - c) * poly[i]) % p;
    }
  }
  prod.resize(k);
  return prod;
}

bool has_root(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = (v * x + poly[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

TEST(Phase, ExactArithmeticModOne) {
  EXPECT_EQ(Phase::fraction(3, 2), Phase::fraction(1, 2));
  EXPECT_EQ(Phase::fraction(-1, 4), Phase::fraction(3, 4));
  EXPECT_EQ(Phase::fraction(2, 4).str(), "1/2");
  EXPECT_EQ(Phase::fraction(4, 4).str(), "0");
  EXPECT_EQ(Phase::fraction(1, 3) + Phase::fraction(1, 6), Phase::fraction(1, 2));
  EXPECT_EQ(Phase::fraction(1, 2) + Phase::fraction(1, 2), Phase());
  EXPECT_EQ(Phase::fraction(1, 3) - Phase::fraction(1, 2), Phase::fraction(5, 6));
  EXPECT_EQ(-Phase::fraction(1, 3), Phase::fraction(2, 3));
  for (std::int64_t k = -12; k <= 12; ++k) {
    EXPECT_EQ(Phase::fraction(5, 12).times(k), Phase::fraction(5 * k, 12)) << k;
  }
  EXPECT_EQ(Phase::fraction(1, 1000003).times(1000002), Phase::fraction(1000002, 1000003));
  EXPECT_THROW(Phase::fraction(1, 0), std::invalid_argument);
}

TEST(RingSpec, ParsesModular) {
  const auto s = parse_ring_spec("Z(2)");
  EXPECT_EQ(s.moduli, std::vector<std::uint32_t>{2});
  EXPECT_EQ(s.cardinality, 2u);
}

TEST(RingSpec, ParsesGaloisWithLeastPolynomial) {
  const auto s = parse_ring_spec("GF(4)");
  ASSERT_EQ(s.factors.size(), 1u);
  EXPECT_EQ(s.factors[0].characteristic, 2u);
  EXPECT_EQ(s.factors[0].degree, 2u);
  EXPECT_EQ(s.factors[0].polynomial, (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(s.moduli, (std::vector<std::uint32_t>{2, 2}));
  EXPECT_EQ(parse_ring_spec("GF(2^2)"), s);
}

TEST(RingSpec, ParsesProduct) {
  const auto s = parse_ring_spec("Z(2)xZ(4)");
  EXPECT_EQ(s.moduli, (std::vector<std::uint32_t>{2, 4}));
  EXPECT_EQ(s.cardinality, 8u);
}

TEST(RingSpec, DescriptorRoundTrips) {
  for (const auto& d : small_rings()) {
    const auto s = parse_ring_spec(d);
    EXPECT_EQ(parse_ring_spec(s.descriptor()), s) << d;
  }
}

TEST(RingSpec, RejectsBadDescriptors) {
  EXPECT_THROW(parse_ring_spec("Z(1)"), ParseError);
  EXPECT_THROW(parse_ring_spec("GF(6)"), ParseError);
  EXPECT_THROW(parse_ring_spec("GF(4^2)"), ParseError);
  EXPECT_THROW(parse_ring_spec("GF(4)[1,0,1]"), ParseError);  // (t+1)^2
  EXPECT_THROW(parse_ring_spec("GF(4)[1,1]"), ParseError);
  EXPECT_THROW(parse_ring_spec("GF(4)[1,1,2]"), ParseError);
  EXPECT_THROW(parse_ring_spec("Z(2048)"), ParseError);
  EXPECT_THROW(parse_ring_spec("Q(2)"), ParseError);
  EXPECT_THROW(parse_ring_spec(""), ParseError);
}

TEST(RingSpec, AcceptsSuppliedIrreducible) {
  const auto s = parse_ring_spec("GF(8)[1,0,1,1]");
  EXPECT_EQ(s.factors[0].polynomial, (std::vector<std::uint32_t>{1, 0, 1, 1}));
}

TEST(RingSpec, LeastIrreducibleMatchesRootOracle) {
  // Degrees 2 and 3: irreducible iff rootless. Least = first rootless monic
  // polynomial comparing coefficients from t^{k-1} down.
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t k : {2u, 3u}) {
      std::vector<std::uint32_t> expect;
      const std::uint32_t count = k == 2 ? p * p : p * p * p;
      for (std::uint32_t n = 0; n < count && expect.empty(); ++n) {
        std::vector<std::uint32_t> poly(k + 1, 0);
        poly[k] = 1;
        std::uint32_t rest = n;
        for (std::uint32_t i = 0; i < k; ++i) {
          poly[i] = rest % p;  // most significant digit of n is t^{k-1}
          rest /= p;
        }
        if (!has_root(p, poly)) expect = poly;
      }
      EXPECT_EQ(least_irreducible(p, k), expect) << "p=" << p << " k=" << k;
      EXPECT_TRUE(is_irreducible(p, expect));
    }
  }
  EXPECT_EQ(least_irreducible(2, 3), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_EQ(least_irreducible(3, 2), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(RingSpec, IrreducibleDegreeFour) {
  EXPECT_TRUE(is_irreducible(2, std::vector<std::uint32_t>{1, 1, 0, 0, 1}));
  EXPECT_FALSE(is_irreducible(2, std::vector<std::uint32_t>{1, 0, 1, 0, 1}));  // (t^2+t+1)^2
  EXPECT_FALSE(is_irreducible(2, std::vector<std::uint32_t>{1, 1, 1, 1, 1}) ==
               has_root(2, {1, 1, 1, 1, 1}));
}

TEST(Ring, ModularArithmetic) {
  const auto r = Ring::parse("Z(4)");
  const auto three = r->element_at(3), two = r->element_at(2);
  EXPECT_EQ((three + two).index(), 1u);
  EXPECT_EQ((three * two).index(), 2u);
  EXPECT_EQ((-three).index(), 1u);
}

TEST(Ring, GaloisArithmetic) {
  const auto r = Ring::parse("GF(4)");
  const std::uint32_t t[] = {0, 1}, t1[] = {1, 1};
  const auto te = r->element(t);
  EXPECT_EQ(te * te, r->element(t1));
  EXPECT_EQ(r->one().coords(), (std::vector<std::uint32_t>{1, 0}));
}

TEST(Ring, AdditiveInverseEverywhere) {
  for (const auto& d : small_rings()) {
    const auto r = Ring::parse(d);
    for (std::uint32_t a = 0; a < r->size(); ++a) {
      EXPECT_TRUE((r->element_at(a) + -r->element_at(a)).is_zero()) << d;
    }
  }
}

TEST(Ring, GaloisMultiplicationMatchesPolynomialOracle) {
  for (const char* d : {"GF(4)", "GF(8)", "GF(9)", "GF(16)", "GF(25)", "GF(27)[2,2,0,1]"}) {
    const auto r = Ring::parse(d);
    const auto& f = r->spec().factors[0];
    for (std::uint32_t a = 0; a < r->size(); ++a) {
      for (std::uint32_t b = 0; b < r->size(); ++b) {
        const auto expect = poly_mulmod(r->coords(a), r->coords(b), f.polynomial, f.characteristic);
        ASSERT_EQ(r->coords(r->mul(a, b)), expect) << d << " " << a << "*" << b;
      }
    }
  }
}

TEST(Ring, ProductRingIsFactorwise) {
  const auto r = Ring::parse("Z(3)xGF(4)");
  const auto gf = Ring::parse("GF(4)");
  for (std::uint32_t a = 0; a < r->size(); ++a) {
    for (std::uint32_t b = 0; b < r->size(); ++b) {
      const auto ca = r->coords(a), cb = r->coords(b), cm = r->coords(r->mul(a, b));
      EXPECT_EQ(cm[0], ca[0] * cb[0] % 3);
      const std::uint32_t ga[] = {ca[1], ca[2]}, gb[] = {cb[1], cb[2]};
      const auto g = gf->coords(gf->mul(gf->index_of(ga), gf->index_of(gb)));
      EXPECT_EQ(cm[1], g[0]);
      EXPECT_EQ(cm[2], g[1]);
    }
  }
}

TEST(Ring, AxiomsExhaustive) {
  for (const auto& d : small_rings()) {
    const auto r = Ring::parse(d);
    const std::uint32_t n = r->size(), one = r->one_index();
    for (std::uint32_t a = 0; a < n; ++a) {
      ASSERT_EQ(r->mul(a, one), a) << d;
      ASSERT_EQ(r->mul(one, a), a) << d;
      for (std::uint32_t b = 0; b < n; ++b) {
        ASSERT_EQ(r->add(a, b), r->add(b, a)) << d;
        for (std::uint32_t c = 0; c < n; ++c) {
          ASSERT_EQ(r->mul(r->mul(a, b), c), r->mul(a, r->mul(b, c))) << d;
          ASSERT_EQ(r->mul(a, r->add(b, c)), r->add(r->mul(a, b), r->mul(a, c))) << d;
          ASSERT_EQ(r->mul(r->add(a, b), c), r->add(r->mul(a, c), r->mul(b, c))) << d;
        }
      }
    }
  }
}

TEST(Ring, AdditionIsCoordinatewise) {
  for (const auto& d : small_rings()) {
    const auto r = Ring::parse(d);
    const auto m = r->moduli();
    for (std::uint32_t a = 0; a < r->size(); ++a) {
      for (std::uint32_t b = 0; b < r->size(); ++b) {
        const auto ca = r->coords(a), cb = r->coords(b), cs = r->coords(r->add(a, b));
        for (std::size_t i = 0; i < m.size(); ++i) ASSERT_EQ(cs[i], (ca[i] + cb[i]) % m[i]) << d;
      }
    }
  }
}

TEST(Ring, RejectsMixedRings) {
  const auto a = Ring::parse("Z(2)"), b = Ring::parse("Z(3)");
  EXPECT_THROW(a->one() + b->one(), RingMismatch);
  EXPECT_THROW(character(a->one(), b->one()), RingMismatch);
}

TEST(Character, Examples) {
  const auto z2 = Ring::parse("Z(2)");
  EXPECT_EQ(character(z2->one(), z2->one()), Phase::fraction(1, 2));
  const auto z4 = Ring::parse("Z(4)");
  EXPECT_EQ(character(z4->element_at(3), z4->element_at(2)), Phase::fraction(1, 2));
  for (const auto& d : small_rings()) {
    const auto r = Ring::parse(d);
    for (std::uint32_t z = 0; z < r->size(); ++z) {
      EXPECT_TRUE(character(r->zero(), r->element_at(z)).is_zero()) << d;
    }
  }
}

TEST(Character, MatchesDefinitionOnCanonicalCoordinates) {
  for (const auto& d : small_rings()) {
    const auto r = Ring::parse(d);
    const auto m = r->moduli();
    for (std::uint32_t y = 0; y < r->size(); ++y) {
      for (std::uint32_t z = 0; z < r->size(); ++z) {
        const auto cy = r->coords(y), cz = r->coords(z);
        Phase expect;
        for (std::size_t i = 0; i < m.size(); ++i) {
          expect += Phase::fraction(static_cast<std::int64_t>(cy[i] * cz[i]), m[i]);
        }
        ASSERT_EQ(r->character(y, z), expect) << d;
      }
    }
  }
}

class CharacterProperties : public ::testing::TestWithParam<std::tuple<std::string, PhiChoice>> {};

TEST_P(CharacterProperties, SymmetricBiadditiveNondegenerate) {
  const auto [d, phi] = GetParam();
  const auto r = Ring::parse(d, phi);
  const std::uint32_t n = r->size();
  for (std::uint32_t y = 0; y < n; ++y) {
    bool witness = (y == 0);
    for (std::uint32_t z = 0; z < n; ++z) {
      ASSERT_EQ(r->character(y, z), r->character(z, y));
      witness = witness || !r->character(y, z).is_zero();
      for (std::uint32_t y2 = 0; y2 < n; ++y2) {
        ASSERT_EQ(r->character(r->add(y, y2), z), r->character(y, z) + r->character(y2, z));
      }
    }
    EXPECT_TRUE(witness) << d << " y=" << y;
  }
}

TEST_P(CharacterProperties, PhiIsAdditiveBijection) {
  const auto [d, phi] = GetParam();
  const auto r = Ring::parse(d, phi);
  const auto m = r->moduli();
  std::set<std::vector<std::uint32_t>> images;
  for (std::uint32_t a = 0; a < r->size(); ++a) {
    const auto pa = r->phi_coords(a);
    images.emplace(pa.begin(), pa.end());
    for (std::uint32_t b = 0; b < r->size(); ++b) {
      const auto pb = r->phi_coords(b), ps = r->phi_coords(r->add(a, b));
      for (std::size_t i = 0; i < m.size(); ++i) ASSERT_EQ(ps[i], (pa[i] + pb[i]) % m[i]);
    }
  }
  EXPECT_EQ(images.size(), r->size());
}

INSTANTIATE_TEST_SUITE_P(AllSmallRings, CharacterProperties,
                         ::testing::Combine(::testing::ValuesIn(small_rings()),
                                            ::testing::Values(PhiChoice::kCanonical,
                                                              PhiChoice::kAlternate)));

TEST(Character, AlternatePhiDiffersWhereAutomorphismsExist) {
  for (const char* d : {"GF(4)", "Z(5)", "Z(2)xZ(4)"}) {
    const auto a = Ring::parse(d), b = Ring::parse(d, PhiChoice::kAlternate);
    bool differs = false;
    for (std::uint32_t y = 0; y < a->size(); ++y) {
      for (std::uint32_t z = 0; z < a->size(); ++z) {
        differs = differs || a->character(y, z) != b->character(y, z);
      }
    }
    EXPECT_TRUE(differs) << d;
  }
  // Aut(Z_2) is trivial; on Z_3 the only unit squares to 1.
  const auto a = Ring::parse("Z(2)"), b = Ring::parse("Z(2)", PhiChoice::kAlternate);
  EXPECT_EQ(a->character(1, 1), b->character(1, 1));
}

TEST(VectorCharacter, Examples) {
  const auto z2 = Ring::parse("Z(2)");
  const RingVector y(*z2, {1, 0}), z(*z2, {1, 1}), w(*z2, {1, 1});
  EXPECT_EQ(vector_character(y, z), Phase::fraction(1, 2));
  EXPECT_TRUE(vector_character(w, z).is_zero());
  const auto z3 = Ring::parse("Z(3)");
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) {
      EXPECT_EQ(vector_character(RingVector(*z3, {a}), RingVector(*z3, {b})), z3->character(a, b));
    }
  }
  EXPECT_THROW(vector_character(y, RingVector(*z2, {1})), RingMismatch);
}

TEST(RingVector, LabelRoundTripMostSignificantFirst) {
  const auto r = Ring::parse("Z(3)");
  const auto v = RingVector::from_label(*r, 2, 5);
  EXPECT_EQ(v[0].index(), 1u);
  EXPECT_EQ(v[1].index(), 2u);
  EXPECT_EQ(v.label(), 5u);
}

TEST(MatVec, Examples) {
  const auto z2 = Ring::parse("Z(2)");
  const RingMatrix b(*z2, 2, {1, 1, 0, 1});
  EXPECT_EQ(mat_vec(b, RingVector(*z2, {1, 1})), RingVector(*z2, {0, 1}));
  const RingVector v(*z2, {1, 0});
  EXPECT_EQ(mat_vec(RingMatrix::identity(*z2, 2), v), v);
  EXPECT_TRUE(mat_vec(RingMatrix::zero(*z2, 2), v).is_zero());
  EXPECT_THROW(mat_vec(b, RingVector(*z2, {1})), RingMismatch);
}

TEST(MatVec, AdditiveOnRandomSamples) {
  std::mt19937_64 rng(11);
  for (const char* d : {"Z(6)", "GF(9)", "Z(2)xZ(4)"}) {
    const auto r = Ring::parse(d);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::uint32_t> e(9), u(3), v(3);
      for (auto& x : e) x = static_cast<std::uint32_t>(rng() % r->size());
      for (auto& x : u) x = static_cast<std::uint32_t>(rng() % r->size());
      for (auto& x : v) x = static_cast<std::uint32_t>(rng() % r->size());
      const RingMatrix b(*r, 3, e);
      const RingVector ru(*r, u), rv(*r, v);
      ASSERT_EQ(mat_vec(b, ru + rv), mat_vec(b, ru) + mat_vec(b, rv));
    }
  }
}

TEST(MatVec, LeftMultiplication) {
  const auto r = Ring::parse("Z(6)");
  const RingMatrix a(*r, 2, {1, 2, 3, 4}), b(*r, 2, {5, 0, 1, 1});
  const RingVector v(*r, {2, 5});
  EXPECT_EQ(mat_vec(a * b, v), mat_vec(a, mat_vec(b, v)));
}

}  // namespace
}  // namespace qnc

#include <gtest/gtest.h>

#include <cmath>

#include "ghzclass/states.hpp"
#include "test_support.hpp"

using namespace ghzclass;

TEST(CanonicalState, AcceptsNormalizedGhz) {
  const double r = 1 / std::sqrt(2.0);
  const CanonicalState s({r, 0, 0, 0, r}, 0.0);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(CanonicalState, RejectsOutOfRange) {
  EXPECT_THROW(CanonicalState({-0.1, 0, 0, 0, 1}, 0.0), InputError);
  EXPECT_THROW(CanonicalState({1.1, 0, 0, 0, 0}, 0.0), InputError);
  EXPECT_THROW(CanonicalState({0.6, 0, 0, 0, 0.8}, -0.1), InputError);
  EXPECT_THROW(CanonicalState({0.6, 0, 0, 0, 0.8}, 4.0), InputError);
  EXPECT_THROW(CanonicalState({std::nan(""), 0, 0, 0, 0.8}, 0.0), InputError);
}

TEST(CanonicalState, StrictAndRelaxedNormalization) {
  // Quoted parameters carry ~6 significant digits.
  const CanonicalState::Lambdas quoted{0.4, 0.911043, 0, 0, 0.1};
  EXPECT_THROW(CanonicalState(quoted, 0.0), InputError);
  const CanonicalState s(quoted, 0.0, NormPolicy::relaxed());
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
  EXPECT_NEAR(s[1], 0.911043, 1e-6);
  EXPECT_THROW(CanonicalState({0.5, 0.5, 0, 0, 0.5}, 0.0, NormPolicy::relaxed()), InputError);
}

TEST(StateVector, ToVectorPlacesAmplitudes) {
  const CanonicalState s({0.5, 0.5, 0.5, 0.1, std::sqrt(0.24)}, std::numbers::pi / 2);
  const StateVector v = to_vector(s);
  EXPECT_EQ(v[0], cplx(0.5));
  EXPECT_NEAR(std::abs(v[4] - cplx(0, 0.5)), 0.0, 1e-16);
  EXPECT_EQ(v[5], cplx(0.5));
  EXPECT_EQ(v[6], cplx(0.1));
  EXPECT_EQ(v[7], cplx(std::sqrt(0.24)));
  for (std::size_t i : {1, 2, 3}) EXPECT_EQ(v[i], cplx(0));
}

TEST(StateVector, RejectsUnnormalized) {
  StateVector::Amplitudes a{};
  a[0] = 1.0;
  a[1] = 1.0;
  EXPECT_THROW(StateVector{a}, InputError);
  const StateVector v = StateVector::normalized(a);
  EXPECT_NEAR(std::norm(v[0]) + std::norm(v[1]), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(StateVector::Amplitudes{}), InputError);
}

TEST(DensityMatrix, PureStateProperties) {
  const DensityMatrix rho = density(testing_support::random_vector());
  EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-14);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-13);
  EXPECT_LE(hermiticity_defect(rho.matrix()), 1e-15);
}

TEST(Subsystems, Parse) {
  EXPECT_EQ(Subsystems::parse("AB").mask, Subsystems::of({Qubit::A, Qubit::B}).mask);
  EXPECT_EQ(Subsystems::parse("ca").mask, Subsystems::of({Qubit::A, Qubit::C}).mask);
  EXPECT_THROW(Subsystems::parse("AD"), InputError);
  EXPECT_THROW(Subsystems::parse("AA"), InputError);
}

TEST(PartialTrace, GhzReducesToClassicalMixture) {
  const double r = 1 / std::sqrt(2.0);
  const DensityMatrix rho = density(CanonicalState({r, 0, 0, 0, r}, 0.0));
  const CMat2 a = reduced_single(rho, Qubit::A);
  EXPECT_NEAR(a(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(a(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(a(0, 1)), 0.0, 1e-15);
  const CMat4 ab = reduced_pair(rho, Qubit::A, Qubit::B);
  EXPECT_NEAR(ab(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(ab(3, 3).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(ab(0, 3)), 0.0, 1e-15);
}

TEST(PartialTrace, ProductStateFactors) {
  // |0>_A (x) |+>_B (x) |1>_C
  StateVector::Amplitudes amp{};
  const double r = 1 / std::sqrt(2.0);
  amp[1] = r;  // |001>
  amp[3] = r;  // |011>
  const DensityMatrix rho = density(StateVector(amp));
  const CMat2 b = reduced_single(rho, Qubit::B);
  EXPECT_NEAR(b(0, 1).real(), 0.5, 1e-15);
  const CMat2 c = reduced_single(rho, Qubit::C);
  EXPECT_NEAR(c(1, 1).real(), 1.0, 1e-15);
}

TEST(PartialTrace, RandomStatesStayConsistent) {
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix rho = density(testing_support::random_vector());
    const auto ab = partial_trace(rho, Subsystems::parse("AB"));
    const auto a = partial_trace(rho, Subsystems::parse("A"));
    EXPECT_EQ(ab.dim, 4u);
    EXPECT_NEAR(std::abs(ab.trace() - cplx(1)), 0.0, 1e-14);
    // Tracing B out of rho_AB gives rho_A.
    EXPECT_NEAR(std::abs(ab(0, 0) + ab(1, 1) - a(0, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ab(0, 2) + ab(1, 3) - a(0, 1)), 0.0, 1e-14);
    // Pure tripartite state: purity of A equals purity of BC.
    const CMat4 bc = reduced_pair(rho, Qubit::B, Qubit::C);
    const CMat2 ra = reduced_single(rho, Qubit::A);
    EXPECT_NEAR(trace_of_product(bc, bc).real(), trace_of_product(ra, ra).real(), 1e-13);
  }
}

TEST(PartialTrace, RejectsFullAndEmpty) {
  const DensityMatrix rho = density(testing_support::random_vector());
  EXPECT_THROW(partial_trace(rho, Subsystems::parse("ABC")), InputError);
  EXPECT_THROW(partial_trace(rho, Subsystems{}), InputError);
}

TEST(Subclass, StructuralTags) {
  EXPECT_EQ(structural_subclass(CanonicalState({0.6, 0, 0, 0, 0.8}, 0.0)).label(), "S1");
  EXPECT_EQ(structural_subclass(CanonicalState({0.6, 0.6, 0, 0, std::sqrt(0.28)}, 0.0)).label(), "S2(l1)");
  EXPECT_EQ(structural_subclass(CanonicalState({0.5, 0, 0.5, 0.5, 0.5}, 0.0)).label(), "S3(l2l3)");
  EXPECT_EQ(structural_subclass(CanonicalState({0.4, 0.4, 0.4, 0.4, std::sqrt(0.36)}, 0.0)).subclass(), Subclass::S4);
  EXPECT_THROW(structural_subclass(CanonicalState({1, 0, 0, 0, 0}, 0.0)), InputError);
}

#include <gtest/gtest.h>

#include <cmath>

#include "linerkit/types.hpp"

using namespace linerkit;

namespace {

LinerGeometry dc006() { return LinerGeometry{}; }

}  // namespace

TEST(Porosity, Dc006StarValue) {
    // sigma = pi d^2/(4 delta^2) = pi/289 for d=1mm, delta=8.5mm
    EXPECT_NEAR(porosity(dc006()), 0.0108706, 1e-6);
}

TEST(Porosity, HandComputedCase) {
    LinerGeometry g = dc006();
    g.delta = 10e-3;
    g.d_ap = 2e-3;
    EXPECT_NEAR(porosity(g), 0.0314159, 1e-6);
}

TEST(Porosity, ScaleInvariance) {
    LinerGeometry g = dc006();
    const double base = porosity(g);
    for (double s : {0.1, 3.0, 42.0}) {
        LinerGeometry scaled = g;
        scaled.delta *= s;
        scaled.d_ap *= s;
        scaled.h_ap *= s;
        scaled.L *= s;
        EXPECT_NEAR(porosity(scaled), base, 1e-12);
    }
}

TEST(Porosity, GeometricLimitRejected) {
    // sigma = 1 would need pi d^2/4 = delta^2 > a_C delta^2
    LinerGeometry g = dc006();
    g.delta = g.d_ap * std::sqrt(kPi) / 2.0;
    EXPECT_THROW(porosity(g), ConfigError);
}

TEST(GeometryInvariants, ApertureMustFitChamber) {
    LinerGeometry g = dc006();
    g.d_ap = 9.2e-3;  // pi d^2/4 exceeds a_C delta^2
    EXPECT_THROW(g.validate(), ConfigError);
    g = dc006();
    g.a_C = 1.0;
    EXPECT_THROW(g.validate(), ConfigError);
    g = dc006();
    g.a_C = 0.0001;  // aperture no longer fits
    EXPECT_THROW(g.validate(), ConfigError);
}

TEST(EndCorrection, MorseValue) {
    EXPECT_NEAR(end_correction(dc006(), EndCorrection::morse()), 0.84883e-3, 1e-7);
}

TEST(EndCorrection, MorseLinearInDiameter) {
    LinerGeometry g = dc006();
    const double base = end_correction(g, EndCorrection::morse());
    g.d_ap = 2e-3;
    EXPECT_NEAR(end_correction(g, EndCorrection::morse()), 2.0 * base, 1e-15);
}

TEST(EndCorrection, IngardTwoTerm) {
    EXPECT_NEAR(end_correction(dc006(), EndCorrection::ingard_two_term()), 0.7206e-3, 1e-6);
}

TEST(EndCorrection, IngardRejectsOutOfRange) {
    // porosity large enough to drive the two-term correction negative
    LinerGeometry g = dc006();
    g.delta = 1.05e-3;
    g.a_C = 0.9;
    ASSERT_NO_THROW(g.validate());
    EXPECT_THROW(end_correction(g, EndCorrection::ingard_two_term()), NumericalError);
}

TEST(EndCorrection, UserValuePassthrough) {
    EXPECT_DOUBLE_EQ(end_correction(dc006(), EndCorrection::user(0.709e-3)), 0.709e-3);
    EXPECT_THROW(end_correction(dc006(), EndCorrection::user(-1.0)), ConfigError);
}

TEST(PoleFrequencies, ReferenceValues) {
    const GasParameters gas;
    const auto p100 = pole_frequencies(dc006(), gas, 4000.0);
    ASSERT_EQ(p100.size(), 2u);
    EXPECT_DOUBLE_EQ(p100[0], 1702.25);
    EXPECT_DOUBLE_EQ(p100[1], 3404.5);

    const auto p200 = pole_frequencies(dc006().with_depth(0.2), gas, 1000.0);
    ASSERT_EQ(p200.size(), 1u);
    EXPECT_DOUBLE_EQ(p200[0], 851.125);
}

TEST(PoleFrequencies, EmptyBelowFirstPole) {
    const GasParameters gas;
    EXPECT_TRUE(pole_frequencies(dc006(), gas, 1000.0).empty());
}

TEST(PoleFrequencies, HalveWhenDepthDoubles) {
    const GasParameters gas;
    const auto p1 = pole_frequencies(dc006(), gas, 12000.0);
    const auto p2 = pole_frequencies(dc006().with_depth(0.2), gas, 12000.0);
    ASSERT_GE(p2.size(), p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) EXPECT_DOUBLE_EQ(p2[2 * i + 1], p1[i]);
    EXPECT_DOUBLE_EQ(p2[0], 0.5 * p1[0]);
}

TEST(EffectiveFromSingleHole, DividesByCellArea) {
    const Complex K_R(1e-3, -0.2e-3);
    const Complex k_R = effective_from_single_hole(K_R, dc006());
    EXPECT_NEAR(k_R.real(), 13.8408, 1e-3);
    EXPECT_NEAR(k_R.imag(), -2.76817, 1e-4);
}

TEST(EffectiveFromSingleHole, ClassicalRayleighValue) {
    // zero-thickness inviscid aperture: K_R = d
    const Complex k_R = effective_from_single_hole(Complex(1e-3, 0.0), dc006());
    EXPECT_NEAR(k_R.real(), 13.8408, 1e-3);
    EXPECT_DOUBLE_EQ(k_R.imag(), 0.0);
}

TEST(EffectiveFromSingleHole, RejectsNonFinite) {
    EXPECT_THROW(
        effective_from_single_hole(Complex(std::nan(""), 0.0), dc006()), NumericalError);
}

TEST(Frequency, Conversions) {
    const Frequency f = Frequency::from_hz(1000.0);
    EXPECT_NEAR(f.omega, 6283.185307, 1e-5);
    const Frequency g = Frequency::from_omega(f.omega);
    EXPECT_NEAR(g.f, 1000.0, 1e-12);
    EXPECT_THROW(Frequency::from_hz(0.0), ConfigError);
    EXPECT_THROW(Frequency::from_hz(-3.0), ConfigError);
}

TEST(GasParameters, Validation) {
    GasParameters gas;
    EXPECT_NO_THROW(gas.validate());
    gas.nu = 0.0;
    EXPECT_THROW(gas.validate(), ConfigError);
}

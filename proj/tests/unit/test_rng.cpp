#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <thread>
#include <vector>

#include "itolab/errors.hpp"
#include "itolab/rng.hpp"
#include "itolab/stats.hpp"

using namespace itolab;

namespace {

std::vector<double> normals(std::uint64_t seed, std::uint64_t id, std::size_t n) {
    RngStream s(seed, id);
    std::vector<double> out(n);
    for (auto& v : out) v = s.standard_normal();
    return out;
}

}  // namespace

TEST(Rng, SameSeedAndStreamRepeat) {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    EXPECT_EQ(normals(3, 9, 500), normals(3, 9, 500));
}

TEST(Rng, RepeatsAcrossThreads) {
    const auto reference = normals(11, 4, 2000);
    std::vector<double> other;
    std::thread t([&] { other = normals(11, 4, 2000); });
    t.join();
    EXPECT_EQ(reference, other);
}

TEST(Rng, StreamKeysDiffer) {
    std::set<std::uint64_t> keys;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        for (std::uint64_t id = 0; id < 128; ++id) keys.insert(stream_key(seed, id));
    }
    EXPECT_EQ(keys.size(), 8u * 128u);
}

TEST(Rng, DistinctStreamsUncorrelated) {
    const std::size_t n = 100000;
    const auto a = normals(5, 0, n);
    const auto b = normals(5, 1, n);
    EXPECT_LE(std::fabs(sample_correlation(a, b)), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Rng, UniformInUnitInterval) {
    RngStream s(1, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Var(U) = 1/12
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Gaussian, ZeroStdReturnsMean) {
    RngStream s(1, 2);
    EXPECT_EQ(gaussian(s, 5.0, 0.0), 5.0);
    EXPECT_EQ(gaussian(s, -1.25, 0.0), -1.25);
}

TEST(Gaussian, ZeroStdStillConsumesADraw) {
    RngStream a(8, 0);
    RngStream b(8, 0);
    gaussian(a, 0.0, 0.0);
    b.standard_normal();
    EXPECT_EQ(a.standard_normal(), b.standard_normal());
}

TEST(Gaussian, NegativeStdThrows) {
    RngStream s(1, 2);
    EXPECT_THROW(gaussian(s, 0.0, -1.0), InvalidParameter);
}

TEST(Gaussian, SampleMoments) {
    const std::size_t n = 100000;
    RngStream s(2024, 0);
    RunningStats st;
    for (std::size_t i = 0; i < n; ++i) st.push(gaussian(s, 0.0, 1.0));
    EXPECT_LE(std::fabs(st.mean()), 4.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(st.variance(), 1.0, 0.02);
}

TEST(Gaussian, ShiftAndScale) {
    RngStream a(77, 3);
    RngStream b(77, 3);
    for (int i = 0; i < 100; ++i) {
        const double z = a.standard_normal();
        EXPECT_DOUBLE_EQ(gaussian(b, 2.0, 3.0), 2.0 + 3.0 * z);
    }
}

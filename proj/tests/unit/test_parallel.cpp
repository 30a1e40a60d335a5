#include <gtest/gtest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "itolab/parallel.hpp"

using namespace itolab;

TEST(ParallelFor, VisitsEveryIndexOnce) {
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
        for (int h : hits) ASSERT_EQ(h, 1);
    }
}

TEST(ParallelFor, EmptyRange) {
    bool called = false;
    parallel_for(0, 4, [&](std::size_t) { called = true; });
    EXPECT_FALSE(called);
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
    for (unsigned workers : {1u, 2u, 4u, 7u}) {
        try {
            parallel_for(100, workers, [](std::size_t i) {
                if (i == 37 || i == 38 || i == 90) throw std::runtime_error(std::to_string(i));
            });
            FAIL() << "expected an exception";
        } catch (const std::runtime_error& e) {
            EXPECT_EQ(std::string(e.what()), "37") << "workers=" << workers;
        }
    }
}

TEST(ParallelFor, ResolveWorkers) {
    EXPECT_EQ(resolve_workers(3), 3u);
    EXPECT_GE(resolve_workers(0), 1u);
}

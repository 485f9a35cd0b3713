#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>

namespace {

std::uint64_t g_seed = 20240611;

}  // namespace

std::uint64_t cpa::testing::seed() {
    return g_seed;
}

int main(int argc, char** argv) {
    if (const char* env = std::getenv("CPA_SEED")) g_seed = std::strtoull(env, nullptr, 10);
    ::testing::InitGoogleTest(&argc, argv);
    for (int i = 1; i < argc; ++i)
        if (std::strncmp(argv[i], "--seed=", 7) == 0) g_seed = std::strtoull(argv[i] + 7, nullptr, 10);
    std::printf("seed %llu\n", static_cast<unsigned long long>(g_seed));
    return RUN_ALL_TESTS();
}

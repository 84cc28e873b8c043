#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace hyperroot::testing {

// Deterministic RNG for property tests.  Override the default seed with the
// HYPERROOT_TEST_SEED environment variable to reproduce a failing run.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen = [] {
        std::uint64_t seed = 20240823;
        if (const char* s = std::getenv("HYPERROOT_TEST_SEED")) seed = std::stoull(s);
        return std::mt19937_64(seed);
    }();
    return gen;
}

inline long long rand_int(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

// Scratch directory removed on scope exit.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hyperroot-test-" + std::to_string(rand_int(0, 999999999)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace hyperroot::testing

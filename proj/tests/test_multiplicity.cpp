#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperroot/multiplicity.hpp"
#include "support.hpp"

using namespace hyperroot;

namespace {

// Every nonzero vector in the positive cone of the given height.
std::vector<RootVector> compositions(int rank, long long h) {
    std::vector<RootVector> out;
    RootVector v(rank, 0);
    v[rank - 1] = h;
    while (true) {
        out.push_back(v);
        int j = rank - 1;
        while (j > 0 && v[j] == 0) --j;
        if (j == 0) break;
        long long moved = v[j];
        v[j] = 0;
        v[j - 1] += 1;
        v[rank - 1] = moved - 1;
    }
    return out;
}

std::map<RootVector, Int> positive_entries(const MultTable& t, long long maxh) {
    std::map<RootVector, Int> out;
    for (const auto& [v, m] : t.entries)
        if (m > 0 && height(v) <= maxh) out.emplace(v, m);
    return out;
}

using testing::TempDir;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

}  // namespace

TEST_CASE("hand-checked multiplicities for the (-3,-3) rank-2 matrix") {
    GCM g = validate_gcm({{2, -3}, {-3, 2}});
    RootVector alpha{4, 5};
    CHECK(mult_peterson(g, alpha) == 9);
    CHECK(mult_berman_moody(g, alpha) == 9);
    PetersonReference ref(g);
    CHECK(ref.mult(alpha) == 9);
    // Simple roots and their images stay multiplicity 1.
    CHECK(mult_peterson(g, {1, 0}) == 1);
    CHECK(mult_peterson(g, {3, 1}) == 1);  // reflection of (0,1) at node 1
    // Multiples of a simple root are never roots.
    CHECK(mult_peterson(g, {2, 0}) == 0);
    CHECK(mult_berman_moody(g, {2, 0}) == 0);
}

TEST_CASE("affine null roots have multiplicity = rank of the finite part") {
    GCM a1 = validate_gcm({{2, -2}, {-2, 2}});
    PetersonEngine eng(a1);
    for (long long k = 1; k <= 4; ++k) {
        CHECK(eng.mult({k, k}) == 1);
        // delta + alpha_i is real again
        CHECK(eng.mult({k, k - 1}) == 1);
        CHECK(eng.mult({k - 1, k}) == 1);
    }
    GCM a2 = validate_gcm({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
    PetersonEngine eng2(a2);
    CHECK(eng2.mult({1, 1, 1}) == 2);
    CHECK(eng2.mult({2, 2, 2}) == 2);
    CHECK(eng2.mult({1, 1, 0}) == 1);
    CHECK(eng2.mult({2, 1, 1}) == 1);
    CHECK(eng2.mult({2, 1, 0}) == 0);
}

TEST_CASE("parallel engine, serial reference and closed form agree") {
    for (const auto& m : {IntMatrix{{2, -3}, {-3, 2}}, IntMatrix{{2, -2}, {-2, 2}},
                          preset("F").a}) {
        GCM g = validate_gcm(m);
        const long long H = 8;
        PetersonEngine eng(g);
        eng.extend_to(H);
        PetersonReference ref(g);
        ref.extend_to(H);
        std::map<RootVector, Int> expect;
        for (const auto& [v, mm] : ref.mults())
            if (height(v) <= H) expect.emplace(v, mm);
        CHECK(positive_entries(eng.table(), H) == expect);
        // Closed form on every lattice vector (roots and non-roots alike).
        for (long long h = 1; h <= 5; ++h)
            for (const auto& v : compositions(g.rank(), h)) {
                CAPTURE(root_to_text(v));
                CHECK(mult_berman_moody(g, v) == eng.mult(v));
            }
    }
}

TEST_CASE("classification and multiplicity are consistent") {
    GCM f = preset("F");
    PetersonEngine eng(f);
    eng.extend_to(8);
    for (long long h = 1; h <= 8; ++h)
        for (const auto& v : compositions(3, h)) {
            CAPTURE(root_to_text(v));
            Int m = eng.mult(v);
            switch (classify_vector(f, v)) {
                case RootKind::Real: CHECK(m == 1); break;
                case RootKind::Imaginary: CHECK(m >= 1); break;
                case RootKind::NonRoot: CHECK(m == 0); break;
            }
            CHECK(m <= coarse_bound(f, v));
        }
}

TEST_CASE("vanishing divisor at a non-root resolves to zero") {
    // (beta|beta) - 2(rho|beta) = 0 at these vectors, and the convolution
    // side vanishes too; the recursion must conclude multiplicity 0 rather
    // than fail.
    CHECK(mult_peterson(preset("F"), {1, 0, 1}) == 0);
    CHECK(mult_peterson(validate_gcm({{2, -3}, {-3, 2}}), {4, 1}) == 0);
}

TEST_CASE("multiplicities are Weyl invariant") {
    GCM f = preset("F");
    PetersonEngine eng(f);
    eng.extend_to(9);
    std::vector<RootVector> roots;
    for (long long h = 1; h <= 9; ++h)
        for (const auto& r : eng.roots_of_height(h)) roots.push_back(r);
    for (int trial = 0; trial < 40; ++trial) {
        const RootVector& r = roots[testing::rand_int(0, roots.size() - 1)];
        RootVector image = r;
        for (int step = 0; step < 4; ++step)
            image = reflect(f, static_cast<int>(testing::rand_int(0, 2)), image);
        if (!in_positive_cone(image) || height(image) > 14) continue;
        CAPTURE(root_to_text(r));
        CAPTURE(root_to_text(image));
        CHECK(eng.mult(image) == eng.mult(r));
    }
}

TEST_CASE("strictly hyperbolic growth: a deep multiplicity") {
    GCM f = preset("F");
    PetersonEngine eng(f);
    CHECK(eng.mult({7, 7, 2}) == 56);
    CHECK(mult_berman_moody(f, {7, 7, 2}) == 56);
}

TEST_CASE("denominator identity holds through height 8") {
    for (const auto& m : {IntMatrix{{2, -3}, {-3, 2}}, IntMatrix{{2, -2}, {-2, 2}},
                          preset("F").a}) {
        GCM g = validate_gcm(m);
        DenominatorReport rep = verify_denominator_identity(g, 8);
        CAPTURE(g.to_text());
        CHECK(rep.ok());
        CHECK(rep.height_bound == 8);
        CHECK(rep.product_terms > 1);
        CHECK(rep.sum_terms > 1);
    }
}

TEST_CASE("lattice series arithmetic") {
    LatticeSeries one = LatticeSeries::one(2, 6);
    CHECK(one.coefficient({0, 0}) == 1);
    CHECK(one * one == one);
    LatticeSeries s = one;
    s.multiply_binomial({1, 0}, 2);  // (1 - e(-a))^2
    CHECK(s.coefficient({1, 0}) == -2);
    CHECK(s.coefficient({2, 0}) == 1);
    CHECK(s.coefficient({3, 0}) == 0);
    LatticeSeries t = LatticeSeries::one(2, 6);
    t.multiply_binomial({1, 0}, 1);
    t.multiply_binomial({1, 0}, 1);
    CHECK(s == t);
    // Truncation: heights beyond the bound vanish.
    LatticeSeries u = LatticeSeries::one(2, 3);
    u.multiply_binomial({1, 1}, 3);
    CHECK(u.coefficient({1, 1}) == -3);
    CHECK(u.coefficient({2, 2}) == 0);
    CHECK_THROWS_AS(u.add_term({-1, 0}, 1), DomainError);
    CHECK_THROWS_AS(u.add_term({0, 0, 0}, 1), DomainError);
}

TEST_CASE("thread count does not change the table") {
    GCM f = preset("F");
    PetersonOptions one_thread;
    one_thread.threads = 1;
    PetersonOptions four_threads;
    four_threads.threads = 4;
    PetersonEngine a(f, one_thread), b(f, four_threads);
    a.extend_to(12);
    b.extend_to(12);
    CHECK(a.table().entries == b.table().entries);
    CHECK(a.table().to_json() == b.table().to_json());
}

TEST_CASE("engine preconditions") {
    CHECK_THROWS_AS(PetersonEngine(validate_gcm({{2, 0}, {0, 2}})), DomainError);
    CHECK_THROWS_AS(mult_berman_moody(validate_gcm({{2, 0}, {0, 2}}), {1, 1}), DomainError);
    GCM cycle = validate_gcm({{2, -1, -2}, {-2, 2, -1}, {-1, -2, 2}});
    CHECK_THROWS_AS(PetersonEngine{cycle}, NotSymmetrizableError);
    CHECK_THROWS_AS(mult_berman_moody(cycle, {1, 1, 1}), NotSymmetrizableError);
    GCM g = validate_gcm({{2, -3}, {-3, 2}});
    PetersonEngine eng(g);
    CHECK_THROWS_AS(eng.mult({1, 2, 3}), DomainError);
    CHECK_THROWS_AS(eng.mult({-1, 2}), DomainError);
    CHECK_THROWS_AS(mult_berman_moody(g, {-1, 2}), DomainError);
    CHECK_THROWS_AS(eng.roots_of_height(99), DomainError);
}

TEST_CASE("table JSON round trip") {
    GCM g = validate_gcm({{2, -3}, {-3, 2}});
    PetersonEngine eng(g);
    eng.extend_to(6);
    eng.mult({2, 0});  // force an explicit zero into the table
    const MultTable& t = eng.table();
    MultTable back = MultTable::from_json(t.to_json());
    CHECK(back.gcm_id == t.gcm_id);
    CHECK(back.matrix == t.matrix);
    CHECK(back.frontier == t.frontier);
    CHECK(back.entries == t.entries);
    CHECK(back.entries.at({2, 0}) == 0);
    CHECK_THROWS_AS(MultTable::from_json("neither json nor table"), CacheError);
    CHECK_THROWS_AS(MultTable::from_json("{\"version\": 7}"), CacheError);
}

TEST_CASE("cache round trip and warm start") {
    TempDir tmp;
    GCM f = preset("F");
    PetersonOptions opt;
    opt.cache_dir = tmp.path.string();
    {
        PetersonEngine warm(f, opt);
        CHECK(warm.cache_warning().empty());
        warm.extend_to(6);
    }
    std::filesystem::path file = tmp.path / (f.content_hash() + ".json");
    CHECK(std::filesystem::exists(file));
    PetersonEngine reloaded(f, opt);
    CHECK(reloaded.cache_warning().empty());
    CHECK(reloaded.table().frontier == 6);
    PetersonEngine fresh(f);
    fresh.extend_to(9);
    reloaded.extend_to(9);  // warm start past the cached frontier
    CHECK(positive_entries(reloaded.table(), 9) == positive_entries(fresh.table(), 9));
}

TEST_CASE("damaged caches are rejected and recomputed") {
    TempDir tmp;
    GCM g = validate_gcm({{2, -3}, {-3, 2}});
    PetersonOptions opt;
    opt.cache_dir = tmp.path.string();
    {
        PetersonEngine seed(g, opt);
        seed.extend_to(6);
    }
    std::filesystem::path file = tmp.path / (g.content_hash() + ".json");
    const std::string good = slurp(file);
    PetersonEngine fresh(g);
    fresh.extend_to(6);

    SUBCASE("unparseable file") {
        spit(file, "{{{ definitely not json");
        PetersonEngine eng(g, opt);
        CHECK(!eng.cache_warning().empty());
        eng.extend_to(6);
        CHECK(positive_entries(eng.table(), 6) == positive_entries(fresh.table(), 6));
    }
    SUBCASE("missing shell") {
        auto j = nlohmann::json::parse(good);
        nlohmann::json kept = nlohmann::json::array();
        for (const auto& row : j["entries"]) {
            RootVector v = row[0].get<RootVector>();
            if (height(v) != 3) kept.push_back(row);
        }
        j["entries"] = kept;
        spit(file, j.dump());
        PetersonEngine eng(g, opt);
        CHECK(!eng.cache_warning().empty());
        CHECK(eng.table().frontier == 0);
        eng.extend_to(6);
        CHECK(positive_entries(eng.table(), 6) == positive_entries(fresh.table(), 6));
    }
    SUBCASE("frontier beyond the stored shells") {
        auto j = nlohmann::json::parse(good);
        j["frontier"] = 99;
        spit(file, j.dump());
        PetersonEngine eng(g, opt);
        CHECK(eng.cache_warning().find("clamped") != std::string::npos);
        CHECK(eng.table().frontier == 6);
        eng.extend_to(8);
        PetersonEngine deep(g);
        deep.extend_to(8);
        CHECK(positive_entries(eng.table(), 8) == positive_entries(deep.table(), 8));
    }
    SUBCASE("file for a different matrix") {
        GCM other = validate_gcm({{2, -2}, {-2, 2}});
        spit(tmp.path / (other.content_hash() + ".json"), good);
        PetersonEngine eng(other, opt);
        CHECK(!eng.cache_warning().empty());
        CHECK(eng.mult({1, 1}) == 1);
    }
}

TEST_CASE("closed form knapsack stays exact on larger inputs") {
    // Cross-engine agreement on a taller slice than the exhaustive sweep.
    GCM g = validate_gcm({{2, -3}, {-3, 2}});
    PetersonEngine eng(g);
    for (const RootVector& v : {RootVector{5, 6}, RootVector{6, 6}, RootVector{7, 5}}) {
        CAPTURE(root_to_text(v));
        CHECK(mult_berman_moody(g, v) == eng.mult(v));
    }
}

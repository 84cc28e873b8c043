#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "hyperroot/bounds.hpp"
#include "support.hpp"

using namespace hyperroot;

TEST_CASE("partition bound values") {
    GCM f = preset("F");
    CHECK(frenkel_bound(f, {7, 7, 2}) == 56);        // p(11)
    CHECK(frenkel_bound(f, {10, 10, 5}) == 2436);    // p(26)
    CHECK(frenkel_bound(f, {11, 14, 7}) == 44583);   // p(41)
    CHECK(frenkel_bound(f, {1, 0, 0}) == 1);         // real root: argument 0
    CHECK(frenkel_bound(f, {0, 1, 0}) == 1);
    // Explicit lattice-dimension override switches the color count.
    CHECK(frenkel_bound(f, {7, 7, 2}, 10) == colored_partitions(8, 11)[11]);
}

TEST_CASE("partition bound preconditions") {
    CHECK_THROWS_AS(frenkel_bound(validate_gcm({{2, -3}, {-3, 2}}), {4, 5}), DomainError);
    CHECK_NOTHROW(frenkel_bound(validate_gcm({{2, -3}, {-3, 2}}), {4, 5}, 3));
    CHECK_THROWS_AS(frenkel_bound(validate_gcm({{2, -2}, {-1, 2}}), {1, 1}, 3), WrongTypeError);
    // 2 * simple root: norm 8, argument -3.
    CHECK_THROWS_AS(frenkel_bound(preset("F"), {2, 0, 0}), OddNormError);
}

TEST_CASE("difference bound values") {
    GCM f = preset("F");
    CHECK(borcherds_bound(f, {2, 2, 1}) == 3);   // norm -2: p2(2) - p2(1) = 5 - 2
    CHECK(borcherds_bound(f, {1, 1, 1}) == 1);   // norm 0: p2(1) - p2(0) = d - 2
    CHECK(borcherds_bound(f, {7, 7, 2}) == 271);  // p2(11) - p2(10) = 752 - 481
    CHECK(borcherds_bound(f, {7, 7, 2}) >= 56);
    CHECK_THROWS_AS(borcherds_bound(f, {1, 0, 0}), DomainError);  // positive norm
    // Norm 0 with an overridden lattice dimension: still d - 2.
    CHECK(borcherds_bound(f, {1, 1, 1}, 10) == 8);
}

TEST_CASE("eta-quotient bound values") {
    GCM f = preset("F");
    CHECK(niemann_bound(f, {7, 7, 2}) == 56);      // argument 11 < 23: equals p
    CHECK(niemann_bound(f, {10, 10, 5}) == 2439);  // p_sigma(26) = p(26) + p(3)
    CHECK(niemann_bound(f, {11, 11, 4}) == 4576);  // norm -56, argument 29
    CHECK(niemann_bound(f, {1, 0, 0}) == 1);
    CHECK_THROWS_AS(niemann_bound(preset("E10"), RootVector(10, 1)), WrongAlgebraError);
    CHECK_THROWS_AS(niemann_bound(validate_gcm({{2, -2}, {-2, 2}}), {1, 1}), WrongAlgebraError);
    CHECK(niemann_second_branch_possible(-46));
    CHECK(niemann_second_branch_possible(0));
    CHECK(!niemann_second_branch_possible(-20));
}

TEST_CASE("eta-quotient bound dominates the partition bound from 23 on") {
    // Series-level form of the comparison: p_sigma(n) >= p(n), equal
    // exactly when n < 23.
    PowerSeries ps = p_sigma_series(40), p = colored_partitions(1, 40);
    for (int n = 0; n <= 40; ++n) {
        CAPTURE(n);
        CHECK(ps[n] >= p[n]);
        CHECK((ps[n] == p[n]) == (n < 23));
    }
    GCM f = preset("F");
    for (const RootVector& v : {RootVector{7, 7, 2}, RootVector{2, 2, 1}, RootVector{1, 1, 1}})
        CHECK(niemann_bound(f, v) >= frenkel_bound(f, v));
}

TEST_CASE("bound report finds no violations for the rank-3 algebra") {
    GCM f = preset("F");
    BoundReport rep = check_frenkel(f, 12);
    CHECK(rep.d == 3);
    CHECK(rep.height_bound == 12);
    CHECK(rep.violations == 0);
    CHECK(rep.saturations >= 1);
    CHECK(!rep.rows.empty());
    long long prev_h = 0;
    RootVector prev;
    for (const BoundRow& row : rep.rows) {
        CAPTURE(root_to_text(row.alpha));
        CHECK(row.norm <= 0);
        CHECK(row.mult >= 1);
        CHECK(row.mult <= row.frenkel);
        CHECK(row.mult <= row.borcherds);
        REQUIRE(row.niemann.has_value());
        CHECK(row.mult <= *row.niemann);
        CHECK(row.saturated == (row.mult == row.frenkel));
        CHECK(row.violated == (row.mult > row.frenkel));
        CHECK(row.second_branch_possible == (row.norm % 46 == 0));
        // level-1 roots saturate the partition bound exactly
        if (row.alpha[2] == 1) CHECK(row.saturated);
        long long h = height(row.alpha);
        CHECK(h >= prev_h);
        if (h == prev_h) CHECK(prev < row.alpha);
        prev_h = h;
        prev = row.alpha;
    }
    std::size_t sat = 0, vio = 0;
    for (const BoundRow& row : rep.rows) {
        sat += row.saturated;
        vio += row.violated;
    }
    CHECK(rep.saturations == sat);
    CHECK(rep.violations == vio);
}

TEST_CASE("bound report on other algebras") {
    BoundReport rep = check_frenkel(preset("E10"), 6);
    CHECK(rep.d == 10);
    CHECK(rep.violations == 0);
    for (const BoundRow& row : rep.rows) CHECK(!row.niemann.has_value());
    // Default d equals the rank, which fails the d >= 3 precondition here.
    CHECK_THROWS_AS(check_frenkel(validate_gcm({{2, -3}, {-3, 2}}), 8), DomainError);
    CHECK_NOTHROW(check_frenkel(validate_gcm({{2, -3}, {-3, 2}}), 8, 3));
}

TEST_CASE("series-level failure of the partition bound for E10") {
    // At the level-2 argument 6 the exact generating function exceeds the
    // 8-color partition count by exactly one.
    PowerSeries xi = xi_series(6);
    PowerSeries p8 = colored_partitions(8, 4);
    CHECK(p8[4] == 726);
    CHECK(xi[6] == 727);
    CHECK(xi[6] == p8[4] + 1);
}

TEST_CASE("bound report serialization") {
    GCM f = preset("F");
    BoundReport rep = check_frenkel(f, 8);
    std::string csv = rep.to_csv();
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "alpha,norm,mult,frenkel,borcherds,niemann,saturated,violated");
    std::size_t count = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++count;
    CHECK(count == rep.rows.size());
    CHECK(csv.find("\"(1,1,1)\"") != std::string::npos);

    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["gcm_hash"] == f.content_hash());
    CHECK(j["d"] == 3);
    CHECK(j["violations"] == 0);
    CHECK(j["rows"].size() == rep.rows.size());
    CHECK(j["rows"][0]["alpha"].is_array());
    CHECK(j["rows"][0]["mult"].is_string());
    // Same report twice is byte-identical.
    CHECK(rep.to_json() == check_frenkel(f, 8).to_json());
}

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dowq/isomorphism.hpp"

using namespace dowq;

namespace {

FinitePoset chain(int n) {
    std::vector<std::string> keys;
    std::vector<std::pair<int, int>> cov;
    for (int i = 0; i < n; ++i) {
        keys.push_back("c" + std::to_string(i));
        if (i) cov.push_back({i - 1, i});
    }
    return FinitePoset::from_covers(keys, cov);
}

}  // namespace

TEST_CASE("identity and trivial rejections") {
    FinitePoset c = chain(3);
    IsoResult r = find_isomorphism(c, c);
    REQUIRE(r.found());
    for (int i = 0; i < 3; ++i) CHECK(r.mapping[i] == i);

    std::vector<std::string> keys{"a", "b", "c"};
    FinitePoset anti = FinitePoset::from_covers(keys, {});
    CHECK(find_isomorphism(c, anti).status == IsoResult::Status::None);
    CHECK(find_isomorphism(c, chain(4)).status == IsoResult::Status::None);
}

TEST_CASE("shuffled relabelings are found") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 10;
        std::vector<std::pair<int, int>> rel;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (U(rng) < 0.3) rel.push_back({i, j});
        std::vector<std::string> keys;
        for (int i = 0; i < n; ++i) keys.push_back("p" + std::to_string(i));
        FinitePoset p = FinitePoset::from_covers(keys, rel);

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::string> qkeys(n);
        for (int i = 0; i < n; ++i) qkeys[perm[i]] = "q" + std::to_string(perm[i]);
        std::vector<std::pair<int, int>> qrel;
        for (auto [a, b] : rel) qrel.push_back({perm[a], perm[b]});
        FinitePoset q = FinitePoset::from_covers(qkeys, qrel);

        IsoResult r = find_isomorphism(p, q);
        REQUIRE(r.found());
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) CHECK(p.leq(x, y) == q.leq(r.mapping[x], r.mapping[y]));
    }
}

TEST_CASE("same profile, different posets") {
    // two rank-2 posets on 6 elements with equal rank sizes but different
    // cover structure: 2 atoms / 2 coatoms crosswise vs nested
    FinitePoset p = FinitePoset::from_covers({"0", "a", "b", "x", "y", "1"},
                                             {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
    FinitePoset q = FinitePoset::from_covers({"0", "a", "b", "x", "y", "1"},
                                             {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
    CHECK(find_isomorphism(p, q).found());
    FinitePoset q2 = FinitePoset::from_covers({"0", "a", "b", "x", "y", "1"},
                                              {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {1, 4}, {3, 5}, {4, 5}});
    CHECK_FALSE(find_isomorphism(p, q2).found());
}

TEST_CASE("tiny budget reports inconclusive") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    int n = 30;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (U(rng) < 0.1) rel.push_back({i, j});
    std::vector<std::string> keys;
    for (int i = 0; i < n; ++i) keys.push_back("k" + std::to_string(i));
    FinitePoset p = FinitePoset::from_covers(keys, rel);
    IsoResult r = find_isomorphism(p, p, /*node_budget=*/3);
    CHECK(r.status == IsoResult::Status::Inconclusive);
}

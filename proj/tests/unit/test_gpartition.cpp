#include <doctest.h>

#include <map>
#include <queue>
#include <random>
#include <set>

#include "dowq/family.hpp"
#include "dowq/gpartition.hpp"

using namespace dowq;

TEST_CASE("canonicalize shifts labels and sorts blocks") {
    // ({}, [({1,2}, {1->3, 2->5})]) mod 6 -> labels {1->0, 2->2}
    GPartition g = canonicalize(2, 6, {}, {{{0, 1}, {3, 5}}});
    CHECK(g.blocks.size() == 1);
    CHECK(g.blocks[0].labels == std::vector<int>{0, 2});
    CHECK(canonical_key(g) == "I={}|B={1:0,2:2}");

    // ({3}, [({1}, {1->4})]) mod 5 -> label 0
    GPartition h = canonicalize(2, 5, {1}, {{{0}, {4}}});
    CHECK(h.blocks[0].labels == std::vector<int>{0});
    CHECK(h.zero_block == std::vector<int>{1});

    // equivalent raws canonicalize identically
    GPartition a = canonicalize(4, 3, {3}, {{{0, 2}, {1, 2}}, {{1}, {2}}});
    GPartition b = canonicalize(4, 3, {3}, {{{2, 0}, {0, 2}}, {{1}, {0}}});
    CHECK(canonical_key(a) == canonical_key(b));
    CHECK(a == b);
}

TEST_CASE("canonicalize rejects non-partitions") {
    CHECK_THROWS_AS(canonicalize(3, 2, {0}, {{{0, 1}, {0, 0}}}), NotAPartition);
    CHECK_THROWS_AS(canonicalize(3, 2, {}, {{{0, 1}, {0, 0}}}), NotAPartition);
    CHECK_THROWS_AS(canonicalize(2, 2, {}, {{{}, {}}}), NotAPartition);
}

TEST_CASE("parse_key inverts canonical_key") {
    GPartition g = canonicalize(5, 4, {2, 4}, {{{0, 3}, {0, 2}}, {{1}, {0}}});
    CHECK(parse_key(canonical_key(g), 5, 4) == g);
    CHECK(parse_key("I={}", 0, 3) == canonicalize(0, 3, {}, {}));
    CHECK_THROWS_AS(parse_key("garbage", 2, 2), NotAFamilyPoset);
}

TEST_CASE("merges of the bottom of Q_2(2)") {
    GPartition bot = gp_bottom(2, 2);
    auto cov = merges(bot);
    REQUIRE(cov.size() == 4);
    std::set<std::string> keys;
    for (const auto& c : cov) keys.insert(canonical_key(c));
    CHECK(keys == std::set<std::string>{"I={1}|B={2:0}", "I={2}|B={1:0}", "I={}|B={1:0,2:0}",
                                        "I={}|B={1:0,2:1}"});
}

TEST_CASE("merges edge cases") {
    // single nonzero block, empty zero block: only the zero-merge remains
    GPartition g = canonicalize(3, 2, {}, {{{0, 1, 2}, {0, 1, 0}}});
    auto cov = merges(g);
    REQUIRE(cov.size() == 1);
    CHECK(cov[0] == gp_top(3, 2));
    CHECK(merges(gp_top(3, 2)).empty());
}

TEST_CASE("gp_leq basics") {
    GPartition bot = gp_bottom(3, 2), top = gp_top(3, 2);
    for (const auto& y : family_elements(FamilySpec{3, 2, 1, 1, {}})) {
        CHECK(gp_leq(bot, y));
        CHECK(gp_leq(y, top));
    }
    // the two nonzero-merge covers of the bottom of Q_2(2) with different g
    GPartition m0 = canonicalize(2, 2, {}, {{{0, 1}, {0, 0}}});
    GPartition m1 = canonicalize(2, 2, {}, {{{0, 1}, {0, 1}}});
    CHECK_FALSE(gp_leq(m0, m1));
    CHECK_FALSE(gp_leq(m1, m0));
    CHECK_THROWS_AS(gp_leq(gp_bottom(2, 2), gp_bottom(2, 3)), IncompatibleModulus);
}

TEST_CASE("merge closure equals gp_leq") {
    for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {3, 3}, {4, 2}, {4, 3}}) {
        auto elems = family_elements(FamilySpec{n, r, 1, 1, {}});
        std::map<std::string, int> index;
        for (std::size_t i = 0; i < elems.size(); ++i) index[canonical_key(elems[i])] = static_cast<int>(i);
        // BFS over merges from every element
        std::vector<std::set<int>> reach(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            std::queue<int> q;
            q.push(static_cast<int>(i));
            reach[i].insert(static_cast<int>(i));
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (const auto& m : merges(elems[v])) {
                    int w = index.at(canonical_key(m));
                    if (reach[i].insert(w).second) q.push(w);
                }
            }
        }
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j)
                CHECK(gp_leq(elems[i], elems[j]) == static_cast<bool>(reach[i].count(static_cast<int>(j))));
    }
}

TEST_CASE("wreath action") {
    GPartition bot = gp_bottom(3, 4);
    std::vector<int> id{0, 1, 2}, zero{0, 0, 0};
    CHECK(wreath_act(zero, id, bot) == bot);

    // the bottom is fixed by every (g, sigma): singletons absorb label shifts
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> sigma{0, 1, 2}, g3(3);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        for (int& v : g3) v = static_cast<int>(rng() % 4);
        CHECK(wreath_act(g3, sigma, gp_bottom(3, 4)) == gp_bottom(3, 4));
        CHECK(wreath_act(g3, sigma, gp_top(3, 4)) == gp_top(3, 4));
    }

    // swapping 1 and 2 on the Q_2(2) cover with merge label 1 fixes it
    GPartition m1 = canonicalize(2, 2, {}, {{{0, 1}, {0, 1}}});
    CHECK(wreath_act({0, 0}, {1, 0}, m1) == m1);

    // action on an arbitrary element, then sanity of canonical form
    GPartition x = canonicalize(4, 3, {2}, {{{0, 3}, {0, 2}}, {{1}, {0}}});
    GPartition y = wreath_act({1, 2, 0, 1}, {3, 0, 1, 2}, x);
    CHECK(y.n == 4);
    for (const auto& b : y.blocks) CHECK(b.labels[0] == 0);
}

TEST_CASE("wreath action preserves the order") {
    std::mt19937_64 rng(12345);
    auto elems = family_elements(FamilySpec{4, 3, 1, 1, {}});
    std::uniform_int_distribution<int> pick(0, static_cast<int>(elems.size()) - 1);
    std::uniform_int_distribution<int> lab(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        const GPartition& x = elems[pick(rng)];
        const GPartition& y = elems[pick(rng)];
        std::vector<int> sigma{0, 1, 2, 3}, g(4);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        for (int& v : g) v = lab(rng);
        CHECK(gp_leq(x, y) == gp_leq(wreath_act(g, sigma, x), wreath_act(g, sigma, y)));
    }
}

TEST_CASE("gp_join") {
    GPartition bot = gp_bottom(2, 2);
    GPartition m0 = canonicalize(2, 2, {}, {{{0, 1}, {0, 0}}});
    GPartition m1 = canonicalize(2, 2, {}, {{{0, 1}, {0, 1}}});
    CHECK(gp_join(bot, m0) == m0);
    // inconsistent labels on the same support collapse to the zero block
    CHECK(gp_join(m0, m1) == gp_top(2, 2));

    // join is the least upper bound in the merge order
    auto elems = family_elements(FamilySpec{3, 2, 1, 1, {}});
    for (const auto& x : elems)
        for (const auto& y : elems) {
            GPartition j = gp_join(x, y);
            CHECK(gp_leq(x, j));
            CHECK(gp_leq(y, j));
            for (const auto& z : elems)
                if (gp_leq(x, z) && gp_leq(y, z)) CHECK(gp_leq(j, z));
        }
}

TEST_CASE("type_of") {
    GPartition x = canonicalize(5, 2, {4}, {{{0, 1}, {0, 1}}, {{2, 3}, {0, 0}}});
    auto t = type_of(x);
    CHECK(t == std::vector<int>{1, 0, 2, 0, 0, 0});
}

#pragma once

// JSON interchange for posets:
//   {"schema":"v1","elements":[key,...],"covers":[[i,j],...],"rank":[...]}
// Elements are emitted in sorted key order so identical posets serialize
// byte-identically no matter how they were constructed.

#include <json.hpp>

#include <algorithm>
#include <numeric>

#include "dowq/poset.hpp"

namespace dowq {

using json = nlohmann::ordered_json;

inline json poset_to_json(const FinitePoset& p) {
    const int n = p.size();
    std::vector<int> perm(n);  // sorted position -> original index
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return p.key(a) < p.key(b); });
    std::vector<int> where(n);
    for (int i = 0; i < n; ++i) where[perm[i]] = i;

    json j;
    j["schema"] = "v1";
    j["elements"] = json::array();
    for (int i = 0; i < n; ++i) j["elements"].push_back(p.key(perm[i]));
    std::vector<std::pair<int, int>> covers;
    for (int x = 0; x < n; ++x)
        for (int y : p.upper_covers(x)) covers.emplace_back(where[x], where[y]);
    std::sort(covers.begin(), covers.end());
    j["covers"] = json::array();
    for (auto [a, b] : covers) j["covers"].push_back(json::array({a, b}));
    if (p.ranks()) {
        j["rank"] = json::array();
        for (int i = 0; i < n; ++i) j["rank"].push_back((*p.ranks())[perm[i]]);
    }
    return j;
}

inline FinitePoset poset_from_json(const json& j) {
    std::vector<std::string> keys;
    for (const auto& k : j.at("elements")) keys.push_back(k.get<std::string>());
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) covers.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    FinitePoset p = FinitePoset::from_covers(std::move(keys), covers);
    if (j.contains("rank")) {
        std::vector<int> r;
        for (const auto& x : j.at("rank")) r.push_back(x.get<int>());
        p.attach_ranks(std::move(r));
    }
    return p;
}

}  // namespace dowq

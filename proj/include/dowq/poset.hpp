#pragma once

// Finite posets with explicit covering relation, bitset-backed order
// closure, rank functions and exact Mobius machinery.  Instances are
// immutable after construction; every query below is const and re-entrant.

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dowq/bitset.hpp"
#include "dowq/errors.hpp"
#include "dowq/exact.hpp"

namespace dowq {

class FinitePoset {
  public:
    FinitePoset() = default;

    // Builds a poset from any relation pairs (i, j) meaning i < j.  The
    // stored covering relation is the transitive reduction of the
    // transitive closure of the input, so callers may pass covers, a full
    // order, or anything in between.
    static FinitePoset from_covers(std::vector<std::string> keys,
                                   const std::vector<std::pair<int, int>>& relations) {
        FinitePoset p;
        p.keys_ = std::move(keys);
        const int n = static_cast<int>(p.keys_.size());
        {
            std::unordered_set<std::string> seen;
            for (const auto& k : p.keys_)
                if (!seen.insert(k).second) throw DuplicateKey(k);
        }

        std::vector<std::vector<int>> raw(n);
        for (auto [a, b] : relations) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw std::out_of_range("relation index out of range");
            if (a == b) throw CycleDetected("self-loop at '" + p.keys_[a] + "'");
            raw[a].push_back(b);
        }
        for (auto& v : raw) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }

        // Kahn topological sort; failure to exhaust means a directed cycle.
        std::vector<int> indeg(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b : raw[a]) indeg[b]++;
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        p.topo_.reserve(n);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            p.topo_.push_back(v);
            for (int w : raw[v])
                if (--indeg[w] == 0) queue.push_back(w);
        }
        if (static_cast<int>(p.topo_.size()) != n) throw CycleDetected("input relation has a cycle");

        // Reflexive-transitive closure, one bitset row per element.
        p.up_.assign(n, Bitset(n));
        for (auto it = p.topo_.rbegin(); it != p.topo_.rend(); ++it) {
            int v = *it;
            p.up_[v].set(v);
            for (int w : raw[v]) p.up_[v] |= p.up_[w];
        }
        p.down_.assign(n, Bitset(n));
        for (int x = 0; x < n; ++x)
            p.up_[x].for_each([&](std::size_t y) { p.down_[y].set(x); });

        // x is covered by y iff the closed interval [x, y] is exactly {x, y}.
        p.up_adj_.assign(n, {});
        p.down_adj_.assign(n, {});
        for (int x = 0; x < n; ++x) {
            p.up_[x].for_each([&](std::size_t yz) {
                int y = static_cast<int>(yz);
                if (y == x) return;
                if ((p.up_[x] & p.down_[y]).count() == 2) {
                    p.up_adj_[x].push_back(y);
                    p.down_adj_[y].push_back(x);
                }
            });
        }
        for (auto& v : p.up_adj_) std::sort(v.begin(), v.end());
        for (auto& v : p.down_adj_) std::sort(v.begin(), v.end());

        p.height_.assign(n, 0);
        for (int v : p.topo_)
            for (int w : p.down_adj_[v]) p.height_[v] = std::max(p.height_[v], p.height_[w] + 1);
        p.depth_.assign(n, 0);
        for (auto it = p.topo_.rbegin(); it != p.topo_.rend(); ++it)
            for (int w : p.up_adj_[*it]) p.depth_[*it] = std::max(p.depth_[*it], p.depth_[w] + 1);

        for (int i = 0; i < n; ++i) p.index_.emplace(p.keys_[i], i);
        return p;
    }

    int size() const { return static_cast<int>(keys_.size()); }
    const std::string& key(int i) const { return keys_.at(i); }
    const std::vector<std::string>& keys() const { return keys_; }

    int index_of(const std::string& k) const {
        auto it = index_.find(k);
        return it == index_.end() ? -1 : it->second;
    }

    bool leq(int x, int y) const { return up_[x].test(y); }
    bool lt(int x, int y) const { return x != y && leq(x, y); }

    // Closed up/down sets as bitsets (x itself included).
    const Bitset& up_set(int x) const { return up_[x]; }
    const Bitset& down_set(int x) const { return down_[x]; }

    const std::vector<int>& upper_covers(int x) const { return up_adj_[x]; }
    const std::vector<int>& lower_covers(int x) const { return down_adj_[x]; }
    const std::vector<int>& topo_order() const { return topo_; }

    int height(int x) const { return height_[x]; }  // longest chain up from a minimal element
    int depth(int x) const { return depth_[x]; }    // longest chain down from a maximal element
    int length() const {                            // longest chain, counted in steps
        int l = 0;
        for (int v = 0; v < size(); ++v) l = std::max(l, height_[v]);
        return l;
    }

    std::vector<int> minimal_elements() const {
        std::vector<int> out;
        for (int v = 0; v < size(); ++v)
            if (down_adj_[v].empty()) out.push_back(v);
        return out;
    }
    std::vector<int> maximal_elements() const {
        std::vector<int> out;
        for (int v = 0; v < size(); ++v)
            if (up_adj_[v].empty()) out.push_back(v);
        return out;
    }

    int unique_min() const {
        auto m = minimal_elements();
        return m.size() == 1 ? m[0] : -1;
    }
    int unique_max() const {
        auto m = maximal_elements();
        return m.size() == 1 ? m[0] : -1;
    }
    bool is_bounded() const { return size() > 0 && unique_min() >= 0 && unique_max() >= 0; }

    // Atoms: the upper covers of the unique minimal element.
    std::vector<int> atoms() const {
        int b = unique_min();
        if (b < 0) throw NotBounded("atoms() needs a unique minimal element");
        return up_adj_[b];
    }

    // Optional rank function; attaching validates that covers step by one.
    void attach_ranks(std::vector<int> ranks) {
        if (static_cast<int>(ranks.size()) != size())
            throw std::invalid_argument("rank vector size mismatch");
        for (int x = 0; x < size(); ++x)
            for (int y : up_adj_[x])
                if (ranks[y] != ranks[x] + 1)
                    throw std::invalid_argument("rank function does not step by 1 on cover " +
                                                keys_[x] + " < " + keys_[y]);
        rank_ = std::move(ranks);
    }
    const std::optional<std::vector<int>>& ranks() const { return rank_; }

    // mu(x, y) by the bottom-up recursion mu(x,x) = 1,
    // mu(x,y) = -sum_{x <= z < y} mu(x,z), evaluated over the interval in
    // topological order.  With zero_if_incomparable the incomparable case
    // returns 0 instead of throwing.
    Int mobius(int x, int y, bool zero_if_incomparable = false) const {
        if (!leq(x, y)) {
            if (zero_if_incomparable) return 0;
            throw NotComparable(keys_[x] + " !<= " + keys_[y]);
        }
        Bitset interval = up_[x] & down_[y];
        std::unordered_map<int, Int> mu;
        for (int z : topo_) {
            if (!interval.test(z)) continue;
            if (z == x) {
                mu[z] = 1;
                continue;
            }
            Int s = 0;
            Bitset below = interval & down_[z];
            below.for_each([&](std::size_t w) {
                if (static_cast<int>(w) != z) s += mu[static_cast<int>(w)];
            });
            mu[z] = -s;
        }
        return mu[y];
    }

    // mu(x, z) for every z in the up-set of x, in one pass.
    std::vector<Int> mobius_row(int x) const {
        std::vector<Int> mu(size(), 0);
        for (int z : topo_) {
            if (!up_[x].test(z)) continue;
            if (z == x) {
                mu[z] = 1;
                continue;
            }
            Int s = 0;
            Bitset below = up_[x] & down_[z];
            below.for_each([&](std::size_t w) {
                if (static_cast<int>(w) != z) s += mu[w];
            });
            mu[z] = -s;
        }
        return mu;
    }

    Int mobius_bounded() const {
        if (!is_bounded()) throw NotBounded("mobius_bounded needs 0 and 1");
        return mobius(unique_min(), unique_max());
    }

    // Independent oracle: Philip Hall's theorem, the alternating sum of
    // chain counts from x to y.  Shares nothing with mobius() above beyond
    // the closure itself.
    Int mobius_via_chains(int x, int y, bool zero_if_incomparable = false) const {
        if (!leq(x, y)) {
            if (zero_if_incomparable) return 0;
            throw NotComparable(keys_[x] + " !<= " + keys_[y]);
        }
        return mobius_via_chains_row(x)[y];
    }

    // Chain-count alternating sums from x to every z >= x at once.
    std::vector<Int> mobius_via_chains_row(int x) const {
        std::vector<int> interval;
        for (int z : topo_)
            if (up_[x].test(z)) interval.push_back(z);
        std::unordered_map<int, int> pos;
        for (std::size_t i = 0; i < interval.size(); ++i) pos[interval[i]] = static_cast<int>(i);

        std::vector<Int> result(size(), 0);
        result[x] = 1;  // the empty chain
        std::vector<Int> cur(interval.size(), 0);
        cur[0] = 1;  // chains of length 0 ending at x
        int sign = -1;
        for (int len = 1; len < static_cast<int>(interval.size()) + 1; ++len) {
            std::vector<Int> nxt(interval.size(), 0);
            bool anything = false;
            for (std::size_t i = 0; i < interval.size(); ++i) {
                if (cur[i] == 0) continue;
                int z = interval[i];
                for (std::size_t j = i + 1; j < interval.size(); ++j) {
                    int w = interval[j];
                    if (lt(z, w)) {
                        nxt[j] += cur[i];
                        anything = true;
                    }
                }
            }
            if (!anything) break;
            for (std::size_t j = 0; j < interval.size(); ++j)
                if (nxt[j] != 0) result[interval[j]] += sign * nxt[j];
            cur = std::move(nxt);
            sign = -sign;
        }
        result[x] = 1;
        return result;
    }

    // Adds a fresh bottom below all minimal elements and a fresh top above
    // all maximal elements (always both, never reusing existing bounds).
    FinitePoset adjoin_bounds() const {
        auto fresh = [&](std::string base) {
            while (index_.count(base)) base += "+";
            return base;
        };
        std::string bot = fresh("BOT"), top = fresh("TOP");
        std::vector<std::string> keys;
        keys.push_back(bot);
        for (const auto& k : keys_) keys.push_back(k);
        keys.push_back(top);
        const int n = size();
        std::vector<std::pair<int, int>> rel;
        for (int x = 0; x < n; ++x)
            for (int y : up_adj_[x]) rel.emplace_back(x + 1, y + 1);
        if (n == 0) {
            rel.emplace_back(0, 1);
        } else {
            for (int v : minimal_elements()) rel.emplace_back(0, v + 1);
            for (int v : maximal_elements()) rel.emplace_back(v + 1, n + 1);
        }
        return from_covers(std::move(keys), rel);
    }

    // Induced subposet on the given element indices (order inherited).
    FinitePoset induced(const std::vector<int>& keep) const {
        std::vector<std::string> keys;
        keys.reserve(keep.size());
        for (int v : keep) keys.push_back(keys_[v]);
        std::vector<std::pair<int, int>> rel;
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                if (i != j && leq(keep[i], keep[j])) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
        return from_covers(std::move(keys), rel);
    }

    FinitePoset proper_part() const {
        int b = unique_min(), t = unique_max();
        if (b < 0 || t < 0) throw NotBounded("proper_part needs unique min and max");
        std::vector<int> keep;
        for (int v = 0; v < size(); ++v)
            if (v != b && v != t) keep.push_back(v);
        return induced(keep);
    }

    FinitePoset interval(int x, int y) const {
        if (!leq(x, y)) throw NotComparable(keys_[x] + " !<= " + keys_[y]);
        return induced((up_[x] & down_[y]).to_indices());
    }

    bool is_pure() const {
        if (size() == 0) return true;
        for (int x = 0; x < size(); ++x)
            for (int y : up_adj_[x])
                if (height_[y] != height_[x] + 1) return false;
        int h = -1;
        for (int v : maximal_elements()) {
            if (h >= 0 && height_[v] != h) return false;
            h = height_[v];
        }
        return true;
    }

    // Bounded + every pair has a join (then meets exist too).
    bool is_lattice() const {
        if (!is_bounded()) return false;
        const int n = size();
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                Bitset common = up_[x] & up_[y];
                int minimals = 0;
                common.for_each([&](std::size_t z) {
                    if ((down_[z] & common).count() == 1) ++minimals;
                });
                if (minimals != 1) return false;
            }
        return true;
    }

  private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> up_adj_, down_adj_;  // covering relation
    std::vector<Bitset> up_, down_;                    // reflexive-transitive closure
    std::vector<int> topo_, height_, depth_;
    std::optional<std::vector<int>> rank_;
};

}  // namespace dowq

#pragma once

// Recursive atom orderings.  lex_atom_order builds the word ordering for
// family posets (zero block ascending, then blocks by smallest element,
// ties among equal words broken blockwise by (support, label vector)).
// check_recursive_atom_ordering certifies that ordering against the
// recursive definition: condition (ii) is checked exhaustively with bitset
// arithmetic, and condition (i) searches each upper interval for a
// sub-ordering honouring the earlier-intervals-first constraint, with
// memoization keyed on (interval bottom, constraint set) and a global node
// budget.  Certificates are JSON trees suitable for archiving.

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dowq/bitset.hpp"
#include "dowq/errors.hpp"
#include "dowq/family.hpp"
#include "dowq/gpartition.hpp"
#include "dowq/poset.hpp"

namespace dowq {

struct AtomOrdering {
    std::vector<int> order;  // poset indices of the atoms, in order
    std::string provenance;  // "lex" | "supplied"
};

inline AtomOrdering lex_atom_order(const FinitePoset& p, const FamilySpec& spec) {
    int bottom = p.unique_min();
    if (bottom < 0) throw NotAFamilyPoset("poset has no unique minimal element");
    std::vector<int> atoms = p.upper_covers(bottom);

    struct Keyed {
        int idx;
        std::vector<int> word;
        std::vector<int> zero;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
    };
    std::vector<Keyed> keyed;
    for (int a : atoms) {
        GPartition g = parse_key(p.key(a), spec.n, spec.r);  // NotAFamilyPoset on failure
        Keyed kk;
        kk.idx = a;
        kk.word = g.zero_block;
        for (const auto& b : g.blocks) kk.word.insert(kk.word.end(), b.support.begin(), b.support.end());
        kk.zero = g.zero_block;
        for (const auto& b : g.blocks) kk.blocks.emplace_back(b.support, b.labels);
        keyed.push_back(std::move(kk));
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.word != b.word) return a.word < b.word;
        if (a.zero != b.zero) return a.zero < b.zero;
        return a.blocks < b.blocks;
    });
    AtomOrdering out;
    out.provenance = "lex";
    for (const auto& kk : keyed) out.order.push_back(kk.idx);
    return out;
}

struct RAOResult {
    enum class Status { Certified, Violated, Inconclusive };
    Status status = Status::Violated;
    // Violation witness: ordering positions i < j and the offending upper
    // bound y (condition (ii)), or j alone when the interval above atom j
    // admits no constrained recursive ordering (condition (i)).
    int witness_i = -1, witness_j = -1;
    std::string witness_y;
    std::string detail;
    nlohmann::ordered_json certificate;  // {"root": id, "intervals": [...]}
    long long nodes_used = 0;

    bool certified() const { return status == Status::Certified; }
};

namespace detail {

class RaoChecker {
  public:
    RaoChecker(const FinitePoset& p, long long budget) : p_(p), budget_(budget) {}

    RAOResult run_given(const std::vector<int>& atom_order) {
        RAOResult res;
        int bottom = p_.unique_min();
        if (bottom < 0 || p_.unique_max() < 0) throw NotBounded("RAO check needs a bounded poset");
        auto root = place_all(bottom, {}, &atom_order, &res);
        finalize(res, root);
        return res;
    }

    RAOResult run_search() {
        RAOResult res;
        int bottom = p_.unique_min();
        if (bottom < 0 || p_.unique_max() < 0) throw NotBounded("RAO search needs a bounded poset");
        auto root = place_all(bottom, {}, nullptr, &res);
        finalize(res, root);
        return res;
    }

  private:
    const FinitePoset& p_;
    long long budget_;
    long long nodes_ = 0;
    bool budget_hit_ = false;
    std::map<std::pair<int, std::vector<int>>, std::optional<int>> memo_;
    std::vector<nlohmann::ordered_json> intervals_;

    void finalize(RAOResult& res, std::optional<int> root) {
        res.nodes_used = nodes_;
        if (root) {
            res.status = RAOResult::Status::Certified;
            res.certificate = {{"root", *root}, {"intervals", nlohmann::ordered_json::array()}};
            for (const auto& iv : intervals_) res.certificate["intervals"].push_back(iv);
        } else if (budget_hit_) {
            res.status = RAOResult::Status::Inconclusive;
            res.detail = "node budget exceeded";
        } else {
            res.status = RAOResult::Status::Violated;
        }
    }

    int emit_leaf(int x) {
        intervals_.push_back({{"id", static_cast<int>(intervals_.size())},
                              {"bottom", p_.key(x)},
                              {"length_le_1", true}});
        return static_cast<int>(intervals_.size()) - 1;
    }

    // Search / check of the interval [x, 1] with the constraint that the
    // atoms in `constraint` come first.  `given` forces the full ordering
    // (top level of run_given); children are always searched.
    std::optional<int> place_all(int x, std::vector<int> constraint,
                                 const std::vector<int>* given, RAOResult* witness_sink) {
        if (p_.depth(x) <= 1) return emit_leaf(x);
        std::sort(constraint.begin(), constraint.end());
        auto memo_key = std::make_pair(x, constraint);
        if (!given) {
            auto it = memo_.find(memo_key);
            if (it != memo_.end()) return it->second;
        }

        const std::vector<int>& atoms = p_.upper_covers(x);
        const int t = static_cast<int>(atoms.size());
        std::vector<int> order;
        std::vector<int> child_ids;
        std::vector<char> placed(t, 0);
        Bitset placed_atoms(p_.size());    // the prefix itself
        Bitset placed_up_strict(p_.size());  // union of strict up-sets of the prefix
        int constrained_left = static_cast<int>(constraint.size());
        std::vector<char> is_constrained(t, 0);
        for (int i = 0; i < t; ++i)
            if (std::binary_search(constraint.begin(), constraint.end(), atoms[i]))
                is_constrained[i] = 1;

        // Condition (ii) for candidate a against the placed prefix.  Also
        // collects the constraint set for a's own interval: the covers z of
        // a lying in [b, 1] for an earlier atom b (weakly, b <= z), while a
        // (ii)-witness z needs an earlier atom strictly below it.
        auto try_candidate = [&](int a, std::vector<int>& child_constraint,
                                 int* bad_y) -> bool {
            child_constraint.clear();
            Bitset good_up(p_.size());
            for (int z : p_.upper_covers(a)) {
                Bitset below = p_.down_set(z) & placed_atoms;
                if (below.any()) child_constraint.push_back(z);
                below.reset(z);
                if (below.any()) good_up |= p_.up_set(z);
            }
            Bitset bad = placed_up_strict & p_.up_set(a);
            bad.reset(a);
            bad.subtract(good_up);
            if (bad.any()) {
                if (bad_y) *bad_y = static_cast<int>(bad.first());
                return false;
            }
            return true;
        };

        std::function<bool(int)> extend = [&](int pos) -> bool {
            if (pos == t) return true;
            if (++nodes_ > budget_) {
                budget_hit_ = true;
                return false;
            }
            std::vector<int> candidates;
            if (given) {
                auto it = std::find(atoms.begin(), atoms.end(), (*given)[pos]);
                if (it == atoms.end())
                    throw std::invalid_argument("supplied ordering is not a permutation of the atoms");
                int ci = static_cast<int>(it - atoms.begin());
                if (placed[ci]) throw std::invalid_argument("supplied ordering repeats an atom");
                candidates.push_back(ci);
            } else {
                for (int ci = 0; ci < t; ++ci)
                    if (!placed[ci] && (constrained_left == 0 || is_constrained[ci]))
                        candidates.push_back(ci);
            }
            for (int ci : candidates) {
                int a = atoms[ci];
                std::vector<int> child_constraint;
                int bad_y = -1;
                bool ok = try_candidate(a, child_constraint, &bad_y);
                std::optional<int> child;
                if (ok) child = place_all(a, child_constraint, nullptr, witness_sink);
                if (ok && child) {
                    placed[ci] = 1;
                    if (is_constrained[ci]) --constrained_left;
                    Bitset saved_atoms = placed_atoms, saved_up = placed_up_strict;
                    placed_atoms.set(a);
                    placed_up_strict |= p_.up_set(a);
                    placed_up_strict.reset(a);
                    order.push_back(a);
                    child_ids.push_back(*child);
                    if (extend(pos + 1)) return true;
                    order.pop_back();
                    child_ids.pop_back();
                    placed_atoms = saved_atoms;
                    placed_up_strict = saved_up;
                    if (is_constrained[ci]) ++constrained_left;
                    placed[ci] = 0;
                    if (budget_hit_) return false;
                } else if (given && witness_sink) {
                    witness_sink->witness_j = pos;
                    if (!ok) {
                        witness_sink->witness_y = p_.key(bad_y);
                        for (int q = 0; q < pos; ++q)
                            if (p_.lt(order[q], bad_y)) {
                                witness_sink->witness_i = q;
                                break;
                            }
                        witness_sink->detail =
                            "condition (ii) fails at '" + p_.key(a) + "': upper bound '" +
                            witness_sink->witness_y + "' sees no earlier-reached atom of the interval";
                    } else {
                        witness_sink->detail = "condition (i) fails: interval above '" + p_.key(a) +
                                               "' admits no recursive ordering with the required atoms first";
                    }
                }
            }
            return false;
        };

        std::optional<int> result;
        if (extend(0)) {
            nlohmann::ordered_json node;
            node["id"] = static_cast<int>(intervals_.size());
            node["bottom"] = p_.key(x);
            if (!constraint.empty()) {
                node["first"] = nlohmann::ordered_json::array();
                for (int z : constraint) node["first"].push_back(p_.key(z));
            }
            node["ordering"] = nlohmann::ordered_json::array();
            for (int a : order) node["ordering"].push_back(p_.key(a));
            node["children"] = child_ids;
            intervals_.push_back(std::move(node));
            result = static_cast<int>(intervals_.size()) - 1;
        }
        if (!given && !budget_hit_) memo_[memo_key] = result;
        return result;
    }
};

}  // namespace detail

inline RAOResult check_recursive_atom_ordering(const FinitePoset& p,
                                               const std::vector<int>& atom_order,
                                               long long budget = 50'000'000) {
    return detail::RaoChecker(p, budget).run_given(atom_order);
}

inline RAOResult check_recursive_atom_ordering(const FinitePoset& p, const AtomOrdering& ord,
                                               long long budget = 50'000'000) {
    return check_recursive_atom_ordering(p, ord.order, budget);
}

// Does the bounded poset admit any recursive atom ordering?  Backtracking
// over orderings with condition (ii) pruning; Inconclusive on budget.
inline RAOResult admits_rao(const FinitePoset& p, long long budget = 50'000'000) {
    return detail::RaoChecker(p, budget).run_search();
}

}  // namespace dowq

#pragma once

// Finite posets and preorders over opaque string ids, with the generic order
// machinery the rest of the library is built on: reflexive-transitive closure,
// Hasse reduction, meets/joins, lattice checks, and order-morphism verifiers.
//
// Relations are stored explicitly (element -> set of upper bounds). Instances
// are desk scale, a few hundred elements at most; the quadratic and cubic
// algorithms below are deliberate.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evlat {

using Id = std::string;
using IdPair = std::pair<Id, Id>;
using Relation = std::set<IdPair>;
using ElementMap = std::map<Id, Id>;

// Smallest reflexive-transitive superset of `pairs` over `elements`.
inline Relation transitive_closure(const Relation& pairs, const std::set<Id>& elements) {
    std::map<Id, std::set<Id>> succ;
    for (const auto& [a, b] : pairs) {
        if (!elements.count(a) || !elements.count(b))
            throw std::invalid_argument("transitive_closure: pair references unknown element");
        succ[a].insert(b);
    }
    Relation out;
    for (const Id& start : elements) {
        // depth-first reachability from `start`
        std::set<Id> seen{start};
        std::vector<Id> stack{start};
        while (!stack.empty()) {
            Id cur = stack.back();
            stack.pop_back();
            auto it = succ.find(cur);
            if (it == succ.end()) continue;
            for (const Id& nxt : it->second)
                if (seen.insert(nxt).second) stack.push_back(nxt);
        }
        for (const Id& reach : seen) out.emplace(start, reach);
    }
    return out;
}

// Reflexive-transitive relation over a finite element set. Antisymmetry is not
// required here; FinitePoset below adds it.
class FinitePreorder {
public:
    FinitePreorder() = default;

    FinitePreorder(std::set<Id> elements, const Relation& generating)
        : elems_(std::move(elements)) {
        if (elems_.empty())
            throw std::invalid_argument("preorder: element set is empty");
        Relation closed = transitive_closure(generating, elems_);
        for (const auto& [a, b] : closed) up_[a].insert(b);
        for (const Id& e : elems_) up_[e].insert(e);
    }

    const std::set<Id>& elements() const { return elems_; }

    bool contains(const Id& a) const { return elems_.count(a) != 0; }

    bool leq(const Id& a, const Id& b) const {
        auto it = up_.find(a);
        if (it == up_.end()) throw std::out_of_range("preorder: unknown element " + a);
        if (!elems_.count(b)) throw std::out_of_range("preorder: unknown element " + b);
        return it->second.count(b) != 0;
    }

    // { b : a <= b }, includes a itself.
    const std::set<Id>& above(const Id& a) const {
        auto it = up_.find(a);
        if (it == up_.end()) throw std::out_of_range("preorder: unknown element " + a);
        return it->second;
    }

    // { b : b <= a }, includes a itself.
    std::set<Id> below(const Id& a) const {
        if (!elems_.count(a)) throw std::out_of_range("preorder: unknown element " + a);
        std::set<Id> out;
        for (const auto& [x, ups] : up_)
            if (ups.count(a)) out.insert(x);
        return out;
    }

    Relation relation() const {
        Relation out;
        for (const auto& [a, ups] : up_)
            for (const Id& b : ups) out.emplace(a, b);
        return out;
    }

    // First pair (lexicographic) with a <= b <= a and a != b, if any.
    std::optional<IdPair> antisymmetry_violation() const {
        for (const auto& [a, ups] : up_)
            for (const Id& b : ups)
                if (a < b && ups.count(b) && up_.at(b).count(a)) return IdPair{a, b};
        return std::nullopt;
    }

private:
    std::set<Id> elems_;
    std::map<Id, std::set<Id>> up_;
};

// Antisymmetric preorder. Construction throws if the closure of the generating
// pairs contains a nontrivial cycle; callers that need the violation as data
// build a FinitePreorder first and inspect it.
class FinitePoset : public FinitePreorder {
public:
    FinitePoset() = default;

    FinitePoset(std::set<Id> elements, const Relation& generating)
        : FinitePreorder(std::move(elements), generating) {
        if (auto bad = antisymmetry_violation())
            throw std::invalid_argument("poset: antisymmetry fails on (" + bad->first + ", " +
                                        bad->second + ")");
    }
};

// Covering pairs (a, b): a < b with nothing strictly between. The closure of
// the result plus the diagonal restores the full relation.
inline Relation hasse_reduction(const FinitePoset& p) {
    Relation covers;
    for (const Id& a : p.elements()) {
        for (const Id& b : p.above(a)) {
            if (a == b) continue;
            bool direct = true;
            for (const Id& c : p.above(a)) {
                if (c == a || c == b) continue;
                if (p.leq(c, b)) { direct = false; break; }
            }
            if (direct) covers.emplace(a, b);
        }
    }
    return covers;
}

namespace detail {

// Index-based view of a poset with down-set and up-set bitmasks. All the
// quadratic all-pairs work (meets, joins, lattice checks) runs on this.
struct IndexedOrder {
    std::vector<Id> ids;                         // index -> id, sorted
    std::map<Id, std::size_t> index;             // id -> index
    std::size_t words = 0;
    std::vector<std::vector<std::uint64_t>> down;  // down[i] = mask of { j : j <= i }
    std::vector<std::vector<std::uint64_t>> up;    // up[i]   = mask of { j : i <= j }

    explicit IndexedOrder(const FinitePreorder& p) {
        ids.assign(p.elements().begin(), p.elements().end());
        for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
        words = (ids.size() + 63) / 64;
        down.assign(ids.size(), std::vector<std::uint64_t>(words, 0));
        up.assign(ids.size(), std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (const Id& b : p.above(ids[i])) {
                std::size_t j = index.at(b);
                up[i][j / 64] |= std::uint64_t{1} << (j % 64);
                down[j][i / 64] |= std::uint64_t{1} << (i % 64);
            }
    }

    // Unique maximal element of the down-set intersection, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t meet_of(std::size_t a, std::size_t b, std::vector<std::uint64_t>& scratch) const {
        for (std::size_t w = 0; w < words; ++w) scratch[w] = down[a][w] & down[b][w];
        // g is the meet iff g is in the intersection and its down-set equals it
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t m = scratch[w];
            while (m) {
                std::size_t g = w * 64 + static_cast<std::size_t>(__builtin_ctzll(m));
                m &= m - 1;
                if (down[g] == scratch) return g;
            }
        }
        return npos;
    }

    std::size_t join_of(std::size_t a, std::size_t b, std::vector<std::uint64_t>& scratch) const {
        for (std::size_t w = 0; w < words; ++w) scratch[w] = up[a][w] & up[b][w];
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t m = scratch[w];
            while (m) {
                std::size_t g = w * 64 + static_cast<std::size_t>(__builtin_ctzll(m));
                m &= m - 1;
                if (up[g] == scratch) return g;
            }
        }
        return npos;
    }
};

}  // namespace detail

// Greatest lower bound if it exists. Absence is a value, not an error: some of
// the posets built downstream legitimately lack meets or joins.
inline std::optional<Id> meet(const FinitePoset& p, const Id& a, const Id& b) {
    detail::IndexedOrder ix(p);
    std::vector<std::uint64_t> scratch(ix.words);
    std::size_t g = ix.meet_of(ix.index.at(a), ix.index.at(b), scratch);
    if (g == detail::IndexedOrder::npos) return std::nullopt;
    return ix.ids[g];
}

inline std::optional<Id> join(const FinitePoset& p, const Id& a, const Id& b) {
    detail::IndexedOrder ix(p);
    std::vector<std::uint64_t> scratch(ix.words);
    std::size_t g = ix.join_of(ix.index.at(a), ix.index.at(b), scratch);
    if (g == detail::IndexedOrder::npos) return std::nullopt;
    return ix.ids[g];
}

struct LatticeCheck {
    bool ok = false;
    std::optional<IdPair> failing;  // first pair missing a meet or a join
};

// True iff every pair of elements has both a meet and a join.
inline LatticeCheck is_lattice(const FinitePoset& p) {
    detail::IndexedOrder ix(p);
    std::vector<std::uint64_t> scratch(ix.words);
    for (std::size_t i = 0; i < ix.ids.size(); ++i)
        for (std::size_t j = i; j < ix.ids.size(); ++j) {
            if (ix.meet_of(i, j, scratch) == detail::IndexedOrder::npos ||
                ix.join_of(i, j, scratch) == detail::IndexedOrder::npos)
                return {false, IdPair{ix.ids[i], ix.ids[j]}};
        }
    return {true, std::nullopt};
}

namespace detail {

inline void require_total_map(const ElementMap& f, const FinitePreorder& P,
                              const FinitePreorder& Q, const char* who) {
    for (const Id& a : P.elements()) {
        auto it = f.find(a);
        if (it == f.end())
            throw std::invalid_argument(std::string(who) + ": map not total on domain, missing " + a);
        if (!Q.contains(it->second))
            throw std::invalid_argument(std::string(who) + ": image " + it->second +
                                        " is not in the codomain");
    }
}

}  // namespace detail

// a <= b in P implies f(b) <= f(a) in Q.
inline bool check_order_reversing(const ElementMap& f, const FinitePreorder& P,
                                  const FinitePreorder& Q) {
    detail::require_total_map(f, P, Q, "check_order_reversing");
    for (const Id& a : P.elements())
        for (const Id& b : P.above(a))
            if (!Q.leq(f.at(b), f.at(a))) return false;
    return true;
}

// a <= b in P implies f(a) <= f(b) in Q.
inline bool check_order_preserving(const ElementMap& f, const FinitePreorder& P,
                                   const FinitePreorder& Q) {
    detail::require_total_map(f, P, Q, "check_order_preserving");
    for (const Id& a : P.elements())
        for (const Id& b : P.above(a))
            if (!Q.leq(f.at(a), f.at(b))) return false;
    return true;
}

// a <= b in P iff f(a) <= f(b) in Q (implies injectivity when P, Q are posets).
inline bool check_order_embedding(const ElementMap& f, const FinitePreorder& P,
                                  const FinitePreorder& Q) {
    detail::require_total_map(f, P, Q, "check_order_embedding");
    for (const Id& a : P.elements())
        for (const Id& b : P.elements())
            if (P.leq(a, b) != Q.leq(f.at(a), f.at(b))) return false;
    return true;
}

// Embedding plus surjectivity onto Q's elements.
inline bool check_order_isomorphism(const ElementMap& f, const FinitePreorder& P,
                                    const FinitePreorder& Q) {
    if (!check_order_embedding(f, P, Q)) return false;
    std::set<Id> image;
    for (const Id& a : P.elements()) image.insert(f.at(a));
    return image == Q.elements();
}

}  // namespace evlat

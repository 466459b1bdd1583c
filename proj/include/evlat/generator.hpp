#pragma once

// Seeded random instance generator.
//
// Instances are built from partitions: the top space's states are drawn
// first, and every other space is a partition of them into blocks, with the
// projection sending a state to its block. Composition coherence and
// surjectivity then hold by construction, and between distinct partitions
// refinement forces strictly more blocks, so strict cardinality comes for
// free. Two deliberate ways to break the clean picture are offered:
//
//   - allow_duplicate_partitions plants a twin of one sampled partition under
//     fresh names, incomparable to the original. The twins' events share
//     traces, so the reduced family stops being a poset.
//   - strict_cardinality=false plants a twin directly below its original with
//     a bijective projection, defeating the size gap that recovery relies on.
//
// Sampling is rejection-based but fully deterministic: one mt19937_64 stream
// drives everything, candidates failing the lattice or coverage checks are
// simply redrawn, and after too many rejections the intermediate-space count
// is lowered. Equal parameters therefore reproduce the identical instance,
// byte for byte, on any platform.
//
// Coverage matters here: a sampled order can leave a space with no surviving
// event in the reduced family (a top whose two-block coarsenings cover all
// its subsets is the classic case), and such instances would later defeat
// recovery for reasons that have nothing to do with the code under test. In
// strict mode they are rejected during sampling; a one-state top is exempt
// since it cannot satisfy coverage at all.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "evlat/reduction.hpp"

namespace evlat {

struct GenParams {
    std::uint64_t seed = 0;
    int top_states = 3;
    int n_spaces = 2;  // spaces strictly between the top and the empty space
    bool strict_cardinality = true;
    bool allow_duplicate_partitions = false;
};

struct Generated {
    GenParams params;
    StructureInput input;  // exactly what a file would contain
    Structure structure;   // the validated form of the same instance
    int spaces_made = 0;   // intermediates actually present, twins included
};

namespace detail {

// Distinct partitions of k elements into 2..k-1 blocks, for clamping requests.
inline std::size_t partition_budget(int k) {
    static const std::size_t bell_minus_ends[] = {0, 0, 0, 3, 13, 50, 201, 875, 4138};
    return k <= 8 ? bell_minus_ends[k] : std::size_t{100000};
}

// Relabel so blocks are numbered by first appearance; equal partitions then
// compare equal as vectors.
inline std::vector<int> canonical_partition(std::vector<int> assign) {
    std::vector<int> relabel(assign.size(), -1);
    int next = 0;
    for (int& a : assign) {
        if (relabel[a] < 0) relabel[a] = next++;
        a = relabel[a];
    }
    return assign;
}

// Whether the partition q is constant on every block of p, i.e. p refines q.
inline bool refines(const std::vector<int>& p, const std::vector<int>& q) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] == p[j] && q[i] != q[j]) return false;
    return true;
}

}  // namespace detail

inline Generated generate(const GenParams& params) {
    if (params.top_states < 1 || params.top_states > 8)
        throw std::invalid_argument("generate: top_states must be between 1 and 8");
    if (params.n_spaces < 0 || params.n_spaces > 6)
        throw std::invalid_argument("generate: n_spaces must be between 0 and 6");
    if (params.allow_duplicate_partitions && (params.top_states < 3 || params.n_spaces < 1))
        throw std::invalid_argument(
            "generate: duplicate partitions need top_states >= 3 and n_spaces >= 1");

    const int k = params.top_states;
    std::mt19937_64 rng(params.seed);

    // One partition per space, the top's being the discrete one. Twins are
    // appended with a copy of their original's assignment; comparabilities are
    // kept explicitly because twins are deliberately not ordered the way their
    // assignments alone would suggest.
    struct Sp {
        Id id;
        std::vector<int> assign;
        int blocks = 0;
    };

    auto draw_partition = [&](int blocks) {
        std::vector<int> assign(static_cast<std::size_t>(k));
        for (;;) {
            std::set<int> hit;
            for (int& a : assign) {
                a = static_cast<int>(rng() % static_cast<std::uint64_t>(blocks));
                hit.insert(a);
            }
            if (static_cast<int>(hit.size()) == blocks) return detail::canonical_partition(assign);
        }
    };

    std::size_t n_eff =
        std::min<std::size_t>(static_cast<std::size_t>(params.n_spaces), detail::partition_budget(k));
    int attempts = 0;

    for (;;) {
        if (++attempts > 64 && n_eff > 0) {
            --n_eff;
            attempts = 0;
        }

        std::vector<Sp> sps;
        {
            Sp top;
            top.id = "T";
            for (int i = 0; i < k; ++i) top.assign.push_back(i);
            top.blocks = k;
            sps.push_back(std::move(top));
        }
        std::set<std::vector<int>> seen;
        bool sampled_ok = true;
        for (std::size_t i = 0; i < n_eff; ++i) {
            std::vector<int> assign;
            int tries = 0;
            do {
                int blocks = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(k - 2));
                assign = draw_partition(blocks);
                if (++tries > 200) {
                    sampled_ok = false;
                    break;
                }
            } while (seen.count(assign));
            if (!sampled_ok) break;
            seen.insert(assign);
            Sp sp;
            sp.id = "S" + std::to_string(i + 1);
            sp.blocks = 1 + *std::max_element(assign.begin(), assign.end());
            sp.assign = std::move(assign);
            sps.push_back(std::move(sp));
        }
        if (!sampled_ok) continue;

        // Comparabilities from refinement between distinct partitions; pairs
        // of (finer, coarser) indices into sps.
        std::set<std::pair<std::size_t, std::size_t>> comp;
        for (std::size_t i = 0; i < sps.size(); ++i)
            for (std::size_t j = 0; j < sps.size(); ++j)
                if (i != j && sps[i].assign != sps[j].assign &&
                    detail::refines(sps[i].assign, sps[j].assign))
                    comp.emplace(i, j);

        // The twins, when asked for. Both clone a sampled partition under
        // fresh state names; the duplicate twin copies its original's
        // comparabilities and stays incomparable to it, while the
        // non-strict twin slots in directly below its original.
        auto add_twin = [&](std::size_t orig, bool below_original) {
            Sp twin;
            twin.id = "S" + std::to_string(sps.size());
            twin.assign = sps[orig].assign;
            twin.blocks = sps[orig].blocks;
            std::size_t t = sps.size();
            sps.push_back(std::move(twin));
            // The twin inherits every comparability of its original, which
            // keeps the pair set transitively closed; the below variant adds
            // the one edge tying it under the original.
            std::set<std::pair<std::size_t, std::size_t>> added;
            for (const auto& [f, c] : comp) {
                if (f == orig) added.emplace(t, c);
                if (c == orig) added.emplace(f, t);
            }
            comp.insert(added.begin(), added.end());
            if (below_original) comp.emplace(orig, t);
            return t;
        };

        if (params.allow_duplicate_partitions && n_eff > 0)
            add_twin(1 + static_cast<std::size_t>(rng() % n_eff), false);
        if (!params.strict_cardinality)
            add_twin(static_cast<std::size_t>(rng() % (n_eff + 1)), true);  // 0 targets the top

        // Assemble the raw input: states named per space, projections read
        // off the assignments for every comparable pair.
        StructureInput in;
        for (std::size_t i = 0; i < sps.size(); ++i) {
            SpaceDef sd;
            sd.id = sps[i].id;
            for (int b = 0; b < sps[i].blocks; ++b)
                sd.states.push_back(i == 0 ? "t" + std::to_string(b + 1)
                                           : "x" + std::to_string(i) + "_" + std::to_string(b + 1));
            in.spaces.push_back(std::move(sd));
        }
        auto state_of = [&](std::size_t sp, int block) { return in.spaces[sp].states[block]; };
        for (const auto& [f, c] : comp) {
            in.order.push_back({sps[f].id, sps[c].id});
            ProjectionDef pd;
            pd.from = sps[f].id;
            pd.to = sps[c].id;
            for (int t = 0; t < k; ++t)
                pd.map[state_of(f, sps[f].assign[t])] = state_of(c, sps[c].assign[t]);
            in.projections.push_back(std::move(pd));
        }

        ValidationReport rep = validate_structure(in);
        if (!rep.ok) {
            bool lattice_only = true;
            for (const auto& v : rep.violations) lattice_only = lattice_only && v.axiom == "lattice";
            if (lattice_only) continue;  // unlucky sample, redraw
            throw std::logic_error("generate: produced an invalid instance: " +
                                   rep.violations.front().axiom);
        }

        // Reject samples whose reduced family fails state coverage; a
        // one-state top cannot meet it, so it is exempt. Without strict
        // cardinality coverage is not promised and not enforced.
        if (params.strict_cardinality && k > 1) {
            ReducedPoset rp =
                build_reduced_poset(*rep.structure, build_event_lattice(*rep.structure));
            if (!check_base_coverage(*rep.structure, rp).states_ok) continue;
        }

        Generated out;
        out.params = params;
        out.input = std::move(in);
        out.structure = std::move(*rep.structure);
        out.spaces_made = static_cast<int>(sps.size()) - 1;
        return out;
    }
}

}  // namespace evlat

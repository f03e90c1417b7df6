#pragma once

// Independent reference computations used only by the tests. Nothing here
// goes through the enumeration, tree construction or twist code it checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "opfree/opfree.hpp"

namespace opfree::oracle {

/// Quadruple scan for w < x < y < z with w, y in one block and x, z in another.
inline bool crosses(const std::vector<int>& block_of) {
    const int n = static_cast<int>(block_of.size()) - 1;
    for (int w = 1; w <= n; ++w)
        for (int x = w + 1; x <= n; ++x)
            for (int y = x + 1; y <= n; ++y)
                for (int z = y + 1; z <= n; ++z)
                    if (block_of[w] == block_of[y] && block_of[x] == block_of[z] && block_of[w] != block_of[x]) return true;
    return false;
}

/// All set partitions of [n] as canonical block lists, by enumerating every
/// map [n] -> [n] and canonicalizing.
inline std::set<std::vector<std::vector<int>>> all_set_partitions(int n) {
    std::set<std::vector<std::vector<int>>> out;
    std::vector<int> f(static_cast<std::size_t>(n), 0);
    while (true) {
        std::map<int, std::vector<int>> groups;
        for (int i = 0; i < n; ++i) groups[f[static_cast<std::size_t>(i)]].push_back(i + 1);
        std::vector<std::vector<int>> blocks;
        for (auto& [k, b] : groups) blocks.push_back(b);
        std::sort(blocks.begin(), blocks.end());
        out.insert(blocks);
        int i = 0;
        while (i < n && ++f[static_cast<std::size_t>(i)] == n) f[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
    }
    return out;
}

/// All set partitions of [n] via restricted growth strings (Bell(n) of them).
inline std::vector<std::vector<int>> set_partition_owners(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> owner(static_cast<std::size_t>(n) + 1, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i > n) {
            out.push_back(owner);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            owner[static_cast<std::size_t>(i)] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(1, 0);
    return out;
}

/// Number of non-crossing partitions of [n]: set partitions passing the quadruple scan.
inline std::size_t brute_force_nc_count(int n) {
    std::size_t count = 0;
    for (const auto& owner : set_partition_owners(n)) count += crosses(owner) ? 0 : 1;
    return count;
}

inline std::vector<std::vector<std::vector<int>>> brute_force_nc(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& blocks : all_set_partitions(n)) {
        std::vector<int> owner(static_cast<std::size_t>(n) + 1, 0);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int x : blocks[b]) owner[static_cast<std::size_t>(x)] = static_cast<int>(b);
        if (!crosses(owner)) out.push_back(blocks);
    }
    return out;
}

/// Planar rooted trees with n leaves whose vertices all have >= 2 inputs,
/// counted by splitting the leaves at the root into >= 2 consecutive groups.
inline std::uint64_t schroeder_trees(int n) {
    std::vector<std::uint64_t> trees(static_cast<std::size_t>(n) + 1, 0);  // trees with exactly i leaves
    std::vector<std::uint64_t> input(static_cast<std::size_t>(n) + 1, 0);  // leaf or tree
    for (int i = 1; i <= n; ++i) {
        // seq[j][s]: ordered sequences of j inputs covering s leaves.
        std::uint64_t total = 0;
        std::vector<std::uint64_t> seq(static_cast<std::size_t>(i) + 1, 0);
        seq[0] = 1;
        for (int parts = 1; parts <= i; ++parts) {
            std::vector<std::uint64_t> next(static_cast<std::size_t>(i) + 1, 0);
            for (int s = 0; s < i; ++s) {
                if (seq[static_cast<std::size_t>(s)] == 0) continue;
                for (int add = 1; s + add <= i && add < i; ++add)
                    next[static_cast<std::size_t>(s + add)] += seq[static_cast<std::size_t>(s)] * input[static_cast<std::size_t>(add)];
            }
            seq = next;
            if (parts >= 2) total += seq[static_cast<std::size_t>(i)];
        }
        trees[static_cast<std::size_t>(i)] = total;
        input[static_cast<std::size_t>(i)] = (i == 1 ? 1 : 0) + total;
    }
    return trees[static_cast<std::size_t>(n)];
}

/// f-hat(p, a_1..a_n) by direct nesting: a block's value is f applied to its
/// letters, each followed by the product of the blocks nested right after it.
inline BElem nested_eval(const NCPartition& p, const MapFamily& f, const std::vector<AElem>& args) {
    const auto owner = p.block_of();
    std::function<Poly(int, int)> interval;
    std::function<Poly(std::size_t)> value = [&](std::size_t b) {
        const Block& blk = p.block(b);
        std::map<int, AElem> subst;
        for (std::size_t j = 0; j < blk.size(); ++j) {
            Poly arg = args[static_cast<std::size_t>(blk[j] - 1)];
            if (j + 1 < blk.size() && blk[j + 1] > blk[j] + 1) arg = arg * interval(blk[j] + 1, blk[j + 1] - 1);
            subst.emplace(static_cast<int>(j) + 1, arg);
        }
        return substitute_letters(family_schema(f, static_cast<int>(blk.size())), subst);
    };
    interval = [&](int lo, int hi) {
        Poly acc = Poly::one();
        for (int pos = lo; pos <= hi;) {
            const std::size_t b = owner[static_cast<std::size_t>(pos)];
            acc = acc * value(b);
            pos = p.block(b).back() + 1;
        }
        return acc;
    };
    return interval(1, p.n());
}

/// a_1 a_2 ... a_n as an A-element.
inline AElem letter_product(int n) {
    Poly p = Poly::one();
    for (int j = 1; j <= n; ++j) p = p * Poly::letter(j);
    return p;
}

// ---------------------------------------------------------------------------
// Random generators (fixed seeds at call sites)

/// Random monomial of B-generators and moments of letters 1..3, 1..max_len atoms.
inline Monomial random_b_monomial(std::mt19937& rng, int max_len = 3) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> idx(1, 3);
    Monomial m;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) {
        if (kind(rng) == 0) {
            m.push_back(expectation(Poly::letter(idx(rng))).terms().begin()->first.front());
        } else {
            m.push_back(Atom::bgen(idx(rng)));
        }
    }
    return m;
}

inline BElem random_b_elem(std::mt19937& rng, int max_terms = 3) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-3, 3);
    Poly p;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) p.add(random_b_monomial(rng), coeff(rng));
    return p;
}

/// Random A-monomial alternating B-runs and letters 1..4.
inline AElem random_a_elem(std::mt19937& rng, int max_terms = 2) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> letters(1, 3);
    std::uniform_int_distribution<int> idx(1, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    Poly p;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        const int k = letters(rng);
        for (int j = 0; j < k; ++j) {
            if (coin(rng)) {
                auto b = random_b_monomial(rng, 2);
                m.insert(m.end(), b.begin(), b.end());
            }
            m.push_back(Atom::letter(idx(rng)));
        }
        if (coin(rng)) {
            auto b = random_b_monomial(rng, 2);
            m.insert(m.end(), b.begin(), b.end());
        }
        p.add(m, coeff(rng) == 0 ? 1 : coeff(rng));
    }
    return p;
}

/// Random order-preserving map of the given arity: slots 1..arity in order,
/// with B-monomials or a moment wrapping a slot interleaved.
inline MultiMap random_multimap(std::mt19937& rng, int arity, int max_terms = 2) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> coeff(1, 3);
    std::uniform_int_distribution<int> idx(1, 3);
    Poly body;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        if (arity == 0 || coin(rng) == 0) {
            auto b = random_b_monomial(rng, 2);
            m.insert(m.end(), b.begin(), b.end());
        }
        for (int s = 1; s <= arity; ++s) {
            if (coin(rng) == 0) {
                // E(a_i b_s a_j): a slot inside a moment interior.
                Application app{kExpectation, {idx(rng), idx(rng)}, {Monomial{Atom::slot(s)}}};
                m.push_back(Atom::apply(std::move(app)));
            } else {
                m.push_back(Atom::slot(s));
            }
            if (coin(rng) == 0) m.push_back(Atom::bgen(idx(rng)));
        }
        body.add(m, coeff(rng));
    }
    return MultiMap(arity, body);
}

/// Random planar tree shape with exactly `vertices` vertices and up to two
/// leaves per vertex, decorated by random maps.
inline DecoratedTree<MultiMap> random_decorated_tree(std::mt19937& rng, int vertices) {
    std::uniform_int_distribution<int> leaves(0, 2);
    // Random parent for each non-root vertex (preorder-compatible).
    std::vector<std::vector<int>> kids(static_cast<std::size_t>(vertices));
    for (int v = 1; v < vertices; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        kids[static_cast<std::size_t>(parent(rng))].push_back(v);
    }
    std::function<DecoratedTree<MultiMap>(int)> build = [&](int v) {
        std::vector<std::optional<DecoratedTree<MultiMap>>> inputs;
        for (int c : kids[static_cast<std::size_t>(v)]) inputs.emplace_back(build(c));
        const int extra = leaves(rng);
        for (int i = 0; i < extra; ++i) {
            std::uniform_int_distribution<std::size_t> at(0, inputs.size());
            inputs.insert(inputs.begin() + static_cast<std::ptrdiff_t>(at(rng)), std::nullopt);
        }
        return graft(random_multimap(rng, static_cast<int>(inputs.size())), inputs);
    };
    return build(0);
}

}  // namespace opfree::oracle

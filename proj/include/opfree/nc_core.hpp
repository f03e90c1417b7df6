#pragma once

// Non-crossing partitions, their planar rooted trees, and the leaf-insertion
// trees (intermediate with bottom/top split, and final) built from a
// partition and a vector of gap counts.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opfree/common.hpp"

namespace opfree {

using Block = std::vector<int>;

namespace detail {

/// Validates that `blocks` partition [n] and returns the canonical form
/// (each block sorted, blocks ordered by minimum).
inline std::vector<Block> canonical_blocks(std::vector<Block> blocks, int n) {
    require(n >= 1, "ground set size must be positive");
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    for (Block& b : blocks) {
        require(!b.empty(), "empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            require(x >= 1 && x <= n, "element " + std::to_string(x) + " out of range [1," + std::to_string(n) + "]");
            require(seen[static_cast<std::size_t>(x)] == 0, "element " + std::to_string(x) + " appears twice");
            seen[static_cast<std::size_t>(x)] = 1;
        }
    }
    for (int x = 1; x <= n; ++x) require(seen[static_cast<std::size_t>(x)] == 1, "element " + std::to_string(x) + " missing");
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
    return blocks;
}

inline bool crossing_canonical(const std::vector<Block>& blocks, int n) {
    std::vector<std::size_t> owner(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (int x : blocks[i]) owner[static_cast<std::size_t>(x)] = i;
    }
    // Two blocks cross iff some element of one lies strictly inside a gap
    // between consecutive elements of the other while the other block also
    // has an element outside that gap.
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        for (std::size_t k = 0; k + 1 < b.size(); ++k) {
            for (int x = b[k] + 1; x < b[k + 1]; ++x) {
                const Block& c = blocks[owner[static_cast<std::size_t>(x)]];
                if (c.front() < b[k] || c.back() > b[k + 1]) return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// True iff the partition has two blocks interleaving as w < x < y < z.
/// Throws InvalidInput if `blocks` is not a partition of [n].
inline bool is_crossing(std::vector<Block> blocks, int n) {
    return detail::crossing_canonical(detail::canonical_blocks(std::move(blocks), n), n);
}

/// A non-crossing partition of [n] with blocks ordered by their minima.
class NCPartition {
public:
    NCPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(detail::canonical_blocks(std::move(blocks), n)) {
        require(!detail::crossing_canonical(blocks_, n_), "partition is crossing");
    }

    static NCPartition trivial(int n) {
        Block all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 1);
        return NCPartition(n, {all});
    }

    int n() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& block(std::size_t i) const { return blocks_.at(i); }
    bool is_trivial() const { return blocks_.size() == 1; }

    /// Block index of each element (index 0 unused).
    std::vector<std::size_t> block_of() const {
        std::vector<std::size_t> out(static_cast<std::size_t>(n_) + 1, 0);
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            for (int x : blocks_[i]) out[static_cast<std::size_t>(x)] = i;
        }
        return out;
    }

    friend bool operator==(const NCPartition&, const NCPartition&) = default;

private:
    int n_;
    std::vector<Block> blocks_;
};

/// "(146)(2)(3)(5)"; elements are comma-separated when n > 9.
inline std::string to_string(const NCPartition& p) {
    std::string s;
    const bool commas = p.n() > 9;
    for (const Block& b : p.blocks()) {
        s += '(';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (commas && i > 0) s += ',';
            s += std::to_string(b[i]);
        }
        s += ')';
    }
    return s;
}

/// Parses "(146)(2)(3)(5)" (single-digit elements) or "(1,4,6)(2)..." .
/// The ground set is [max element] unless `n` is given.
inline NCPartition parse_partition(std::string_view text, std::optional<int> n = std::nullopt) {
    std::vector<Block> blocks;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    require(i < text.size(), "empty partition text");
    while (i < text.size()) {
        require(text[i] == '(', "expected '(' in partition text");
        ++i;
        Block b;
        const bool commas = text.substr(i, text.find(')', i) - i).find(',') != std::string_view::npos;
        while (i < text.size() && text[i] != ')') {
            if (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
                continue;
            }
            require(std::isdigit(static_cast<unsigned char>(text[i])) != 0, "unexpected character in partition text");
            if (commas) {
                int v = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
                    v = v * 10 + (text[i] - '0');
                    ++i;
                }
                b.push_back(v);
            } else {
                b.push_back(text[i] - '0');
                ++i;
            }
        }
        require(i < text.size(), "unterminated block in partition text");
        ++i;
        blocks.push_back(std::move(b));
        skip_ws();
    }
    int max_elem = 0;
    for (const Block& b : blocks) {
        for (int x : b) max_elem = std::max(max_elem, x);
    }
    return NCPartition(n.value_or(max_elem), std::move(blocks));
}

/// All non-crossing partitions of [n] in lexicographic order of their
/// element -> block-index maps. With `blocks`, only those with that many blocks.
inline std::vector<NCPartition> enumerate_nc(int n, std::optional<std::size_t> blocks = std::nullopt) {
    require(n >= 1, "enumerate_nc requires n >= 1");
    std::vector<NCPartition> out;
    std::vector<std::size_t> owner(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> last;   // last element of each open block
    std::vector<int> first;  // minimum of each block

    auto emit = [&] {
        if (blocks && last.size() != *blocks) return;
        std::vector<Block> bs(last.size());
        for (int x = 1; x <= n; ++x) bs[owner[static_cast<std::size_t>(x)]].push_back(x);
        out.emplace_back(n, std::move(bs));
    };

    // Restricted growth strings in lexicographic order; element i may join
    // block b only if every element between last(b) and i belongs to a
    // block opened after last(b).
    auto rec = [&](auto&& self, int i) -> void {
        if (i > n) {
            emit();
            return;
        }
        for (std::size_t b = 0; b <= last.size(); ++b) {
            if (b == last.size()) {
                if (blocks && last.size() >= *blocks) break;
                owner[static_cast<std::size_t>(i)] = b;
                last.push_back(i);
                first.push_back(i);
                self(self, i + 1);
                last.pop_back();
                first.pop_back();
                break;
            }
            bool ok = true;
            for (int y = last[b] + 1; y < i && ok; ++y) {
                ok = first[owner[static_cast<std::size_t>(y)]] > last[b];
            }
            if (!ok) continue;
            const int saved = last[b];
            owner[static_cast<std::size_t>(i)] = b;
            last[b] = i;
            self(self, i + 1);
            last[b] = saved;
        }
    };
    rec(rec, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Planar rooted trees

struct Leaf {
    int number;
    friend bool operator==(const Leaf&, const Leaf&) = default;
};
struct VertexRef {
    std::size_t index;
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};
using Child = std::variant<Leaf, VertexRef>;

inline bool is_leaf(const Child& c) { return std::holds_alternative<Leaf>(c); }

/// Vertices in an indexed store; each holds its ordered incoming half-edges.
/// Leaves are numbered 1..L in depth-first left-to-right order from the root.
struct PlanarTree {
    std::vector<std::vector<Child>> vertices;
    std::size_t root = 0;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t arity(std::size_t v) const { return vertices.at(v).size(); }

    std::size_t leaf_count() const {
        std::size_t n = 0;
        for (const auto& cs : vertices) {
            for (const Child& c : cs) n += is_leaf(c) ? 1 : 0;
        }
        return n;
    }

    /// Vertex indices in depth-first preorder from the root.
    std::vector<std::size_t> preorder() const {
        std::vector<std::size_t> out;
        auto rec = [&](auto&& self, std::size_t v) -> void {
            out.push_back(v);
            for (const Child& c : vertices[v]) {
                if (auto* r = std::get_if<VertexRef>(&c)) self(self, r->index);
            }
        };
        rec(rec, root);
        return out;
    }

    friend bool operator==(const PlanarTree&, const PlanarTree&) = default;
};

/// Checks acyclicity, single parents, reachability, and depth-first leaf numbering.
inline void validate(const PlanarTree& t) {
    ensure(t.root < t.vertices.size(), "root index out of range");
    std::vector<int> parents(t.vertices.size(), 0);
    for (const auto& cs : t.vertices) {
        for (const Child& c : cs) {
            if (auto* r = std::get_if<VertexRef>(&c)) {
                ensure(r->index < t.vertices.size(), "child vertex index out of range");
                ++parents[r->index];
            }
        }
    }
    ensure(parents[t.root] == 0, "root has a parent");
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
        if (v != t.root) ensure(parents[v] == 1, "vertex " + std::to_string(v) + " does not have exactly one parent");
    }
    std::vector<char> visited(t.vertices.size(), 0);
    int next_leaf = 1;
    auto rec = [&](auto&& self, std::size_t v) -> void {
        ensure(!visited[v], "cycle in tree");
        visited[v] = 1;
        for (const Child& c : t.vertices[v]) {
            if (auto* l = std::get_if<Leaf>(&c)) {
                ensure(l->number == next_leaf, "leaves are not numbered in depth-first order");
                ++next_leaf;
            } else {
                self(self, std::get<VertexRef>(c).index);
            }
        }
    };
    rec(rec, t.root);
    ensure(std::all_of(visited.begin(), visited.end(), [](char x) { return x != 0; }), "unreachable vertex");
}

/// Renumbers leaves 1..L in depth-first order.
inline void renumber_leaves(PlanarTree& t) {
    int next = 1;
    auto rec = [&](auto&& self, std::size_t v) -> void {
        for (Child& c : t.vertices[v]) {
            if (auto* l = std::get_if<Leaf>(&c)) {
                l->number = next++;
            } else {
                self(self, std::get<VertexRef>(c).index);
            }
        }
    };
    rec(rec, t.root);
}

/// Preorder shape code: each vertex contributes its arity followed by its
/// children, with -1 standing for a leaf.
inline std::vector<int> shape_code(const PlanarTree& t) {
    std::vector<int> code;
    auto rec = [&](auto&& self, std::size_t v) -> void {
        code.push_back(static_cast<int>(t.vertices[v].size()));
        for (const Child& c : t.vertices[v]) {
            if (is_leaf(c)) {
                code.push_back(-1);
            } else {
                self(self, std::get<VertexRef>(c).index);
            }
        }
    };
    rec(rec, t.root);
    return code;
}

/// Rebuilds a tree (vertices stored in preorder) from its shape code.
inline PlanarTree tree_from_shape(const std::vector<int>& code) {
    PlanarTree t;
    std::size_t pos = 0;
    auto rec = [&](auto&& self) -> std::size_t {
        ensure(pos < code.size() && code[pos] >= 0, "malformed shape code");
        const int k = code[pos++];
        const std::size_t v = t.vertices.size();
        t.vertices.emplace_back();
        for (int i = 0; i < k; ++i) {
            ensure(pos < code.size(), "truncated shape code");
            if (code[pos] == -1) {
                ++pos;
                t.vertices[v].push_back(Leaf{0});
            } else {
                const std::size_t c = self(self);
                t.vertices[v].push_back(VertexRef{c});
            }
        }
        return v;
    };
    t.root = rec(rec);
    ensure(pos == code.size(), "trailing data in shape code");
    renumber_leaves(t);
    return t;
}

namespace detail {

/// Index of the innermost block containing x <= gap < y, or nullopt.
inline std::optional<std::size_t> straddling_block(const NCPartition& p, int gap) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < p.block_count(); ++i) {
        const Block& b = p.block(i);
        if (b.front() > gap || b.back() <= gap) continue;
        if (best) {
            const Block& o = p.block(*best);
            ensure((o.front() < b.front() && b.back() < o.back()) || (b.front() < o.front() && o.back() < b.back()),
                   "straddling blocks do not form a chain");
        }
        if (!best || p.block(*best).front() < b.front()) best = i;
    }
    return best;
}

}  // namespace detail

/// Where the new leaves of gap i attach: the root, or a block vertex.
struct GapTarget {
    std::optional<std::size_t> block;  // nullopt = root (star)
    bool is_root() const { return !block.has_value(); }
    friend bool operator==(const GapTarget&, const GapTarget&) = default;
};

/// The straddling block of gap i (elements x <= i < y) with the largest
/// minimum, i.e. the innermost one; the root if there is none.
inline GapTarget gap_target(const NCPartition& p, int i) {
    require(i >= 0 && i <= p.n(), "gap index out of range");
    return GapTarget{detail::straddling_block(p, i)};
}

/// Vertex 0 is the root; vertex j + 1 is block j. Leaf numbers are the elements.
inline PlanarTree partition_to_tree(const NCPartition& p) {
    const std::size_t k = p.block_count();
    PlanarTree t;
    t.vertices.resize(k + 1);
    t.root = 0;
    // (sort key, child) per vertex; a nested block sorts by its minimum.
    std::vector<std::vector<std::pair<int, Child>>> items(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
        const Block& b = p.block(j);
        for (int x : b) items[j + 1].emplace_back(x, Leaf{x});
        auto parent = detail::straddling_block(p, b.front() - 1);
        items[parent ? *parent + 1 : 0].emplace_back(b.front(), VertexRef{j + 1});
    }
    for (std::size_t v = 0; v <= k; ++v) {
        std::sort(items[v].begin(), items[v].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [key, c] : items[v]) t.vertices[v].push_back(c);
    }
    return t;
}

/// Inverse of partition_to_tree. Requires that the root carries no leaves
/// and every other vertex carries at least one.
inline NCPartition tree_to_partition(const PlanarTree& t) {
    try {
        validate(t);
    } catch (const InvariantViolation& e) {
        throw InvalidInput(std::string("not a planar rooted tree: ") + e.what());
    }
    std::vector<Block> blocks;
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
        Block b;
        for (const Child& c : t.vertices[v]) {
            if (auto* l = std::get_if<Leaf>(&c)) b.push_back(l->number);
        }
        if (v == t.root) {
            require(b.empty(), "root vertex carries leaves");
        } else {
            require(!b.empty(), "non-root vertex " + std::to_string(v) + " carries no leaves");
            blocks.push_back(std::move(b));
        }
    }
    return NCPartition(static_cast<int>(t.leaf_count()), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Leaf-insertion trees

enum class VertexKind { Root, Bottom, Top };

inline char kind_label(VertexKind k) {
    switch (k) {
        case VertexKind::Root: return 'r';
        case VertexKind::Bottom: return 'b';
        case VertexKind::Top: return 't';
    }
    return '?';
}

struct OriginalLeaf {
    int position;  // element of [n]
    friend bool operator==(const OriginalLeaf&, const OriginalLeaf&) = default;
};
struct InsertedLeaf {
    int gap;      // 0..n
    int ordinal;  // 0..i_gap - 1
    friend bool operator==(const InsertedLeaf&, const InsertedLeaf&) = default;
};
using LeafKind = std::variant<OriginalLeaf, InsertedLeaf>;

struct InsertedTree {
    PlanarTree tree;
    std::vector<VertexKind> vertex_kind;           // per vertex
    std::vector<std::optional<std::size_t>> block;  // block index of bottom vertices
    std::vector<LeafKind> leaf_kind;               // per leaf number - 1
};

struct InsertionTrees {
    InsertedTree intermediate;  // after the bottom/top split, original leaves kept
    InsertedTree final;         // original leaves deleted, bivalent root removed
};

/// Attaches counts[j] new leaves in gap j, splits every block vertex into a
/// bottom vertex keeping its original leaves plus one top vertex per run of
/// two or more non-original half-edges, then deletes original leaves and a
/// bivalent root.
inline InsertionTrees build_inserted_tree(const NCPartition& p, const std::vector<int>& counts) {
    const int n = p.n();
    require(counts.size() == static_cast<std::size_t>(n) + 1,
            "expected " + std::to_string(n + 1) + " gap counts, got " + std::to_string(counts.size()));
    for (int c : counts) require(c >= 0, "gap counts must be non-negative");
    const std::size_t k = p.block_count();

    struct Item {
        int key, ordinal;
        enum class Type { Orig, Sub, New } type;
        int value;  // element, block index, or gap
    };
    // Node 0 = root, node j + 1 = block j, mirroring partition_to_tree.
    std::vector<std::vector<Item>> items(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
        const Block& b = p.block(j);
        for (int x : b) items[j + 1].push_back({2 * x, 0, Item::Type::Orig, x});
        auto parent = detail::straddling_block(p, b.front() - 1);
        items[parent ? *parent + 1 : 0].push_back({2 * b.front(), 0, Item::Type::Sub, static_cast<int>(j)});
    }
    for (int g = 0; g <= n; ++g) {
        auto target = detail::straddling_block(p, g);
        for (int o = 0; o < counts[static_cast<std::size_t>(g)]; ++o) {
            items[target ? *target + 1 : 0].push_back({2 * g + 1, o, Item::Type::New, g});
        }
    }
    for (auto& v : items) {
        std::sort(v.begin(), v.end(), [](const Item& a, const Item& b) {
            return a.key != b.key ? a.key < b.key : a.ordinal < b.ordinal;
        });
    }

    InsertedTree mid;
    // Bottom vertex index of each block.
    std::vector<std::size_t> bottom_of(k);
    mid.tree.vertices.emplace_back();
    mid.vertex_kind.push_back(VertexKind::Root);
    mid.block.push_back(std::nullopt);
    for (std::size_t j = 0; j < k; ++j) {
        bottom_of[j] = mid.tree.vertices.size();
        mid.tree.vertices.emplace_back();
        mid.vertex_kind.push_back(VertexKind::Bottom);
        mid.block.push_back(j);
    }
    auto to_child = [&](const Item& it, std::vector<LeafKind>& kinds) -> Child {
        switch (it.type) {
            case Item::Type::Orig: kinds.push_back(OriginalLeaf{it.value}); return Leaf{0};
            case Item::Type::New: kinds.push_back(InsertedLeaf{it.value, it.ordinal}); return Leaf{0};
            case Item::Type::Sub: return VertexRef{bottom_of[static_cast<std::size_t>(it.value)]};
        }
        return Leaf{0};
    };

    // Leaf kinds are recorded per vertex in child order, then stitched into
    // depth-first order once the tree is complete.
    std::vector<std::vector<LeafKind>> kinds_at;
    kinds_at.resize(1 + k);
    for (const Item& it : items[0]) mid.tree.vertices[0].push_back(to_child(it, kinds_at[0]));
    for (std::size_t j = 0; j < k; ++j) {
        const auto& its = items[j + 1];
        const std::size_t bottom = bottom_of[j];
        std::size_t i = 0;
        while (i < its.size()) {
            if (its[i].type == Item::Type::Orig) {
                mid.tree.vertices[bottom].push_back(to_child(its[i], kinds_at[bottom]));
                ++i;
                continue;
            }
            std::size_t e = i;
            while (e < its.size() && its[e].type != Item::Type::Orig) ++e;
            ensure(i > 0 && e < its.size(), "non-original half-edge before the first or after the last original leaf");
            if (e - i == 1) {
                mid.tree.vertices[bottom].push_back(to_child(its[i], kinds_at[bottom]));
            } else {
                const std::size_t top = mid.tree.vertices.size();
                mid.tree.vertices.emplace_back();
                mid.vertex_kind.push_back(VertexKind::Top);
                mid.block.push_back(std::nullopt);
                kinds_at.emplace_back();
                for (std::size_t q = i; q < e; ++q) mid.tree.vertices[top].push_back(to_child(its[q], kinds_at[top]));
                mid.tree.vertices[bottom].push_back(VertexRef{top});
            }
            i = e;
        }
    }
    auto stitch = [](InsertedTree& t, const std::vector<std::vector<LeafKind>>& per_vertex) {
        t.leaf_kind.clear();
        std::vector<std::size_t> cursor(per_vertex.size(), 0);
        auto rec = [&](auto&& self, std::size_t v) -> void {
            for (const Child& c : t.tree.vertices[v]) {
                if (is_leaf(c)) {
                    t.leaf_kind.push_back(per_vertex[v][cursor[v]++]);
                } else {
                    self(self, std::get<VertexRef>(c).index);
                }
            }
        };
        rec(rec, t.tree.root);
    };
    renumber_leaves(mid.tree);
    stitch(mid, kinds_at);
    validate(mid.tree);

    // Final tree: drop original leaves, then a root left with one child.
    InsertedTree fin;
    std::vector<std::vector<LeafKind>> fin_kinds(mid.tree.vertices.size());
    fin.tree.vertices.resize(mid.tree.vertices.size());
    for (std::size_t v = 0; v < mid.tree.vertices.size(); ++v) {
        std::size_t leaf_cursor = 0;
        for (const Child& c : mid.tree.vertices[v]) {
            if (is_leaf(c)) {
                const LeafKind& lk = kinds_at[v][leaf_cursor++];
                if (std::holds_alternative<OriginalLeaf>(lk)) continue;
                fin_kinds[v].push_back(lk);
            }
            fin.tree.vertices[v].push_back(c);
        }
    }
    fin.vertex_kind = mid.vertex_kind;
    fin.block = mid.block;
    fin.tree.root = 0;
    if (fin.tree.vertices[0].size() == 1 && !is_leaf(fin.tree.vertices[0][0])) {
        // Remove vertex 0 and shift indices down by one.
        const std::size_t new_root = std::get<VertexRef>(fin.tree.vertices[0][0]).index;
        fin.tree.vertices.erase(fin.tree.vertices.begin());
        fin.vertex_kind.erase(fin.vertex_kind.begin());
        fin.block.erase(fin.block.begin());
        fin_kinds.erase(fin_kinds.begin());
        for (auto& cs : fin.tree.vertices) {
            for (Child& c : cs) {
                if (auto* r = std::get_if<VertexRef>(&c)) --r->index;
            }
        }
        fin.tree.root = new_root - 1;
    }
    renumber_leaves(fin.tree);
    stitch(fin, fin_kinds);
    validate(fin.tree);
    return {std::move(mid), std::move(fin)};
}

/// Original leaf positions and the 0/1 insertion pattern between consecutive
/// original leaves of a bottom vertex of an intermediate tree.
struct BottomProfile {
    std::vector<int> leaves;
    std::vector<int> between;  // size leaves.size() - 1, entries 0 or 1
};

inline BottomProfile bottom_profile(const InsertedTree& mid, std::size_t v) {
    ensure(mid.vertex_kind.at(v) == VertexKind::Bottom, "not a bottom vertex");
    BottomProfile prof;
    int pending = 0;
    for (const Child& c : mid.tree.vertices[v]) {
        if (auto* l = std::get_if<Leaf>(&c)) {
            const LeafKind& lk = mid.leaf_kind[static_cast<std::size_t>(l->number - 1)];
            if (auto* o = std::get_if<OriginalLeaf>(&lk)) {
                ensure(prof.leaves.empty() || pending <= 1, "run longer than one at a bottom vertex");
                if (!prof.leaves.empty()) prof.between.push_back(pending);
                prof.leaves.push_back(o->position);
                pending = 0;
                continue;
            }
        }
        ensure(!prof.leaves.empty(), "bottom vertex does not start with an original leaf");
        ++pending;
    }
    ensure(pending == 0, "bottom vertex does not end with an original leaf");
    return prof;
}

// ---------------------------------------------------------------------------
// DOT export

namespace detail {

/// Vertices are named by preorder position, leaves by their number.
inline std::string dot_body(const PlanarTree& t, const std::function<std::string(std::size_t)>& vertex_label,
                            const std::function<std::string(int)>& leaf_attrs) {
    std::ostringstream os;
    const auto order = t.preorder();
    std::vector<std::size_t> pos(t.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t i = 0; i < order.size(); ++i) os << "  v" << i << " [label=\"" << vertex_label(order[i]) << "\"];\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const Child& c : t.vertices[order[i]]) {
            if (auto* l = std::get_if<Leaf>(&c)) {
                os << "  l" << l->number << " [" << leaf_attrs(l->number) << "];\n";
                os << "  v" << i << " -> l" << l->number << ";\n";
            } else {
                os << "  v" << i << " -> v" << pos[std::get<VertexRef>(c).index] << ";\n";
            }
        }
    }
    return os.str();
}

}  // namespace detail

inline std::string to_dot(const PlanarTree& t, std::string_view name = "tree") {
    std::string s = "digraph " + std::string(name) + " {\n";
    s += detail::dot_body(
        t, [&](std::size_t v) { return v == t.root ? std::string("r") : std::string(); },
        [](int number) { return "label=\"" + std::to_string(number) + "\", shape=plaintext"; });
    return s + "}\n";
}

/// Vertices labelled r/b/t; original leaves labelled by their position,
/// inserted leaves drawn as unlabelled points.
inline std::string to_dot(const InsertedTree& t, std::string_view name = "tree") {
    std::string s = "digraph " + std::string(name) + " {\n";
    s += detail::dot_body(
        t.tree, [&](std::size_t v) { return std::string(1, kind_label(t.vertex_kind[v])); },
        [&](int number) {
            const LeafKind& lk = t.leaf_kind[static_cast<std::size_t>(number - 1)];
            if (auto* o = std::get_if<OriginalLeaf>(&lk)) {
                return "label=\"" + std::to_string(o->position) + "\", shape=plaintext";
            }
            return std::string("label=\"\", shape=point");
        });
    return s + "}\n";
}

}  // namespace opfree

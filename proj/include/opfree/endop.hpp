#pragma once

// Symbolic End B: order-preserving B-multilinear maps with their operadic
// composition, and composition along decorated planar trees.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "opfree/common.hpp"
#include "opfree/nc_core.hpp"
#include "opfree/symalg.hpp"

namespace opfree {

/// A map B^{(x)n} -> B. Every monomial of the body reads Slot(1)..Slot(n)
/// exactly once, left to right.
class MultiMap {
public:
    MultiMap(int arity, Poly body) : arity_(arity), body_(std::move(body)) { check(); }

    static MultiMap identity() { return MultiMap(1, Poly::slot(1)); }
    static MultiMap zero(int arity) { return MultiMap(arity, Poly{}); }
    static MultiMap from_b(BElem b) { return MultiMap(0, std::move(b)); }

    int arity() const { return arity_; }
    const Poly& body() const { return body_; }
    bool is_zero() const { return body_.is_zero(); }

    /// Arity-0 maps are elements of B.
    const BElem& as_b() const {
        require(arity_ == 0, "only arity-0 maps are elements of B");
        return body_;
    }

    MultiMap& operator+=(const MultiMap& o) {
        require(o.arity_ == arity_, "adding maps of different arity");
        body_ += o.body_;
        return *this;
    }
    MultiMap& operator-=(const MultiMap& o) {
        require(o.arity_ == arity_, "subtracting maps of different arity");
        body_ -= o.body_;
        return *this;
    }
    friend MultiMap operator+(MultiMap x, const MultiMap& y) { return x += y; }
    friend MultiMap operator-(MultiMap x, const MultiMap& y) { return x -= y; }
    friend MultiMap operator*(Coeff s, const MultiMap& x) { return MultiMap(x.arity_, s * x.body_); }

    friend bool operator==(const MultiMap&, const MultiMap&) = default;

private:
    void check() const {
        require(arity_ >= 0, "negative arity");
        for (const auto& [m, c] : body_.terms()) {
            const auto slots = slot_sequence(m);
            bool ok = slots.size() == static_cast<std::size_t>(arity_);
            for (std::size_t i = 0; ok && i < slots.size(); ++i) ok = slots[i] == static_cast<int>(i) + 1;
            ensure(ok, "monomial '" + to_string(m) + "' does not use slots 1.." + std::to_string(arity_) + " once in order");
            for (const Atom& a : m) ensure(a.kind() != AtomKind::Letter, "map body contains a bare A-letter");
        }
    }

    int arity_;
    Poly body_;
};

/// Multiplication B^{(x)n} -> B.
inline MultiMap mu(int n) {
    require(n >= 1, "mu(n) requires n >= 1; B is not assumed unital");
    Monomial m;
    for (int t = 1; t <= n; ++t) m.push_back(Atom::slot(t));
    return MultiMap(n, Poly::monomial(std::move(m)));
}

/// Renames Slot(t) to Slot(t + offset).
inline Poly shift_slots(const Poly& x, int offset) {
    if (offset == 0) return x;
    return substitute_slots(x, [offset](int t) { return Poly::slot(t + offset); });
}

/// f(g_1, ..., g_n): substitutes g_t into slot t, renumbering slots left to right.
inline MultiMap operadic_compose(const MultiMap& f, const std::vector<MultiMap>& gs) {
    require(gs.size() == static_cast<std::size_t>(f.arity()),
            "arity mismatch: map of arity " + std::to_string(f.arity()) + " composed with " + std::to_string(gs.size()) +
                " maps");
    std::vector<Poly> shifted;
    shifted.reserve(gs.size());
    int offset = 0;
    for (const MultiMap& g : gs) {
        shifted.push_back(shift_slots(g.body(), offset));
        offset += g.arity();
    }
    Poly body = substitute_slots(f.body(), [&](int t) { return shifted.at(static_cast<std::size_t>(t - 1)); });
    return MultiMap(offset, std::move(body));
}

// ---------------------------------------------------------------------------
// Decorated trees

/// A planar tree with one decoration per vertex (same indexing as the tree's
/// vertex store).
template <class D>
struct DecoratedTree {
    PlanarTree tree;
    std::vector<D> decorations;

    const D& root_decoration() const { return decorations.at(tree.root); }
    std::size_t vertex_count() const { return tree.vertex_count(); }
};

/// A single vertex with `arity` leaves.
template <class D>
DecoratedTree<D> corolla(D decoration, int arity) {
    DecoratedTree<D> t;
    t.tree.vertices.emplace_back();
    for (int i = 1; i <= arity; ++i) t.tree.vertices[0].push_back(Leaf{i});
    t.tree.root = 0;
    t.decorations.push_back(std::move(decoration));
    return t;
}

/// New root decorated by `decoration` whose t-th input is a leaf (nullopt)
/// or the given subtree. Vertices are stored in preorder.
template <class D>
DecoratedTree<D> graft(D decoration, const std::vector<std::optional<DecoratedTree<D>>>& inputs) {
    DecoratedTree<D> t;
    t.tree.vertices.emplace_back();
    t.decorations.push_back(std::move(decoration));
    t.tree.root = 0;
    for (const auto& in : inputs) {
        if (!in) {
            t.tree.vertices[0].push_back(Leaf{0});
            continue;
        }
        const std::size_t offset = t.tree.vertices.size();
        // Copy the subtree in its own preorder so the result stays preordered.
        std::vector<std::size_t> order = in->tree.preorder();
        std::vector<std::size_t> remap(in->tree.vertices.size());
        for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = offset + i;
        for (std::size_t old : order) {
            std::vector<Child> cs;
            for (const Child& c : in->tree.vertices[old]) {
                if (auto* r = std::get_if<VertexRef>(&c)) {
                    cs.push_back(VertexRef{remap[r->index]});
                } else {
                    cs.push_back(c);
                }
            }
            t.tree.vertices.push_back(std::move(cs));
            t.decorations.push_back(in->decorations[old]);
        }
        t.tree.vertices[0].push_back(VertexRef{offset});
    }
    renumber_leaves(t.tree);
    return t;
}

/// Replaces every decoration by `f(decoration)`.
template <class D, class F>
auto map_decorations(const DecoratedTree<D>& t, F&& f) {
    using R = std::decay_t<decltype(f(std::declval<const D&>()))>;
    DecoratedTree<R> out;
    out.tree = t.tree;
    out.decorations.reserve(t.decorations.size());
    for (const D& d : t.decorations) out.decorations.push_back(f(d));
    return out;
}

/// Composition in End B of all decorations, bottom-up.
inline MultiMap compose_subtree(const DecoratedTree<MultiMap>& t, std::size_t v) {
    const auto& children = t.tree.vertices.at(v);
    const MultiMap& f = t.decorations.at(v);
    require(f.arity() == static_cast<int>(children.size()),
            "vertex " + std::to_string(v) + " has " + std::to_string(children.size()) +
                " inputs but its decoration has arity " + std::to_string(f.arity()));
    std::vector<MultiMap> args;
    args.reserve(children.size());
    for (const Child& c : children) {
        if (is_leaf(c)) {
            args.push_back(MultiMap::identity());
        } else {
            args.push_back(compose_subtree(t, std::get<VertexRef>(c).index));
        }
    }
    return operadic_compose(f, args);
}

inline MultiMap compose_tree(const DecoratedTree<MultiMap>& t) { return compose_subtree(t, t.tree.root); }

// ---------------------------------------------------------------------------
// Rendering

/// "(b1, b2) -> b1 E(a1) b2"; arity-0 maps render as their B value.
inline std::string to_string(const MultiMap& f) {
    if (f.arity() == 0) return to_string(f.body());
    std::string s = "(";
    for (int t = 1; t <= f.arity(); ++t) {
        if (t > 1) s += ", ";
        s += "b" + std::to_string(t);
    }
    return s + ") -> " + to_string(f.body());
}

}  // namespace opfree

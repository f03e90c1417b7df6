#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "opfree/opfree.hpp"

namespace opfree::testing {

/// Compact outline of an inserted tree: a vertex prints as its kind letter
/// followed by its inputs in parentheses; original leaves print as their
/// position and inserted leaves as "_".
inline std::string sketch(const InsertedTree& t, std::size_t v) {
    std::string s(1, kind_label(t.vertex_kind[v]));
    s += "(";
    bool first = true;
    for (const Child& c : t.tree.vertices[v]) {
        if (!first) s += " ";
        first = false;
        if (auto* l = std::get_if<Leaf>(&c)) {
            const LeafKind& lk = t.leaf_kind[static_cast<std::size_t>(l->number - 1)];
            if (auto* o = std::get_if<OriginalLeaf>(&lk)) {
                s += std::to_string(o->position);
            } else {
                s += "_";
            }
        } else {
            s += sketch(t, std::get<VertexRef>(c).index);
        }
    }
    return s + ")";
}

inline std::string sketch(const InsertedTree& t) { return sketch(t, t.tree.root); }

/// Same outline for a plain planar tree: vertices as "v", leaves by number.
inline std::string sketch(const PlanarTree& t, std::size_t v) {
    std::string s = "v(";
    bool first = true;
    for (const Child& c : t.vertices[v]) {
        if (!first) s += " ";
        first = false;
        if (auto* l = std::get_if<Leaf>(&c)) {
            s += std::to_string(l->number);
        } else {
            s += sketch(t, std::get<VertexRef>(c).index);
        }
    }
    return s + ")";
}

inline std::string sketch(const PlanarTree& t) { return sketch(t, t.root); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace opfree::testing

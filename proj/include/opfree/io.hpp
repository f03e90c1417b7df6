#pragma once

// JSON encodings of partitions, trees, terms, tree-series and verifier
// reports. Schemas for these live in docs/schemas/.

#include <string>

#include "json.hpp"
#include "opfree/opfree.hpp"

namespace opfree::io {

using nlohmann::json;

inline json to_json(const NCPartition& p) {
    return json{{"n", p.n()}, {"blocks", p.blocks()}, {"text", to_string(p)}};
}

inline json to_json(const PlanarTree& t) {
    json vertices = json::array();
    const auto order = t.preorder();
    std::vector<std::size_t> pos(t.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t v : order) {
        json children = json::array();
        for (const Child& c : t.vertices[v]) {
            if (auto* l = std::get_if<Leaf>(&c)) {
                children.push_back(json{{"leaf", l->number}});
            } else {
                children.push_back(json{{"vertex", pos[std::get<VertexRef>(c).index]}});
            }
        }
        vertices.push_back(json{{"children", children}});
    }
    return json{{"root", 0}, {"vertices", vertices}};
}

inline json to_json(const InsertedTree& t) {
    json j = to_json(t.tree);
    const auto order = t.tree.preorder();
    for (std::size_t i = 0; i < order.size(); ++i) {
        j["vertices"][i]["kind"] = std::string(1, kind_label(t.vertex_kind[order[i]]));
        if (auto b = t.block[order[i]]) j["vertices"][i]["block"] = *b;
    }
    json leaves = json::array();
    for (const LeafKind& lk : t.leaf_kind) {
        if (auto* o = std::get_if<OriginalLeaf>(&lk)) {
            leaves.push_back(json{{"original", o->position}});
        } else {
            const auto& in = std::get<InsertedLeaf>(lk);
            leaves.push_back(json{{"inserted", {{"gap", in.gap}, {"ordinal", in.ordinal}}}});
        }
    }
    j["leaves"] = leaves;
    return j;
}

json to_json(const Monomial& m);

inline json to_json(const Atom& a) {
    switch (a.kind()) {
        case AtomKind::BGen: return json{{"kind", "bgen"}, {"index", a.index()}};
        case AtomKind::Slot: return json{{"kind", "slot"}, {"index", a.index()}};
        case AtomKind::Letter: return json{{"kind", "letter"}, {"index", a.index()}};
        case AtomKind::Apply: break;
    }
    const Application& app = a.application();
    json interiors = json::array();
    for (const Monomial& u : app.interiors) interiors.push_back(to_json(u));
    return json{{"kind", "apply"}, {"symbol", std::string(1, app.symbol)}, {"letters", app.letters}, {"interiors", interiors}};
}

inline json to_json(const Monomial& m) {
    json out = json::array();
    for (const Atom& a : m) out.push_back(to_json(a));
    return out;
}

/// List of (coefficient, monomial) terms.
inline json terms_json(const Poly& p) {
    json out = json::array();
    for (const auto& [m, c] : p.terms()) out.push_back(json{{"coeff", c}, {"monomial", to_json(m)}, {"text", to_string(m)}});
    return out;
}

inline json to_json(const Poly& p) { return json{{"terms", terms_json(p)}, {"text", to_string(p)}}; }

inline json to_json(const MultiMap& f) {
    return json{{"arity", f.arity()}, {"terms", terms_json(f.body())}, {"text", to_string(f.body())}};
}

inline json to_json(const TreeSeries& s) {
    json terms = json::array();
    for (const auto& [k, c] : s.terms()) {
        json decs = json::array();
        for (const Monomial& m : k.decorations) decs.push_back(to_json(m));
        terms.push_back(json{{"coeff", c}, {"shape", k.shape}, {"decorations", decs}, {"text", to_string(k)}});
    }
    return json{{"terms", terms}};
}

inline json to_json(const WordCheck& c) {
    json j{{"word", to_string(c.word)},
           {"case", to_string(c.theorem_case)},
           {"closed_form_ok", c.closed_form_ok},
           {"twist_ok", c.twist_ok}};
    if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
    return j;
}

inline json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const WordCheck& c : r.checks) checks.push_back(to_json(c));
    return json{{"all_passed", r.all_passed()}, {"checks", checks}};
}

}  // namespace opfree::io

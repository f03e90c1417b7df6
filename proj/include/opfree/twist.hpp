#pragma once

// Finite tree-series in the cofree cooperad on End B, the moment and cumulant
// morphisms out of coAs_A, the canonical twist and its inverse, and a
// verifier for the closed form of the cumulant restriction and for M = Phi o K.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "opfree/coas.hpp"
#include "opfree/common.hpp"
#include "opfree/cumulants.hpp"
#include "opfree/endop.hpp"

namespace opfree {

// ---------------------------------------------------------------------------
// Tree-series

/// A planar tree with one monomial decoration per vertex (preorder).
struct TreeKey {
    std::vector<int> shape;
    std::vector<Monomial> decorations;

    std::size_t vertex_count() const { return decorations.size(); }
};

struct TreeKeyLess {
    bool operator()(const TreeKey& x, const TreeKey& y) const {
        if (x.vertex_count() != y.vertex_count()) return x.vertex_count() < y.vertex_count();
        if (x.shape != y.shape) return x.shape < y.shape;
        for (std::size_t i = 0; i < x.decorations.size(); ++i) {
            if (auto c = compare(x.decorations[i], y.decorations[i]); c != 0) return c < 0;
        }
        return false;
    }
};

/// Decoded basis tree; vertices are stored in preorder.
inline DecoratedTree<MultiMap> decode(const TreeKey& key) {
    DecoratedTree<MultiMap> t;
    t.tree = tree_from_shape(key.shape);
    for (std::size_t v = 0; v < key.decorations.size(); ++v) {
        t.decorations.emplace_back(static_cast<int>(t.tree.arity(v)), Poly::monomial(key.decorations[v]));
    }
    return t;
}

/// Integer combination of decorated trees, expanded multilinearly so that
/// each term carries one monomial per vertex.
class TreeSeries {
public:
    using Terms = std::map<TreeKey, Coeff, TreeKeyLess>;

    TreeSeries() = default;

    static TreeSeries of(const DecoratedTree<MultiMap>& t, Coeff c = 1) {
        TreeSeries s;
        s.add(t, c);
        return s;
    }

    void add(const DecoratedTree<MultiMap>& t, Coeff c = 1) {
        if (c == 0) return;
        const auto order = t.tree.preorder();
        for (std::size_t v : order) {
            require(t.decorations[v].arity() == static_cast<int>(t.tree.arity(v)),
                    "decoration arity does not match vertex valence");
            if (t.decorations[v].is_zero()) return;
        }
        TreeKey key{shape_code(t.tree), {}};
        key.decorations.resize(order.size());
        auto rec = [&](auto&& self, std::size_t i, Coeff acc) -> void {
            if (i == order.size()) {
                add_basis(key, acc);
                return;
            }
            for (const auto& [m, mc] : t.decorations[order[i]].body().terms()) {
                key.decorations[i] = m;
                self(self, i + 1, checked_mul(acc, mc));
            }
        };
        rec(rec, 0, c);
    }

    void add_basis(const TreeKey& key, Coeff c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Terms supported on single-vertex trees, as a map of the given arity.
    MultiMap one_vertex_part(int arity) const {
        Poly body;
        for (const auto& [k, c] : terms_) {
            if (k.vertex_count() == 1) body.add(k.decorations[0], c);
        }
        return MultiMap(arity, std::move(body));
    }

    TreeSeries& operator+=(const TreeSeries& o) {
        for (const auto& [k, c] : o.terms_) add_basis(k, c);
        return *this;
    }
    TreeSeries& operator-=(const TreeSeries& o) {
        for (const auto& [k, c] : o.terms_) add_basis(k, -c);
        return *this;
    }
    friend TreeSeries operator+(TreeSeries x, const TreeSeries& y) { return x += y; }
    friend TreeSeries operator-(TreeSeries x, const TreeSeries& y) { return x -= y; }
    friend TreeSeries operator*(Coeff s, const TreeSeries& x) {
        TreeSeries r;
        if (s == 0) return r;
        for (const auto& [k, c] : x.terms_) r.terms_.emplace(k, checked_mul(s, c));
        return r;
    }
    friend bool operator==(const TreeSeries& x, const TreeSeries& y) {
        if (x.terms_.size() != y.terms_.size()) return false;
        TreeKeyLess less;
        auto it = y.terms_.begin();
        for (const auto& [k, c] : x.terms_) {
            if (less(k, it->first) || less(it->first, k) || c != it->second) return false;
            ++it;
        }
        return true;
    }

private:
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Canonical twist

namespace detail {

/// Applies the twist to one basis tree: for every set of cut edges, the
/// components become vertices decorated by their own composition.
inline void twist_basis(const TreeKey& key, Coeff coeff, TreeSeries& out) {
    const DecoratedTree<MultiMap> t = decode(key);
    std::vector<std::vector<int>> edge_id(t.tree.vertex_count());
    int edges = 0;
    for (std::size_t v = 0; v < t.tree.vertex_count(); ++v) {
        for (const Child& c : t.tree.vertices[v]) edge_id[v].push_back(is_leaf(c) ? -1 : edges++);
    }
    ensure(edges < 30, "tree too large for the twist");
    for (unsigned mask = 0; mask < (1u << edges); ++mask) {
        auto cut = [&](int e) { return ((mask >> e) & 1u) != 0; };
        // Component rooted at u: its local tree (cut edges become leaves) and
        // the ordered list of its external inputs.
        auto component = [&](auto&& self, std::size_t u) -> DecoratedTree<MultiMap> {
            DecoratedTree<MultiMap> local;
            std::vector<std::optional<std::size_t>> outer;
            auto walk = [&](auto&& walk_self, std::size_t v) -> std::size_t {
                const std::size_t id = local.tree.vertices.size();
                local.tree.vertices.emplace_back();
                local.decorations.push_back(t.decorations[v]);
                for (std::size_t i = 0; i < t.tree.vertices[v].size(); ++i) {
                    const Child& c = t.tree.vertices[v][i];
                    if (is_leaf(c)) {
                        local.tree.vertices[id].push_back(Leaf{0});
                        outer.emplace_back(std::nullopt);
                    } else if (cut(edge_id[v][i])) {
                        local.tree.vertices[id].push_back(Leaf{0});
                        outer.emplace_back(std::get<VertexRef>(c).index);
                    } else {
                        const std::size_t sub = walk_self(walk_self, std::get<VertexRef>(c).index);
                        local.tree.vertices[id].push_back(VertexRef{sub});
                    }
                }
                return id;
            };
            local.tree.root = walk(walk, u);
            renumber_leaves(local.tree);
            std::vector<std::optional<DecoratedTree<MultiMap>>> inputs;
            for (const auto& o : outer) {
                if (o) {
                    inputs.emplace_back(self(self, *o));
                } else {
                    inputs.emplace_back(std::nullopt);
                }
            }
            return graft(compose_tree(local), inputs);
        };
        out.add(component(component, t.tree.root), coeff);
    }
}

}  // namespace detail

/// Phi: sums, over all sets of cut edges, the tree of components with each
/// component decorated by its composite. Identity on single-vertex trees.
inline TreeSeries canonical_twist(const TreeSeries& x) {
    TreeSeries out;
    for (const auto& [k, c] : x.terms()) detail::twist_basis(k, c, out);
    return out;
}

namespace detail {

inline const TreeSeries& twist_inverse_basis(const TreeKey& key, std::map<TreeKey, TreeSeries, TreeKeyLess>& memo) {
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    TreeSeries self;
    self.add_basis(key, 1);
    TreeSeries result = self;
    if (key.vertex_count() > 1) {
        // Phi(T) - T only involves trees with fewer vertices.
        TreeSeries lower = canonical_twist(self) - self;
        for (const auto& [k, c] : lower.terms()) {
            ensure(k.vertex_count() < key.vertex_count(), "twist did not lower the vertex count");
            result -= c * twist_inverse_basis(k, memo);
        }
    }
    return memo.emplace(key, std::move(result)).first->second;
}

}  // namespace detail

/// Phi^{-1} by induction on the number of vertices:
/// Phi^{-1}(T) = T - Phi^{-1}(Phi(T) - T).
inline TreeSeries canonical_twist_inverse(const TreeSeries& x) {
    std::map<TreeKey, TreeSeries, TreeKeyLess> memo;
    TreeSeries out;
    for (const auto& [k, c] : x.terms()) out += c * detail::twist_inverse_basis(k, memo);
    return out;
}

// ---------------------------------------------------------------------------
// Restrictions of cooperad maps coAs_A -> cofree(End B)

/// m(w) = (E o mu_A)_{i_0..i_m}(a_1, ..., a_m) with i_j the star runs of w.
inline MultiMap moment_restriction(const Word& w) {
    require(!w.empty(), "empty word");
    if (w.letter_count() == 0) return mu(w.arity());
    std::vector<AElem> args;
    for (int j : w.letters()) args.push_back(Poly::letter(j));
    return insert(MapFamily::expectation_product(), w.star_runs(), args);
}

/// A memoized linear map Word -> MultiMap; the unit word maps to the identity.
class RestrictionMap {
public:
    using Compute = std::function<MultiMap(const Word&, const RestrictionMap&)>;

    explicit RestrictionMap(Compute compute) : compute_(std::move(compute)) {}

    MultiMap operator()(const Word& w) const {
        if (w.is_unit()) return MultiMap::identity();
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        }
        MultiMap value = compute_(w, *this);
        ensure(value.arity() == w.arity(), "restriction changed the arity of " + to_string(w));
        std::lock_guard lock(mutex_);
        return memo_.emplace(w, std::move(value)).first->second;
    }

    std::size_t cached() const {
        std::lock_guard lock(mutex_);
        return memo_.size();
    }

private:
    Compute compute_;
    mutable std::mutex mutex_;
    mutable std::map<Word, MultiMap> memo_;
};

/// Sum over the non-trivial trees of eta(w) of the composite of their
/// decorations mapped through r.
inline MultiMap correction_term(const Word& w, const RestrictionMap& r) {
    MultiMap total = MultiMap::zero(w.arity());
    for (const auto& t : eta_trees(w)) {
        if (t.vertex_count() == 1) continue;
        auto mapped = map_decorations(t, [&](const Word& d) { return r(d); });
        if (std::any_of(mapped.decorations.begin(), mapped.decorations.end(),
                        [](const MultiMap& f) { return f.is_zero(); })) {
            continue;
        }
        total += compose_tree(mapped);
    }
    return total;
}

inline const RestrictionMap& moment_map() {
    static const RestrictionMap m([](const Word& w, const RestrictionMap&) { return moment_restriction(w); });
    return m;
}

/// k(w) = m(w) - sum over non-trivial trees T of eta(w) of the composite of
/// k applied to T's decorations (well founded: those decorations have
/// smaller weight).
inline const RestrictionMap& cumulant_map() {
    static const RestrictionMap k([](const Word& w, const RestrictionMap& self) {
        return moment_restriction(w) - correction_term(w, self);
    });
    return k;
}

inline MultiMap cumulant_restriction(const Word& w) {
    require(!w.empty() && !w.is_unit(), "cumulant_restriction is defined on words of positive weight");
    return cumulant_map()(w);
}

enum class TheoremCase { PureStar, Cumulant, Vanishing };

inline const char* to_string(TheoremCase c) {
    switch (c) {
        case TheoremCase::PureStar: return "pure-star";
        case TheoremCase::Cumulant: return "cumulant";
        case TheoremCase::Vanishing: return "vanishing";
    }
    return "?";
}

inline TheoremCase classify(const Word& w) {
    require(!w.empty() && !w.is_unit(), "only words of positive weight are classified");
    if (w.letter_count() == 0) return TheoremCase::PureStar;
    const auto runs = w.star_runs();
    if (runs.front() > 0 || runs.back() > 0) return TheoremCase::Vanishing;
    for (int r : runs) {
        if (r > 1) return TheoremCase::Vanishing;
    }
    return TheoremCase::Cumulant;
}

/// (-1)^n mu_n on *^n; (kappa_m)_{0, alpha, 0}(a_1..a_m) when stars occur
/// singly between letters; zero otherwise.
inline MultiMap theorem_closed_form(const Word& w) {
    switch (classify(w)) {
        case TheoremCase::PureStar: return (w.arity() % 2 == 0 ? 1 : -1) * mu(w.arity());
        case TheoremCase::Vanishing: return MultiMap::zero(w.arity());
        case TheoremCase::Cumulant: break;
    }
    std::vector<AElem> args;
    for (int j : w.letters()) args.push_back(Poly::letter(j));
    return insert(MapFamily::cumulant(), w.star_runs(), args);
}

/// The component on w of the cooperad map into the cofree cooperad induced
/// by r: every tree of eta(w) with its decorations mapped through r.
inline TreeSeries lift_to_cofree(const RestrictionMap& r, const Word& w) {
    require(!w.empty() && !w.is_unit(), "lift_to_cofree is defined on words of positive weight");
    TreeSeries out;
    for (const auto& t : eta_trees(w)) out.add(map_decorations(t, [&](const Word& d) { return r(d); }));
    return out;
}

// ---------------------------------------------------------------------------
// Verification

/// Words with up to `max_letters` letters (a_1..a_m in order) and up to
/// `max_arity` stars, positive weight, optionally m + arity <= max_total;
/// ordered by weight.
inline std::vector<Word> words_in_range(int max_letters, int max_arity, std::optional<int> max_total = std::nullopt) {
    require(max_letters >= 0 && max_arity >= 0, "bounds must be non-negative");
    std::vector<Word> out;
    for (int m = 0; m <= max_letters; ++m) {
        for (int n = 0; n <= max_arity; ++n) {
            const int len = m + n;
            if (len == 0 || (max_total && len > *max_total)) continue;
            // Choose the star positions among len places.
            for (unsigned mask = 0; mask < (1u << len); ++mask) {
                if (__builtin_popcount(mask) != n) continue;
                std::vector<Symbol> s;
                int next = 1;
                for (int i = 0; i < len; ++i) s.push_back((mask >> i) & 1u ? Symbol::star() : Symbol::letter(next++));
                Word w(std::move(s));
                if (w.weight() >= 1) out.push_back(std::move(w));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return std::make_tuple(a.weight(), a.size(), a) < std::make_tuple(b.weight(), b.size(), b);
    });
    return out;
}

struct WordCheck {
    Word word;
    TheoremCase theorem_case;
    bool closed_form_ok = false;
    bool twist_ok = false;
    std::string counterexample;  // empty when both checks pass
};

struct VerificationReport {
    std::vector<WordCheck> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const WordCheck& c) { return c.closed_form_ok && c.twist_ok; });
    }
};

inline std::string to_string(const TreeSeries& s);

inline WordCheck check_word(const Word& w) {
    WordCheck r;
    r.word = w;
    r.theorem_case = classify(w);
    const MultiMap k = cumulant_restriction(w);
    const MultiMap closed = theorem_closed_form(w);
    r.closed_form_ok = k == closed;
    if (!r.closed_form_ok) r.counterexample = "k - closed form = " + to_string(k - closed);
    const TreeSeries lhs = lift_to_cofree(moment_map(), w);
    const TreeSeries rhs = canonical_twist(lift_to_cofree(cumulant_map(), w));
    r.twist_ok = lhs == rhs;
    if (!r.twist_ok) {
        if (!r.counterexample.empty()) r.counterexample += "; ";
        r.counterexample += "M - Phi(K) = " + to_string(lhs - rhs);
    }
    return r;
}

/// Checks k(w) against the closed form and M = Phi o K on every word in range.
/// The cumulant memo is filled in weight order first, so parallel workers
/// only read it.
inline VerificationReport verify_main_theorem(int max_letters, int max_arity, std::optional<int> max_total = std::nullopt,
                                              unsigned jobs = 1) {
    require(max_letters >= 0 && max_arity >= 0, "bounds must be non-negative");
    const auto words = words_in_range(max_letters, max_arity, max_total);
    for (const Word& w : words) (void)cumulant_map()(w);

    VerificationReport report;
    report.checks.resize(words.size());
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(words.size(), 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < words.size(); ++i) report.checks[i] = check_word(words[i]);
        return report;
    }
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j] {
            for (std::size_t i = j; i < words.size(); i += jobs) report.checks[i] = check_word(words[i]);
        });
    }
    for (auto& th : pool) th.join();
    return report;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string tree_text(const DecoratedTree<MultiMap>& t, std::size_t v) {
    std::string s = "<" + to_string(t.decorations[v].body()) + ">";
    const auto& cs = t.tree.vertices[v];
    if (cs.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i > 0) s += ", ";
        s += is_leaf(cs[i]) ? std::string("_") : tree_text(t, std::get<VertexRef>(cs[i]).index);
    }
    return s + ")";
}

}  // namespace detail

/// One basis tree: `<decoration>(input, ...)` with `_` for a leaf.
inline std::string to_string(const TreeKey& k) {
    const auto t = decode(k);
    return detail::tree_text(t, t.tree.root);
}

inline std::string to_string(const TreeSeries& s) {
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : s.terms()) {
        const Coeff mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1) out += std::to_string(mag) + " ";
        out += to_string(k);
        first = false;
    }
    return out;
}

}  // namespace opfree

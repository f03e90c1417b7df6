#pragma once

// Words of the cooperad coAs_A: sequences of stars and A-letters, their
// weight, the decomposition into (parent word) o (child words), and the full
// tree decomposition into non-unit decorations.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "opfree/common.hpp"
#include "opfree/endop.hpp"

namespace opfree {

/// A star (index 0) or an A-letter a_index (index >= 1).
struct Symbol {
    int index = 0;

    static Symbol star() { return Symbol{0}; }
    static Symbol letter(int i) { return Symbol{i}; }
    bool is_star() const { return index == 0; }

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    /// `*^n`
    static Word stars(int n) { return Word(std::vector<Symbol>(static_cast<std::size_t>(n), Symbol::star())); }

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    int arity() const {
        return static_cast<int>(std::count_if(symbols_.begin(), symbols_.end(), [](Symbol s) { return s.is_star(); }));
    }
    int letter_count() const { return static_cast<int>(symbols_.size()) - arity(); }

    /// 2m - 1 + n for m >= 1 letters and n stars; n - 1 for pure star words.
    int weight() const {
        const int m = letter_count();
        return m >= 1 ? 2 * m - 1 + arity() : arity() - 1;
    }
    bool is_unit() const { return symbols_.size() == 1 && symbols_[0].is_star(); }
    bool is_pure_a() const { return arity() == 0; }

    std::vector<int> letters() const {
        std::vector<int> out;
        for (Symbol s : symbols_) {
            if (!s.is_star()) out.push_back(s.index);
        }
        return out;
    }

    /// Lengths of the star runs around the letters: i_0, ..., i_m.
    std::vector<int> star_runs() const {
        std::vector<int> runs{0};
        for (Symbol s : symbols_) {
            if (s.is_star()) {
                ++runs.back();
            } else {
                runs.push_back(0);
            }
        }
        return runs;
    }

    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
};

inline std::string to_string(const Word& w) {
    std::string s;
    for (Symbol x : w.symbols()) s += x.is_star() ? std::string("*") : "a" + std::to_string(x.index);
    return s;
}

/// `*` for a star, `a<k>` (k >= 1, no leading zeros) for a letter, no separators.
inline Word parse_word(std::string_view text) {
    std::vector<Symbol> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '*') {
            out.push_back(Symbol::star());
            ++i;
            continue;
        }
        require(text[i] == 'a', "unexpected character '" + std::string(1, text[i]) + "' in word");
        ++i;
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) ++i;
        require(i > start, "letter 'a' without index in word");
        require(text[start] != '0', "letter index must be a positive integer without leading zeros");
        require(i - start <= 9, "letter index too large");
        out.push_back(Symbol::letter(std::stoi(std::string(text.substr(start, i - start)))));
    }
    require(!out.empty(), "empty word");
    return Word(std::move(out));
}

/// Replaces the t-th star of `parent` by `children[t]`.
inline Word substitute(const Word& parent, const std::vector<Word>& children) {
    require(children.size() == static_cast<std::size_t>(parent.arity()),
            "arity mismatch: word " + to_string(parent) + " with " + std::to_string(children.size()) + " children");
    std::vector<Symbol> out;
    std::size_t next = 0;
    for (Symbol s : parent.symbols()) {
        if (s.is_star()) {
            const auto& cs = children[next++].symbols();
            out.insert(out.end(), cs.begin(), cs.end());
        } else {
            out.push_back(s);
        }
    }
    return Word(std::move(out));
}

/// w = parent o (children), parent = b_0 * b_1 * ... * b_n with pure-A b_i.
struct Factorization {
    Word parent;
    std::vector<Word> children;

    friend auto operator<=>(const Factorization&, const Factorization&) = default;
};

/// Every way of writing w = b_0 a_1 b_1 ... a_n b_n with pure-A (possibly
/// empty) b_i and nonempty a_i, including n = 0 when w is pure-A.
inline std::vector<Factorization> delta(const Word& w) {
    const auto& s = w.symbols();
    const std::size_t len = s.size();
    std::vector<Factorization> out;
    std::vector<Symbol> parent;
    std::vector<Word> children;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        // A pure-A run b starting at pos, then either the end or a child.
        for (std::size_t run = 0; pos + run <= len; ++run) {
            if (run > 0 && s[pos + run - 1].is_star()) break;
            const std::size_t at = pos + run;
            const std::size_t mark = parent.size();
            parent.insert(parent.end(), s.begin() + static_cast<std::ptrdiff_t>(pos),
                          s.begin() + static_cast<std::ptrdiff_t>(at));
            if (at == len) {
                if (!parent.empty()) out.push_back({Word(parent), children});
            } else {
                parent.push_back(Symbol::star());
                for (std::size_t end = at + 1; end <= len; ++end) {
                    children.emplace_back(std::vector<Symbol>(s.begin() + static_cast<std::ptrdiff_t>(at),
                                                              s.begin() + static_cast<std::ptrdiff_t>(end)));
                    self(self, end);
                    children.pop_back();
                }
            }
            parent.resize(mark);
        }
    };
    if (len > 0) rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Tree decomposition

/// Sort key: vertex count, then shape code, then decorations in preorder.
template <class D>
auto tree_order_key(const DecoratedTree<D>& t) {
    std::vector<D> decs;
    for (std::size_t v : t.tree.preorder()) decs.push_back(t.decorations[v]);
    return std::make_tuple(t.vertex_count(), shape_code(t.tree), std::move(decs));
}

namespace detail {

inline const std::vector<DecoratedTree<Word>>& eta_cached(const Word& w, std::map<Word, std::vector<DecoratedTree<Word>>>& memo) {
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    std::vector<DecoratedTree<Word>> out;
    for (const Factorization& f : delta(w)) {
        if (f.parent.is_unit()) continue;
        // Each child is a leaf (unit) or ranges over the child's own trees.
        std::vector<const std::vector<DecoratedTree<Word>>*> options;
        for (const Word& c : f.children) options.push_back(c.is_unit() ? nullptr : &eta_cached(c, memo));
        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
            std::vector<std::optional<DecoratedTree<Word>>> inputs;
            for (std::size_t i = 0; i < options.size(); ++i) {
                if (options[i] == nullptr) {
                    inputs.emplace_back(std::nullopt);
                } else {
                    inputs.emplace_back((*options[i])[pick[i]]);
                }
            }
            out.push_back(graft(f.parent, inputs));
            std::size_t i = 0;
            for (; i < options.size(); ++i) {
                if (options[i] == nullptr) continue;
                if (++pick[i] < options[i]->size()) break;
                pick[i] = 0;
            }
            if (i == options.size()) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return tree_order_key(a) < tree_order_key(b); });
    return memo.emplace(w, std::move(out)).first->second;
}

}  // namespace detail

/// All planar trees decorated by non-unit words whose recursive substitution
/// is w, including the single-vertex tree decorated by w. Ordered by
/// (vertex count, shape code, decorations).
inline std::vector<DecoratedTree<Word>> eta_trees(const Word& w) {
    require(!w.empty(), "empty word");
    require(w.weight() >= 1, "eta_trees is defined only on words of positive weight");
    std::map<Word, std::vector<DecoratedTree<Word>>> memo;
    return detail::eta_cached(w, memo);
}

/// Recursive substitution of all decorations.
inline Word collapse(const DecoratedTree<Word>& t, std::size_t v) {
    std::vector<Word> children;
    for (const Child& c : t.tree.vertices.at(v)) {
        children.push_back(is_leaf(c) ? Word::stars(1) : collapse(t, std::get<VertexRef>(c).index));
    }
    return substitute(t.decorations.at(v), children);
}
inline Word collapse(const DecoratedTree<Word>& t) { return collapse(t, t.tree.root); }

}  // namespace opfree

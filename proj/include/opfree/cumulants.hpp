#pragma once

// Insertion maps f_{i_0..i_n}, multiplicative functions evaluated along the
// leaf-insertion trees, and operator-valued free cumulants.

#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "opfree/common.hpp"
#include "opfree/endop.hpp"
#include "opfree/nc_core.hpp"
#include "opfree/symalg.hpp"

namespace opfree {

/// An indexed family f^(n): A^{(x)_B n} -> B.
struct MapFamily {
    enum class Kind { ExpectationProduct, Cumulant, Placeholder };
    Kind kind = Kind::ExpectationProduct;
    char symbol = 'f';  // name of a placeholder family

    static MapFamily expectation_product() { return {Kind::ExpectationProduct, kExpectation}; }
    static MapFamily cumulant() { return {Kind::Cumulant, 'k'}; }
    static MapFamily placeholder(char symbol) {
        require(symbol != kExpectation, "placeholder symbol clashes with the expectation");
        return {Kind::Placeholder, symbol};
    }
};

/// Counts i_0, ..., i_n of B-insertions around n A-arguments.
using InsertionSignature = std::vector<int>;

Poly cumulant_schema(int n);

/// f^(n)(a_1, ..., a_n) as an element of B over the letters a_1..a_n.
inline BElem family_schema(const MapFamily& f, int n) {
    require(n >= 1, "family members have arity n >= 1");
    if (f.kind == MapFamily::Kind::Cumulant) return cumulant_schema(n);
    Application app;
    app.symbol = f.kind == MapFamily::Kind::ExpectationProduct ? kExpectation : f.symbol;
    for (int j = 1; j <= n; ++j) app.letters.push_back(j);
    app.interiors.assign(static_cast<std::size_t>(n - 1), Monomial{});
    return Poly::atom(Atom::apply(std::move(app)));
}

/// The letters a_1..a_n as A-elements.
inline std::vector<AElem> letter_args(int n) {
    std::vector<AElem> out;
    for (int j = 1; j <= n; ++j) out.push_back(Poly::letter(j));
    return out;
}

/// f_{i_0..i_n}(a_1, ..., a_n): the arity-N map obtained by placing i_0 slots
/// before a_1 and i_j slots after a_j, acting through the bimodule structure.
inline MultiMap insert(const MapFamily& f, const InsertionSignature& sig, const std::vector<AElem>& args) {
    const std::size_t n = args.size();
    require(n >= 1, "insert needs at least one A-argument");
    require(sig.size() == n + 1, "insertion signature must have length n + 1 = " + std::to_string(n + 1));
    for (int c : sig) require(c >= 0, "insertion counts must be non-negative");

    int next_slot = 1;
    auto run = [&](int count) {
        Poly p = Poly::one();
        for (int q = 0; q < count; ++q) p = p * Poly::slot(next_slot++);
        return p;
    };
    std::map<int, AElem> values;
    for (std::size_t j = 0; j < n; ++j) {
        Poly arg = j == 0 ? run(sig[0]) * args[0] : args[j];
        arg = arg * run(sig[j + 1]);
        values.emplace(static_cast<int>(j) + 1, std::move(arg));
    }
    const BElem schema = family_schema(f, static_cast<int>(n));
    return MultiMap(next_slot - 1, substitute_letters(schema, values));
}

/// Decorates the final insertion tree of (p, counts): root and top vertices
/// by multiplication, each bottom vertex by f^(k)_{0, alpha, 0} on its block's
/// arguments, with alpha read off the intermediate tree.
inline DecoratedTree<MultiMap> decorate_insertion_tree(const NCPartition& p, const std::vector<int>& counts,
                                                        const MapFamily& f, const std::vector<AElem>& args) {
    require(args.size() == static_cast<std::size_t>(p.n()),
            "expected " + std::to_string(p.n()) + " A-arguments, got " + std::to_string(args.size()));
    const InsertionTrees trees = build_inserted_tree(p, counts);
    // Bottom vertices of the intermediate tree keyed by block.
    std::map<std::size_t, std::size_t> mid_bottom;
    for (std::size_t v = 0; v < trees.intermediate.tree.vertex_count(); ++v) {
        if (auto b = trees.intermediate.block[v]) mid_bottom[*b] = v;
    }
    const InsertedTree& fin = trees.final;
    DecoratedTree<MultiMap> out;
    out.tree = fin.tree;
    for (std::size_t v = 0; v < fin.tree.vertex_count(); ++v) {
        const int arity = static_cast<int>(fin.tree.arity(v));
        if (fin.vertex_kind[v] != VertexKind::Bottom) {
            out.decorations.push_back(mu(arity));
            continue;
        }
        const BottomProfile prof = bottom_profile(trees.intermediate, mid_bottom.at(*fin.block[v]));
        InsertionSignature sig{0};
        sig.insert(sig.end(), prof.between.begin(), prof.between.end());
        sig.push_back(0);
        std::vector<AElem> block_args;
        for (int x : prof.leaves) block_args.push_back(args[static_cast<std::size_t>(x - 1)]);
        MultiMap dec = insert(f, sig, block_args);
        ensure(dec.arity() == arity, "bottom vertex decoration arity does not match its valence");
        out.decorations.push_back(std::move(dec));
    }
    return out;
}

/// [f-hat(p, .)]_{counts}(args): composition along the decorated final tree.
inline MultiMap multiplicative_insert(const NCPartition& p, const std::vector<int>& counts, const MapFamily& f,
                                      const std::vector<AElem>& args) {
    return compose_tree(decorate_insertion_tree(p, counts, f, args));
}

/// f-hat(p, a_1 (x) ... (x) a_n).
inline BElem multiplicative_eval(const NCPartition& p, const MapFamily& f, const std::vector<AElem>& args) {
    return multiplicative_insert(p, std::vector<int>(static_cast<std::size_t>(p.n()) + 1, 0), f, args).as_b();
}

namespace detail {

struct CumulantMemo {
    std::mutex mutex;
    std::map<int, Poly> values;
};

inline CumulantMemo& cumulant_memo() {
    static CumulantMemo memo;
    return memo;
}

}  // namespace detail

/// kappa_n(a_1, ..., a_n) over the letters a_1..a_n, from
/// E(a_1...a_n) = sum over NC(n) of kappa-hat. Memoized per n; concurrent
/// first fills compute identical values.
inline Poly cumulant_schema(int n) {
    require(n >= 1, "cumulants have arity n >= 1");
    auto& memo = detail::cumulant_memo();
    {
        std::lock_guard lock(memo.mutex);
        if (auto it = memo.values.find(n); it != memo.values.end()) return it->second;
    }
    const auto args = letter_args(n);
    Poly value = family_schema(MapFamily::expectation_product(), n);
    for (const NCPartition& p : enumerate_nc(n)) {
        if (p.is_trivial()) continue;
        value -= multiplicative_eval(p, MapFamily::cumulant(), args);
    }
    std::lock_guard lock(memo.mutex);
    return memo.values.emplace(n, std::move(value)).first->second;
}

/// kappa_n(a_1 (x) ... (x) a_n) for arbitrary A-arguments.
inline BElem free_cumulant(int n, const std::vector<AElem>& args) {
    require(args.size() == static_cast<std::size_t>(n), "free_cumulant expects n arguments");
    std::map<int, AElem> values;
    for (int j = 1; j <= n; ++j) values.emplace(j, args[static_cast<std::size_t>(j - 1)]);
    return substitute_letters(cumulant_schema(n), values);
}

/// sum over NC(n) of kappa-hat(p, args).
inline BElem moment_from_cumulants(int n, const std::vector<AElem>& args) {
    require(args.size() == static_cast<std::size_t>(n), "moment_from_cumulants expects n arguments");
    BElem total;
    for (const NCPartition& p : enumerate_nc(n)) total += multiplicative_eval(p, MapFamily::cumulant(), args);
    return total;
}

/// Right-hand side of the insertion form of the moment-cumulant relation:
/// the sum over NC(n) of kappa-hat composed along the final insertion trees.
inline MultiMap cumulant_insertion_sum(const InsertionSignature& sig, const std::vector<AElem>& args) {
    const int n = static_cast<int>(args.size());
    const int total = std::accumulate(sig.begin(), sig.end(), 0);
    MultiMap sum = MultiMap::zero(total);
    for (const NCPartition& p : enumerate_nc(n)) sum += multiplicative_insert(p, sig, MapFamily::cumulant(), args);
    return sum;
}

/// E_{sig}(args) equals the cumulant insertion sum.
inline bool insertion_identity_check(const InsertionSignature& sig, const std::vector<AElem>& args) {
    require(sig.size() == args.size() + 1, "insertion signature must have length n + 1");
    return insert(MapFamily::expectation_product(), sig, args) == cumulant_insertion_sum(sig, args);
}

}  // namespace opfree

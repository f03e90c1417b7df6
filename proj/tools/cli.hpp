#pragma once

// Command-line front end. `run` is separate from main so the test suite can
// drive it in-process.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opfree/io.hpp"
#include "opfree/opfree.hpp"

namespace opfree::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;

/// Breaks a rendered sum before " + " / " - " so lines fit `width` columns.
inline std::string wrap_terms(const std::string& text, std::size_t width) {
    if (width == 0 || text.size() <= width) return text;
    std::string out;
    std::size_t line = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t next = text.size();
        for (std::size_t j = i + 1; j + 2 < text.size(); ++j) {
            if (text[j] == ' ' && (text[j + 1] == '+' || text[j + 1] == '-') && text[j + 2] == ' ') {
                next = j;
                break;
            }
        }
        const std::string piece = text.substr(i, next - i);
        if (line > 0 && line + piece.size() > width) {
            out += "\n   ";
            line = 3;
            std::string trimmed = piece.front() == ' ' ? piece.substr(1) : piece;
            out += trimmed;
            line += trimmed.size();
        } else {
            out += piece;
            line += piece.size();
        }
        i = next;
    }
    return out;
}

/// Width hint from OPFREE_WIDTH; 0 disables wrapping.
inline std::size_t output_width() {
    if (const char* w = std::getenv("OPFREE_WIDTH")) {
        try {
            return static_cast<std::size_t>(std::stoul(w));
        } catch (...) {
            return 0;
        }
    }
    return 0;
}

/// Tree spec for twist-demo: vertex = "(" inputs ")", input = "_" (leaf) or a
/// vertex. Vertices with k >= 1 inputs carry mu_k; input-free vertices carry
/// B-generators numbered in preorder.
inline DecoratedTree<MultiMap> parse_tree_spec(const std::string& spec) {
    std::size_t pos = 0;
    int next_gen = 1;
    auto rec = [&](auto&& self) -> DecoratedTree<MultiMap> {
        require(pos < spec.size() && spec[pos] == '(', "tree spec: expected '(' at position " + std::to_string(pos));
        ++pos;
        std::vector<std::optional<DecoratedTree<MultiMap>>> inputs;
        while (pos < spec.size() && spec[pos] != ')') {
            if (spec[pos] == '_') {
                inputs.emplace_back(std::nullopt);
                ++pos;
            } else {
                inputs.emplace_back(self(self));
            }
        }
        require(pos < spec.size(), "tree spec: unterminated vertex");
        ++pos;
        if (inputs.empty()) return graft(MultiMap::from_b(Poly::bgen(next_gen++)), inputs);
        return graft(mu(static_cast<int>(inputs.size())), inputs);
    };
    auto t = rec(rec);
    require(pos == spec.size(), "tree spec: trailing characters");
    return t;
}

inline std::vector<int> parse_counts(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        require(!item.empty(), "empty entry in count list");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw InvalidInput("count list entry '" + item + "' is not an integer");
        }
        require(used == item.size(), "count list entry '" + item + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Operator-valued free cumulants: partitions, cumulant expansions and the operadic twist"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();

    int n = 0;
    std::optional<std::size_t> blocks;
    auto* nc_enumerate = app.add_subcommand("nc-enumerate", "List the non-crossing partitions of [n]");
    nc_enumerate->add_option("n", n, "Ground set size")->required()->check(CLI::Range(1, 20));
    nc_enumerate->add_option("k", blocks, "Only partitions with k blocks");

    std::string partition_text;
    auto* nc_tree = app.add_subcommand("nc-tree", "Planar rooted tree of a non-crossing partition");
    nc_tree->add_option("partition", partition_text, "Partition such as (146)(2)(3)(5)")->required();

    std::string counts_text;
    auto* insert_tree = app.add_subcommand("insert-tree", "Leaf-insertion trees of a partition and gap counts");
    insert_tree->add_option("partition", partition_text, "Partition such as (14)(23)")->required();
    insert_tree->add_option("counts", counts_text, "Comma-separated gap counts i_0,...,i_n")->required();

    auto* cumulant = app.add_subcommand("cumulant", "Expansion of the free cumulant kappa_n in moments");
    cumulant->add_option("n", n, "Arity")->required()->check(CLI::Range(1, 7));

    auto* moment_expand = app.add_subcommand("moment-expand", "E(a1...an) as a sum of kappa-hat over NC(n)");
    moment_expand->add_option("n", n, "Arity")->required()->check(CLI::Range(1, 7));

    std::string word_text;
    auto* k_of_word = app.add_subcommand("k-of-word", "Restriction of the cumulant morphism on a word");
    k_of_word->add_option("word", word_text, "Word such as a1*a2")->required();

    int max_letters = 0;
    int max_arity = 0;
    std::optional<int> max_total;
    unsigned jobs = 1;
    auto* verify = app.add_subcommand("verify", "Check the closed form of k and M = Phi o K on a range of words");
    verify->add_option("max_letters", max_letters, "Maximum number of A-letters")->required()->check(CLI::Range(0, 6));
    verify->add_option("max_arity", max_arity, "Maximum number of stars")->required()->check(CLI::Range(0, 8));
    verify->add_option("--max-total", max_total, "Maximum letters + stars");
    verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

    std::string tree_spec;
    auto* twist_demo = app.add_subcommand("twist-demo", "Apply the canonical twist and its inverse to a tree of products");
    twist_demo->add_option("tree", tree_spec, "Tree such as ((__)_) ; () is a B-generator")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    const bool json_out = format == "json";
    const std::size_t width = output_width();
    auto expr = [&](const std::string& s) { return wrap_terms(s, width); };
    auto reject_dot = [&](const char* cmd) {
        if (format == "dot") throw InvalidInput(std::string("--format dot is not available for ") + cmd);
    };

    try {
        if (nc_enumerate->parsed()) {
            reject_dot("nc-enumerate");
            const auto ps = enumerate_nc(n, blocks);
            if (json_out) {
                io::json arr = io::json::array();
                for (const auto& p : ps) arr.push_back(io::to_json(p));
                out << io::json{{"n", n}, {"count", ps.size()}, {"partitions", arr}}.dump(2) << "\n";
            } else {
                for (const auto& p : ps) out << to_string(p) << "\n";
            }
            return kOk;
        }
        if (nc_tree->parsed()) {
            const NCPartition p = parse_partition(partition_text);
            const PlanarTree t = partition_to_tree(p);
            if (format == "dot") {
                out << to_dot(t, "partition");
            } else if (json_out) {
                out << io::json{{"partition", io::to_json(p)}, {"tree", io::to_json(t)}}.dump(2) << "\n";
            } else {
                out << to_string(p) << "\n";
                for (std::size_t v = 0; v < t.vertex_count(); ++v) {
                    out << (v == t.root ? "root" : "block " + std::to_string(v)) << ":";
                    for (const Child& c : t.vertices[v]) {
                        if (auto* l = std::get_if<Leaf>(&c)) {
                            out << " " << l->number;
                        } else {
                            out << " [block " << std::get<VertexRef>(c).index << "]";
                        }
                    }
                    out << "\n";
                }
            }
            return kOk;
        }
        if (insert_tree->parsed()) {
            const NCPartition p = parse_partition(partition_text);
            const auto trees = build_inserted_tree(p, parse_counts(counts_text));
            if (format == "dot") {
                out << to_dot(trees.intermediate, "intermediate") << to_dot(trees.final, "final");
            } else if (json_out) {
                out << io::json{{"partition", io::to_json(p)},
                                {"counts", parse_counts(counts_text)},
                                {"intermediate", io::to_json(trees.intermediate)},
                                {"final", io::to_json(trees.final)}}
                           .dump(2)
                    << "\n";
            } else {
                for (const auto* t : {&trees.intermediate, &trees.final}) {
                    out << (t == &trees.intermediate ? "intermediate" : "final") << ":\n";
                    const auto order = t->tree.preorder();
                    std::vector<std::size_t> pos(t->tree.vertex_count());
                    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
                    for (std::size_t i = 0; i < order.size(); ++i) {
                        out << "  v" << i << " " << kind_label(t->vertex_kind[order[i]]) << ":";
                        for (const Child& c : t->tree.vertices[order[i]]) {
                            if (auto* l = std::get_if<Leaf>(&c)) {
                                const LeafKind& lk = t->leaf_kind[static_cast<std::size_t>(l->number - 1)];
                                if (auto* o = std::get_if<OriginalLeaf>(&lk)) {
                                    out << " " << o->position;
                                } else {
                                    out << " +" << std::get<InsertedLeaf>(lk).gap;
                                }
                            } else {
                                out << " v" << pos[std::get<VertexRef>(c).index];
                            }
                        }
                        out << "\n";
                    }
                }
            }
            return kOk;
        }
        if (cumulant->parsed()) {
            reject_dot("cumulant");
            const Poly k = cumulant_schema(n);
            if (json_out) {
                out << io::json{{"n", n}, {"terms", io::terms_json(k)}, {"text", to_string(k)}}.dump(2) << "\n";
            } else {
                out << expr(to_string(k)) << "\n";
            }
            return kOk;
        }
        if (moment_expand->parsed()) {
            reject_dot("moment-expand");
            const auto args = letter_args(n);
            const MapFamily symbolic = MapFamily::placeholder('k');
            Poly word = Poly::one();
            for (const auto& a : args) word = word * a;
            const BElem moment = expectation(word);
            const BElem total = moment_from_cumulants(n, args);
            io::json rows = io::json::array();
            for (const NCPartition& p : enumerate_nc(n)) {
                const BElem term = multiplicative_eval(p, symbolic, args);
                if (json_out) {
                    rows.push_back(io::json{{"partition", to_string(p)}, {"term", io::to_json(term)}});
                } else {
                    out << to_string(p) << "  " << to_string(term) << "\n";
                }
            }
            const bool ok = total == moment;
            if (json_out) {
                out << io::json{{"n", n}, {"moment", to_string(moment)}, {"terms", rows}, {"sum_matches_moment", ok}}.dump(2)
                    << "\n";
            } else {
                out << "sum = " << expr(to_string(total)) << (ok ? "  (matches " : "  (DIFFERS FROM ") << to_string(moment)
                    << ")\n";
            }
            return ok ? kOk : kVerificationFailed;
        }
        if (k_of_word->parsed()) {
            reject_dot("k-of-word");
            const Word w = parse_word(word_text);
            const MultiMap k = cumulant_restriction(w);
            if (json_out) {
                io::json j = io::to_json(k);
                j["word"] = to_string(w);
                j["case"] = to_string(classify(w));
                out << j.dump(2) << "\n";
            } else {
                out << expr(to_string(k.body())) << "\n";
            }
            return kOk;
        }
        if (verify->parsed()) {
            reject_dot("verify");
            const auto report = verify_main_theorem(max_letters, max_arity, max_total, jobs);
            if (json_out) {
                out << io::to_json(report).dump(2) << "\n";
            } else {
                for (const auto& c : report.checks) {
                    const bool ok = c.closed_form_ok && c.twist_ok;
                    out << (ok ? "PASS " : "FAIL ") << to_string(c.word) << "  [" << to_string(c.theorem_case) << "]";
                    if (!ok) out << "  " << c.counterexample;
                    out << "\n";
                }
                out << (report.all_passed() ? "all " : "FAILED: not all ") << report.checks.size() << " words checked\n";
            }
            return report.all_passed() ? kOk : kVerificationFailed;
        }
        if (twist_demo->parsed()) {
            reject_dot("twist-demo");
            const TreeSeries x = TreeSeries::of(parse_tree_spec(tree_spec));
            const TreeSeries phi = canonical_twist(x);
            const TreeSeries inv = canonical_twist_inverse(x);
            const bool ok = canonical_twist_inverse(phi) == x && canonical_twist(inv) == x;
            if (json_out) {
                out << io::json{{"input", io::to_json(x)},
                                {"twist", io::to_json(phi)},
                                {"twist_inverse", io::to_json(inv)},
                                {"round_trip_ok", ok}}
                           .dump(2)
                    << "\n";
            } else {
                out << "T         = " << expr(to_string(x)) << "\n";
                out << "Phi(T)    = " << expr(to_string(phi)) << "\n";
                out << "Phi^-1(T) = " << expr(to_string(inv)) << "\n";
                out << "round trip " << (ok ? "ok" : "FAILED") << "\n";
            }
            return ok ? kOk : kVerificationFailed;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace opfree::cli

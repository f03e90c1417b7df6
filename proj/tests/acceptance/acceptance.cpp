// Acceptance run: one PASS/FAIL line per criterion with its wall time and
// time limit. Exit status is non-zero if any criterion fails or overruns.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "support.hpp"

using namespace opfree;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream notes;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) notes << what;
            ok = false;
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> body;
};

std::string golden(const std::string& name) {
    return opfree::testing::read_file(std::string(OPFREE_GOLDEN_DIR) + "/" + name);
}

unsigned worker_count() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

void nc_counts(Outcome& r) {
    const std::vector<std::size_t> catalan{1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 1; n <= 8; ++n) {
        const std::size_t fast = enumerate_nc(n).size();
        const std::size_t brute = oracle::brute_force_nc_count(n);
        r.check(fast == catalan[static_cast<std::size_t>(n - 1)] && brute == fast,
                "count mismatch at n=" + std::to_string(n));
    }
}

void bijection(Outcome& r) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& p : enumerate_nc(n)) {
            r.check(tree_to_partition(partition_to_tree(p)) == p, "round trip failed for " + to_string(p));
        }
    }
    using opfree::testing::sketch;
    r.check(sketch(partition_to_tree(parse_partition("(146)(2)(3)(5)"))) == "v(v(1 v(2) v(3) 4 v(5) 6))",
            "shape of (146)(2)(3)(5)");
    r.check(sketch(partition_to_tree(parse_partition("(15)(24)(3)(6)"))) == "v(v(1 v(2 v(3) 4) 5) v(6))",
            "shape of (15)(24)(3)(6)");
}

void insertion_goldens(Outcome& r) {
    using opfree::testing::sketch;
    const auto p = parse_partition("(14)(23)");
    const auto first = build_inserted_tree(p, {1, 1, 1, 1, 0});
    const auto second = build_inserted_tree(p, {0, 2, 2, 0, 0});
    r.check(sketch(first.intermediate) == "r(_ b(1 t(_ b(2 _ 3) _) 4))", "counts 1,1,1,1,0 intermediate shape");
    r.check(sketch(first.final) == "r(_ b(t(_ b(_) _)))", "counts 1,1,1,1,0 final shape");
    r.check(sketch(second.intermediate) == "r(b(1 t(_ _ b(2 t(_ _) 3)) 4))", "counts 0,2,2,0,0 intermediate shape");
    r.check(sketch(second.final) == "b(t(_ _ b(t(_ _))))", "counts 0,2,2,0,0 final shape");
    r.check(to_dot(first.intermediate, "intermediate") == golden("insert_14_23_11110_intermediate.dot"), "golden 11110 intermediate");
    r.check(to_dot(first.final, "final") == golden("insert_14_23_11110_final.dot"), "golden 11110 final");
    r.check(to_dot(second.intermediate, "intermediate") == golden("insert_14_23_02200_intermediate.dot"), "golden 02200 intermediate");
    r.check(to_dot(second.final, "final") == golden("insert_14_23_02200_final.dot"), "golden 02200 final");
}

void moment_cumulant(Outcome& r) {
    for (int n = 1; n <= 5; ++n) {
        const auto args = letter_args(n);
        r.check(moment_from_cumulants(n, args) == expectation(oracle::letter_product(n)),
                "inversion fails at n=" + std::to_string(n));
        for (const auto& p : enumerate_nc(n)) {
            r.check(multiplicative_eval(p, MapFamily::cumulant(), args) == oracle::nested_eval(p, MapFamily::cumulant(), args),
                    "tree evaluation differs from nesting for " + to_string(p));
        }
    }
    const BElem fig = multiplicative_eval(parse_partition("(146)(2)(3)(5)"), MapFamily::placeholder('f'), letter_args(6));
    r.check(to_string(fig) == "f(a1 f(a2) f(a3), a4 f(a5), a6)", "generic nested evaluation printed " + to_string(fig));
}

void insertion_identity(Outcome& r) {
    for (int n = 1; n <= 3; ++n) {
        InsertionSignature sig(static_cast<std::size_t>(n) + 1, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i == sig.size()) {
                std::string s;
                for (int c : sig) s += std::to_string(c);
                r.check(insertion_identity_check(sig, letter_args(n)), "identity fails for signature " + s);
                return;
            }
            for (int c = 0; c <= left; ++c) {
                sig[i] = c;
                rec(i + 1, left - c);
            }
            sig[i] = 0;
        };
        rec(0, 2);
    }
}

const std::vector<Word>& theorem_words() {
    static const std::vector<Word> words = words_in_range(3, 4, 5);
    return words;
}

void closed_form(Outcome& r) {
    int cases[3] = {0, 0, 0};
    for (const Word& w : theorem_words()) {
        const MultiMap k = cumulant_restriction(w);
        r.check(k == theorem_closed_form(w), "closed form fails on " + to_string(w));
        ++cases[static_cast<int>(classify(w))];
        if (classify(w) == TheoremCase::Vanishing) r.check(k.is_zero(), "degenerate word not zero: " + to_string(w));
    }
    for (int n = 2; n <= 4; ++n) {
        r.check(cumulant_restriction(Word::stars(n)) == (n % 2 == 0 ? 1 : -1) * mu(n), "k(*^n) at n=" + std::to_string(n));
    }
    r.check(cases[0] > 0 && cases[1] > 0 && cases[2] > 0, "not all theorem cases covered");
}

void twist_identity(Outcome& r) {
    const auto& words = theorem_words();
    for (const Word& w : words) (void)cumulant_map()(w);
    std::vector<char> ok(words.size(), 1);
    const unsigned jobs = worker_count();
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j] {
            for (std::size_t i = j; i < words.size(); i += jobs) {
                ok[i] = lift_to_cofree(moment_map(), words[i]) == canonical_twist(lift_to_cofree(cumulant_map(), words[i]));
            }
        });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < words.size(); ++i) r.check(ok[i] != 0, "M != Phi K on " + to_string(words[i]));
}

void twist_invertibility(Outcome& r) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> vertices(1, 4);
    std::uniform_int_distribution<int> terms(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < 100; ++i) {
        TreeSeries x;
        const int t = terms(rng);
        for (int k = 0; k < t; ++k) x.add(oracle::random_decorated_tree(rng, vertices(rng)), coeff(rng));
        r.check(canonical_twist_inverse(canonical_twist(x)) == x, "inverse after twist, sample " + std::to_string(i));
        r.check(canonical_twist(canonical_twist_inverse(x)) == x, "twist after inverse, sample " + std::to_string(i));
        const TreeSeries one = TreeSeries::of(oracle::random_decorated_tree(rng, 1));
        r.check(canonical_twist(one) == one, "twist moved a one-vertex tree, sample " + std::to_string(i));
    }
}

void associahedron(Outcome& r) {
    for (int n = 2; n <= 6; ++n) {
        const MultiMap expect = (1 - (n % 2 == 0 ? 1 : -1)) * mu(n);
        r.check(correction_term(Word::stars(n), cumulant_map()) == expect, "correction term at n=" + std::to_string(n));
    }
}

void balancedness(Outcome& r) {
    std::mt19937 rng(77);
    for (int n = 2; n <= 4; ++n) {
        for (int i = 1; i < n; ++i) {
            for (int rep = 0; rep < 5; ++rep) {
                const Poly b = Poly::monomial(oracle::random_b_monomial(rng, 3));
                auto left = letter_args(n);
                auto right = letter_args(n);
                left[static_cast<std::size_t>(i - 1)] = left[static_cast<std::size_t>(i - 1)] * b;
                right[static_cast<std::size_t>(i)] = b * right[static_cast<std::size_t>(i)];
                r.check(free_cumulant(n, left) == free_cumulant(n, right),
                        "unbalanced at n=" + std::to_string(n) + " i=" + std::to_string(i));
            }
        }
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "non-crossing partition counts against brute force", 5, nc_counts},
        {2, "partition/tree bijection and partition-tree shapes", 5, bijection},
        {3, "leaf-insertion trees against golden DOT files", 1, insertion_goldens},
        {4, "moment-cumulant inversion and generic nested evaluation", 60, moment_cumulant},
        {5, "insertion identity for n <= 3, total insertions <= 2", 60, insertion_identity},
        {6, "closed form of the cumulant morphism on the word range", 300, closed_form},
        {7, "moment morphism equals twisted cumulant morphism", 300, twist_identity},
        {8, "twist invertibility on random tree-series", 30, twist_invertibility},
        {9, "associahedron cancellation for pure-star words", 30, associahedron},
        {10, "balancedness of cumulants", 30, balancedness},
    };
    bool all = true;
    for (const auto& c : criteria) {
        Outcome r;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(r);
        } catch (const std::exception& e) {
            r.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = r.ok && in_time;
        all = all && pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3f s / limit %.0f s", secs, c.limit_seconds);
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << timing << ")";
        if (!r.ok) std::cout << "  " << r.notes.str();
        if (!in_time) std::cout << "  time limit exceeded";
        std::cout << std::endl;
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
    return all ? 0 : 1;
}

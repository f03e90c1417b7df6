#pragma once

// Exact noncommutative term algebra for the universal B-valued probability
// space. A single atom type covers B-generators, multilinear-map slots,
// A-letters and applications of an expectation-like family (E, or an opaque
// placeholder family) to an alternating word of A-letters and B-monomials.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opfree/common.hpp"

namespace opfree {

enum class AtomKind : std::uint8_t { BGen, Slot, Letter, Apply };

class Atom;
using Monomial = std::vector<Atom>;

/// Symbol used for the expectation E. Any other symbol names an opaque
/// B-balanced family f^(n) whose arity is the number of spine letters.
inline constexpr char kExpectation = 'E';

/// `symbol(a_{l0} u_1 a_{l1} ... u_{k-1} a_{l(k-1)})` with k >= 1 and
/// letter-free interior runs u_t (possibly empty).
struct Application {
    char symbol = kExpectation;
    std::vector<int> letters;
    std::vector<Monomial> interiors;
};

std::strong_ordering compare(const Monomial& x, const Monomial& y);

class Atom {
public:
    static Atom bgen(int index) { return Atom(AtomKind::BGen, index); }
    static Atom slot(int index) { return Atom(AtomKind::Slot, index); }
    static Atom letter(int index) { return Atom(AtomKind::Letter, index); }
    static Atom apply(Application app) {
        ensure(!app.letters.empty(), "application needs at least one letter");
        ensure(app.interiors.size() + 1 == app.letters.size(), "application interior count mismatch");
        Atom a(AtomKind::Apply, 0);
        a.app_ = std::make_shared<const Application>(std::move(app));
        return a;
    }

    AtomKind kind() const { return kind_; }
    int index() const { return index_; }
    const Application& application() const { return *app_; }
    bool is_apply() const { return kind_ == AtomKind::Apply; }

    friend std::strong_ordering operator<=>(const Atom& x, const Atom& y) {
        if (auto c = x.kind_ <=> y.kind_; c != 0) return c;
        if (x.kind_ != AtomKind::Apply) return x.index_ <=> y.index_;
        if (x.app_ == y.app_) return std::strong_ordering::equal;
        const Application& p = *x.app_;
        const Application& q = *y.app_;
        if (auto c = p.symbol <=> q.symbol; c != 0) return c;
        if (auto c = p.letters <=> q.letters; c != 0) return c;
        for (std::size_t i = 0; i < p.interiors.size(); ++i) {
            if (auto c = compare(p.interiors[i], q.interiors[i]); c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Atom& x, const Atom& y) { return (x <=> y) == 0; }

private:
    Atom(AtomKind kind, int index) : kind_(kind), index_(index) {}

    AtomKind kind_;
    int index_;
    std::shared_ptr<const Application> app_;
};

/// Degree-lexicographic: shorter monomials first, then atom-wise.
inline std::strong_ordering compare(const Monomial& x, const Monomial& y) {
    if (auto c = x.size() <=> y.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (auto c = x[i] <=> y[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

struct MonomialLess {
    bool operator()(const Monomial& x, const Monomial& y) const { return compare(x, y) < 0; }
};

/// Finite integer combination of monomials, kept in normal form (like terms
/// merged, zeros dropped, canonical ordering).
class Poly {
public:
    using Terms = std::map<Monomial, Coeff, MonomialLess>;

    Poly() = default;

    static Poly monomial(Monomial m, Coeff c = 1) {
        Poly p;
        p.add(m, c);
        return p;
    }
    static Poly atom(Atom a) { return monomial(Monomial{std::move(a)}); }
    static Poly bgen(int i) { return atom(Atom::bgen(i)); }
    static Poly slot(int t) { return atom(Atom::slot(t)); }
    static Poly letter(int j) { return atom(Atom::letter(j)); }
    /// The empty monomial. Used only as a multiplicative identity inside
    /// products; B itself is not assumed unital.
    static Poly one() { return monomial(Monomial{}); }

    void add(const Monomial& m, Coeff c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend Poly operator+(Poly x, const Poly& y) { return x += y; }
    friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
    friend Poly operator-(const Poly& x) { return Coeff{-1} * x; }

    friend Poly operator*(Coeff s, const Poly& x) {
        Poly r;
        if (s == 0) return r;
        for (const auto& [m, c] : x.terms_) r.terms_.emplace(m, checked_mul(s, c));
        return r;
    }

    /// Noncommutative product: concatenation of monomials, extended bilinearly.
    friend Poly operator*(const Poly& x, const Poly& y) {
        Poly r;
        for (const auto& [mx, cx] : x.terms_) {
            for (const auto& [my, cy] : y.terms_) {
                Monomial m;
                m.reserve(mx.size() + my.size());
                m.insert(m.end(), mx.begin(), mx.end());
                m.insert(m.end(), my.begin(), my.end());
                r.add(m, checked_mul(cx, cy));
            }
        }
        return r;
    }

    friend bool operator==(const Poly& x, const Poly& y) { return x.terms_ == y.terms_; }

private:
    Terms terms_;
};

using BElem = Poly;
using AElem = Poly;

// ---------------------------------------------------------------------------
// Normal form of family applications

/// Normal form of `symbol(flat)` for a flat monomial over B-atoms and letters.
/// Exterior B-factors are pulled out; a letter-free argument to E is returned
/// unchanged (E restricts to the identity on B).
inline Poly apply_family(char symbol, const Monomial& flat) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (flat[i].kind() == AtomKind::Letter) pos.push_back(i);
    }
    if (pos.empty()) {
        require(symbol == kExpectation,
                std::string("family '") + symbol + "' applied to an argument without A-letters");
        return Poly::monomial(flat);
    }
    Application app;
    app.symbol = symbol;
    for (std::size_t k = 0; k < pos.size(); ++k) {
        app.letters.push_back(flat[pos[k]].index());
        if (k + 1 < pos.size()) {
            app.interiors.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos[k] + 1),
                                       flat.begin() + static_cast<std::ptrdiff_t>(pos[k + 1]));
        }
    }
    Monomial out(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(pos.front()));
    out.push_back(Atom::apply(std::move(app)));
    out.insert(out.end(), flat.begin() + static_cast<std::ptrdiff_t>(pos.back() + 1), flat.end());
    return Poly::monomial(std::move(out));
}

/// E: A -> B, extended linearly.
inline BElem expectation(const AElem& x) {
    BElem r;
    for (const auto& [m, c] : x.terms()) r += c * apply_family(kExpectation, m);
    return r;
}

/// Rewrites every non-application atom (at any nesting depth). Returning
/// nullopt keeps the atom. Applications are rebuilt by flattening their
/// argument, rewriting it, and renormalizing.
using AtomRewrite = std::function<std::optional<Poly>(const Atom&)>;

Poly substitute(const Poly& x, const AtomRewrite& rw);

namespace detail {

inline Poly substitute_monomial(const Monomial& m, const AtomRewrite& rw);

inline Poly substitute_atom(const Atom& a, const AtomRewrite& rw) {
    if (!a.is_apply()) {
        if (auto r = rw(a)) return *r;
        return Poly::atom(a);
    }
    const Application& app = a.application();
    Poly flat = Poly::one();
    for (std::size_t k = 0; k < app.letters.size(); ++k) {
        flat = flat * substitute_atom(Atom::letter(app.letters[k]), rw);
        if (k < app.interiors.size()) flat = flat * substitute_monomial(app.interiors[k], rw);
    }
    Poly out;
    for (const auto& [fm, c] : flat.terms()) {
        if (app.symbol != kExpectation) {
            std::size_t n = 0;
            for (const Atom& t : fm) n += t.kind() == AtomKind::Letter ? 1 : 0;
            require(n == app.letters.size(),
                    std::string("substitution changes the arity of family '") + app.symbol + "'");
        }
        out += c * apply_family(app.symbol, fm);
    }
    return out;
}

inline Poly substitute_monomial(const Monomial& m, const AtomRewrite& rw) {
    Poly acc = Poly::one();
    for (const Atom& a : m) {
        acc = acc * substitute_atom(a, rw);
        if (acc.is_zero()) break;
    }
    return acc;
}

}  // namespace detail

inline Poly substitute(const Poly& x, const AtomRewrite& rw) {
    Poly r;
    for (const auto& [m, c] : x.terms()) r += c * detail::substitute_monomial(m, rw);
    return r;
}

/// Simultaneous substitution of A-letters. Letters absent from the map stay.
inline Poly substitute_letters(const Poly& x, const std::map<int, AElem>& values) {
    return substitute(x, [&](const Atom& a) -> std::optional<Poly> {
        if (a.kind() != AtomKind::Letter) return std::nullopt;
        auto it = values.find(a.index());
        if (it == values.end()) return std::nullopt;
        return it->second;
    });
}

/// Substitution of slots by arbitrary elements.
inline Poly substitute_slots(const Poly& x, const std::function<Poly(int)>& value) {
    return substitute(x, [&](const Atom& a) -> std::optional<Poly> {
        if (a.kind() != AtomKind::Slot) return std::nullopt;
        return value(a.index());
    });
}

// ---------------------------------------------------------------------------
// Structural queries

/// Calls `visit` on every atom in reading order, descending into applications
/// (spine letters are visited as Letter atoms).
inline void for_each_atom(const Monomial& m, const std::function<void(const Atom&)>& visit) {
    for (const Atom& a : m) {
        if (!a.is_apply()) {
            visit(a);
            continue;
        }
        visit(a);
        const Application& app = a.application();
        for (std::size_t k = 0; k < app.letters.size(); ++k) {
            visit(Atom::letter(app.letters[k]));
            if (k < app.interiors.size()) for_each_atom(app.interiors[k], visit);
        }
    }
}

/// Slot indices in reading order.
inline std::vector<int> slot_sequence(const Monomial& m) {
    std::vector<int> out;
    for_each_atom(m, [&](const Atom& a) {
        if (a.kind() == AtomKind::Slot) out.push_back(a.index());
    });
    return out;
}

/// True when no top-level A-letters and no slots occur.
inline bool is_b_element(const Poly& x) {
    for (const auto& [m, c] : x.terms()) {
        if (m.empty()) return false;
        for (const Atom& a : m) {
            if (a.kind() == AtomKind::Letter) return false;
        }
        if (!slot_sequence(m).empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Text rendering

std::string to_string(const Monomial& m);

inline std::string to_string(const Atom& a) {
    switch (a.kind()) {
        case AtomKind::BGen: return "B" + std::to_string(a.index());
        case AtomKind::Slot: return "b" + std::to_string(a.index());
        case AtomKind::Letter: return "a" + std::to_string(a.index());
        case AtomKind::Apply: break;
    }
    const Application& app = a.application();
    std::string s(1, app.symbol);
    s += '(';
    // E composes with the product of A, so the whole argument is one word;
    // other families show their tensor factors.
    const char* sep = app.symbol == kExpectation ? " " : ", ";
    for (std::size_t k = 0; k < app.letters.size(); ++k) {
        if (k > 0) s += sep;
        s += "a" + std::to_string(app.letters[k]);
        if (k < app.interiors.size() && !app.interiors[k].empty()) s += " " + to_string(app.interiors[k]);
    }
    s += ')';
    return s;
}

inline std::string to_string(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) s += ' ';
        s += to_string(m[i]);
    }
    return s;
}

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const Coeff mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (mag != 1) s += std::to_string(mag) + " ";
        s += to_string(m);
        first = false;
    }
    return s;
}

}  // namespace opfree

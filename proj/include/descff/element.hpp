#pragma once

// Elements of the tensor algebra A (x) Abar: finite linear combinations of
// (chiral partition, antichiral partition) monomials with complex or
// rho-Laurent coefficients.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "core.hpp"
#include "partition.hpp"
#include "rho_laurent.hpp"

namespace descff {

enum class CoeffMode { Numeric, RhoPoly };

template <class R> class BasicElement {
  public:
    using C = complex_t<R>;
    using Coeff = BasicRhoLaurent<R>;
    using Key = std::pair<Partition, Partition>;

    BasicElement() = default;

    static BasicElement one() { return monomial(Partition{}, Partition{}, C(1)); }
    static BasicElement generator(int n) { return monomial(Partition{n}, Partition{}, C(1)); }
    static BasicElement bar_generator(int n) { return monomial(Partition{}, Partition{n}, C(1)); }

    static BasicElement monomial(Partition chiral, Partition antichiral, C coeff) {
        BasicElement e;
        e.add_term(std::move(chiral), std::move(antichiral), Coeff(coeff));
        return e;
    }
    static BasicElement monomial(Partition chiral, Partition antichiral, Coeff coeff) {
        BasicElement e;
        e.mode_ = CoeffMode::RhoPoly;
        e.add_term(std::move(chiral), std::move(antichiral), std::move(coeff));
        return e;
    }

    CoeffMode mode() const { return mode_; }
    const std::map<Key, Coeff>& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }

    void add_term(Partition chiral, Partition antichiral, Coeff c) {
        if (c.zero()) return;
        Key k{std::move(chiral), std::move(antichiral)};
        auto it = terms_.emplace(std::move(k), Coeff()).first;
        it->second += c;
        if (it->second.zero()) terms_.erase(it);
    }

    BasicElement& operator+=(const BasicElement& o) {
        check_mode(o);
        if (terms_.empty()) mode_ = o.mode_;
        for (auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    BasicElement& operator-=(const BasicElement& o) {
        check_mode(o);
        if (terms_.empty()) mode_ = o.mode_;
        for (auto& [k, c] : o.terms_) add_term(k.first, k.second, c * C(-1));
        return *this;
    }
    friend BasicElement operator+(BasicElement a, const BasicElement& b) { return a += b; }
    friend BasicElement operator-(BasicElement a, const BasicElement& b) { return a -= b; }

    friend BasicElement operator*(const BasicElement& a, const BasicElement& b) {
        a.check_mode(b);
        BasicElement r;
        r.mode_ = (a.mode_ == CoeffMode::RhoPoly || b.mode_ == CoeffMode::RhoPoly)
                      ? CoeffMode::RhoPoly
                      : CoeffMode::Numeric;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) {
                std::vector<int> ch = ka.first.parts();
                ch.insert(ch.end(), kb.first.parts().begin(), kb.first.parts().end());
                std::vector<int> ach = ka.second.parts();
                ach.insert(ach.end(), kb.second.parts().begin(), kb.second.parts().end());
                r.add_term(Partition(std::move(ch)), Partition(std::move(ach)), ca * cb);
            }
        return r;
    }

    BasicElement operator*(C s) const {
        BasicElement r;
        r.mode_ = mode_;
        for (auto& [k, c] : terms_) r.add_term(k.first, k.second, c * s);
        return r;
    }

    // c_{-n} <-> cbar_{-n} on every monomial
    BasicElement bar() const {
        BasicElement r;
        r.mode_ = mode_;
        for (auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
        return r;
    }

    bool homogeneous() const {
        if (terms_.empty()) return true;
        auto [n, nb] = top_level();
        for (auto& [k, c] : terms_)
            if (k.first.level() != n || k.second.level() != nb) return false;
        return true;
    }
    // (level, antilevel) of the maximal term; for homogeneous elements this is
    // the grading of the whole element
    std::pair<int, int> top_level() const {
        int n = 0, nb = 0;
        for (auto& [k, c] : terms_) {
            n = std::max(n, k.first.level());
            nb = std::max(nb, k.second.level());
        }
        return {n, nb};
    }

    bool purely_chiral() const {
        for (auto& [k, c] : terms_)
            if (!k.second.empty()) return false;
        return true;
    }
    bool has_antichiral() const { return !purely_chiral(); }

    std::set<int> chiral_degrees() const {
        std::set<int> s;
        for (auto& [k, c] : terms_)
            for (int m : k.first.parts()) s.insert(m);
        return s;
    }
    std::set<int> antichiral_degrees() const {
        std::set<int> s;
        for (auto& [k, c] : terms_)
            for (int m : k.second.parts()) s.insert(m);
        return s;
    }

    // evaluate rho-Laurent coefficients at a concrete a (mode goes Numeric)
    BasicElement at_a(C a) const {
        BasicElement r;
        for (auto& [k, c] : terms_) r.add_term(k.first, k.second, Coeff(c.eval_at_a(a)));
        return r;
    }

    void require_numeric(const char* who) const {
        if (mode_ == CoeffMode::RhoPoly)
            throw domain_error(std::string(who) +
                               ": rho-polynomial coefficients must be evaluated (at_a) first");
    }

  private:
    void check_mode(const BasicElement& o) const {
        if (!terms_.empty() && !o.terms_.empty() && mode_ != o.mode_)
            throw domain_error("mixing numeric and rho-polynomial coefficient modes");
    }

    std::map<Key, Coeff> terms_;
    CoeffMode mode_ = CoeffMode::Numeric;
};

using Element = BasicElement<double>;

// --- inline element syntax ------------------------------------------------
// grammar: sum of products, factors are c-<n>, cbar-<n> (optionally ^k) or a
// complex coefficient like 0.5 or (0.5+1.25i). Example:
//   "c-1^2*c-2 + (0.5+0i)*cbar-3"
class ElementParser {
  public:
    explicit ElementParser(std::string text) : s_(std::move(text)) {}

    Element parse() {
        Element result = parse_term();
        skip_ws();
        while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            char op = s_[pos_++];
            Element t = parse_term();
            result = (op == '+') ? result + t : result - t;
            skip_ws();
        }
        if (pos_ != s_.size()) fail("trailing input");
        return result;
    }

  private:
    Element parse_term() {
        Element f = parse_factor();
        skip_ws();
        while (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            f = f * parse_factor();
            skip_ws();
        }
        return f;
    }

    Element parse_factor() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of element expression");
        if (s_[pos_] == '(') return Element::one() * parse_complex();
        if (s_.compare(pos_, 4, "cbar") == 0) return parse_generator(true);
        if (s_[pos_] == 'c') return parse_generator(false);
        return Element::one() * Cplx(parse_number(), 0.0);
    }

    Element parse_generator(bool bar) {
        pos_ += bar ? 4 : 1;
        if (pos_ >= s_.size() || s_[pos_] != '-') fail("expected '-' in generator token");
        ++pos_;
        int n = parse_int();
        if (n < 1) fail("generator index must be >= 1");
        Element g = bar ? Element::bar_generator(n) : Element::generator(n);
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            int k = parse_int();
            if (k < 0) fail("negative power");
            Element r = Element::one();
            for (int i = 0; i < k; ++i) r = r * g;
            return r;
        }
        return g;
    }

    Cplx parse_complex() {
        ++pos_;  // '('
        double re = parse_number();
        double im = 0;
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            int sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
            im = sign * parse_number();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != 'i') fail("expected 'i' in complex literal");
            ++pos_;
        }
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
        ++pos_;
        return Cplx(re, im);
    }

    double parse_number() {
        skip_ws();
        size_t used = 0;
        double v;
        try {
            v = std::stod(s_.substr(pos_), &used);
        } catch (...) {
            fail("expected number");
        }
        pos_ += used;
        return v;
    }

    int parse_int() {
        skip_ws();
        size_t used = 0;
        int v;
        try {
            v = std::stoi(s_.substr(pos_), &used);
        } catch (...) {
            fail("expected integer");
        }
        pos_ += used;
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw domain_error("element syntax error at position " + std::to_string(pos_) + ": " + why +
                           " in \"" + s_ + "\"");
    }

    std::string s_;
    size_t pos_ = 0;
};

inline Element parse_element(const std::string& text) { return ElementParser(text).parse(); }

// the level-2 self-dual family: h^(1,1)_a = c_{-1}^2 and
// h^(2)_a = (c_{-2} - i c_{-1}^2 tan(pi a)) / (sin(pi p) - sin(2 pi a))
inline Element h11_element() { return Element::generator(1) * Element::generator(1); }

inline Element h2_element(Cplx a, Cplx p) {
    Cplx den = std::sin(kPi * p) - std::sin(2.0 * kPi * a);
    if (std::abs(den) < 1e-12)
        throw domain_error("h^(2)_a undefined at a = p/2 or a = -(1+p)/2 (degenerate point)");
    Cplx tga = std::tan(kPi * a);
    Element e = Element::generator(2) * (1.0 / den);
    e += h11_element() * (Cplx(0, -1) * tga / den);
    return e;
}

}  // namespace descff

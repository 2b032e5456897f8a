#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wfano {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Rational& q) {
    if (denom(q) == 1) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

struct Variable {
    std::string name;
    int weight = 1;
    bool operator==(const Variable&) const = default;
};

using VarTable = std::vector<Variable>;

inline VarTable make_vars(const std::vector<int>& weights,
                          std::vector<std::string> names = {"x", "y", "z", "t", "w"}) {
    if (weights.size() > names.size()) {
        for (std::size_t i = names.size(); i < weights.size(); ++i) names.push_back("x" + std::to_string(i));
    }
    VarTable v;
    for (std::size_t i = 0; i < weights.size(); ++i) v.push_back({names[i], weights[i]});
    return v;
}

// Dense exponent vector over a fixed variable table.
struct Monomial {
    std::vector<int> e;

    int total_degree() const { return std::accumulate(e.begin(), e.end(), 0); }
    long weighted_degree(const std::vector<int>& w) const {
        long s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<long>(w[i]) * e[i];
        return s;
    }
    bool operator==(const Monomial&) const = default;
};

// Graded lex, descending: larger total degree first, then lex on declared order.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

class QPoly;
QPoly parse_poly(const std::string& text, const VarTable& vars);

class QPoly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    QPoly() = default;
    explicit QPoly(VarTable vars) : vars_(std::move(vars)) {}

    static QPoly constant(const VarTable& vars, const Rational& c) {
        QPoly p(vars);
        if (c != 0) p.terms_[Monomial{std::vector<int>(vars.size(), 0)}] = c;
        return p;
    }
    static QPoly var(const VarTable& vars, std::size_t i) {
        std::vector<int> e(vars.size(), 0);
        e.at(i) = 1;
        return term(vars, Rational(1), e);
    }
    static QPoly term(const VarTable& vars, const Rational& c, std::vector<int> e) {
        QPoly p(vars);
        if (e.size() != vars.size()) throw std::invalid_argument("exponent length mismatch");
        if (c != 0) p.terms_[Monomial{std::move(e)}] = c;
        return p;
    }

    const VarTable& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::vector<int> weights() const {
        std::vector<int> w;
        for (auto& v : vars_) w.push_back(v.weight);
        return w;
    }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(const std::vector<int>& e) const {
        auto it = terms_.find(Monomial{e});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    QPoly& operator+=(const QPoly& o) {
        check_compat(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    QPoly& operator-=(const QPoly& o) {
        check_compat(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator-(const QPoly& a) { return a * Rational(-1); }

    friend QPoly operator*(const QPoly& a, const Rational& s) {
        QPoly r(a.vars_);
        if (s == 0) return r;
        for (auto& [m, c] : a.terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    friend QPoly operator*(const Rational& s, const QPoly& a) { return a * s; }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        a.check_compat(b);
        QPoly r(a.vars_.empty() ? b.vars_ : a.vars_);
        for (auto& [ma, ca] : a.terms_) {
            for (auto& [mb, cb] : b.terms_) {
                Monomial m{ma.e};
                for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] += mb.e[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

    QPoly pow(unsigned n) const {
        QPoly r = constant(vars_, 1);
        QPoly b = *this;
        while (n) {
            if (n & 1u) r *= b;
            n >>= 1u;
            if (n) b *= b;
        }
        return r;
    }

    bool operator==(const QPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

    bool involves(std::size_t i) const {
        for (auto& [m, c] : terms_)
            if (m.e[i] != 0) return true;
        return false;
    }
    int degree_in(std::size_t i) const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.e[i]);
        return d;
    }

    // Weighted degree if all terms agree; nullopt means MIXED. Throws on zero.
    std::optional<long> weighted_degree() const {
        if (is_zero()) throw std::domain_error("weighted degree of the zero polynomial");
        auto w = weights();
        std::optional<long> d;
        for (auto& [m, c] : terms_) {
            long dm = m.weighted_degree(w);
            if (!d) d = dm;
            else if (*d != dm) return std::nullopt;
        }
        return d;
    }
    bool is_quasi_homogeneous(long d) const {
        auto w = weights();
        for (auto& [m, c] : terms_)
            if (m.weighted_degree(w) != d) return false;
        return true;
    }

    QPoly partial(std::size_t i) const {
        QPoly r(vars_);
        for (auto& [m, c] : terms_) {
            if (m.e[i] == 0) continue;
            Monomial n{m.e};
            n.e[i] -= 1;
            r.add_term(n, c * m.e[i]);
        }
        return r;
    }

    // Simultaneous substitution x_i <- images[i] for the indices present in the map.
    QPoly substitute(const std::map<std::size_t, QPoly>& images) const {
        QPoly r(vars_);
        std::map<std::pair<std::size_t, int>, QPoly> cache;
        auto power = [&](std::size_t i, int k) -> const QPoly& {
            auto key = std::make_pair(i, k);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            return cache.emplace(key, images.at(i).pow(static_cast<unsigned>(k))).first->second;
        };
        for (auto& [m, c] : terms_) {
            Monomial rest{m.e};
            QPoly acc = QPoly::constant(vars_, c);
            for (auto& [i, img] : images) {
                if (m.e[i] == 0) continue;
                acc = acc * power(i, m.e[i]);
                rest.e[i] = 0;
            }
            acc = acc * QPoly::term(vars_, Rational(1), rest.e);
            r += acc;
        }
        return r;
    }

    // Substitute rational values for some variables.
    QPoly specialize(const std::map<std::size_t, Rational>& values) const {
        QPoly r(vars_);
        for (auto& [m, c] : terms_) {
            Monomial n{m.e};
            Rational k = c;
            for (auto& [i, v] : values) {
                if (n.e[i] == 0) continue;
                Rational p = 1;
                for (int j = 0; j < n.e[i]; ++j) p *= v;
                k *= p;
                n.e[i] = 0;
            }
            r.add_term(n, k);
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& pt) const {
        Rational s = 0;
        for (auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.e.size(); ++i)
                for (int j = 0; j < m.e[i]; ++j) t *= pt[i];
            s += t;
        }
        return s;
    }

    // Terms whose exponents vanish outside `keep`.
    QPoly restrict_to(const std::vector<std::size_t>& keep) const {
        QPoly r(vars_);
        for (auto& [m, c] : terms_) {
            bool ok = true;
            for (std::size_t i = 0; i < m.e.size() && ok; ++i)
                if (m.e[i] != 0 && std::find(keep.begin(), keep.end(), i) == keep.end()) ok = false;
            if (ok) r.terms_.emplace(m, c);
        }
        return r;
    }

    // Change the variable table; `map[i]` gives the new index of old variable i.
    QPoly rebase(const VarTable& nv, const std::vector<int>& map) const {
        QPoly r(nv);
        for (auto& [m, c] : terms_) {
            std::vector<int> e(nv.size(), 0);
            for (std::size_t i = 0; i < m.e.size(); ++i) {
                if (m.e[i] == 0) continue;
                if (map.at(i) < 0) throw std::invalid_argument("rebase drops a used variable");
                e[static_cast<std::size_t>(map[i])] += m.e[i];
            }
            r.add_term(Monomial{e}, c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [m, c] : terms_) {
            Rational a = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            std::string mon;
            for (std::size_t i = 0; i < m.e.size(); ++i) {
                if (m.e[i] == 0) continue;
                if (!mon.empty()) mon += "*";
                mon += vars_[i].name;
                if (m.e[i] > 1) mon += "^" + std::to_string(m.e[i]);
            }
            if (mon.empty()) out += to_string(a);
            else if (a == 1) out += mon;
            else out += to_string(a) + "*" + mon;
        }
        return out;
    }

private:
    void check_compat(const QPoly& o) const {
        if (!vars_.empty() && !o.vars_.empty() && !(vars_ == o.vars_))
            throw std::invalid_argument("polynomials over different variable tables");
    }

    VarTable vars_;
    TermMap terms_;
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

namespace detail {

class Parser {
public:
    Parser(const std::string& s, const VarTable& v) : s_(s), vars_(v) {}

    QPoly parse() {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty input", pos_);
        QPoly r = expr();
        skip();
        if (pos_ != s_.size()) {
            if (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')
                throw ParseError("implicit multiplication is not allowed", pos_);
            throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
        }
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    QPoly expr() {
        QPoly acc(vars_);
        bool neg = false;
        if (peek('-')) { neg = true; ++pos_; }
        else if (peek('+')) { ++pos_; }
        QPoly t = term();
        acc = neg ? acc - t : acc + t;
        for (;;) {
            if (peek('+')) { ++pos_; acc += term(); }
            else if (peek('-')) { ++pos_; acc -= term(); }
            else break;
        }
        return acc;
    }

    QPoly term() {
        QPoly acc = factor();
        for (;;) {
            if (peek('*')) { ++pos_; acc *= factor(); }
            else {
                skip();
                if (pos_ < s_.size() &&
                    (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_'))
                    throw ParseError("implicit multiplication is not allowed", pos_);
                break;
            }
        }
        return acc;
    }

    Int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", pos_);
        return Int(s_.substr(start, pos_ - start));
    }

    QPoly factor() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            QPoly e = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return maybe_power(std::move(e));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int n = integer();
            Rational q(n);
            if (peek('/')) {
                std::size_t at = pos_;
                ++pos_;
                Int d = integer();
                if (d == 0) throw ParseError("division by zero in rational literal", at);
                q = Rational(n, d);
            }
            return QPoly::constant(vars_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            int idx = -1;
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i].name == name) idx = static_cast<int>(i);
            if (idx < 0) throw ParseError("unknown variable '" + name + "'", start);
            return maybe_power(QPoly::var(vars_, static_cast<std::size_t>(idx)));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    // Optional '^' uint suffix; also accepted after a parenthesised group.
    QPoly maybe_power(QPoly base) {
        if (!peek('^')) return base;
        ++pos_;
        skip();
        std::size_t at = pos_;
        Int e = integer();
        if (e > 4096) throw ParseError("exponent too large", at);
        return base.pow(static_cast<unsigned>(e));
    }

    const std::string& s_;
    const VarTable& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline QPoly parse_poly(const std::string& text, const VarTable& vars) {
    return detail::Parser(text, vars).parse();
}

// All exponent vectors with sum w_i e_i = d, in canonical (grlex descending) order.
inline std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, long d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    std::vector<int> e(weights.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, long rem) -> void {
        if (i + 1 == weights.size()) {
            if (rem % weights[i] == 0) {
                e[i] = static_cast<int>(rem / weights[i]);
                out.push_back(Monomial{e});
            }
            return;
        }
        for (long k = rem / weights[i]; k >= 0; --k) {
            e[i] = static_cast<int>(k);
            self(self, i + 1, rem - k * weights[i]);
        }
        e[i] = 0;
    };
    if (weights.empty()) {
        if (d == 0) out.push_back(Monomial{});
        return out;
    }
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), GrlexGreater{});
    return out;
}

}  // namespace wfano

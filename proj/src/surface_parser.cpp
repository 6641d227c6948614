#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/surface.hpp"

namespace hadamard {

namespace {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Op { Number, U, V, Add, Sub, Mul, Pow };
    Op op;
    Rational number;  // Number literal, or the exponent of Pow
    NodePtr lhs;
    NodePtr rhs;
};

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, Rational number = 0) {
    return std::make_shared<const Node>(Node{op, std::move(number), std::move(lhs), std::move(rhs)});
}

const std::vector<std::string> kFactorStart{"number", "'u'", "'v'", "'('"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip_space();
        if (pos_ != text_.size()) fail({"'+'", "'-'", "'*'", "'^'", "end of input"});
        return root;
    }

private:
    NodePtr expr() {
        NodePtr node = term();
        for (;;) {
            skip_space();
            if (peek('+')) {
                ++pos_;
                node = make(Node::Op::Add, node, term());
            } else if (peek('-')) {
                ++pos_;
                node = make(Node::Op::Sub, node, term());
            } else {
                return node;
            }
        }
    }

    NodePtr term() {
        NodePtr node = factor();
        for (;;) {
            skip_space();
            if (!peek('*')) return node;
            ++pos_;
            node = make(Node::Op::Mul, node, factor());
        }
    }

    NodePtr factor() {
        NodePtr node = primary();
        for (;;) {
            skip_space();
            if (!peek('^')) return node;
            ++pos_;
            skip_space();
            const std::size_t at = pos_;
            if (!starts_number()) fail({"number"});
            Rational exponent = number();
            if (exponent <= 0) {
                throw ParseError(at, {"positive number"},
                                 "parse error at offset " + std::to_string(at) + ": exponents must be positive");
            }
            node = make(Node::Op::Pow, node, nullptr, std::move(exponent));
        }
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail(kFactorStart);
        const char ch = text_[pos_];
        if (ch == 'u') {
            ++pos_;
            return make(Node::Op::U);
        }
        if (ch == 'v') {
            ++pos_;
            return make(Node::Op::V);
        }
        if (ch == '(') {
            ++pos_;
            NodePtr inner = expr();
            skip_space();
            if (!peek(')')) fail({"')'", "'+'", "'-'", "'*'", "'^'"});
            ++pos_;
            return inner;
        }
        if (starts_number()) return make(Node::Op::Number, nullptr, nullptr, number());
        fail(kFactorStart);
    }

    bool starts_number() const {
        if (pos_ >= text_.size()) return false;
        const char ch = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) return true;
        return ch == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
    }

    Rational number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        try {
            return parse_rational(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::invalid_argument&) {
            throw ParseError(start, {"number"}, "parse error at offset " + std::to_string(start) + ": malformed number");
        }
    }

    bool peek(char ch) const { return pos_ < text_.size() && text_[pos_] == ch; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::vector<std::string>& expected) const {
        std::ostringstream os;
        os << "parse error at offset " << pos_ << ": expected one of ";
        for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
        if (pos_ < text_.size()) {
            os << " but found '" << text_[pos_] << "'";
        } else {
            os << " but reached end of input";
        }
        throw ParseError(pos_, expected, os.str());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Integer exponent when the rational is a whole number of modest size.
std::optional<int> small_integer(const Rational& r) {
    if (denominator(r) != 1) return std::nullopt;
    if (r > 64 || r < 0) return std::nullopt;
    return numerator(r).convert_to<int>();
}

// Degree cap used while lowering; beyond it the surface is no longer treated
// as a polynomial.
constexpr int kLoweringDegreeCap = 64;

std::optional<Poly2<Rational>> to_polynomial(const Node& n) {
    switch (n.op) {
        case Node::Op::Number: return Poly2<Rational>::constant(n.number);
        case Node::Op::U: return Poly2<Rational>::monomial(1, 0, Rational(1));
        case Node::Op::V: return Poly2<Rational>::monomial(0, 1, Rational(1));
        case Node::Op::Add:
        case Node::Op::Sub:
        case Node::Op::Mul: {
            auto l = to_polynomial(*n.lhs);
            if (!l) return std::nullopt;
            auto r = to_polynomial(*n.rhs);
            if (!r) return std::nullopt;
            if (n.op == Node::Op::Add) return *l + *r;
            if (n.op == Node::Op::Sub) return *l - *r;
            if (l->degree_u() + r->degree_u() > kLoweringDegreeCap || l->degree_v() + r->degree_v() > kLoweringDegreeCap)
                return std::nullopt;
            return (*l * *r).trimmed();
        }
        case Node::Op::Pow: {
            const auto k = small_integer(n.number);
            if (!k) return std::nullopt;
            auto base = to_polynomial(*n.lhs);
            if (!base) return std::nullopt;
            if (base->degree_u() * *k > kLoweringDegreeCap || base->degree_v() * *k > kLoweringDegreeCap)
                return std::nullopt;
            Poly2<Rational> out = Poly2<Rational>::constant(1);
            for (int i = 0; i < *k; ++i) out = (out * *base).trimmed();
            return out;
        }
    }
    return std::nullopt;
}

using TermMap = std::map<std::pair<double, double>, double>;

TermMap multiply(const TermMap& x, const TermMap& y) {
    TermMap out;
    for (const auto& [ex, cx] : x)
        for (const auto& [ey, cy] : y) out[{ex.first + ey.first, ex.second + ey.second}] += cx * cy;
    return out;
}

std::optional<TermMap> to_terms(const Node& n) {
    switch (n.op) {
        case Node::Op::Number: return TermMap{{{0.0, 0.0}, to_double(n.number)}};
        case Node::Op::U: return TermMap{{{1.0, 0.0}, 1.0}};
        case Node::Op::V: return TermMap{{{0.0, 1.0}, 1.0}};
        case Node::Op::Add:
        case Node::Op::Sub:
        case Node::Op::Mul: {
            auto l = to_terms(*n.lhs);
            if (!l) return std::nullopt;
            auto r = to_terms(*n.rhs);
            if (!r) return std::nullopt;
            if (n.op == Node::Op::Mul) return multiply(*l, *r);
            const double sign = n.op == Node::Op::Add ? 1.0 : -1.0;
            for (const auto& [e, c] : *r) (*l)[e] += sign * c;
            return l;
        }
        case Node::Op::Pow: {
            auto base = to_terms(*n.lhs);
            if (!base) return std::nullopt;
            if (const auto k = small_integer(n.number)) {
                if (base->size() > 1 && *k > 16) return std::nullopt;
                TermMap out{{{0.0, 0.0}, 1.0}};
                for (int i = 0; i < *k; ++i) out = multiply(out, *base);
                return out;
            }
            // Non-integer powers distribute only over a single positive monomial.
            TermMap nonzero;
            for (const auto& [e, c] : *base)
                if (c != 0.0) nonzero[e] = c;
            if (nonzero.size() != 1) return std::nullopt;
            const auto& [e, c] = *nonzero.begin();
            if (!(c > 0.0)) return std::nullopt;
            const double p = to_double(n.number);
            return TermMap{{{e.first * p, e.second * p}, std::pow(c, p)}};
        }
    }
    return std::nullopt;
}

double eval_node(const Node& n, double u, double v) {
    switch (n.op) {
        case Node::Op::Number: return to_double(n.number);
        case Node::Op::U: return u;
        case Node::Op::V: return v;
        case Node::Op::Add: return eval_node(*n.lhs, u, v) + eval_node(*n.rhs, u, v);
        case Node::Op::Sub: return eval_node(*n.lhs, u, v) - eval_node(*n.rhs, u, v);
        case Node::Op::Mul: return eval_node(*n.lhs, u, v) * eval_node(*n.rhs, u, v);
        case Node::Op::Pow: return std::pow(eval_node(*n.lhs, u, v), to_double(n.number));
    }
    return std::nan("");
}

}  // namespace

Surface parse_surface(std::string_view text) {
    NodePtr root = Parser(text).parse();
    std::string label(text);

    if (auto poly = to_polynomial(*root)) {
        Poly2<Rational> p = poly->trimmed();
        if (p.degree_u() <= Poly2<Rational>::kMaxSurfaceDegree && p.degree_v() <= Poly2<Rational>::kMaxSurfaceDegree) {
            return Surface::polynomial(std::move(p), std::move(label));
        }
    }
    if (auto terms = to_terms(*root)) {
        std::vector<PowerTerm> list;
        for (const auto& [e, c] : *terms)
            if (c != 0.0) list.push_back({c, e.first, e.second});
        return Surface::power_sum(std::move(list), std::move(label));
    }
    return Surface::numeric([root](double u, double v) { return eval_node(*root, u, v); }, std::move(label));
}

}  // namespace hadamard

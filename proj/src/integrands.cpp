// Copyright (c) 2026 the hitrun authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hitrun/integrands.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace hitrun {

namespace {

struct Node {
    virtual ~Node() = default;
    virtual double eval(const Vec& x) const = 0;
};
using NodePtr = std::unique_ptr<Node>;

struct ConstNode : Node {
    double v;
    explicit ConstNode(double v) : v(v) {}
    double eval(const Vec&) const override { return v; }
};

struct CoordNode : Node {
    int i;
    explicit CoordNode(int i) : i(i) {}
    double eval(const Vec& x) const override { return x[i]; }
};

struct UnaryNode : Node {
    enum class Op { Neg, Tanh, ExpClip } op;
    NodePtr child;
    UnaryNode(Op op, NodePtr child) : op(op), child(std::move(child)) {}
    double eval(const Vec& x) const override {
        const double v = child->eval(x);
        switch (op) {
        case Op::Neg:
            return -v;
        case Op::Tanh:
            return std::tanh(v);
        case Op::ExpClip:
            return std::exp(std::min(v, 0.0));
        }
        return 0.0;
    }
};

struct BinaryNode : Node {
    char op;
    NodePtr lhs, rhs;
    BinaryNode(char op, NodePtr lhs, NodePtr rhs)
        : op(op), lhs(std::move(lhs)), rhs(std::move(rhs)) {}
    double eval(const Vec& x) const override {
        const double a = lhs->eval(x);
        const double b = rhs->eval(x);
        switch (op) {
        case '+':
            return a + b;
        case '-':
            return a - b;
        case '*':
            return a * b;
        case '/':
            return a / b;
        }
        return 0.0;
    }
};

class Parser {
public:
    Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

    NodePtr parse() {
        NodePtr root = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression: " + what + " at position " +
                                    std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (true) {
            if (consume('+'))
                lhs = std::make_unique<BinaryNode>('+', std::move(lhs), parse_term());
            else if (consume('-'))
                lhs = std::make_unique<BinaryNode>('-', std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        while (true) {
            if (consume('*'))
                lhs = std::make_unique<BinaryNode>('*', std::move(lhs), parse_unary());
            else if (consume('/'))
                lhs = std::make_unique<BinaryNode>('/', std::move(lhs), parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (consume('-'))
            return std::make_unique<UnaryNode>(UnaryNode::Op::Neg, parse_unary());
        return parse_primary();
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        fail("unexpected character");
    }

    NodePtr parse_number() {
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(text_.substr(pos_), &consumed);
        } catch (const std::exception&) {
            fail("malformed number");
        }
        pos_ += consumed;
        return std::make_unique<ConstNode>(v);
    }

    NodePtr parse_word() {
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
        const std::string word = text_.substr(pos_, end - pos_);
        pos_ = end;
        if (word.size() >= 2 && word[0] == 'x') {
            int index = 0;
            for (std::size_t i = 1; i < word.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(word[i]))) fail("bad coordinate");
                index = index * 10 + (word[i] - '0');
            }
            if (index < 1 || index > dim_)
                fail("coordinate x" + std::to_string(index) + " out of range for d = " +
                     std::to_string(dim_));
            return std::make_unique<CoordNode>(index - 1);
        }
        if (word == "tanh") {
            if (!consume('(')) fail("expected '(' after tanh");
            NodePtr inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return std::make_unique<UnaryNode>(UnaryNode::Op::Tanh, std::move(inner));
        }
        if (word == "expclip") {
            if (!consume('(')) fail("expected '(' after expclip");
            NodePtr inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return std::make_unique<UnaryNode>(UnaryNode::Op::ExpClip, std::move(inner));
        }
        fail("unknown identifier '" + word + "'");
    }

    const std::string& text_;
    int dim_;
    std::size_t pos_ = 0;
};

} // namespace

IntegrandFn parse_expression(const std::string& expr, int dim) {
    Parser parser(expr, dim);
    std::shared_ptr<Node> root(parser.parse().release());
    return [root](const Vec& x) { return root->eval(x); };
}

IntegrandFn make_integrand(const IntegrandSpec& spec, int dim) {
    if (spec.name == "constant") {
        const double v = spec.value;
        return [v](const Vec&) { return v; };
    }
    if (spec.name == "coordinate") {
        if (spec.index < 1 || spec.index > dim)
            throw std::invalid_argument("integrand: coordinate index out of range");
        const int i = spec.index - 1;
        return [i](const Vec& x) { return x[i]; };
    }
    if (spec.name == "halfspace") {
        if (spec.normal.size() != dim)
            throw std::invalid_argument("integrand: halfspace normal dimension mismatch");
        const Vec normal = spec.normal;
        const double offset = spec.offset;
        return [normal, offset](const Vec& x) { return normal.dot(x) > offset ? 1.0 : 0.0; };
    }
    if (spec.name == "tanh_linear") {
        if (spec.a.size() != dim)
            throw std::invalid_argument("integrand: tanh_linear coefficient dimension mismatch");
        const Vec a = spec.a;
        const double b = spec.b;
        return [a, b](const Vec& x) { return std::tanh(a.dot(x) + b); };
    }
    if (spec.name == "expression") return parse_expression(spec.expr, dim);
    throw std::invalid_argument("integrand: unknown name '" + spec.name + "'");
}

} // namespace hitrun

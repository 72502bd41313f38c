#include "acc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <utility>

#include "acc/error.hpp"

namespace acc {

namespace {

struct Node {
    enum class Op { True, False, Var, And, Implies, Iff } op;
    std::size_t var = 0;
    std::unique_ptr<Node> lhs, rhs;

    bool eval(Model m) const {
        switch (op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Var: return (m >> var) & 1u;
        case Op::And: return lhs->eval(m) && rhs->eval(m);
        case Op::Implies: return !lhs->eval(m) || rhs->eval(m);
        case Op::Iff: return lhs->eval(m) == rhs->eval(m);
        }
        return false;
    }
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Scope& scope) : text_(text), scope_(scope) {}

    NodePtr parse() {
        NodePtr n = iff();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return n;
    }

private:
    NodePtr iff() {
        NodePtr n = implies();
        while (eat("<->")) n = make(Node::Op::Iff, std::move(n), implies());
        return n;
    }

    NodePtr implies() {
        NodePtr n = conj();
        if (eat("->")) return make(Node::Op::Implies, std::move(n), implies());
        return n;
    }

    NodePtr conj() {
        NodePtr n = primary();
        while (eat("&")) n = make(Node::Op::And, std::move(n), primary());
        return n;
    }

    NodePtr primary() {
        skip();
        if (eat("(")) {
            NodePtr n = iff();
            if (!eat(")")) fail("expected ')'");
            return n;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string word(text_.substr(start, pos_ - start));
        if (word.empty()) fail("expected a variable, `true` or '('");
        if (word == "true") return make(Node::Op::True);
        if (word == "bot" || word == "false") return make(Node::Op::False);
        auto it = std::find(scope_.begin(), scope_.end(), word);
        if (it == scope_.end()) fail("variable " + word + " is not in scope");
        NodePtr n = make(Node::Op::Var);
        n->var = static_cast<std::size_t>(it - scope_.begin());
        return n;
    }

    bool eat(std::string_view lit) {
        skip();
        if (text_.substr(pos_, lit.size()) != lit) return false;
        pos_ += lit.size();
        return true;
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("formula: " + what, 1, pos_ + 1);
    }

    std::string_view text_;
    const Scope& scope_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

DefValue parse_model_list(std::string_view body, const Scope& scope) {
    std::vector<Model> models;
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ParseError("models: " + what, 1, pos + 1);
    };
    while (true) {
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
        if (pos >= body.size()) break;
        if (body[pos] != '[') fail("expected '['");
        const std::size_t close = body.find(']', pos);
        if (close == std::string_view::npos) fail("expected ']'");
        Model m = 0;
        std::string_view inner = trim(body.substr(pos + 1, close - pos - 1));
        while (!inner.empty()) {
            const std::size_t comma = inner.find(',');
            std::string name(trim(inner.substr(0, comma)));
            auto it = std::find(scope.begin(), scope.end(), name);
            if (it == scope.end()) fail("variable " + name + " is not in scope");
            m |= Model{1} << static_cast<std::size_t>(it - scope.begin());
            inner = comma == std::string_view::npos ? std::string_view{} : trim(inner.substr(comma + 1));
        }
        models.push_back(m);
        pos = close + 1;
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
        if (pos < body.size()) {
            if (body[pos] != ';') fail("expected ';'");
            ++pos;
        }
    }
    if (models.empty()) throw ParseError("models: empty model list (write `bot`)", 1, 1);
    try {
        return DefValue::from_exact_models(scope, std::move(models));
    } catch (const ScopeError& e) {
        throw ParseError(std::string("models: ") + e.what(), 1, 1);
    }
}

}  // namespace

DefValue parse_value(std::string_view text, const Scope& scope) {
    check_scope(scope);
    const std::string_view t = trim(text);
    if (t == "bot") return DefValue::bottom(scope);
    if (t.substr(0, 7) == "models(") {
        if (t.back() != ')') throw ParseError("models: expected ')'", 1, t.size());
        return parse_model_list(t.substr(7, t.size() - 8), scope);
    }
    NodePtr f = FormulaParser(t, scope).parse();
    std::vector<Model> models;
    const std::size_t count = std::size_t{1} << scope.size();
    for (std::size_t m = 0; m < count; ++m)
        if (f->eval(static_cast<Model>(m))) models.push_back(static_cast<Model>(m));
    if (models.empty()) return DefValue::bottom(scope);
    if (!is_valid_def(scope, models))
        throw ParseError("formula '" + std::string(t) + "' is not a definite Boolean function", 1, 1);
    return DefValue::from_exact_models(scope, std::move(models));
}

}  // namespace acc

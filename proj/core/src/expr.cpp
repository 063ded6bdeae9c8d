#include "bmcm/expr.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

namespace bmcm {

const char* to_string(Op op) { return op == Op::And ? "and" : "or"; }

bool Sequence::operator==(const Sequence& other) const {
    return operands == other.operands && slot_ids == other.slot_ids;
}

bool ModelTemplate::operator==(const ModelTemplate& other) const {
    return root == other.root && target == other.target && slot_count == other.slot_count;
}

namespace {

void collect_variables(const Sequence& seq, std::vector<std::string>& out) {
    for (const Operand& operand : seq.operands) {
        if (const auto* var = std::get_if<VarRef>(&operand)) {
            if (std::find(out.begin(), out.end(), var->name) == out.end()) {
                out.push_back(var->name);
            }
        } else {
            collect_variables(std::get<Sequence>(operand), out);
        }
    }
}

// ---- parsing ---------------------------------------------------------

struct Token {
    enum class Kind { Ident, Slot, LParen, RParen, Equals, End };
    Kind kind;
    std::size_t pos = 0;
    std::string text;             // Ident
    std::optional<int> slot_id;   // Slot with explicit id
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        current_ = Token{Token::Kind::End, pos_, "", std::nullopt};
        if (pos_ >= text_.size()) return;

        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            current_ = Token{Token::Kind::LParen, start, "(", std::nullopt};
        } else if (c == ')') {
            ++pos_;
            current_ = Token{Token::Kind::RParen, start, ")", std::nullopt};
        } else if (c == '=') {
            ++pos_;
            current_ = Token{Token::Kind::Equals, start, "=", std::nullopt};
        } else if (c == '?') {
            ++pos_;
            std::optional<int> id;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                long value = 0;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    value = value * 10 + (text_[pos_] - '0');
                    if (value > 1'000'000) throw ParseError("slot id out of range", start);
                    ++pos_;
                }
                id = static_cast<int>(value);
            }
            current_ = Token{Token::Kind::Slot, start, text_.substr(start, pos_ - start), id};
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            current_ = Token{Token::Kind::Ident, start, text_.substr(start, pos_ - start),
                             std::nullopt};
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_;
};

struct SlotRecord {
    std::size_t pos;
    std::optional<int> explicit_id;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) {}

    ModelTemplate parse() {
        ModelTemplate tmpl;
        tmpl.root = parse_sequence(/*inside_group=*/false);

        const Token eq = lexer_.take();
        if (eq.kind != Token::Kind::Equals) {
            throw ParseError("expected '=' before the target variable", eq.pos);
        }
        const Token target = lexer_.take();
        if (target.kind != Token::Kind::Ident) {
            throw ParseError("expected target variable name after '='", target.pos);
        }
        tmpl.target = target.text;
        const Token end = lexer_.take();
        if (end.kind != Token::Kind::End) {
            throw ParseError("unexpected trailing input after target", end.pos);
        }

        assign_slot_ids();
        tmpl.slot_count = static_cast<int>(slots_.size());

        std::vector<std::string> vars;
        collect_variables(tmpl.root, vars);
        for (const std::string& name : vars) {
            if (name == tmpl.target) {
                throw ParseError("target '" + tmpl.target + "' also appears as a variable",
                                 target.pos);
            }
        }
        return tmpl;
    }

private:
    Sequence parse_sequence(bool inside_group) {
        Sequence seq;
        seq.operands.push_back(parse_operand());
        while (lexer_.peek().kind == Token::Kind::Slot) {
            Token slot = lexer_.take();
            if (lexer_.peek().kind == Token::Kind::Slot) {
                throw ParseError("adjacent slots: an operand must separate two slots",
                                 lexer_.peek().pos);
            }
            seq.slot_ids.push_back(0);  // numbered later
            slots_.push_back(SlotRecord{slot.pos, slot.slot_id});
            seq.operands.push_back(parse_operand());
        }
        if (inside_group && seq.operands.size() < 2) {
            throw ParseError("a group must contain at least two operands", lexer_.peek().pos);
        }
        return seq;
    }

    Operand parse_operand() {
        const Token t = lexer_.peek();
        switch (t.kind) {
            case Token::Kind::Ident:
                lexer_.take();
                return VarRef{t.text};
            case Token::Kind::LParen: {
                lexer_.take();
                if (lexer_.peek().kind == Token::Kind::RParen) {
                    throw ParseError("empty group", lexer_.peek().pos);
                }
                Sequence inner = parse_sequence(/*inside_group=*/true);
                const Token close = lexer_.take();
                if (close.kind != Token::Kind::RParen) {
                    throw ParseError("expected ')'", close.pos);
                }
                return inner;
            }
            case Token::Kind::Slot:
                throw ParseError("a slot cannot start an expression or follow another slot",
                                 t.pos);
            default:
                throw ParseError("expected a variable or '('", t.pos);
        }
    }

    void assign_slot_ids() {
        const std::size_t k = slots_.size();
        std::vector<int> ids(k);

        bool any_explicit = false;
        bool any_auto = false;
        for (const SlotRecord& s : slots_) {
            (s.explicit_id ? any_explicit : any_auto) = true;
        }
        if (any_explicit && any_auto) {
            for (const SlotRecord& s : slots_) {
                if (!s.explicit_id) {
                    throw ParseError("cannot mix auto-numbered '?' and explicit '?N' slots",
                                     s.pos);
                }
            }
        }
        if (any_explicit) {
            std::set<int> seen;
            for (std::size_t i = 0; i < k; ++i) {
                const int id = *slots_[i].explicit_id;
                if (id < 1 || id > static_cast<int>(k)) {
                    throw ParseError("slot id " + std::to_string(id) +
                                         " out of range 1.." + std::to_string(k),
                                     slots_[i].pos);
                }
                if (!seen.insert(id).second) {
                    throw ParseError("duplicate slot id " + std::to_string(id), slots_[i].pos);
                }
                ids[i] = id;
            }
        } else {
            for (std::size_t i = 0; i < k; ++i) ids[i] = static_cast<int>(i) + 1;
        }
        next_ids_ = std::move(ids);
    }

public:
    /// Fills slot id cells in textual order (operand i precedes slot i, so
    /// the interleaved walk visits slots exactly as the lexer produced them).
    void number_slots(Sequence& seq) {
        for (std::size_t i = 0; i < seq.operands.size(); ++i) {
            if (auto* group = std::get_if<Sequence>(&seq.operands[i])) {
                number_slots(*group);
            }
            if (i < seq.slot_ids.size()) {
                seq.slot_ids[i] = next_ids_[cursor_++];
            }
        }
    }

private:
    Lexer lexer_;
    std::vector<SlotRecord> slots_;
    std::vector<int> next_ids_;
    std::size_t cursor_ = 0;
};

}  // namespace

ModelTemplate parse_template(const std::string& text) {
    Parser parser(text);
    ModelTemplate tmpl = parser.parse();
    parser.number_slots(tmpl.root);
    return tmpl;
}

std::vector<std::string> ModelTemplate::variables() const {
    std::vector<std::string> out;
    collect_variables(root, out);
    return out;
}

namespace {

void render_sequence(const Sequence& seq, const OperatorAssignment* ops, std::string& out) {
    for (std::size_t i = 0; i < seq.operands.size(); ++i) {
        if (i > 0) {
            const int id = seq.slot_ids[i - 1];
            out += ' ';
            if (ops) {
                out += to_string((*ops)[static_cast<std::size_t>(id) - 1]);
            } else {
                out += '?';
                out += std::to_string(id);
            }
            out += ' ';
        }
        if (const auto* var = std::get_if<VarRef>(&seq.operands[i])) {
            out += var->name;
        } else {
            out += '(';
            render_sequence(std::get<Sequence>(seq.operands[i]), ops, out);
            out += ')';
        }
    }
}

}  // namespace

std::string to_string(const ModelTemplate& tmpl) {
    std::string out;
    render_sequence(tmpl.root, nullptr, out);
    out += " = ";
    out += tmpl.target;
    return out;
}

std::string render_with_ops(const ModelTemplate& tmpl, const OperatorAssignment& ops) {
    if (static_cast<int>(ops.size()) != tmpl.slot_count) {
        throw InvalidArgument("assignment length does not match slot count");
    }
    std::string out;
    render_sequence(tmpl.root, &ops, out);
    out += " = ";
    out += tmpl.target;
    return out;
}

namespace {

bool eval_sequence(const Sequence& seq, const OperatorAssignment& ops, const BitRow& row);

bool eval_operand(const Operand& operand, const OperatorAssignment& ops, const BitRow& row) {
    if (const auto* var = std::get_if<VarRef>(&operand)) {
        const auto it = row.find(var->name);
        if (it == row.end()) {
            throw DataError("row is missing variable '" + var->name + "'");
        }
        return it->second != 0;
    }
    return eval_sequence(std::get<Sequence>(operand), ops, row);
}

// `and` runs collapse first, the run results are then or-ed together.
bool eval_sequence(const Sequence& seq, const OperatorAssignment& ops, const BitRow& row) {
    bool disjunction = false;
    bool run = eval_operand(seq.operands[0], ops, row);
    for (std::size_t i = 0; i < seq.slot_ids.size(); ++i) {
        const bool next = eval_operand(seq.operands[i + 1], ops, row);
        if (ops[static_cast<std::size_t>(seq.slot_ids[i]) - 1] == Op::And) {
            run = run && next;
        } else {
            disjunction = disjunction || run;
            run = next;
        }
    }
    return disjunction || run;
}

}  // namespace

std::uint8_t evaluate(const ModelTemplate& tmpl, const OperatorAssignment& ops,
                      const BitRow& row) {
    if (static_cast<int>(ops.size()) != tmpl.slot_count) {
        throw InvalidArgument("assignment length " + std::to_string(ops.size()) +
                              " does not match slot count " + std::to_string(tmpl.slot_count));
    }
    return eval_sequence(tmpl.root, ops, row) ? 1 : 0;
}

std::vector<OperatorAssignment> enumerate_assignments(int slot_count, int limit) {
    if (slot_count < 0) throw InvalidArgument("slot_count must be non-negative");
    if (slot_count > limit) {
        throw CapacityError("slot_count " + std::to_string(slot_count) +
                            " exceeds the enumeration limit " + std::to_string(limit));
    }
    const std::size_t k = static_cast<std::size_t>(slot_count);
    std::vector<OperatorAssignment> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << k); ++code) {
        OperatorAssignment ops(k);
        for (std::size_t j = 0; j < k; ++j) {
            // slot 1 is the most significant digit
            ops[j] = ((code >> (k - 1 - j)) & 1) ? Op::Or : Op::And;
        }
        out.push_back(std::move(ops));
    }
    return out;
}

namespace {

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

Sequence flat3(const std::string& a, const std::string& b, const std::string& c) {
    Sequence seq;
    seq.operands = {VarRef{a}, VarRef{b}, VarRef{c}};
    seq.slot_ids = {1, 2};
    return seq;
}

Sequence grouped3(const std::string& a, const std::string& b, const std::string& c) {
    Sequence inner;
    inner.operands = {VarRef{a}, VarRef{b}};
    inner.slot_ids = {1};
    Sequence seq;
    seq.operands = {std::move(inner), VarRef{c}};
    seq.slot_ids = {2};
    return seq;
}

}  // namespace

std::vector<ModelTemplate> enumerate_models(const std::vector<std::string>& variables,
                                            const std::string& target) {
    if (variables.size() != 3) {
        throw InvalidArgument("model enumeration supports exactly 3 variables, got " +
                              std::to_string(variables.size()));
    }
    for (const std::string& name : variables) {
        if (!valid_identifier(name)) {
            throw InvalidArgument("variable name '" + name + "' is not a valid identifier");
        }
        if (name == target) {
            throw InvalidArgument("target '" + target + "' also appears as a variable");
        }
    }
    if (!valid_identifier(target)) {
        throw InvalidArgument("target name '" + target + "' is not a valid identifier");
    }
    const std::string& v1 = variables[0];
    const std::string& v2 = variables[1];
    const std::string& v3 = variables[2];

    std::vector<ModelTemplate> models(6);
    models[0].root = flat3(v1, v2, v3);
    models[1].root = flat3(v1, v3, v2);
    models[2].root = flat3(v2, v1, v3);
    models[3].root = grouped3(v1, v2, v3);
    models[4].root = grouped3(v3, v1, v2);
    models[5].root = grouped3(v2, v3, v1);
    for (ModelTemplate& m : models) {
        m.target = target;
        m.slot_count = 2;
    }
    return models;
}

// ---- CompiledTemplate -------------------------------------------------

CompiledTemplate::Node CompiledTemplate::compile(const Sequence& seq,
                                                 const std::map<std::string, int>& index) {
    Node node;
    node.slot_ids = seq.slot_ids;
    node.children.reserve(seq.operands.size());
    for (const Operand& operand : seq.operands) {
        if (const auto* var = std::get_if<VarRef>(&operand)) {
            const auto it = index.find(var->name);
            if (it == index.end()) {
                throw DataError("unknown variable '" + var->name + "'");
            }
            Node leaf;
            leaf.column = it->second;
            node.children.push_back(std::move(leaf));
        } else {
            node.children.push_back(compile(std::get<Sequence>(operand), index));
        }
    }
    return node;
}

CompiledTemplate::CompiledTemplate(const ModelTemplate& tmpl,
                                   const std::vector<std::string>& columns)
    : slot_count_(tmpl.slot_count) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        index.emplace(columns[i], static_cast<int>(i));
    }
    root_ = compile(tmpl.root, index);
}

bool CompiledTemplate::eval_node(const Node& node, std::span<const std::uint8_t> row,
                                 const OperatorAssignment& ops) {
    if (node.column >= 0) return row[static_cast<std::size_t>(node.column)] != 0;
    bool disjunction = false;
    bool run = eval_node(node.children[0], row, ops);
    for (std::size_t i = 0; i < node.slot_ids.size(); ++i) {
        const bool next = eval_node(node.children[i + 1], row, ops);
        if (ops[static_cast<std::size_t>(node.slot_ids[i]) - 1] == Op::And) {
            run = run && next;
        } else {
            disjunction = disjunction || run;
            run = next;
        }
    }
    return disjunction || run;
}

std::uint8_t CompiledTemplate::evaluate(std::span<const std::uint8_t> row,
                                        const OperatorAssignment& ops) const {
    if (static_cast<int>(ops.size()) != slot_count_) {
        throw InvalidArgument("assignment length does not match slot count");
    }
    return eval_node(root_, row, ops) ? 1 : 0;
}

}  // namespace bmcm

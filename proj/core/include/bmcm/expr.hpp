#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bmcm/error.hpp"

namespace bmcm {

/// The operator space: conjunction or disjunction, no negation.
enum class Op : std::uint8_t { And = 0, Or = 1 };

/// One concrete operator per slot; index i holds the operator for slot i+1.
using OperatorAssignment = std::vector<Op>;

/// One observation as a column-name -> bit map.
using BitRow = std::map<std::string, std::uint8_t>;

const char* to_string(Op op);

struct VarRef {
    std::string name;
    bool operator==(const VarRef&) const = default;
};

struct Sequence;
using Operand = std::variant<VarRef, Sequence>;

/// Alternating operand/slot chain: operands[0] ?slot_ids[0] operands[1] ...
/// The shape itself rules out a slot appearing first, last, or next to
/// another slot. A nested Sequence is a parenthesized group and must hold
/// at least two operands.
struct Sequence {
    std::vector<Operand> operands;
    std::vector<int> slot_ids;  // size == operands.size() - 1; ids are 1-based

    bool operator==(const Sequence& other) const;
};

/// A parsed model formula `lhs = target` whose lhs mixes variables, groups
/// and numbered operator slots.
struct ModelTemplate {
    Sequence root;
    std::string target;
    int slot_count = 0;

    /// Distinct variable names in first-appearance order.
    std::vector<std::string> variables() const;

    bool operator==(const ModelTemplate& other) const;
};

/// Parses template text. Grammar:
///   formula := operand (slot operand)* "=" ident
///   operand := ident | "(" operand (slot operand)* ")"
///   slot    := "?" | "?" integer
/// Whitespace is insignificant. Bare "?" slots are auto-numbered left to
/// right; explicit ids must together form 1..k. Mixing the two forms is an
/// error.
ModelTemplate parse_template(const std::string& text);

/// Canonical text: explicit "?N" slots, groups parenthesized, " = target".
/// Re-parsing the result reproduces the template exactly.
std::string to_string(const ModelTemplate& tmpl);

/// Template text with each slot replaced by its assigned operator,
/// e.g. "x1 or x2 and x3 = xO".
std::string render_with_ops(const ModelTemplate& tmpl, const OperatorAssignment& ops);

/// Evaluates the instantiated Boolean function on one observation. Within a
/// flat sequence an instantiated `and` binds tighter than `or`; groups
/// evaluate first. Pure; safe to call concurrently.
std::uint8_t evaluate(const ModelTemplate& tmpl, const OperatorAssignment& ops,
                      const BitRow& row);

/// All 2^slot_count assignments in binary-counting order with And=0, Or=1
/// and slot 1 as the most significant digit. Throws CapacityError when
/// slot_count exceeds `limit`.
std::vector<OperatorAssignment> enumerate_assignments(int slot_count, int limit = 20);

/// The six canonical 3-variable model shapes over (v1, v2, v3):
///   v1 ?1 v2 ?2 v3      (v1 ?1 v2) ?2 v3
///   v1 ?1 v3 ?2 v2      (v3 ?1 v1) ?2 v2
///   v2 ?1 v1 ?2 v3      (v2 ?1 v3) ?2 v1
/// Exactly three variables are supported; other arities throw
/// InvalidArgument.
std::vector<ModelTemplate> enumerate_models(const std::vector<std::string>& variables,
                                            const std::string& target);

/// A template bound to a column ordering for allocation-free evaluation
/// over packed rows. Construction fails with DataError if the template
/// names a column that is absent.
class CompiledTemplate {
public:
    CompiledTemplate(const ModelTemplate& tmpl, const std::vector<std::string>& columns);

    int slot_count() const { return slot_count_; }

    std::uint8_t evaluate(std::span<const std::uint8_t> row,
                          const OperatorAssignment& ops) const;

private:
    struct Node {
        int column = -1;  // >= 0: leaf referencing row[column]
        std::vector<Node> children;
        std::vector<int> slot_ids;
    };

    static Node compile(const Sequence& seq, const std::map<std::string, int>& index);
    static bool eval_node(const Node& node, std::span<const std::uint8_t> row,
                          const OperatorAssignment& ops);

    Node root_;
    int slot_count_ = 0;
};

}  // namespace bmcm

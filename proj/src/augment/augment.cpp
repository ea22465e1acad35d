#include "transformcode/augment/augment.hpp"

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>

#include "transformcode/ast/grammar_profile.hpp"
#include "transformcode/ast/parser.hpp"
#include "transformcode/ast/text_edit.hpp"
#include "transformcode/error.hpp"

namespace tcode {
namespace {

using Names = std::set<std::string, std::less<>>;

constexpr std::array<std::string_view, 7> kKindNames = {
    "PermuteDeclaration", "SwapCondition",     "ArithmeticTransform", "WhileForExchange",
    "AddDummyStatement",  "AddTryCatch",       "PermuteStatement"};

// Read/write summary of one statement, lexical only.
struct Effects {
  Names writes;
  Names idents;
  bool opaque_write = false;
  bool call = false;
  bool jump = false;
  bool may_throw = false;
};

class Analyzer {
 public:
  explicit Analyzer(const SyntaxTree& tree)
      : t(tree), p(profile_for(tree.language())), java(tree.language() == Language::Java) {
    spellings = identifier_spellings(tree);
    collect_address_taken();
    if (java) collect_java_types();
  }

  const SyntaxTree& t;
  const GrammarProfile& p;
  const bool java;
  std::set<std::string> spellings;
  Names address_taken;
  std::map<std::string, std::set<std::string>, std::less<>> java_types;

  std::string text(NodeRef n) const { return std::string(t.text(n)); }
  bool is(NodeRef n, std::string_view kind) const { return n != kNoNode && t.kind(n) == kind; }

  bool any_in(NodeRef n, const std::function<bool(NodeRef)>& pred) const {
    bool found = false;
    t.preorder(n, [&](NodeRef c) {
      if (found) return false;
      if (pred(c)) found = true;
      return !found;
    });
    return found;
  }

  bool has_kind(NodeRef n, std::string_view kind) const {
    return any_in(n, [&](NodeRef c) { return t.kind(c) == kind; });
  }

  NodeRef operator_node(NodeRef n) const { return t.child_by_field(n, "operator"); }
  std::string op_text(NodeRef n) const {
    NodeRef op = operator_node(n);
    return op == kNoNode ? std::string{} : text(op);
  }

  // Java update_expression has no fields; C names the operand "argument".
  NodeRef update_operand(NodeRef n) const {
    auto kids = t.named_children(n);
    return kids.size() == 1 ? kids.front() : kNoNode;
  }
  std::string update_operator(NodeRef n) const {
    for (NodeRef c : t.children(n))
      if (!t.node(c).named) return text(c);
    return {};
  }

  bool is_identifier(NodeRef n) const { return is(n, "identifier"); }
  bool is_literal(NodeRef n) const { return is_kind_in(p.literal_kinds, t.kind(n)); }

  bool is_call(NodeRef n) const { return is_kind_in(p.call_kinds, t.kind(n)); }

  bool side_effect_free(NodeRef n) const {
    return !any_in(n, [&](NodeRef c) {
      const auto& k = t.kind(c);
      return is_call(c) || k == "assignment_expression" || k == "update_expression" ||
             k == "array_creation_expression" || k == "lambda_expression";
    });
  }

  bool nonzero_literal(NodeRef n) const {
    if (!is_literal(n)) return false;
    std::string s = text(n);
    return s.find_first_of("123456789") != std::string::npos && s.find_first_of("xXbB") == std::string::npos;
  }

  bool may_throw(NodeRef n) const {
    return any_in(n, [&](NodeRef c) {
      const auto& k = t.kind(c);
      if (k == "array_access" || k == "field_access" || k == "cast_expression" ||
          k == "array_creation_expression" || k == "subscript_expression" ||
          k == "throw_statement" || is_call(c))
        return true;
      if (k == "field_expression") return op_text(c) == "->";
      if (k == "pointer_expression") return op_text(c) == "*";
      if (k == "binary_expression") {
        auto op = op_text(c);
        if (op == "/" || op == "%") return !nonzero_literal(t.child_by_field(c, "right"));
      }
      return false;
    });
  }

  // Identifier declared by a C declarator chain (not function declarators).
  NodeRef c_declared(NodeRef d) const {
    while (d != kNoNode) {
      const auto& k = t.kind(d);
      if (k == "identifier") return d;
      if (k == "function_declarator") return kNoNode;
      if (k == "parenthesized_declarator") {
        auto kids = t.named_children(d);
        d = kids.empty() ? kNoNode : kids.front();
        continue;
      }
      d = t.child_by_field(d, "declarator");
    }
    return kNoNode;
  }

  // Names introduced by a declaration statement; empty if it declares none.
  Names declared_names(NodeRef decl) const {
    Names out;
    for (NodeRef d : t.children_by_field(decl, "declarator")) {
      NodeRef id = java ? t.child_by_field(d, "name") : c_declared(d);
      if (id != kNoNode) out.emplace(t.text(id));
    }
    return out;
  }

  void note_write(NodeRef target, Effects& e) const {
    if (is_identifier(target)) e.writes.emplace(t.text(target));
    else e.opaque_write = true;
  }

  Effects effects(NodeRef n) const {
    Effects e;
    t.preorder(n, [&](NodeRef c) {
      const auto& k = t.kind(c);
      if (is_kind_in(p.identifier_kinds, k)) e.idents.emplace(t.text(c));
      if (is_call(c)) e.call = true;
      if (is_kind_in(p.jump_kinds, k)) e.jump = true;
      if (k == "assignment_expression") note_write(t.child_by_field(c, "left"), e);
      if (k == "update_expression") note_write(update_operand(c), e);
      if (is_kind_in(p.declaration_kinds, k))
        for (const auto& name : declared_names(c)) e.writes.insert(name);
      return true;
    });
    e.may_throw = may_throw(n);
    return e;
  }

  static bool disjoint(const Names& a, const Names& b) {
    for (const auto& x : a)
      if (b.count(x)) return false;
    return true;
  }

  bool independent(const Effects& a, const Effects& b) const {
    if (a.opaque_write || b.opaque_write || a.call || b.call || a.jump || b.jump) return false;
    if (!disjoint(a.writes, b.idents) || !disjoint(b.writes, a.idents)) return false;
    if (!disjoint(a.writes, address_taken) || !disjoint(b.writes, address_taken)) return false;
    return true;
  }

  // Statement lists whose elements may be reordered or extended.
  std::vector<NodeRef> containers() const {
    std::vector<NodeRef> out;
    const auto& rk = t.kind(t.root());
    if (rk == "program" || rk == "translation_unit") out.push_back(t.root());
    t.preorder(t.root(), [&](NodeRef n) {
      if (is_kind_in(p.block_kinds, t.kind(n))) out.push_back(n);
      return true;
    });
    return out;
  }

  std::vector<NodeRef> statements(NodeRef container) const {
    std::vector<NodeRef> out;
    for (NodeRef c : t.named_children(container))
      if (is_kind_in(p.statement_kinds, t.kind(c))) out.push_back(c);
    return out;
  }

  // True when nothing but comments or whitespace sits between a and b.
  bool adjacent(NodeRef a, NodeRef b) const {
    NodeRef parent = t.parent(a);
    const auto& kids = t.children(parent);
    auto ia = std::find(kids.begin(), kids.end(), a);
    auto ib = std::find(kids.begin(), kids.end(), b);
    if (ia == kids.end() || ib != ia + 1) return false;
    return true;
  }

  bool is_infinite_loop(NodeRef n) const {
    const auto& k = t.kind(n);
    if (k != "while_statement" && k != "for_statement" && k != "do_statement") return false;
    NodeRef cond = t.child_by_field(n, "condition");
    if (cond == kNoNode) return true;
    std::string c = text(cond);
    c.erase(std::remove_if(c.begin(), c.end(), [](char ch) { return ch == '(' || ch == ')' || ch == ' '; }),
            c.end());
    return c == p.true_literal;
  }

  // Conservative over Java's "can complete normally" rules.
  bool may_not_complete(NodeRef n) const {
    return any_in(n, [&](NodeRef c) {
      return is_kind_in(p.jump_kinds, t.kind(c)) || is_infinite_loop(c);
    });
  }

  std::string fresh_name(const std::set<std::string>& reserved, std::set<std::string>& taken) const {
    for (std::size_t k = 1;; ++k) {
      std::string name = canonical_name(k);
      if (spellings.count(name) || reserved.count(name) || taken.count(name)) continue;
      taken.insert(name);
      return name;
    }
  }

  // Java numeric rank: 0 unknown, 1 int after promotion, 2 long, 3 float, 4 double.
  static int type_rank(std::string_view type) {
    if (type == "int" || type == "short" || type == "byte" || type == "char") return 1;
    if (type == "long") return 2;
    if (type == "float") return 3;
    if (type == "double") return 4;
    return 0;
  }

  std::string var_type(std::string_view name) const {
    auto it = java_types.find(name);
    if (it == java_types.end() || it->second.size() != 1) return {};
    return *it->second.begin();
  }

  // Types that a compound assignment can widen into without an implicit cast.
  static bool exact_numeric(std::string_view type) {
    return type == "int" || type == "long" || type == "float" || type == "double";
  }

  int expr_rank(NodeRef n) const {
    const auto& k = t.kind(n);
    std::string s = text(n);
    if (k == "identifier") return type_rank(var_type(s));
    if (k == "decimal_integer_literal" || k == "hex_integer_literal" ||
        k == "octal_integer_literal" || k == "binary_integer_literal")
      return (s.back() == 'l' || s.back() == 'L') ? 2 : 1;
    if (k == "decimal_floating_point_literal" || k == "hex_floating_point_literal")
      return (s.back() == 'f' || s.back() == 'F') ? 3 : 4;
    if (k == "character_literal") return 1;
    if (k == "parenthesized_expression") {
      auto kids = t.named_children(n);
      return kids.size() == 1 ? expr_rank(kids[0]) : 0;
    }
    if (k == "unary_expression") {
      auto op = op_text(n);
      if (op != "-" && op != "+" && op != "~") return 0;
      return expr_rank(t.child_by_field(n, "operand"));
    }
    if (k == "binary_expression") {
      auto op = op_text(n);
      int l = expr_rank(t.child_by_field(n, "left"));
      int r = expr_rank(t.child_by_field(n, "right"));
      if (l == 0 || r == 0) return 0;
      if (op == "<<" || op == ">>" || op == ">>>") return l;
      if (op == "+" || op == "-" || op == "*" || op == "/" || op == "%" || op == "&" ||
          op == "|" || op == "^")
        return std::max(l, r);
      return 0;
    }
    if (k == "array_access") {
      NodeRef arr = t.child_by_field(n, "array");
      if (!is_identifier(arr)) return 0;
      std::string ty = var_type(t.text(arr));
      if (ty.size() < 2 || ty.substr(ty.size() - 2) != "[]") return 0;
      return type_rank(ty.substr(0, ty.size() - 2));
    }
    if (k == "field_access") {
      NodeRef obj = t.child_by_field(n, "object");
      NodeRef field = t.child_by_field(n, "field");
      if (field == kNoNode || t.text(field) != "length" || !is_identifier(obj)) return 0;
      std::string ty = var_type(t.text(obj));
      return ty.size() >= 2 && ty.substr(ty.size() - 2) == "[]" ? 1 : 0;
    }
    if (k == "cast_expression") return type_rank(text(t.child_by_field(n, "type")));
    if (k == "update_expression") return expr_rank(update_operand(n));
    return 0;
  }

  bool simple_operand(NodeRef n) const {
    const auto& k = t.kind(n);
    if (k == "identifier" || k == "this" || is_literal(n)) return true;
    if (k == "parenthesized_expression") {
      auto kids = t.named_children(n);
      return kids.size() == 1 && simple_operand(kids[0]);
    }
    if (k == "field_access") return simple_operand(t.child_by_field(n, "object"));
    if (k == "field_expression") return simple_operand(t.child_by_field(n, "argument"));
    if (k == "array_access")
      return simple_operand(t.child_by_field(n, "array")) &&
             side_effect_free(t.child_by_field(n, "index"));
    if (k == "subscript_expression")
      return simple_operand(t.child_by_field(n, "argument")) &&
             side_effect_free(t.child_by_field(n, "index"));
    return false;
  }

  bool in_statement_position(NodeRef n) const {
    NodeRef parent = t.parent(n);
    if (parent == kNoNode) return false;
    if (t.kind(parent) == "expression_statement") return true;
    return t.kind(parent) == "for_statement" && t.node(n).field == "update";
  }

 private:
  void collect_address_taken() {
    if (java) return;
    t.preorder(t.root(), [&](NodeRef n) {
      if (t.kind(n) == "pointer_expression" && op_text(n) == "&") {
        t.preorder(t.child_by_field(n, "argument"), [&](NodeRef c) {
          if (is_identifier(c)) address_taken.emplace(t.text(c));
          return true;
        });
      }
      return true;
    });
  }

  void add_type(NodeRef name, NodeRef type, NodeRef extra_dims) {
    if (name == kNoNode) return;
    std::string ty = type == kNoNode ? std::string("?") : text(type);
    ty.erase(std::remove(ty.begin(), ty.end(), ' '), ty.end());
    if (extra_dims != kNoNode) {
      std::string d = text(extra_dims);
      d.erase(std::remove(d.begin(), d.end(), ' '), d.end());
      ty += d;
    }
    java_types[text(name)].insert(ty);
  }

  void collect_java_types() {
    t.preorder(t.root(), [&](NodeRef n) {
      const auto& k = t.kind(n);
      if (k == "local_variable_declaration" || k == "field_declaration") {
        NodeRef type = t.child_by_field(n, "type");
        for (NodeRef d : t.children_by_field(n, "declarator"))
          add_type(t.child_by_field(d, "name"), type, t.child_by_field(d, "dimensions"));
      } else if (k == "formal_parameter" || k == "enhanced_for_statement") {
        add_type(t.child_by_field(n, "name"), t.child_by_field(n, "type"),
                 t.child_by_field(n, "dimensions"));
      } else if (k == "catch_formal_parameter" || k == "spread_parameter") {
        add_type(t.child_by_field(n, "name"), kNoNode, kNoNode);
      } else if (k == "lambda_expression") {
        NodeRef params = t.child_by_field(n, "parameters");
        if (is_identifier(params)) add_type(params, kNoNode, kNoNode);
        else if (params != kNoNode)
          for (NodeRef c : t.named_children(params))
            add_type(is_identifier(c) ? c : t.child_by_field(c, "name"), kNoNode, kNoNode);
      }
      return true;
    });
  }
};

TransformOutcome unchanged(const SyntaxTree& tree) { return {tree.source(), {}, false}; }

TransformOutcome rewrite(const SyntaxTree& tree, std::vector<TextEdit> edits,
                         std::vector<ByteSpan> sites) {
  return {apply_edits(tree.source(), std::move(edits)), std::move(sites), false};
}

template <class T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.below(items.size())];
}

std::string gap(const SyntaxTree& t, NodeRef a, NodeRef b) {
  return t.source().substr(t.node(a).span.end, t.node(b).span.start - t.node(a).span.end);
}

std::string mirror(std::string_view op) {
  if (op == "<") return ">";
  if (op == ">") return "<";
  if (op == "<=") return ">=";
  if (op == ">=") return "<=";
  return std::string(op);
}

bool is_simple_atom(const Analyzer& a, NodeRef n) {
  return a.is_identifier(n) || a.is_literal(n) || a.is(n, "parenthesized_expression");
}

}  // namespace

std::string_view transform_name(TransformKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<TransformKind> transform_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<TransformKind>(i);
  return std::nullopt;
}

double AugmentConfig::kind_probability(TransformKind kind) const {
  auto it = per_kind_probability.find(kind);
  return it == per_kind_probability.end() ? 0.5 : it->second;
}

double AugmentConfig::site_probability_for(TransformKind kind) const {
  auto it = site_probability.find(kind);
  return it == site_probability.end() ? 0.1 : it->second;
}

void AugmentConfig::validate() const {
  for (const auto* m : {&per_kind_probability, &site_probability})
    for (const auto& [kind, prob] : *m)
      if (!(prob >= 0.0 && prob <= 1.0))
        fail(ErrorCode::InvalidConfig,
             "probability for " + std::string(transform_name(kind)) + " outside [0,1]");
  if (max_rounds < 1) fail(ErrorCode::InvalidConfig, "max_rounds must be at least 1");
}

TransformOutcome permute_declaration(const SyntaxTree& tree, Rng& rng, const TransformOptions&) {
  Analyzer a(tree);
  std::vector<std::pair<NodeRef, NodeRef>> sites;
  for (NodeRef c : a.containers()) {
    auto stmts = a.statements(c);
    for (std::size_t i = 0; i + 1 < stmts.size(); ++i) {
      NodeRef x = stmts[i], y = stmts[i + 1];
      if (!is_kind_in(a.p.declaration_kinds, tree.kind(x)) ||
          !is_kind_in(a.p.declaration_kinds, tree.kind(y)) || !a.adjacent(x, y))
        continue;
      if (a.declared_names(x).empty() || a.declared_names(y).empty()) continue;
      Effects ex = a.effects(x), ey = a.effects(y);
      if (!a.independent(ex, ey) || (ex.may_throw && ey.may_throw)) continue;
      sites.emplace_back(x, y);
    }
  }
  if (sites.empty()) return unchanged(tree);
  auto [x, y] = pick(sites, rng);
  ByteSpan site{tree.node(x).span.start, tree.node(y).span.end};
  return rewrite(tree, {{tree.node(x).span, a.text(y)}, {tree.node(y).span, a.text(x)}}, {site});
}

TransformOutcome swap_condition(const SyntaxTree& tree, Rng& rng, const TransformOptions&) {
  Analyzer a(tree);
  static const std::set<std::string, std::less<>> kSwappable = {"<", ">", "<=", ">=", "==",
                                                                "!=", "+", "*"};
  std::vector<NodeRef> sites;
  for (NodeRef n : tree.find_all("binary_expression")) {
    NodeRef l = tree.child_by_field(n, "left");
    NodeRef r = tree.child_by_field(n, "right");
    NodeRef op = a.operator_node(n);
    if (l == kNoNode || r == kNoNode || op == kNoNode) continue;
    std::string o = a.text(op);
    if (!kSwappable.count(o) || !a.simple_operand(l) || !a.simple_operand(r)) continue;
    if (a.java) {
      if (o == "+" && (a.expr_rank(l) == 0 || a.expr_rank(r) == 0)) continue;
      if (a.may_throw(l) && a.may_throw(r)) continue;
    }
    sites.push_back(n);
  }
  if (sites.empty()) return unchanged(tree);
  NodeRef n = pick(sites, rng);
  NodeRef l = tree.child_by_field(n, "left");
  NodeRef r = tree.child_by_field(n, "right");
  NodeRef op = a.operator_node(n);
  std::string out = a.text(r) + gap(tree, l, op) + mirror(a.text(op)) + gap(tree, op, r) + a.text(l);
  return rewrite(tree, {{tree.node(n).span, out}}, {tree.node(n).span});
}

TransformOutcome arithmetic_transform(const SyntaxTree& tree, Rng& rng, const TransformOptions&) {
  Analyzer a(tree);
  struct Site {
    NodeRef node;
    std::vector<std::string> forms;
  };
  std::vector<Site> sites;

  auto assignable = [&](NodeRef target, bool allow_string) {
    if (!a.java) return true;
    std::string ty = a.var_type(tree.text(target));
    return Analyzer::exact_numeric(ty) || (allow_string && ty == "String");
  };

  for (NodeRef n : tree.find_all("assignment_expression")) {
    NodeRef left = tree.child_by_field(n, "left");
    NodeRef right = tree.child_by_field(n, "right");
    std::string op = a.op_text(n);
    if (!a.is_identifier(left) || right == kNoNode) continue;
    std::string x = a.text(left);
    if (op == "+=" || op == "-=" || op == "*=" || op == "/=") {
      if (!assignable(left, op == "+=")) continue;
      if (a.java && a.var_type(x) != "String") {
        int re = a.expr_rank(right);
        if (re == 0 || re > Analyzer::type_rank(a.var_type(x))) continue;
      }
      std::string e = is_simple_atom(a, right) ? a.text(right) : "(" + a.text(right) + ")";
      Site s{n, {x + " = " + x + " " + op.substr(0, 1) + " " + e}};
      if (a.in_statement_position(n) && a.text(right) == "1" && (op == "+=" || op == "-=") &&
          (!a.java || Analyzer::exact_numeric(a.var_type(x)) || a.var_type(x) == "short" ||
           a.var_type(x) == "byte" || a.var_type(x) == "char"))
        s.forms.push_back(x + (op == "+=" ? "++" : "--"));
      sites.push_back(std::move(s));
    } else if (op == "=" && a.is(right, "binary_expression")) {
      NodeRef bl = tree.child_by_field(right, "left");
      NodeRef br = tree.child_by_field(right, "right");
      std::string bop = a.op_text(right);
      if (bop != "+" && bop != "-" && bop != "*" && bop != "/") continue;
      if (!a.is_identifier(bl) || a.text(bl) != x || br == kNoNode) continue;
      Site s{n, {x + " " + bop + "= " + a.text(br)}};
      if (a.in_statement_position(n) && a.text(br) == "1" && (bop == "+" || bop == "-") &&
          (!a.java || Analyzer::exact_numeric(a.var_type(x))))
        s.forms.push_back(x + (bop == "+" ? "++" : "--"));
      sites.push_back(std::move(s));
    }
  }

  for (NodeRef n : tree.find_all("update_expression")) {
    if (!a.in_statement_position(n)) continue;
    NodeRef operand = a.update_operand(n);
    if (!a.is_identifier(operand) || !assignable(operand, false)) continue;
    std::string x = a.text(operand);
    std::string sign = a.update_operator(n) == "++" ? "+" : "-";
    sites.push_back({n, {x + " = " + x + " " + sign + " 1", x + " " + sign + "= 1"}});
  }

  if (sites.empty()) return unchanged(tree);
  const Site& s = pick(sites, rng);
  const std::string& form = pick(s.forms, rng);
  return rewrite(tree, {{tree.node(s.node).span, form}}, {tree.node(s.node).span});
}

TransformOutcome while_for_exchange(const SyntaxTree& tree, Rng& rng, const TransformOptions&) {
  Analyzer a(tree);
  std::vector<NodeRef> sites;
  for (NodeRef n : tree.find_all("while_statement")) {
    NodeRef cond = tree.child_by_field(n, "condition");
    if (cond != kNoNode && tree.named_children(cond).size() == 1) sites.push_back(n);
  }
  for (NodeRef n : tree.find_all("for_statement")) {
    NodeRef body = tree.child_by_field(n, "body");
    if (body == kNoNode || a.has_kind(body, "continue_statement")) continue;
    if (a.java) {
      NodeRef last = body;
      if (is_kind_in(a.p.block_kinds, tree.kind(body))) {
        auto stmts = a.statements(body);
        last = stmts.empty() ? kNoNode : stmts.back();
      }
      if (last != kNoNode && a.may_not_complete(last)) continue;
    }
    sites.push_back(n);
  }
  if (sites.empty()) return unchanged(tree);
  std::sort(sites.begin(), sites.end(),
            [&](NodeRef x, NodeRef y) { return tree.node(x).span.start < tree.node(y).span.start; });
  NodeRef n = pick(sites, rng);
  const ByteSpan span = tree.node(n).span;

  if (tree.kind(n) == "while_statement") {
    NodeRef cond = tree.child_by_field(n, "condition");
    NodeRef inner = tree.named_children(cond).front();
    ByteSpan head{span.start, tree.node(cond).span.end};
    return rewrite(tree, {{head, "for (;" + a.text(inner) + ";)"}}, {span});
  }

  std::string init;
  for (NodeRef i : tree.children_by_field(n, a.p.for_init_field)) {
    std::string s = a.text(i);
    init += is_kind_in(a.p.declaration_kinds, tree.kind(i)) ? s : s + ";";
    init += " ";
  }
  NodeRef cond = tree.child_by_field(n, "condition");
  std::string update;
  for (NodeRef u : tree.children_by_field(n, "update")) update += " " + a.text(u) + ";";
  std::string out = "{ " + init + "while (" + (cond == kNoNode ? a.p.true_literal : a.text(cond)) +
                    ") { " + a.text(tree.child_by_field(n, "body")) + update + " } }";
  return rewrite(tree, {{span, out}}, {span});
}

TransformOutcome add_dummy_statement(const SyntaxTree& tree, Rng& rng, const TransformOptions& opts) {
  Analyzer a(tree);
  std::vector<NodeRef> sites;
  for (NodeRef c : a.containers())
    for (NodeRef s : a.statements(c)) {
      if (is_kind_in(a.p.jump_kinds, tree.kind(s))) continue;
      if (a.java && a.may_not_complete(s)) continue;
      sites.push_back(s);
    }
  std::sort(sites.begin(), sites.end(),
            [&](NodeRef x, NodeRef y) { return tree.node(x).span.start < tree.node(y).span.start; });
  std::vector<NodeRef> chosen;
  for (NodeRef s : sites)
    if (rng.bernoulli(opts.site_probability)) chosen.push_back(s);
  if (chosen.empty() && opts.force && !sites.empty()) chosen.push_back(pick(sites, rng));
  if (chosen.empty()) return unchanged(tree);

  std::set<std::string> taken;
  std::vector<TextEdit> edits;
  std::vector<ByteSpan> spans;
  for (NodeRef s : chosen) {
    std::string name = a.fresh_name(opts.reserved_names, taken);
    std::uint32_t end = tree.node(s).span.end;
    edits.push_back({{end, end}, " int " + name + " = " + std::to_string(rng.below(10)) + ";"});
    spans.push_back(tree.node(s).span);
  }
  return rewrite(tree, std::move(edits), std::move(spans));
}

TransformOutcome add_try_catch(const SyntaxTree& tree, Rng& rng, const TransformOptions& opts) {
  Analyzer a(tree);
  if (!a.p.has_exceptions) return {tree.source(), {}, true};
  std::vector<NodeRef> sites;
  for (NodeRef c : a.containers())
    for (NodeRef s : a.statements(c))
      if (tree.kind(s) == "expression_statement") sites.push_back(s);
  if (sites.empty()) return unchanged(tree);
  std::sort(sites.begin(), sites.end(),
            [&](NodeRef x, NodeRef y) { return tree.node(x).span.start < tree.node(y).span.start; });
  NodeRef s = pick(sites, rng);
  std::set<std::string> taken;
  std::string name = "e";
  if (a.spellings.count(name) || opts.reserved_names.count(name))
    name = a.fresh_name(opts.reserved_names, taken);
  std::string out = "try { " + a.text(s) + " } catch (Exception " + name + ") { throw " + name + "; }";
  return rewrite(tree, {{tree.node(s).span, out}}, {tree.node(s).span});
}

TransformOutcome permute_statement(const SyntaxTree& tree, Rng& rng, const TransformOptions& opts) {
  Analyzer a(tree);
  std::vector<std::pair<NodeRef, NodeRef>> pairs;
  for (NodeRef c : a.containers()) {
    auto stmts = a.statements(c);
    for (std::size_t i = 0; i + 1 < stmts.size(); ++i) {
      NodeRef x = stmts[i], y = stmts[i + 1];
      if (tree.kind(x) != "expression_statement" || tree.kind(y) != "expression_statement" ||
          !a.adjacent(x, y))
        continue;
      Effects ex = a.effects(x), ey = a.effects(y);
      if (!a.independent(ex, ey) || ex.may_throw || ey.may_throw) continue;
      pairs.emplace_back(x, y);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](auto& p, auto& q) {
    return tree.node(p.first).span.start < tree.node(q.first).span.start;
  });
  std::vector<std::pair<NodeRef, NodeRef>> chosen;
  NodeRef last_used = kNoNode;
  for (const auto& pr : pairs) {
    if (pr.first == last_used) continue;
    if (rng.bernoulli(opts.site_probability)) {
      chosen.push_back(pr);
      last_used = pr.second;
    }
  }
  if (chosen.empty() && opts.force && !pairs.empty()) chosen.push_back(pick(pairs, rng));
  if (chosen.empty()) return unchanged(tree);
  std::vector<TextEdit> edits;
  std::vector<ByteSpan> spans;
  for (auto [x, y] : chosen) {
    edits.push_back({tree.node(x).span, a.text(y)});
    edits.push_back({tree.node(y).span, a.text(x)});
    spans.push_back({tree.node(x).span.start, tree.node(y).span.end});
  }
  return rewrite(tree, std::move(edits), std::move(spans));
}

TransformOutcome apply_transform(TransformKind kind, const SyntaxTree& tree, Rng& rng,
                                 const TransformOptions& opts) {
  switch (kind) {
    case TransformKind::PermuteDeclaration: return permute_declaration(tree, rng, opts);
    case TransformKind::SwapCondition: return swap_condition(tree, rng, opts);
    case TransformKind::ArithmeticTransform: return arithmetic_transform(tree, rng, opts);
    case TransformKind::WhileForExchange: return while_for_exchange(tree, rng, opts);
    case TransformKind::AddDummyStatement: return add_dummy_statement(tree, rng, opts);
    case TransformKind::AddTryCatch: return add_try_catch(tree, rng, opts);
    case TransformKind::PermuteStatement: return permute_statement(tree, rng, opts);
  }
  return unchanged(tree);
}

AnchorSnippet generate_anchor(const NormalizedSnippet& n, const AugmentConfig& cfg) {
  cfg.validate();
  const auto& profile = profile_for(n.language);
  Rng rng(derive_seed(cfg.rng_seed, n.source_id));

  AnchorSnippet out;
  out.text = n.text;
  out.parent_id = n.source_id;

  TransformOptions opts;
  for (const auto& [orig, canon] : n.rename_map) opts.reserved_names.insert(orig);

  SyntaxTree tree = parse_source(n.language, out.text);
  const bool parent_errors = tree.had_errors();

  auto usable = [&](TransformKind kind) {
    if (!cfg.enabled.count(kind)) return false;
    if (kind == TransformKind::AddTryCatch && !profile.has_exceptions) {
      if (std::find(out.unsupported.begin(), out.unsupported.end(), kind) == out.unsupported.end())
        out.unsupported.push_back(kind);
      return false;
    }
    return true;
  };

  auto attempt = [&](TransformKind kind, bool force) {
    opts.site_probability = cfg.site_probability_for(kind);
    opts.force = force;
    TransformOutcome r = apply_transform(kind, tree, rng, opts);
    if (!r.changed()) return false;
    SyntaxTree next = parse_source(n.language, r.text);
    if (next.had_errors() != parent_errors) return false;
    for (const auto& site : r.sites) out.applied.push_back({kind, site});
    out.text = std::move(r.text);
    tree = std::move(next);
    return true;
  };

  for (TransformKind kind : kAllTransformKinds) {
    if (!usable(kind)) continue;
    if (rng.bernoulli(cfg.kind_probability(kind))) attempt(kind, false);
  }
  if (out.applied.empty())
    for (TransformKind kind : kAllTransformKinds)
      if (usable(kind) && attempt(kind, true)) break;
  return out;
}

AnchorSnippet compose_anchor(const NormalizedSnippet& n, const AugmentConfig& cfg) {
  cfg.validate();
  std::size_t rounds = 1;
  if (cfg.max_rounds > 1) {
    Rng pick(derive_seed(cfg.rng_seed, n.source_id + "/rounds"));
    rounds = 1 + static_cast<std::size_t>(pick.next() % cfg.max_rounds);
  }
  AnchorSnippet out = generate_anchor(n, cfg);
  NormalizedSnippet step = n;
  for (std::size_t r = 1; r < rounds; ++r) {
    step.text = out.text;
    AugmentConfig c = cfg;
    c.rng_seed = derive_seed(cfg.rng_seed, "round" + std::to_string(r));
    AnchorSnippet next = generate_anchor(step, c);
    out.text = std::move(next.text);
    out.applied.insert(out.applied.end(), next.applied.begin(), next.applied.end());
    for (auto k : next.unsupported)
      if (std::find(out.unsupported.begin(), out.unsupported.end(), k) == out.unsupported.end())
        out.unsupported.push_back(k);
  }
  return out;
}

std::string augment_report_line(const AnchorSnippet& anchor) {
  nlohmann::ordered_json j;
  j["parent_id"] = anchor.parent_id;
  j["applied"] = nlohmann::ordered_json::array();
  for (const auto& a : anchor.applied)
    j["applied"].push_back({{"kind", transform_name(a.kind)}, {"span", {a.span.start, a.span.end}}});
  j["text"] = anchor.text;
  return j.dump();
}

}  // namespace tcode

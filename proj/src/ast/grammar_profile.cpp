#include "transformcode/ast/grammar_profile.hpp"

#include "transformcode/error.hpp"

namespace tcode {
namespace {

GrammarProfile make_java() {
  GrammarProfile p;
  p.language = Language::Java;
  p.comment_kinds = {"line_comment", "block_comment", "comment"};
  p.block_kinds = {"block"};
  p.declaration_kinds = {"local_variable_declaration"};
  p.statement_kinds = {"expression_statement", "local_variable_declaration",
                       "if_statement",         "for_statement",
                       "enhanced_for_statement", "while_statement",
                       "do_statement",         "return_statement",
                       "break_statement",      "continue_statement",
                       "throw_statement",      "try_statement",
                       "switch_expression",    "block",
                       "labeled_statement",    "synchronized_statement",
                       "assert_statement",     "yield_statement",
                       "try_with_resources_statement"};
  p.identifier_kinds = {"identifier"};
  p.literal_kinds = {"decimal_integer_literal", "hex_integer_literal",
                     "octal_integer_literal",   "binary_integer_literal",
                     "decimal_floating_point_literal",
                     "hex_floating_point_literal",
                     "character_literal",       "string_literal",
                     "text_block",              "true",
                     "false",                   "null_literal"};
  p.call_kinds = {"method_invocation", "object_creation_expression",
                  "explicit_constructor_invocation"};
  p.jump_kinds = {"return_statement", "break_statement", "continue_statement",
                  "throw_statement", "yield_statement"};
  p.scalar_type_kinds = {"integral_type", "floating_point_type", "boolean_type"};
  p.for_init_field = "init";
  p.true_literal = "true";
  p.has_exceptions = true;
  return p;
}

GrammarProfile make_c() {
  GrammarProfile p;
  p.language = Language::C;
  p.comment_kinds = {"comment"};
  p.block_kinds = {"compound_statement"};
  p.declaration_kinds = {"declaration"};
  p.statement_kinds = {"expression_statement", "declaration",
                       "if_statement",         "for_statement",
                       "while_statement",      "do_statement",
                       "return_statement",     "break_statement",
                       "continue_statement",   "goto_statement",
                       "switch_statement",     "compound_statement",
                       "labeled_statement"};
  p.identifier_kinds = {"identifier", "field_identifier"};
  p.literal_kinds = {"number_literal", "char_literal", "string_literal",
                     "concatenated_string", "true", "false", "null"};
  p.call_kinds = {"call_expression"};
  p.jump_kinds = {"return_statement", "break_statement", "continue_statement",
                  "goto_statement"};
  p.scalar_type_kinds = {"primitive_type", "sized_type_specifier"};
  p.for_init_field = "initializer";
  p.true_literal = "1";
  p.has_exceptions = false;
  return p;
}

}  // namespace

const GrammarProfile& profile_for(Language lang) {
  static const GrammarProfile java = make_java();
  static const GrammarProfile c = make_c();
  switch (lang) {
    case Language::Java: return java;
    case Language::C: return c;
  }
  fail(ErrorCode::UnsupportedLanguage, "no grammar profile for language");
}

}  // namespace tcode

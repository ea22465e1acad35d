// Prints the parse tree of a source file; a debugging aid for grammar work.
#include <fstream>
#include <iostream>
#include <sstream>

#include "transformcode/ast/parser.hpp"

namespace {

void dump(const tcode::SyntaxTree& tree, tcode::NodeRef n, int depth) {
  const auto& node = tree.node(n);
  std::cout << std::string(depth * 2, ' ');
  if (!node.field.empty()) std::cout << node.field << ": ";
  std::cout << (node.named ? node.kind : "'" + node.kind + "'");
  if (node.leaf_text && node.named) std::cout << "  `" << *node.leaf_text << "`";
  std::cout << "  [" << node.span.start << "," << node.span.end << ")\n";
  for (auto c : node.children) dump(tree, c, depth + 1);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: ast_dump <java|c> <file>\n";
    return 2;
  }
  auto lang = tcode::language_from_name(argv[1]);
  if (!lang) {
    std::cerr << "unknown language\n";
    return 2;
  }
  std::ifstream in(argv[2]);
  std::stringstream ss;
  ss << in.rdbuf();
  auto tree = tcode::parse_source(*lang, ss.str());
  std::cout << "had_errors=" << tree.had_errors() << "\n";
  dump(tree, tree.root(), 0);
}

#include "transformcode/ast/text_edit.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcode {

std::string apply_edits(std::string_view source, std::vector<TextEdit> edits) {
  std::stable_sort(edits.begin(), edits.end(), [](const TextEdit& a, const TextEdit& b) {
    return a.span.start < b.span.start;
  });
  std::string out;
  out.reserve(source.size());
  std::uint32_t cursor = 0;
  for (const auto& e : edits) {
    if (e.span.start < cursor || e.span.end > source.size() || e.span.end < e.span.start)
      throw std::logic_error("apply_edits: overlapping or out-of-range edit");
    out.append(source.substr(cursor, e.span.start - cursor));
    out.append(e.replacement);
    cursor = e.span.end;
  }
  out.append(source.substr(cursor));
  return out;
}

}  // namespace tcode

#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "transformcode/ast/normalize.hpp"
#include "transformcode/ast/syntax_tree.hpp"
#include "transformcode/util/rng.hpp"

namespace tcode {

/// Listed in application order.
enum class TransformKind {
  PermuteDeclaration,
  SwapCondition,
  ArithmeticTransform,
  WhileForExchange,
  AddDummyStatement,
  AddTryCatch,
  PermuteStatement,
};

inline constexpr std::array<TransformKind, 7> kAllTransformKinds = {
    TransformKind::PermuteDeclaration, TransformKind::SwapCondition,
    TransformKind::ArithmeticTransform, TransformKind::WhileForExchange,
    TransformKind::AddDummyStatement,  TransformKind::AddTryCatch,
    TransformKind::PermuteStatement};

std::string_view transform_name(TransformKind kind) noexcept;
std::optional<TransformKind> transform_from_name(std::string_view name) noexcept;

struct AugmentConfig {
  std::set<TransformKind> enabled{kAllTransformKinds.begin(), kAllTransformKinds.end()};
  /// Chance that a kind is attempted in a pass. Missing kinds use 0.5.
  std::map<TransformKind, double> per_kind_probability;
  /// Per-site selection chance for AddDummyStatement and PermuteStatement.
  std::map<TransformKind, double> site_probability;
  std::uint64_t rng_seed = 0;
  Language language = Language::Java;
  /// compose_anchor runs between 1 and max_rounds passes per sample.
  std::size_t max_rounds = 1;

  double kind_probability(TransformKind kind) const;
  double site_probability_for(TransformKind kind) const;
  /// Throws Error(InvalidConfig) on a probability outside [0, 1].
  void validate() const;
};

struct AppliedTransform {
  TransformKind kind;
  /// Rewritten site, in the coordinates of the text the transform ran on.
  ByteSpan span;

  friend bool operator==(const AppliedTransform&, const AppliedTransform&) = default;
};

struct AnchorSnippet {
  std::string text;
  std::vector<AppliedTransform> applied;
  std::string parent_id;
  /// Kinds skipped because the language lacks the construct.
  std::vector<TransformKind> unsupported;

  bool is_identity() const { return applied.empty(); }
};

struct TransformOptions {
  /// Used by the per-site kinds.
  double site_probability = 0.1;
  /// Guarantee one rewrite when any site exists.
  bool force = false;
  /// Names a fresh identifier must avoid, beyond those in the source.
  std::set<std::string> reserved_names;
};

struct TransformOutcome {
  std::string text;
  std::vector<ByteSpan> sites;
  bool unsupported = false;

  bool changed() const { return !sites.empty(); }
};

TransformOutcome permute_declaration(const SyntaxTree& tree, Rng& rng,
                                     const TransformOptions& opts = {});
TransformOutcome swap_condition(const SyntaxTree& tree, Rng& rng,
                                const TransformOptions& opts = {});
TransformOutcome arithmetic_transform(const SyntaxTree& tree, Rng& rng,
                                      const TransformOptions& opts = {});
TransformOutcome while_for_exchange(const SyntaxTree& tree, Rng& rng,
                                    const TransformOptions& opts = {});
TransformOutcome add_dummy_statement(const SyntaxTree& tree, Rng& rng,
                                     const TransformOptions& opts = {});
TransformOutcome add_try_catch(const SyntaxTree& tree, Rng& rng,
                               const TransformOptions& opts = {});
TransformOutcome permute_statement(const SyntaxTree& tree, Rng& rng,
                                   const TransformOptions& opts = {});

TransformOutcome apply_transform(TransformKind kind, const SyntaxTree& tree, Rng& rng,
                                 const TransformOptions& opts = {});

/// Applies enabled kinds in enum order, each with its probability. If nothing
/// applied, kinds are forced in order until one rewrites; failing that the
/// result is the identity with an empty `applied` list.
AnchorSnippet generate_anchor(const NormalizedSnippet& n, const AugmentConfig& cfg);

/// Chains generate_anchor passes, each on the previous pass's output. The
/// pass count is drawn per sample from [1, cfg.max_rounds]; with
/// max_rounds = 1 this equals generate_anchor. `applied` spans refer to the
/// text of the pass that produced them.
AnchorSnippet compose_anchor(const NormalizedSnippet& n, const AugmentConfig& cfg);

/// One JSON line: {"parent_id","applied":[{"kind","span"}],"text"}.
std::string augment_report_line(const AnchorSnippet& anchor);

}  // namespace tcode

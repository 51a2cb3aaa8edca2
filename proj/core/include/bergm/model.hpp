#ifndef BERGM_MODEL_HPP_
#define BERGM_MODEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bergm {

enum class TermKind {
  edges,
  b1cov,
  b2cov,
  b1factor,
  b2factor,
  b1nodematch,
  b2nodematch,
  b2star,
  b2degree,
  b2sociality,
};

std::string_view term_name(TermKind kind) noexcept;
std::optional<TermKind> term_kind_from_name(std::string_view name) noexcept;

/// Which homophily view a nodematch term uses: node-pair (alpha) or edge (beta).
enum class ExponentKind { alpha, beta };

std::string_view exponent_name(ExponentKind kind) noexcept;

/// One term of a model formula, before it is bound to attribute data.
///
/// A nodematch term used for fitting carries exactly one of `alpha`/`beta`.
/// Profile templates leave both unset; `bind_exponent` fills one in.
struct ModelTerm {
  TermKind kind = TermKind::edges;
  std::optional<std::string> attribute;
  std::optional<double> alpha;
  std::optional<double> beta;
  bool diff = false;
  std::vector<std::string> keep_levels;
  /// k of b2star(k), d of b2degree(d).
  std::optional<int> order;

  friend bool operator==(const ModelTerm&, const ModelTerm&) = default;
};

struct ModelSpec {
  std::vector<ModelTerm> terms;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

bool is_nodematch(TermKind kind) noexcept;

/// Checks the data-independent invariants of a term: argument presence per
/// kind, exponent range, the alpha/beta exclusivity. Throws ModelError.
/// `allow_unbound` accepts nodematch terms with neither exponent set.
void validate(const ModelTerm& term, bool allow_unbound = false);
void validate(const ModelSpec& spec, bool allow_unbound = false);

/// Returns a copy of `spec` with the single unbound nodematch term given the
/// exponent. Throws ModelError unless exactly one such term exists.
ModelSpec bind_exponent(const ModelSpec& spec, ExponentKind kind, double value);

}  // namespace bergm

#endif  // BERGM_MODEL_HPP_

#include "bergm/model.hpp"

#include <array>
#include <cmath>
#include <set>
#include <utility>

#include "bergm/error.hpp"

namespace bergm {

namespace {

constexpr std::array<std::pair<TermKind, std::string_view>, 10> kTermNames{{
    {TermKind::edges, "edges"},
    {TermKind::b1cov, "b1cov"},
    {TermKind::b2cov, "b2cov"},
    {TermKind::b1factor, "b1factor"},
    {TermKind::b2factor, "b2factor"},
    {TermKind::b1nodematch, "b1nodematch"},
    {TermKind::b2nodematch, "b2nodematch"},
    {TermKind::b2star, "b2star"},
    {TermKind::b2degree, "b2degree"},
    {TermKind::b2sociality, "b2sociality"},
}};

void check_exponent(const char* name, double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw ModelError(std::string(name) + " must lie in [0,1], got " +
                     std::to_string(v));
  }
}

}  // namespace

std::string_view term_name(TermKind kind) noexcept {
  for (const auto& [k, name] : kTermNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<TermKind> term_kind_from_name(std::string_view name) noexcept {
  for (const auto& [k, n] : kTermNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view exponent_name(ExponentKind kind) noexcept {
  return kind == ExponentKind::alpha ? "alpha" : "beta";
}

bool is_nodematch(TermKind kind) noexcept {
  return kind == TermKind::b1nodematch || kind == TermKind::b2nodematch;
}

void validate(const ModelTerm& term, bool allow_unbound) {
  const std::string name(term_name(term.kind));
  const bool wants_attribute =
      term.kind != TermKind::edges && term.kind != TermKind::b2star &&
      term.kind != TermKind::b2degree && term.kind != TermKind::b2sociality;
  if (wants_attribute && (!term.attribute || term.attribute->empty())) {
    throw ModelError(name + " needs an attribute name");
  }
  if (!wants_attribute && term.attribute) {
    throw ModelError(name + " takes no attribute");
  }
  const bool wants_order = term.kind == TermKind::b2star || term.kind == TermKind::b2degree;
  if (wants_order) {
    if (!term.order) throw ModelError(name + " needs an integer argument");
    const int min = term.kind == TermKind::b2star ? 1 : 0;
    if (*term.order < min) {
      throw ModelError(name + " argument must be at least " + std::to_string(min));
    }
  } else if (term.order) {
    throw ModelError(name + " takes no integer argument");
  }

  if (is_nodematch(term.kind)) {
    if (term.alpha && term.beta) {
      throw ModelError(name + ": alpha and beta are mutually exclusive");
    }
    if (!term.alpha && !term.beta && !allow_unbound) {
      throw ModelError(name + " needs either alpha or beta");
    }
    if (term.alpha) check_exponent("alpha", *term.alpha);
    if (term.beta) check_exponent("beta", *term.beta);
    if (!term.keep_levels.empty() && !term.diff) {
      throw ModelError(name + ": keep requires diff = TRUE");
    }
    const std::set<std::string> distinct(term.keep_levels.begin(),
                                         term.keep_levels.end());
    if (distinct.size() != term.keep_levels.size()) {
      throw ModelError(name + ": keep lists a level twice");
    }
  } else {
    if (term.alpha || term.beta) throw ModelError(name + " takes no alpha/beta");
    if (term.diff) throw ModelError(name + " takes no diff flag");
    if (!term.keep_levels.empty()) throw ModelError(name + " takes no keep list");
  }
}

void validate(const ModelSpec& spec, bool allow_unbound) {
  if (spec.terms.empty()) throw ModelError("model has no terms");
  for (const auto& t : spec.terms) validate(t, allow_unbound);
}

ModelSpec bind_exponent(const ModelSpec& spec, ExponentKind kind, double value) {
  ModelSpec out = spec;
  ModelTerm* target = nullptr;
  for (auto& t : out.terms) {
    if (!is_nodematch(t.kind)) continue;
    if (t.alpha || t.beta) {
      throw ModelError("profile template: " + std::string(term_name(t.kind)) +
                       " must leave alpha and beta unset");
    }
    if (target) throw ModelError("profile template has more than one nodematch term");
    target = &t;
  }
  if (!target) throw ModelError("profile template has no nodematch term");
  (kind == ExponentKind::alpha ? target->alpha : target->beta) = value;
  validate(out);
  return out;
}

}  // namespace bergm

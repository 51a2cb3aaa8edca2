#include <algorithm>
#include <cmath>

#include "bergm/error.hpp"
#include "bergm/estimate.hpp"

namespace bergm {

std::vector<double> default_profile_grid() {
  std::vector<double> grid;
  for (int j = 0; j <= 10; ++j) grid.push_back(j / 10.0);
  return grid;
}

std::vector<ProfilePoint> profile(const ModelSpec& template_spec, ExponentKind which,
                                  std::span<const double> grid,
                                  const BipartiteNetwork& net, const NodeAttributes& attrs,
                                  const EstimationControl& control, FitMethod method) {
  validate(template_spec, true);
  std::vector<double> values(grid.begin(), grid.end());
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ModelError("profile grid values must lie in [0, 1]");
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  // Binding the first value checks that the template has one free exponent.
  if (!values.empty()) bind_exponent(template_spec, which, values.front());

  std::size_t bound_term = 0;
  for (std::size_t t = 0; t < template_spec.terms.size(); ++t) {
    const auto& term = template_spec.terms[t];
    if (is_nodematch(term.kind) && !term.alpha && !term.beta) bound_term = t;
  }

  const std::uint64_t kind_stream = which == ExponentKind::alpha ? 0 : 1;
  std::vector<ProfilePoint> out;
  for (std::size_t g = 0; g < values.size(); ++g) {
    ProfilePoint point;
    point.kind = which;
    point.value = values[g];
    try {
      const ModelSpec spec = bind_exponent(template_spec, which, values[g]);
      const CompiledModel model(spec, attrs, net.n1(), net.n2());
      const auto [begin, end] = model.term_slice(bound_term);
      for (std::size_t j = begin; j < end; ++j) point.homophily_index.push_back(j);
      if (method == FitMethod::mple) {
        point.fit = mple(model, net);
      } else {
        EstimationControl local = control;
        local.sampler.seed =
            split_seed(split_seed(control.sampler.seed, kind_stream), static_cast<std::uint64_t>(g));
        std::vector<double> start(model.dimension(), 0.0);
        try {
          const FitResult initial = mple(model, net);
          start.assign(initial.theta.data(), initial.theta.data() + initial.theta.size());
        } catch (const EstimationError&) {
        }
        point.fit = mcmcmle(model, net, start, local);
      }
    } catch (const Error& e) {
      point.fit.reset();
      point.error = e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace bergm

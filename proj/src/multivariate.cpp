#include "evcalc/multivariate.hpp"

#include <algorithm>
#include <string>

#include "evcalc/errors.hpp"

namespace evcalc {

ProductFrame::ProductFrame(std::vector<Variable> variables) : variables_(std::move(variables)) {
    if (variables_.empty()) fail(Errc::invalid_argument, "a product frame needs a variable");
    std::size_t count = 1;
    for (const Variable& v : variables_) {
        if (v.name.empty()) fail(Errc::invalid_argument, "empty variable name");
        if (v.domain.empty()) {
            fail(Errc::invalid_argument, "variable '" + v.name + "' has an empty domain");
        }
        count *= v.domain.size();
        if (count > (std::size_t{1} << Frame::kMaxElements)) {
            fail(Errc::invalid_argument, "product frame is too large");
        }
    }
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        for (std::size_t j = i + 1; j < variables_.size(); ++j) {
            if (variables_[i].name == variables_[j].name) {
                fail(Errc::invalid_argument,
                     "duplicate variable name '" + variables_[i].name + "'");
            }
        }
    }
    // Row-major enumeration, last variable fastest; tuple label joins values
    // with '|'.
    std::vector<std::string> labels(count);
    for (std::size_t e = 0; e < count; ++e) {
        std::size_t rest = e;
        std::string label;
        for (auto it = variables_.rbegin(); it != variables_.rend(); ++it) {
            const std::size_t k = it->domain.size();
            const std::string& value = it->domain[rest % k];
            label = label.empty() ? value : value + "|" + label;
            rest /= k;
        }
        labels[e] = std::move(label);
    }
    frame_ = Frame::make(std::move(labels));
}

int ProductFrame::variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> ProductFrame::element_digits(int element) const {
    std::vector<int> digits(variables_.size());
    std::size_t rest = static_cast<std::size_t>(element);
    for (std::size_t i = variables_.size(); i-- > 0;) {
        const std::size_t k = variables_[i].domain.size();
        digits[i] = static_cast<int>(rest % k);
        rest /= k;
    }
    return digits;
}

namespace {

struct Projection {
    ProductFrame target;
    std::vector<int> element_map;  // source elementary index -> target elementary index
};

Projection build_projection(const ProductFrame& source,
                            const std::vector<std::string>& target_vars) {
    if (target_vars.empty()) fail(Errc::invalid_argument, "no target variables given");
    std::vector<bool> keep(source.variables().size(), false);
    for (const std::string& name : target_vars) {
        const int idx = source.variable_index(name);
        if (idx < 0) fail(Errc::unknown_variable, "no variable named '" + name + "'");
        if (keep[static_cast<std::size_t>(idx)]) {
            fail(Errc::invalid_argument, "variable '" + name + "' listed twice");
        }
        keep[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<Variable> kept;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) kept.push_back(source.variables()[i]);
    }
    ProductFrame target(kept);

    const int source_count = source.frame()->size();
    std::vector<int> element_map(static_cast<std::size_t>(source_count));
    for (int e = 0; e < source_count; ++e) {
        const std::vector<int> digits = source.element_digits(e);
        int t = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (!keep[i]) continue;
            t = t * static_cast<int>(source.variables()[i].domain.size()) + digits[i];
        }
        element_map[static_cast<std::size_t>(e)] = t;
    }
    return Projection{std::move(target), std::move(element_map)};
}

SubsetIndex project_with_map(SubsetIndex s, const std::vector<int>& element_map) {
    SubsetIndex out = 0;
    for (std::size_t e = 0; e < element_map.size(); ++e) {
        if (s & (SubsetIndex{1} << e)) out |= SubsetIndex{1} << element_map[e];
    }
    return out;
}

}  // namespace

SubsetIndex project_set(const ProductFrame& source, SubsetIndex s,
                        const std::vector<std::string>& target_vars,
                        ProductFrame* projected_out) {
    if (!source.frame()->contains(s)) fail(Errc::invalid_argument, "subset outside the frame");
    Projection proj = build_projection(source, target_vars);
    const SubsetIndex out = project_with_map(s, proj.element_map);
    if (projected_out != nullptr) *projected_out = std::move(proj.target);
    return out;
}

MassFunction marginalize(const ProductFrame& source, const MassFunction& m,
                         const std::vector<std::string>& target_vars,
                         ProductFrame* projected_out) {
    if (!same_frame(source.frame(), m.frame())) {
        fail(Errc::frame_mismatch, "mass function does not live on the given product frame");
    }
    Projection proj = build_projection(source, target_vars);
    std::vector<double> out(proj.target.frame()->subset_count(), 0.0);
    for (SubsetIndex s = 0; s < m.values().size(); ++s) {
        const double v = m[s];
        if (v == 0.0) continue;
        out[project_with_map(s, proj.element_map)] += v;
    }
    MassFunction result = validate_bpa(std::move(out), proj.target.frame());
    if (projected_out != nullptr) *projected_out = std::move(proj.target);
    return result;
}

}  // namespace evcalc

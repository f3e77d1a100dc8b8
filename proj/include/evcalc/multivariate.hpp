#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evcalc/frame.hpp"
#include "evcalc/mass.hpp"

namespace evcalc {

struct Variable {
    std::string name;
    std::vector<std::string> domain;
};

// Frame whose elements are tuples over a list of variables.  Elements are
// enumerated row-major with the LAST variable varying fastest; the element
// label is the tuple's values joined with '|'.
class ProductFrame {
public:
    explicit ProductFrame(std::vector<Variable> variables);

    const std::vector<Variable>& variables() const { return variables_; }
    const FramePtr& frame() const { return frame_; }

    int variable_index(std::string_view name) const;  // -1 when absent

    // Tuple of domain-value indices for one elementary outcome.
    std::vector<int> element_digits(int element) const;

private:
    std::vector<Variable> variables_;
    FramePtr frame_;
};

// Projection of a subset onto a subframe keeping only target_vars (named in
// any order; result keeps the source variable order).  A projected elementary
// outcome is in the image iff at least one source outcome over it is in s.
SubsetIndex project_set(const ProductFrame& source, SubsetIndex s,
                        const std::vector<std::string>& target_vars,
                        ProductFrame* projected_out = nullptr);

// Marginalization: each focal set projects with project_set and masses on
// sets with equal projection accumulate.  ONE is preserved.
MassFunction marginalize(const ProductFrame& source, const MassFunction& m,
                         const std::vector<std::string>& target_vars,
                         ProductFrame* projected_out = nullptr);

}  // namespace evcalc

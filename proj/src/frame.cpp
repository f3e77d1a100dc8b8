#include "evcalc/frame.hpp"

#include <algorithm>
#include <numeric>

#include "evcalc/errors.hpp"

namespace evcalc {

std::vector<int> subset_members(SubsetIndex s) {
    std::vector<int> out;
    for (int i = 0; s != 0; ++i, s >>= 1) {
        if (s & 1u) out.push_back(i);
    }
    return out;
}

static void check_label(const std::string& label) {
    if (label.empty()) fail(Errc::invalid_argument, "empty element label");
    for (char c : label) {
        if (c == '{' || c == '}' || c == ',' || c == ':' || c == '#' ||
            static_cast<unsigned char>(c) <= ' ') {
            fail(Errc::invalid_argument,
                 "element label '" + label + "' contains a reserved character");
        }
    }
}

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) fail(Errc::invalid_argument, "a frame needs at least one element");
    if (static_cast<int>(labels_.size()) > kMaxElements) {
        fail(Errc::invalid_argument, "frame exceeds " + std::to_string(kMaxElements) +
                                         " elements (" + std::to_string(labels_.size()) + ")");
    }
    for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
        check_label(labels_[static_cast<std::size_t>(i)]);
        auto [it, inserted] = index_.emplace(labels_[static_cast<std::size_t>(i)], i);
        if (!inserted) {
            fail(Errc::invalid_argument, "duplicate element label '" + it->first + "'");
        }
    }
}

FramePtr Frame::make(std::vector<std::string> labels) {
    return std::make_shared<const Frame>(std::move(labels));
}

int Frame::index_of(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::string Frame::format_subset(SubsetIndex s) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if (s & (SubsetIndex{1} << i)) {
            if (!first) out += ',';
            out += label(i);
            first = false;
        }
    }
    out += '}';
    return out;
}

bool same_frame(const FramePtr& a, const FramePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

std::vector<SubsetIndex> canonical_subsets(int n) {
    std::vector<SubsetIndex> order(std::size_t{1} << n);
    std::iota(order.begin(), order.end(), SubsetIndex{0});
    std::stable_sort(order.begin(), order.end(), [](SubsetIndex a, SubsetIndex b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return order;
}

}  // namespace evcalc

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace evcalc {

// A subset of a frame of discernment, encoded as a bitmask: bit k is set iff
// the element with index k belongs to the subset.  All dense arrays indexed
// by SubsetIndex have length 2^n and slot 0 is the empty set.
using SubsetIndex = std::uint32_t;

inline constexpr SubsetIndex kEmptySet = 0;

inline bool is_singleton(SubsetIndex s) { return std::has_single_bit(s); }

// Ascending element indices of the set bits.
std::vector<int> subset_members(SubsetIndex s);

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

// Finite frame of discernment: an ordered list of distinct element labels.
// Element order is fixed at construction and defines the bitmask encoding.
class Frame {
public:
    static constexpr int kMaxElements = 24;

    explicit Frame(std::vector<std::string> labels);
    static FramePtr make(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    std::size_t subset_count() const { return std::size_t{1} << labels_.size(); }
    SubsetIndex full_set() const {
        return static_cast<SubsetIndex>((std::uint64_t{1} << labels_.size()) - 1);
    }

    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Index of a label, or -1 when absent.
    int index_of(std::string_view name) const;

    bool contains(SubsetIndex s) const { return (s & ~full_set()) == 0; }

    // "{red,blue}" in element order; the empty set renders as "{}".
    std::string format_subset(SubsetIndex s) const;

    bool operator==(const Frame& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::map<std::string, int, std::less<>> index_;
};

// Two mass functions may be combined iff they share one frame (same labels in
// the same order; pointer identity is not required).
bool same_frame(const FramePtr& a, const FramePtr& b);

// All 2^n subsets ordered by cardinality, ties by numeric mask value.  This is
// the presentation order used by every rendered table.
std::vector<SubsetIndex> canonical_subsets(int n);

}  // namespace evcalc

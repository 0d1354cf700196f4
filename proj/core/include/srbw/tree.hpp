#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace srbw {

/// Node of the truncated binary tree, addressed by (depth, index).
/// index encodes the bit string z_1..z_depth with z_1 as the most
/// significant bit, so lexicographic order on bit strings equals
/// integer order on indices.
struct NodeId {
    int depth = 0;
    std::uint64_t index = 0;

    friend bool operator==(const NodeId&, const NodeId&) = default;

    /// Ancestor one generation up; empty at the root.
    [[nodiscard]] std::optional<NodeId> parent() const {
        if (depth == 0) return std::nullopt;
        return NodeId{depth - 1, index >> 1};
    }

    [[nodiscard]] NodeId child(int bit) const {
        return NodeId{depth + 1, (index << 1) | static_cast<std::uint64_t>(bit & 1)};
    }

    /// k-th bit of the address, 1-based, z_1 = most significant.
    [[nodiscard]] int bit(int k) const {
        return static_cast<int>((index >> (depth - k)) & 1u);
    }

    /// Address with every bit flipped (left/right reflection of the tree).
    [[nodiscard]] NodeId mirror() const {
        if (depth == 0) return *this;
        const std::uint64_t mask = (depth >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << depth) - 1);
        return NodeId{depth, index ^ mask};
    }
};

/// Real-valued function on the truncated tree: one array of 2^n values
/// per generation n = 0..depth. Generation 0 is the single root entry.
class TreeProfile {
public:
    TreeProfile() = default;

    explicit TreeProfile(int depth, double root_value = 0.0) : depth_(depth) {
        if (depth < 0) throw std::invalid_argument("TreeProfile: negative depth");
        if (depth > 30) throw std::invalid_argument("TreeProfile: depth too large for dense storage");
        levels_.resize(static_cast<std::size_t>(depth) + 1);
        for (int n = 0; n <= depth; ++n)
            levels_[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
        levels_[0][0] = root_value;
    }

    [[nodiscard]] int depth() const { return depth_; }

    [[nodiscard]] const std::vector<double>& generation(int n) const {
        return levels_.at(static_cast<std::size_t>(n));
    }
    [[nodiscard]] std::vector<double>& generation(int n) {
        return levels_.at(static_cast<std::size_t>(n));
    }

    [[nodiscard]] double value(NodeId z) const {
        return levels_.at(static_cast<std::size_t>(z.depth))[z.index];
    }
    void set(NodeId z, double v) {
        levels_.at(static_cast<std::size_t>(z.depth))[z.index] = v;
    }

private:
    int depth_ = 0;
    std::vector<std::vector<double>> levels_{{0.0}};
};

} // namespace srbw

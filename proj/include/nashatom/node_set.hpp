#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nashatom {

// Subset of graph nodes packed into a bit pattern. Node 0 is the most
// significant of the n bits, so the textual bitstring reads node 0 first
// and numeric order of `bits` coincides with lexicographic bitstring order.
// The same value doubles as the computational-basis index of a state vector.
class NodeSet {
public:
    static constexpr std::size_t kMaxNodes = 32;

    NodeSet() = default;
    NodeSet(std::size_t n, std::uint32_t bits);

    static NodeSet empty(std::size_t n) { return NodeSet(n, 0); }
    static NodeSet full(std::size_t n);
    static NodeSet from_members(std::size_t n, const std::vector<std::size_t>& members);
    static NodeSet from_bitstring(std::string_view text);

    std::size_t universe() const noexcept { return n_; }
    std::uint32_t bits() const noexcept { return bits_; }

    bool contains(std::size_t node) const noexcept {
        return node < n_ && ((bits_ >> (n_ - 1 - node)) & 1u) != 0;
    }
    NodeSet with(std::size_t node) const;
    NodeSet without(std::size_t node) const;
    std::size_t size() const noexcept;
    std::vector<std::size_t> members() const;
    std::string bitstring() const;

    static std::uint32_t bit_of(std::size_t n, std::size_t node) noexcept {
        return std::uint32_t{1} << (n - 1 - node);
    }

    friend bool operator==(const NodeSet&, const NodeSet&) = default;
    friend auto operator<=>(const NodeSet& a, const NodeSet& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    std::size_t n_ = 0;
    std::uint32_t bits_ = 0;
};

// "{0,3,4}"
std::string format_members(const NodeSet& s);

}  // namespace nashatom

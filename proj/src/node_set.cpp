#include "nashatom/node_set.hpp"

#include <bit>
#include <sstream>

#include "nashatom/errors.hpp"

namespace nashatom {

NodeSet::NodeSet(std::size_t n, std::uint32_t bits) : n_(n), bits_(bits) {
    if (n > kMaxNodes) {
        throw Error(ErrorCode::TooLarge, "node sets hold at most 32 nodes, got " + std::to_string(n));
    }
    if (n < kMaxNodes && (bits >> n) != 0) {
        throw Error(ErrorCode::InvalidSet, "bit pattern exceeds universe of " + std::to_string(n) + " nodes");
    }
}

NodeSet NodeSet::full(std::size_t n) {
    const std::uint32_t bits = n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    return NodeSet(n, bits);
}

NodeSet NodeSet::from_members(std::size_t n, const std::vector<std::size_t>& members) {
    NodeSet s(n, 0);
    for (std::size_t m : members) s = s.with(m);
    return s;
}

NodeSet NodeSet::from_bitstring(std::string_view text) {
    std::uint32_t bits = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw Error(ErrorCode::InvalidSet, "bitstring may only contain 0 and 1: '" + std::string(text) + "'");
        }
        bits = (bits << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return NodeSet(text.size(), bits);
}

NodeSet NodeSet::with(std::size_t node) const {
    if (node >= n_) {
        throw Error(ErrorCode::InvalidSet, "node " + std::to_string(node) + " outside [0, " + std::to_string(n_) + ")");
    }
    return NodeSet(n_, bits_ | bit_of(n_, node));
}

NodeSet NodeSet::without(std::size_t node) const {
    if (node >= n_) {
        throw Error(ErrorCode::InvalidSet, "node " + std::to_string(node) + " outside [0, " + std::to_string(n_) + ")");
    }
    return NodeSet(n_, bits_ & ~bit_of(n_, node));
}

std::size_t NodeSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> NodeSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::string NodeSet::bitstring() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if (contains(i)) s[i] = '1';
    }
    return s;
}

std::string format_members(const NodeSet& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::size_t m : s.members()) {
        if (!first) os << ',';
        os << m;
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace nashatom
